#include "fivepoint/io.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace fivepoint {
namespace {

bool ParseDouble(std::string_view token, double* value) {
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  if (begin != end && *begin == '+') {
    ++begin;
  }
  const auto [ptr, ec] = std::from_chars(begin, end, *value);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r' || line[i] == ',')) {
      ++i;
    }
    const size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r' && line[i] != ',') {
      ++i;
    }
    if (i > start) {
      tokens.push_back(line.substr(start, i - start));
    }
  }
  return tokens;
}

std::string LineError(size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

Result<CorrespondenceFile> ParseCorrespondences(std::string_view text) {
  CorrespondenceFile file;
  int columns = 0;
  size_t line_number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;

    const auto tokens = SplitWhitespace(line);
    if (tokens.empty() || tokens.front().front() == '#') {
      continue;
    }
    const int count = static_cast<int>(tokens.size());
    if (count != 4 && count != 5) {
      return Error{ErrorCode::kParseError,
                   LineError(line_number, "expected 4 or 5 columns, got " +
                                              std::to_string(count))};
    }
    if (columns == 0) {
      columns = count;
    } else if (count != columns) {
      return Error{ErrorCode::kParseError,
                   LineError(line_number, "inconsistent column count")};
    }
    double values[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    for (int k = 0; k < count; ++k) {
      if (!ParseDouble(tokens[k], &values[k]) || !std::isfinite(values[k])) {
        return Error{ErrorCode::kParseError,
                     LineError(line_number, "invalid number '" +
                                                std::string(tokens[k]) + "'")};
      }
    }
    file.correspondences.push_back(Correspondence{
        values[0], values[1], values[2], values[3],
        count == 5 ? CanonicalAngle(values[4]) : 0.0});
  }
  file.has_alpha = columns == 5;
  return file;
}

Result<CorrespondenceFile> ReadCorrespondenceFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return Error{ErrorCode::kIoError, "cannot open " + path};
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCorrespondences(buffer.str());
}

void WriteCorrespondences(std::ostream& out, const CorrespondenceFile& file) {
  out << (file.has_alpha ? "# u1 v1 u2 v2 alpha\n" : "# u1 v1 u2 v2\n");
  char buffer[160];
  for (const auto& c : file.correspondences) {
    if (file.has_alpha) {
      std::snprintf(buffer, sizeof(buffer), "%.17g %.17g %.17g %.17g %.17g\n",
                    c.u1, c.v1, c.u2, c.v2, c.alpha);
    } else {
      std::snprintf(buffer, sizeof(buffer), "%.17g %.17g %.17g %.17g\n", c.u1,
                    c.v1, c.u2, c.v2);
    }
    out << buffer;
  }
}

Result<bool> WriteCorrespondenceFile(const std::string& path,
                                     const CorrespondenceFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    return Error{ErrorCode::kIoError, "cannot write " + path};
  }
  WriteCorrespondences(out, file);
  out.close();
  if (!out) {
    return Error{ErrorCode::kIoError, "write failed for " + path};
  }
  return true;
}

}  // namespace fivepoint
