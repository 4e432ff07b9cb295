#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fivepoint/status.h"
#include "fivepoint/types.h"

namespace fivepoint {

// Plain-text correspondence list, one correspondence per line:
//   u1 v1 u2 v2 [alpha]
// Blank lines and lines starting with '#' are skipped. Every data line must
// have the same number of columns (four or five).
struct CorrespondenceFile {
  std::vector<Correspondence> correspondences;
  bool has_alpha = false;
};

Result<CorrespondenceFile> ParseCorrespondences(std::string_view text);
Result<CorrespondenceFile> ReadCorrespondenceFile(const std::string& path);

// Writes with round-trip precision.
void WriteCorrespondences(std::ostream& out, const CorrespondenceFile& file);
Result<bool> WriteCorrespondenceFile(const std::string& path,
                                     const CorrespondenceFile& file);

}  // namespace fivepoint
