#include "fivepoint/polynomial.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fivepoint {
namespace {

constexpr double kDegreeTolerance = 1e-12;

double EvaluateCubic(double c3, double c2, double c1, double c0, double x) {
  return ((c3 * x + c2) * x + c1) * x + c0;
}

double Polish(double c3, double c2, double c1, double c0, double x) {
  double fx = EvaluateCubic(c3, c2, c1, c0, x);
  for (int i = 0; i < 4 && fx != 0.0; ++i) {
    const double dfx = (3.0 * c3 * x + 2.0 * c2) * x + c1;
    if (dfx == 0.0) {
      break;
    }
    const double next = x - fx / dfx;
    const double fnext = EvaluateCubic(c3, c2, c1, c0, next);
    if (!(std::abs(fnext) < std::abs(fx))) {
      break;
    }
    x = next;
    fx = fnext;
  }
  return x;
}

std::vector<double> SortedUnique(std::vector<double> roots) {
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (const double r : roots) {
    if (out.empty() ||
        std::abs(r - out.back()) > 1e-12 * std::max(1.0, std::abs(r))) {
      out.push_back(r);
    }
  }
  return out;
}

Result<std::vector<double>> QuadraticRoots(double c2, double c1, double c0) {
  if (std::abs(c2) <= kDegreeTolerance) {
    if (std::abs(c1) <= kDegreeTolerance) {
      return ErrorCode::kNoRealRoot;
    }
    return std::vector<double>{-c0 / c1};
  }
  const double discriminant = c1 * c1 - 4.0 * c2 * c0;
  if (discriminant < 0.0) {
    return ErrorCode::kNoRealRoot;
  }
  const double root = std::sqrt(discriminant);
  const double q = -0.5 * (c1 + std::copysign(root, c1));
  if (q == 0.0) {
    return std::vector<double>{0.0};
  }
  return std::vector<double>{q / c2, c0 / q};
}

// Roots of the monic cubic x^3 + a x^2 + b x + c.
std::vector<double> MonicCubicRoots(double a, double b, double c) {
  const double shift = a / 3.0;
  const double p = b - a * shift;
  const double q = 2.0 * shift * shift * shift - b * shift + c;
  const double half_q = 0.5 * q;
  const double third_p = p / 3.0;
  const double discriminant = half_q * half_q + third_p * third_p * third_p;

  if (discriminant > 0.0) {
    const double big =
        -std::copysign(std::cbrt(std::abs(half_q) + std::sqrt(discriminant)),
                       half_q);
    const double small = big != 0.0 ? -third_p / big : 0.0;
    return {big + small - shift};
  }
  if (third_p == 0.0) {
    return {-shift};
  }
  const double radius = 2.0 * std::sqrt(-third_p);
  const double cos_arg = std::clamp(
      -half_q / std::sqrt(-third_p * third_p * third_p), -1.0, 1.0);
  const double phi = std::acos(cos_arg) / 3.0;
  constexpr double kThirdTurn = 2.0 * std::numbers::pi / 3.0;
  return {radius * std::cos(phi) - shift,
          radius * std::cos(phi - kThirdTurn) - shift,
          radius * std::cos(phi + kThirdTurn) - shift};
}

}  // namespace

Result<std::vector<double>> RealCubicRoots(double c3, double c2, double c1,
                                           double c0) {
  const double scale =
      std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
  if (scale == 0.0) {
    return ErrorCode::kAllCoefficientsZero;
  }
  c3 /= scale;
  c2 /= scale;
  c1 /= scale;
  c0 /= scale;

  std::vector<double> roots;
  if (std::abs(c3) <= kDegreeTolerance) {
    auto quadratic = QuadraticRoots(c2, c1, c0);
    if (!quadratic) {
      return quadratic;
    }
    roots = std::move(*quadratic);
  } else {
    roots = MonicCubicRoots(c2 / c3, c1 / c3, c0 / c3);
  }
  for (double& r : roots) {
    r = Polish(c3, c2, c1, c0, r);
  }
  return SortedUnique(std::move(roots));
}

}  // namespace fivepoint
