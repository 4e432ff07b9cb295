#include "fivepoint/homography_solver.h"

#include <cmath>
#include <limits>

#include <Eigen/Geometry>

#include "fivepoint/affine.h"
#include "fivepoint/normalization.h"
#include "fivepoint/nullspace.h"

namespace fivepoint {
namespace {

constexpr double kDenominatorTolerance = 1e-12;
constexpr double kCollinearityTolerance = 1e-10;

struct SignedSum {
  double sum = 0.0;
  double magnitude = 0.0;

  void Add(double term) {
    sum += term;
    magnitude += std::abs(term);
  }
};

// The 20-term expression shared by the numerators and the denominator of the
// closed-form beta and gamma, evaluated on entries 1, 4, 7 of two null
// vectors x and y:
//   beta  =  T(c, d) / T(b, c),
//   gamma = -T(b, d) / T(b, c).
// It factors as T(x, y) = g1(y) g2(x) - g1(x) g2(y) with
//   gk(x) = sin(ak) (x1 - u2k x7) - cos(ak) (x4 - v2k x7),
// which is evaluated instead of the expansion to avoid cancellation.
SignedSum CrossTerm(const Vector9d& x, const Vector9d& y,
                    const Correspondence& first,
                    const Correspondence& second) {
  const auto g = [](const Vector9d& v, const Correspondence& m) {
    return std::sin(m.alpha) * (v(0) - m.u2 * v(6)) -
           std::cos(m.alpha) * (v(3) - m.v2 * v(6));
  };
  SignedSum t;
  t.Add(g(y, first) * g(x, second));
  t.Add(-g(x, first) * g(y, second));
  return t;
}

bool Collinear(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
               const Eigen::Vector2d& c) {
  const Eigen::Vector2d ab = b - a;
  const Eigen::Vector2d ac = c - a;
  const double cross = ab.x() * ac.y() - ab.y() * ac.x();
  const double scale = std::max(ab.squaredNorm(), ac.squaredNorm());
  return !(std::abs(cross) > kCollinearityTolerance * scale);
}

// Rotation-consistent scale along u: projection of the Jacobian's first
// column onto the direction given by alpha.
double SignedScaleU(const Homography& H, const Correspondence& c) {
  const auto affine = AffineFromHomography(H, c.Point1());
  if (!affine) {
    return 0.0;
  }
  return std::cos(c.alpha) * affine->matrix(0, 0) +
         std::sin(c.alpha) * affine->matrix(1, 0);
}

}  // namespace

std::array<Vector9d, 2> DltRows(const Correspondence& c) {
  std::array<Vector9d, 2> rows;
  rows[0] << c.u1, c.v1, 1.0, 0.0, 0.0, 0.0, -c.u1 * c.u2, -c.v1 * c.u2, -c.u2;
  rows[1] << 0.0, 0.0, 0.0, c.u1, c.v1, 1.0, -c.u1 * c.v2, -c.v1 * c.v2, -c.v2;
  return rows;
}

std::array<Vector9d, 4> AcConstraintRows(const Correspondence& c,
                                         const LocalAffine& A) {
  const double a1 = A.matrix(0, 0);
  const double a2 = A.matrix(0, 1);
  const double a3 = A.matrix(1, 0);
  const double a4 = A.matrix(1, 1);
  const double u1 = c.u1, v1 = c.v1, u2 = c.u2, v2 = c.v2;
  // a_k s is the numerator of the affine entry, s = u1 h7 + v1 h8 + h9.
  std::array<Vector9d, 4> rows;
  rows[0] << 1, 0, 0, 0, 0, 0, -(u2 + a1 * u1), -a1 * v1, -a1;
  rows[1] << 0, 1, 0, 0, 0, 0, -a2 * u1, -(u2 + a2 * v1), -a2;
  rows[2] << 0, 0, 0, 1, 0, 0, -(v2 + a3 * u1), -a3 * v1, -a3;
  rows[3] << 0, 0, 0, 0, 1, 0, -a4 * u1, -(v2 + a4 * v1), -a4;
  return rows;
}

std::array<int, 2> SelectRotationPair(const Sample3& sample) {
  constexpr std::array<std::array<int, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
  std::array<int, 2> best = kPairs[0];
  double best_distance = std::numeric_limits<double>::infinity();
  for (const auto& pair : kPairs) {
    const auto& a = sample[pair[0]];
    const auto& b = sample[pair[1]];
    const double distance =
        (a.Point1() - b.Point1()).norm() + (a.Point2() - b.Point2()).norm();
    // Distances equal up to rounding count as ties.
    if (distance < best_distance * (1.0 - 1e-12)) {
      best_distance = distance;
      best = pair;
    }
  }
  return best;
}

Eigen::Vector4d RotationConstraintSystem::Evaluate(double beta, double gamma,
                                                   double su1,
                                                   double su2) const {
  Eigen::Matrix<double, 8, 1> monomials;
  monomials << beta, gamma, su1, su1 * beta, su1 * gamma, su2, su2 * beta,
      su2 * gamma;
  return coefficients * monomials + constants;
}

RotationConstraintSystem BuildRotationConstraintSystem(
    const Vector9d& b, const Vector9d& c, const Vector9d& d,
    const Correspondence& first, const Correspondence& second) {
  RotationConstraintSystem system;
  system.coefficients.setZero();
  const std::array<const Correspondence*, 2> members{&first, &second};
  for (int k = 0; k < 2; ++k) {
    const Correspondence& m = *members[k];
    // Depth s = u1 h7 + v1 h8 + h9 split over b, c, d.
    const double depth_b = m.u1 * b(6) + m.v1 * b(7) + b(8);
    const double depth_c = m.u1 * c(6) + m.v1 * c(7) + c(8);
    const double depth_d = m.u1 * d(6) + m.v1 * d(7) + d(8);
    const int scale_col = 2 + 3 * k;
    const std::array<double, 2> trig{std::cos(m.alpha), std::sin(m.alpha)};
    const std::array<double, 2> image2{m.u2, m.v2};
    // Row 0: h1 - u2 h7 - c_a s_u s = 0; row 1: h4 - v2 h7 - s_a s_u s = 0.
    for (int r = 0; r < 2; ++r) {
      const int row = 2 * k + r;
      const int h = 3 * r;  // h1 or h4
      system.coefficients(row, 0) = b(h) - image2[r] * b(6);
      system.coefficients(row, 1) = c(h) - image2[r] * c(6);
      system.coefficients(row, scale_col) = -trig[r] * depth_d;
      system.coefficients(row, scale_col + 1) = -trig[r] * depth_b;
      system.coefficients(row, scale_col + 2) = -trig[r] * depth_c;
      system.constants(row) = d(h) - image2[r] * d(6);
    }
  }
  return system;
}

Result<BetaGamma> SolveBetaGamma(const Vector9d& b, const Vector9d& c,
                                 const Vector9d& d, const Correspondence& first,
                                 const Correspondence& second) {
  const SignedSum denominator = CrossTerm(b, c, first, second);
  if (!(std::abs(denominator.sum) >
        kDenominatorTolerance * denominator.magnitude)) {
    return ErrorCode::kRotationDegenerate;
  }
  BetaGamma out;
  out.beta = CrossTerm(c, d, first, second).sum / denominator.sum;
  out.gamma = -CrossTerm(b, d, first, second).sum / denominator.sum;
  if (!std::isfinite(out.beta) || !std::isfinite(out.gamma)) {
    return ErrorCode::kRotationDegenerate;
  }
  return out;
}

Result<HomographyEstimate> EstimateHomographyFromThreeSift(
    const Sample3& sample, const std::array<int, 2>& rotation_pair) {
  std::array<Eigen::Vector2d, 3> points1;
  std::array<Eigen::Vector2d, 3> points2;
  for (int i = 0; i < 3; ++i) {
    points1[i] = sample[i].Point1();
    points2[i] = sample[i].Point2();
  }
  const auto t1 = HartleyTransform(points1);
  const auto t2 = HartleyTransform(points2);
  if (!t1 || !t2) {
    return ErrorCode::kCollinearSample;
  }

  // Isotropic scaling and translation leave feature rotations unchanged.
  Sample3 normalized = sample;
  CoefficientMatrix dlt(6, 9);
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector2d q1 = t1->Apply(points1[i]);
    const Eigen::Vector2d q2 = t2->Apply(points2[i]);
    normalized[i].u1 = q1.x();
    normalized[i].v1 = q1.y();
    normalized[i].u2 = q2.x();
    normalized[i].v2 = q2.y();
    const auto rows = DltRows(normalized[i]);
    dlt.row(2 * i) = rows[0].transpose();
    dlt.row(2 * i + 1) = rows[1].transpose();
  }
  if (Collinear(normalized[0].Point1(), normalized[1].Point1(),
                normalized[2].Point1()) ||
      Collinear(normalized[0].Point2(), normalized[1].Point2(),
                normalized[2].Point2())) {
    return ErrorCode::kCollinearSample;
  }
  const auto basis = NullSpace(dlt, 3);
  if (!basis) {
    return ErrorCode::kCollinearSample;
  }

  HomographyEstimate estimate;
  estimate.rotation_pair = rotation_pair;
  NullSpaceCombination& combination = estimate.combination;
  combination.b = (*basis)[0];
  combination.c = (*basis)[1];
  combination.d = (*basis)[2];
  const auto& first = normalized[rotation_pair[0]];
  const auto& second = normalized[rotation_pair[1]];
  const auto weights = SolveBetaGamma(combination.b, combination.c,
                                      combination.d, first, second);
  if (!weights) {
    return weights.error();
  }
  combination.beta = weights->beta;
  combination.gamma = weights->gamma;

  const Homography denormalized = DenormalizeHomography(
      Homography::FromVector(combination.Combine()), *t1, *t2);
  const double norm = denormalized.matrix().norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    return ErrorCode::kRotationDegenerate;
  }
  estimate.homography = Homography(denormalized.matrix() / norm);
  for (int k = 0; k < 2; ++k) {
    estimate.scale_u[k] =
        SignedScaleU(estimate.homography, sample[rotation_pair[k]]);
  }
  return estimate;
}

Result<HomographyEstimate> EstimateHomographyFromThreeSift(
    const Sample3& sample) {
  return EstimateHomographyFromThreeSift(sample, SelectRotationPair(sample));
}

Result<Homography> HomographyFromThreeSift(const Sample3& sample) {
  auto estimate = EstimateHomographyFromThreeSift(sample);
  if (!estimate) {
    return estimate.error();
  }
  return estimate->homography;
}

std::vector<HomographyEstimate> HomographiesFromAllRotationPairs(
    const Sample3& sample) {
  std::vector<HomographyEstimate> out;
  for (const auto& pair : {std::array<int, 2>{0, 1}, std::array<int, 2>{0, 2},
                           std::array<int, 2>{1, 2}}) {
    auto estimate = EstimateHomographyFromThreeSift(sample, pair);
    if (estimate) {
      out.push_back(std::move(*estimate));
    }
  }
  return out;
}

}  // namespace fivepoint
