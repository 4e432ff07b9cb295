#include "fivepoint/nullspace.h"

#include <Eigen/QR>
#include <Eigen/SVD>

namespace fivepoint {
namespace {

constexpr double kRankGap = 1e-10;

using Matrix9d = Eigen::Matrix<double, 9, 9>;

// A 9x9 matrix with the same right singular vectors and singular values as M.
Matrix9d Reduce(const CoefficientMatrix& M) {
  Matrix9d square = Matrix9d::Zero();
  if (M.rows() <= 9) {
    square.topRows(M.rows()) = M;
  } else {
    Eigen::HouseholderQR<CoefficientMatrix> qr(M);
    square = qr.matrixQR().topRows<9>().triangularView<Eigen::Upper>();
  }
  return square;
}

}  // namespace

Result<std::vector<Vector9d>> NullSpace(const CoefficientMatrix& M,
                                        int expected_dim) {
  if (expected_dim < 1 || expected_dim > 9) {
    return Error{ErrorCode::kInvalidArgument, "expected_dim out of range"};
  }
  const Eigen::JacobiSVD<Matrix9d> svd(Reduce(M), Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const int last_kept = 8 - expected_dim;
  if (last_kept >= 0 && !(sigma(last_kept) > kRankGap * sigma(0))) {
    return ErrorCode::kRankDefect;
  }
  std::vector<Vector9d> basis;
  basis.reserve(expected_dim);
  for (int i = 9 - expected_dim; i < 9; ++i) {
    basis.push_back(svd.matrixV().col(i));
  }
  return basis;
}

}  // namespace fivepoint
