#include "skewlab/linalg.hpp"

#include <cmath>
#include <limits>

namespace skewlab {

namespace {

template <class M>
int rankFromSingular(const M& sv, double relCutoff) {
  if (sv.size() == 0) return 0;
  double top = sv(0);
  if (top <= 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > relCutoff * top) ++r;
  return r;
}

template <class Mat>
Mat kernelImpl(const Mat& m, double relCutoff) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0 || m.size() == 0) return Mat::Identity(cols, cols);
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
  int r = rankFromSingular(svd.singularValues(), relCutoff);
  return svd.matrixV().rightCols(cols - r);
}

}  // namespace

int numericalRank(const Eigen::MatrixXd& m, double relCutoff) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return rankFromSingular(svd.singularValues(), relCutoff);
}

int numericalRank(const Eigen::MatrixXcd& m, double relCutoff) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return rankFromSingular(svd.singularValues(), relCutoff);
}

Eigen::MatrixXd kernelBasis(const Eigen::MatrixXd& m, double relCutoff) { return kernelImpl(m, relCutoff); }
Eigen::MatrixXcd kernelBasis(const Eigen::MatrixXcd& m, double relCutoff) { return kernelImpl(m, relCutoff); }

Eigen::MatrixXd rangeBasis(const Eigen::MatrixXd& m, double relCutoff) {
  if (m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  int r = rankFromSingular(svd.singularValues(), relCutoff);
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd vectorizeColumns(const std::vector<Eigen::MatrixXd>& mats) {
  if (mats.empty()) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd out(mats[0].size(), static_cast<Eigen::Index>(mats.size()));
  for (std::size_t k = 0; k < mats.size(); ++k)
    out.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Eigen::VectorXd>(mats[k].data(), mats[k].size());
  return out;
}

double containmentResidual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd qa = rangeBasis(a);
  if (qa.cols() == 0) return 0.0;
  Eigen::MatrixXd qb = rangeBasis(b);
  Eigen::MatrixXd rest = qa - qb * (qb.transpose() * qa);
  if (rest.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rest);
  return svd.singularValues()(0);
}

double subspaceEqualityResidual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (numericalRank(a) != numericalRank(b)) return std::numeric_limits<double>::infinity();
  return std::max(containmentResidual(a, b), containmentResidual(b, a));
}

double containmentResidual(const std::vector<Eigen::MatrixXd>& a, const std::vector<Eigen::MatrixXd>& b) {
  if (a.empty()) return 0.0;
  if (b.empty()) return vectorizeColumns(a).norm() > 0 ? 1.0 : 0.0;
  return containmentResidual(vectorizeColumns(a), vectorizeColumns(b));
}

double subspaceEqualityResidual(const std::vector<Eigen::MatrixXd>& a, const std::vector<Eigen::MatrixXd>& b) {
  if (a.empty() || b.empty()) return (a.empty() && b.empty()) ? 0.0 : std::numeric_limits<double>::infinity();
  return subspaceEqualityResidual(vectorizeColumns(a), vectorizeColumns(b));
}

Eigen::VectorXd spanCoefficients(const Eigen::MatrixXd& b, const Eigen::VectorXd& v, double* residual) {
  Eigen::VectorXd c = b.completeOrthogonalDecomposition().solve(v);
  if (residual) *residual = (b * c - v).norm();
  return c;
}

Eigen::MatrixXd orthonormalFrame(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  return es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}



}  // namespace skewlab
