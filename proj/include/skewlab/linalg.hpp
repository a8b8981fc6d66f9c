#pragma once

#include <Eigen/Dense>
#include <vector>

namespace skewlab {

constexpr double kRankCutoff = 1e-9;

// Numerical rank with a cutoff relative to the largest singular value.
int numericalRank(const Eigen::MatrixXd& m, double relCutoff = kRankCutoff);
int numericalRank(const Eigen::MatrixXcd& m, double relCutoff = kRankCutoff);

// Orthonormal basis (columns) of the null space of m.
Eigen::MatrixXd kernelBasis(const Eigen::MatrixXd& m, double relCutoff = kRankCutoff);
Eigen::MatrixXcd kernelBasis(const Eigen::MatrixXcd& m, double relCutoff = kRankCutoff);

// Orthonormal basis of the column span of m.
Eigen::MatrixXd rangeBasis(const Eigen::MatrixXd& m, double relCutoff = kRankCutoff);

// Stacks matrices as columns of their vectorisations.
Eigen::MatrixXd vectorizeColumns(const std::vector<Eigen::MatrixXd>& mats);

// max over unit vectors of A of the distance to span(B); columns need not be orthonormal.
double containmentResidual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
// Symmetric version; returns +inf when dimensions differ.
double subspaceEqualityResidual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

double containmentResidual(const std::vector<Eigen::MatrixXd>& a, const std::vector<Eigen::MatrixXd>& b);
double subspaceEqualityResidual(const std::vector<Eigen::MatrixXd>& a, const std::vector<Eigen::MatrixXd>& b);

// Least-squares coefficients of v in the column span of b and the residual norm.
Eigen::VectorXd spanCoefficients(const Eigen::MatrixXd& b, const Eigen::VectorXd& v, double* residual = nullptr);

// Columns F with F^T g F = I; deterministic (symmetric inverse square root).
Eigen::MatrixXd orthonormalFrame(const Eigen::MatrixXd& g);

template <class Derived>
double maxAbs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() ? static_cast<double>(m.cwiseAbs().maxCoeff()) : 0.0;
}

}  // namespace skewlab
