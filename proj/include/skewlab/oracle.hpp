#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>

#include "skewlab/tensor.hpp"

namespace skewlab {

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Explicit coordinate chart with its metric matrix.
struct ChartMetric {
  int dim = 0;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> metric;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::string name;
};

ChartMetric euclideanChart(int dim);
// Round unit sphere through stereographic coordinates: 4/(1+|x|^2)^2 delta.
ChartMetric sphereStereographicChart(int dim);
// scale * Fubini-Study on CP^m in the affine chart; holomorphic sectional curvature 4/scale.
ChartMetric fubiniStudyChart(int m, double scale = 1.0);
// CP^3 = twistor space of the unit S^4 in the affine chart (1, z1, z2, z3):
// h_t(w,w) = 4(|w_H|^2 + t|w_V|^2)/|v|^2 with w_V the component along the quaternionic
// partner jv of v. t = 1 is the Kaehler point and t = 1/2 the nearly Kaehler one.
ChartMetric twistorCP3Chart(double t);

// Standard complex structure of a complex affine chart with interleaved real coordinates.
Eigen::MatrixXd chartComplexStructure(int dim);

// Central-difference Christoffel symbols Gamma(k,i,j) = Gamma^k_ij.
RealTensor fdChristoffel(const ChartMetric& chart, const Eigen::VectorXd& p, double step = 1e-3);
// R(i,j,k,l) = g(R(d_i,d_j)d_k, d_l) from differentiated Christoffel symbols.
RealTensor fdCurvature(const ChartMetric& chart, const Eigen::VectorXd& p, double step = 1e-3);
// (nabla_k J)^i_j for a constant endomorphism field J in the chart; stored as t(i,k,j).
RealTensor fdCovariantDerivativeConstant(const ChartMetric& chart, const Eigen::VectorXd& p, const Eigen::MatrixXd& j,
                                         double step = 1e-3);

// Closed-form Christoffel symbols of the stereographic sphere chart.
RealTensor sphereChristoffelClosedForm(const Eigen::VectorXd& p);

// Sorted eigenvalues of the curvature operator on Lambda^2 in a g-orthonormal frame
// (sign chosen so that the unit sphere has all eigenvalues +1).
Eigen::VectorXd curvatureOperatorSpectrum(const RealTensor& r, const Eigen::MatrixXd& g);
// Sorted eigenvalues of Ric relative to g.
Eigen::VectorXd ricciSpectrum(const RealTensor& r, const Eigen::MatrixXd& g);

struct ConvergenceResult {
  double coarseDefect = 0.0;
  double fineDefect = 0.0;
  double ratio = 0.0;
};
// Defect of fdCurvature against a reference at steps h and h/2.
ConvergenceResult curvatureConvergence(const ChartMetric& chart, const Eigen::VectorXd& p, const RealTensor& reference,
                                       double coarseStep = 2e-2);

}  // namespace skewlab
