#pragma once

#include <Eigen/Dense>
#include <string>

#include "skewlab/multilinear.hpp"

namespace skewlab {

// Pointwise data of a Hermitian structure with a splitting T = H + V,
// dim H = 4n, dim V = 2, and the endomorphisms K, I of H built from the
// (2,0)-form omega via g((K + iI)X, Y) = 2 omega(X, Y).
struct SplitHermitianStructure {
  int n = 0;
  MetricData g;
  ComplexStructureData J;
  Eigen::MatrixXd hProj;
  Eigen::MatrixXd vProj;
  Eigen::MatrixXd K;
  Eigen::MatrixXd I;
  ComplexTensor omega;  // (2,0)-form on H
  ComplexTensor alpha;  // (1,0)-form on V
  double t = 0.0;
  Complex lambda{0.0, 0.0};

  int dim() const { return g.dim(); }
  Eigen::MatrixXd gH() const { return hProj.transpose() * g.matrix() * hProj; }
  Eigen::MatrixXd gV() const { return vProj.transpose() * g.matrix() * vProj; }
  Eigen::MatrixXd JH() const { return J.matrix() * hProj; }
  Eigen::MatrixXd JV() const { return J.matrix() * vProj; }
};

struct SplitResiduals {
  double projectorSum = 0.0;      // hProj + vProj - 1
  double projectorIdempotent = 0.0;
  double projectorOrthogonal = 0.0;
  double projectorJInvariant = 0.0;
  double kiSupport = 0.0;         // K, I vanish on V and land in H
  double quaternionic = 0.0;      // I, J, K on H: squares, products
  double kiOrthogonal = 0.0;      // K, I g-orthogonal on H
  double omegaRelation = 0.0;     // g((K+iI)X,Y) - 2 omega(X,Y)
  double jOrthogonal = 0.0;
  double max() const;
};

SplitResiduals validateSplit(const SplitHermitianStructure& s);

// K and I from a (2,0)-form: g(KX,Y) = 2 Re omega, g(IX,Y) = 2 Im omega.
void endomorphismsFromOmega(const ComplexTensor& omega, const MetricData& g, Eigen::MatrixXd& K, Eigen::MatrixXd& I);

}  // namespace skewlab
