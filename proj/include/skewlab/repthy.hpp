#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "skewlab/multilinear.hpp"
#include "skewlab/structures.hpp"

namespace skewlab {

// Real matrix Lie algebra acting on R^d.
struct MatrixLieAlgebra {
  int ambientDim = 0;
  std::vector<Eigen::MatrixXd> basis;
  std::string name;

  int dim() const { return static_cast<int>(basis.size()); }
  bool linearlyIndependent() const;
  // Max over pairs of the distance of [X_a, X_b] to the span.
  double closureResidual() const;
  Eigen::VectorXd coordinates(const Eigen::MatrixXd& x, double* residual = nullptr) const;
};

enum class RhoVariant { Rho, Rho2 };

// Realification of complex matrices: z = a + ib -> [[a,-b],[b,a]] blocks, so that
// R^{2m} carries coordinates (x_1,y_1,...,x_m,y_m) and J x_k = y_k.
Eigen::MatrixXd realify(const Eigen::MatrixXcd& a);
Eigen::MatrixXd modelComplexStructure(int m);

// Image of sp(n) + u(1) in u(2n+1), acting on R^{4n+2}. The last basis element
// spans the u(1) factor: diag(i,...,i, 2i) for Rho and diag(i,...,i,-2i) for Rho2.
MatrixLieAlgebra buildRho(int n, RhoVariant variant = RhoVariant::Rho);
MatrixLieAlgebra unitaryAlgebra(int m);
MatrixLieAlgebra orthogonalAlgebra(int d);

// Columns e^a = (x^a + i y^a)/sqrt 2 of the model (1,0)-coframe.
Eigen::MatrixXcd modelCoframe(int n);
// T0 = omega0 ^ conj(e^{2n+1}) with omega0 = sum_k e^{2k-1} ^ e^{2k}.
ComplexTensor modelT0(int n);
ComplexTensor modelOmega0(int n);
// Model split structure on R^{4n+2}: standard metric and J, H = first 4n coordinates.
SplitHermitianStructure modelSplit(int n);

struct PQFilter {
  int p = 0;
  int q = 0;
  bool realPair = false;  // real forms of type (p,q) + (q,p)
};

struct RepAction {
  int contra = 0;
  int co = 0;
  int dim = 0;
  bool realCarrier = true;
  std::vector<ComplexTensor> carrier;  // orthonormal basis of the carrier space
  std::vector<Eigen::MatrixXcd> generators;
  double leak = 0.0;  // how far the carrier fails to be invariant
  int carrierDim() const { return static_cast<int>(carrier.size()); }
};

RepAction inducedAction(const MatrixLieAlgebra& alg, int contra, int co, std::optional<PQFilter> filter = std::nullopt);
// Max over basis pairs of |op([X,Y]) - [op X, op Y]|.
double bracketResidual(const RepAction& action, const MatrixLieAlgebra& alg);

// Orthonormal basis of the joint kernel of all generators.
std::vector<ComplexTensor> fixedSubspace(const RepAction& action, double relCutoff = 1e-9);

// {X in ambient : X.T = 0}.
MatrixLieAlgebra stabilizerAlgebra(const ComplexTensor& t, const MatrixLieAlgebra& ambient, double relCutoff = 1e-9);

struct CurvatureSpace {
  std::vector<RealTensor> basis;  // solutions R in S^2(alg) with b(R) in R*sigma
  int symmetricSquareDim = 0;
  int bianchiKernelDim = 0;  // solutions with b(R) = 0
  int dim() const { return static_cast<int>(basis.size()); }
};

// S^2(alg) inside Lambda^2 (x) Lambda^2 via the standard metric, intersected with
// b^{-1}(R sigma_T).
CurvatureSpace curvatureSpace(const MatrixLieAlgebra& alg, const RealTensor& torsion, double relCutoff = 1e-9);
CurvatureSpace curvatureSpace(int n);

}  // namespace skewlab
