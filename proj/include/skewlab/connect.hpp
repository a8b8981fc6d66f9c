#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "skewlab/homog.hpp"
#include "skewlab/structures.hpp"

namespace skewlab {

// N(X,Y,Z) = g([JX,JY] - J[JX,Y] - J[X,JY] - [X,Y], Z) with m-brackets. Skewness is not assumed.
RealTensor nijenhuis(const HomogeneousSpace& space, const ComplexStructureData& J);
// Omega(X,Y) = g(JX,Y).
RealTensor kahlerForm(const MetricData& g, const ComplexStructureData& J);
// d^c Omega(X,Y,Z) = -d Omega(JX,JY,JZ).
RealTensor dcOmega(const HomogeneousSpace& space, const ComplexStructureData& J);

struct CanonicalTorsionPackage {
  RealTensor Ta;
  ConnectionMap connA;
  ConnectionMap levi;
  RealTensor Omega;
  RealTensor dOmega;
  RealTensor N;
  RealTensor dcOmega;
  double nijenhuisSkewResidual = 0.0;
};

// Ta = -d^c Omega + N and Lambda^a(X) = Lambda(X) + 1/2 g^{-1} Ta(X,.,.).
// Throws StructuralError when N is not totally skew (J outside class G1).
CanonicalTorsionPackage canonicalConnection(const HomogeneousSpace& space, const ComplexStructureData& J,
                                            double tol = 1e-9);

struct TorsionSolve {
  RealTensor T;
  ConnectionMap connA;
  double residual = 0.0;  // |[Lambda^a(X), J]| at the solution
  int nullity = 0;        // dimension of the solution space of the homogeneous system
};
// Independent route: least-squares solve for the 3-form T with [Lambda + 1/2 g^{-1} T(X,.,.), J] = 0.
TorsionSolve solveSkewTorsion(const HomogeneousSpace& space, const ConnectionMap& lc, const ComplexStructureData& J);

// Lambda(X) + 1/2 g^{-1} T(X,.,.).
ConnectionMap connectionWithTorsion(const ConnectionMap& lc, const RealTensor& t, const MetricData& g);

// Residual of Ra = R + 1/2 g(T(X,Y),T(Z,W)) + 1/4 g(T(Y,Z),T(X,W)) - 1/4 g(T(X,Z),T(Y,W)),
// the relation valid for parallel T.
double curvatureRelationResidual(const RealTensor& r, const RealTensor& ra, const RealTensor& ta, const MetricData& g);
// Same relation with the derivative terms 1/2 (nabla^a_X T)(Y,Z,W) - 1/2 (nabla^a_Y T)(X,Z,W) added;
// holds for every metric connection with skew torsion.
double curvatureRelationGeneralResidual(const RealTensor& r, const RealTensor& ra, const RealTensor& ta,
                                        const RealTensor& nablaT, const MetricData& g);

// r^a(X,Y) = g(T(X,.),T(Y,.)).
RealTensor torsionRicci(const RealTensor& ta, const MetricData& g);

struct RicciFormulaResiduals {
  double ricciA = 0.0;        // Ric^a vs |T|^2/(12n)((n+1)g_H + 2g_V)
  double scalarA = 0.0;       // s^a vs (n^2+n+1)|T|^2/(3n)
  double ricci = 0.0;         // Ric vs |T|^2/(24n)((2n+3)g_H + (n+4)g_V)
  double scalar = 0.0;        // s vs (4n^2+7n+4)|T|^2/(12n)
  double ricciTrace = 0.0;    // Ric^a vs Ric - r^a/4
  double scalarTrace = 0.0;   // s^a vs s - |T|^2/4
  double minEigenA = 0.0;     // smallest eigenvalue of g^{-1} Ric^a
  double minEigen = 0.0;      // smallest eigenvalue of g^{-1} Ric
  double horizontalEigen = 0.0;  // Ric eigenvalue on H (relative to g)
  double verticalEigen = 0.0;    // Ric eigenvalue on V
  double einsteinResidual = 0.0;  // |Ric - (s/dim) g|
};
RicciFormulaResiduals ricciFormulasCheck(const RealTensor& r, const RealTensor& ra, const RealTensor& ta,
                                         const SplitHermitianStructure& split);

// Model tensor built from g_H, g_V and the quaternionic triple (K, I and J|H on H).
RealTensor modelCurvatureR0a(const SplitHermitianStructure& split);

struct CurvatureDecomposition {
  double coefficient = 0.0;  // |Ta|^2/(48n)
  RealTensor R0a;
  RealTensor Rhyper;
  double verticalResidual = 0.0;      // |Rhyper| with any vertical argument
  double quaternionicResidual = 0.0;  // |[Rhyper(X,Y), L]| on H for L in {I,J,K}
  double horizontalRicciResidual = 0.0;  // |Ricci trace of Rhyper over H|
};
CurvatureDecomposition decomposeCurvature(const RealTensor& ra, const RealTensor& ta, const SplitHermitianStructure& split);

// Endomorphism R(x,y): z -> g^{-1} R(x,y,z,.).
Eigen::MatrixXd curvatureEndomorphism(const RealTensor& r, const MetricData& g, const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& y);

struct HolonomyAlgebra {
  std::vector<Eigen::MatrixXd> basis;
  std::vector<std::string> generationLog;
  int rounds = 0;
};
class HolonomyNonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
// Seeds with Ra(e_i,e_j), closes under brackets and under [Lambda^a(X), .] until the dimension stabilises.
HolonomyAlgebra holonomyAlgebra(const ConnectionMap& connA, const RealTensor& ra, const MetricData& g,
                                double relTol = 1e-9, int cap = -1);

// J-hat = J on H and -J on V; alpha is replaced by its conjugate so it stays of type (1,0).
SplitHermitianStructure structureSwap(const SplitHermitianStructure& split);

struct AdaptedFrame {
  Eigen::MatrixXd P;  // columns: x_0, Jx_0, ..., x_{2n}, Jx_{2n}; horizontal quaternionic lines first
  Complex lambda;     // Ta(e_0, e_1, conj e_{2n})
  double orthonormalityResidual = 0.0;
  double complexResidual = 0.0;   // |J P - P J_model|
  double omegaResidual = 0.0;     // |P* omega - omega_0|
  double torsionResidual = 0.0;   // |P* Ta - (lambda T0 + conj)|
  Eigen::MatrixXd toModel(const Eigen::MatrixXd& x, const MetricData& g) const { return P.transpose() * g.matrix() * x * P; }
};
AdaptedFrame adaptedFrame(const SplitHermitianStructure& split, const RealTensor& ta);

struct U1GeneratorCheck {
  double fittedConstant = 0.0;  // c with J|H + 2J|V = c sum_k Ra(e_k, J e_k)
  double statedConstant = 0.0;  // -12n/((2n+1)|T|^2)
  double correctedConstant = 0.0;  // -6n/((n+1)|T|^2)
  double statedResidual = 0.0;
  double correctedResidual = 0.0;
  double fitResidual = 0.0;
};
U1GeneratorCheck u1GeneratorCheck(const RealTensor& ra, const RealTensor& ta, const SplitHermitianStructure& split);

// Smallest singular value of X -> Ta(X,.,.) over g-unit X.
double torsionNondegeneracy(const RealTensor& ta, const MetricData& g);

}  // namespace skewlab
