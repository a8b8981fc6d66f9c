#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "skewlab/homog.hpp"
#include "skewlab/structures.hpp"

namespace skewlab {

struct NamedResidual {
  std::string name;
  double residual = 0.0;
};

enum class Structure { J1, J2 };
Structure parseStructure(const std::string& s);
std::string structureName(Structure s);

// Riemannian submersion between homogeneous spaces at the origin. linkage maps
// base m-coordinates to their horizontal lifts in total m-coordinates.
struct SubmersionData {
  HomogeneousSpace total;
  HomogeneousSpace base;
  Eigen::MatrixXd linkage;
  Eigen::MatrixXd hProj;
  Eigen::MatrixXd vProj;
  // Algebra indices of the elements spanning the vertical part of total m.
  std::vector<int> verticalGenerators;
  double isometryResidual() const;
};

struct TwistorSpace {
  BaseSpace base;
  SubmersionData sub;
  SplitHermitianStructure split;
  Structure structure = Structure::J1;
  double sPrime = 0.0;
  double t0 = 0.0;  // Kaehler parameter 4(n+2)/s'
  double t1 = 0.0;  // nearly Kaehler parameter 2(n+2)/s'
  // Columns: coordinates of the vertical basis vectors in the frame (I', J', K').
  Eigen::MatrixXd verticalCoords;
  // Vertical vectors corresponding to I' and K' under the fibre identification.
  Eigen::VectorXd iHat;
  Eigen::VectorXd kHat;
  // +1 when J on V is the standard orientation of the fibre (J1), -1 otherwise.
  int verticalSign = 1;
};

double baseScalarCurvature(const BaseSpace& base);

// Total space with isotropy reduced to the stabiliser of J', metric h_t
// (g' on H, the round metric of curvature 1/(nt) on the fibre) and J1 or J2.
TwistorSpace buildTwistor(const BaseSpace& base, double t, Structure structure);

// coeff (omega ^ conj(alpha1) + conj(omega) ^ alpha1) with coeff = (2 - s't/(2(n+2)))/sqrt(2nt),
// where alpha1 is the (1,0)-form of the integrable orientation on V.
RealTensor torsionFormula(const SplitHermitianStructure& s, double sPrime, int n, int verticalSign = 1);
double torsionFormulaNormSq(double sPrime, int n, double t);

// A(X,Y) = v(nabla_X Y) for horizontal X, Y and 0 otherwise; valence (1,2) as in ConnectionMap::tensor.
RealTensor oneillA(const SubmersionData& sub, const ConnectionMap& lc);
// Base curvature from the total Levi-Civita curvature and A:
// R'(X,Y,Z,W) = R(hX,hY,hZ,hW) + g(A_Y Z, A_X W) - g(A_X Z, A_Y W) - 2 g(A_X Y, A_Z W).
RealTensor oneillBaseCurvature(const SubmersionData& sub, const RealTensor& rTotal, const RealTensor& a);
// R'(X,Y,Z,W) = Ra(hX,hY,hZ,hW) - g(Ta(hX,hY), Ta(hZ,hW)).
RealTensor projectCurvature(const SubmersionData& sub, const RealTensor& ra, const RealTensor& ta);

// Splitting identities between the Levi-Civita connection and nabla^a on basis vectors.
std::vector<NamedResidual> splittingIdentityChecks(const SubmersionData& sub, const ConnectionMap& lc,
                                                   const ConnectionMap& ca, const RealTensor& ta);

struct ProjectabilityResult {
  bool projectable = false;
  double residual = 0.0;  // max over the vertical basis of |h L_U (hT)|
};

// Vertical Lie derivative realised through the infinitesimal fibre action ad(U)
// on the horizontal part of an invariant tensor.
ProjectabilityResult projectabilityCheck(const RealTensor& t, const SubmersionData& sub, double tol = 1e-9);

struct QuaternionicSpanResult {
  double residual = 0.0;  // distance of h L_U(L) from span{I,J,K} on H
  std::vector<Eigen::Matrix3d> coefficients;  // per vertical basis vector: columns = coordinates of h L_U(I), (J), (K)
};
QuaternionicSpanResult quaternionicSpanCheck(const TwistorSpace& tw);

}  // namespace skewlab
