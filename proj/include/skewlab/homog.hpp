#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "skewlab/multilinear.hpp"

namespace skewlab {

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reductive homogeneous space G/H evaluated at the origin: structure constants
// C(k,i,j) with [e_i, e_j] = sum_k C(k,i,j) e_k, index sets of h and m, and an
// Ad(H)-invariant metric on m. Vectors of m are given in m-coordinates.
class HomogeneousSpace {
 public:
  HomogeneousSpace() = default;
  HomogeneousSpace(std::string name, RealTensor structure, std::vector<int> isotropy, std::vector<int> complement,
                   MetricData metric);
  // Structure constants from a basis of a matrix Lie algebra by least squares.
  static RealTensor structureConstants(const std::vector<Eigen::MatrixXd>& basis);

  const std::string& name() const { return name_; }
  int algebraDim() const { return structure_.dim(); }
  int dim() const { return static_cast<int>(m_.size()); }
  const std::vector<int>& isotropy() const { return h_; }
  const std::vector<int>& complement() const { return m_; }
  const MetricData& metric() const { return metric_; }
  const RealTensor& structure() const { return structure_; }

  Eigen::VectorXd bracketM(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  Eigen::VectorXd bracketH(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  // m-component of [e_x, e_y] for m-basis indices.
  Eigen::VectorXd bracketM(int x, int y) const;
  Eigen::VectorXd bracketH(int x, int y) const;
  // ad(e_i) restricted to m and projected to m, for an index of the full algebra.
  Eigen::MatrixXd adOnM(int algebraIndex) const;
  // ad of an isotropy element given in h-coordinates, acting on m.
  Eigen::MatrixXd isotropyAction(const Eigen::VectorXd& hCoords) const;

  double jacobiResidual() const;
  double reductivityResidual() const;
  double isotropySkewResidual() const;

 private:
  std::string name_;
  RealTensor structure_;
  std::vector<int> h_;
  std::vector<int> m_;
  MetricData metric_;
  RealTensor cm_;  // cm_(x,y,w): m-part of [m_x, m_y]
  RealTensor ch_;  // ch_(x,y,a): h-part, padded to algebra dim
  std::vector<Eigen::MatrixXd> adIso_;
};

// Invariant connection at the origin: Lambda(X) in End(m) for each m-basis vector X.
class ConnectionMap {
 public:
  ConnectionMap() = default;
  explicit ConnectionMap(std::vector<Eigen::MatrixXd> lambda);
  static ConnectionMap fromTensor(const RealTensor& t);

  int dim() const { return static_cast<int>(lambda_.size()); }
  const Eigen::MatrixXd& operator()(int x) const { return lambda_[static_cast<std::size_t>(x)]; }
  Eigen::MatrixXd apply(const Eigen::VectorXd& x) const;
  // Valence (1,2): t(w, x, y) is the e_w-component of Lambda(e_x) e_y.
  RealTensor tensor() const;
  double metricResidual(const MetricData& g) const;
  double commutatorResidual(const Eigen::MatrixXd& a) const;

 private:
  std::vector<Eigen::MatrixXd> lambda_;
};

struct QuatStructure {
  Eigen::MatrixXd I;
  Eigen::MatrixXd J;
  Eigen::MatrixXd K;
  double residual(const MetricData& g) const;
};

enum class BaseModel { S4, CP2, HPn };

BaseModel parseBaseModel(const std::string& name);
std::string baseModelName(BaseModel m);

struct BaseSpace {
  BaseModel model = BaseModel::S4;
  int n = 1;
  double scale = 1.0;
  HomogeneousSpace space;
  QuatStructure quat;
  // Algebra indices of the sp(1) (resp. su(2)) factor of the isotropy generating I', J', K'.
  std::vector<int> quatIndices;
  // Remaining isotropy indices.
  std::vector<int> otherIsotropy;
};

// S^4 = Sp(2)/Sp(1)Sp(1), HP^n = Sp(n+1)/Sp(n)Sp(1), CP^2 = SU(3)/S(U(2)U(1)).
// scale multiplies the metric; at scale 1 the HP^n metric has s' = 4n(n+2) (unit S^4)
// and CP^2 carries the Fubini-Study metric of holomorphic sectional curvature 4.
BaseSpace buildBase(BaseModel model, int n, double scale = 1.0);

ConnectionMap leviCivita(const HomogeneousSpace& space);

// R(X,Y,Z,W) = g(R(X,Y)Z, W), R(X,Y) = [L(X),L(Y)] - L([X,Y]_m) - ad([X,Y]_h).
RealTensor curvature(const HomogeneousSpace& space, const ConnectionMap& conn);

// (1,2) torsion lowered: T(X,Y,W) = g(L(X)Y - L(Y)X - [X,Y]_m, W).
RealTensor torsionOf(const HomogeneousSpace& space, const ConnectionMap& conn);

// Covariant derivative of an invariant tensor at the origin. The new covariant
// slot holds the direction and is placed first among the covariant slots:
// (nabla_X T)(Y_1..) = -sum_i T(..L(X) Y_i..) (and L(X) on contravariant slots).
RealTensor covariantDerivativeInvariant(const ConnectionMap& conn, const RealTensor& t);

struct RicciResult {
  RealTensor ric;
  double scalar = 0.0;
};
// Ric(Y,Z) = sum g^{ij} R(e_i, Y, Z, e_j), s = tr_g Ric. Positive on round spheres.
RicciResult ricciScalar(const RealTensor& r, const MetricData& g);

// Exterior derivative of an invariant k-form:
// d a(X_0..X_k) = sum_{i<j} (-1)^{i+j} a([X_i,X_j]_m, X_0,..^i..^j..,X_k).
RealTensor exteriorDerivative(const HomogeneousSpace& space, const RealTensor& form);

// Sectional curvature R(X,Y,Y,X) / (|X|^2|Y|^2 - g(X,Y)^2).
double sectionalCurvature(const RealTensor& r, const MetricData& g, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Curvature tensor of HP^n built from g and a quaternionic triple.
RealTensor quaternionicModelCurvature(const Eigen::MatrixXd& g, const Eigen::MatrixXd& i, const Eigen::MatrixXd& j,
                                      const Eigen::MatrixXd& k);

}  // namespace skewlab
