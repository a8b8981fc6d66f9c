#pragma once

#include <Eigen/Dense>
#include <vector>

#include "skewlab/tensor.hpp"

namespace skewlab {

// Positive definite symmetric bilinear form on the model space.
class MetricData {
 public:
  MetricData() = default;
  explicit MetricData(Eigen::MatrixXd g);
  static MetricData identity(int dim) { return MetricData(Eigen::MatrixXd::Identity(dim, dim)); }

  int dim() const { return static_cast<int>(g_.rows()); }
  const Eigen::MatrixXd& matrix() const { return g_; }
  const Eigen::MatrixXd& inverse() const { return gInv_; }
  // Columns form a g-orthonormal basis.
  const Eigen::MatrixXd& frame() const { return frame_; }
  RealTensor tensor() const;

 private:
  Eigen::MatrixXd g_;
  Eigen::MatrixXd gInv_;
  Eigen::MatrixXd frame_;
};

class ComplexStructureData {
 public:
  ComplexStructureData() = default;
  explicit ComplexStructureData(Eigen::MatrixXd J);

  int dim() const { return static_cast<int>(J_.rows()); }
  const Eigen::MatrixXd& matrix() const { return J_; }
  RealTensor tensor() const;
  double orthogonalityResidual(const MetricData& g) const;

 private:
  Eigen::MatrixXd J_;
};

// Rank-2 tensors <-> matrices. A (1,1) tensor A^i_j is the matrix sending e_j to sum_i A(i,j) e_i;
// a (0,2) tensor b(x,y) is the matrix with entries b(x,y).
RealTensor fromMatrix(const Eigen::MatrixXd& m, int contra, int co);
ComplexTensor fromMatrix(const Eigen::MatrixXcd& m, int contra, int co);
Eigen::MatrixXd toMatrix(const RealTensor& t);
Eigen::MatrixXcd toMatrix(const ComplexTensor& t);

// The 2-form (X,Y) -> g(AX,Y).
RealTensor formOfEndomorphism(const Eigen::MatrixXd& a, const MetricData& g);
ComplexTensor covectorTensor(const Eigen::VectorXcd& v);
RealTensor covectorTensor(const Eigen::VectorXd& v);

// out(..a..) = sum_k m(k,a) t(..k..) in the given slot. For a covariant slot this
// is the pullback t(.., m e_a, ..).
RealTensor applySlot(const RealTensor& t, int slot, const Eigen::MatrixXd& m);
ComplexTensor applySlot(const ComplexTensor& t, int slot, const Eigen::MatrixXcd& m);

// Infinitesimal action of an endomorphism x: derivation on every slot,
// (x.t)(Y..) = -sum_i t(..x Y_i..) on covariant slots, x applied on contravariant ones.
RealTensor derivationAction(const Eigen::MatrixXd& x, const RealTensor& t);
ComplexTensor derivationAction(const Eigen::MatrixXd& x, const ComplexTensor& t);

// Alternating product with (a^b)(X_1..X_{p+q}) = 1/(p!q!) sum_sigma sgn(sigma) a(..) b(..).
RealTensor wedge(const RealTensor& a, const RealTensor& b);
ComplexTensor wedge(const ComplexTensor& a, const ComplexTensor& b);

// (p,q)-component of a k-form under the eigenspace splitting of J.
ComplexTensor pqProject(const ComplexTensor& form, const ComplexStructureData& J, int p, int q);
ComplexTensor pqProject(const RealTensor& form, const ComplexStructureData& J, int p, int q);

// Sum of |components|^2 after raising every index with g (the "tensorial" norm;
// a k-form has k! times its normalised form norm).
double tensorNormSq(const RealTensor& t, const MetricData& g);
double tensorNormSq(const ComplexTensor& t, const MetricData& g);

// (bR)(X,Y,Z,W) = R(X,Y,Z,W) + R(Y,Z,X,W) + R(Z,X,Y,W).
RealTensor bianchiB(const RealTensor& r);
ComplexTensor bianchiB(const ComplexTensor& r);

// G(X,Y,Z,W) = g(T(X,Y), T(Z,W)) for a (0,3) tensor T (bilinear, no conjugation).
RealTensor torsionPairing(const RealTensor& t, const MetricData& g);
ComplexTensor torsionPairing(const ComplexTensor& t, const MetricData& g);

// sigma_T = cyclic sum over the first three slots of g(T(X,Y),T(Z,W)).
RealTensor sigmaT(const RealTensor& t, const MetricData& g);
ComplexTensor sigmaT(const ComplexTensor& t, const MetricData& g);

// Max |t + t∘swap| over transpositions of the covariant slots.
double skewResidual(const RealTensor& t);
double skewResidual(const ComplexTensor& t);
// Max of the skew defects in (0,1) and (2,3) of a (0,4) tensor.
double curvatureSymmetryResidual(const RealTensor& r);
double pairSymmetryResidual(const RealTensor& r);

// Unitary coframe of (1,0)-forms theta with theta∘J = i theta, built by
// projecting the coordinate covectors in index order and orthonormalising
// with respect to g. Columns of the returned matrix.
Eigen::MatrixXcd coframe10(const ComplexStructureData& J, const MetricData& g);
// Dual frame of (1,0)-vectors: columns e_a with theta_b(e_a) = delta.
Eigen::MatrixXcd frame10(const ComplexStructureData& J, const MetricData& g);

// Orthonormal basis (tensorial hermitian product) of the (p,q)-forms.
std::vector<ComplexTensor> pqBasis(const ComplexStructureData& J, const MetricData& g, int p, int q);

// Hermitian tensorial inner product <a,b> = sum conj(a) b with indices raised by g.
Complex tensorInner(const ComplexTensor& a, const ComplexTensor& b, const MetricData& g);

// Pullback of a covariant tensor along a (possibly rectangular) linear map: out(a..) = t(L e_a, ..).
RealTensor restrictCovariant(const RealTensor& t, const Eigen::MatrixXd& lift);

}  // namespace skewlab
