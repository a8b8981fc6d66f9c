#include "skewlab/multilinear.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "skewlab/linalg.hpp"

namespace skewlab {

namespace {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

std::size_t ipow(int base, int e) {
  std::size_t r = 1;
  for (int k = 0; k < e; ++k) r *= static_cast<std::size_t>(base);
  return r;
}

template <class S>
DenseTensor<S> applySlotT(const DenseTensor<S>& t, int slot, const Mat<S>& m) {
  const int d = t.dim();
  if (slot < 0 || slot >= t.rank()) throw ShapeError("applySlot: slot out of range");
  if (m.rows() != d || m.cols() != d) throw ShapeError("applySlot: matrix dimension mismatch");
  DenseTensor<S> out(d, t.contravariant(), t.covariantCount());
  const std::size_t inner = ipow(d, t.rank() - 1 - slot);
  const std::size_t outer = ipow(d, slot);
  const auto& src = t.data();
  auto& dst = out.data();
  for (std::size_t o = 0; o < outer; ++o) {
    for (int a = 0; a < d; ++a) {
      S* drow = dst.data() + (o * d + a) * inner;
      for (int k = 0; k < d; ++k) {
        const S c = m(k, a);
        if (c == S(0)) continue;
        const S* srow = src.data() + (o * d + k) * inner;
        for (std::size_t i = 0; i < inner; ++i) drow[i] += c * srow[i];
      }
    }
  }
  return out;
}

template <class S>
DenseTensor<S> derivationT(const Mat<S>& x, const DenseTensor<S>& t) {
  DenseTensor<S> out(t.dim(), t.contravariant(), t.covariantCount());
  const Mat<S> xt = x.transpose();
  for (int s = 0; s < t.rank(); ++s) {
    if (s < t.contravariant())
      out += applySlotT<S>(t, s, xt);
    else
      out -= applySlotT<S>(t, s, x);
  }
  return out;
}

int parity(const std::vector<int>& p) {
  int sgn = 1;
  std::vector<int> q = p;
  for (std::size_t i = 0; i < q.size(); ++i) {
    while (q[i] != static_cast<int>(i)) {
      std::swap(q[i], q[q[i]]);
      sgn = -sgn;
    }
  }
  return sgn;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

template <class S>
DenseTensor<S> wedgeT(const DenseTensor<S>& a, const DenseTensor<S>& b) {
  if (a.dim() != b.dim()) throw ShapeError("wedge: dimension mismatch");
  if (a.contravariant() != 0 || b.contravariant() != 0) throw ShapeError("wedge: forms must be covariant");
  const int p = a.covariantCount();
  const int q = b.covariantCount();
  const int k = p + q;
  DenseTensor<S> out = DenseTensor<S>::covariant(a.dim(), k);
  std::vector<int> perm(k);
  std::vector<std::pair<std::vector<int>, int>> perms;
  std::iota(perm.begin(), perm.end(), 0);
  do perms.emplace_back(perm, parity(perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  const double norm = 1.0 / (factorial(p) * factorial(q));
  std::vector<int> ia(p), ib(q);
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto idx = out.unflatten(f);
    // Repeated indices give zero.
    auto sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    S acc(0);
    for (const auto& [pm, sg] : perms) {
      for (int i = 0; i < p; ++i) ia[i] = idx[pm[i]];
      for (int i = 0; i < q; ++i) ib[i] = idx[pm[p + i]];
      S va = p ? a.at(ia) : a.flat(0);
      if (va == S(0)) continue;
      S vb = q ? b.at(ib) : b.flat(0);
      acc += static_cast<double>(sg) * va * vb;
    }
    out.flat(f) = acc * norm;
  }
  out.setFlags(kSkewCovariant);
  return out;
}

template <class S>
double skewResidualT(const DenseTensor<S>& t) {
  double m = 0.0;
  const int r0 = t.contravariant();
  for (int i = r0; i < t.rank(); ++i) {
    for (int j = i + 1; j < t.rank(); ++j) {
      std::vector<int> p(t.rank());
      std::iota(p.begin(), p.end(), 0);
      std::swap(p[i], p[j]);
      auto sw = permute(t, p);
      for (std::size_t k = 0; k < t.size(); ++k) m = std::max(m, static_cast<double>(std::abs(t.flat(k) + sw.flat(k))));
    }
  }
  return m;
}

template <class S>
DenseTensor<S> toFrame(const DenseTensor<S>& t, const MetricData& g) {
  const Mat<S> f = g.frame().cast<S>();
  const Mat<S> finvT = g.frame().inverse().transpose().cast<S>();
  DenseTensor<S> out = t;
  for (int s = 0; s < t.rank(); ++s) out = applySlotT<S>(out, s, s < t.contravariant() ? finvT : f);
  return out;
}

template <class S>
DenseTensor<S> pairingT(const DenseTensor<S>& t, const MetricData& g) {
  if (t.contravariant() != 0 || t.covariantCount() != 3) throw ShapeError("torsionPairing: need a (0,3) tensor");
  const int d = t.dim();
  // Raise the last index: ts(x,y,v) = sum_u t(x,y,u) ginv(u,v).
  DenseTensor<S> ts = applySlotT<S>(t, 2, g.inverse().cast<S>());
  DenseTensor<S> out = DenseTensor<S>::covariant(d, 4);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int w = 0; w < d; ++w) {
          S acc(0);
          for (int v = 0; v < d; ++v) acc += ts(x, y, v) * t(z, w, v);
          out(x, y, z, w) = acc;
        }
  return out;
}

template <class S>
DenseTensor<S> bianchiT(const DenseTensor<S>& r) {
  if (r.contravariant() != 0 || r.covariantCount() != 4) throw ShapeError("bianchiB: need a (0,4) tensor");
  return r + permute(r, {1, 2, 0, 3}) + permute(r, {2, 0, 1, 3});
}

template <class S>
DenseTensor<S> fromMatrixT(const Mat<S>& m, int contra, int co) {
  if (contra + co != 2 || m.rows() != m.cols()) throw ShapeError("fromMatrix: need a square matrix and rank 2");
  DenseTensor<S> t(static_cast<int>(m.rows()), contra, co);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t(i, j) = m(i, j);
  return t;
}

template <class S>
Mat<S> toMatrixT(const DenseTensor<S>& t) {
  if (t.rank() != 2) throw ShapeError("toMatrix: rank must be 2");
  Mat<S> m(t.dim(), t.dim());
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j) m(i, j) = t(i, j);
  return m;
}

}  // namespace

MetricData::MetricData(Eigen::MatrixXd g) : g_(std::move(g)) {
  if (g_.rows() != g_.cols() || g_.rows() == 0) throw ShapeError("MetricData: matrix must be square");
  if (maxAbs(g_ - g_.transpose()) > 1e-12 * std::max(1.0, maxAbs(g_)))
    throw ContractError("MetricData: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g_);
  if (es.eigenvalues()(0) <= 0.0) throw ContractError("MetricData: matrix is not positive definite");
  gInv_ = g_.inverse();
  frame_ = orthonormalFrame(g_);
}

RealTensor MetricData::tensor() const {
  auto t = fromMatrix(g_, 0, 2);
  t.setFlags(kSymmetric2);
  return t;
}

ComplexStructureData::ComplexStructureData(Eigen::MatrixXd J) : J_(std::move(J)) {
  if (J_.rows() != J_.cols() || J_.rows() % 2 != 0) throw ShapeError("ComplexStructureData: need an even square matrix");
  const Eigen::Index d = J_.rows();
  if (maxAbs(J_ * J_ + Eigen::MatrixXd::Identity(d, d)) > 1e-10)
    throw ContractError("ComplexStructureData: J^2 != -1");
}

RealTensor ComplexStructureData::tensor() const { return fromMatrix(J_, 1, 1); }

double ComplexStructureData::orthogonalityResidual(const MetricData& g) const {
  return maxAbs(J_.transpose() * g.matrix() * J_ - g.matrix());
}

RealTensor fromMatrix(const Eigen::MatrixXd& m, int contra, int co) { return fromMatrixT<double>(m, contra, co); }
ComplexTensor fromMatrix(const Eigen::MatrixXcd& m, int contra, int co) { return fromMatrixT<Complex>(m, contra, co); }
Eigen::MatrixXd toMatrix(const RealTensor& t) { return toMatrixT(t); }
Eigen::MatrixXcd toMatrix(const ComplexTensor& t) { return toMatrixT(t); }

RealTensor formOfEndomorphism(const Eigen::MatrixXd& a, const MetricData& g) {
  // b(x,y) = g(A e_x, e_y) = (A^T g)(x,y)
  return fromMatrix(Eigen::MatrixXd(a.transpose() * g.matrix()), 0, 2);
}

ComplexTensor covectorTensor(const Eigen::VectorXcd& v) {
  ComplexTensor t = ComplexTensor::covariant(static_cast<int>(v.size()), 1);
  for (int i = 0; i < v.size(); ++i) t(i) = v(i);
  return t;
}

RealTensor covectorTensor(const Eigen::VectorXd& v) {
  RealTensor t = RealTensor::covariant(static_cast<int>(v.size()), 1);
  for (int i = 0; i < v.size(); ++i) t(i) = v(i);
  return t;
}

RealTensor applySlot(const RealTensor& t, int slot, const Eigen::MatrixXd& m) { return applySlotT<double>(t, slot, m); }
ComplexTensor applySlot(const ComplexTensor& t, int slot, const Eigen::MatrixXcd& m) {
  return applySlotT<Complex>(t, slot, m);
}

RealTensor derivationAction(const Eigen::MatrixXd& x, const RealTensor& t) { return derivationT<double>(x, t); }
ComplexTensor derivationAction(const Eigen::MatrixXd& x, const ComplexTensor& t) {
  return derivationT<Complex>(x.cast<Complex>(), t);
}

RealTensor wedge(const RealTensor& a, const RealTensor& b) { return wedgeT(a, b); }
ComplexTensor wedge(const ComplexTensor& a, const ComplexTensor& b) { return wedgeT(a, b); }

ComplexTensor pqProject(const ComplexTensor& form, const ComplexStructureData& J, int p, int q) {
  const int k = form.covariantCount();
  if (form.contravariant() != 0) throw ShapeError("pqProject: need a covariant form");
  if (p < 0 || q < 0 || p + q != k) throw ContractError("pqProject: p + q must equal the form degree");
  if (form.dim() != J.dim()) throw ShapeError("pqProject: dimension mismatch");
  if (skewResidual(form) > 1e-8 * std::max(1.0, form.maxAbs())) throw ContractError("pqProject: input is not skew");
  const Eigen::Index d = J.dim();
  const Complex i(0.0, 1.0);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  const Eigen::MatrixXcd Jc = J.matrix().cast<Complex>();
  const Eigen::MatrixXcd pi10 = 0.5 * (id - i * Jc);
  const Eigen::MatrixXcd pi01 = 0.5 * (id + i * Jc);
  ComplexTensor out = ComplexTensor::covariant(form.dim(), k);
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    if (std::popcount(mask) != p) continue;
    ComplexTensor term = form;
    for (int s = 0; s < k; ++s) term = applySlot(term, s, (mask >> s) & 1u ? pi10 : pi01);
    out += term;
  }
  return out;
}

ComplexTensor pqProject(const RealTensor& form, const ComplexStructureData& J, int p, int q) {
  return pqProject(complexify(form), J, p, q);
}

double tensorNormSq(const RealTensor& t, const MetricData& g) {
  if (t.dim() != g.dim()) throw ShapeError("tensorNormSq: dimension mismatch");
  auto f = toFrame(t, g);
  double s = 0.0;
  for (double v : f.data()) s += v * v;
  return s;
}

double tensorNormSq(const ComplexTensor& t, const MetricData& g) {
  if (t.dim() != g.dim()) throw ShapeError("tensorNormSq: dimension mismatch");
  auto f = toFrame(t, g);
  double s = 0.0;
  for (const auto& v : f.data()) s += std::norm(v);
  return s;
}

RealTensor bianchiB(const RealTensor& r) { return bianchiT(r); }
ComplexTensor bianchiB(const ComplexTensor& r) { return bianchiT(r); }

RealTensor torsionPairing(const RealTensor& t, const MetricData& g) { return pairingT(t, g); }
ComplexTensor torsionPairing(const ComplexTensor& t, const MetricData& g) { return pairingT(t, g); }

RealTensor sigmaT(const RealTensor& t, const MetricData& g) { return bianchiT(pairingT(t, g)); }
ComplexTensor sigmaT(const ComplexTensor& t, const MetricData& g) { return bianchiT(pairingT(t, g)); }

double skewResidual(const RealTensor& t) { return skewResidualT(t); }
double skewResidual(const ComplexTensor& t) { return skewResidualT(t); }

double curvatureSymmetryResidual(const RealTensor& r) {
  return std::max(maxAbsDiff(r, -permute(r, {1, 0, 2, 3})), maxAbsDiff(r, -permute(r, {0, 1, 3, 2})));
}

double pairSymmetryResidual(const RealTensor& r) { return maxAbsDiff(r, permute(r, {2, 3, 0, 1})); }

Eigen::MatrixXcd coframe10(const ComplexStructureData& J, const MetricData& g) {
  const Eigen::Index d = J.dim();
  const Complex i(0.0, 1.0);
  const Eigen::MatrixXcd gi = g.inverse().cast<Complex>();
  auto herm = [&](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return (a.transpose() * gi * b.conjugate())(0, 0);
  };
  std::vector<Eigen::VectorXcd> out;
  for (Eigen::Index k = 0; k < d && static_cast<Eigen::Index>(out.size()) < d / 2; ++k) {
    Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(d);
    xi(k) = 1.0;
    Eigen::VectorXcd th = 0.5 * (xi - i * (J.matrix().transpose().cast<Complex>() * xi));
    for (const auto& e : out) th -= herm(th, e) * e;
    double n = std::sqrt(std::abs(herm(th, th)));
    if (n < 1e-8) continue;
    out.push_back(th / n);
  }
  Eigen::MatrixXcd m(d, static_cast<Eigen::Index>(out.size()));
  for (std::size_t c = 0; c < out.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = out[c];
  return m;
}

Eigen::MatrixXcd frame10(const ComplexStructureData& J, const MetricData& g) {
  return g.inverse().cast<Complex>() * coframe10(J, g).conjugate();
}

std::vector<ComplexTensor> pqBasis(const ComplexStructureData& J, const MetricData& g, int p, int q) {
  const Eigen::MatrixXcd th = coframe10(J, g);
  const int m = static_cast<int>(th.cols());
  const int d = J.dim();
  std::vector<std::vector<int>> subsP, subsQ;
  auto subsets = [m](int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> mask(m, 0);
    std::fill(mask.begin(), mask.begin() + k, 1);
    do {
      std::vector<int> s;
      for (int i = 0; i < m; ++i)
        if (mask[i]) s.push_back(i);
      out.push_back(s);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
  };
  subsP = subsets(p);
  subsQ = subsets(q);
  std::vector<ComplexTensor> out;
  for (const auto& a : subsP) {
    for (const auto& b : subsQ) {
      ComplexTensor f = ComplexTensor::covariant(d, 0);
      f.flat(0) = 1.0;
      for (int i : a) f = wedge(f, covectorTensor(Eigen::VectorXcd(th.col(i))));
      for (int j : b) f = wedge(f, covectorTensor(Eigen::VectorXcd(th.col(j).conjugate())));
      double n = std::sqrt(tensorNormSq(f, g));
      out.push_back(Complex(1.0 / n) * f);
    }
  }
  return out;
}

Complex tensorInner(const ComplexTensor& a, const ComplexTensor& b, const MetricData& g) {
  a.requireSameShape(b, "tensorInner");
  auto fa = toFrame(a, g);
  auto fb = toFrame(b, g);
  Complex s(0.0);
  for (std::size_t k = 0; k < fa.size(); ++k) s += std::conj(fa.flat(k)) * fb.flat(k);
  return s;
}

RealTensor restrictCovariant(const RealTensor& t, const Eigen::MatrixXd& lift) {
  if (t.contravariant() != 0) throw ShapeError("restrictCovariant: need a covariant tensor");
  if (lift.rows() != t.dim()) throw ShapeError("restrictCovariant: lift has wrong row count");
  const int db = static_cast<int>(lift.cols());
  const int rank = t.rank();
  // Contract one slot at a time; slots already contracted run over db, the rest over d.
  std::vector<double> cur = t.data();
  std::vector<int> dims(rank, t.dim());
  for (int s = 0; s < rank; ++s) {
    std::size_t before = 1, after = 1;
    for (int p = 0; p < s; ++p) before *= dims[p];
    for (int p = s + 1; p < rank; ++p) after *= dims[p];
    std::vector<double> next(before * db * after, 0.0);
    for (std::size_t i = 0; i < before; ++i)
      for (int k = 0; k < dims[s]; ++k)
        for (int a = 0; a < db; ++a) {
          const double c = lift(k, a);
          if (c == 0.0) continue;
          const double* src = &cur[(i * dims[s] + k) * after];
          double* dst = &next[(i * db + a) * after];
          for (std::size_t j = 0; j < after; ++j) dst[j] += c * src[j];
        }
    cur.swap(next);
    dims[s] = db;
  }
  RealTensor out = RealTensor::covariant(db, rank);
  out.data() = cur;
  return out;
}

}  // namespace skewlab
