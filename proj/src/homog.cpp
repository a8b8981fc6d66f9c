#include "skewlab/homog.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "skewlab/linalg.hpp"
#include "skewlab/repthy.hpp"

namespace skewlab {

namespace {

// Left multiplication by the quaternion a + bi + cj + dk on R^4 = H.
Eigen::Matrix4d quatLeft(double a, double b, double c, double d) {
  Eigen::Matrix4d m;
  m << a, -b, -c, -d, b, a, -d, c, c, d, a, -b, d, -c, b, a;
  return m;
}

Eigen::MatrixXd quatBlock(int k, int i, int j, const Eigen::Matrix4d& q) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4 * k, 4 * k);
  m.block(4 * i, 4 * j, 4, 4) = q;
  return m;
}

struct Split {
  std::vector<Eigen::MatrixXd> other, sp1, m;
  double kappa = 0.5;
};

// sp(k) with isotropy sp(k-1) + sp(1) (the sp(1) acting on the last quaternionic line).
Split symplecticSplit(int k) {
  const Eigen::Matrix4d units[4] = {quatLeft(1, 0, 0, 0), quatLeft(0, 1, 0, 0), quatLeft(0, 0, 1, 0),
                                    quatLeft(0, 0, 0, 1)};
  Split s;
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j)
      for (int u = (i == j ? 1 : 0); u < 4; ++u) {
        Eigen::MatrixXd x = quatBlock(k, i, j, units[u]);
        // conj(q) acts by the transpose of left multiplication
        if (i != j) x -= quatBlock(k, j, i, units[u].transpose());
        if (i == k - 1 && j == k - 1)
          s.sp1.push_back(x);
        else if (j == k - 1)
          s.m.push_back(x);
        else
          s.other.push_back(x);
      }
  s.kappa = 0.5;
  return s;
}

Split unitarySplit() {
  auto e = [](int a, int b) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
    m(a, b) = 1.0;
    return m;
  };
  const Complex i(0, 1);
  Split s;
  s.sp1 = {realify(i * (e(0, 0) - e(1, 1))), realify(e(0, 1) - e(1, 0)), realify(i * (e(0, 1) + e(1, 0)))};
  s.other = {realify(i * (e(0, 0) + e(1, 1) - 2.0 * e(2, 2)))};
  for (int a = 0; a < 2; ++a) {
    s.m.push_back(realify(e(a, 2) - e(2, a)));
    s.m.push_back(realify(i * (e(a, 2) + e(2, a))));
  }
  s.kappa = 0.25;
  return s;
}

Eigen::MatrixXd normalizeComplexStructure(const Eigen::MatrixXd& a) {
  const double s = std::sqrt(-(a * a).trace() / static_cast<double>(a.rows()));
  return a / s;
}

}  // namespace

HomogeneousSpace::HomogeneousSpace(std::string name, RealTensor structure, std::vector<int> isotropy,
                                   std::vector<int> complement, MetricData metric)
    : name_(std::move(name)),
      structure_(std::move(structure)),
      h_(std::move(isotropy)),
      m_(std::move(complement)),
      metric_(std::move(metric)) {
  const int n = structure_.dim();
  std::set<int> all(h_.begin(), h_.end());
  all.insert(m_.begin(), m_.end());
  if (static_cast<int>(all.size()) != n || static_cast<int>(h_.size() + m_.size()) != n)
    throw StructuralError("HomogeneousSpace: isotropy and complement must partition the algebra basis");
  if (metric_.dim() != dim()) throw ShapeError("HomogeneousSpace: metric dimension mismatch");
  const int d = dim();
  const int nh = static_cast<int>(h_.size());
  cm_ = RealTensor::covariant(d, 3);
  ch_ = RealTensor(std::max(d, nh), 0, 3);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      for (int w = 0; w < d; ++w) cm_(x, y, w) = structure_(m_[w], m_[x], m_[y]);
      for (int a = 0; a < nh; ++a) ch_(x, y, a) = structure_(h_[a], m_[x], m_[y]);
    }
  for (int a = 0; a < nh; ++a) adIso_.push_back(adOnM(h_[a]));
}

RealTensor HomogeneousSpace::structureConstants(const std::vector<Eigen::MatrixXd>& basis) {
  const int n = static_cast<int>(basis.size());
  const Eigen::MatrixXd a = vectorizeColumns(basis);
  auto qr = a.colPivHouseholderQr();
  if (qr.rank() != n) throw StructuralError("structureConstants: basis is linearly dependent");
  RealTensor c(n, 1, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::MatrixXd br = basis[i] * basis[j] - basis[j] * basis[i];
      Eigen::Map<const Eigen::VectorXd> v(br.data(), br.size());
      Eigen::VectorXd coef = qr.solve(v);
      if ((a * coef - v).norm() > 1e-10 * std::max(1.0, v.norm()))
        throw StructuralError("structureConstants: basis is not closed under brackets");
      for (int k = 0; k < n; ++k) c(k, i, j) = coef(k);
    }
  return c;
}

Eigen::VectorXd HomogeneousSpace::bracketM(int x, int y) const {
  Eigen::VectorXd v(dim());
  for (int w = 0; w < dim(); ++w) v(w) = cm_(x, y, w);
  return v;
}

Eigen::VectorXd HomogeneousSpace::bracketH(int x, int y) const {
  const int nh = static_cast<int>(h_.size());
  Eigen::VectorXd v(nh);
  for (int a = 0; a < nh; ++a) v(a) = ch_(x, y, a);
  return v;
}

Eigen::VectorXd HomogeneousSpace::bracketM(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim());
  for (int a = 0; a < dim(); ++a) {
    if (x(a) == 0.0) continue;
    for (int b = 0; b < dim(); ++b)
      if (y(b) != 0.0) v += x(a) * y(b) * bracketM(a, b);
  }
  return v;
}

Eigen::VectorXd HomogeneousSpace::bracketH(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(h_.size()));
  for (int a = 0; a < dim(); ++a) {
    if (x(a) == 0.0) continue;
    for (int b = 0; b < dim(); ++b)
      if (y(b) != 0.0) v += x(a) * y(b) * bracketH(a, b);
  }
  return v;
}

Eigen::MatrixXd HomogeneousSpace::adOnM(int algebraIndex) const {
  Eigen::MatrixXd a(dim(), dim());
  for (int b = 0; b < dim(); ++b)
    for (int w = 0; w < dim(); ++w) a(w, b) = structure_(m_[w], algebraIndex, m_[b]);
  return a;
}

Eigen::MatrixXd HomogeneousSpace::isotropyAction(const Eigen::VectorXd& hCoords) const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim(), dim());
  for (std::size_t k = 0; k < adIso_.size(); ++k)
    if (hCoords(static_cast<Eigen::Index>(k)) != 0.0) a += hCoords(static_cast<Eigen::Index>(k)) * adIso_[k];
  return a;
}

double HomogeneousSpace::jacobiResidual() const {
  const int n = algebraDim();
  const RealTensor& c = structure_;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int p = 0; p < n; ++p) s += c(p, i, j) * c(l, p, k) + c(p, j, k) * c(l, p, i) + c(p, k, i) * c(l, p, j);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

double HomogeneousSpace::reductivityResidual() const {
  double worst = 0.0;
  for (int a : h_)
    for (int x : m_)
      for (int b : h_) worst = std::max(worst, std::abs(structure_(b, a, x)));
  return worst;
}

double HomogeneousSpace::isotropySkewResidual() const {
  double worst = 0.0;
  const Eigen::MatrixXd& g = metric_.matrix();
  for (const auto& a : adIso_) worst = std::max(worst, maxAbs(Eigen::MatrixXd(a.transpose() * g + g * a)));
  return worst;
}

ConnectionMap::ConnectionMap(std::vector<Eigen::MatrixXd> lambda) : lambda_(std::move(lambda)) {
  for (const auto& l : lambda_)
    if (l.rows() != dim() || l.cols() != dim()) throw ShapeError("ConnectionMap: endomorphisms must be dim x dim");
}

ConnectionMap ConnectionMap::fromTensor(const RealTensor& t) {
  if (t.contravariant() != 1 || t.covariantCount() != 2) throw ShapeError("ConnectionMap: need a (1,2) tensor");
  const int d = t.dim();
  std::vector<Eigen::MatrixXd> l(d, Eigen::MatrixXd(d, d));
  for (int w = 0; w < d; ++w)
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y) l[x](w, y) = t(w, x, y);
  return ConnectionMap(std::move(l));
}

Eigen::MatrixXd ConnectionMap::apply(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim(), dim());
  for (int k = 0; k < dim(); ++k)
    if (x(k) != 0.0) a += x(k) * lambda_[k];
  return a;
}

RealTensor ConnectionMap::tensor() const {
  const int d = dim();
  RealTensor t(d, 1, 2);
  for (int w = 0; w < d; ++w)
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y) t(w, x, y) = lambda_[x](w, y);
  return t;
}

double ConnectionMap::metricResidual(const MetricData& g) const {
  double worst = 0.0;
  for (const auto& l : lambda_)
    worst = std::max(worst, maxAbs(Eigen::MatrixXd(l.transpose() * g.matrix() + g.matrix() * l)));
  return worst;
}

double ConnectionMap::commutatorResidual(const Eigen::MatrixXd& a) const {
  double worst = 0.0;
  for (const auto& l : lambda_) worst = std::max(worst, maxAbs(Eigen::MatrixXd(l * a - a * l)));
  return worst;
}

double QuatStructure::residual(const MetricData& g) const {
  const Eigen::Index d = I.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd& m = g.matrix();
  return std::max({maxAbs(Eigen::MatrixXd(I * I + id)), maxAbs(Eigen::MatrixXd(J * J + id)),
                   maxAbs(Eigen::MatrixXd(K * K + id)), maxAbs(Eigen::MatrixXd(I * J - K)),
                   maxAbs(Eigen::MatrixXd(J * K - I)), maxAbs(Eigen::MatrixXd(K * I - J)),
                   maxAbs(Eigen::MatrixXd(I.transpose() * m * I - m)), maxAbs(Eigen::MatrixXd(J.transpose() * m * J - m)),
                   maxAbs(Eigen::MatrixXd(K.transpose() * m * K - m))});
}

BaseModel parseBaseModel(const std::string& name) {
  if (name == "s4") return BaseModel::S4;
  if (name == "cp2") return BaseModel::CP2;
  if (name == "hpn") return BaseModel::HPn;
  throw std::invalid_argument("unknown base model '" + name + "' (expected s4, cp2, hpn)");
}

std::string baseModelName(BaseModel m) {
  switch (m) {
    case BaseModel::S4: return "s4";
    case BaseModel::CP2: return "cp2";
    default: return "hpn";
  }
}

BaseSpace buildBase(BaseModel model, int n, double scale) {
  if (scale <= 0.0) throw std::invalid_argument("buildBase: scale must be positive");
  if ((model == BaseModel::S4 || model == BaseModel::CP2) && n != 1)
    throw std::invalid_argument("buildBase: s4 and cp2 require n = 1");
  if (n < 1) throw std::invalid_argument("buildBase: n must be >= 1");
  Split s = model == BaseModel::CP2 ? unitarySplit() : symplecticSplit(n + 1);
  std::vector<Eigen::MatrixXd> basis = s.other;
  basis.insert(basis.end(), s.sp1.begin(), s.sp1.end());
  basis.insert(basis.end(), s.m.begin(), s.m.end());
  const int nOther = static_cast<int>(s.other.size());
  std::vector<int> h, m;
  for (int k = 0; k < nOther + 3; ++k) h.push_back(k);
  for (int k = nOther + 3; k < static_cast<int>(basis.size()); ++k) m.push_back(k);
  const int d = static_cast<int>(m.size());
  Eigen::MatrixXd g(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) g(a, b) = -scale * s.kappa * (basis[m[a]] * basis[m[b]]).trace();

  BaseSpace out;
  out.model = model;
  out.n = n;
  out.scale = scale;
  std::string name = model == BaseModel::CP2 ? "CP2" : (model == BaseModel::S4 ? "S4" : "HP" + std::to_string(n));
  out.space = HomogeneousSpace(name, HomogeneousSpace::structureConstants(basis), h, m, MetricData(g));
  out.quatIndices = {nOther, nOther + 1, nOther + 2};
  for (int k = 0; k < nOther; ++k) out.otherIsotropy.push_back(k);
  out.quat.I = normalizeComplexStructure(out.space.adOnM(nOther));
  out.quat.J = normalizeComplexStructure(out.space.adOnM(nOther + 1));
  out.quat.K = out.quat.I * out.quat.J;
  return out;
}

ConnectionMap leviCivita(const HomogeneousSpace& space) {
  if (space.reductivityResidual() > 1e-10) throw StructuralError("leviCivita: decomposition is not reductive");
  const int d = space.dim();
  const Eigen::MatrixXd& g = space.metric().matrix();
  const Eigen::MatrixXd& gi = space.metric().inverse();
  std::vector<Eigen::MatrixXd> lam(d, Eigen::MatrixXd(d, d));
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      Eigen::VectorXd r(d);
      for (int z = 0; z < d; ++z) r(z) = 0.5 * (space.bracketM(z, x).dot(g.col(y)) + g.row(x).dot(space.bracketM(z, y)));
      lam[x].col(y) = 0.5 * space.bracketM(x, y) + gi * r;
    }
  return ConnectionMap(std::move(lam));
}

RealTensor curvature(const HomogeneousSpace& space, const ConnectionMap& conn) {
  const int d = space.dim();
  const Eigen::MatrixXd& g = space.metric().matrix();
  RealTensor r = RealTensor::covariant(d, 4);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      Eigen::MatrixXd e = conn(x) * conn(y) - conn(y) * conn(x) - conn.apply(space.bracketM(x, y)) -
                          space.isotropyAction(space.bracketH(x, y));
      Eigen::MatrixXd low = g * e;  // low(w,z) = g(E e_z, e_w)
      for (int z = 0; z < d; ++z)
        for (int w = 0; w < d; ++w) r(x, y, z, w) = low(w, z);
    }
  r.setFlags(kCurvatureType);
  return r;
}

RealTensor torsionOf(const HomogeneousSpace& space, const ConnectionMap& conn) {
  const int d = space.dim();
  const Eigen::MatrixXd& g = space.metric().matrix();
  RealTensor t = RealTensor::covariant(d, 3);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      Eigen::VectorXd v = conn(x).col(y) - conn(y).col(x) - space.bracketM(x, y);
      Eigen::VectorXd low = g * v;
      for (int w = 0; w < d; ++w) t(x, y, w) = low(w);
    }
  return t;
}

RealTensor covariantDerivativeInvariant(const ConnectionMap& conn, const RealTensor& t) {
  const int d = t.dim();
  if (conn.dim() != d) throw ShapeError("covariantDerivativeInvariant: dimension mismatch");
  const int r = t.contravariant();
  RealTensor out(d, r, t.covariantCount() + 1);
  std::vector<int> idx2(t.rank() + 1);
  for (int x = 0; x < d; ++x) {
    RealTensor dx = derivationAction(conn(x), t);
    for (std::size_t k = 0; k < dx.size(); ++k) {
      auto idx = dx.unflatten(k);
      for (int p = 0; p < r; ++p) idx2[p] = idx[p];
      idx2[r] = x;
      for (int p = r; p < t.rank(); ++p) idx2[p + 1] = idx[p];
      out.at(idx2) = dx.flat(k);
    }
  }
  return out;
}

RicciResult ricciScalar(const RealTensor& r, const MetricData& g) {
  if (r.contravariant() != 0 || r.covariantCount() != 4) throw ShapeError("ricciScalar: need a (0,4) tensor");
  const int d = r.dim();
  const Eigen::MatrixXd& gi = g.inverse();
  RicciResult out;
  out.ric = RealTensor::covariant(d, 2);
  for (int y = 0; y < d; ++y)
    for (int z = 0; z < d; ++z) {
      double s = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s += gi(i, j) * r(i, y, z, j);
      out.ric(y, z) = s;
    }
  double s = 0.0;
  for (int y = 0; y < d; ++y)
    for (int z = 0; z < d; ++z) s += gi(y, z) * out.ric(y, z);
  out.scalar = s;
  return out;
}

RealTensor exteriorDerivative(const HomogeneousSpace& space, const RealTensor& form) {
  if (form.contravariant() != 0) throw ShapeError("exteriorDerivative: need a covariant form");
  const int d = space.dim();
  const int k = form.covariantCount();
  RealTensor out = RealTensor::covariant(d, k + 1);
  std::vector<int> rest(k);
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto x = out.unflatten(f);
    double acc = 0.0;
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        Eigen::VectorXd br = space.bracketM(x[i], x[j]);
        int p = 1;
        for (int q = 0; q <= k; ++q)
          if (q != i && q != j) rest[p++] = x[q];
        const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        for (int w = 0; w < d; ++w) {
          if (br(w) == 0.0) continue;
          rest[0] = w;
          acc += sign * br(w) * form.at(rest);
        }
      }
    out.flat(f) = acc;
  }
  return out;
}

double sectionalCurvature(const RealTensor& r, const MetricData& g, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const int d = r.dim();
  double num = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) num += r(a, b, c, e) * x(a) * y(b) * y(c) * x(e);
  const Eigen::MatrixXd& m = g.matrix();
  const double den = x.dot(m * x) * y.dot(m * y) - std::pow(x.dot(m * y), 2);
  return num / den;
}

RealTensor quaternionicModelCurvature(const Eigen::MatrixXd& g, const Eigen::MatrixXd& i, const Eigen::MatrixXd& j,
                                      const Eigen::MatrixXd& k) {
  const int d = static_cast<int>(g.rows());
  RealTensor r = RealTensor::covariant(d, 4);
  const Eigen::MatrixXd gl[3] = {i.transpose() * g, j.transpose() * g, k.transpose() * g};  // (x,y) -> g(L e_x, e_y)
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int w = 0; w < d; ++w) {
          double v = g(y, z) * g(x, w) - g(x, z) * g(y, w);
          for (const auto& l : gl) v += l(y, z) * l(x, w) - l(x, z) * l(y, w) - 2.0 * l(x, y) * l(z, w);
          r(x, y, z, w) = v;
        }
  return r;
}

}  // namespace skewlab
