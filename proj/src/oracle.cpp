#include "skewlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "skewlab/multilinear.hpp"

namespace skewlab {

namespace {

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

Complex herm(const CVec& a, const CVec& b) { return (a.array() * b.conjugate().array()).sum(); }

CVec complexFromReal(const Vec& x) {
  CVec z(x.size() / 2);
  for (Eigen::Index a = 0; a < z.size(); ++a) z(a) = Complex(x(2 * a), x(2 * a + 1));
  return z;
}

// Complex tangent vector of the real coordinate direction i.
CVec coordinateDirection(int m, int i) {
  CVec u = CVec::Zero(m);
  u(i / 2) = (i % 2 == 0) ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
  return u;
}

void requireInterior(const ChartMetric& chart, const Vec& p, double margin) {
  if (p.size() != chart.dim) throw DomainError(chart.name + ": point has wrong dimension");
  for (int k = 0; k < chart.dim; ++k)
    if (p(k) - margin < chart.lower(k) || p(k) + margin > chart.upper(k))
      throw DomainError(chart.name + ": point closer than the stencil width to the chart boundary");
}

Eigen::MatrixXd hermitianGram(int m, const std::function<double(const CVec&, const CVec&)>& form) {
  const int d = 2 * m;
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = form(coordinateDirection(m, i), coordinateDirection(m, j));
  return g;
}

}  // namespace

ChartMetric euclideanChart(int dim) {
  ChartMetric c;
  c.dim = dim;
  c.name = "R" + std::to_string(dim);
  c.lower = Vec::Constant(dim, -10.0);
  c.upper = Vec::Constant(dim, 10.0);
  c.metric = [dim](const Vec&) { return Eigen::MatrixXd(Eigen::MatrixXd::Identity(dim, dim)); };
  return c;
}

ChartMetric sphereStereographicChart(int dim) {
  ChartMetric c;
  c.dim = dim;
  c.name = "S" + std::to_string(dim) + "-stereographic";
  c.lower = Vec::Constant(dim, -2.0);
  c.upper = Vec::Constant(dim, 2.0);
  c.metric = [dim](const Vec& x) {
    const double q = 1.0 + x.squaredNorm();
    return Eigen::MatrixXd(4.0 / (q * q) * Eigen::MatrixXd::Identity(dim, dim));
  };
  return c;
}

ChartMetric fubiniStudyChart(int m, double scale) {
  ChartMetric c;
  c.dim = 2 * m;
  c.name = "CP" + std::to_string(m) + "-FubiniStudy";
  c.lower = Vec::Constant(2 * m, -3.0);
  c.upper = Vec::Constant(2 * m, 3.0);
  c.metric = [m, scale](const Vec& x) {
    const CVec z = complexFromReal(x);
    const double q = 1.0 + z.squaredNorm();
    return hermitianGram(m, [&](const CVec& u, const CVec& v) {
      const Complex zu = herm(u, z);
      const Complex zv = herm(v, z);
      return scale * (q * herm(u, v) - zu * std::conj(zv)).real() / (q * q);
    });
  };
  return c;
}

ChartMetric twistorCP3Chart(double t) {
  ChartMetric c;
  c.dim = 6;
  c.name = "CP3-twistor(t=" + std::to_string(t) + ")";
  c.lower = Vec::Constant(6, -3.0);
  c.upper = Vec::Constant(6, 3.0);
  c.metric = [t](const Vec& x) {
    CVec v(4);
    v(0) = 1.0;
    v.tail(3) = complexFromReal(x);
    CVec jv(4);
    jv << -std::conj(v(1)), std::conj(v(0)), -std::conj(v(3)), std::conj(v(2));
    const double vv = v.squaredNorm();
    const double jj = jv.squaredNorm();
    auto split = [&](const CVec& u, CVec& h, CVec& ver) {
      CVec w = CVec::Zero(4);
      w.tail(3) = u;
      w -= herm(w, v) / vv * v;
      ver = herm(w, jv) / jj * jv;
      h = w - ver;
    };
    return hermitianGram(3, [&](const CVec& a, const CVec& b) {
      CVec ah, av, bh, bv;
      split(a, ah, av);
      split(b, bh, bv);
      return 4.0 * (herm(ah, bh) + t * herm(av, bv)).real() / vv;
    });
  };
  return c;
}

Eigen::MatrixXd chartComplexStructure(int dim) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim / 2; ++a) {
    j(2 * a + 1, 2 * a) = 1.0;
    j(2 * a, 2 * a + 1) = -1.0;
  }
  return j;
}

RealTensor fdChristoffel(const ChartMetric& chart, const Vec& p, double step) {
  requireInterior(chart, p, 2.0 * step);
  const int d = chart.dim;
  std::vector<Eigen::MatrixXd> dg(d);
  for (int k = 0; k < d; ++k) {
    Vec e = Vec::Zero(d);
    e(k) = step;
    dg[k] = (chart.metric(p + e) - chart.metric(p - e)) / (2.0 * step);
  }
  const Eigen::MatrixXd gi = chart.metric(p).inverse();
  RealTensor gam(d, 1, 2);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int l = 0; l < d; ++l) s += gi(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gam(k, i, j) = 0.5 * s;
      }
  return gam;
}

RealTensor fdCurvature(const ChartMetric& chart, const Vec& p, double step) {
  requireInterior(chart, p, 2.0 * step);
  const int d = chart.dim;
  const RealTensor gam = fdChristoffel(chart, p, step);
  std::vector<RealTensor> dgam;  // dgam[i](l,j,k) = d_i Gamma^l_jk
  dgam.reserve(d);
  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e(i) = step;
    // The shifted stencils reach p +- 2 step, which requireInterior above guarantees.
    ChartMetric inner = chart;
    inner.lower = chart.lower.array() - step;
    inner.upper = chart.upper.array() + step;
    RealTensor diff = fdChristoffel(inner, p + e, step) - fdChristoffel(inner, p - e, step);
    diff *= 1.0 / (2.0 * step);
    dgam.push_back(diff);
  }
  const Eigen::MatrixXd g = chart.metric(p);
  RealTensor up(d, 1, 3);  // up(l,i,j,k) = R^l_ijk
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double s = dgam[i](l, j, k) - dgam[j](l, i, k);
          for (int m = 0; m < d; ++m) s += gam(l, i, m) * gam(m, j, k) - gam(l, j, m) * gam(m, i, k);
          up(l, i, j, k) = s;
        }
  RealTensor r = RealTensor::covariant(d, 4);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int m = 0; m < d; ++m) s += g(l, m) * up(m, i, j, k);
          r(i, j, k, l) = s;
        }
  return r;
}

RealTensor fdCovariantDerivativeConstant(const ChartMetric& chart, const Vec& p, const Eigen::MatrixXd& j, double step) {
  const int d = chart.dim;
  const RealTensor gam = fdChristoffel(chart, p, step);
  RealTensor out(d, 1, 2);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int c = 0; c < d; ++c) {
        double s = 0.0;
        for (int m = 0; m < d; ++m) s += gam(i, k, m) * j(m, c) - gam(m, k, c) * j(i, m);
        out(i, k, c) = s;
      }
  return out;
}

RealTensor sphereChristoffelClosedForm(const Vec& p) {
  const int d = static_cast<int>(p.size());
  const Vec ds = -2.0 * p / (1.0 + p.squaredNorm());  // gradient of the log conformal factor sigma, g = e^{2 sigma} delta
  RealTensor gam(d, 1, 2);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        gam(k, i, j) = (i == k ? ds(j) : 0.0) + (j == k ? ds(i) : 0.0) - (i == j ? ds(k) : 0.0);
  return gam;
}

Eigen::VectorXd curvatureOperatorSpectrum(const RealTensor& r, const Eigen::MatrixXd& g) {
  const int d = r.dim();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  const Eigen::MatrixXd f = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal();
  RealTensor rf = r;
  for (int s = 0; s < 4; ++s) rf = applySlot(rf, s, f);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
  const int np = static_cast<int>(pairs.size());
  Eigen::MatrixXd op(np, np);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b) op(a, b) = rf(pairs[a].first, pairs[a].second, pairs[b].second, pairs[b].first);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eo(0.5 * (op + op.transpose()), Eigen::EigenvaluesOnly);
  return eo.eigenvalues();
}

Eigen::VectorXd ricciSpectrum(const RealTensor& r, const Eigen::MatrixXd& g) {
  const int d = r.dim();
  const Eigen::MatrixXd gi = g.inverse();
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(d, d);
  for (int y = 0; y < d; ++y)
    for (int z = 0; z < d; ++z)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) ric(y, z) += gi(i, j) * r(i, y, z, j);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (ric + ric.transpose()), g, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

ConvergenceResult curvatureConvergence(const ChartMetric& chart, const Vec& p, const RealTensor& reference,
                                       double coarseStep) {
  ConvergenceResult c;
  c.coarseDefect = maxAbsDiff(fdCurvature(chart, p, coarseStep), reference);
  c.fineDefect = maxAbsDiff(fdCurvature(chart, p, 0.5 * coarseStep), reference);
  c.ratio = c.fineDefect > 0 ? c.coarseDefect / c.fineDefect : 0.0;
  return c;
}

}  // namespace skewlab
