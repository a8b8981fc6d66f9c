#include <doctest.h>

#include <random>

#include "skewlab/homog.hpp"
#include "skewlab/multilinear.hpp"
#include "skewlab/oracle.hpp"
#include "skewlab/twistor.hpp"

using namespace skewlab;

namespace {

Eigen::VectorXd samplePoint(std::mt19937_64& rng, int d, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  Eigen::VectorXd p(d);
  for (int k = 0; k < d; ++k) p(k) = u(rng);
  return p;
}

RealTensor sphereCurvature(const Eigen::MatrixXd& g) {
  const int d = static_cast<int>(g.rows());
  RealTensor r = RealTensor::covariant(d, 4);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) r(i, j, k, l) = g(j, k) * g(i, l) - g(i, k) * g(j, l);
  return r;
}

}  // namespace

TEST_CASE("chart metrics are symmetric positive definite on sampled points") {
  std::mt19937_64 rng(9);
  for (const ChartMetric& c : {sphereStereographicChart(4), fubiniStudyChart(1), fubiniStudyChart(2), twistorCP3Chart(0.5),
                               twistorCP3Chart(1.0)}) {
    for (int k = 0; k < 5; ++k) {
      const Eigen::MatrixXd g = c.metric(samplePoint(rng, c.dim, 1.0));
      CHECK((g - g.transpose()).cwiseAbs().maxCoeff() < 1e-14);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
      CHECK(es.eigenvalues()(0) > 0.0);
    }
  }
}

TEST_CASE("flat chart has vanishing Christoffel symbols and curvature") {
  const ChartMetric e = euclideanChart(4);
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(4, 0.3);
  CHECK(fdChristoffel(e, p).maxAbs() == 0.0);
  CHECK(fdCurvature(e, p).maxAbs() == 0.0);
}

TEST_CASE("stereographic sphere: Christoffel symbols and curvature") {
  const ChartMetric s = sphereStereographicChart(4);
  const Eigen::VectorXd o = Eigen::VectorXd::Zero(4);
  CHECK(maxAbsDiff(fdChristoffel(s, o), sphereChristoffelClosedForm(o)) < 1e-6);
  std::mt19937_64 rng(4);
  const Eigen::VectorXd p = samplePoint(rng, 4, 0.5);
  const RealTensor gam = fdChristoffel(s, p);
  CHECK(maxAbsDiff(gam, permute(gam, {0, 2, 1})) < 1e-12);
  CHECK(maxAbsDiff(gam, sphereChristoffelClosedForm(p)) < 1e-5);
  const RealTensor r = fdCurvature(s, p);
  CHECK(bianchiB(r).maxAbs() < 1e-5);
  const Eigen::VectorXd spec = curvatureOperatorSpectrum(r, s.metric(p));
  CHECK((spec.array() - 1.0).abs().maxCoeff() < 1e-5);
}

TEST_CASE("second-order convergence of finite-difference curvature on S^4") {
  const ChartMetric s = sphereStereographicChart(4);
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(4, 0.2);
  const ConvergenceResult c = curvatureConvergence(s, p, sphereCurvature(s.metric(p)));
  CHECK(c.ratio > 3.0);
  CHECK(c.ratio < 5.0);
}

TEST_CASE("Fubini-Study CP^1 has Gaussian curvature 4") {
  const ChartMetric c = fubiniStudyChart(1);
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(2, 0.25);
  const Eigen::VectorXd spec = curvatureOperatorSpectrum(fdCurvature(c, p), c.metric(p));
  CHECK(std::abs(spec(0) - 4.0) < 1e-5);
  const ChartMetric big = fubiniStudyChart(1, 8.0);
  CHECK(std::abs(curvatureOperatorSpectrum(fdCurvature(big, p), big.metric(p))(0) - 0.5) < 1e-5);
}

TEST_CASE("Fubini-Study CP^2 chart agrees with the homogeneous model") {
  const BaseSpace b = buildBase(BaseModel::CP2, 1);
  const RealTensor r = curvature(b.space, leviCivita(b.space));
  const ChartMetric c = fubiniStudyChart(2);
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(4, -0.15);
  const Eigen::VectorXd a = curvatureOperatorSpectrum(fdCurvature(c, p), c.metric(p));
  const Eigen::VectorXd h = curvatureOperatorSpectrum(r, b.space.metric().matrix());
  CHECK((a - h).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("CP^3 twistor chart agrees with the homogeneous twistor space") {
  const BaseSpace s4 = buildBase(BaseModel::S4, 1);
  for (double t : {0.5, 0.85, 1.0}) {
    const TwistorSpace tw = buildTwistor(s4, t, Structure::J1);
    const RealTensor r = curvature(tw.sub.total, leviCivita(tw.sub.total));
    const ChartMetric c = twistorCP3Chart(t);
    const Eigen::VectorXd p = (Eigen::VectorXd(6) << 0.1, -0.2, 0.05, 0.3, -0.1, 0.15).finished();
    const RealTensor fd = fdCurvature(c, p);
    const Eigen::VectorXd a = curvatureOperatorSpectrum(fd, c.metric(p));
    const Eigen::VectorXd h = curvatureOperatorSpectrum(r, tw.sub.total.metric().matrix());
    CHECK((a - h).cwiseAbs().maxCoeff() < 1e-4);
    const Eigen::VectorXd ra = ricciSpectrum(fd, c.metric(p));
    const Eigen::VectorXd rh = ricciSpectrum(r, tw.sub.total.metric().matrix());
    CHECK((ra - rh).cwiseAbs().maxCoeff() < 1e-4);
  }
}

TEST_CASE("CP^3 twistor chart Ricci eigenvalues") {
  // Kaehler-Einstein at t = 1 with Ric = 2g; Einstein with Ric = 5/2 g at t = 1/2.
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(6, 0.1);
  for (auto [t, lambda] : {std::pair{1.0, 2.0}, std::pair{0.5, 2.5}}) {
    const ChartMetric c = twistorCP3Chart(t);
    const Eigen::VectorXd r = ricciSpectrum(fdCurvature(c, p), c.metric(p));
    CHECK((r.array() - lambda).abs().maxCoeff() < 1e-4);
  }
}

TEST_CASE("CP^3 chart is Kaehler exactly at t = 1") {
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(6, 0.1);
  const Eigen::MatrixXd j = chartComplexStructure(6);
  CHECK(fdCovariantDerivativeConstant(twistorCP3Chart(1.0), p, j).maxAbs() < 1e-6);
  CHECK(fdCovariantDerivativeConstant(twistorCP3Chart(0.5), p, j).maxAbs() > 1e-2);
  CHECK(fdCovariantDerivativeConstant(twistorCP3Chart(1.5), p, j).maxAbs() > 1e-2);
}

TEST_CASE("points near the chart boundary are rejected") {
  const ChartMetric s = sphereStereographicChart(4);
  CHECK_THROWS_AS(fdChristoffel(s, Eigen::VectorXd::Constant(4, 1.9995)), DomainError);
  CHECK_THROWS_AS(fdCurvature(s, Eigen::VectorXd::Constant(4, 1.9985)), DomainError);
  CHECK_THROWS_AS(fdChristoffel(s, Eigen::VectorXd::Zero(3)), DomainError);
}
