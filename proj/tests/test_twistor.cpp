#include <doctest.h>

#include "skewlab/connect.hpp"
#include "skewlab/linalg.hpp"
#include "skewlab/twistor.hpp"

using namespace skewlab;

namespace {

struct Case {
  BaseModel model;
  int n;
  double sPrime;  // fixed by the base normalisation
};
const Case kCases[] = {{BaseModel::S4, 1, 12.0}, {BaseModel::HPn, 2, 32.0}, {BaseModel::CP2, 1, 24.0}};

}  // namespace

TEST_CASE("parameters t0 and t1 follow from the measured scalar curvature") {
  for (const auto& c : kCases) {
    const TwistorSpace tw = buildTwistor(buildBase(c.model, c.n), 1.0, Structure::J1);
    CHECK(tw.sPrime == doctest::Approx(c.sPrime).epsilon(1e-12));
    CHECK(tw.t0 == doctest::Approx(4.0 * (c.n + 2) / c.sPrime).epsilon(1e-12));
    CHECK(tw.t1 == doctest::Approx(2.0 * (c.n + 2) / c.sPrime).epsilon(1e-12));
  }
}

TEST_CASE("projection is a Riemannian submersion with the expected splitting") {
  for (const auto& c : kCases)
    for (double f : {0.5, 1.0, 2.0}) {
      const BaseSpace base = buildBase(c.model, c.n);
      const TwistorSpace probe = buildTwistor(base, 1.0, Structure::J1);
      const TwistorSpace tw = buildTwistor(base, f * probe.t1, Structure::J1);
      CHECK(tw.sub.total.dim() == 4 * c.n + 2);
      CHECK(tw.sub.isometryResidual() < 1e-12);
      CHECK(validateSplit(tw.split).max() < 1e-12);
      CHECK(tw.sub.total.jacobiResidual() < 1e-12);
      CHECK(tw.sub.total.reductivityResidual() < 1e-12);
      CHECK(tw.sub.total.isotropySkewResidual() < 1e-12);
      CHECK(tw.split.hProj.trace() == doctest::Approx(4.0 * c.n));
    }
}

TEST_CASE("fibre is a round sphere of curvature 1/(nt)") {
  for (const auto& c : kCases)
    for (double t : {0.2, 0.5, 1.3}) {
      const TwistorSpace tw = buildTwistor(buildBase(c.model, c.n), t, Structure::J1);
      const RealTensor r = curvature(tw.sub.total, leviCivita(tw.sub.total));
      // Totally geodesic fibres: the intrinsic and ambient curvatures agree on V.
      CHECK(sectionalCurvature(r, tw.sub.total.metric(), tw.iHat, tw.kHat) == doctest::Approx(1.0 / (c.n * t)).epsilon(1e-12));
    }
}

TEST_CASE("canonical torsion matches the closed form for all t and vanishes at t0") {
  for (const auto& c : kCases) {
    const BaseSpace base = buildBase(c.model, c.n);
    const TwistorSpace probe = buildTwistor(base, 1.0, Structure::J1);
    for (double t : {0.5 * probe.t1, probe.t1, probe.t0, 2.0 * probe.t0, 0.77}) {
      const TwistorSpace tw = buildTwistor(base, t, Structure::J1);
      const CanonicalTorsionPackage pk = canonicalConnection(tw.sub.total, tw.split.J);
      CHECK(maxAbsDiff(pk.Ta, torsionFormula(tw.split, tw.sPrime, c.n)) < 1e-9);
      CHECK(tensorNormSq(pk.Ta, tw.sub.total.metric()) ==
            doctest::Approx(torsionFormulaNormSq(tw.sPrime, c.n, t)).epsilon(1e-10));
    }
    const TwistorSpace k = buildTwistor(base, probe.t0, Structure::J1);
    CHECK(canonicalConnection(k.sub.total, k.split.J).Ta.maxAbs() < 1e-12);
  }
}

TEST_CASE("torsion norm closed form at sample points") {
  // 6/t (2 - s't/(2(n+2)))^2 for unit S^4 (s' = 12, n = 1).
  CHECK(torsionFormulaNormSq(12.0, 1, 0.5) == doctest::Approx(12.0));
  CHECK(torsionFormulaNormSq(12.0, 1, 1.0) == doctest::Approx(0.0));
  CHECK(torsionFormulaNormSq(12.0, 1, 0.25) == doctest::Approx(54.0));
}

TEST_CASE("O'Neill reconstruction of the base curvature holds for every t") {
  for (const auto& c : kCases)
    for (double t : {0.3, 0.9}) {
      const BaseSpace base = buildBase(c.model, c.n);
      const TwistorSpace tw = buildTwistor(base, t, Structure::J1);
      const ConnectionMap lc = leviCivita(tw.sub.total);
      const RealTensor r = curvature(tw.sub.total, lc);
      const RealTensor rBase = curvature(base.space, leviCivita(base.space));
      CHECK(maxAbsDiff(oneillBaseCurvature(tw.sub, r, oneillA(tw.sub, lc)), rBase) < 1e-10);
    }
}

TEST_CASE("splitting identities and base curvature from torsion at t1") {
  for (const auto& c : kCases) {
    const BaseSpace base = buildBase(c.model, c.n);
    const TwistorSpace probe = buildTwistor(base, 1.0, Structure::J1);
    const TwistorSpace tw = buildTwistor(base, probe.t1, Structure::J1);
    const CanonicalTorsionPackage pk = canonicalConnection(tw.sub.total, tw.split.J);
    for (const auto& nr : splittingIdentityChecks(tw.sub, pk.levi, pk.connA, pk.Ta)) {
      CAPTURE(nr.name);
      CHECK(nr.residual < 1e-10);
    }
    const RealTensor ra = curvature(tw.sub.total, pk.connA);
    const RealTensor rBase = curvature(base.space, leviCivita(base.space));
    CHECK(maxAbsDiff(projectCurvature(tw.sub, ra, pk.Ta), rBase) < 1e-10);
  }
}

TEST_CASE("splitting identities fail away from t1") {
  const BaseSpace base = buildBase(BaseModel::S4, 1);
  const TwistorSpace tw = buildTwistor(base, 0.8, Structure::J1);
  const CanonicalTorsionPackage pk = canonicalConnection(tw.sub.total, tw.split.J);
  double worst = 0.0;
  for (const auto& nr : splittingIdentityChecks(tw.sub, pk.levi, pk.connA, pk.Ta)) worst = std::max(worst, nr.residual);
  CHECK(worst > 1e-3);
}

TEST_CASE("projectability of tensors along the fibres") {
  for (const auto& c : kCases) {
    const TwistorSpace tw = buildTwistor(buildBase(c.model, c.n), 0.6, Structure::J1);
    CHECK(projectabilityCheck(fromMatrix(tw.split.gH(), 0, 2), tw.sub).projectable);
    const ProjectabilityResult j = projectabilityCheck(fromMatrix(tw.split.J.matrix(), 1, 1), tw.sub);
    CHECK_FALSE(j.projectable);
    CHECK(j.residual > 1e-3);
    const QuaternionicSpanResult span = quaternionicSpanCheck(tw);
    CHECK(span.residual < 1e-10);
    CHECK(span.coefficients.size() == 2);
    // Each vertical direction acts by an infinitesimal rotation of the triple.
    for (const auto& a : span.coefficients) CHECK((a + a.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("J2 stores the conjugate vertical form and the same closed-form torsion") {
  const BaseSpace base = buildBase(BaseModel::S4, 1);
  const TwistorSpace probe = buildTwistor(base, 1.0, Structure::J1);
  const TwistorSpace j1 = buildTwistor(base, probe.t1, Structure::J1);
  const TwistorSpace j2 = buildTwistor(base, probe.t1, Structure::J2);
  CHECK(j2.verticalSign == -1);
  CHECK(maxAbs(Eigen::MatrixXd(j2.split.JH() - j1.split.JH())) < 1e-14);
  CHECK(maxAbs(Eigen::MatrixXd(j2.split.JV() + j1.split.JV())) < 1e-14);
  CHECK(maxAbsDiff(torsionFormula(j2.split, j2.sPrime, 1, -1), torsionFormula(j1.split, j1.sPrime, 1, 1)) < 1e-13);
}

TEST_CASE("structure names round trip") {
  CHECK(parseStructure("J1") == Structure::J1);
  CHECK(parseStructure(structureName(Structure::J2)) == Structure::J2);
  CHECK_THROWS(parseStructure("J3"));
  CHECK_THROWS(buildTwistor(buildBase(BaseModel::S4, 1), -1.0, Structure::J1));
}
