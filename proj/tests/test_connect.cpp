#include <doctest.h>

#include "skewlab/connect.hpp"
#include "skewlab/linalg.hpp"
#include "skewlab/repthy.hpp"
#include "skewlab/twistor.hpp"

using namespace skewlab;

namespace {

struct Fixture {
  TwistorSpace tw;
  CanonicalTorsionPackage pk;
  RealTensor r;
  RealTensor ra;
  double tNorm2 = 0.0;
};

Fixture make(BaseModel model, int n, double factorOfT1, Structure s = Structure::J1) {
  const BaseSpace base = buildBase(model, n);
  const double t1 = buildTwistor(base, 1.0, Structure::J1).t1;
  Fixture f;
  f.tw = buildTwistor(base, factorOfT1 * t1, s);
  f.pk = canonicalConnection(f.tw.sub.total, f.tw.split.J);
  f.r = curvature(f.tw.sub.total, f.pk.levi);
  f.ra = curvature(f.tw.sub.total, f.pk.connA);
  f.tNorm2 = tensorNormSq(f.pk.Ta, f.tw.sub.total.metric());
  return f;
}

}  // namespace

TEST_CASE("canonical connection is Hermitian with totally skew torsion") {
  for (double f : {0.5, 1.0, 1.7}) {
    const Fixture x = make(BaseModel::HPn, 2, f);
    const MetricData& g = x.tw.sub.total.metric();
    CHECK(x.pk.connA.metricResidual(g) < 1e-12);
    CHECK(x.pk.connA.commutatorResidual(x.tw.split.J.matrix()) < 1e-12);
    CHECK(skewResidual(x.pk.Ta) < 1e-12);
    CHECK(maxAbsDiff(torsionOf(x.tw.sub.total, x.pk.connA), x.pk.Ta) < 1e-12);
    CHECK(x.pk.N.maxAbs() < 1e-12);  // J1 is integrable
    CHECK(pqProject(x.pk.Ta, x.tw.split.J, 3, 0).maxAbs() < 1e-12);
  }
}

TEST_CASE("independent torsion solve agrees and is unique") {
  for (double f : {0.5, 1.0, 2.0}) {
    const Fixture x = make(BaseModel::S4, 1, f);
    const TorsionSolve s = solveSkewTorsion(x.tw.sub.total, x.pk.levi, x.tw.split.J);
    CHECK(s.nullity == 0);
    CHECK(s.residual < 1e-12);
    CHECK(maxAbsDiff(s.T, x.pk.Ta) < 1e-10);
  }
}

TEST_CASE("J2 leaves class G1 away from t1") {
  const BaseSpace base = buildBase(BaseModel::S4, 1);
  const TwistorSpace probe = buildTwistor(base, 1.0, Structure::J1);
  const TwistorSpace tw = buildTwistor(base, 1.7 * probe.t1, Structure::J2);
  CHECK_THROWS_AS(canonicalConnection(tw.sub.total, tw.split.J), StructuralError);
  CHECK(skewResidual(nijenhuis(tw.sub.total, tw.split.J)) > 1.0);
}

TEST_CASE("curvature relation with derivative terms holds for every t") {
  for (double f : {0.6, 1.0, 1.7}) {
    const Fixture x = make(BaseModel::S4, 1, f);
    const RealTensor nt = covariantDerivativeInvariant(x.pk.connA, x.pk.Ta);
    CHECK(curvatureRelationGeneralResidual(x.r, x.ra, x.pk.Ta, nt, x.tw.sub.total.metric()) < 1e-10);
  }
}

TEST_CASE("parallel torsion exactly at t0 and t1") {
  for (double f : {1.0, 2.0}) {
    const Fixture x = make(BaseModel::HPn, 2, f);
    CHECK(covariantDerivativeInvariant(x.pk.connA, x.pk.Ta).maxAbs() < 1e-10);
    CHECK(curvatureRelationResidual(x.r, x.ra, x.pk.Ta, x.tw.sub.total.metric()) < 1e-10);
  }
  for (double f : {0.7, 1.5}) {
    const Fixture x = make(BaseModel::HPn, 2, f);
    const MetricData& g = x.tw.sub.total.metric();
    const double nt = std::sqrt(tensorNormSq(covariantDerivativeInvariant(x.pk.connA, x.pk.Ta), g));
    CHECK(nt > 1e-3 * std::sqrt(x.tNorm2));
    CHECK(curvatureRelationResidual(x.r, x.ra, x.pk.Ta, g) > 1e-3);
  }
}

TEST_CASE("curvature identities at t1") {
  const Fixture x = make(BaseModel::S4, 1, 1.0);
  const MetricData& g = x.tw.sub.total.metric();
  CHECK(maxAbsDiff(bianchiB(x.ra), sigmaT(x.pk.Ta, g)) < 1e-10);
  CHECK(pairSymmetryResidual(x.ra) < 1e-10);
  CHECK(curvatureSymmetryResidual(x.ra) < 1e-12);
}

TEST_CASE("Ricci tensors at t1: frozen eigenvalues") {
  // Unit S^4: |T|^2 = 12, Ric = 5/2 g, Ric^a = 2g, s = 15, s^a = 12.
  {
    const Fixture x = make(BaseModel::S4, 1, 1.0);
    CHECK(x.tNorm2 == doctest::Approx(12.0).epsilon(1e-12));
    const RicciFormulaResiduals rf = ricciFormulasCheck(x.r, x.ra, x.pk.Ta, x.tw.split);
    CHECK(rf.horizontalEigen == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(rf.verticalEigen == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(rf.einsteinResidual < 1e-12);
    CHECK(ricciScalar(x.r, x.tw.sub.total.metric()).scalar == doctest::Approx(15.0).epsilon(1e-12));
    CHECK(ricciScalar(x.ra, x.tw.sub.total.metric()).scalar == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(rf.minEigenA == doctest::Approx(2.0).epsilon(1e-12));
  }
  // HP^2 with s' = 32: |T|^2 = 24, Ric = 7/2 on H and 3 on V.
  {
    const Fixture x = make(BaseModel::HPn, 2, 1.0);
    CHECK(x.tNorm2 == doctest::Approx(24.0).epsilon(1e-12));
    const RicciFormulaResiduals rf = ricciFormulasCheck(x.r, x.ra, x.pk.Ta, x.tw.split);
    CHECK(rf.horizontalEigen == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(rf.verticalEigen == doctest::Approx(3.0).epsilon(1e-12));
    for (double v : {rf.ricciA, rf.scalarA, rf.ricci, rf.scalar, rf.ricciTrace, rf.scalarTrace}) CHECK(v < 1e-10);
  }
}

TEST_CASE("Ricci trace formula holds whenever the torsion is parallel") {
  const Fixture x = make(BaseModel::CP2, 1, 2.0);  // t0: Kaehler, T = 0
  const RicciFormulaResiduals rf = ricciFormulasCheck(x.r, x.ra, x.pk.Ta, x.tw.split);
  CHECK(rf.ricciTrace < 1e-12);
  CHECK(rf.scalarTrace < 1e-12);
}

TEST_CASE("curvature decomposition at t1") {
  for (BaseModel m : {BaseModel::S4, BaseModel::CP2}) {
    const Fixture x = make(m, 1, 1.0);
    const CurvatureDecomposition d = decomposeCurvature(x.ra, x.pk.Ta, x.tw.split);
    CHECK(d.coefficient == doctest::Approx(x.tNorm2 / 48.0));
    CHECK(d.verticalResidual < 1e-10);
    CHECK(d.quaternionicResidual < 1e-10);
    CHECK(d.horizontalRicciResidual < 1e-10);
    RealTensor scaled = d.R0a;
    scaled *= d.coefficient;
    CHECK(maxAbsDiff(bianchiB(scaled), sigmaT(x.pk.Ta, x.tw.sub.total.metric())) < 1e-10);
    if (m == BaseModel::S4)
      CHECK(d.Rhyper.maxAbs() < 1e-10);
    else
      CHECK(d.Rhyper.maxAbs() > 0.1);
  }
}

TEST_CASE("holonomy algebra at t1 is rho(sp(n)+u(1)) for HP^n bases") {
  for (int n : {1, 2}) {
    const Fixture x = make(n == 1 ? BaseModel::S4 : BaseModel::HPn, n, 1.0);
    const MetricData& g = x.tw.sub.total.metric();
    const HolonomyAlgebra hol = holonomyAlgebra(x.pk.connA, x.ra, g);
    CHECK(hol.basis.size() == static_cast<std::size_t>(n * (2 * n + 1) + 1));
    const AdaptedFrame fr = adaptedFrame(x.tw.split, x.pk.Ta);
    CHECK(fr.torsionResidual < 1e-10);
    std::vector<Eigen::MatrixXd> model;
    for (const auto& h : hol.basis) model.push_back(fr.toModel(h, g));
    CHECK(subspaceEqualityResidual(model, buildRho(n).basis) < 1e-9);
  }
}

TEST_CASE("holonomy for the CP^2 base lies in rho and the Kaehler holonomy in u(3)") {
  const Fixture x = make(BaseModel::CP2, 1, 1.0);
  const MetricData& g = x.tw.sub.total.metric();
  const HolonomyAlgebra hol = holonomyAlgebra(x.pk.connA, x.ra, g);
  const AdaptedFrame fr = adaptedFrame(x.tw.split, x.pk.Ta);
  std::vector<Eigen::MatrixXd> model;
  for (const auto& h : hol.basis) model.push_back(fr.toModel(h, g));
  CHECK(containmentResidual(model, buildRho(1).basis) < 1e-9);
  CHECK(hol.basis.size() < 4);

  const Fixture k = make(BaseModel::S4, 1, 2.0);
  const HolonomyAlgebra kh = holonomyAlgebra(k.pk.connA, k.ra, k.tw.sub.total.metric());
  CHECK(kh.basis.size() == 9);
  for (const auto& h : kh.basis) CHECK(maxAbs(Eigen::MatrixXd(h * k.tw.split.J.matrix() - k.tw.split.J.matrix() * h)) < 1e-10);
}

TEST_CASE("adapted frame: T^a = lambda T0 + conj with lambda the closed-form coefficient") {
  for (double f : {0.5, 1.0, 1.5}) {
    const Fixture x = make(BaseModel::HPn, 2, f);
    const AdaptedFrame fr = adaptedFrame(x.tw.split, x.pk.Ta);
    const double t = x.tw.split.t;
    const double coef = (2.0 - x.tw.sPrime * t / 8.0) / std::sqrt(4.0 * t);
    CHECK(fr.orthonormalityResidual < 1e-12);
    CHECK(fr.complexResidual < 1e-12);
    CHECK(fr.omegaResidual < 1e-12);
    CHECK(fr.torsionResidual < 1e-10);
    CHECK(std::abs(fr.lambda) == doctest::Approx(std::abs(coef)).epsilon(1e-12));
    CHECK(tensorNormSq(x.pk.Ta, x.tw.sub.total.metric()) == doctest::Approx(24.0 * std::norm(fr.lambda)).epsilon(1e-10));
  }
}

TEST_CASE("structure swap: involution, type flip and nearly Kaehler torsion") {
  for (BaseModel m : {BaseModel::S4, BaseModel::CP2}) {
    const Fixture x = make(m, 1, 1.0);
    const SplitHermitianStructure hat = structureSwap(x.tw.split);
    const SplitHermitianStructure back = structureSwap(hat);
    CHECK(maxAbs(Eigen::MatrixXd(back.J.matrix() - x.tw.split.J.matrix())) == 0.0);
    CHECK(maxAbsDiff(back.alpha, x.tw.split.alpha) == 0.0);
    CHECK(pqProject(x.pk.Ta, hat.J, 2, 1).maxAbs() < 1e-10);
    CHECK(x.pk.connA.commutatorResidual(hat.J.matrix()) < 1e-12);

    const Fixture y = make(m, 1, 1.0, Structure::J2);
    CHECK(maxAbsDiff(y.pk.Ta, x.pk.Ta) < 1e-12);
    CHECK(covariantDerivativeInvariant(y.pk.connA, y.pk.Ta).maxAbs() < 1e-10);
    CHECK(skewResidual(y.pk.N) < 1e-12);
    CHECK(y.pk.N.maxAbs() > 1.0);
  }
}

TEST_CASE("u(1) generator from the curvature trace") {
  // J_H + 2 J_V = c sum_k R^a(e_k, J e_k) with c = -6n/((n+1)|T|^2).
  const Fixture s4 = make(BaseModel::S4, 1, 1.0);
  const U1GeneratorCheck a = u1GeneratorCheck(s4.ra, s4.pk.Ta, s4.tw.split);
  CHECK(a.fittedConstant == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(a.correctedResidual < 1e-10);
  CHECK(a.fitResidual < 1e-10);
  const Fixture hp2 = make(BaseModel::HPn, 2, 1.0);
  const U1GeneratorCheck b = u1GeneratorCheck(hp2.ra, hp2.pk.Ta, hp2.tw.split);
  CHECK(b.fittedConstant == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));
  CHECK(b.correctedResidual < 1e-10);
  const Fixture cp2 = make(BaseModel::CP2, 1, 1.0);
  CHECK(u1GeneratorCheck(cp2.ra, cp2.pk.Ta, cp2.tw.split).fittedConstant == doctest::Approx(-0.125).epsilon(1e-12));
}

TEST_CASE("torsion is non-degenerate at t1") {
  const Fixture x = make(BaseModel::HPn, 2, 1.0);
  CHECK(torsionNondegeneracy(x.pk.Ta, x.tw.sub.total.metric()) > 0.1);
  const Fixture k = make(BaseModel::HPn, 2, 2.0);
  CHECK(torsionNondegeneracy(k.pk.Ta, k.tw.sub.total.metric()) < 1e-12);
}

TEST_CASE("holonomy generation respects its iteration cap") {
  const Fixture x = make(BaseModel::HPn, 2, 1.0);
  CHECK_THROWS_AS(holonomyAlgebra(x.pk.connA, x.ra, x.tw.sub.total.metric(), 1e-9, 1), HolonomyNonConvergence);
}
