#include <doctest.h>

#include <random>

#include "skewlab/linalg.hpp"
#include "skewlab/multilinear.hpp"
#include "skewlab/repthy.hpp"
#include "skewlab/structures.hpp"

using namespace skewlab;

namespace {

RealTensor e(int d, int k) { return covectorTensor(Eigen::VectorXd(Eigen::VectorXd::Unit(d, k))); }

RealTensor randomForm(std::mt19937_64& rng, int d, int k) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealTensor out = RealTensor::covariant(d, 1);
  for (int i = 0; i < d; ++i) out(i) = u(rng);
  for (int j = 1; j < k; ++j) {
    RealTensor c = RealTensor::covariant(d, 1);
    for (int i = 0; i < d; ++i) c(i) = u(rng);
    out = wedge(out, c);
  }
  return out;
}

Eigen::MatrixXd randomOrthogonal(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = n(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ();
}

}  // namespace

TEST_CASE("wedge of a covector with itself vanishes") {
  CHECK(wedge(e(6, 0), e(6, 0)).maxAbs() == 0.0);
}

TEST_CASE("wedge normalisation") {
  const RealTensor w2 = wedge(e(6, 0), e(6, 1));
  CHECK(w2(0, 1) == doctest::Approx(1.0));
  CHECK(w2(1, 0) == doctest::Approx(-1.0));
  CHECK(tensorNormSq(w2, MetricData::identity(6)) == doctest::Approx(2.0));
  const RealTensor w4 = wedge(w2, wedge(e(6, 2), e(6, 3)));
  CHECK(w4(0, 1, 2, 3) == doctest::Approx(1.0));
  CHECK(w4(1, 0, 2, 3) == doctest::Approx(-1.0));
  CHECK(w4(2, 3, 0, 1) == doctest::Approx(1.0));
  CHECK(w4(0, 1, 2, 4) == 0.0);
}

TEST_CASE("wedge rejects mismatched dimensions") {
  CHECK_THROWS_AS(wedge(e(6, 0), e(4, 0)), ShapeError);
}

TEST_CASE("graded commutativity and associativity of wedge") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const RealTensor a = randomForm(rng, 6, 2), b = randomForm(rng, 6, 1), c = randomForm(rng, 6, 2);
    CHECK(maxAbsDiff(wedge(a, b), wedge(b, a)) < 1e-13);
    const RealTensor b2 = randomForm(rng, 6, 1);
    CHECK(maxAbsDiff(wedge(b, b2), -wedge(b2, b)) < 1e-13);
    CHECK(maxAbsDiff(wedge(wedge(a, b), c), wedge(a, wedge(b, c))) < 1e-12);
  }
}

TEST_CASE("derivation action obeys the Leibniz rule on wedge products") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    Eigen::MatrixXd x(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) x(i, j) = u(rng);
    const RealTensor a = randomForm(rng, 6, 2), b = randomForm(rng, 6, 1);
    const RealTensor lhs = derivationAction(x, wedge(a, b));
    const RealTensor rhs = wedge(derivationAction(x, a), b) + wedge(a, derivationAction(x, b));
    CHECK(maxAbsDiff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("tensorial norm is invariant under orthogonal changes of frame") {
  std::mt19937_64 rng(17);
  const MetricData g = MetricData::identity(6);
  for (int trial = 0; trial < 4; ++trial) {
    const RealTensor f = randomForm(rng, 6, 3);
    const Eigen::MatrixXd q = randomOrthogonal(rng, 6);
    RealTensor moved = f;
    for (int s = 0; s < 3; ++s) moved = applySlot(moved, s, q);
    CHECK(tensorNormSq(moved, g) == doctest::Approx(tensorNormSq(f, g)).epsilon(1e-12));
  }
}

TEST_CASE("pq projections of a form sum back to the form") {
  const SplitHermitianStructure s = modelSplit(1);
  std::mt19937_64 rng(23);
  for (int k = 1; k <= 3; ++k) {
    const RealTensor f = randomForm(rng, 6, k);
    ComplexTensor sum = pqProject(f, s.J, 0, k);
    for (int p = 1; p <= k; ++p) sum += pqProject(f, s.J, p, k - p);
    CHECK(maxAbsDiff(sum, complexify(f)) < 1e-10);
  }
  CHECK_THROWS_AS(pqProject(randomForm(rng, 6, 3), s.J, 2, 2), ContractError);
}

TEST_CASE("the Kaehler form is of type (1,1)") {
  const SplitHermitianStructure s = modelSplit(1);
  const RealTensor omega = formOfEndomorphism(s.J.matrix(), s.g);
  CHECK(maxAbsDiff(pqProject(omega, s.J, 1, 1), complexify(omega)) < 1e-12);
  CHECK(pqProject(omega, s.J, 2, 0).maxAbs() < 1e-12);
  CHECK(pqProject(omega, s.J, 0, 2).maxAbs() < 1e-12);
}

TEST_CASE("model torsion form is a (2,1)-form on H x H x V") {
  const ComplexTensor t0 = modelT0(1);
  const SplitHermitianStructure s = modelSplit(1);
  CHECK(maxAbsDiff(pqProject(t0, s.J, 2, 1), t0) < 1e-12);
  CHECK(skewResidual(t0) < 1e-14);
  // With H the first four coordinates, a component with fewer than one vertical slot vanishes.
  double off = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) off = std::max(off, std::abs(t0(a, b, c)));
  CHECK(off == 0.0);
  // omega0 ^ conj(e^3) reproduces T0.
  const Eigen::MatrixXcd cof = modelCoframe(1);
  const ComplexTensor e3bar = covectorTensor(Eigen::VectorXcd(cof.col(2).conjugate()));
  CHECK(maxAbsDiff(wedge(modelOmega0(1), e3bar), t0) < 1e-14);
}

TEST_CASE("Bianchi operator on 4-forms multiplies by 3") {
  std::mt19937_64 rng(3);
  const RealTensor f = randomForm(rng, 6, 4);
  RealTensor three = f;
  three *= 3.0;
  CHECK(maxAbsDiff(bianchiB(f), three) < 1e-12);
}

TEST_CASE("sigma_T is a 4-form equal to the cyclic sum of the torsion pairing") {
  std::mt19937_64 rng(29);
  const MetricData g = MetricData::identity(6);
  const RealTensor t = randomForm(rng, 6, 3) + randomForm(rng, 6, 3);
  const RealTensor s = sigmaT(t, g);
  CHECK(skewResidual(s) < 1e-12);
  const RealTensor p = torsionPairing(t, g);
  CHECK(maxAbsDiff(s, p + permute(p, {1, 2, 0, 3}) + permute(p, {2, 0, 1, 3})) < 1e-12);
}

TEST_CASE("matrix round trips and restriction") {
  Eigen::MatrixXd m(3, 3);
  m << 1, 2, 3, 4, 5, 6, 7, 8, 9;
  CHECK(maxAbs(Eigen::MatrixXd(toMatrix(fromMatrix(m, 1, 1)) - m)) == 0.0);
  CHECK(maxAbs(Eigen::MatrixXd(toMatrix(fromMatrix(m, 0, 2)) - m)) == 0.0);
  const RealTensor t = fromMatrix(m, 0, 2);
  Eigen::MatrixXd lift = Eigen::MatrixXd::Zero(3, 2);
  lift(0, 0) = 1.0;
  lift(2, 1) = 1.0;
  const Eigen::MatrixXd r = toMatrix(restrictCovariant(t, lift));
  CHECK(r(0, 0) == 1.0);
  CHECK(r(0, 1) == 3.0);
  CHECK(r(1, 0) == 7.0);
  CHECK(r(1, 1) == 9.0);
}

TEST_CASE("permute composes as index relabelling") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealTensor t = RealTensor::covariant(4, 3);
  for (auto& v : t.data()) v = u(rng);
  const RealTensor p = permute(t, {1, 2, 0});
  CHECK(p(0, 1, 2) == t(1, 2, 0));
  CHECK(maxAbsDiff(permute(permute(t, {1, 0, 2}), {1, 0, 2}), t) == 0.0);
}

TEST_CASE("metric and complex structure validation") {
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 0, 0, -1;
  CHECK_THROWS(MetricData(bad));
  Eigen::MatrixXd notJ = Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS(ComplexStructureData(notJ));
  const SplitHermitianStructure s = modelSplit(2);
  CHECK(s.J.orthogonalityResidual(s.g) < 1e-14);
  CHECK(validateSplit(s).max() < 1e-12);
}

TEST_CASE("unitary coframe is of type (1,0) and orthonormal") {
  const SplitHermitianStructure s = modelSplit(1);
  const Eigen::MatrixXcd th = coframe10(s.J, s.g);
  const Eigen::MatrixXcd fr = frame10(s.J, s.g);
  // theta o J = i theta, theta(e) = delta.
  CHECK(maxAbs(Eigen::MatrixXcd(s.J.matrix().transpose() * th - Complex(0, 1) * th)) < 1e-12);
  CHECK(maxAbs(Eigen::MatrixXcd(th.transpose() * fr - Eigen::MatrixXcd::Identity(3, 3))) < 1e-12);
}
