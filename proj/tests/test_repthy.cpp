#include <doctest.h>

#include <random>

#include "skewlab/linalg.hpp"
#include "skewlab/repthy.hpp"

using namespace skewlab;

namespace {

Eigen::MatrixXd randomElement(const MatrixLieAlgebra& alg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(alg.ambientDim, alg.ambientDim);
  for (const auto& b : alg.basis) x += u(rng) * b;
  return x;
}

}  // namespace

TEST_CASE("norm identity for lambda T0 + conj") {
  for (int n : {1, 2}) {
    const ComplexTensor t0 = modelT0(n);
    const MetricData g = MetricData::identity(4 * n + 2);
    for (Complex l : {Complex(1, 0), Complex(1, 1), Complex(0.3, -2.0)}) {
      const RealTensor t = realPart(l * t0 + std::conj(l) * conj(t0));
      CHECK(std::abs(tensorNormSq(t, g) - 12.0 * n * std::norm(l)) < 1e-10);
    }
  }
}

TEST_CASE("rho is a Lie subalgebra of u(2n+1) of dimension n(2n+1)+1") {
  for (int n : {1, 2}) {
    for (RhoVariant v : {RhoVariant::Rho, RhoVariant::Rho2}) {
      const MatrixLieAlgebra rho = buildRho(n, v);
      CHECK(rho.dim() == n * (2 * n + 1) + 1);
      CHECK(rho.linearlyIndependent());
      CHECK(rho.closureResidual() < 1e-12);
      CHECK(containmentResidual(rho.basis, unitaryAlgebra(2 * n + 1).basis) < 1e-12);
    }
  }
}

TEST_CASE("u(m) has dimension m^2 and so(d) has d(d-1)/2") {
  CHECK(unitaryAlgebra(3).dim() == 9);
  CHECK(unitaryAlgebra(5).dim() == 25);
  CHECK(orthogonalAlgebra(6).dim() == 15);
}

TEST_CASE("realify is a Lie algebra homomorphism") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXcd a(3, 3), b(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        a(i, j) = Complex(u(rng), u(rng));
        b(i, j) = Complex(u(rng), u(rng));
      }
    const Eigen::MatrixXd lhs = realify(a * b - b * a);
    const Eigen::MatrixXd rhs = realify(a) * realify(b) - realify(b) * realify(a);
    CHECK(maxAbs(Eigen::MatrixXd(lhs - rhs)) < 1e-13);
  }
  CHECK(maxAbs(Eigen::MatrixXd(realify(Eigen::MatrixXcd::Identity(2, 2) * Complex(0, 1)) - modelComplexStructure(2))) <
        1e-15);
}

TEST_CASE("rho annihilates T0") {
  std::mt19937_64 rng(43);
  for (int n : {1, 2}) {
    const ComplexTensor t0 = modelT0(n);
    const MatrixLieAlgebra rho = buildRho(n);
    for (int k = 0; k < 3; ++k) CHECK(derivationAction(randomElement(rho, rng), t0).maxAbs() < 1e-12);
  }
}

TEST_CASE("trivial summands of (2,1)-forms") {
  for (int n : {1, 2}) {
    const MatrixLieAlgebra rho = buildRho(n);
    const RepAction complexAct = inducedAction(rho, 0, 3, PQFilter{2, 1, false});
    CHECK(complexAct.leak < 1e-12);
    const auto fixedC = fixedSubspace(complexAct);
    REQUIRE(fixedC.size() == 1);
    // The fixed line is spanned by T0.
    const ComplexTensor t0 = modelT0(n);
    const MetricData g = MetricData::identity(4 * n + 2);
    const double overlap = std::abs(tensorInner(fixedC[0], t0, g)) /
                           std::sqrt(std::real(tensorInner(t0, t0, g)) * std::real(tensorInner(fixedC[0], fixedC[0], g)));
    CHECK(overlap == doctest::Approx(1.0).epsilon(1e-10));
    const RepAction realAct = inducedAction(rho, 0, 3, PQFilter{2, 1, true});
    CHECK(fixedSubspace(realAct).size() == 2);
    CHECK(bracketResidual(complexAct, rho) < 1e-10);
  }
}

TEST_CASE("invalid pq filters are rejected") {
  const MatrixLieAlgebra rho = buildRho(1);
  CHECK_THROWS_AS(inducedAction(rho, 0, 3, PQFilter{2, 2, false}), ContractError);
  CHECK_THROWS_AS(inducedAction(rho, 0, 2, PQFilter{1, 1, true}), ContractError);
}

TEST_CASE("stabiliser of T0 inside u(2n+1) is rho") {
  for (int n : {1, 2}) {
    const MatrixLieAlgebra stab = stabilizerAlgebra(modelT0(n), unitaryAlgebra(2 * n + 1));
    CHECK(stab.dim() == n * (2 * n + 1) + 1);
    CHECK(subspaceEqualityResidual(stab.basis, buildRho(n).basis) < 1e-9);
  }
}

TEST_CASE("stabiliser of the real torsion form in so(6) is larger than rho") {
  // Without the complex structure the real 3-form is of type (3,0)+(0,3) for the
  // swapped structure and its stabiliser contains su(3).
  const ComplexTensor t0 = modelT0(1);
  const ComplexTensor real = t0 + conj(t0);
  CHECK(stabilizerAlgebra(real, orthogonalAlgebra(6)).dim() == 8);
}

TEST_CASE("curvature space of rho(sp(1)+u(1))") {
  const CurvatureSpace cs = curvatureSpace(1);
  // 1 + dim_C S^4 E with dim E = 2.
  CHECK(cs.dim() == 6);
  CHECK(cs.bianchiKernelDim == 5);
  CHECK(cs.symmetricSquareDim == 10);
  const ComplexTensor t0 = modelT0(1);
  const RealTensor ta = realPart(t0 + conj(t0));
  const RealTensor sigma = sigmaT(ta, MetricData::identity(6));
  for (const auto& r : cs.basis) {
    CHECK(curvatureSymmetryResidual(r) < 1e-10);
    CHECK(pairSymmetryResidual(r) < 1e-10);
    // b(R) is a multiple of sigma_T.
    const RealTensor b = bianchiB(r);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      num += b.flat(k) * sigma.flat(k);
      den += sigma.flat(k) * sigma.flat(k);
    }
    RealTensor fit = sigma;
    fit *= num / den;
    CHECK(maxAbsDiff(b, fit) < 1e-9);
  }
}

TEST_CASE("curvature space for n = 2") {
  const CurvatureSpace cs = curvatureSpace(2);
  // 1 + dim_C S^4 E with dim E = 4.
  CHECK(cs.dim() == 36);
  CHECK(cs.bianchiKernelDim == 35);
}
