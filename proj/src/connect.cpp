#include "skewlab/connect.hpp"

#include <cmath>
#include <complex>

#include "skewlab/linalg.hpp"
#include "skewlab/repthy.hpp"

namespace skewlab {

namespace {

RealTensor outer22(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const int d = static_cast<int>(a.rows());
  RealTensor out = RealTensor::covariant(d, 4);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int w = 0; w < d; ++w) out(x, y, z, w) = a(x, y) * b(z, w);
  return out;
}

Eigen::MatrixXd slice2(const RealTensor& r, int x, int y) {
  const int d = r.dim();
  Eigen::MatrixXd m(d, d);
  for (int z = 0; z < d; ++z)
    for (int w = 0; w < d; ++w) m(z, w) = r(x, y, z, w);
  return m;
}

}  // namespace

RealTensor nijenhuis(const HomogeneousSpace& space, const ComplexStructureData& J) {
  const int d = space.dim();
  const Eigen::MatrixXd& j = J.matrix();
  const Eigen::MatrixXd& g = space.metric().matrix();
  RealTensor n = RealTensor::covariant(d, 3);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      const Eigen::VectorXd ex = Eigen::VectorXd::Unit(d, x);
      const Eigen::VectorXd ey = Eigen::VectorXd::Unit(d, y);
      const Eigen::VectorXd jx = j * ex;
      const Eigen::VectorXd jy = j * ey;
      const Eigen::VectorXd v = space.bracketM(jx, jy) - j * space.bracketM(jx, ey) - j * space.bracketM(ex, jy) -
                                space.bracketM(ex, ey);
      const Eigen::VectorXd low = g * v;
      for (int z = 0; z < d; ++z) n(x, y, z) = low(z);
    }
  return n;
}

RealTensor kahlerForm(const MetricData& g, const ComplexStructureData& J) {
  return fromMatrix(Eigen::MatrixXd(J.matrix().transpose() * g.matrix()), 0, 2);
}

RealTensor dcOmega(const HomogeneousSpace& space, const ComplexStructureData& J) {
  const RealTensor d = exteriorDerivative(space, kahlerForm(space.metric(), J));
  const Eigen::MatrixXd& j = J.matrix();
  RealTensor out = d;
  for (int s = 0; s < 3; ++s) out = applySlot(out, s, j);
  return -1.0 * out;
}

ConnectionMap connectionWithTorsion(const ConnectionMap& lc, const RealTensor& t, const MetricData& g) {
  const int d = lc.dim();
  std::vector<Eigen::MatrixXd> lam;
  lam.reserve(d);
  for (int x = 0; x < d; ++x) {
    Eigen::MatrixXd tx(d, d);  // tx(v, y) = T(x, y, v)
    for (int y = 0; y < d; ++y)
      for (int v = 0; v < d; ++v) tx(v, y) = t(x, y, v);
    lam.push_back(lc(x) + 0.5 * g.inverse() * tx);
  }
  return ConnectionMap(std::move(lam));
}

CanonicalTorsionPackage canonicalConnection(const HomogeneousSpace& space, const ComplexStructureData& J, double tol) {
  CanonicalTorsionPackage p;
  p.N = nijenhuis(space, J);
  p.nijenhuisSkewResidual = skewResidual(p.N);
  if (p.nijenhuisSkewResidual > tol * std::max(1.0, p.N.maxAbs()))
    throw StructuralError("canonicalConnection: Nijenhuis tensor is not totally skew (J outside class G1), residual " +
                          std::to_string(p.nijenhuisSkewResidual));
  p.Omega = kahlerForm(space.metric(), J);
  p.dOmega = exteriorDerivative(space, p.Omega);
  p.dcOmega = dcOmega(space, J);
  p.Ta = p.N - p.dcOmega;
  p.levi = leviCivita(space);
  p.connA = connectionWithTorsion(p.levi, p.Ta, space.metric());
  return p;
}

TorsionSolve solveSkewTorsion(const HomogeneousSpace& space, const ConnectionMap& lc, const ComplexStructureData& J) {
  const int d = space.dim();
  const Eigen::MatrixXd& j = J.matrix();
  std::vector<std::array<int, 3>> triples;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      for (int c = b + 1; c < d; ++c) triples.push_back({a, b, c});
  auto unitForm = [&](const std::array<int, 3>& tr) {
    RealTensor t = RealTensor::covariant(d, 3);
    const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    for (int p = 0; p < 6; ++p) t(tr[perm[p][0]], tr[perm[p][1]], tr[perm[p][2]]) = p < 3 ? 1.0 : -1.0;
    return t;
  };
  auto residualVector = [&](const ConnectionMap& c) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(d) * d * d);
    for (int x = 0; x < d; ++x) {
      const Eigen::MatrixXd m = c(x) * j - j * c(x);
      v.segment(static_cast<Eigen::Index>(x) * d * d, d * d) = Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
    }
    return v;
  };
  const ConnectionMap zero = connectionWithTorsion(lc, RealTensor::covariant(d, 3), space.metric());
  const Eigen::VectorXd b0 = residualVector(zero);
  Eigen::MatrixXd a(b0.size(), static_cast<Eigen::Index>(triples.size()));
  for (std::size_t c = 0; c < triples.size(); ++c)
    a.col(static_cast<Eigen::Index>(c)) = residualVector(connectionWithTorsion(lc, unitForm(triples[c]), space.metric())) - b0;
  const Eigen::VectorXd sol = a.completeOrthogonalDecomposition().solve(-b0);
  TorsionSolve out;
  out.T = RealTensor::covariant(d, 3);
  for (std::size_t c = 0; c < triples.size(); ++c) out.T += sol(static_cast<Eigen::Index>(c)) * unitForm(triples[c]);
  out.connA = connectionWithTorsion(lc, out.T, space.metric());
  out.residual = maxAbs(residualVector(out.connA));
  out.nullity = static_cast<int>(triples.size()) - numericalRank(a);
  return out;
}

double curvatureRelationResidual(const RealTensor& r, const RealTensor& ra, const RealTensor& ta, const MetricData& g) {
  const RealTensor gtt = torsionPairing(ta, g);
  const RealTensor rel = r + 0.5 * gtt + 0.25 * permute(gtt, {1, 2, 0, 3}) - 0.25 * permute(gtt, {0, 2, 1, 3});
  return maxAbsDiff(ra, rel);
}

double curvatureRelationGeneralResidual(const RealTensor& r, const RealTensor& ra, const RealTensor& ta,
                                        const RealTensor& nablaT, const MetricData& g) {
  const RealTensor gtt = torsionPairing(ta, g);
  const RealTensor rel = r + 0.5 * gtt + 0.25 * permute(gtt, {1, 2, 0, 3}) - 0.25 * permute(gtt, {0, 2, 1, 3}) +
                         0.5 * (nablaT - permute(nablaT, {1, 0, 2, 3}));
  return maxAbsDiff(ra, rel);
}

RealTensor torsionRicci(const RealTensor& ta, const MetricData& g) {
  const int d = ta.dim();
  const Eigen::MatrixXd& gi = g.inverse();
  RealTensor out = RealTensor::covariant(d, 2);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      double s = 0.0;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          for (int c = 0; c < d; ++c)
            for (int e = 0; e < d; ++e) s += ta(x, a, b) * ta(y, c, e) * gi(a, c) * gi(b, e);
      out(x, y) = s;
    }
  return out;
}

RicciFormulaResiduals ricciFormulasCheck(const RealTensor& r, const RealTensor& ra, const RealTensor& ta,
                                         const SplitHermitianStructure& split) {
  const int n = split.n;
  const MetricData& g = split.g;
  const double t2 = tensorNormSq(ta, g);
  const RicciResult lc = ricciScalar(r, g);
  const RicciResult ca = ricciScalar(ra, g);
  const Eigen::MatrixXd gH = split.gH();
  const Eigen::MatrixXd gV = split.gV();
  const Eigen::MatrixXd ric = toMatrix(lc.ric);
  const Eigen::MatrixXd rica = toMatrix(ca.ric);
  RicciFormulaResiduals res;
  res.ricciA = maxAbs(Eigen::MatrixXd(rica - t2 / (12.0 * n) * ((n + 1) * gH + 2.0 * gV)));
  res.scalarA = std::abs(ca.scalar - (n * n + n + 1) * t2 / (3.0 * n));
  res.ricci = maxAbs(Eigen::MatrixXd(ric - t2 / (24.0 * n) * ((2 * n + 3) * gH + (n + 4) * gV)));
  res.scalar = std::abs(lc.scalar - (4.0 * n * n + 7.0 * n + 4.0) * t2 / (12.0 * n));
  res.ricciTrace = maxAbs(Eigen::MatrixXd(rica - ric + 0.25 * toMatrix(torsionRicci(ta, g))));
  res.scalarTrace = std::abs(ca.scalar - lc.scalar + 0.25 * t2);
  // Generalised eigenvalues of Ric against g.
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> esA(rica, g.matrix(), Eigen::EigenvaluesOnly);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(ric, g.matrix(), Eigen::EigenvaluesOnly);
  res.minEigenA = esA.eigenvalues().minCoeff();
  res.minEigen = es.eigenvalues().minCoeff();
  const Eigen::MatrixXd endo = g.inverse() * ric;
  res.horizontalEigen = (split.hProj * endo).trace() / split.hProj.trace();
  res.verticalEigen = (split.vProj * endo).trace() / split.vProj.trace();
  res.einsteinResidual = maxAbs(Eigen::MatrixXd(ric - lc.scalar / g.dim() * g.matrix()));
  return res;
}

RealTensor modelCurvatureR0a(const SplitHermitianStructure& split) {
  const Eigen::MatrixXd gH = split.gH();
  const Eigen::MatrixXd gV = split.gV();
  const Eigen::MatrixXd& j = split.J.matrix();
  const int d = split.g.dim();
  const Eigen::MatrixXd ls[4] = {split.hProj, split.I, split.JH(), split.K};
  RealTensor r0 = RealTensor::covariant(d, 4);
  for (const auto& l : ls) {
    const Eigen::MatrixXd gl = l.transpose() * gH;  // gl(x,y) = g_H(Lx, y)
    const RealTensor o = outer22(gl, gl);
    r0 += permute(o, {1, 2, 0, 3}) - permute(o, {0, 2, 1, 3});
  }
  const Eigen::MatrixXd hj = j.transpose() * gH;
  const Eigen::MatrixXd vj = j.transpose() * gV;
  r0 -= 2.0 * (outer22(hj, hj) + 2.0 * outer22(hj, vj) + 2.0 * outer22(vj, hj) + 4.0 * outer22(vj, vj));
  return r0;
}

Eigen::MatrixXd curvatureEndomorphism(const RealTensor& r, const MetricData& g, const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& y) {
  const int d = r.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);  // m(z,w) = R(x,y,z,w)
  for (int a = 0; a < d; ++a) {
    if (x(a) == 0.0) continue;
    for (int b = 0; b < d; ++b) {
      if (y(b) == 0.0) continue;
      m += x(a) * y(b) * slice2(r, a, b);
    }
  }
  return g.inverse() * m.transpose();
}

CurvatureDecomposition decomposeCurvature(const RealTensor& ra, const RealTensor& ta, const SplitHermitianStructure& split) {
  CurvatureDecomposition dec;
  const MetricData& g = split.g;
  dec.coefficient = tensorNormSq(ta, g) / (48.0 * split.n);
  dec.R0a = modelCurvatureR0a(split);
  dec.Rhyper = ra - dec.coefficient * dec.R0a;
  for (int s = 0; s < 4; ++s) dec.verticalResidual = std::max(dec.verticalResidual, applySlot(dec.Rhyper, s, split.vProj).maxAbs());
  const int d = g.dim();
  const Eigen::MatrixXd ls[3] = {split.I, split.JH(), split.K};
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      const Eigen::MatrixXd e =
          split.hProj * curvatureEndomorphism(dec.Rhyper, g, Eigen::VectorXd::Unit(d, x), Eigen::VectorXd::Unit(d, y)) *
          split.hProj;
      for (const auto& l : ls) dec.quaternionicResidual = std::max(dec.quaternionicResidual, maxAbs(Eigen::MatrixXd(e * l - l * e)));
    }
  dec.horizontalRicciResidual = ricciScalar(dec.Rhyper, g).ric.maxAbs();
  return dec;
}

HolonomyAlgebra holonomyAlgebra(const ConnectionMap& connA, const RealTensor& ra, const MetricData& g, double relTol,
                                int cap) {
  const int d = g.dim();
  if (cap < 0) cap = 2 * d * d;
  HolonomyAlgebra hol;
  Eigen::MatrixXd q(d * d, 0);
  double scale = 0.0;
  std::vector<Eigen::MatrixXd> seeds;
  std::vector<std::string> seedNames;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      seeds.push_back(curvatureEndomorphism(ra, g, Eigen::VectorXd::Unit(d, i), Eigen::VectorXd::Unit(d, j)));
      seedNames.push_back("R(e" + std::to_string(i) + ",e" + std::to_string(j) + ")");
      scale = std::max(scale, seeds.back().norm());
    }
  for (int x = 0; x < d; ++x) scale = std::max(scale, connA(x).norm());
  if (scale == 0.0) return hol;
  const double thresh = relTol * scale;

  std::size_t processed = 0;
  auto tryAdd = [&](const Eigen::MatrixXd& m, const std::string& why) {
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
    // Two passes of Gram-Schmidt keep the basis orthonormal to rounding level.
    for (int pass = 0; pass < 2; ++pass)
      if (q.cols() > 0) v -= q * (q.transpose() * v);
    const double nv = v.norm();
    if (nv <= thresh) return;
    v /= nv;
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = v;
    hol.basis.push_back(Eigen::Map<const Eigen::MatrixXd>(v.data(), d, d));
    hol.generationLog.push_back(why);
    if (static_cast<int>(hol.basis.size()) > cap)
      throw HolonomyNonConvergence("holonomyAlgebra: dimension still growing at cap " + std::to_string(cap));
  };
  for (std::size_t s = 0; s < seeds.size(); ++s) tryAdd(seeds[s], seedNames[s]);
  while (processed < hol.basis.size()) {
    ++hol.rounds;
    const std::size_t end = hol.basis.size();
    for (std::size_t k = processed; k < end; ++k) {
      const Eigen::MatrixXd bk = hol.basis[k];
      for (std::size_t j = 0; j < k; ++j)
        tryAdd(Eigen::MatrixXd(hol.basis[j] * bk - bk * hol.basis[j]),
               "[b" + std::to_string(j) + ",b" + std::to_string(k) + "]");
      for (int x = 0; x < d; ++x)
        tryAdd(Eigen::MatrixXd(connA(x) * bk - bk * connA(x)), "[L(e" + std::to_string(x) + "),b" + std::to_string(k) + "]");
    }
    processed = end;
  }
  return hol;
}

SplitHermitianStructure structureSwap(const SplitHermitianStructure& split) {
  SplitHermitianStructure s = split;
  s.J = ComplexStructureData(Eigen::MatrixXd(split.J.matrix() * (split.hProj - split.vProj)));
  s.alpha = conj(split.alpha);
  return s;
}

AdaptedFrame adaptedFrame(const SplitHermitianStructure& split, const RealTensor& ta) {
  const MetricData& g = split.g;
  const Eigen::MatrixXd& gm = g.matrix();
  const Eigen::MatrixXd& j = split.J.matrix();
  const int d = g.dim();
  const int n = split.n;
  const Eigen::MatrixXcd om = toMatrix(split.omega);
  const Complex i(0.0, 1.0);
  auto e10 = [&](const Eigen::VectorXd& x) { return Eigen::VectorXcd((x.cast<Complex>() - i * (j * x).cast<Complex>()) / std::sqrt(2.0)); };

  std::vector<Eigen::VectorXd> cols;
  auto orthogonalise = [&](Eigen::VectorXd v) {
    for (const auto& c : cols) v -= c.dot(gm * v) * c;
    return v;
  };
  int k = 0;
  for (int line = 0; line < n; ++line) {
    Eigen::VectorXd x;
    for (; k < d; ++k) {
      x = orthogonalise(split.hProj * Eigen::VectorXd::Unit(d, k));
      if (std::sqrt(x.dot(gm * x)) > 1e-6) break;
    }
    if (k == d) throw StructuralError("adaptedFrame: horizontal space exhausted");
    ++k;
    x /= std::sqrt(x.dot(gm * x));
    const Eigen::VectorXd cands[4] = {split.K * x, -split.K * x, split.I * x, -split.I * x};
    int best = 0;
    double bestRe = -1e300;
    for (int c = 0; c < 4; ++c) {
      const Complex w = e10(x).transpose() * om * e10(cands[c]);
      if (w.real() > bestRe) {
        bestRe = w.real();
        best = c;
      }
    }
    const Eigen::VectorXd x2 = cands[best];
    cols.push_back(x);
    cols.push_back(j * x);
    cols.push_back(x2);
    cols.push_back(j * x2);
  }
  Eigen::VectorXd v;
  for (int c = 0; c < d; ++c) {
    v = orthogonalise(split.vProj * Eigen::VectorXd::Unit(d, c));
    if (std::sqrt(v.dot(gm * v)) > 1e-6) break;
  }
  v /= std::sqrt(v.dot(gm * v));

  AdaptedFrame f;
  Eigen::MatrixXd p(d, d);
  for (std::size_t c = 0; c < cols.size(); ++c) p.col(static_cast<Eigen::Index>(c)) = cols[c];
  const ComplexTensor tc = complexify(ta);
  auto lambdaFor = [&](const Eigen::VectorXd& vv) {
    const Eigen::VectorXcd a = e10(p.col(0)), b = e10(p.col(2)), c = e10(vv).conjugate();
    Complex s = 0.0;
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y)
        for (int z = 0; z < d; ++z) s += tc(x, y, z) * a(x) * b(y) * c(z);
    return s;
  };
  const Complex l0 = lambdaFor(v);
  const double theta = std::abs(l0) > 1e-14 ? std::arg(l0) : 0.0;
  const Eigen::VectorXd vt = std::cos(theta) * v + std::sin(theta) * (j * v);
  p.col(d - 2) = vt;
  p.col(d - 1) = j * vt;
  f.P = p;
  f.lambda = lambdaFor(vt);

  f.orthonormalityResidual = maxAbs(Eigen::MatrixXd(p.transpose() * gm * p - Eigen::MatrixXd::Identity(d, d)));
  f.complexResidual = maxAbs(Eigen::MatrixXd(j * p - p * modelComplexStructure(2 * n + 1)));
  f.omegaResidual = maxAbs(Eigen::MatrixXcd(p.transpose().cast<Complex>() * om * p.cast<Complex>() - toMatrix(modelOmega0(n))));
  const ComplexTensor t0 = modelT0(n);
  const RealTensor model = realPart(f.lambda * t0 + std::conj(f.lambda) * conj(t0));
  f.torsionResidual = maxAbsDiff(restrictCovariant(ta, p), model);
  return f;
}

U1GeneratorCheck u1GeneratorCheck(const RealTensor& ra, const RealTensor& ta, const SplitHermitianStructure& split) {
  const MetricData& g = split.g;
  const int d = g.dim();
  const int n = split.n;
  const Eigen::MatrixXd f = orthonormalFrame(g.matrix());
  const Eigen::MatrixXd& j = split.J.matrix();
  Eigen::MatrixXd endo = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d; ++k) endo += curvatureEndomorphism(ra, g, f.col(k), j * f.col(k));
  const Eigen::MatrixXd gen = j * split.hProj + 2.0 * j * split.vProj;
  const double t2 = tensorNormSq(ta, g);
  U1GeneratorCheck c;
  const double ee = endo.squaredNorm();
  c.fittedConstant = ee > 0 ? (gen.array() * endo.array()).sum() / ee : 0.0;
  c.fitResidual = maxAbs(Eigen::MatrixXd(gen - c.fittedConstant * endo));
  c.statedConstant = t2 > 0 ? -12.0 * n / ((2.0 * n + 1.0) * t2) : 0.0;
  c.correctedConstant = t2 > 0 ? -6.0 * n / ((n + 1.0) * t2) : 0.0;
  c.statedResidual = maxAbs(Eigen::MatrixXd(gen - c.statedConstant * endo));
  c.correctedResidual = maxAbs(Eigen::MatrixXd(gen - c.correctedConstant * endo));
  return c;
}

double torsionNondegeneracy(const RealTensor& ta, const MetricData& g) {
  const int d = g.dim();
  const Eigen::MatrixXd f = orthonormalFrame(g.matrix());
  RealTensor tf = ta;
  for (int s = 0; s < 3; ++s) tf = applySlot(tf, s, f);
  Eigen::MatrixXd m(d, d * d);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) m(x, y * d + z) = tf(x, y, z);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().minCoeff();
}

}  // namespace skewlab
