#include "skewlab/twistor.hpp"

#include <cmath>

#include "skewlab/linalg.hpp"

namespace skewlab {

namespace {

Eigen::Vector3d cross(const Eigen::Vector3d& a, const Eigen::Vector3d& b) { return a.cross(b); }

Eigen::MatrixXd liftEndomorphism(const Eigen::MatrixXd& a, int total) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(total, total);
  m.topLeftCorner(a.rows(), a.cols()) = a;
  return m;
}

// Restriction of a tensor to H in every slot (pullback on covariant slots, projection on contravariant ones).
RealTensor horizontalPart(const RealTensor& t, const Eigen::MatrixXd& h) {
  RealTensor out = t;
  for (int s = 0; s < t.rank(); ++s) out = applySlot(out, s, s < t.contravariant() ? Eigen::MatrixXd(h.transpose()) : h);
  return out;
}

}  // namespace

Structure parseStructure(const std::string& s) {
  if (s == "J1") return Structure::J1;
  if (s == "J2") return Structure::J2;
  throw std::invalid_argument("unknown structure '" + s + "' (expected J1 or J2)");
}

std::string structureName(Structure s) { return s == Structure::J1 ? "J1" : "J2"; }

double SubmersionData::isometryResidual() const {
  return maxAbs(Eigen::MatrixXd(linkage.transpose() * total.metric().matrix() * linkage - base.metric().matrix()));
}

double baseScalarCurvature(const BaseSpace& base) {
  const ConnectionMap lc = leviCivita(base.space);
  return ricciScalar(curvature(base.space, lc), base.space.metric()).scalar;
}

TwistorSpace buildTwistor(const BaseSpace& base, double t, Structure structure) {
  if (!(t > 0.0)) throw std::invalid_argument("buildTwistor: t must be positive");
  const HomogeneousSpace& b = base.space;
  const int n = base.n;
  const int d = b.dim();
  const int dz = d + 2;
  const int q1 = base.quatIndices[0];
  const int q2 = base.quatIndices[1];
  const int q3 = base.quatIndices[2];

  TwistorSpace tw;
  tw.base = base;
  tw.structure = structure;
  tw.sPrime = baseScalarCurvature(base);
  tw.t0 = 4.0 * (n + 2) / tw.sPrime;
  tw.t1 = 2.0 * (n + 2) / tw.sPrime;
  tw.verticalSign = structure == Structure::J1 ? 1 : -1;

  // Fibre coordinates: the vertical direction x moves J' by [ad x, J'] in span{I', J', K'}.
  const Eigen::MatrixXd* frame[3] = {&base.quat.I, &base.quat.J, &base.quat.K};
  auto coords = [&](int x) {
    const Eigen::MatrixXd dj = b.adOnM(x) * base.quat.J - base.quat.J * b.adOnM(x);
    Eigen::Vector3d c;
    for (int k = 0; k < 3; ++k) c(k) = (dj.transpose() * *frame[k]).trace() / (frame[k]->transpose() * *frame[k]).trace();
    return c;
  };
  Eigen::MatrixXd p(3, 2);
  p.col(0) = coords(q1);
  p.col(1) = coords(q3);
  tw.verticalCoords = p;

  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dz, dz);
  g.topLeftCorner(d, d) = b.metric().matrix();
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) g(d + a, d + c) = n * t * p.col(a).dot(p.col(c));

  std::vector<int> hz = base.otherIsotropy;
  hz.push_back(q2);
  std::vector<int> mz = b.complement();
  mz.push_back(q1);
  mz.push_back(q3);
  const std::string name = "Z(" + b.name() + ",t=" + std::to_string(t) + ")";
  HomogeneousSpace total(name, b.structure(), hz, mz, MetricData(g));

  // J on V: rotation by +-90 degrees about the point J' = (0,1,0) of the fibre sphere.
  Eigen::MatrixXd jz = Eigen::MatrixXd::Zero(dz, dz);
  jz.topLeftCorner(d, d) = base.quat.J;
  const Eigen::Vector3d pole(0.0, 1.0, 0.0);
  auto pinv = p.completeOrthogonalDecomposition();
  for (int a = 0; a < 2; ++a) {
    Eigen::Vector3d w = cross(pole, p.col(a));
    jz.block(d, d + a, 2, 1) = tw.verticalSign * pinv.solve(w);
  }

  SubmersionData& sub = tw.sub;
  sub.total = total;
  sub.base = b;
  sub.linkage = Eigen::MatrixXd::Zero(dz, d);
  sub.linkage.topRows(d).setIdentity();
  sub.hProj = Eigen::MatrixXd::Zero(dz, dz);
  sub.hProj.topLeftCorner(d, d).setIdentity();
  sub.vProj = Eigen::MatrixXd::Identity(dz, dz) - sub.hProj;
  sub.verticalGenerators = {q1, q3};

  tw.iHat = Eigen::VectorXd::Zero(dz);
  tw.kHat = Eigen::VectorXd::Zero(dz);
  tw.iHat.tail(2) = pinv.solve(Eigen::Vector3d(1.0, 0.0, 0.0));
  tw.kHat.tail(2) = pinv.solve(Eigen::Vector3d(0.0, 0.0, 1.0));

  SplitHermitianStructure& s = tw.split;
  s.n = n;
  s.t = t;
  s.g = total.metric();
  s.J = ComplexStructureData(jz);
  s.hProj = sub.hProj;
  s.vProj = sub.vProj;
  s.K = liftEndomorphism(base.quat.K, dz);
  s.I = liftEndomorphism(base.quat.I, dz);
  const Complex i(0.0, 1.0);
  s.omega = Complex(0.5) * (complexify(formOfEndomorphism(s.K, s.g)) + i * complexify(formOfEndomorphism(s.I, s.g)));
  // Unit (1,0)-vector of the integrable orientation and its dual form alpha(X) = g(X, conj U).
  const Eigen::VectorXcd u = (tw.iHat.cast<Complex>() + i * tw.kHat.cast<Complex>()) / std::sqrt(2.0 * n * t);
  Eigen::VectorXcd alpha1 = g.cast<Complex>() * u.conjugate();
  s.alpha = covectorTensor(Eigen::VectorXcd(tw.verticalSign > 0 ? alpha1 : Eigen::VectorXcd(alpha1.conjugate())));
  s.lambda = (2.0 - tw.sPrime * t / (2.0 * (n + 2))) / std::sqrt(2.0 * n * t);
  return tw;
}

double torsionFormulaNormSq(double sPrime, int n, double t) {
  const double c = 2.0 - sPrime * t / (2.0 * (n + 2));
  return 6.0 / t * c * c;
}

RealTensor torsionFormula(const SplitHermitianStructure& s, double sPrime, int n, int verticalSign) {
  const double coef = (2.0 - sPrime * s.t / (2.0 * (n + 2))) / std::sqrt(2.0 * n * s.t);
  const ComplexTensor a1 = verticalSign > 0 ? s.alpha : conj(s.alpha);
  ComplexTensor t = wedge(s.omega, conj(a1)) + wedge(conj(s.omega), a1);
  if (maxImag(t) > 1e-10) throw StructuralError("torsionFormula: closed form is not real");
  return coef * realPart(t);
}

RealTensor oneillA(const SubmersionData& sub, const ConnectionMap& lc) {
  const int d = sub.total.dim();
  RealTensor a(d, 1, 2);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      if (sub.vProj(x, x) > 0.5 || sub.vProj(y, y) > 0.5) continue;
      const Eigen::VectorXd v = sub.vProj * lc(x).col(y);
      for (int w = 0; w < d; ++w) a(w, x, y) = v(w);
    }
  return a;
}

RealTensor oneillBaseCurvature(const SubmersionData& sub, const RealTensor& rTotal, const RealTensor& a) {
  const int d = sub.total.dim();
  const Eigen::MatrixXd& g = sub.total.metric().matrix();
  RealTensor g2 = RealTensor::covariant(d, 4);  // g(A(x,y), A(z,w))
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int w = 0; w < d; ++w) {
          double s = 0.0;
          for (int u = 0; u < d; ++u)
            for (int v = 0; v < d; ++v) s += a(u, x, y) * g(u, v) * a(v, z, w);
          g2(x, y, z, w) = s;
        }
  RealTensor full = rTotal + permute(g2, {1, 2, 0, 3}) - permute(g2, {0, 2, 1, 3}) - 2.0 * g2;
  return restrictCovariant(full, sub.linkage);
}

RealTensor projectCurvature(const SubmersionData& sub, const RealTensor& ra, const RealTensor& ta) {
  return restrictCovariant(ra - torsionPairing(ta, sub.total.metric()), sub.linkage);
}

std::vector<NamedResidual> splittingIdentityChecks(const SubmersionData& sub, const ConnectionMap& lc,
                                                   const ConnectionMap& ca, const RealTensor& ta) {
  const int d = sub.total.dim();
  const Eigen::MatrixXd& gi = sub.total.metric().inverse();
  auto tvec = [&](int x, int y) {
    Eigen::VectorXd v(d);
    for (int w = 0; w < d; ++w) v(w) = ta(x, y, w);
    return Eigen::VectorXd(gi * v);
  };
  std::vector<int> hor, ver;
  for (int k = 0; k < d; ++k) (sub.vProj(k, k) > 0.5 ? ver : hor).push_back(k);
  const Eigen::MatrixXd& H = sub.hProj;
  const Eigen::MatrixXd& V = sub.vProj;
  double r[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  for (int u : ver)
    for (int v : ver) {
      r[0] = std::max(r[0], (lc(u).col(v) - ca(u).col(v)).cwiseAbs().maxCoeff());
      r[1] = std::max(r[1], (H * lc(u).col(v)).cwiseAbs().maxCoeff());
    }
  for (int u : ver)
    for (int x : hor) {
      r[2] = std::max(r[2], (lc(u).col(x) - ca(u).col(x) + 0.5 * tvec(u, x)).cwiseAbs().maxCoeff());
      r[3] = std::max(r[3], (V * lc(u).col(x)).cwiseAbs().maxCoeff());
      r[4] = std::max(r[4], (H * lc(x).col(u) - 0.5 * tvec(u, x)).cwiseAbs().maxCoeff());
      r[5] = std::max(r[5], (V * lc(x).col(u) - ca(x).col(u)).cwiseAbs().maxCoeff());
    }
  for (int x : hor)
    for (int y : hor) {
      r[6] = std::max(r[6], (H * lc(x).col(y) - ca(x).col(y)).cwiseAbs().maxCoeff());
      r[7] = std::max(r[7], (V * lc(x).col(y) + 0.5 * tvec(x, y)).cwiseAbs().maxCoeff());
    }
  return {{"nabla_U V = nabla^a_U V", r[0]},
          {"nabla_U V vertical (totally geodesic fibres)", r[1]},
          {"nabla_U X = nabla^a_U X - T(U,X)/2", r[2]},
          {"nabla_U X horizontal", r[3]},
          {"h nabla_X U = T(U,X)/2", r[4]},
          {"v nabla_X U = nabla^a_X U", r[5]},
          {"h nabla_X Y = nabla^a_X Y", r[6]},
          {"v nabla_X Y = -T(X,Y)/2", r[7]}};
}

ProjectabilityResult projectabilityCheck(const RealTensor& t, const SubmersionData& sub, double tol) {
  const RealTensor ht = horizontalPart(t, sub.hProj);
  ProjectabilityResult res;
  for (int gen : sub.verticalGenerators) {
    const Eigen::MatrixXd a = sub.hProj * sub.total.adOnM(gen) * sub.hProj;
    const RealTensor lie = horizontalPart(derivationAction(a, ht), sub.hProj);
    res.residual = std::max(res.residual, lie.maxAbs());
  }
  res.projectable = res.residual < tol;
  return res;
}

QuaternionicSpanResult quaternionicSpanCheck(const TwistorSpace& tw) {
  const SubmersionData& sub = tw.sub;
  const Eigen::MatrixXd& H = sub.hProj;
  const Eigen::MatrixXd q[3] = {tw.split.I, H * tw.split.J.matrix() * H, tw.split.K};
  const Eigen::MatrixXd basis = vectorizeColumns({q[0], q[1], q[2]});
  QuaternionicSpanResult res;
  for (int gen : sub.verticalGenerators) {
    const Eigen::MatrixXd a = H * sub.total.adOnM(gen) * H;
    Eigen::Matrix3d coef;
    for (int k = 0; k < 3; ++k) {
      const Eigen::MatrixXd lie = H * (a * q[k] - q[k] * a) * H;
      double r = 0.0;
      Eigen::Map<const Eigen::VectorXd> v(lie.data(), lie.size());
      coef.col(k) = spanCoefficients(basis, v, &r);
      res.residual = std::max(res.residual, r);
    }
    res.coefficients.push_back(coef);
  }
  return res;
}

}  // namespace skewlab
