#include "skewlab/repthy.hpp"

#include <cmath>

#include "skewlab/linalg.hpp"

namespace skewlab {

namespace {

Eigen::Matrix2cd quaternionBlock(int unit) {
  // q = z + w j  ->  [[z, -conj(w)], [w, conj(z)]]
  Complex z, w;
  switch (unit) {
    case 0: z = 1.0; w = 0.0; break;
    case 1: z = Complex(0, 1); w = 0.0; break;
    case 2: z = 0.0; w = 1.0; break;
    default: z = 0.0; w = Complex(0, 1); break;
  }
  Eigen::Matrix2cd b;
  b << z, -std::conj(w), w, std::conj(z);
  return b;
}

Eigen::VectorXd flatten(const ComplexTensor& t, bool imag) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(t.size()));
  for (std::size_t k = 0; k < t.size(); ++k) v(static_cast<Eigen::Index>(k)) = imag ? t.flat(k).imag() : t.flat(k).real();
  return v;
}

}  // namespace

bool MatrixLieAlgebra::linearlyIndependent() const {
  if (basis.empty()) return true;
  return numericalRank(vectorizeColumns(basis)) == dim();
}

double MatrixLieAlgebra::closureResidual() const {
  if (basis.empty()) return 0.0;
  const Eigen::MatrixXd q = rangeBasis(vectorizeColumns(basis));
  double worst = 0.0;
  for (int a = 0; a < dim(); ++a)
    for (int b = a + 1; b < dim(); ++b) {
      Eigen::MatrixXd br = basis[a] * basis[b] - basis[b] * basis[a];
      Eigen::Map<const Eigen::VectorXd> v(br.data(), br.size());
      worst = std::max(worst, (v - q * (q.transpose() * v)).norm());
    }
  return worst;
}

Eigen::VectorXd MatrixLieAlgebra::coordinates(const Eigen::MatrixXd& x, double* residual) const {
  Eigen::Map<const Eigen::VectorXd> v(x.data(), x.size());
  return spanCoefficients(vectorizeColumns(basis), v, residual);
}

Eigen::MatrixXd realify(const Eigen::MatrixXcd& a) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(2 * a.rows(), 2 * a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const Complex z = a(i, j);
      r(2 * i, 2 * j) = z.real();
      r(2 * i, 2 * j + 1) = -z.imag();
      r(2 * i + 1, 2 * j) = z.imag();
      r(2 * i + 1, 2 * j + 1) = z.real();
    }
  return r;
}

Eigen::MatrixXd modelComplexStructure(int m) {
  return realify(Complex(0, 1) * Eigen::MatrixXcd::Identity(m, m));
}

MatrixLieAlgebra buildRho(int n, RhoVariant variant) {
  if (n < 1) throw std::invalid_argument("buildRho: n must be >= 1");
  const int m = 2 * n + 1;
  MatrixLieAlgebra alg;
  alg.ambientDim = 2 * m;
  alg.name = variant == RhoVariant::Rho ? "rho(sp(" + std::to_string(n) + ")+u(1))"
                                        : "rho2(sp(" + std::to_string(n) + ")+u(1))";
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int u = (i == j ? 1 : 0); u < 4; ++u) {
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
        const Eigen::Matrix2cd q = quaternionBlock(u);
        a.block(2 * i, 2 * j, 2, 2) += q;
        if (i != j) a.block(2 * j, 2 * i, 2, 2) -= q.adjoint();
        alg.basis.push_back(realify(a));
      }
  Eigen::VectorXcd diag = Eigen::VectorXcd::Constant(m, Complex(0, 1));
  diag(m - 1) = Complex(0, variant == RhoVariant::Rho ? 2.0 : -2.0);
  alg.basis.push_back(realify(Eigen::MatrixXcd(diag.asDiagonal())));
  return alg;
}

MatrixLieAlgebra unitaryAlgebra(int m) {
  MatrixLieAlgebra alg;
  alg.ambientDim = 2 * m;
  alg.name = "u(" + std::to_string(m) + ")";
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(m, m);
      if (a == b) {
        e(a, a) = Complex(0, 1);
        alg.basis.push_back(realify(e));
        continue;
      }
      e(a, b) = 1.0;
      e(b, a) = -1.0;
      alg.basis.push_back(realify(e));
      e(a, b) = Complex(0, 1);
      e(b, a) = Complex(0, 1);
      alg.basis.push_back(realify(e));
    }
  return alg;
}

MatrixLieAlgebra orthogonalAlgebra(int d) {
  MatrixLieAlgebra alg;
  alg.ambientDim = d;
  alg.name = "so(" + std::to_string(d) + ")";
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
      e(b, a) = 1.0;
      e(a, b) = -1.0;
      alg.basis.push_back(std::move(e));
    }
  return alg;
}

Eigen::MatrixXcd modelCoframe(int n) {
  const int m = 2 * n + 1;
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(2 * m, m);
  const double s = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < m; ++a) {
    e(2 * a, a) = s;
    e(2 * a + 1, a) = Complex(0, s);
  }
  return e;
}

ComplexTensor modelOmega0(int n) {
  const Eigen::MatrixXcd e = modelCoframe(n);
  ComplexTensor w = ComplexTensor::covariant(4 * n + 2, 2);
  for (int k = 0; k < n; ++k)
    w += wedge(covectorTensor(Eigen::VectorXcd(e.col(2 * k))), covectorTensor(Eigen::VectorXcd(e.col(2 * k + 1))));
  return w;
}

ComplexTensor modelT0(int n) {
  const Eigen::MatrixXcd e = modelCoframe(n);
  return wedge(modelOmega0(n), covectorTensor(Eigen::VectorXcd(e.col(2 * n).conjugate())));
}

SplitHermitianStructure modelSplit(int n) {
  const int d = 4 * n + 2;
  SplitHermitianStructure s;
  s.n = n;
  s.g = MetricData::identity(d);
  s.J = ComplexStructureData(modelComplexStructure(2 * n + 1));
  s.hProj = Eigen::MatrixXd::Zero(d, d);
  s.hProj.topLeftCorner(4 * n, 4 * n).setIdentity();
  s.vProj = Eigen::MatrixXd::Identity(d, d) - s.hProj;
  s.omega = modelOmega0(n);
  s.alpha = covectorTensor(Eigen::VectorXcd(modelCoframe(n).col(2 * n)));
  endomorphismsFromOmega(s.omega, s.g, s.K, s.I);
  s.lambda = 1.0;
  return s;
}

RepAction inducedAction(const MatrixLieAlgebra& alg, int contra, int co, std::optional<PQFilter> filter) {
  const int d = alg.ambientDim;
  RepAction act;
  act.contra = contra;
  act.co = co;
  act.dim = d;
  const MetricData g = MetricData::identity(d);
  if (filter) {
    if (contra != 0 || filter->p + filter->q != co) throw ContractError("inducedAction: filter type must match valence");
    const ComplexStructureData J(modelComplexStructure(d / 2));
    auto b = pqBasis(J, g, filter->p, filter->q);
    if (filter->realPair) {
      if (filter->p == filter->q) throw ContractError("inducedAction: real pair needs p != q");
      const double s = 1.0 / std::sqrt(2.0);
      for (const auto& e : b) {
        act.carrier.push_back(Complex(s) * (e + conj(e)));
        act.carrier.push_back(Complex(0, s) * (e - conj(e)));
      }
      act.realCarrier = true;
    } else {
      act.carrier = std::move(b);
      act.realCarrier = false;
    }
  } else {
    ComplexTensor proto(d, contra, co);
    for (std::size_t k = 0; k < proto.size(); ++k) {
      ComplexTensor e(d, contra, co);
      e.flat(k) = 1.0;
      act.carrier.push_back(std::move(e));
    }
    act.realCarrier = true;
  }
  const int m = act.carrierDim();
  for (const auto& x : alg.basis) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      ComplexTensor img = derivationAction(x, act.carrier[j]);
      ComplexTensor rest = img;
      for (int i = 0; i < m; ++i) {
        const Complex c = tensorInner(act.carrier[i], img, g);
        op(i, j) = c;
        if (c != Complex(0.0)) rest -= c * act.carrier[i];
      }
      act.leak = std::max(act.leak, rest.maxAbs());
    }
    if (act.realCarrier) op = op.real().cast<Complex>();
    act.generators.push_back(std::move(op));
  }
  return act;
}

double bracketResidual(const RepAction& action, const MatrixLieAlgebra& alg) {
  double worst = 0.0;
  for (int a = 0; a < alg.dim(); ++a)
    for (int b = a + 1; b < alg.dim(); ++b) {
      Eigen::MatrixXd br = alg.basis[a] * alg.basis[b] - alg.basis[b] * alg.basis[a];
      Eigen::VectorXd c = alg.coordinates(br);
      Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Zero(action.carrierDim(), action.carrierDim());
      for (int k = 0; k < alg.dim(); ++k) lhs += c(k) * action.generators[k];
      const auto& A = action.generators[a];
      const auto& B = action.generators[b];
      worst = std::max(worst, maxAbs(Eigen::MatrixXcd(lhs - (A * B - B * A))));
    }
  return worst;
}

std::vector<ComplexTensor> fixedSubspace(const RepAction& action, double relCutoff) {
  const int m = action.carrierDim();
  const int g = static_cast<int>(action.generators.size());
  std::vector<ComplexTensor> out;
  auto assemble = [&](const auto& coeff) {
    for (Eigen::Index c = 0; c < coeff.cols(); ++c) {
      ComplexTensor t(action.dim, action.contra, action.co);
      for (int i = 0; i < m; ++i) {
        const Complex v = coeff(i, c);
        if (v != Complex(0.0)) t += v * action.carrier[i];
      }
      out.push_back(std::move(t));
    }
  };
  if (action.realCarrier) {
    Eigen::MatrixXd stack(static_cast<Eigen::Index>(g) * m, m);
    for (int k = 0; k < g; ++k) stack.middleRows(static_cast<Eigen::Index>(k) * m, m) = action.generators[k].real();
    assemble(kernelBasis(stack, relCutoff));
  } else {
    Eigen::MatrixXcd stack(static_cast<Eigen::Index>(g) * m, m);
    for (int k = 0; k < g; ++k) stack.middleRows(static_cast<Eigen::Index>(k) * m, m) = action.generators[k];
    assemble(kernelBasis(stack, relCutoff));
  }
  return out;
}

MatrixLieAlgebra stabilizerAlgebra(const ComplexTensor& t, const MatrixLieAlgebra& ambient, double relCutoff) {
  if (t.dim() != ambient.ambientDim) throw ShapeError("stabilizerAlgebra: dimension mismatch");
  const Eigen::Index rows = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd m(2 * rows, ambient.dim());
  for (int k = 0; k < ambient.dim(); ++k) {
    ComplexTensor img = derivationAction(ambient.basis[k], t);
    m.col(k).head(rows) = flatten(img, false);
    m.col(k).tail(rows) = flatten(img, true);
  }
  const Eigen::MatrixXd ker = kernelBasis(m, relCutoff);
  MatrixLieAlgebra out;
  out.ambientDim = ambient.ambientDim;
  out.name = "stab(" + ambient.name + ")";
  for (Eigen::Index c = 0; c < ker.cols(); ++c) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(out.ambientDim, out.ambientDim);
    for (int k = 0; k < ambient.dim(); ++k) x += ker(k, c) * ambient.basis[k];
    out.basis.push_back(std::move(x));
  }
  return out;
}

CurvatureSpace curvatureSpace(const MatrixLieAlgebra& alg, const RealTensor& torsion, double relCutoff) {
  const int d = alg.ambientDim;
  const MetricData g = MetricData::identity(d);
  std::vector<RealTensor> forms;
  for (const auto& x : alg.basis) forms.push_back(formOfEndomorphism(x, g));
  std::vector<RealTensor> sym;
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = i; j < alg.dim(); ++j) {
      RealTensor r = RealTensor::covariant(d, 4);
      const auto& a = forms[i];
      const auto& b = forms[j];
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
          for (int z = 0; z < d; ++z)
            for (int w = 0; w < d; ++w) r(x, y, z, w) = a(x, y) * b(z, w) + b(x, y) * a(z, w);
      sym.push_back(std::move(r));
    }
  const RealTensor sigma = sigmaT(torsion, g);
  const Eigen::Index rows = static_cast<Eigen::Index>(sigma.size());
  const Eigen::Index ns = static_cast<Eigen::Index>(sym.size());
  Eigen::MatrixXd m(rows, ns + 1);
  for (Eigen::Index k = 0; k < ns; ++k)
    m.col(k) = Eigen::Map<const Eigen::VectorXd>(bianchiB(sym[k]).data().data(), rows);
  m.col(ns) = -Eigen::Map<const Eigen::VectorXd>(sigma.data().data(), rows);

  CurvatureSpace out;
  out.symmetricSquareDim = static_cast<int>(ns);
  out.bianchiKernelDim = static_cast<int>(kernelBasis(Eigen::MatrixXd(m.leftCols(ns)), relCutoff).cols());
  const Eigen::MatrixXd ker = kernelBasis(m, relCutoff);
  Eigen::MatrixXd vecs(rows, ker.cols());
  for (Eigen::Index c = 0; c < ker.cols(); ++c) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(rows);
    for (Eigen::Index k = 0; k < ns; ++k) v += ker(k, c) * Eigen::Map<const Eigen::VectorXd>(sym[k].data().data(), rows);
    vecs.col(c) = v;
  }
  const Eigen::MatrixXd q = rangeBasis(vecs, relCutoff);
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    RealTensor r = RealTensor::covariant(d, 4);
    Eigen::Map<Eigen::VectorXd>(r.data().data(), rows) = q.col(c);
    out.basis.push_back(std::move(r));
  }
  return out;
}

CurvatureSpace curvatureSpace(int n) {
  if (n < 1) throw std::invalid_argument("curvatureSpace: n must be >= 1");
  const ComplexTensor t0 = modelT0(n);
  return curvatureSpace(buildRho(n), realPart(t0 + conj(t0)));
}

}  // namespace skewlab
