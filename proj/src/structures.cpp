#include "skewlab/structures.hpp"

#include <algorithm>

#include "skewlab/linalg.hpp"

namespace skewlab {

double SplitResiduals::max() const {
  return std::max({projectorSum, projectorIdempotent, projectorOrthogonal, projectorJInvariant, kiSupport, quaternionic,
                   kiOrthogonal, omegaRelation, jOrthogonal});
}

SplitResiduals validateSplit(const SplitHermitianStructure& s) {
  SplitResiduals r;
  const Eigen::Index d = s.dim();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd& g = s.g.matrix();
  const Eigen::MatrixXd& J = s.J.matrix();
  const Eigen::MatrixXd& H = s.hProj;
  const Eigen::MatrixXd& V = s.vProj;
  r.projectorSum = maxAbs(H + V - id);
  r.projectorIdempotent = std::max(maxAbs(H * H - H), maxAbs(V * V - V));
  r.projectorOrthogonal = maxAbs(H.transpose() * g * V);
  r.projectorJInvariant = maxAbs(J * H - H * J);
  r.kiSupport = std::max({maxAbs(s.K * V), maxAbs(s.I * V), maxAbs(V * s.K), maxAbs(V * s.I)});
  const Eigen::MatrixXd JHm = J * H;
  r.quaternionic = std::max({maxAbs(s.K * s.K + H), maxAbs(s.I * s.I + H), maxAbs(JHm * JHm + H),
                             maxAbs(s.I * JHm - s.K), maxAbs(JHm * s.K - s.I), maxAbs(s.K * s.I - JHm),
                             maxAbs(s.I * JHm + JHm * s.I), maxAbs(s.K * JHm + JHm * s.K),
                             maxAbs(s.I * s.K + s.K * s.I)});
  r.kiOrthogonal = std::max(maxAbs(s.K.transpose() * g * s.K - H.transpose() * g * H),
                            maxAbs(s.I.transpose() * g * s.I - H.transpose() * g * H));
  if (s.omega.size() == static_cast<std::size_t>(d * d)) {
    const Complex i(0.0, 1.0);
    Eigen::MatrixXcd lhs = (s.K.cast<Complex>() + i * s.I.cast<Complex>()).transpose() * g.cast<Complex>();
    r.omegaRelation = maxAbs(Eigen::MatrixXcd(lhs - 2.0 * toMatrix(s.omega)));
  }
  r.jOrthogonal = s.J.orthogonalityResidual(s.g);
  return r;
}

void endomorphismsFromOmega(const ComplexTensor& omega, const MetricData& g, Eigen::MatrixXd& K, Eigen::MatrixXd& I) {
  const Eigen::MatrixXcd w = toMatrix(omega);
  // g(A e_x, e_y) = (A^T g)(x,y)  =>  A = g^{-1} B^T for B(x,y) = g(A e_x, e_y)
  K = g.inverse() * (2.0 * w.real()).transpose();
  I = g.inverse() * (2.0 * w.imag()).transpose();
}

}  // namespace skewlab
