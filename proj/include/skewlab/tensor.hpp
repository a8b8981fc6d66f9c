#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace skewlab {

using Complex = std::complex<double>;

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class S>
struct is_complex_scalar : std::false_type {};
template <class S>
struct is_complex_scalar<std::complex<S>> : std::true_type {};

enum SymmetryFlag : unsigned {
  kNoSymmetry = 0,
  kSkewCovariant = 1u << 0,  // fully alternating in all covariant slots
  kCurvatureType = 1u << 1,  // skew in (0,1) and in (2,3)
  kSymmetric2 = 1u << 2,     // rank-2 symmetric
};

// Dense valence-(r,s) array. Contravariant indices come first, then covariant
// ones; storage is row-major with the first index slowest.
template <class S>
class DenseTensor {
 public:
  using Scalar = S;

  DenseTensor() = default;
  DenseTensor(int dim, int contra, int co) : dim_(dim), r_(contra), s_(co) {
    if (dim <= 0 || contra < 0 || co < 0) throw ShapeError("DenseTensor: invalid shape");
    std::size_t n = 1;
    for (int k = 0; k < contra + co; ++k) n *= static_cast<std::size_t>(dim);
    data_.assign(n, S(0));
  }

  static DenseTensor covariant(int dim, int co) { return DenseTensor(dim, 0, co); }

  int dim() const { return dim_; }
  int contravariant() const { return r_; }
  int covariantCount() const { return s_; }
  int rank() const { return r_ + s_; }
  std::size_t size() const { return data_.size(); }
  bool isComplex() const { return is_complex_scalar<S>::value; }
  unsigned flags() const { return flags_; }
  void setFlags(unsigned f) { flags_ = f; }

  std::vector<S>& data() { return data_; }
  const std::vector<S>& data() const { return data_; }
  S& flat(std::size_t k) { return data_[k]; }
  const S& flat(std::size_t k) const { return data_[k]; }

  template <class... I>
  S& operator()(I... idx) {
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <class... I>
  const S& operator()(I... idx) const {
    return data_[offset({static_cast<int>(idx)...})];
  }
  S& at(const std::vector<int>& idx) { return data_[offset(idx)]; }
  const S& at(const std::vector<int>& idx) const { return data_[offset(idx)]; }

  std::size_t offset(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != rank()) throw ShapeError("DenseTensor: wrong index count");
    std::size_t off = 0;
    for (int i : idx) off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    return off;
  }
  std::vector<int> unflatten(std::size_t k) const {
    std::vector<int> idx(rank());
    for (int p = rank() - 1; p >= 0; --p) {
      idx[p] = static_cast<int>(k % static_cast<std::size_t>(dim_));
      k /= static_cast<std::size_t>(dim_);
    }
    return idx;
  }

  bool sameShape(const DenseTensor& o) const { return dim_ == o.dim_ && r_ == o.r_ && s_ == o.s_; }
  void requireSameShape(const DenseTensor& o, const char* what) const {
    if (!sameShape(o)) throw ShapeError(std::string(what) + ": shape mismatch");
  }

  DenseTensor& operator+=(const DenseTensor& o) {
    requireSameShape(o, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    flags_ &= o.flags_;
    return *this;
  }
  DenseTensor& operator-=(const DenseTensor& o) {
    requireSameShape(o, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    flags_ &= o.flags_;
    return *this;
  }
  DenseTensor& operator*=(S c) {
    for (auto& v : data_) v *= c;
    return *this;
  }
  friend DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
  friend DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
  friend DenseTensor operator*(S c, DenseTensor a) { return a *= c; }
  friend DenseTensor operator*(DenseTensor a, S c) { return a *= c; }
  DenseTensor operator-() const {
    DenseTensor out = *this;
    for (auto& v : out.data_) v = -v;
    return out;
  }

  double maxAbs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, static_cast<double>(std::abs(v)));
    return m;
  }
  double frobeniusNorm() const {
    double s = 0.0;
    for (const auto& v : data_) s += static_cast<double>(std::norm(v));
    return std::sqrt(s);
  }

 private:
  int dim_ = 0;
  int r_ = 0;
  int s_ = 0;
  unsigned flags_ = kNoSymmetry;
  std::vector<S> data_;
};

using RealTensor = DenseTensor<double>;
using ComplexTensor = DenseTensor<Complex>;

inline ComplexTensor complexify(const RealTensor& t) {
  ComplexTensor out(t.dim(), t.contravariant(), t.covariantCount());
  for (std::size_t k = 0; k < t.size(); ++k) out.flat(k) = Complex(t.flat(k), 0.0);
  out.setFlags(t.flags());
  return out;
}

inline ComplexTensor conj(const ComplexTensor& t) {
  ComplexTensor out = t;
  for (auto& v : out.data()) v = std::conj(v);
  return out;
}

inline RealTensor realPart(const ComplexTensor& t) {
  RealTensor out(t.dim(), t.contravariant(), t.covariantCount());
  for (std::size_t k = 0; k < t.size(); ++k) out.flat(k) = t.flat(k).real();
  return out;
}

inline RealTensor imagPart(const ComplexTensor& t) {
  RealTensor out(t.dim(), t.contravariant(), t.covariantCount());
  for (std::size_t k = 0; k < t.size(); ++k) out.flat(k) = t.flat(k).imag();
  return out;
}

inline double maxImag(const ComplexTensor& t) {
  double m = 0.0;
  for (const auto& v : t.data()) m = std::max(m, std::abs(v.imag()));
  return m;
}

template <class S>
double maxAbsDiff(const DenseTensor<S>& a, const DenseTensor<S>& b) {
  a.requireSameShape(b, "maxAbsDiff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, static_cast<double>(std::abs(a.flat(k) - b.flat(k))));
  return m;
}

// out[i_0,...,i_{k-1}] = t[i_{p[0]},...,i_{p[k-1]}]
template <class S>
DenseTensor<S> permute(const DenseTensor<S>& t, const std::vector<int>& p) {
  if (static_cast<int>(p.size()) != t.rank()) throw ShapeError("permute: wrong permutation length");
  DenseTensor<S> out(t.dim(), t.contravariant(), t.covariantCount());
  std::vector<int> src(t.rank());
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto idx = out.unflatten(k);
    for (int a = 0; a < t.rank(); ++a) src[a] = idx[p[a]];
    out.flat(k) = t.at(src);
  }
  return out;
}

}  // namespace skewlab
