#pragma once

// Periodic null X-ray transform on the flat Minkowski torus
// T^{n1,n2} = R^{n1,n2} / Z^{n1+n2}, acting on trigonometric polynomials.
//
// A closed null geodesic is t -> x + t v for an integer null vector v, and
//   R_v f(x) = int_0^1 f(x + t v) dt.
// On a single mode e^{2 pi i k.x} this is e^{2 pi i k.x} when k.v = 0 and 0
// otherwise, with k.v the Euclidean pairing. A conformal factor only
// reparametrizes null geodesics, so only the flat metric is modelled.

#include "nullray/diophantine.hpp"
#include "nullray/exact.hpp"
#include "nullray/lattice.hpp"
#include "nullray/numerics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace nullray {

struct LexLess {
  bool operator()(const IntVector& a, const IntVector& b) const { return lex_compare(a, b) < 0; }
};

/// Finitely supported map Z^{n1+n2} -> Scalar. Zero coefficients are never
/// stored.
template <typename Scalar> class TrigPolynomial {
public:
  using Coefficients = std::map<IntVector, Scalar, LexLess>;
  using const_iterator = typename Coefficients::const_iterator;

  TrigPolynomial() = default;
  explicit TrigPolynomial(Signature sig) : sig_(sig) {}

  static TrigPolynomial monomial(const LatticeFrequency& f, Scalar c = Scalar(1)) {
    TrigPolynomial p(f.signature());
    p.set(f, c);
    return p;
  }

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }
  const_iterator begin() const { return coeffs_.begin(); }
  const_iterator end() const { return coeffs_.end(); }
  const Coefficients& coefficients() const { return coeffs_; }

  Scalar coefficient(const LatticeFrequency& f) const {
    check(f);
    auto it = coeffs_.find(f.coords());
    return it == coeffs_.end() ? Scalar(0) : it->second;
  }

  void set(const LatticeFrequency& f, Scalar c) {
    check(f);
    if (ScalarTraits<Scalar>::is_zero(c))
      coeffs_.erase(f.coords());
    else
      coeffs_[f.coords()] = c;
  }

  void add(const LatticeFrequency& f, const Scalar& c) { set(f, coefficient(f) + c); }

  TrigPolynomial& operator+=(const TrigPolynomial& o) {
    require_same(o);
    for (const auto& [k, c] : o.coeffs_)
      add(LatticeFrequency(sig_, k), c);
    return *this;
  }
  friend TrigPolynomial operator+(TrigPolynomial a, const TrigPolynomial& b) { return a += b; }

  friend TrigPolynomial operator*(const Scalar& s, const TrigPolynomial& p) {
    TrigPolynomial out(p.sig_);
    for (const auto& [k, c] : p.coeffs_)
      out.set(LatticeFrequency(p.sig_, k), s * c);
    return out;
  }

  friend bool operator==(const TrigPolynomial& a, const TrigPolynomial& b) {
    return a.sig_ == b.sig_ && a.coeffs_ == b.coeffs_;
  }

  /// sum_k c_k exp(2 pi i k.x)
  Complex evaluate(const Eigen::VectorXd& x) const {
    if (x.size() != sig_.total())
      throw std::invalid_argument("evaluate: point has wrong dimension");
    Complex sum(0.0, 0.0);
    for (const auto& [k, c] : coeffs_)
      sum += ScalarTraits<Scalar>::to_complex(c) * std::polar(1.0, kTwoPi * k.template cast<double>().dot(x));
    return sum;
  }

  TrigPolynomial<Complex> to_complex() const {
    TrigPolynomial<Complex> out(sig_);
    for (const auto& [k, c] : coeffs_)
      out.set(LatticeFrequency(sig_, k), ScalarTraits<Scalar>::to_complex(c));
    return out;
  }

private:
  void check(const LatticeFrequency& f) const {
    if (!(f.signature() == sig_))
      throw std::invalid_argument("TrigPolynomial: frequency signature mismatch");
  }
  void require_same(const TrigPolynomial& o) const {
    if (!(o.sig_ == sig_))
      throw std::invalid_argument("TrigPolynomial: signature mismatch");
  }

  Signature sig_;
  Coefficients coeffs_;
};

using ComplexTrigPolynomial = TrigPolynomial<Complex>;
using ExactTrigPolynomial = TrigPolynomial<ExactComplex>;

/// t -> offset + t * direction, t in [0, 1].
class ClosedNullGeodesic {
public:
  ClosedNullGeodesic(NullLatticeDirection direction, Eigen::VectorXd offset);

  const NullLatticeDirection& direction() const { return direction_; }
  const Eigen::VectorXd& offset() const { return offset_; }
  const Signature& signature() const { return direction_.signature(); }

private:
  NullLatticeDirection direction_;
  Eigen::VectorXd offset_;
};

/// Raised when transform data cannot come from a single polynomial.
class InconsistentData : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void require_signature(const Signature& a, const Signature& b) {
  if (!(a == b))
    throw std::invalid_argument("signature mismatch between polynomial and direction");
}
} // namespace detail

/// Restriction of the coefficient map to frequencies orthogonal to `v`:
/// the Fourier coefficients of R_v f.
template <typename Scalar>
TrigPolynomial<Scalar> transform_coefficients(const TrigPolynomial<Scalar>& f,
                                              const NullLatticeDirection& v) {
  detail::require_signature(f.signature(), v.signature());
  TrigPolynomial<Scalar> out(f.signature());
  for (const auto& [k, c] : f)
    if (k.dot(v.coords()) == 0)
      out.set(LatticeFrequency(f.signature(), k), c);
  return out;
}

/// R_v f evaluated at the geodesic's offset.
template <typename Scalar>
Complex transform(const TrigPolynomial<Scalar>& f, const ClosedNullGeodesic& g) {
  return transform_coefficients(f, g.direction()).evaluate(g.offset());
}

/// Mean of f over `samples` equispaced points of the geodesic. Exact (up to
/// rounding) once samples exceeds every |k.v| on the support; the guard
/// requires samples >= 2 max|k.v| + 1.
template <typename Scalar>
Complex numeric_geodesic_integral(const TrigPolynomial<Scalar>& f, const ClosedNullGeodesic& g,
                                  int samples) {
  detail::require_signature(f.signature(), g.signature());
  Integer max_phase = 0;
  for (const auto& [k, c] : f)
    max_phase = std::max(max_phase, std::abs(k.dot(g.direction().coords())));
  if (samples < 1 || samples < 2 * max_phase + 1)
    throw std::invalid_argument("numeric_geodesic_integral: too few samples");

  const Eigen::VectorXd v = g.direction().coords().template cast<double>();
  Complex sum(0.0, 0.0);
  for (int j = 0; j < samples; ++j)
    sum += f.evaluate(g.offset() + (static_cast<double>(j) / samples) * v);
  return sum / static_cast<double>(samples);
}

/// y -> f(y + shift).
ComplexTrigPolynomial translate(const ComplexTrigPolynomial& f, const Eigen::VectorXd& shift);

/// Transform data keyed by direction.
template <typename Scalar>
using TransformData = std::map<NullLatticeDirection, TrigPolynomial<Scalar>>;

template <typename Scalar>
TransformData<Scalar> collect_transform_data(const TrigPolynomial<Scalar>& f,
                                             const std::vector<NullLatticeDirection>& directions) {
  TransformData<Scalar> data;
  for (const auto& d : directions)
    data.emplace(d, transform_coefficients(f, d));
  return data;
}

template <typename Scalar> struct Recovery {
  Signature signature;
  /// Every frequency in the box some supplied direction is orthogonal to,
  /// including those whose coefficient is zero.
  std::map<IntVector, Scalar, LexLess> recovered;
  std::vector<LatticeFrequency> unrecoverable;

  TrigPolynomial<Scalar> polynomial() const {
    TrigPolynomial<Scalar> p(signature);
    for (const auto& [k, c] : recovered)
      p.set(LatticeFrequency(signature, k), c);
    return p;
  }
};

/// Reads off f's coefficients on the box from transform data. A frequency is
/// recovered when some supplied direction is orthogonal to it; all such
/// directions must agree (within `tolerance` for floating data, exactly
/// otherwise), and no data polynomial may contain a frequency its direction
/// does not annihilate. Violations throw InconsistentData.
template <typename Scalar>
Recovery<Scalar> recover_coefficients(Signature sig, const TransformData<Scalar>& data,
                                      Integer freq_box, double tolerance = 0.0) {
  if (freq_box < 0)
    throw std::invalid_argument("recover_coefficients: box must be nonnegative");
  for (const auto& [d, poly] : data) {
    detail::require_signature(sig, d.signature());
    detail::require_signature(sig, poly.signature());
    for (const auto& [k, c] : poly)
      if (k.dot(d.coords()) != 0)
        throw InconsistentData("data for direction " + format_int_vector(d.coords()) +
                               " contains frequency " + format_int_vector(k) +
                               " not orthogonal to it");
  }

  Recovery<Scalar> out;
  out.signature = sig;
  const LatticeBox box(sig.total(), freq_box);
  for (std::size_t i = 0; i < box.size(); ++i) {
    const LatticeFrequency f(sig, box.point(i));
    bool found = false;
    Scalar value(0);
    for (const auto& [d, poly] : data) {
      if (pairing(f, d) != 0)
        continue;
      const Scalar c = poly.coefficient(f);
      if (!found) {
        value = c;
        found = true;
      } else if (!ScalarTraits<Scalar>::close(value, c, tolerance)) {
        throw InconsistentData("directions disagree on coefficient at " +
                               format_int_vector(f.coords()));
      }
    }
    if (found)
      out.recovered.emplace(f.coords(), value);
    else
      out.unrecoverable.push_back(f);
  }
  return out;
}

/// Single-mode polynomial e^{2 pi i freq.x} in the kernel of the transform.
/// Requires min(n1, n2) = 1 and freq decided outside K; throws
/// std::invalid_argument otherwise (for n1, n2 >= 2 no kernel exists).
ExactTrigPolynomial kernel_witness(const LatticeFrequency& freq,
                                   const MembershipOptions& options = {});

/// True when every direction of the table annihilates f exactly.
template <typename Scalar>
bool annihilated_by_all(const TrigPolynomial<Scalar>& f, const NullDirectionTable& table) {
  detail::require_signature(f.signature(), table.signature());
  const int dim = f.signature().total();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Eigen::Map<const IntVector> d(table.raw(i), dim);
    for (const auto& [k, c] : f)
      if (k.dot(d) == 0)
        return false;
  }
  return true;
}

} // namespace nullray
