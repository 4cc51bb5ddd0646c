#include "nullray/lattice.hpp"

#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nullray {

Signature::Signature(int positive, int negative) : n1(positive), n2(negative) {
  if (n1 < 1 || n2 < 1)
    throw std::invalid_argument("signature factors must be positive");
}

int lex_compare(const IntVector& a, const IntVector& b) {
  const auto n = std::min(a.size(), b.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a[i] < b[i])
      return -1;
    if (a[i] > b[i])
      return 1;
  }
  return (a.size() < b.size()) ? -1 : (a.size() > b.size() ? 1 : 0);
}

bool is_lex_positive(const IntVector& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      return a[i] > 0;
  return false;
}

Integer gcd_of(const IntVector& a) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    g = std::gcd(g, a[i]);
  return g;
}

namespace {

IntVector concat(const IntVector& a, const IntVector& b) {
  IntVector c(a.size() + b.size());
  c << a, b;
  return c;
}

IntVector swap_factors(Signature sig, const IntVector& coords) {
  return concat(coords.tail(sig.n2), coords.head(sig.n1));
}

} // namespace

LatticeFrequency::LatticeFrequency(Signature sig, const IntVector& k, const IntVector& p)
    : sig_(sig) {
  if (k.size() != sig.n1 || p.size() != sig.n2)
    throw std::invalid_argument("frequency length does not match signature");
  coords_ = concat(k, p);
}

LatticeFrequency::LatticeFrequency(Signature sig, IntVector coords)
    : sig_(sig), coords_(std::move(coords)) {
  if (coords_.size() != sig.total())
    throw std::invalid_argument("frequency length does not match signature");
}

LatticeFrequency LatticeFrequency::swapped() const {
  return {sig_.swapped(), swap_factors(sig_, coords_)};
}

bool is_null_vector(Signature sig, const IntVector& coords) {
  if (coords.size() != sig.total())
    return false;
  const Integer a = coords.head(sig.n1).squaredNorm();
  const Integer b = coords.tail(sig.n2).squaredNorm();
  return a == b && a != 0;
}

NullLatticeDirection::NullLatticeDirection(Signature sig, const IntVector& v, const IntVector& w)
    : NullLatticeDirection(sig, [&] {
        if (v.size() != sig.n1 || w.size() != sig.n2)
          throw std::invalid_argument("direction length does not match signature");
        return concat(v, w);
      }()) {}

NullLatticeDirection::NullLatticeDirection(Signature sig, IntVector coords)
    : sig_(sig), coords_(std::move(coords)) {
  if (!is_null_vector(sig_, coords_))
    throw std::invalid_argument("direction is not a nonzero null vector: " +
                                format_int_vector(coords_));
}

NullLatticeDirection NullLatticeDirection::swapped() const {
  return {sig_.swapped(), swap_factors(sig_, coords_)};
}

NullLatticeDirection NullLatticeDirection::primitive() const {
  const Integer g = gcd_of(coords_);
  return {sig_, IntVector(coords_ / g)};
}

NullLatticeDirection NullLatticeDirection::negated() const { return {sig_, IntVector(-coords_)}; }

Integer pairing(const LatticeFrequency& f, const NullLatticeDirection& d) {
  if (!(f.signature() == d.signature()))
    throw std::invalid_argument("signature mismatch between frequency and direction");
  return f.coords().dot(d.coords());
}

std::string format_int_vector(const IntVector& a) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < a.size(); ++i)
    os << (i ? "," : "") << a[i];
  os << ']';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LatticeFrequency& f) {
  return os << format_int_vector(f.k()) << ' ' << format_int_vector(f.p());
}

std::ostream& operator<<(std::ostream& os, const NullLatticeDirection& d) {
  return os << format_int_vector(d.v()) << ' ' << format_int_vector(d.w());
}

LatticeBox::LatticeBox(int dim, Integer radius) : dim_(dim), radius_(radius), size_(1) {
  if (dim < 1 || radius < 0)
    throw std::invalid_argument("LatticeBox: bad dimension or radius");
  const auto side = static_cast<std::size_t>(2 * radius + 1);
  for (int i = 0; i < dim; ++i)
    size_ *= side;
}

IntVector LatticeBox::point(std::size_t index) const {
  const auto side = static_cast<std::size_t>(2 * radius_ + 1);
  IntVector x(dim_);
  for (int i = dim_; i-- > 0;) {
    x[i] = static_cast<Integer>(index % side) - radius_;
    index /= side;
  }
  return x;
}

std::size_t LatticeBox::index(const IntVector& x) const {
  const auto side = static_cast<std::size_t>(2 * radius_ + 1);
  std::size_t idx = 0;
  for (int i = 0; i < dim_; ++i) {
    if (x[i] < -radius_ || x[i] > radius_)
      return size_;
    idx = idx * side + static_cast<std::size_t>(x[i] + radius_);
  }
  return idx;
}

} // namespace nullray
