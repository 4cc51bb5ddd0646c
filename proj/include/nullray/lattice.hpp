#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace nullray {

using Integer = std::int64_t;
using IntVector = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;

/// Split (n1, n2) of Z^{n1+n2} into the positive and negative factors of the
/// Minkowski form.
struct Signature {
  int n1 = 1;
  int n2 = 1;

  Signature() = default;
  Signature(int positive, int negative);

  int total() const { return n1 + n2; }
  Signature swapped() const { return {n2, n1}; }

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Lexicographic comparison on integer vectors of equal length.
int lex_compare(const IntVector& a, const IntVector& b);

/// First nonzero entry positive.
bool is_lex_positive(const IntVector& a);

Integer gcd_of(const IntVector& a);

/// Integer point (k, p) in Z^{n1} x Z^{n2}.
class LatticeFrequency {
public:
  LatticeFrequency() = default;
  LatticeFrequency(Signature sig, const IntVector& k, const IntVector& p);
  /// Splits a concatenated vector according to `sig`.
  LatticeFrequency(Signature sig, IntVector coords);

  const Signature& signature() const { return sig_; }
  IntVector k() const { return coords_.head(sig_.n1); }
  IntVector p() const { return coords_.tail(sig_.n2); }
  const IntVector& coords() const { return coords_; }

  /// (k, p) -> (p, k) with the signature swapped.
  LatticeFrequency swapped() const;
  bool is_zero() const { return (coords_.array() == 0).all(); }

  friend bool operator==(const LatticeFrequency& a, const LatticeFrequency& b) {
    return a.sig_ == b.sig_ && a.coords_ == b.coords_;
  }
  friend bool operator<(const LatticeFrequency& a, const LatticeFrequency& b) {
    return lex_compare(a.coords_, b.coords_) < 0;
  }

private:
  Signature sig_;
  IntVector coords_;
};

/// Integer direction (v, w) with |v|^2 = |w|^2 != 0.
class NullLatticeDirection {
public:
  NullLatticeDirection() = default;
  /// Throws std::invalid_argument unless the direction is null and nonzero.
  NullLatticeDirection(Signature sig, const IntVector& v, const IntVector& w);
  NullLatticeDirection(Signature sig, IntVector coords);

  const Signature& signature() const { return sig_; }
  IntVector v() const { return coords_.head(sig_.n1); }
  IntVector w() const { return coords_.tail(sig_.n2); }
  const IntVector& coords() const { return coords_; }

  NullLatticeDirection swapped() const;
  /// Divides out the gcd of all entries.
  NullLatticeDirection primitive() const;
  NullLatticeDirection negated() const;

  friend bool operator==(const NullLatticeDirection& a, const NullLatticeDirection& b) {
    return a.sig_ == b.sig_ && a.coords_ == b.coords_;
  }
  friend bool operator<(const NullLatticeDirection& a, const NullLatticeDirection& b) {
    return lex_compare(a.coords_, b.coords_) < 0;
  }

private:
  Signature sig_;
  IntVector coords_;
};

/// |v|^2 == |w|^2 and nonzero, checked in integer arithmetic.
bool is_null_vector(Signature sig, const IntVector& coords);

/// Euclidean pairing k.v + p.w.
Integer pairing(const LatticeFrequency& f, const NullLatticeDirection& d);

/// "[a,b,...]"
std::string format_int_vector(const IntVector& a);
std::ostream& operator<<(std::ostream& os, const LatticeFrequency& f);
std::ostream& operator<<(std::ostream& os, const NullLatticeDirection& d);

/// Points of the cube [-radius, radius]^dim in lexicographic order.
class LatticeBox {
public:
  LatticeBox(int dim, Integer radius);

  int dim() const { return dim_; }
  Integer radius() const { return radius_; }
  std::size_t size() const { return size_; }
  IntVector point(std::size_t index) const;
  /// Index of `x`, or size() when x lies outside the box.
  std::size_t index(const IntVector& x) const;

private:
  int dim_;
  Integer radius_;
  std::size_t size_;
};

} // namespace nullray
