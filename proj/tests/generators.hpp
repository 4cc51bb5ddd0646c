#pragma once

// Fixed-seed generators for property tests.

#include "nullray/torus.hpp"

#include <random>

namespace nullray::gen {

inline IntVector iv(std::initializer_list<Integer> xs) {
  IntVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs)
    v[i++] = x;
  return v;
}

inline LatticeFrequency frequency(Signature sig, Integer box, std::mt19937_64& rng) {
  std::uniform_int_distribution<Integer> entry(-box, box);
  IntVector c(sig.total());
  for (int i = 0; i < c.size(); ++i)
    c[i] = entry(rng);
  return LatticeFrequency(sig, c);
}

inline ExactComplex small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<Integer> num(-9, 9), den(1, 6);
  return {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
}

inline ExactTrigPolynomial exact_polynomial(Signature sig, Integer box, int terms,
                                            std::mt19937_64& rng) {
  ExactTrigPolynomial p(sig);
  for (int i = 0; i < terms; ++i)
    p.add(frequency(sig, box, rng), small_rational(rng));
  return p;
}

inline ComplexTrigPolynomial complex_polynomial(Signature sig, Integer box, int terms,
                                                std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexTrigPolynomial p(sig);
  for (int i = 0; i < terms; ++i)
    p.add(frequency(sig, box, rng), Complex(normal(rng), normal(rng)));
  return p;
}

inline Eigen::VectorXd offset(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::VectorXd x(dim);
  for (int i = 0; i < dim; ++i)
    x[i] = u(rng);
  return x;
}

/// Random direction from an enumerated table, with random overall sign and
/// scale (geodesics need not be primitive).
inline NullLatticeDirection direction(const NullDirectionTable& table, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, table.size() - 1);
  std::uniform_int_distribution<Integer> scale(1, 2);
  const auto d = table.direction(pick(rng));
  const Integer s = (rng() & 1 ? 1 : -1) * scale(rng);
  return NullLatticeDirection(d.signature(), IntVector(d.coords() * s));
}

} // namespace nullray::gen
