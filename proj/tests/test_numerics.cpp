#include "doctest.h"

#include "nullray/numerics.hpp"

#include <cmath>
#include <random>

using namespace nullray;

namespace {

ComplexArray random_array(std::vector<std::size_t> dims, std::mt19937_64& rng) {
  ComplexArray a(std::move(dims));
  std::normal_distribution<double> n(0.0, 1.0);
  for (auto& z : a.data())
    z = Complex(n(rng), n(rng));
  return a;
}

// Direct O(N^2) evaluation of the unitary DFT.
ComplexArray naive_dft(const ComplexArray& a) {
  ComplexArray out(a.dims());
  double scale = 1.0;
  for (auto d : a.dims())
    scale /= std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ki = a.unflatten(i);
    Complex sum(0.0, 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) {
      const auto xj = a.unflatten(j);
      double phase = 0.0;
      for (std::size_t m = 0; m < a.rank(); ++m)
        phase += static_cast<double>(ki[m] * xj[m]) / static_cast<double>(a.dims()[m]);
      sum += a[j] * std::polar(1.0, -kTwoPi * phase);
    }
    out[i] = sum * scale;
  }
  return out;
}

double max_diff(const ComplexArray& a, const ComplexArray& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

} // namespace

TEST_CASE("ComplexArray indexing") {
  ComplexArray a({2, 3, 4});
  CHECK(a.size() == 24);
  CHECK(a.flat_index({1, 2, 3}) == 23);
  CHECK(a.unflatten(17) == std::vector<std::size_t>{1, 1, 1});
  CHECK_THROWS_AS(ComplexArray({2, 2}, std::vector<Complex>(3)), std::invalid_argument);
}

TEST_CASE("dft of a delta is constant") {
  ComplexArray a({8, 8});
  a[0] = 1.0;
  const auto f = dft(a);
  for (const auto& z : f.data())
    CHECK(std::abs(z - Complex(1.0 / 8.0, 0.0)) < 1e-15);
}

TEST_CASE("dft matches the direct sum, including odd sizes") {
  auto rng = make_rng(1);
  for (auto dims : {std::vector<std::size_t>{16}, std::vector<std::size_t>{6, 5},
                    std::vector<std::size_t>{4, 3, 7}}) {
    const auto a = random_array(dims, rng);
    CHECK(max_diff(dft(a), naive_dft(a)) < 1e-12);
  }
}

TEST_CASE("dft round trip, Parseval and linearity") {
  auto rng = make_rng(2);
  const auto a = random_array({64, 64}, rng);
  const auto b = random_array({64, 64}, rng);
  const auto fa = dft(a);
  CHECK(max_diff(dft(fa, true), a) < 1e-12);
  CHECK(std::abs(fa.l2_norm() - a.l2_norm()) < 1e-12 * a.l2_norm());

  const Complex alpha(0.3, -1.2);
  ComplexArray sum(a.dims());
  for (std::size_t i = 0; i < a.size(); ++i)
    sum[i] = alpha * a[i] + b[i];
  const auto fb = dft(b);
  const auto fs = dft(sum);
  double err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    err = std::max(err, std::abs(fs[i] - (alpha * fa[i] + fb[i])));
  CHECK(err < 1e-12);
}

TEST_CASE("dft shift theorem") {
  auto rng = make_rng(3);
  const std::size_t n = 32;
  const auto a = random_array({n, n}, rng);
  const std::size_t s0 = 5, s1 = 11;
  ComplexArray shifted(a.dims());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      shifted[shifted.flat_index({(i + s0) % n, (j + s1) % n})] = a[a.flat_index({i, j})];
  const auto fa = dft(a);
  const auto fs = dft(shifted);
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double phase = -kTwoPi * static_cast<double>(i * s0 + j * s1) / n;
      const auto idx = fa.flat_index({i, j});
      err = std::max(err, std::abs(fs[idx] - fa[idx] * std::polar(1.0, phase)));
    }
  CHECK(err < 1e-12);
}

TEST_CASE("signed_bin") {
  CHECK(signed_bin(0, 8) == 0);
  CHECK(signed_bin(3, 8) == 3);
  CHECK(signed_bin(4, 8) == -4);
  CHECK(signed_bin(7, 8) == -1);
  CHECK(signed_bin(2, 5) == 2);
  CHECK(signed_bin(3, 5) == -2);
}

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1") {
  std::vector<double> x, w;
  gauss_legendre(6, x, w);
  for (int deg = 0; deg <= 11; ++deg) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      s += w[i] * std::pow(x[i], deg);
    const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
    CHECK(std::abs(s - exact) < 1e-14);
  }
}

TEST_CASE("sphere quadrature: area, odd moments, quadratic moments") {
  for (int n : {2, 3, 4}) {
    for (int order : {2, 3, 8}) {
      const auto nodes = sphere_quadrature(n, order);
      double area = 0.0, cross = 0.0, square = 0.0;
      Eigen::VectorXd first = Eigen::VectorXd::Zero(n);
      for (const auto& node : nodes) {
        CHECK(std::abs(node.point.norm() - 1.0) < 1e-14);
        area += node.weight;
        first += node.weight * node.point;
        cross += node.weight * node.point[0] * node.point[n - 1];
        square += node.weight * node.point[0] * node.point[0];
      }
      CHECK(std::abs(area - sphere_area(n)) < 1e-12);
      CHECK(first.norm() < 1e-12);
      CHECK(std::abs(cross) < 1e-12);
      CHECK(std::abs(square - sphere_area(n) / n) < 1e-12);
    }
  }
  CHECK(std::abs(sphere_area(2) - 2 * kPi) < 1e-15);
  CHECK(std::abs(sphere_area(3) - 4 * kPi) < 1e-15);
  CHECK(std::abs(sphere_area(4) - 2 * kPi * kPi) < 1e-14);
  CHECK_THROWS_AS(sphere_quadrature(5, 4), std::invalid_argument);
}

TEST_CASE("random_unit_vector is unit and reproducible") {
  auto r1 = make_rng(), r2 = make_rng();
  for (int i = 0; i < 10; ++i) {
    const auto a = random_unit_vector(3, r1);
    CHECK(std::abs(a.norm() - 1.0) < 1e-15);
    CHECK(a == random_unit_vector(3, r2));
  }
}
