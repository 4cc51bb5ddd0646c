#include "nullray/numerics.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>
#include <stdexcept>

namespace nullray {

namespace {

std::size_t checked_product(const std::vector<std::size_t>& dims) {
  if (dims.empty())
    throw std::invalid_argument("ComplexArray: rank must be positive");
  std::size_t total = 1;
  for (auto d : dims) {
    if (d == 0)
      throw std::invalid_argument("ComplexArray: zero-length axis");
    if (total > std::numeric_limits<std::size_t>::max() / d / sizeof(Complex))
      throw std::overflow_error("ComplexArray: size overflow");
    total *= d;
  }
  return total;
}

} // namespace

ComplexArray::ComplexArray(std::vector<std::size_t> dims)
    : dims_(std::move(dims)), data_(checked_product(dims_)) {}

ComplexArray::ComplexArray(std::vector<std::size_t> dims, std::vector<Complex> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  if (checked_product(dims_) != data_.size())
    throw std::invalid_argument("ComplexArray: data length does not match dims");
}

std::size_t ComplexArray::flat_index(const std::vector<std::size_t>& index) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < dims_.size(); ++a)
    flat = flat * dims_[a] + index[a];
  return flat;
}

std::vector<std::size_t> ComplexArray::unflatten(std::size_t flat) const {
  std::vector<std::size_t> index(dims_.size());
  for (std::size_t a = dims_.size(); a-- > 0;) {
    index[a] = flat % dims_[a];
    flat /= dims_[a];
  }
  return index;
}

double ComplexArray::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_)
    m = std::max(m, std::abs(z));
  return m;
}

double ComplexArray::l2_norm() const {
  double s = 0.0;
  for (const auto& z : data_)
    s += std::norm(z);
  return std::sqrt(s);
}

ComplexArray dft(const ComplexArray& a, bool inverse) {
  ComplexArray out = a;
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);

  const auto& dims = a.dims();
  std::vector<Complex> line, transformed;
  std::size_t stride = out.size();
  for (std::size_t axis = 0; axis < dims.size(); ++axis) {
    const std::size_t n = dims[axis];
    stride /= n;
    line.resize(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    // Each line along `axis` starts at (outer * n * stride + inner).
    const std::size_t outer_count = out.size() / (n * stride);
    for (std::size_t outer = 0; outer < outer_count; ++outer) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = outer * n * stride + inner;
        for (std::size_t j = 0; j < n; ++j)
          line[j] = out[base + j * stride];
        if (inverse)
          fft.inv(transformed, line);
        else
          fft.fwd(transformed, line);
        for (std::size_t j = 0; j < n; ++j)
          out[base + j * stride] = transformed[j] * scale;
      }
    }
  }
  return out;
}

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1)
    throw std::invalid_argument("gauss_legendre: order must be positive");
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);

  // Returns (P_order(x), P'_order(x)) by the three-term recurrence.
  auto legendre = [order](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, order * (x * p1 - p0) / (x * x - 1.0)};
  };

  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    weights[i] = w;
    weights[order - 1 - i] = w;
  }
}

double sphere_area(int n) {
  switch (n) {
  case 2:
    return kTwoPi;
  case 3:
    return 4.0 * kPi;
  case 4:
    return 2.0 * kPi * kPi;
  default:
    throw std::invalid_argument("sphere_area: dimension must be 2, 3 or 4");
  }
}

std::vector<SphereNode> sphere_quadrature(int n, int order) {
  if (order < 2)
    throw std::invalid_argument("sphere_quadrature: order must be at least 2");
  std::vector<SphereNode> rule;

  if (n == 2) {
    const int count = 2 * order;
    const double step = kTwoPi / count;
    for (int i = 0; i < count; ++i) {
      Eigen::VectorXd p(2);
      p << std::cos(i * step), std::sin(i * step);
      rule.push_back({p, step});
    }
    return rule;
  }

  if (n == 3) {
    std::vector<double> z, wz;
    gauss_legendre(order, z, wz);
    // Uniform azimuth is exact for trigonometric polynomials of degree < count.
    const int count = 2 * order;
    const double step = kTwoPi / count;
    for (int i = 0; i < order; ++i) {
      const double r = std::sqrt(std::max(0.0, 1.0 - z[i] * z[i]));
      for (int j = 0; j < count; ++j) {
        Eigen::VectorXd p(3);
        p << r * std::cos(j * step), r * std::sin(j * step), z[i];
        rule.push_back({p, wz[i] * step});
      }
    }
    return rule;
  }

  if (n == 4) {
    // x_1 = cos(psi) with measure sin^2(psi) d psi = sqrt(1 - t^2) dt:
    // Gauss-Chebyshev of the second kind, then an S^2 rule for the rest.
    const auto inner = sphere_quadrature(3, order);
    for (int i = 1; i <= order; ++i) {
      const double theta = i * kPi / (order + 1);
      const double t = std::cos(theta);
      const double wt = kPi / (order + 1) * std::sin(theta) * std::sin(theta);
      const double r = std::sin(theta);
      for (const auto& node : inner) {
        Eigen::VectorXd p(4);
        p << t, r * node.point;
        rule.push_back({p, wt * node.weight});
      }
    }
    return rule;
  }

  throw std::invalid_argument("sphere_quadrature: dimension must be 2, 3 or 4");
}

Eigen::VectorXd random_unit_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  do {
    for (int i = 0; i < n; ++i)
      v[i] = normal(rng);
  } while (v.norm() < 1e-6);
  return v.normalized();
}

} // namespace nullray
