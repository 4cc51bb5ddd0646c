#pragma once

#include <Eigen/Core>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace nullray {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Dense n-dimensional complex array stored row-major (last index fastest).
class ComplexArray {
public:
  ComplexArray() = default;
  explicit ComplexArray(std::vector<std::size_t> dims);
  ComplexArray(std::vector<std::size_t> dims, std::vector<Complex> data);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t rank() const { return dims_.size(); }
  std::size_t size() const { return data_.size(); }

  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  Complex& operator[](std::size_t flat) { return data_[flat]; }
  const Complex& operator[](std::size_t flat) const { return data_[flat]; }

  std::size_t flat_index(const std::vector<std::size_t>& index) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;

  double max_abs() const;
  double l2_norm() const;

private:
  std::vector<std::size_t> dims_;
  std::vector<Complex> data_;
};

/// Unitary multidimensional DFT. Forward uses exp(-2 pi i k.j / N).
ComplexArray dft(const ComplexArray& a, bool inverse = false);

/// Signed frequency index of bin `j` in an axis of length `n` (0, 1, ..., -1).
inline std::int64_t signed_bin(std::size_t j, std::size_t n) {
  const auto s = static_cast<std::int64_t>(j);
  return (j < (n + 1) / 2) ? s : s - static_cast<std::int64_t>(n);
}

struct SphereNode {
  Eigen::VectorXd point;
  double weight = 0.0;
};

/// Product quadrature on S^{n-1} for n in {2, 3, 4}. `order` is the number
/// of nodes per angular coordinate; any order >= 2 integrates quadratics
/// exactly.
std::vector<SphereNode> sphere_quadrature(int n, int order);

/// Surface measure of the unit sphere S^{n-1}.
double sphere_area(int n);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

/// Fixed-seed generator shared by tests and tools.
inline std::mt19937_64 make_rng(std::uint64_t seed = 20160909ULL) { return std::mt19937_64(seed); }

Eigen::VectorXd random_unit_vector(int n, std::mt19937_64& rng);

} // namespace nullray
