#pragma once

// X-ray transform on R^n restricted to a set of directions D in S^{n-1}:
//   R_v f(x) = int_R f(x + t v) dt,  v in D.
// R_v f determines the Fourier transform of f on the hyperplane v^perp, so
// the transform on D sees exactly the restriction of Ff to the normal
// bundle N(D) = { x : x.v = 0 for some v in D }.

#include "nullray/lattice.hpp"
#include "nullray/numerics.hpp"

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace nullray {

/// Raised when a numerical precondition (decay, padding, cone margin) fails.
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DirectionSet {
public:
  enum class Kind { Finite, Arc, LightCone };

  /// Unit vectors, norms checked to 1e-12.
  static DirectionSet finite(std::vector<Eigen::VectorXd> directions);
  /// Great-circle arc from a to b (inclusive); a, b distinct, non-antipodal.
  static DirectionSet arc(Eigen::VectorXd a, Eigen::VectorXd b);
  /// Unit null vectors of R^{n1,n2}.
  static DirectionSet light_cone(Signature sig);

  Kind kind() const { return kind_; }
  int dimension() const { return dim_; }
  const std::vector<Eigen::VectorXd>& directions() const { return directions_; }
  const Eigen::VectorXd& arc_start() const { return a_; }
  const Eigen::VectorXd& arc_end() const { return b_; }
  /// Unit tangent at the start of the arc, pointing towards the end.
  const Eigen::VectorXd& arc_tangent() const { return u_; }
  double arc_angle() const { return angle_; }
  const Signature& signature() const { return sig_; }

  /// Arc point cos(theta) a + sin(theta) u, theta in [0, arc_angle()].
  Eigen::VectorXd arc_point(double theta) const;

  /// Whether the unit vector v lies in D (within tol of the variety).
  bool contains(const Eigen::VectorXd& v, double tol = 1e-9) const;

private:
  DirectionSet() = default;

  Kind kind_ = Kind::Finite;
  int dim_ = 0;
  std::vector<Eigen::VectorXd> directions_;
  Eigen::VectorXd a_, b_, u_;
  double angle_ = 0.0;
  Signature sig_{1, 1};
};

/// Samples on the grid origin + h * j, j_m = 0 .. dims_m - 1, row-major.
class GridField {
public:
  GridField(Eigen::VectorXd origin, double spacing, ComplexArray values);

  int dimension() const { return static_cast<int>(origin_.size()); }
  const Eigen::VectorXd& origin() const { return origin_; }
  double spacing() const { return h_; }
  const ComplexArray& values() const { return values_; }
  ComplexArray& values() { return values_; }

  Eigen::VectorXd point(const std::vector<std::size_t>& index) const;
  /// Last grid point, origin + h (dims - 1).
  Eigen::VectorXd upper() const;
  Eigen::VectorXd center() const { return 0.5 * (origin_ + upper()); }
  /// Period of the trigonometric interpolant along each axis, h * dims.
  Eigen::VectorXd period() const;

  /// Multilinear interpolation; zero outside the sample box.
  Complex interpolate(const Eigen::VectorXd& x) const;

  double max_abs() const { return values_.max_abs(); }
  /// Largest |value| over samples on the faces of the box.
  double boundary_max_abs() const;

private:
  Eigen::VectorXd origin_;
  double h_;
  ComplexArray values_;
};

struct GaussianTerm {
  Complex weight;
  Eigen::VectorXd center;
  double width;
};

/// f(x) = sum_i c_i exp(-pi |x - mu_i|^2 / sigma_i^2).
class GaussianMixture {
public:
  explicit GaussianMixture(int dimension) : dim_(dimension) {}

  GaussianMixture& add(Complex weight, Eigen::VectorXd center, double width);

  int dimension() const { return dim_; }
  const std::vector<GaussianTerm>& terms() const { return terms_; }

  Complex evaluate(const Eigen::VectorXd& x) const;
  /// Ff(xi) = int f(x) exp(-2 pi i x.xi) dx.
  Complex fourier(const Eigen::VectorXd& xi) const;
  /// Samples on origin + h j.
  GridField sample(const Eigen::VectorXd& origin, double spacing,
                   const std::vector<std::size_t>& dims) const;

private:
  int dim_;
  std::vector<GaussianTerm> terms_;
};

using ScalarField = std::variant<GridField, GaussianMixture>;

int dimension(const ScalarField& f);

class Line {
public:
  /// t -> point + t direction; |direction| = 1 to 1e-12.
  Line(Eigen::VectorXd point, Eigen::VectorXd direction);

  const Eigen::VectorXd& point() const { return point_; }
  const Eigen::VectorXd& direction() const { return direction_; }
  int dimension() const { return static_cast<int>(point_.size()); }

private:
  Eigen::VectorXd point_;
  Eigen::VectorXd direction_;
};

/// Parameter interval where the line lies in the box [lo, hi].
std::optional<std::pair<double, double>> clip_to_box(const Line& line, const Eigen::VectorXd& lo,
                                                     const Eigen::VectorXd& hi);

enum class LineMethod {
  /// Composite trapezoid, step <= h/2, on the multilinear interpolant.
  Multilinear,
  /// Exact integral of the trigonometric interpolant over the segment inside
  /// one period cell [origin, origin + h dims].
  Spectral
};

/// Line integrals of a fixed grid field through its trigonometric
/// interpolant; the coefficients are computed once.
class SpectralIntegrator {
public:
  explicit SpectralIntegrator(const GridField& f);
  Complex integrate(const Line& line) const;

private:
  struct AxisTerm {
    std::size_t bin;
    double freq; // cycles per unit length
    double weight;
  };
  const GridField* field_;
  ComplexArray coeffs_;
  std::vector<std::vector<AxisTerm>> axes_;
};

Complex line_integral(const ScalarField& f, const Line& line,
                      LineMethod method = LineMethod::Multilinear);

struct LineValue {
  Line line;
  Complex value;
};

/// Applies line_integral to each line, in the given order. Every line
/// direction must belong to D; throws std::invalid_argument otherwise.
std::vector<LineValue> restricted_transform(const ScalarField& f, const DirectionSet& D,
                                            const std::vector<Line>& lines,
                                            LineMethod method = LineMethod::Multilinear);

struct SliceReport {
  double max_deviation = 0.0;
  /// Boundary sup over interior sup of |f|.
  double boundary_ratio = 0.0;
  std::size_t lines = 0;
  std::size_t samples = 0;
};

inline constexpr double kSliceDecay = 1e-9;

/// Compares the (n-1)-dimensional Fourier transform of v -> R_v f over v^perp
/// with Ff on freq_samples frequencies of v^perp. Line integrals are spectral;
/// both transforms are Riemann sums at spacing h. Throws PreconditionError when
/// the boundary ratio exceeds kSliceDecay.
SliceReport fourier_slice_check(const GridField& f, const Eigen::VectorXd& v,
                                int freq_samples = 33);

/// Ff(xi) by direct summation h^n sum_j f_j exp(-2 pi i xi.x_j).
Complex grid_fourier(const GridField& f, const Eigen::VectorXd& xi);

/// x in N(D). Finite: some |x.v| <= 1e-9 |x|. Light cone: closed-form
/// complement of the open timelike cone. Arc: min and max of x.y over the arc
/// straddle zero.
bool normal_bundle_contains(const DirectionSet& D, const Eigen::VectorXd& x);

/// Min and max of x.y over y on the arc.
std::pair<double, double> arc_dot_range(const DirectionSet& arc, const Eigen::VectorXd& x);

/// exp(-1 / (1 - |x - c|^2 / R^2)) inside the ball, zero outside, sampled on
/// a cube of `points` samples per axis with the given side length, centered
/// at the origin.
GridField mollifier(int n, std::size_t points, double side, const Eigen::VectorXd& center,
                    double radius);

/// Width of the bounding box of the nonzero samples (largest side, plus h).
double support_width(const GridField& f);

/// f = (v_1.grad phi) * ... * (v_M.grad phi), spectral convolution on the
/// grid of phi. Throws PreconditionError when phi's support is closer to the
/// boundary than M times its width, or when the result is identically zero.
GridField finite_kernel_witness(const DirectionSet& D, const GridField& phi);

struct NormalPoint {
  Eigen::VectorXd x0;
  double radius;
  double inf_dot; // inf over the arc of x0.y
  double sup_dot; // sup over the arc of x0.y = cos d(x0, arc)
};

/// Unit x0 with inf_arc x0.y < 0 < sup_arc x0.y, and a radius on which both
/// signs persist (the two functions are 1-Lipschitz).
NormalPoint arc_interior_normal_point(const DirectionSet& arc);

struct TimelikeParams {
  std::size_t points = 128;
  double side = 1.0;
  /// Bump centre on axis 1 and its width, in frequency bins.
  double center_bins = 36.0;
  double width_bins = 6.0;
  double amplitude = 1.0;
  /// Required distance of every nonzero bin from the cone boundary.
  double margin_bins = 2.0;
  /// Bins where the bump falls below this are dropped.
  double cutoff = 1e-18;
};

struct TimelikeWitness {
  GridField field;
  /// Length scale for relative line integrals: side / width_bins, the
  /// integral of the unit spatial envelope along a line.
  double scale;
  /// Smallest distance of a nonzero bin to the cone boundary, in bins.
  double margin;
};

/// Field with Fourier transform a truncated Gaussian inside the open cone
/// xi_1^2 > |xi_rest|^2 (signature (1, n-1)), normalized to sup |f| = 1 at the
/// grid center. Throws std::invalid_argument for n < 3 or a zero amplitude,
/// PreconditionError when a bin lies within margin_bins of the cone boundary
/// or beyond the Nyquist band.
TimelikeWitness timelike_cone_witness(int n, const TimelikeParams& params = {});

/// |sum_w (a.v)^2 - |a|^2 |S^{n-1}| / n| over sphere_quadrature(n, order).
double sphere_moment_check(const Eigen::VectorXd& a, int n, int order);

} // namespace nullray
