#include "nullray/euclidean.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nullray {

namespace {

constexpr double kUnitTol = 1e-12;

void require_unit(const Eigen::VectorXd& v, const char* what) {
  if (v.size() == 0 || std::abs(v.norm() - 1.0) > kUnitTol)
    throw std::invalid_argument(std::string(what) + ": vector is not a unit vector");
}

void require_dim(int a, int b, const char* what) {
  if (a != b)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

double prod_dims(const std::vector<std::size_t>& dims) {
  double p = 1.0;
  for (auto d : dims)
    p *= static_cast<double>(d);
  return p;
}

bool is_nyquist(std::size_t j, std::size_t n) { return n % 2 == 0 && j == n / 2; }

} // namespace

// ---------------------------------------------------------------- DirectionSet

DirectionSet DirectionSet::finite(std::vector<Eigen::VectorXd> directions) {
  if (directions.empty())
    throw std::invalid_argument("DirectionSet: finite set must be nonempty");
  DirectionSet d;
  d.kind_ = Kind::Finite;
  d.dim_ = static_cast<int>(directions.front().size());
  for (const auto& v : directions) {
    require_dim(static_cast<int>(v.size()), d.dim_, "DirectionSet");
    require_unit(v, "DirectionSet");
  }
  d.directions_ = std::move(directions);
  return d;
}

DirectionSet DirectionSet::arc(Eigen::VectorXd a, Eigen::VectorXd b) {
  require_dim(static_cast<int>(a.size()), static_cast<int>(b.size()), "DirectionSet::arc");
  if (a.size() < 2)
    throw std::invalid_argument("DirectionSet::arc: dimension must be at least 2");
  require_unit(a, "DirectionSet::arc");
  require_unit(b, "DirectionSet::arc");
  if ((a - b).norm() < 1e-12)
    throw std::invalid_argument("DirectionSet::arc: endpoints coincide");
  if ((a + b).norm() < 1e-12)
    throw std::invalid_argument("DirectionSet::arc: endpoints are antipodal");
  DirectionSet d;
  d.kind_ = Kind::Arc;
  d.dim_ = static_cast<int>(a.size());
  const double c = std::clamp(a.dot(b), -1.0, 1.0);
  d.u_ = (b - c * a).normalized();
  d.angle_ = std::atan2(b.dot(d.u_), c);
  d.a_ = std::move(a);
  d.b_ = std::move(b);
  return d;
}

DirectionSet DirectionSet::light_cone(Signature sig) {
  DirectionSet d;
  d.kind_ = Kind::LightCone;
  d.sig_ = sig;
  d.dim_ = sig.total();
  return d;
}

Eigen::VectorXd DirectionSet::arc_point(double theta) const {
  return std::cos(theta) * a_ + std::sin(theta) * u_;
}

bool DirectionSet::contains(const Eigen::VectorXd& v, double tol) const {
  if (v.size() != dim_ || std::abs(v.norm() - 1.0) > tol)
    return false;
  switch (kind_) {
  case Kind::Finite:
    return std::any_of(directions_.begin(), directions_.end(),
                       [&](const Eigen::VectorXd& d) { return (d - v).norm() <= tol; });
  case Kind::Arc: {
    const double x = v.dot(a_), y = v.dot(u_);
    if ((v - x * a_ - y * u_).norm() > tol)
      return false;
    const double theta = std::atan2(y, x);
    return theta >= -tol && theta <= angle_ + tol;
  }
  case Kind::LightCone: {
    const double first = v.head(sig_.n1).squaredNorm();
    const double last = v.tail(sig_.n2).squaredNorm();
    return std::abs(first - last) <= tol;
  }
  }
  return false;
}

// ------------------------------------------------------------------- GridField

GridField::GridField(Eigen::VectorXd origin, double spacing, ComplexArray values)
    : origin_(std::move(origin)), h_(spacing), values_(std::move(values)) {
  if (!(h_ > 0.0))
    throw std::invalid_argument("GridField: spacing must be positive");
  if (static_cast<std::size_t>(origin_.size()) != values_.rank() || values_.rank() == 0)
    throw std::invalid_argument("GridField: origin and array rank differ");
  for (auto d : values_.dims())
    if (d < 2)
      throw std::invalid_argument("GridField: every axis needs at least 2 samples");
}

Eigen::VectorXd GridField::point(const std::vector<std::size_t>& index) const {
  Eigen::VectorXd x = origin_;
  for (int m = 0; m < dimension(); ++m)
    x[m] += h_ * static_cast<double>(index[m]);
  return x;
}

Eigen::VectorXd GridField::upper() const {
  Eigen::VectorXd x = origin_;
  for (int m = 0; m < dimension(); ++m)
    x[m] += h_ * static_cast<double>(values_.dims()[m] - 1);
  return x;
}

Eigen::VectorXd GridField::period() const {
  Eigen::VectorXd p(dimension());
  for (int m = 0; m < dimension(); ++m)
    p[m] = h_ * static_cast<double>(values_.dims()[m]);
  return p;
}

Complex GridField::interpolate(const Eigen::VectorXd& x) const {
  const int n = dimension();
  require_dim(static_cast<int>(x.size()), n, "GridField::interpolate");
  std::vector<std::size_t> base(n);
  std::vector<double> frac(n);
  for (int m = 0; m < n; ++m) {
    const auto size = values_.dims()[m];
    const double s = (x[m] - origin_[m]) / h_;
    const double top = static_cast<double>(size - 1);
    if (s < -1e-12 || s > top + 1e-12)
      return {0.0, 0.0};
    const double c = std::clamp(s, 0.0, top);
    const auto i = std::min(static_cast<std::size_t>(c), size - 2);
    base[m] = i;
    frac[m] = c - static_cast<double>(i);
  }
  Complex sum(0.0, 0.0);
  std::vector<std::size_t> idx(n);
  for (unsigned corner = 0; corner < (1u << n); ++corner) {
    double w = 1.0;
    for (int m = 0; m < n; ++m) {
      const bool up = corner & (1u << m);
      idx[m] = base[m] + (up ? 1 : 0);
      w *= up ? frac[m] : 1.0 - frac[m];
    }
    if (w != 0.0)
      sum += w * values_[values_.flat_index(idx)];
  }
  return sum;
}

double GridField::boundary_max_abs() const {
  double m = 0.0;
  const auto& dims = values_.dims();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const auto idx = values_.unflatten(i);
    bool face = false;
    for (std::size_t a = 0; a < dims.size(); ++a)
      face = face || idx[a] == 0 || idx[a] + 1 == dims[a];
    if (face)
      m = std::max(m, std::abs(values_[i]));
  }
  return m;
}

// ------------------------------------------------------------- GaussianMixture

GaussianMixture& GaussianMixture::add(Complex weight, Eigen::VectorXd center, double width) {
  require_dim(static_cast<int>(center.size()), dim_, "GaussianMixture::add");
  if (!(width > 0.0))
    throw std::invalid_argument("GaussianMixture: width must be positive");
  terms_.push_back({weight, std::move(center), width});
  return *this;
}

Complex GaussianMixture::evaluate(const Eigen::VectorXd& x) const {
  require_dim(static_cast<int>(x.size()), dim_, "GaussianMixture::evaluate");
  Complex sum(0.0, 0.0);
  for (const auto& g : terms_)
    sum += g.weight * std::exp(-kPi * (x - g.center).squaredNorm() / (g.width * g.width));
  return sum;
}

Complex GaussianMixture::fourier(const Eigen::VectorXd& xi) const {
  require_dim(static_cast<int>(xi.size()), dim_, "GaussianMixture::fourier");
  Complex sum(0.0, 0.0);
  for (const auto& g : terms_)
    sum += g.weight * std::pow(g.width, dim_) *
           std::exp(-kPi * g.width * g.width * xi.squaredNorm()) *
           std::polar(1.0, -kTwoPi * g.center.dot(xi));
  return sum;
}

GridField GaussianMixture::sample(const Eigen::VectorXd& origin, double spacing,
                                  const std::vector<std::size_t>& dims) const {
  require_dim(static_cast<int>(dims.size()), dim_, "GaussianMixture::sample");
  ComplexArray values(dims);
  GridField grid(origin, spacing, std::move(values));
  for (std::size_t i = 0; i < grid.values().size(); ++i)
    grid.values()[i] = evaluate(grid.point(grid.values().unflatten(i)));
  return grid;
}

int dimension(const ScalarField& f) {
  return std::visit([](const auto& g) { return g.dimension(); }, f);
}

// ------------------------------------------------------------------------ Line

Line::Line(Eigen::VectorXd point, Eigen::VectorXd direction)
    : point_(std::move(point)), direction_(std::move(direction)) {
  require_dim(static_cast<int>(point_.size()), static_cast<int>(direction_.size()), "Line");
  require_unit(direction_, "Line");
}

std::optional<std::pair<double, double>> clip_to_box(const Line& line, const Eigen::VectorXd& lo,
                                                     const Eigen::VectorXd& hi) {
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  for (int m = 0; m < line.dimension(); ++m) {
    const double p = line.point()[m], v = line.direction()[m];
    if (std::abs(v) < 1e-15) {
      if (p < lo[m] || p > hi[m])
        return std::nullopt;
      continue;
    }
    double a = (lo[m] - p) / v, b = (hi[m] - p) / v;
    if (a > b)
      std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
  }
  if (!(t0 < t1))
    return std::nullopt;
  return std::make_pair(t0, t1);
}

// ---------------------------------------------------------- SpectralIntegrator

SpectralIntegrator::SpectralIntegrator(const GridField& f) : field_(&f), coeffs_(dft(f.values())) {
  const double scale = 1.0 / std::sqrt(prod_dims(coeffs_.dims()));
  for (auto& c : coeffs_.data())
    c *= scale;
  const Eigen::VectorXd period = f.period();
  for (int m = 0; m < f.dimension(); ++m) {
    const auto n = coeffs_.dims()[m];
    std::vector<AxisTerm> terms;
    for (std::size_t j = 0; j < n; ++j) {
      const double q = static_cast<double>(signed_bin(j, n));
      if (is_nyquist(j, n)) {
        // Real interpolant: split the Nyquist mode into +-N/2.
        terms.push_back({j, q / period[m], 0.5});
        terms.push_back({j, -q / period[m], 0.5});
      } else {
        terms.push_back({j, q / period[m], 1.0});
      }
    }
    axes_.push_back(std::move(terms));
  }
}

Complex SpectralIntegrator::integrate(const Line& line) const {
  const int n = field_->dimension();
  require_dim(line.dimension(), n, "SpectralIntegrator");
  const Eigen::VectorXd end = field_->origin() + field_->period();
  const auto seg = clip_to_box(line, field_->origin(), end);
  if (!seg)
    return {0.0, 0.0};
  const double length = seg->second - seg->first;
  const Eigen::VectorXd mid =
      line.point() + 0.5 * (seg->first + seg->second) * line.direction() - field_->origin();

  // Per-axis phase factors at the segment midpoint and slopes along it.
  std::vector<std::vector<Complex>> phase(n);
  std::vector<std::vector<double>> slope(n);
  for (int m = 0; m < n; ++m) {
    for (const auto& t : axes_[m]) {
      phase[m].push_back(t.weight * std::polar(1.0, kTwoPi * t.freq * mid[m]));
      slope[m].push_back(t.freq * line.direction()[m]);
    }
  }

  const auto& dims = coeffs_.dims();
  Complex sum(0.0, 0.0);
  // Depth-first over the product of axis terms.
  auto recurse = [&](auto&& self, int axis, std::size_t flat, Complex prod, double b) -> void {
    if (axis == n) {
      sum += coeffs_[flat] * prod * sinc(kPi * b * length);
      return;
    }
    const auto& terms = axes_[axis];
    for (std::size_t k = 0; k < terms.size(); ++k)
      self(self, axis + 1, flat * dims[axis] + terms[k].bin, prod * phase[axis][k],
           b + slope[axis][k]);
  };
  recurse(recurse, 0, 0, Complex(1.0, 0.0), 0.0);
  return sum * length;
}

// --------------------------------------------------------------- line integral

namespace {

Complex gaussian_line_integral(const GaussianMixture& f, const Line& line) {
  Complex sum(0.0, 0.0);
  for (const auto& g : f.terms()) {
    const Eigen::VectorXd r = g.center - line.point();
    const double along = r.dot(line.direction());
    const double d2 = std::max(0.0, r.squaredNorm() - along * along);
    sum += g.weight * g.width * std::exp(-kPi * d2 / (g.width * g.width));
  }
  return sum;
}

Complex multilinear_line_integral(const GridField& f, const Line& line) {
  const auto seg = clip_to_box(line, f.origin(), f.upper());
  if (!seg)
    return {0.0, 0.0};
  const double length = seg->second - seg->first;
  const auto steps = std::max<long>(1, static_cast<long>(std::ceil(length / (0.5 * f.spacing()))));
  const double dt = length / static_cast<double>(steps);
  Complex sum(0.0, 0.0);
  for (long i = 0; i <= steps; ++i) {
    const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    sum += w * f.interpolate(line.point() + (seg->first + dt * i) * line.direction());
  }
  return sum * dt;
}

} // namespace

Complex line_integral(const ScalarField& f, const Line& line, LineMethod method) {
  require_dim(line.dimension(), dimension(f), "line_integral");
  if (const auto* g = std::get_if<GaussianMixture>(&f))
    return gaussian_line_integral(*g, line);
  const auto& grid = std::get<GridField>(f);
  if (method == LineMethod::Spectral)
    return SpectralIntegrator(grid).integrate(line);
  return multilinear_line_integral(grid, line);
}

std::vector<LineValue> restricted_transform(const ScalarField& f, const DirectionSet& D,
                                            const std::vector<Line>& lines, LineMethod method) {
  if (lines.empty())
    throw std::invalid_argument("restricted_transform: no sample lines");
  require_dim(D.dimension(), dimension(f), "restricted_transform");
  for (const auto& l : lines)
    if (!D.contains(l.direction()))
      throw std::invalid_argument("restricted_transform: line direction not in D");

  std::vector<LineValue> out;
  out.reserve(lines.size());
  const auto* grid = std::get_if<GridField>(&f);
  if (grid && method == LineMethod::Spectral) {
    const SpectralIntegrator integrator(*grid);
    for (const auto& l : lines)
      out.push_back({l, integrator.integrate(l)});
  } else {
    for (const auto& l : lines)
      out.push_back({l, line_integral(f, l, method)});
  }
  return out;
}

// --------------------------------------------------------------- Fourier slice

Complex grid_fourier(const GridField& f, const Eigen::VectorXd& xi) {
  const int n = f.dimension();
  require_dim(static_cast<int>(xi.size()), n, "grid_fourier");
  const auto& dims = f.values().dims();
  std::vector<std::vector<Complex>> axis(n);
  for (int m = 0; m < n; ++m)
    for (std::size_t j = 0; j < dims[m]; ++j)
      axis[m].push_back(
          std::polar(1.0, -kTwoPi * xi[m] * (f.origin()[m] + f.spacing() * static_cast<double>(j))));

  Complex sum(0.0, 0.0);
  auto recurse = [&](auto&& self, int a, std::size_t flat, Complex prod) -> void {
    if (a == n) {
      sum += f.values()[flat] * prod;
      return;
    }
    for (std::size_t j = 0; j < dims[a]; ++j)
      self(self, a + 1, flat * dims[a] + j, prod * axis[a][j]);
  };
  recurse(recurse, 0, 0, Complex(1.0, 0.0));
  return sum * std::pow(f.spacing(), n);
}

namespace {

// Orthonormal basis of v^perp as columns.
Eigen::MatrixXd perp_basis(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  const Eigen::MatrixXd column = v;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(column);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return q.rightCols(n - 1);
}

} // namespace

SliceReport fourier_slice_check(const GridField& f, const Eigen::VectorXd& v, int freq_samples) {
  const int n = f.dimension();
  require_dim(static_cast<int>(v.size()), n, "fourier_slice_check");
  require_unit(v, "fourier_slice_check");
  if (n < 2)
    throw std::invalid_argument("fourier_slice_check: dimension must be at least 2");
  if (freq_samples < 1)
    throw std::invalid_argument("fourier_slice_check: need at least one frequency");

  SliceReport report;
  const double peak = f.max_abs();
  report.boundary_ratio = peak > 0.0 ? f.boundary_max_abs() / peak : 0.0;
  if (report.boundary_ratio > kSliceDecay)
    throw PreconditionError("fourier_slice_check: field does not decay at the boundary (ratio " +
                            std::to_string(report.boundary_ratio) + ")");

  const double h = f.spacing();
  const Eigen::MatrixXd w = perp_basis(v);
  const Eigen::VectorXd c = f.center();
  const Eigen::VectorXd half = 0.5 * (f.upper() - f.origin());

  // Offsets in v^perp covering the projection of the box.
  std::vector<long> reach(n - 1);
  for (int i = 0; i < n - 1; ++i)
    reach[i] = static_cast<long>(std::ceil(half.cwiseAbs().dot(w.col(i).cwiseAbs()) / h)) + 1;

  const SpectralIntegrator integrator(f);
  std::vector<Eigen::VectorXd> points;
  std::vector<Complex> values;
  std::vector<long> k(n - 1);
  for (int i = 0; i < n - 1; ++i)
    k[i] = -reach[i];
  while (true) {
    Eigen::VectorXd p = c;
    for (int i = 0; i < n - 1; ++i)
      p += static_cast<double>(k[i]) * h * w.col(i);
    const Line line(p, v);
    if (clip_to_box(line, f.origin(), f.upper())) {
      points.push_back(p);
      values.push_back(integrator.integrate(line));
    }
    int i = n - 2;
    while (i >= 0 && k[i] == reach[i]) {
      k[i] = -reach[i];
      --i;
    }
    if (i < 0)
      break;
    ++k[i];
  }
  report.lines = points.size();

  const double cell = std::pow(h, n - 1);
  const double top = 1.0 / (4.0 * h);
  for (int j = 0; j < freq_samples; ++j) {
    const double kappa = freq_samples == 1 ? 0.0 : top * (2.0 * j / (freq_samples - 1) - 1.0);
    Eigen::VectorXd dir = w.col(0);
    if (n > 2) {
      const double angle = 2.399963229728653 * j;
      dir = std::cos(angle) * w.col(0) + std::sin(angle) * w.col(1);
    }
    const Eigen::VectorXd xi = kappa * dir;
    Complex slice(0.0, 0.0);
    for (std::size_t l = 0; l < points.size(); ++l)
      slice += values[l] * std::polar(1.0, -kTwoPi * xi.dot(points[l]));
    slice *= cell;
    report.max_deviation = std::max(report.max_deviation, std::abs(slice - grid_fourier(f, xi)));
  }
  report.samples = static_cast<std::size_t>(freq_samples);
  return report;
}

// --------------------------------------------------------------- normal bundle

std::pair<double, double> arc_dot_range(const DirectionSet& arc, const Eigen::VectorXd& x) {
  if (arc.kind() != DirectionSet::Kind::Arc)
    throw std::invalid_argument("arc_dot_range: direction set is not an arc");
  require_dim(static_cast<int>(x.size()), arc.dimension(), "arc_dot_range");
  const double A = x.dot(arc.arc_start()), B = x.dot(arc.arc_tangent());
  const double end = x.dot(arc.arc_end());
  double lo = std::min(A, end), hi = std::max(A, end);
  const double rho = std::hypot(A, B);
  const double theta = std::atan2(B, A); // maximizer of cos(t) A + sin(t) B
  auto on_arc = [&](double t) {
    t = std::fmod(t + 2.0 * kTwoPi, kTwoPi);
    return t <= arc.arc_angle();
  };
  if (on_arc(theta))
    hi = std::max(hi, rho);
  if (on_arc(theta + kPi))
    lo = std::min(lo, -rho);
  return {lo, hi};
}

bool normal_bundle_contains(const DirectionSet& D, const Eigen::VectorXd& x) {
  require_dim(static_cast<int>(x.size()), D.dimension(), "normal_bundle_contains");
  const double norm = x.norm();
  if (norm == 0.0)
    return true;
  switch (D.kind()) {
  case DirectionSet::Kind::Finite:
    return std::any_of(D.directions().begin(), D.directions().end(),
                       [&](const Eigen::VectorXd& v) { return std::abs(x.dot(v)) <= 1e-9 * norm; });
  case DirectionSet::Kind::Arc: {
    const auto [lo, hi] = arc_dot_range(D, x);
    return lo <= 1e-9 * norm && hi >= -1e-9 * norm;
  }
  case DirectionSet::Kind::LightCone: {
    const Signature sig = D.signature();
    if (sig.n1 >= 2 && sig.n2 >= 2)
      return true;
    const double first = x.head(sig.n1).squaredNorm();
    const double last = x.tail(sig.n2).squaredNorm();
    const double tol = 1e-12 * norm * norm;
    if (sig.n1 == 1 && sig.n2 == 1)
      return std::abs(first - last) <= tol;
    return sig.n1 == 1 ? first <= last + tol : last <= first + tol;
  }
  }
  return false;
}

NormalPoint arc_interior_normal_point(const DirectionSet& arc) {
  if (arc.kind() != DirectionSet::Kind::Arc)
    throw std::invalid_argument("arc_interior_normal_point: direction set is not an arc");
  NormalPoint out;
  out.x0 = (arc.arc_end() - arc.arc_start()).normalized();
  std::tie(out.inf_dot, out.sup_dot) = arc_dot_range(arc, out.x0);
  if (!(out.inf_dot < 0.0 && out.sup_dot > 0.0))
    throw std::invalid_argument("arc_interior_normal_point: degenerate arc");
  out.radius = 0.5 * std::min(-out.inf_dot, out.sup_dot);
  return out;
}

// ---------------------------------------------------------------- finite kernel

GridField mollifier(int n, std::size_t points, double side, const Eigen::VectorXd& center,
                    double radius) {
  require_dim(static_cast<int>(center.size()), n, "mollifier");
  if (!(radius > 0.0) || !(side > 0.0))
    throw std::invalid_argument("mollifier: radius and side must be positive");
  GridField grid(Eigen::VectorXd::Constant(n, -0.5 * side), side / static_cast<double>(points),
                 ComplexArray(std::vector<std::size_t>(n, points)));
  for (std::size_t i = 0; i < grid.values().size(); ++i) {
    const double r2 = (grid.point(grid.values().unflatten(i)) - center).squaredNorm() /
                      (radius * radius);
    grid.values()[i] = r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
  }
  return grid;
}

namespace {

struct Support {
  Eigen::VectorXd lo, hi;
  bool empty = true;
};

Support nonzero_support(const GridField& f) {
  Support s;
  s.lo = Eigen::VectorXd::Constant(f.dimension(), std::numeric_limits<double>::infinity());
  s.hi = -s.lo;
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    if (f.values()[i] == Complex(0.0, 0.0))
      continue;
    const Eigen::VectorXd x = f.point(f.values().unflatten(i));
    s.lo = s.lo.cwiseMin(x);
    s.hi = s.hi.cwiseMax(x);
    s.empty = false;
  }
  return s;
}

} // namespace

double support_width(const GridField& f) {
  const Support s = nonzero_support(f);
  return s.empty ? 0.0 : (s.hi - s.lo).maxCoeff() + f.spacing();
}

GridField finite_kernel_witness(const DirectionSet& D, const GridField& phi) {
  if (D.kind() != DirectionSet::Kind::Finite)
    throw std::invalid_argument("finite_kernel_witness: direction set must be finite");
  const int n = phi.dimension();
  require_dim(D.dimension(), n, "finite_kernel_witness");
  const auto M = static_cast<int>(D.directions().size());

  const Support s = nonzero_support(phi);
  if (s.empty)
    throw PreconditionError("finite_kernel_witness: bump is identically zero");
  const double width = (s.hi - s.lo).maxCoeff() + phi.spacing();
  const Eigen::VectorXd lo = phi.origin(), hi = phi.upper();
  const double margin = std::min((s.lo - lo).minCoeff(), (hi - s.hi).minCoeff());
  if (margin < M * width)
    throw PreconditionError("finite_kernel_witness: insufficient padding (margin " +
                            std::to_string(margin) + " < " + std::to_string(M * width) + ")");
  if (((M * s.lo - lo).array() < 0.0).any() || ((hi - M * s.hi).array() < 0.0).any())
    throw PreconditionError("finite_kernel_witness: convolved support leaves the grid");

  const auto& dims = phi.values().dims();
  const double total = prod_dims(dims);
  const Eigen::VectorXd period = phi.period();
  const double h = phi.spacing();
  const ComplexArray spectrum = dft(phi.values());
  ComplexArray g(dims);
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const auto idx = spectrum.unflatten(i);
    Eigen::VectorXd xi(n);
    bool nyquist = false;
    for (int m = 0; m < n; ++m) {
      nyquist = nyquist || is_nyquist(idx[m], dims[m]);
      xi[m] = static_cast<double>(signed_bin(idx[m], dims[m])) / period[m];
    }
    if (nyquist)
      continue;
    const Complex origin_phase = std::polar(1.0, kTwoPi * xi.dot(phi.origin()));
    const Complex phi_hat = std::pow(h, n) * std::sqrt(total) * spectrum[i] / origin_phase;
    Complex value = std::pow(phi_hat, M);
    for (const auto& v : D.directions())
      value *= Complex(0.0, kTwoPi * v.dot(xi));
    g[i] = value * origin_phase;
  }
  ComplexArray values = dft(g, true);
  const double scale = std::sqrt(total) / period.prod();
  for (auto& z : values.data())
    z *= scale;
  GridField out(phi.origin(), h, std::move(values));
  if (!(out.max_abs() > 0.0))
    throw PreconditionError("finite_kernel_witness: witness vanishes identically");
  return out;
}

// ------------------------------------------------------------ timelike witness

TimelikeWitness timelike_cone_witness(int n, const TimelikeParams& params) {
  if (n < 3)
    throw std::invalid_argument("timelike_cone_witness: need n >= 3");
  if (params.amplitude == 0.0)
    throw std::invalid_argument("timelike_cone_witness: zero bump gives the trivial witness");
  if (params.points < 4 || !(params.side > 0.0) || !(params.width_bins > 0.0))
    throw std::invalid_argument("timelike_cone_witness: bad grid parameters");

  const std::size_t N = params.points;
  const double reach = params.width_bins * std::sqrt(std::log(1.0 / params.cutoff) / kPi);
  if (std::abs(params.center_bins) + reach >= 0.5 * static_cast<double>(N))
    throw PreconditionError("timelike_cone_witness: bump reaches the Nyquist band");
  const double h = params.side / static_cast<double>(N);
  const Eigen::VectorXd origin = Eigen::VectorXd::Constant(n, -0.5 * params.side);
  const std::vector<std::size_t> dims(n, N);
  ComplexArray g(dims);

  double margin = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  const double s2 = params.width_bins * params.width_bins;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(i);
    Eigen::VectorXd q(n);
    for (int m = 0; m < n; ++m)
      q[m] = static_cast<double>(signed_bin(idx[m], N));
    Eigen::VectorXd d = q;
    d[0] -= params.center_bins;
    const double bump = std::exp(-kPi * d.squaredNorm() / s2);
    if (bump < params.cutoff)
      continue;
    bool nyquist = false;
    for (int m = 0; m < n; ++m)
      nyquist = nyquist || is_nyquist(idx[m], N);
    if (nyquist)
      throw PreconditionError("timelike_cone_witness: bump reaches the Nyquist band");
    const double dist = (q[0] - q.tail(n - 1).norm()) / std::sqrt(2.0);
    if (dist < params.margin_bins)
      throw PreconditionError("timelike_cone_witness: bump within " +
                              std::to_string(params.margin_bins) +
                              " bins of the cone boundary (distance " + std::to_string(dist) + ")");
    margin = std::min(margin, dist);
    sum += bump;
    g[i] = bump * std::polar(1.0, kTwoPi * q.dot(origin) / params.side);
  }
  if (sum == 0.0)
    throw PreconditionError("timelike_cone_witness: bump has no bins above the cutoff");

  ComplexArray values = dft(g, true);
  // f(0) = sum of the bump = 1 after scaling
  const double scale = params.amplitude * std::sqrt(static_cast<double>(g.size())) / sum;
  for (auto& z : values.data())
    z *= scale;
  return {GridField(origin, h, std::move(values)), params.side / params.width_bins, margin};
}

// --------------------------------------------------------------- sphere moment

double sphere_moment_check(const Eigen::VectorXd& a, int n, int order) {
  if (n < 2 || n > 4)
    throw std::invalid_argument("sphere_moment_check: dimension must be 2, 3 or 4");
  require_dim(static_cast<int>(a.size()), n, "sphere_moment_check");
  double sum = 0.0;
  for (const auto& node : sphere_quadrature(n, order)) {
    const double d = a.dot(node.point);
    sum += node.weight * d * d;
  }
  return std::abs(sum - a.squaredNorm() * sphere_area(n) / n);
}

} // namespace nullray
