#include "nullray/diophantine.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace nullray {

using Rational = boost::rational<Integer>;

// ---------------------------------------------------------------------------
// Sums of squares

std::optional<Integer> exact_sqrt(Integer n) {
  if (n < 0)
    return std::nullopt;
  auto r = static_cast<Integer>(std::sqrt(static_cast<double>(n)));
  while (r * r > n)
    --r;
  while ((r + 1) * (r + 1) <= n)
    ++r;
  if (r * r != n)
    return std::nullopt;
  return r;
}

namespace {

Integer isqrt(Integer n) {
  auto r = static_cast<Integer>(std::sqrt(static_cast<double>(n)));
  while (r * r > n)
    --r;
  while ((r + 1) * (r + 1) <= n)
    ++r;
  return r;
}

void require_nonnegative(Integer n, const char* what) {
  if (n < 0)
    throw std::invalid_argument(std::string(what) + ": argument must be nonnegative");
}

} // namespace

std::optional<TwoSquares> is_sum_of_two_squares(Integer n) {
  require_nonnegative(n, "is_sum_of_two_squares");
  if (!two_squares_criterion(n))
    return std::nullopt;
  for (Integer x = isqrt(n / 2); x >= 0; --x) {
    if (auto y = exact_sqrt(n - x * x))
      return TwoSquares{x, *y};
  }
  throw std::logic_error("is_sum_of_two_squares: criterion and search disagree");
}

bool two_squares_criterion(Integer n) {
  require_nonnegative(n, "two_squares_criterion");
  if (n == 0)
    return true;
  for (Integer p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (p % 4 == 3 && e % 2 == 1)
      return false;
  }
  return n % 4 != 3;
}

bool is_sum_of_three_squares(Integer n) {
  require_nonnegative(n, "is_sum_of_three_squares");
  if (n == 0)
    return true;
  while (n % 4 == 0)
    n /= 4;
  return n % 8 != 7;
}

bool is_sum_of_squares(Integer n, int count) {
  if (count < 1)
    throw std::invalid_argument("is_sum_of_squares: count must be positive");
  if (n < 0)
    return false;
  switch (count) {
  case 1:
    return exact_sqrt(n).has_value();
  case 2:
    return two_squares_criterion(n);
  case 3:
    return is_sum_of_three_squares(n);
  default:
    return true;
  }
}

// ---------------------------------------------------------------------------
// Certificates

bool SolverCertificate::holds() const {
  const auto& d = decomposition;
  switch (kind) {
  case CertificateKind::TwoSquare:
    return d.size() == 3 && d[0] * d[0] + d[1] * d[1] == d[2];
  case CertificateKind::ThreeSquare:
    return d.size() == 4 && d[0] * d[0] + d[1] * d[1] + d[2] * d[2] == d[3];
  case CertificateKind::PythagoreanTriple: {
    if (d.size() != 6 || d[2] <= 0)
      return false;
    const Integer m = d[0], n = d[1], g = d[2];
    return g * d[3] == m * m - n * n && g * d[4] == 2 * m * n && g * d[5] == m * m + n * n &&
           d[3] * d[3] + d[4] * d[4] == d[5] * d[5];
  }
  case CertificateKind::PythagoreanQuadruple: {
    if (d.size() != 5)
      return false;
    const Integer v1 = d[0], v2 = d[1], v3 = d[2], s = d[3], p = d[4];
    const Integer q = v1 * v1 + v2 * v2;
    return p != 0 && p == s - v3 && 2 * p * v3 == q - p * p && 2 * p * s == q + p * p;
  }
  }
  return false;
}

std::string to_string(CertificateKind kind) {
  switch (kind) {
  case CertificateKind::TwoSquare:
    return "two-square";
  case CertificateKind::ThreeSquare:
    return "three-square";
  case CertificateKind::PythagoreanTriple:
    return "pyth-triple";
  case CertificateKind::PythagoreanQuadruple:
    return "pyth-quadruple";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Closed-form solvers

namespace {

const Signature kSig21{2, 1};
const Signature kSig31{3, 1};

bool satisfies_system(const IntVector& k, Integer t, const IntVector& v, Integer s) {
  return s != 0 && v.squaredNorm() == s * s && k.dot(v) + t * s == 0;
}

struct Candidate {
  IntVector coords;
  SolverCertificate certificate;
};

// Keeps the lexicographically largest candidate.
void offer(std::optional<Candidate>& best, Candidate c) {
  if (!best || lex_compare(c.coords, best->coords) > 0)
    best = std::move(c);
}

// Rational slope alpha = n/m of the triple (m^2 - n^2, 2mn, m^2 + n^2); m = 0
// encodes alpha = infinity, i.e. the point (-1, 0, 1).
Candidate triple_from_slope(Integer n, Integer m) {
  const Integer v1 = m * m - n * n, v2 = 2 * m * n, s = m * m + n * n;
  IntVector c(3);
  c << v1, v2, s;
  const Integer g = gcd_of(c);
  c /= g;
  return {c, {CertificateKind::PythagoreanTriple, {m, n, g, c[0], c[1], c[2]}}};
}

// (alpha, beta) with p = 1:
//   v1 = alpha, v2 = beta, v3 = (alpha^2 + beta^2 - 1)/2, s = (alpha^2 + beta^2 + 1)/2
Candidate quadruple_from_slopes(Rational alpha, Rational beta) {
  const Rational q = alpha * alpha + beta * beta;
  const Rational entries[4] = {alpha, beta, (q - 1) / 2, (q + 1) / 2};
  Integer scale = 1;
  for (const auto& e : entries)
    scale = std::lcm(scale, e.denominator());
  IntVector c(4);
  for (int i = 0; i < 4; ++i)
    c[i] = boost::rational_cast<Integer>(entries[i] * scale);
  c /= gcd_of(c);
  return {c,
          {CertificateKind::PythagoreanQuadruple, {c[0], c[1], c[2], c[3], c[3] - c[2]}}};
}

std::optional<NullLatticeDirection> finish(std::optional<Candidate> best, Signature sig,
                                           SolverCertificate* certificate) {
  if (!best)
    return std::nullopt;
  if (certificate)
    *certificate = best->certificate;
  return NullLatticeDirection(sig, best->coords);
}

} // namespace

std::optional<NullLatticeDirection> solve_system_2d(Integer k1, Integer k2, Integer t,
                                                    SolverCertificate* certificate) {
  IntVector k(2);
  k << k1, k2;
  const Integer disc = k1 * k1 + k2 * k2 - t * t;
  const Integer a = t - k1; // (t - k1) alpha^2 + 2 k2 alpha + (t + k1) = 0

  std::vector<std::pair<Integer, Integer>> slopes; // (n, m), alpha = n/m
  if (a != 0) {
    const auto r = exact_sqrt(disc);
    if (!r)
      return std::nullopt;
    slopes.emplace_back(-k2 + *r, a);
    slopes.emplace_back(-k2 - *r, a);
  } else {
    slopes.emplace_back(1, 0); // alpha = infinity solves the degenerate equation
    if (k2 != 0)
      slopes.emplace_back(-k1, k2);
    else if (k1 == 0)
      slopes.emplace_back(0, 1); // k = t = 0: every alpha works
  }

  std::optional<Candidate> best;
  for (auto [n, m] : slopes) {
    auto c = triple_from_slope(n, m);
    if (satisfies_system(k, t, c.coords.head(2), c.coords[2]))
      offer(best, std::move(c));
  }
  return finish(std::move(best), kSig21, certificate);
}

std::optional<NullLatticeDirection> solve_system_3d(Integer k1, Integer k2, Integer k3, Integer t,
                                                    SolverCertificate* certificate) {
  IntVector k(3);
  k << k1, k2, k3;
  const Integer disc = k.squaredNorm() - t * t;
  if (disc < 0)
    return std::nullopt;
  const auto squares = is_sum_of_two_squares(disc);
  if (!squares)
    return std::nullopt;

  const Integer c = k3 + t;
  std::optional<Candidate> best;
  auto consider = [&](Candidate cand) {
    if (satisfies_system(k, t, cand.coords.head(3), cand.coords[3]))
      offer(best, std::move(cand));
  };

  if (c == 0 && k1 == 0 && k2 == 0) {
    // p = s - v3 = 0: the direction (0, 0, 1; 1) lies outside the chart.
    IntVector d(4);
    d << 0, 0, 1, 1;
    consider({d, {CertificateKind::TwoSquare, {0, 0, disc}}});
  } else if (c == 0) {
    // With t = -k3 the constraint is linear: k1 alpha + k2 beta = k3.
    // Particular solution plus one step either way along the kernel.
    const Integer g = std::gcd(k1, k2);
    const Rational step_a(k2, g), step_b(-k1, g);
    Rational pa(0), pb(0);
    if (k1 != 0)
      pa = Rational(k3, k1);
    else
      pb = Rational(k3, k2);
    for (int j = -1; j <= 1; ++j)
      consider(quadruple_from_slopes(pa + j * step_a, pb + j * step_b));
  } else {
    // x = c alpha + k1, y = c beta + k2 turns the constraint into x^2 + y^2 = D.
    const Integer x = squares->x, y = squares->y;
    const std::pair<Integer, Integer> variants[8] = {{x, y},  {-x, y},  {x, -y},  {-x, -y},
                                                     {y, x},  {-y, x},  {y, -x},  {-y, -x}};
    for (auto [xx, yy] : variants)
      consider(quadruple_from_slopes(Rational(xx - k1, c), Rational(yy - k2, c)));
  }
  return finish(std::move(best), kSig31, certificate);
}

NullLatticeDirection witness_direction_2x2(Integer k11, Integer k12, Integer k21, Integer k22) {
  // a (k11 - k22) - b (k12 - k21) = 0
  Integer a = k12 - k21, b = k11 - k22;
  if (a == 0 && b == 0) {
    // k = (c, d; d, c)
    a = k12;
    b = k11;
  }
  IntVector d(4);
  if (a == 0 && b == 0)
    d << 1, 0, 1, 0; // k = 0
  else
    d << a, -b, b, -a;
  d /= gcd_of(d);
  IntVector k(4);
  k << k11, k12, k21, k22;
  if (k.dot(d) != 0)
    throw std::logic_error("witness_direction_2x2: construction failed");
  return NullLatticeDirection(Signature{2, 2}, d);
}

// ---------------------------------------------------------------------------
// Bounded search

std::vector<IntVector> lattice_sphere_points(int dim, Integer norm2, Integer bound) {
  std::vector<IntVector> out;
  if (dim < 1 || norm2 < 0 || bound < 0)
    return out;
  IntVector x(dim);
  std::function<void(int, Integer)> fill = [&](int i, Integer rest) {
    const int remaining = dim - i;
    if (rest > remaining * bound * bound)
      return;
    if (remaining == 1) {
      const auto r = exact_sqrt(rest);
      if (!r || *r > bound)
        return;
      if (*r == 0) {
        x[i] = 0;
        out.push_back(x);
      } else {
        x[i] = -*r;
        out.push_back(x);
        x[i] = *r;
        out.push_back(x);
      }
      return;
    }
    const Integer m = std::min(bound, isqrt(rest));
    for (Integer xi = -m; xi <= m; ++xi) {
      x[i] = xi;
      fill(i + 1, rest - xi * xi);
    }
  };
  fill(0, norm2);
  return out;
}

NullDirectionTable::NullDirectionTable(Signature sig, Integer bound) : sig_(sig), bound_(bound) {
  if (bound < 1)
    throw std::invalid_argument("NullDirectionTable: bound must be positive");
  const int dim = sig.total();
  const bool small_first = sig.n2 <= sig.n1;
  const int d_small = small_first ? sig.n2 : sig.n1;
  const int d_large = small_first ? sig.n1 : sig.n2;
  const Integer max_norm = static_cast<Integer>(d_small) * bound * bound;

  std::vector<IntVector> rows;
  IntVector c(dim);
  for (Integer n = 1; n <= max_norm; ++n) {
    const auto small = lattice_sphere_points(d_small, n, bound);
    if (small.empty())
      continue;
    const auto large = lattice_sphere_points(d_large, n, bound);
    for (const auto& a : large) {
      for (const auto& b : small) {
        if (small_first)
          c << a, b;
        else
          c << b, a;
        if (is_lex_positive(c) && gcd_of(c) == 1)
          rows.push_back(c);
      }
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const IntVector& x, const IntVector& y) { return lex_compare(x, y) > 0; });
  count_ = rows.size();
  flat_.reserve(count_ * dim);
  for (const auto& r : rows)
    flat_.insert(flat_.end(), r.data(), r.data() + dim);
}

NullLatticeDirection NullDirectionTable::direction(std::size_t i) const {
  const int dim = sig_.total();
  return NullLatticeDirection(sig_, IntVector(Eigen::Map<const IntVector>(raw(i), dim)));
}

std::optional<NullLatticeDirection>
NullDirectionTable::find_orthogonal(const LatticeFrequency& f) const {
  if (!(f.signature() == sig_))
    throw std::invalid_argument("find_orthogonal: signature mismatch");
  const int dim = sig_.total();
  const Integer* fc = f.coords().data();
  for (std::size_t i = 0; i < count_; ++i) {
    const Integer* d = raw(i);
    Integer dot = 0;
    for (int j = 0; j < dim; ++j)
      dot += fc[j] * d[j];
    // Rows are lex-positive and sorted descending, so the first hit beats
    // every other hit and every negation.
    if (dot == 0)
      return direction(i);
  }
  return std::nullopt;
}

std::vector<std::int32_t> NullDirectionTable::orthogonal_map(Integer radius) const {
  const int dim = sig_.total();
  const LatticeBox box(dim, radius);
  std::vector<std::int32_t> map(box.size(), -1);
  const Integer side = 2 * radius + 1;

  std::vector<Integer> strides(dim, 1);
  for (int j = dim - 1; j-- > 0;)
    strides[j] = strides[j + 1] * side;

  std::vector<Integer> x(dim);
  for (std::size_t i = 0; i < count_; ++i) {
    const Integer* d = raw(i);
    int pivot = 0;
    for (int j = 1; j < dim; ++j)
      if (std::abs(d[j]) > std::abs(d[pivot]))
        pivot = j;

    // Odometer over every coordinate except the pivot, which is solved for.
    std::fill(x.begin(), x.end(), -radius);
    x[pivot] = 0;
    Integer partial = 0, offset = 0;
    for (int j = 0; j < dim; ++j) {
      if (j != pivot) {
        partial += x[j] * d[j];
        offset += (x[j] + radius) * strides[j];
      }
    }
    while (true) {
      if (partial % d[pivot] == 0) {
        const Integer xp = -partial / d[pivot];
        if (xp >= -radius && xp <= radius) {
          auto& slot = map[static_cast<std::size_t>(offset + (xp + radius) * strides[pivot])];
          if (slot < 0)
            slot = static_cast<std::int32_t>(i);
        }
      }
      int j = dim - 1;
      for (; j >= 0; --j) {
        if (j == pivot)
          continue;
        if (x[j] < radius) {
          ++x[j];
          partial += d[j];
          offset += strides[j];
          break;
        }
        partial -= (x[j] + radius) * d[j];
        offset -= (x[j] + radius) * strides[j];
        x[j] = -radius;
      }
      if (j < 0)
        break;
    }
  }
  return map;
}

std::vector<NullLatticeDirection> enumerate_null_directions(Signature sig, Integer bound) {
  const NullDirectionTable table(sig, bound);
  std::vector<NullLatticeDirection> out;
  out.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i)
    out.push_back(table.direction(i));
  return out;
}

std::optional<NullLatticeDirection> brute_force_null_orthogonal(const LatticeFrequency& f,
                                                                Integer bound) {
  return NullDirectionTable(f.signature(), bound).find_orthogonal(f);
}

// ---------------------------------------------------------------------------
// Membership

std::string to_string(Membership m) {
  switch (m) {
  case Membership::InK:
    return "true";
  case Membership::NotInK:
    return "false";
  case Membership::Unknown:
    return "unknown";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
  case Method::Constructive2x2:
    return "constructive";
  case Method::Lemma1d:
    return "lemma-1d";
  case Method::Lemma2d:
    return "lemma-2d";
  case Method::Lemma3d:
    return "lemma-3d";
  case Method::NormBound:
    return "norm-bound";
  case Method::BruteForce:
    return "brute-force";
  }
  return "?";
}

namespace {

MembershipResult membership_time_last(const LatticeFrequency& f, const MembershipOptions& options) {
  const Signature sig = f.signature();
  const IntVector k = f.k();
  const Integer t = f.p()[0];
  const Integer kk = k.squaredNorm(), tt = t * t;
  MembershipResult r;

  auto norm_witness = [&] {
    IntVector c(sig.total());
    if (kk == 0) {
      c.setZero();
      c[0] = 1;
      c[sig.n1] = 1;
    } else {
      c << k, -t;
      c /= gcd_of(c);
    }
    return NullLatticeDirection(sig, c);
  };

  auto from_solver = [&](std::optional<NullLatticeDirection> d, SolverCertificate cert, Method m) {
    r.method = m;
    if (d) {
      r.decision = Membership::InK;
      r.witness = std::move(d);
      r.certificate = std::move(cert);
    } else {
      r.decision = Membership::NotInK;
    }
    return r;
  };

  SolverCertificate cert;
  switch (sig.n1) {
  case 1:
    r.method = Method::Lemma1d;
    if (kk == tt) {
      r.decision = Membership::InK;
      r.witness = norm_witness();
    } else {
      r.decision = Membership::NotInK;
    }
    return r;
  case 2: {
    auto d = solve_system_2d(k[0], k[1], t, &cert);
    return from_solver(std::move(d), cert, Method::Lemma2d);
  }
  case 3: {
    auto d = solve_system_3d(k[0], k[1], k[2], t, &cert);
    return from_solver(std::move(d), cert, Method::Lemma3d);
  }
  default:
    break;
  }

  // n1 >= 4: the norm sandwich settles |t| > |k| and |t| = |k|; the rest is
  // a bounded search.
  if (tt > kk) {
    r.decision = Membership::NotInK;
    r.method = Method::NormBound;
    return r;
  }
  if (tt == kk) {
    r.decision = Membership::InK;
    r.method = Method::NormBound;
    r.witness = norm_witness();
    return r;
  }
  r.method = Method::BruteForce;
  std::optional<NullLatticeDirection> found;
  if (options.table && options.table->signature() == sig) {
    found = options.table->find_orthogonal(f);
  } else if (options.table && options.table->signature() == sig.swapped()) {
    if (auto d = options.table->find_orthogonal(f.swapped()))
      found = d->swapped();
  } else {
    found = brute_force_null_orthogonal(f, options.search_bound);
  }
  r.decision = found ? Membership::InK : Membership::Unknown;
  r.witness = std::move(found);
  return r;
}

} // namespace

MembershipResult k_membership(const LatticeFrequency& f, const MembershipOptions& options) {
  const Signature sig = f.signature();
  if (sig.n1 >= 2 && sig.n2 >= 2) {
    const IntVector k = f.k(), p = f.p();
    const auto block = witness_direction_2x2(k[0], k[1], p[0], p[1]);
    IntVector v = IntVector::Zero(sig.n1), w = IntVector::Zero(sig.n2);
    v.head(2) = block.v();
    w.head(2) = block.w();
    MembershipResult r;
    r.decision = Membership::InK;
    r.method = Method::Constructive2x2;
    r.witness = NullLatticeDirection(sig, v, w);
    return r;
  }
  if (sig.n2 == 1)
    return membership_time_last(f, options);

  // n1 == 1 < n2: solve with the factors exchanged.
  auto r = membership_time_last(f.swapped(), options);
  if (r.witness)
    r.witness = r.witness->swapped();
  return r;
}

// ---------------------------------------------------------------------------
// Conjecture scan

std::string to_string(ScanOutcome o) {
  switch (o) {
  case ScanOutcome::AgreeSolvable:
    return "agree-solvable";
  case ScanOutcome::AgreeUnsolvable:
    return "agree-unsolvable";
  case ScanOutcome::Disagree:
    return "disagree";
  case ScanOutcome::Unknown:
    return "unknown";
  }
  return "?";
}

ConjectureReport conjecture_scan(int n1, Integer box, Integer dir_bound) {
  if (n1 < 4)
    throw std::invalid_argument("conjecture_scan: n1 must be at least 4; use k_membership below");
  if (box < 1 || dir_bound < 1)
    throw std::invalid_argument("conjecture_scan: box and bound must be positive");

  const Signature sig{n1, 1};
  const NullDirectionTable table(sig, dir_bound);
  const auto map = table.orthogonal_map(box);
  const LatticeBox lattice(sig.total(), box);

  ConjectureReport report;
  report.n1 = n1;
  report.box = box;
  report.bound = dir_bound;
  for (std::size_t idx = 0; idx < lattice.size(); ++idx) {
    const LatticeFrequency f(sig, lattice.point(idx));
    const Integer kk = f.k().squaredNorm();
    const Integer t = f.p()[0];
    if (t * t > kk)
      continue;
    ++report.examined;
    ScanRow row{f, is_sum_of_squares(kk - t * t, n1 - 1), std::nullopt, ScanOutcome::Unknown};
    if (map[idx] >= 0)
      row.witness = table.direction(static_cast<std::size_t>(map[idx]));

    if (row.predicate && row.witness) {
      row.outcome = ScanOutcome::AgreeSolvable;
      ++report.agree_solvable;
    } else if (!row.predicate && !row.witness) {
      row.outcome = ScanOutcome::AgreeUnsolvable;
      ++report.agree_unsolvable;
    } else if (row.witness) {
      row.outcome = ScanOutcome::Disagree;
      ++report.disagree;
      report.rows.push_back(std::move(row));
    } else {
      row.outcome = ScanOutcome::Unknown;
      ++report.unknown;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

} // namespace nullray
