#include "doctest.h"

#include "nullray/diophantine.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>

using namespace nullray;

namespace {

IntVector iv(std::initializer_list<Integer> xs) {
  IntVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs)
    v[i++] = x;
  return v;
}

LatticeFrequency freq(Signature sig, std::initializer_list<Integer> coords) {
  return LatticeFrequency(sig, iv(coords));
}

bool validates(const LatticeFrequency& f, const NullLatticeDirection& d) {
  return is_null_vector(d.signature(), d.coords()) && pairing(f, d) == 0;
}

} // namespace

TEST_CASE("sum of two squares: examples") {
  auto zero = is_sum_of_two_squares(0);
  REQUIRE(zero);
  CHECK(zero->x == 0);
  CHECK(zero->y == 0);

  auto twenty_five = is_sum_of_two_squares(25);
  REQUIRE(twenty_five);
  CHECK(twenty_five->x == 3);
  CHECK(twenty_five->y == 4);

  CHECK_FALSE(is_sum_of_two_squares(21));
  CHECK_THROWS_AS(is_sum_of_two_squares(-1), std::invalid_argument);
}

TEST_CASE("sum of three squares: examples") {
  CHECK_FALSE(is_sum_of_three_squares(7));
  CHECK(is_sum_of_three_squares(6));
  CHECK_FALSE(is_sum_of_three_squares(28));
  CHECK(is_sum_of_three_squares(0));
}

TEST_CASE("sums of squares agree with exhaustive search") {
  for (Integer n = 0; n <= 1500; ++n) {
    const auto two = is_sum_of_two_squares(n);
    REQUIRE(two.has_value() == oracle::two_squares_exhaustive(n));
    REQUIRE(two_squares_criterion(n) == two.has_value());
    if (two)
      REQUIRE(two->x * two->x + two->y * two->y == n);
    REQUIRE(is_sum_of_three_squares(n) == oracle::three_squares_exhaustive(n));
  }
  CHECK(is_sum_of_squares(9, 1));
  CHECK_FALSE(is_sum_of_squares(8, 1));
  CHECK(is_sum_of_squares(7, 4));
  CHECK_FALSE(is_sum_of_squares(-3, 4));
}

TEST_CASE("certificates check their identities") {
  CHECK(SolverCertificate{CertificateKind::TwoSquare, {3, 4, 25}}.holds());
  CHECK_FALSE(SolverCertificate{CertificateKind::TwoSquare, {3, 4, 24}}.holds());
  CHECK(SolverCertificate{CertificateKind::ThreeSquare, {1, 1, 2, 6}}.holds());
  CHECK(SolverCertificate{CertificateKind::PythagoreanTriple, {2, 1, 1, 3, 4, 5}}.holds());
  CHECK(SolverCertificate{CertificateKind::PythagoreanQuadruple, {1, -2, 2, 3, 1}}.holds());
  CHECK_FALSE(SolverCertificate{CertificateKind::PythagoreanQuadruple, {1, 2, 2, 3, 0}}.holds());
}

TEST_CASE("solve_system_2d: examples") {
  SolverCertificate cert;
  auto a = solve_system_2d(3, 4, 0, &cert);
  REQUIRE(a);
  CHECK(a->coords() == iv({4, -3, 5}));
  CHECK(cert.kind == CertificateKind::PythagoreanTriple);
  CHECK(cert.holds());

  auto b = solve_system_2d(1, 1, 1);
  REQUIRE(b);
  CHECK(b->coords() == iv({0, -1, 1}));

  CHECK_FALSE(solve_system_2d(1, 1, 0));
}

TEST_CASE("solve_system_2d: solvable iff k1^2 + k2^2 - t^2 is a square") {
  const Signature sig{2, 1};
  for (Integer k1 = -6; k1 <= 6; ++k1)
    for (Integer k2 = -6; k2 <= 6; ++k2)
      for (Integer t = -6; t <= 6; ++t) {
        SolverCertificate cert;
        const auto d = solve_system_2d(k1, k2, t, &cert);
        const bool square = oracle::is_square(k1 * k1 + k2 * k2 - t * t);
        REQUIRE(d.has_value() == square);
        const auto f = freq(sig, {k1, k2, t});
        if (d) {
          REQUIRE(validates(f, *d));
          REQUIRE(gcd_of(d->coords()) == 1);
          REQUIRE(d->w()[0] > 0);
          REQUIRE(cert.holds());
        } else {
          // No witness in a generous box either.
          REQUIRE_FALSE(oracle::naive_witness(sig, f.coords(), 12));
        }
      }
}

TEST_CASE("solve_system_3d: examples") {
  CHECK_FALSE(solve_system_3d(1, 1, 1, 0));
  SolverCertificate cert;
  auto d = solve_system_3d(2, 1, 0, 0, &cert);
  REQUIRE(d);
  CHECK(d->coords() == iv({1, -2, 2, 3}));
  CHECK(cert.kind == CertificateKind::PythagoreanQuadruple);
  CHECK(cert.holds());
  CHECK_FALSE(solve_system_3d(0, 0, 0, 1));
}

TEST_CASE("solve_system_3d: solvable iff |k|^2 - t^2 is a sum of two squares") {
  const Signature sig{3, 1};
  for (Integer k1 = -3; k1 <= 3; ++k1)
    for (Integer k2 = -3; k2 <= 3; ++k2)
      for (Integer k3 = -3; k3 <= 3; ++k3)
        for (Integer t = -3; t <= 3; ++t) {
          SolverCertificate cert;
          const auto d = solve_system_3d(k1, k2, k3, t, &cert);
          const Integer disc = k1 * k1 + k2 * k2 + k3 * k3 - t * t;
          REQUIRE(d.has_value() == (disc >= 0 && oracle::two_squares_exhaustive(disc)));
          if (d) {
            const auto f = freq(sig, {k1, k2, k3, t});
            REQUIRE(validates(f, *d));
            REQUIRE(gcd_of(d->coords()) == 1);
            REQUIRE(cert.holds());
          }
        }
}

TEST_CASE("witness_direction_2x2: examples") {
  CHECK(witness_direction_2x2(1, 2, 3, 4).coords() == iv({-1, 3, -3, 1}));
  CHECK(witness_direction_2x2(1, 2, 2, 1).coords() == iv({2, -1, 1, -2}));
  CHECK(witness_direction_2x2(0, 0, 0, 0).coords() == iv({1, 0, 1, 0}));
}

TEST_CASE("witness_direction_2x2: every block in a box") {
  const Signature sig{2, 2};
  for (Integer a = -4; a <= 4; ++a)
    for (Integer b = -4; b <= 4; ++b)
      for (Integer c = -4; c <= 4; ++c)
        for (Integer d = -4; d <= 4; ++d) {
          const auto w = witness_direction_2x2(a, b, c, d);
          REQUIRE(validates(freq(sig, {a, b, c, d}), w));
        }
}

TEST_CASE("lattice_sphere_points matches a naive scan") {
  for (int dim = 1; dim <= 3; ++dim)
    for (Integer n = 0; n <= 30; ++n) {
      const auto pts = lattice_sphere_points(dim, n, 4);
      std::size_t naive = 0;
      const LatticeBox box(dim, 4);
      for (std::size_t i = 0; i < box.size(); ++i)
        if (box.point(i).squaredNorm() == n)
          ++naive;
      REQUIRE(pts.size() == naive);
      REQUIRE(std::is_sorted(pts.begin(), pts.end(), [](const IntVector& x, const IntVector& y) {
        return lex_compare(x, y) < 0;
      }));
    }
}

TEST_CASE("brute_force_null_orthogonal: examples") {
  auto a = brute_force_null_orthogonal(freq({1, 1}, {1, 1}), 1);
  REQUIRE(a);
  CHECK(a->coords() == iv({1, -1}));

  CHECK_FALSE(brute_force_null_orthogonal(freq({1, 1}, {2, 1}), 50));

  auto c = brute_force_null_orthogonal(freq({2, 1}, {3, 4, 0}), 10);
  REQUIRE(c);
  CHECK(c->coords() == iv({4, -3, 5}));
}

TEST_CASE("brute force agrees with the naive scan") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Integer> entry(-4, 4);
  for (Signature sig : {Signature{1, 1}, Signature{2, 1}, Signature{1, 2}, Signature{2, 2}}) {
    const NullDirectionTable table(sig, 5);
    for (int trial = 0; trial < 60; ++trial) {
      IntVector c(sig.total());
      for (int i = 0; i < c.size(); ++i)
        c[i] = entry(rng);
      const LatticeFrequency f(sig, c);
      const auto fast = table.find_orthogonal(f);
      const auto slow = oracle::naive_witness(sig, c, 5);
      REQUIRE(fast.has_value() == slow.has_value());
      if (fast)
        REQUIRE(fast->coords() == *slow);
    }
  }
}

TEST_CASE("orthogonal_map agrees with per-frequency search") {
  for (Signature sig : {Signature{2, 1}, Signature{3, 1}, Signature{2, 2}}) {
    const NullDirectionTable table(sig, 6);
    const Integer radius = 3;
    const auto map = table.orthogonal_map(radius);
    const LatticeBox box(sig.total(), radius);
    for (std::size_t i = 0; i < box.size(); ++i) {
      const auto d = table.find_orthogonal(LatticeFrequency(sig, box.point(i)));
      REQUIRE(d.has_value() == (map[i] >= 0));
      if (d)
        REQUIRE(d->coords() == table.direction(static_cast<std::size_t>(map[i])).coords());
    }
  }
}

TEST_CASE("k_membership: examples") {
  auto a = k_membership(freq({2, 2}, {1, 2, 3, 4}));
  CHECK(a.decision == Membership::InK);
  CHECK(a.method == Method::Constructive2x2);
  REQUIRE(a.witness);
  CHECK(a.witness->coords() == iv({-1, 3, -3, 1}));

  auto b = k_membership(freq({2, 1}, {3, 4, 0}));
  CHECK(b.decision == Membership::InK);
  CHECK(b.method == Method::Lemma2d);
  REQUIRE(b.witness);
  CHECK(b.witness->coords() == iv({4, -3, 5}));

  auto c = k_membership(freq({1, 1}, {1, 0}));
  CHECK(c.decision == Membership::NotInK);
  CHECK(c.method == Method::Lemma1d);
  CHECK_FALSE(c.witness);
}

TEST_CASE("k_membership: higher signatures embed the 2x2 block") {
  const auto f = freq({3, 4}, {5, -1, 2, 7, 0, 3, -2});
  const auto r = k_membership(f);
  CHECK(r.in_k());
  REQUIRE(r.witness);
  CHECK(validates(f, *r.witness));
}

TEST_CASE("k_membership: n1 >= 4 branches") {
  const Signature sig{4, 1};
  const NullDirectionTable table(sig, 8);
  MembershipOptions opts;
  opts.table = &table;

  auto above = k_membership(freq(sig, {1, 0, 0, 0, 2}), opts);
  CHECK(above.decision == Membership::NotInK);
  CHECK(above.method == Method::NormBound);

  auto equal = k_membership(freq(sig, {1, 1, 1, 1, -2}), opts);
  CHECK(equal.decision == Membership::InK);
  REQUIRE(equal.witness);
  CHECK(equal.witness->coords() == iv({1, 1, 1, 1, 2}));

  auto searched = k_membership(freq(sig, {3, 1, 0, 0, 1}), opts);
  CHECK(searched.decision == Membership::InK);
  CHECK(searched.method == Method::BruteForce);
  REQUIRE(searched.witness);
  CHECK(validates(freq(sig, {3, 1, 0, 0, 1}), *searched.witness));

  // A tiny bound leaves the search inconclusive.
  const NullDirectionTable tiny(sig, 1);
  opts.table = &tiny;
  auto unknown = k_membership(freq(sig, {4, 3, 2, 2, 1}), opts);
  CHECK(unknown.decision == Membership::Unknown);

  // Swapped signature uses the same table.
  opts.table = &table;
  auto swapped = k_membership(freq({1, 4}, {1, 3, 1, 0, 0}), opts);
  CHECK(swapped.decision == Membership::InK);
  REQUIRE(swapped.witness);
  CHECK(validates(freq({1, 4}, {1, 3, 1, 0, 0}), *swapped.witness));
}

TEST_CASE("k_membership: symmetry under sign flips, permutations and factor swap") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Integer> entry(-6, 6);
  for (Signature sig : {Signature{1, 1}, Signature{2, 1}, Signature{3, 1}}) {
    for (int trial = 0; trial < 200; ++trial) {
      IntVector k(sig.n1);
      for (int i = 0; i < sig.n1; ++i)
        k[i] = entry(rng);
      const Integer t = entry(rng);
      const LatticeFrequency f(sig, k, iv({t}));
      const auto base = k_membership(f).decision;

      IntVector k2 = k;
      std::shuffle(k2.data(), k2.data() + k2.size(), rng);
      for (int i = 0; i < k2.size(); ++i)
        if (rng() & 1)
          k2[i] = -k2[i];
      const LatticeFrequency g(sig, k2, iv({(rng() & 1) ? t : -t}));
      REQUIRE(k_membership(g).decision == base);

      const auto swapped = k_membership(f.swapped());
      REQUIRE(swapped.decision == base);
      if (swapped.witness)
        REQUIRE(validates(f.swapped(), *swapped.witness));
    }
  }
}

TEST_CASE("k_membership: norm sandwich on small boxes") {
  for (Signature sig : {Signature{1, 1}, Signature{2, 1}, Signature{3, 1}}) {
    const LatticeBox box(sig.total(), 5);
    for (std::size_t i = 0; i < box.size(); ++i) {
      const LatticeFrequency f(sig, box.point(i));
      const Integer kk = f.k().squaredNorm(), tt = f.p()[0] * f.p()[0];
      const auto r = k_membership(f);
      if (r.in_k()) {
        REQUIRE(tt <= kk);
        REQUIRE(r.witness);
        REQUIRE(validates(f, *r.witness));
      }
      if (tt == kk)
        REQUIRE(r.in_k());
    }
  }
}

TEST_CASE("conjecture_scan") {
  CHECK_THROWS_AS(conjecture_scan(3, 2, 10), std::invalid_argument);
  const auto report = conjecture_scan(4, 2, 12);
  CHECK(report.examined > 0);
  CHECK(report.disagree == 0);
  CHECK(report.examined ==
        report.agree_solvable + report.agree_unsolvable + report.disagree + report.unknown);
  CHECK(report.rows.size() == report.disagree + report.unknown);
  for (const auto& row : report.rows)
    CHECK(row.outcome == ScanOutcome::Unknown);
}
