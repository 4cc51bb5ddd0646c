#pragma once

#include "nullray/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nullray {

// ---------------------------------------------------------------------------
// Sums of squares

struct TwoSquares {
  Integer x = 0;
  Integer y = 0;
};

/// Decomposition n = x^2 + y^2 with 0 <= x <= y and x as large as possible,
/// or nullopt when none exists. Requires n >= 0.
std::optional<TwoSquares> is_sum_of_two_squares(Integer n);

/// Prime-factor test: every prime 3 mod 4 divides n to an even power.
bool two_squares_criterion(Integer n);

/// Legendre: n is a sum of three squares iff n != 4^a (8b + 7).
bool is_sum_of_three_squares(Integer n);

/// n is a sum of `count` integer squares (count >= 1).
bool is_sum_of_squares(Integer n, int count);

/// Exact integer square root when n is a perfect square.
std::optional<Integer> exact_sqrt(Integer n);

// ---------------------------------------------------------------------------
// Certificates

enum class CertificateKind { TwoSquare, ThreeSquare, PythagoreanTriple, PythagoreanQuadruple };

/// Small integer tuple witnessing an algebraic identity:
///   TwoSquare            (x, y, n)            x^2 + y^2 = n
///   ThreeSquare          (x, y, z, n)         x^2 + y^2 + z^2 = n
///   PythagoreanTriple    (m, n, g, v1, v2, s) g*(v1, v2, s) = (m^2 - n^2, 2mn, m^2 + n^2)
///   PythagoreanQuadruple (v1, v2, v3, s, p)   p = s - v3 != 0,
///                                             2p v3 = v1^2 + v2^2 - p^2,
///                                             2p s  = v1^2 + v2^2 + p^2
struct SolverCertificate {
  CertificateKind kind = CertificateKind::TwoSquare;
  std::vector<Integer> decomposition;

  bool holds() const;
};

std::string to_string(CertificateKind kind);

// ---------------------------------------------------------------------------
// Closed-form solvers for |v|^2 = s^2 != 0, k.v + t s = 0

/// n1 = 2. Solvable iff k1^2 + k2^2 - t^2 is a perfect square. The witness is
/// primitive with s > 0, taken lexicographically largest among the rational
/// roots of (t - k1) a^2 + 2 k2 a + (t + k1) = 0 (a = n/m, including a = inf).
std::optional<NullLatticeDirection> solve_system_2d(Integer k1, Integer k2, Integer t,
                                                    SolverCertificate* certificate = nullptr);

/// n1 = 3. Solvable iff |k|^2 - t^2 is a sum of two squares. Built from the
/// quadruple parametrization with p = s - v3.
std::optional<NullLatticeDirection> solve_system_3d(Integer k1, Integer k2, Integer k3, Integer t,
                                                    SolverCertificate* certificate = nullptr);

/// Direction orthogonal to (k11, k12; k21, k22) in signature (2, 2), of the
/// form (a, -b, b, -a).
NullLatticeDirection witness_direction_2x2(Integer k11, Integer k12, Integer k21, Integer k22);

// ---------------------------------------------------------------------------
// Bounded search

/// All primitive null directions with max-norm <= bound, one per +/- pair
/// (the lexicographically positive one), sorted in descending lexicographic
/// order. Stored flat for the large tables the oracles need.
class NullDirectionTable {
public:
  NullDirectionTable(Signature sig, Integer bound);

  const Signature& signature() const { return sig_; }
  Integer bound() const { return bound_; }
  std::size_t size() const { return count_; }

  NullLatticeDirection direction(std::size_t i) const;
  const Integer* raw(std::size_t i) const { return flat_.data() + i * sig_.total(); }

  /// Lexicographically largest primitive direction in the table orthogonal
  /// to `f` (over both signs), or nullopt.
  std::optional<NullLatticeDirection> find_orthogonal(const LatticeFrequency& f) const;

  /// For each point of LatticeBox(n1 + n2, radius): index of the direction
  /// find_orthogonal would return, or -1.
  std::vector<std::int32_t> orthogonal_map(Integer radius) const;

private:
  Signature sig_;
  Integer bound_;
  std::size_t count_ = 0;
  std::vector<Integer> flat_;
};

/// Integer vectors of length `dim` with |x|^2 = norm2 and max-norm <= bound,
/// in lexicographic order.
std::vector<IntVector> lattice_sphere_points(int dim, Integer norm2, Integer bound);

std::vector<NullLatticeDirection> enumerate_null_directions(Signature sig, Integer bound);

/// Lexicographically largest primitive witness with max-norm <= bound.
/// nullopt means none within the bound, not non-membership.
std::optional<NullLatticeDirection> brute_force_null_orthogonal(const LatticeFrequency& f,
                                                                Integer bound);

// ---------------------------------------------------------------------------
// Membership in the recoverable set K

enum class Membership { InK, NotInK, Unknown };
enum class Method { Constructive2x2, Lemma1d, Lemma2d, Lemma3d, NormBound, BruteForce };

std::string to_string(Membership m);
std::string to_string(Method m);

struct MembershipResult {
  Membership decision = Membership::Unknown;
  std::optional<NullLatticeDirection> witness;
  Method method = Method::BruteForce;
  std::optional<SolverCertificate> certificate;

  bool in_k() const { return decision == Membership::InK; }
};

struct MembershipOptions {
  static constexpr Integer kDefaultSearchBound = 60;
  Integer search_bound = kDefaultSearchBound;
  /// Optional prebuilt table for the brute-force branch; must match the
  /// frequency's signature.
  const NullDirectionTable* table = nullptr;
};

MembershipResult k_membership(const LatticeFrequency& f, const MembershipOptions& options = {});

// ---------------------------------------------------------------------------
// Exploratory scan for n1 >= 4, n2 = 1

enum class ScanOutcome { AgreeSolvable, AgreeUnsolvable, Disagree, Unknown };
std::string to_string(ScanOutcome o);

struct ScanRow {
  LatticeFrequency frequency;
  bool predicate = false;
  std::optional<NullLatticeDirection> witness;
  ScanOutcome outcome = ScanOutcome::Unknown;
};

struct ConjectureReport {
  int n1 = 0;
  Integer box = 0;
  Integer bound = 0;
  std::size_t examined = 0;
  std::size_t agree_solvable = 0;
  std::size_t agree_unsolvable = 0;
  std::size_t disagree = 0; // predicate false but a witness was found
  std::size_t unknown = 0;  // predicate true, no witness within the bound
  /// Disagree and Unknown rows only, lexicographic.
  std::vector<ScanRow> rows;
};

/// Compares bounded solvability with "|k|^2 - t^2 is a sum of n1 - 1 squares"
/// over frequencies with |t| <= |k| in the box. Throws for n1 < 4.
ConjectureReport conjecture_scan(int n1, Integer box, Integer dir_bound);

} // namespace nullray
