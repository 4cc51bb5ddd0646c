#pragma once

// Text and binary formats.
//
// Trigonometric polynomials (one record per line, '#' starts a comment):
//   signature n1 n2
//   [k_1,...,k_n1] [p_1,...,p_n2] re im
// Coefficients are written as num/den in exact mode and as shortest
// round-trip decimals otherwise. Decimal input is read exactly in exact mode.
//
// Transform data adds a block header per direction:
//   signature n1 n2
//   direction [v] [w]
//   [k] [p] re im
//   ...
//
// Grid fields: one text line "grid n h origin_1..origin_n dims_1..dims_n"
// followed by row-major (re, im) pairs as little-endian float64.
//
// Direction sets and lines, one record per line:
//   direction x_1 ... x_n        (members of a finite set)
//   arc a_1 ... a_n b_1 ... b_n
//   lightcone n1 n2
//   line p_1 ... p_n d_1 ... d_n
//   gaussian re im sigma mu_1 ... mu_n

#include "nullray/euclidean.hpp"
#include "nullray/torus.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace nullray {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Exact rational from "num", "num/den" or a finite decimal such as "-1.25".
Rational parse_exact_number(const std::string& token);

void write_polynomial(std::ostream& os, const ExactTrigPolynomial& f);
void write_polynomial(std::ostream& os, const ComplexTrigPolynomial& f);
ExactTrigPolynomial read_exact_polynomial(std::istream& is);
ComplexTrigPolynomial read_complex_polynomial(std::istream& is);

void write_transform_data(std::ostream& os, Signature sig, const TransformData<ExactComplex>& data);
void write_transform_data(std::ostream& os, Signature sig, const TransformData<Complex>& data);
/// Returns the signature through `sig`.
TransformData<ExactComplex> read_exact_transform_data(std::istream& is, Signature& sig);
TransformData<Complex> read_complex_transform_data(std::istream& is, Signature& sig);

void write_grid(std::ostream& os, const GridField& f);
GridField read_grid(std::istream& is);
void write_grid_file(const std::string& path, const GridField& f);
GridField read_grid_file(const std::string& path);

/// Everything a record file can hold; fields stay empty when absent.
struct RecordSet {
  std::vector<Eigen::VectorXd> directions;
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> arcs;
  std::vector<Signature> light_cones;
  std::vector<Line> lines;
  std::vector<GaussianTerm> gaussians;
};

RecordSet read_records(std::istream& is);

/// The single direction set described by the records: a nonempty list of
/// `direction` records, one `arc`, or one `lightcone`.
DirectionSet direction_set(const RecordSet& records);

/// The Gaussian mixture of the `gaussian` records (dimension from the first).
GaussianMixture gaussian_mixture(const RecordSet& records);

void write_direction_set(std::ostream& os, const DirectionSet& D);
void write_line(std::ostream& os, const Line& line);

/// Shortest decimal that round-trips the double.
std::string format_double(double x);

} // namespace nullray
