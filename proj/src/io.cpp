#include "nullray/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace nullray {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t)
    out.push_back(t);
  return out;
}

// Strips comments; returns false at end of input.
bool next_record(std::istream& is, std::vector<std::string>& tokens, std::size_t& line_no) {
  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    tokens = tokens_of(line);
    if (!tokens.empty())
      return true;
  }
  return false;
}

double parse_double(const std::string& t, std::size_t line) {
  double v = 0.0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ParseError("malformed number '" + t + "'", line);
  return v;
}

Integer parse_integer(const std::string& t, std::size_t line) {
  Integer v = 0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ParseError("malformed integer '" + t + "'", line);
  return v;
}

IntVector parse_int_vector(const std::string& t, std::size_t line) {
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw ParseError("expected [a,b,...], got '" + t + "'", line);
  std::vector<Integer> parts;
  std::string body = t.substr(1, t.size() - 2);
  std::size_t start = 0;
  while (true) {
    const auto comma = body.find(',', start);
    parts.push_back(parse_integer(body.substr(start, comma - start), line));
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  IntVector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = parts[i];
  return v;
}

Signature parse_signature(const std::vector<std::string>& tok, std::size_t line) {
  if (tok.size() != 3 || tok[0] != "signature")
    throw ParseError("expected 'signature n1 n2'", line);
  try {
    return Signature(static_cast<int>(parse_integer(tok[1], line)),
                     static_cast<int>(parse_integer(tok[2], line)));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line);
  }
}

IntVector frequency_coords(const std::vector<std::string>& tok, Signature sig, std::size_t line) {
  const IntVector k = parse_int_vector(tok[0], line);
  const IntVector p = parse_int_vector(tok[1], line);
  if (k.size() != sig.n1 || p.size() != sig.n2)
    throw ParseError("frequency does not match the signature", line);
  IntVector c(sig.total());
  c << k, p;
  return c;
}

template <typename Scalar> Scalar parse_scalar(const std::string& re, const std::string& im,
                                               std::size_t line);

template <> ExactComplex parse_scalar<ExactComplex>(const std::string& re, const std::string& im,
                                                    std::size_t line) {
  try {
    return {parse_exact_number(re), parse_exact_number(im)};
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line);
  }
}

double parse_real(const std::string& t, std::size_t line) {
  if (t.find('/') == std::string::npos)
    return parse_double(t, line);
  try {
    return boost::rational_cast<double>(parse_rational(t));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line);
  }
}

template <> Complex parse_scalar<Complex>(const std::string& re, const std::string& im,
                                          std::size_t line) {
  return {parse_real(re, line), parse_real(im, line)};
}

std::string format_scalar(const ExactComplex& z) {
  return format_rational(z.re) + ' ' + format_rational(z.im);
}

std::string format_scalar(const Complex& z) {
  return format_double(z.real()) + ' ' + format_double(z.imag());
}

std::string split_coords(const IntVector& c, Signature sig) {
  return format_int_vector(c.head(sig.n1)) + ' ' + format_int_vector(c.tail(sig.n2));
}

template <typename Scalar> void write_poly(std::ostream& os, const TrigPolynomial<Scalar>& f) {
  os << "signature " << f.signature().n1 << ' ' << f.signature().n2 << '\n';
  for (const auto& [k, c] : f)
    os << split_coords(k, f.signature()) << ' ' << format_scalar(c) << '\n';
}

template <typename Scalar> TrigPolynomial<Scalar> read_poly(std::istream& is) {
  std::vector<std::string> tok;
  std::size_t line = 0;
  if (!next_record(is, tok, line))
    throw ParseError("missing signature header", line);
  const Signature sig = parse_signature(tok, line);
  TrigPolynomial<Scalar> f(sig);
  while (next_record(is, tok, line)) {
    if (tok.size() != 4)
      throw ParseError("expected '[k] [p] re im'", line);
    const LatticeFrequency freq(sig, frequency_coords(tok, sig, line));
    f.add(freq, parse_scalar<Scalar>(tok[2], tok[3], line));
  }
  return f;
}

template <typename Scalar>
void write_data(std::ostream& os, Signature sig, const TransformData<Scalar>& data) {
  os << "signature " << sig.n1 << ' ' << sig.n2 << '\n';
  for (const auto& [d, poly] : data) {
    os << "direction " << split_coords(d.coords(), sig) << '\n';
    for (const auto& [k, c] : poly)
      os << split_coords(k, sig) << ' ' << format_scalar(c) << '\n';
  }
}

template <typename Scalar> TransformData<Scalar> read_data(std::istream& is, Signature& sig) {
  std::vector<std::string> tok;
  std::size_t line = 0;
  if (!next_record(is, tok, line))
    throw ParseError("missing signature header", line);
  sig = parse_signature(tok, line);
  TransformData<Scalar> data;
  TrigPolynomial<Scalar>* current = nullptr;
  while (next_record(is, tok, line)) {
    if (tok[0] == "direction") {
      if (tok.size() != 3)
        throw ParseError("expected 'direction [v] [w]'", line);
      const std::vector<std::string> rest(tok.begin() + 1, tok.end());
      try {
        const NullLatticeDirection d(sig, frequency_coords(rest, sig, line));
        auto [it, inserted] = data.emplace(d, TrigPolynomial<Scalar>(sig));
        if (!inserted)
          throw ParseError("direction listed twice", line);
        current = &it->second;
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line);
      }
      continue;
    }
    if (!current)
      throw ParseError("coefficient before the first direction block", line);
    if (tok.size() != 4)
      throw ParseError("expected '[k] [p] re im'", line);
    current->add(LatticeFrequency(sig, frequency_coords(tok, sig, line)),
                 parse_scalar<Scalar>(tok[2], tok[3], line));
  }
  return data;
}

void put_le(std::ostream& os, double x) {
  auto bits = std::bit_cast<std::uint64_t>(x);
  std::array<char, 8> bytes;
  for (auto& b : bytes) {
    b = static_cast<char>(bits & 0xff);
    bits >>= 8;
  }
  os.write(bytes.data(), 8);
}

double get_le(std::istream& is) {
  std::array<unsigned char, 8> bytes;
  if (!is.read(reinterpret_cast<char*>(bytes.data()), 8))
    throw ParseError("grid data truncated", 1);
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i)
    bits = (bits << 8) | bytes[i];
  return std::bit_cast<double>(bits);
}

Eigen::VectorXd parse_reals(const std::vector<std::string>& tok, std::size_t from, std::size_t count,
                            std::size_t line) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i)
    v[static_cast<Eigen::Index>(i)] = parse_double(tok[from + i], line);
  return v;
}

} // namespace

std::string format_double(double x) {
  std::array<char, 64> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

Rational parse_exact_number(const std::string& token) {
  if (token.find('/') != std::string::npos || token.find('.') == std::string::npos)
    return parse_rational(token);
  // Finite decimal: sign, digits, '.', digits.
  std::string digits;
  bool negative = false;
  std::size_t i = 0;
  if (i < token.size() && (token[i] == '-' || token[i] == '+'))
    negative = token[i++] == '-';
  Integer scale = 1;
  bool seen_point = false, any = false;
  for (; i < token.size(); ++i) {
    const char c = token[i];
    if (c == '.' && !seen_point) {
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9')
      throw std::invalid_argument("malformed number: '" + token + "'");
    digits.push_back(c);
    any = true;
    if (seen_point) {
      if (scale > std::numeric_limits<Integer>::max() / 10)
        throw std::invalid_argument("too many decimals: '" + token + "'");
      scale *= 10;
    }
  }
  if (!any || digits.size() > 18)
    throw std::invalid_argument("malformed number: '" + token + "'");
  const Integer num = std::stoll(digits);
  return Rational(negative ? -num : num, scale);
}

void write_polynomial(std::ostream& os, const ExactTrigPolynomial& f) { write_poly(os, f); }
void write_polynomial(std::ostream& os, const ComplexTrigPolynomial& f) { write_poly(os, f); }
ExactTrigPolynomial read_exact_polynomial(std::istream& is) { return read_poly<ExactComplex>(is); }
ComplexTrigPolynomial read_complex_polynomial(std::istream& is) { return read_poly<Complex>(is); }

void write_transform_data(std::ostream& os, Signature sig, const TransformData<ExactComplex>& data) {
  write_data(os, sig, data);
}
void write_transform_data(std::ostream& os, Signature sig, const TransformData<Complex>& data) {
  write_data(os, sig, data);
}
TransformData<ExactComplex> read_exact_transform_data(std::istream& is, Signature& sig) {
  return read_data<ExactComplex>(is, sig);
}
TransformData<Complex> read_complex_transform_data(std::istream& is, Signature& sig) {
  return read_data<Complex>(is, sig);
}

void write_grid(std::ostream& os, const GridField& f) {
  os << "grid " << f.dimension() << ' ' << format_double(f.spacing());
  for (int m = 0; m < f.dimension(); ++m)
    os << ' ' << format_double(f.origin()[m]);
  for (auto d : f.values().dims())
    os << ' ' << d;
  os << '\n';
  for (const auto& z : f.values().data()) {
    put_le(os, z.real());
    put_le(os, z.imag());
  }
}

GridField read_grid(std::istream& is) {
  std::string header;
  if (!std::getline(is, header))
    throw ParseError("missing grid header", 1);
  const auto tok = tokens_of(header);
  if (tok.size() < 3 || tok[0] != "grid")
    throw ParseError("expected 'grid n h origin... dims...'", 1);
  const auto n = parse_integer(tok[1], 1);
  if (n < 1 || tok.size() != static_cast<std::size_t>(3 + 2 * n))
    throw ParseError("grid header has the wrong number of fields", 1);
  const double h = parse_double(tok[2], 1);
  const Eigen::VectorXd origin = parse_reals(tok, 3, static_cast<std::size_t>(n), 1);
  std::vector<std::size_t> dims;
  for (Integer m = 0; m < n; ++m) {
    const auto d = parse_integer(tok[static_cast<std::size_t>(3 + n + m)], 1);
    if (d < 1)
      throw ParseError("grid dimensions must be positive", 1);
    dims.push_back(static_cast<std::size_t>(d));
  }
  ComplexArray values(dims);
  for (auto& z : values.data()) {
    const double re = get_le(is);
    z = Complex(re, get_le(is));
  }
  try {
    return GridField(origin, h, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 1);
  }
}

void write_grid_file(const std::string& path, const GridField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot open '" + path + "' for writing");
  write_grid(os, f);
}

GridField read_grid_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw std::runtime_error("cannot open '" + path + "'");
  return read_grid(is);
}

RecordSet read_records(std::istream& is) {
  RecordSet r;
  std::vector<std::string> tok;
  std::size_t line = 0;
  while (next_record(is, tok, line)) {
    const std::string& kind = tok[0];
    const std::size_t args = tok.size() - 1;
    try {
      if (kind == "direction") {
        if (args < 1)
          throw ParseError("direction needs coordinates", line);
        r.directions.push_back(parse_reals(tok, 1, args, line));
      } else if (kind == "arc" || kind == "line") {
        if (args < 2 || args % 2)
          throw ParseError(kind + " needs two vectors of equal length", line);
        const Eigen::VectorXd a = parse_reals(tok, 1, args / 2, line);
        const Eigen::VectorXd b = parse_reals(tok, 1 + args / 2, args / 2, line);
        if (kind == "arc")
          r.arcs.emplace_back(a, b);
        else
          r.lines.emplace_back(a, b);
      } else if (kind == "lightcone") {
        if (args != 2)
          throw ParseError("expected 'lightcone n1 n2'", line);
        r.light_cones.emplace_back(static_cast<int>(parse_integer(tok[1], line)),
                                   static_cast<int>(parse_integer(tok[2], line)));
      } else if (kind == "gaussian") {
        if (args < 4)
          throw ParseError("expected 'gaussian re im sigma mu...'", line);
        r.gaussians.push_back({Complex(parse_double(tok[1], line), parse_double(tok[2], line)),
                               parse_reals(tok, 4, args - 3, line), parse_double(tok[3], line)});
      } else {
        throw ParseError("unknown record '" + kind + "'", line);
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line);
    }
  }
  return r;
}

DirectionSet direction_set(const RecordSet& r) {
  const int kinds = !r.directions.empty() + !r.arcs.empty() + !r.light_cones.empty();
  if (kinds != 1 || r.arcs.size() > 1 || r.light_cones.size() > 1)
    throw std::invalid_argument("records must describe exactly one direction set");
  if (!r.directions.empty())
    return DirectionSet::finite(r.directions);
  if (!r.arcs.empty())
    return DirectionSet::arc(r.arcs.front().first, r.arcs.front().second);
  return DirectionSet::light_cone(r.light_cones.front());
}

GaussianMixture gaussian_mixture(const RecordSet& r) {
  if (r.gaussians.empty())
    throw std::invalid_argument("no gaussian records");
  GaussianMixture g(static_cast<int>(r.gaussians.front().center.size()));
  for (const auto& t : r.gaussians)
    g.add(t.weight, t.center, t.width);
  return g;
}

namespace {
void put_vector(std::ostream& os, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    os << ' ' << format_double(v[i]);
}
} // namespace

void write_direction_set(std::ostream& os, const DirectionSet& D) {
  switch (D.kind()) {
  case DirectionSet::Kind::Finite:
    for (const auto& v : D.directions()) {
      os << "direction";
      put_vector(os, v);
      os << '\n';
    }
    break;
  case DirectionSet::Kind::Arc:
    os << "arc";
    put_vector(os, D.arc_start());
    put_vector(os, D.arc_end());
    os << '\n';
    break;
  case DirectionSet::Kind::LightCone:
    os << "lightcone " << D.signature().n1 << ' ' << D.signature().n2 << '\n';
    break;
  }
}

void write_line(std::ostream& os, const Line& line) {
  os << "line";
  put_vector(os, line.point());
  put_vector(os, line.direction());
  os << '\n';
}

} // namespace nullray
