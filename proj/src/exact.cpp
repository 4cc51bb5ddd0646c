#include "nullray/exact.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nullray {

std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1)
    os << '/' << r.denominator();
  return os.str();
}

Rational parse_rational(const std::string& s) {
  auto parse_int = [&](const std::string& t) -> Integer {
    std::size_t used = 0;
    Integer v = 0;
    try {
      v = std::stoll(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (t.empty() || used != t.size())
      throw std::invalid_argument("malformed rational: '" + s + "'");
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos)
    return Rational(parse_int(s));
  const Integer den = parse_int(s.substr(slash + 1));
  if (den == 0)
    throw std::invalid_argument("zero denominator: '" + s + "'");
  return Rational(parse_int(s.substr(0, slash)), den);
}

std::ostream& operator<<(std::ostream& os, const ExactComplex& z) {
  return os << format_rational(z.re) << ' ' << format_rational(z.im);
}

} // namespace nullray
