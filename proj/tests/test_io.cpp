#include "doctest.h"

#include "generators.hpp"
#include "nullray/io.hpp"

#include <cstdio>
#include <sstream>

using namespace nullray;
using gen::iv;

TEST_CASE("parse_exact_number") {
  CHECK(parse_exact_number("3") == Rational(3));
  CHECK(parse_exact_number("-3/6") == Rational(-1, 2));
  CHECK(parse_exact_number("1.25") == Rational(5, 4));
  CHECK(parse_exact_number("-0.1") == Rational(-1, 10));
  CHECK(parse_exact_number(".5") == Rational(1, 2));
  CHECK_THROWS_AS(parse_exact_number("1e3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_exact_number("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_exact_number("abc"), std::invalid_argument);
}

TEST_CASE("polynomial text format") {
  const Signature sig{2, 1};
  ExactTrigPolynomial f(sig);
  f.set(LatticeFrequency(sig, iv({1, -2, 3})), ExactComplex(Rational(-3, 4), Rational(1)));
  f.set(LatticeFrequency(sig, iv({0, 0, 0})), ExactComplex(Rational(5)));
  std::ostringstream os;
  write_polynomial(os, f);
  CHECK(os.str() == "signature 2 1\n[0,0] [0] 5 0\n[1,-2] [3] -3/4 1\n");

  std::istringstream is("# comment\nsignature 2 1\n\n[1,-2] [3] -0.75 1  # tail\n[0,0] [0] 5 0\n");
  CHECK(read_exact_polynomial(is) == f);

  std::istringstream again(os.str());
  const auto c = read_complex_polynomial(again);
  CHECK(c.coefficient(LatticeFrequency(sig, iv({1, -2, 3}))) == Complex(-0.75, 1.0));
}

TEST_CASE("polynomial format round trips") {
  auto rng = make_rng(50);
  for (Signature sig : {Signature{1, 1}, Signature{2, 1}, Signature{2, 2}}) {
    const auto f = gen::exact_polynomial(sig, 4, 10, rng);
    std::stringstream ss;
    write_polynomial(ss, f);
    CHECK(read_exact_polynomial(ss) == f);

    const auto g = gen::complex_polynomial(sig, 4, 10, rng);
    std::stringstream s2;
    write_polynomial(s2, g);
    CHECK(read_complex_polynomial(s2) == g);
  }
}

TEST_CASE("polynomial format errors carry line numbers") {
  std::istringstream missing("");
  CHECK_THROWS_AS(read_exact_polynomial(missing), ParseError);
  std::istringstream bad("signature 1 1\n[1] [2] 1 0\n[1,2] [3] 1 0\n");
  try {
    read_exact_polynomial(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream sig("signature 0 1\n");
  CHECK_THROWS_AS(read_exact_polynomial(sig), ParseError);
}

TEST_CASE("transform data round trip") {
  const Signature sig{2, 1};
  auto rng = make_rng(51);
  const auto f = gen::exact_polynomial(sig, 3, 12, rng);
  const auto data = collect_transform_data(f, enumerate_null_directions(sig, 5));
  std::stringstream ss;
  write_transform_data(ss, sig, data);
  Signature back{1, 1};
  const auto read = read_exact_transform_data(ss, back);
  CHECK(back == sig);
  CHECK(read == data);

  std::istringstream orphan("signature 1 1\n[1] [1] 1 0\n");
  CHECK_THROWS_AS(read_exact_transform_data(orphan, back), ParseError);
  std::istringstream notnull("signature 1 1\ndirection [1] [2]\n");
  CHECK_THROWS_AS(read_exact_transform_data(notnull, back), ParseError);
}

TEST_CASE("grid binary format round trips bit for bit") {
  GaussianMixture g(2);
  g.add(Complex(1.0, -0.5), Eigen::Vector2d(0.1, 0.2), 0.7);
  const auto grid = g.sample(Eigen::Vector2d(-2.0, -1.5), 0.125, {32, 24});
  std::stringstream ss;
  write_grid(ss, grid);
  const std::string bytes = ss.str();
  CHECK(bytes.substr(0, bytes.find('\n')) == "grid 2 0.125 -2 -1.5 32 24");
  CHECK(bytes.size() == bytes.find('\n') + 1 + 32 * 24 * 16);
  const auto back = read_grid(ss);
  CHECK(back.origin() == grid.origin());
  CHECK(back.spacing() == grid.spacing());
  CHECK(back.values().dims() == grid.values().dims());
  CHECK(back.values().data() == grid.values().data());

  // Little-endian layout of the first value.
  double re = 0.0;
  std::memcpy(&re, bytes.data() + bytes.find('\n') + 1, 8);
  CHECK(re == grid.values()[0].real());

  std::istringstream truncated(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_grid(truncated), ParseError);

  const std::string path = "test_io_grid.bin";
  write_grid_file(path, grid);
  CHECK(read_grid_file(path).values().data() == grid.values().data());
  std::remove(path.c_str());
}

TEST_CASE("records: direction sets, lines and gaussians") {
  std::istringstream finite("direction 1 0\ndirection 0.6 0.8\nline 0 0.5 1 0\ngaussian 1 0 1 0 0\n");
  const auto r = read_records(finite);
  const auto D = direction_set(r);
  CHECK(D.kind() == DirectionSet::Kind::Finite);
  CHECK(D.directions().size() == 2);
  REQUIRE(r.lines.size() == 1);
  CHECK(r.lines[0].point()[1] == 0.5);
  CHECK(std::abs(line_integral(gaussian_mixture(r), r.lines[0]) - std::exp(-kPi / 4)) < 1e-15);

  std::istringstream cone("lightcone 1 2\n");
  CHECK(direction_set(read_records(cone)).kind() == DirectionSet::Kind::LightCone);

  std::istringstream bad("wibble 1 2\n");
  CHECK_THROWS_AS(read_records(bad), ParseError);
  std::istringstream notunit("line 0 0 1 1\n");
  CHECK_THROWS_AS(read_records(notunit), ParseError);

  const auto arc = DirectionSet::arc(Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 0.6, 0.8));
  std::stringstream ss;
  write_direction_set(ss, arc);
  write_line(ss, Line(Eigen::Vector3d(0.1, 0.2, 0.3), Eigen::Vector3d(0, 0.6, 0.8)));
  const auto back = read_records(ss);
  const auto arc2 = direction_set(back);
  CHECK(arc2.arc_start() == arc.arc_start());
  CHECK(arc2.arc_end() == arc.arc_end());
  CHECK(back.lines.at(0).point() == Eigen::Vector3d(0.1, 0.2, 0.3));
}

TEST_CASE("format_double round trips") {
  auto rng = make_rng(52);
  std::normal_distribution<double> n(0.0, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double x = n(rng);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
}
