// nullray: command-line front end.
//
// Exit codes: 0 ok, 1 usage or input error, 2 verification failure,
// 3 undecided (open-case) result.

#include "nullray/diophantine.hpp"
#include "nullray/euclidean.hpp"
#include "nullray/io.hpp"
#include "nullray/torus.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

using namespace nullray;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kVerification = 2, kUnknown = 3 };

struct Common {
  std::pair<int, int> signature{1, 1};
  Integer box = 2;
  Integer bound = MembershipOptions::kDefaultSearchBound;
  std::optional<double> tolerance;
  bool exact = false;
  bool records = false;
  std::string input = "-";
};

Signature signature_of(const Common& c) { return Signature(c.signature.first, c.signature.second); }

std::vector<Integer> to_vector(const IntVector& v) { return {v.data(), v.data() + v.size()}; }

json direction_json(const NullLatticeDirection& d) {
  return {{"v", to_vector(d.v())}, {"w", to_vector(d.w())}};
}

json frequency_json(const LatticeFrequency& f) {
  return {{"k", to_vector(f.k())}, {"p", to_vector(f.p())}};
}

std::string split(const IntVector& c, Signature sig) {
  return format_int_vector(c.head(sig.n1)) + ' ' + format_int_vector(c.tail(sig.n2));
}

// Reads the whole input ("-" is stdin) so parse errors can be reported once.
std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream is(path);
  if (!is)
    throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// A prebuilt table makes n1 >= 4 (or n2 >= 4) membership queries cheap.
std::unique_ptr<NullDirectionTable> table_for(Signature sig, Integer bound) {
  if (std::min(sig.n1, sig.n2) == 1 && std::max(sig.n1, sig.n2) >= 4)
    return std::make_unique<NullDirectionTable>(sig, bound);
  return nullptr;
}

void add_common(CLI::App* app, Common& c, bool with_box, bool with_bound) {
  app->add_option("--signature", c.signature, "Signature n1 n2");
  if (with_box)
    app->add_option("--box", c.box, "Frequency box radius")->check(CLI::PositiveNumber);
  if (with_bound)
    app->add_option("--bound", c.bound, "Null direction search bound")->check(CLI::PositiveNumber);
  app->add_option("--tolerance", c.tolerance, "Comparison tolerance");
  app->add_flag("--exact", c.exact, "Exact rational coefficients");
  app->add_flag("--records", c.records, "Line-delimited JSON records");
}

// ------------------------------------------------------------------- commands

int cmd_kset(const Common& c) {
  const Signature sig = signature_of(c);
  const auto table = table_for(sig, c.bound);
  MembershipOptions opt;
  opt.search_bound = c.bound;
  opt.table = table.get();
  const LatticeBox box(sig.total(), c.box);
  bool unknown = false;
  if (!c.records)
    std::cout << "# freq\tin_K\twitness\tmethod\n";
  for (std::size_t i = 0; i < box.size(); ++i) {
    const LatticeFrequency f(sig, box.point(i));
    const auto m = k_membership(f, opt);
    unknown = unknown || m.decision == Membership::Unknown;
    if (c.records) {
      json row = frequency_json(f);
      row["in_K"] = to_string(m.decision);
      row["witness"] = m.witness ? direction_json(*m.witness) : json(nullptr);
      row["method"] = to_string(m.method);
      std::cout << row.dump() << '\n';
    } else {
      std::cout << split(f.coords(), sig) << '\t' << to_string(m.decision) << '\t'
                << (m.witness ? split(m.witness->coords(), sig) : std::string("-")) << '\t'
                << to_string(m.method) << '\n';
    }
  }
  return unknown ? kUnknown : kOk;
}

int cmd_witness(const Common& c, const std::vector<Integer>& coords) {
  const Signature sig = signature_of(c);
  if (static_cast<int>(coords.size()) != sig.total())
    throw std::invalid_argument("witness: expected " + std::to_string(sig.total()) +
                                " frequency entries");
  IntVector x(sig.total());
  for (int i = 0; i < sig.total(); ++i)
    x[i] = coords[static_cast<std::size_t>(i)];
  const LatticeFrequency f(sig, x);
  const auto table = table_for(sig, c.bound);
  MembershipOptions opt;
  opt.search_bound = c.bound;
  opt.table = table.get();
  const auto m = k_membership(f, opt);

  std::optional<ExactTrigPolynomial> kernel;
  if (m.decision == Membership::NotInK && std::min(sig.n1, sig.n2) == 1)
    kernel = kernel_witness(f, opt);

  if (c.records) {
    json row = frequency_json(f);
    row["in_K"] = to_string(m.decision);
    row["method"] = to_string(m.method);
    row["witness"] = m.witness ? direction_json(*m.witness) : json(nullptr);
    if (m.certificate) {
      row["certificate"] = {{"kind", to_string(m.certificate->kind)},
                            {"values", m.certificate->decomposition}};
    }
    if (kernel)
      row["kernel_monomial"] = frequency_json(f);
    std::cout << row.dump() << '\n';
  } else {
    std::cout << "frequency " << split(f.coords(), sig) << '\n'
              << "in_K " << to_string(m.decision) << '\n'
              << "method " << to_string(m.method) << '\n';
    if (m.witness)
      std::cout << "witness " << split(m.witness->coords(), sig) << '\n';
    if (m.certificate) {
      std::cout << "certificate " << to_string(m.certificate->kind);
      for (auto v : m.certificate->decomposition)
        std::cout << ' ' << v;
      std::cout << '\n';
    }
    if (kernel) {
      std::cout << "# kernel element: every closed null geodesic integral vanishes\n";
      write_polynomial(std::cout, *kernel);
    }
  }
  return m.decision == Membership::Unknown ? kUnknown : kOk;
}

template <typename Scalar> void emit_transform(const Common& c, const TrigPolynomial<Scalar>& f) {
  const auto dirs = enumerate_null_directions(f.signature(), c.bound);
  const auto data = collect_transform_data(f, dirs);
  if (!c.records) {
    write_transform_data(std::cout, f.signature(), data);
    return;
  }
  for (const auto& [d, poly] : data) {
    for (const auto& [k, coef] : poly) {
      json row = direction_json(d);
      row["freq"] = frequency_json(LatticeFrequency(f.signature(), k));
      const Complex z = ScalarTraits<Scalar>::to_complex(coef);
      row["value"] = {z.real(), z.imag()};
      std::cout << row.dump() << '\n';
    }
  }
}

int cmd_transform(const Common& c) {
  std::istringstream is(slurp(c.input));
  if (c.exact)
    emit_transform(c, read_exact_polynomial(is));
  else
    emit_transform(c, read_complex_polynomial(is));
  return kOk;
}

template <typename Scalar> int emit_recovery(const Common& c, const Recovery<Scalar>& rec) {
  const Signature sig = rec.signature;
  if (c.records) {
    for (const auto& [k, coef] : rec.recovered) {
      json row = frequency_json(LatticeFrequency(sig, k));
      const Complex z = ScalarTraits<Scalar>::to_complex(coef);
      row["recovered"] = true;
      row["value"] = {z.real(), z.imag()};
      std::cout << row.dump() << '\n';
    }
    for (const auto& f : rec.unrecoverable) {
      json row = frequency_json(f);
      row["recovered"] = false;
      std::cout << row.dump() << '\n';
    }
    return kOk;
  }
  write_polynomial(std::cout, rec.polynomial());
  for (const auto& f : rec.unrecoverable)
    std::cout << "# unrecoverable " << split(f.coords(), sig) << '\n';
  return kOk;
}

int cmd_recover(const Common& c) {
  std::istringstream is(slurp(c.input));
  Signature sig{1, 1};
  if (c.exact) {
    const auto data = read_exact_transform_data(is, sig);
    return emit_recovery(c, recover_coefficients(sig, data, c.box));
  }
  const auto data = read_complex_transform_data(is, sig);
  return emit_recovery(c, recover_coefficients(sig, data, c.box, c.tolerance.value_or(1e-12)));
}

struct SliceArgs {
  std::string grid;
  std::string gaussians;
  std::size_t points = 256;
  double side = 12.0;
  std::vector<double> direction;
  int samples = 33;
};

int cmd_slice_check(const Common& c, const SliceArgs& a) {
  if (a.grid.empty() == a.gaussians.empty())
    throw std::invalid_argument("slice-check: give exactly one of --grid and --gaussians");
  std::optional<GridField> field;
  if (!a.grid.empty()) {
    field = read_grid_file(a.grid);
  } else {
    std::istringstream is(slurp(a.gaussians));
    const auto g = gaussian_mixture(read_records(is));
    field = g.sample(Eigen::VectorXd::Constant(g.dimension(), -0.5 * a.side),
                     a.side / static_cast<double>(a.points),
                     std::vector<std::size_t>(static_cast<std::size_t>(g.dimension()), a.points));
  }
  Eigen::VectorXd v = Eigen::VectorXd::Unit(field->dimension(), 0);
  if (!a.direction.empty()) {
    v = Eigen::Map<const Eigen::VectorXd>(a.direction.data(),
                                          static_cast<Eigen::Index>(a.direction.size()));
    v.normalize();
  }
  const double tol = c.tolerance.value_or(1e-6);
  SliceReport r;
  try {
    r = fourier_slice_check(*field, v, a.samples);
  } catch (const PreconditionError& e) {
    std::cerr << "nullray: " << e.what() << '\n';
    return kVerification;
  }
  const bool ok = r.max_deviation < tol;
  if (c.records) {
    std::cout << json{{"deviation", r.max_deviation}, {"boundary_ratio", r.boundary_ratio},
                      {"lines", r.lines},         {"samples", r.samples},
                      {"tolerance", tol},         {"ok", ok}}
                     .dump()
              << '\n';
  } else {
    std::cout << "deviation " << format_double(r.max_deviation) << '\n'
              << "boundary_ratio " << format_double(r.boundary_ratio) << '\n'
              << "lines " << r.lines << '\n'
              << "tolerance " << format_double(tol) << '\n'
              << (ok ? "ok" : "FAILED") << '\n';
  }
  return ok ? kOk : kVerification;
}

int cmd_normal_bundle(const Common& c, const std::string& directions,
                      const std::vector<std::vector<double>>& points) {
  std::istringstream is(slurp(directions));
  const auto D = direction_set(read_records(is));
  for (const auto& p : points) {
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
    const bool in = normal_bundle_contains(D, x);
    if (c.records) {
      std::cout << json{{"x", p}, {"in_N", in}}.dump() << '\n';
    } else {
      for (std::size_t i = 0; i < p.size(); ++i)
        std::cout << (i ? " " : "") << format_double(p[i]);
      std::cout << '\t' << (in ? "true" : "false") << '\n';
    }
  }
  return kOk;
}

int cmd_scan(const Common& c, int n1) {
  const auto report = conjecture_scan(n1, c.box, c.bound);
  const Signature sig{n1, 1};
  if (c.records) {
    for (const auto& row : report.rows) {
      json r = frequency_json(row.frequency);
      r["predicate"] = row.predicate;
      r["outcome"] = to_string(row.outcome);
      r["witness"] = row.witness ? direction_json(*row.witness) : json(nullptr);
      std::cout << r.dump() << '\n';
    }
    std::cout << json{{"n1", report.n1},
                      {"box", report.box},
                      {"bound", report.bound},
                      {"examined", report.examined},
                      {"agree_solvable", report.agree_solvable},
                      {"agree_unsolvable", report.agree_unsolvable},
                      {"disagree", report.disagree},
                      {"unknown", report.unknown}}
                     .dump()
              << '\n';
  } else {
    for (const auto& row : report.rows)
      std::cout << split(row.frequency.coords(), sig) << '\t' << to_string(row.outcome) << '\t'
                << (row.witness ? split(row.witness->coords(), sig) : std::string("-")) << '\n';
    std::cout << "# n1 " << report.n1 << " box " << report.box << " bound " << report.bound << '\n'
              << "# examined " << report.examined << '\n'
              << "# agree_solvable " << report.agree_solvable << '\n'
              << "# agree_unsolvable " << report.agree_unsolvable << '\n'
              << "# disagree " << report.disagree << '\n'
              << "# unknown " << report.unknown << '\n';
  }
  return report.disagree ? kVerification : kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Null X-ray transform toolkit"};
  app.require_subcommand(1);
  Common c;
  std::function<int()> run;

  auto* kset = app.add_subcommand("kset", "Tabulate membership in K over a frequency box");
  add_common(kset, c, true, true);
  kset->callback([&] { run = [&] { return cmd_kset(c); }; });

  std::vector<Integer> freq;
  auto* witness = app.add_subcommand("witness", "Decide one frequency and print witnesses");
  add_common(witness, c, false, true);
  witness->add_option("frequency", freq, "Entries k_1..k_n1 p_1..p_n2")->required();
  witness->callback([&] { run = [&] { return cmd_witness(c, freq); }; });

  auto* transform = app.add_subcommand("transform", "Transform data of a polynomial");
  add_common(transform, c, false, true);
  transform->add_option("--input", c.input, "Polynomial file ('-' for stdin)");
  transform->callback([&] { run = [&] { return cmd_transform(c); }; });

  auto* recover = app.add_subcommand("recover", "Recover coefficients from transform data");
  add_common(recover, c, true, false);
  recover->add_option("--input", c.input, "Transform data file ('-' for stdin)");
  recover->callback([&] { run = [&] { return cmd_recover(c); }; });

  SliceArgs slice;
  auto* slice_check = app.add_subcommand("slice-check", "Fourier slice check on a grid field");
  add_common(slice_check, c, false, false);
  slice_check->add_option("--grid", slice.grid, "Binary grid file");
  slice_check->add_option("--gaussians", slice.gaussians, "Gaussian record file");
  slice_check->add_option("--points", slice.points, "Samples per axis for --gaussians");
  slice_check->add_option("--side", slice.side, "Box side for --gaussians");
  slice_check->add_option("--direction", slice.direction, "Line direction");
  slice_check->add_option("--samples", slice.samples, "Frequencies tested");
  slice_check->callback([&] { run = [&] { return cmd_slice_check(c, slice); }; });

  std::string directions;
  std::vector<std::vector<double>> points;
  auto* normal = app.add_subcommand("normal-bundle", "Membership in the normal bundle N(D)");
  add_common(normal, c, false, false);
  normal->add_option("--directions", directions, "Direction-set record file")->required();
  normal->add_option("--point", points, "Point coordinates (repeatable)")->required();
  normal->callback([&] { run = [&] { return cmd_normal_bundle(c, directions, points); }; });

  int n1 = 4;
  auto* scan = app.add_subcommand("scan", "Sum-of-squares prediction against bounded search");
  add_common(scan, c, true, true);
  scan->add_option("--n1", n1, "Spacelike dimension (>= 4)");
  scan->callback([&] { run = [&] { return cmd_scan(c, n1); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return run();
  } catch (const InconsistentData& e) {
    std::cerr << "nullray: inconsistent data: " << e.what() << '\n';
    return kVerification;
  } catch (const PreconditionError& e) {
    std::cerr << "nullray: " << e.what() << '\n';
    return kVerification;
  } catch (const std::exception& e) {
    std::cerr << "nullray: " << e.what() << '\n';
    return kUsage;
  }
}
