#include "qcircle_cli/run.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>

#include "qcircle/error.hpp"
#include "qcircle/operator_lab.hpp"
#include "qcircle/qmath.hpp"
#include "qcircle/series.hpp"
#include "qcircle/states.hpp"

namespace qcircle::cli {

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> d{
      {"state", "amplitudes <j|l,alpha> for |j| <= jmax"},
      {"norm", "squared norm of the state"},
      {"overlap", "overlap <l,alpha|h,beta>"},
      {"expect-j", "expectation value of J_q"},
      {"expect-u", "expectation value of U"},
      {"rel-u", "<U> relative to the alpha = 0 state"},
      {"dist-j", "distribution over angular momentum j (columns j,p)"},
      {"dist-phi", "angular density on a periodic grid (columns phi,p)"},
      {"scan-error", "relative error of <J_q> against [l]_q over a grid"},
      {"gate-map", "convergence verdicts over (l, s) at fixed q"},
      {"limit-check", "deformed quantities at q = 1 +- delta against the theta forms"},
      {"algebra-check", "commutator and eigen-relation residuals on truncated bases"},
  };
  return d;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams:
      return kExitInvalid;
    case ErrorKind::NotConvergent:
    case ErrorKind::Boundary:
    case ErrorKind::NonConvergent:
      return kExitNotConvergent;
    case ErrorKind::WindowTooNarrow:
    case ErrorKind::Overflow:
    case ErrorKind::DegenerateReference:
      return kExitWindow;
  }
  return kExitInvalid;
}

void require(bool ok, std::string_view message) {
  if (!ok) throw Error(ErrorKind::InvalidParams, std::string(message));
}

// Range points lo + k*step, computed from k to avoid drift.
std::vector<double> points(const Range& r) {
  const auto n = static_cast<long>(std::floor((r.hi - r.lo) / r.step + 1e-9));
  std::vector<double> out;
  for (long k = 0; k <= n; ++k) out.push_back(r.lo + static_cast<double>(k) * r.step);
  return out;
}

RunConfig in_radians(RunConfig c) {
  if (c.degrees) {
    c.alpha *= kDegree;
    c.beta *= kDegree;
    c.phi *= kDegree;
    c.degrees = false;
  }
  return c;
}

void validate(const RunConfig& c) {
  const auto& names = subcommands();
  require(std::find(names.begin(), names.end(), c.subcommand) != names.end(), "unknown subcommand " + c.subcommand);
  for (const double v : {c.l, c.alpha, c.h, c.beta, c.phi}) require(std::isfinite(v), "labels and angles must be finite");
  DeformationParams{c.q, c.s}.validate();
  require(std::isfinite(c.tol) && c.tol > 0.0, "tol must be positive");
  require(c.jmax >= 1, "jmax must be >= 1");
  require(c.grid >= 16, "grid must be >= 16");
  require(std::isfinite(c.delta) && c.delta > 0.0 && c.delta < 0.5, "delta must lie in (0, 0.5)");
  if (c.l_range) {
    const Range& r = *c.l_range;
    require(std::isfinite(r.lo) && std::isfinite(r.hi) && r.hi >= r.lo, "l-range needs finite lo <= hi");
    require(std::isfinite(r.step) && r.step > 0.0, "l-range step must be positive");
    require((r.hi - r.lo) / r.step < 1e6, "l-range has too many points");
  }
  for (const double q : c.q_values) DeformationParams{q, 1.0}.validate();
  for (const double s : c.s_values) DeformationParams{1.0, s}.validate();
}

Table scalar(std::vector<std::string> columns, std::vector<Cell> values) {
  Table t{std::move(columns), {}, true};
  t.add_row(std::move(values));
  return t;
}

Table distribution(const DistributionTable& d, std::string support_name, bool integer_support) {
  Table t{{std::move(support_name), "p"}, {}};
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    const Cell x = integer_support ? Cell{static_cast<std::int64_t>(d.support[i])} : Cell{d.support[i]};
    t.add_row({x, d.weights[i]});
  }
  return t;
}

double rel_diff(std::complex<double> a, std::complex<double> ref) { return std::abs(a - ref) / std::abs(ref); }

Table scan_error(const RunConfig& c, const SeriesOptions& opts) {
  const std::vector<double> qs = c.q_values.empty() ? std::vector<double>{c.q} : c.q_values;
  const Range range = c.l_range.value_or(Range{0.3, 3.0, 0.1});
  Table t{{"q", "l", "bracket_l", "expect_jq", "rel_err", "abs_err"}, {}};
  for (const double q : qs) {
    const DeformationParams p{q, c.s};
    for (const double l : points(range)) {
      const double bracket = p.undeformed() ? l : q_number(l, q);
      const double e = expectation_Jq(StateLabel{l, 0.0}, p, opts);
      const double rel = bracket == 0.0 ? std::nan("") : std::abs(e / bracket - 1.0);
      t.add_row({q, l, bracket, e, rel, std::abs(e - bracket)});
    }
  }
  return t;
}

Table gate_map(const RunConfig& c) {
  const Range range = c.l_range.value_or(Range{-2.0, 3.0, 0.25});
  const std::vector<double> ss = c.s_values.empty() ? std::vector<double>{0.25, 0.5, 0.75, 1.0, 1.5} : c.s_values;
  Table t{{"l", "s", "gate_value", "verdict", "empirical"}, {}};
  for (const double s : ss) {
    const DeformationParams p{c.q, s};
    for (const double l : points(range)) {
      const ConvergenceVerdict v = convergence_gate(c.q, l, s);
      const StateLabel label{l, 0.0};
      const Convergence empirical = ratio_test([&](std::int64_t j) {
        return LogTerm{2.0 * amplitude_log(j, label, p).log_magnitude};
      });
      t.add_row({l, s, v.gate_value, std::string(to_string(v.status)), std::string(to_string(empirical))});
    }
  }
  return t;
}

Table limit_check(const RunConfig& c, const SeriesOptions& opts) {
  const StateLabel a{c.l, c.alpha};
  const StateLabel b{c.h, c.beta};
  const DeformationParams flat{1.0, c.s};
  Table t{{"quantity", "q", "deformed_re", "deformed_im", "closed_re", "closed_im", "rel_err"}, {}};
  for (const double q : {1.0 - c.delta, 1.0 + c.delta}) {
    const DeformationParams p{q, c.s};
    const auto row = [&](std::string name, std::complex<double> deformed, std::complex<double> closed) {
      t.add_row({std::move(name), q, deformed.real(), deformed.imag(), closed.real(), closed.imag(),
                 rel_diff(deformed, closed)});
    };
    row("norm", norm_squared(a, p, opts), norm_squared(a, flat, opts));
    row("overlap", overlap(a, b, p, opts), overlap(a, b, flat, opts));
    row("wavefunction", wavefunction(c.phi, a, p, opts), wavefunction(c.phi, a, flat, opts));
  }
  return t;
}

Table algebra_check(const RunConfig& c, const DeformationParams& p, const StateLabel& label) {
  Table t{{"check", "q", "s", "half_width", "residual"}, {}};
  t.add_row({std::string("commutator"), c.q, c.s, std::int64_t{kAlgebraHalfWidth},
             commutator_residual(c.q, kAlgebraHalfWidth)});
  t.add_row({std::string("relative_commutator"), c.q, c.s, std::int64_t{kAlgebraHalfWidth},
             relative_commutator_residual(c.q, kAlgebraHalfWidth)});
  t.add_row({std::string("eigen"), c.q, c.s, std::int64_t{c.jmax}, eigen_residual(label, p, c.jmax)});
  return t;
}

ParamList echo(const RunConfig& c) {
  return {{"subcommand", c.subcommand}, {"q", c.q},   {"s", c.s},     {"l", c.l},
          {"alpha", c.alpha},           {"h", c.h},   {"beta", c.beta}, {"phi", c.phi},
          {"tol", c.tol},               {"jmax", std::int64_t{c.jmax}}, {"grid", std::int64_t{c.grid}}};
}

}  // namespace

Table compute(const RunConfig& raw) {
  const RunConfig c = in_radians(raw);
  validate(c);
  const DeformationParams p{c.q, c.s};
  const StateLabel label{c.l, c.alpha};
  SeriesOptions opts;
  opts.tol = c.tol;
  const std::string& cmd = c.subcommand;

  if (cmd == "state") {
    Table t{{"j", "re", "im"}, {}};
    for (int j = -c.jmax; j <= c.jmax; ++j) {
      const std::complex<double> a = amplitude(j, label, p);
      t.add_row({std::int64_t{j}, a.real(), a.imag()});
    }
    return t;
  }
  if (cmd == "norm") return scalar({"norm_squared"}, {norm_squared(label, p, opts)});
  if (cmd == "overlap") {
    const std::complex<double> o = overlap(label, StateLabel{c.h, c.beta}, p, opts);
    return scalar({"re", "im"}, {o.real(), o.imag()});
  }
  if (cmd == "expect-j") {
    return scalar({"expect_jq", "bracket_l"}, {expectation_Jq(label, p, opts), p.undeformed() ? c.l : q_number(c.l, c.q)});
  }
  if (cmd == "expect-u") {
    const std::complex<double> u = expectation_U(label, p, opts);
    return scalar({"re", "im", "abs", "arg"}, {u.real(), u.imag(), std::abs(u), std::arg(u)});
  }
  if (cmd == "rel-u") {
    const std::complex<double> u = relative_expectation_U(label, p, opts);
    return scalar({"re", "im"}, {u.real(), u.imag()});
  }
  if (cmd == "dist-j") {
    const std::optional<JWindow> window =
        c.jmax_given ? std::optional<JWindow>{JWindow{-c.jmax, c.jmax}} : std::nullopt;
    return distribution(dist_j(label, p, window, opts), "j", true);
  }
  if (cmd == "dist-phi") return distribution(dist_phi(label, p, c.grid, opts), "phi", false);
  if (cmd == "scan-error") return scan_error(c, opts);
  if (cmd == "gate-map") return gate_map(c);
  if (cmd == "limit-check") return limit_check(c, opts);
  return algebra_check(c, p, label);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Table table;
  try {
    table = compute(config);
  } catch (const Error& e) {
    err << "qcircle: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  std::ofstream file;
  std::ostream* sink = &out;
  if (!config.output.empty()) {
    file.open(config.output);
    if (!file) {
      err << "qcircle: invalid_params: cannot open output file " << config.output << '\n';
      return kExitInvalid;
    }
    sink = &file;
  }
  if (config.format == Format::Json) {
    write_json(*sink, echo(in_radians(config)), table);
  } else {
    write_csv(*sink, table);
  }
  sink->flush();
  return kExitOk;
}

ParseResult parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-deformed coherent states on the circle", "qcircle"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig c;
  std::string format = "csv";
  std::vector<double> l_range;
  app.add_option("--q", c.q, "deformation parameter, q > 0");
  app.add_option("--s", c.s, "squeeze parameter, s > 0");
  app.add_option("--l", c.l, "label l");
  app.add_option("--alpha", c.alpha, "label angle alpha");
  app.add_option("--h", c.h, "overlap partner l");
  app.add_option("--beta", c.beta, "overlap partner angle");
  app.add_option("--phi", c.phi, "angle for limit-check wavefunction");
  app.add_option("--tol", c.tol, "series tolerance");
  auto* jmax = app.add_option("--jmax", c.jmax, "half-width of the j window");
  app.add_option("--grid", c.grid, "points on the phi grid");
  app.add_option("--delta", c.delta, "limit-check offset from q = 1");
  app.add_option("--l-range", l_range, "lo,hi,step for grid subcommands")->expected(3)->delimiter(',');
  app.add_option("--q-values", c.q_values, "q list for scan-error")->delimiter(',');
  app.add_option("--s-values", c.s_values, "s list for gate-map")->delimiter(',');
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", c.output, "output file (default: standard output)");
  app.add_flag("--degrees", c.degrees, "angles given in degrees");
  for (const auto& name : subcommands()) app.add_subcommand(name, descriptions().at(name));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return {std::nullopt, kExitOk};
    }
    err << "qcircle: invalid_params: " << e.what() << '\n';
    return {std::nullopt, kExitInvalid};
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  c.jmax_given = jmax->count() > 0;
  c.format = format == "json" ? Format::Json : Format::Csv;
  if (!l_range.empty()) c.l_range = Range{l_range[0], l_range[1], l_range[2]};
  return {c, kExitOk};
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ParseResult parsed = parse_args(args, out, err);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, out, err);
}

}  // namespace qcircle::cli
