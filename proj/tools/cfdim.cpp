#include <CLI11.hpp>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>

#include "cfdim/errors.hpp"
#include "cfdim/expansions.hpp"
#include "cfdim/sweep.hpp"

using namespace cfdim;
using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitNumerical = 3;

struct Flags {
  RunConfig cfg;
  std::string format = "text";
  int max = 5;
  std::vector<double> at;
  long long at_n = 0;
};

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void print_kv(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::size_t w = 0;
  for (const auto& [k, v] : kv) w = std::max(w, k.size());
  for (const auto& [k, v] : kv) std::cout << std::left << std::setw(static_cast<int>(w) + 2) << k << v << "\n";
}

void check_format(const std::string& f) {
  if (f != "text" && f != "csv" && f != "json") throw ParseError("--format must be text, csv or json");
}

int cmd_dim(const std::string& spec, const Flags& fl) {
  const Alphabet a = parse_alphabet(spec);
  const DimensionResult r = bowen_dimension(a, dimension_options(fl.cfg));
  if (fl.format == "json") {
    std::cout << json{{"alphabet", spec},
                      {"delta", num(r.delta)},
                      {"empty", r.empty},
                      {"error_estimate", r.error_estimate},
                      {"grid_size", r.grid_size},
                      {"pressure_residual", r.pressure_residual},
                      {"pressure_evaluations", r.pressure_evaluations}}
                     .dump(2)
              << "\n";
  } else if (fl.format == "csv") {
    std::cout << "alphabet,delta,error_estimate,grid_size\n"
              << spec << "," << format_double(r.delta) << "," << format_double(r.error_estimate) << ","
              << r.grid_size << "\n";
  } else {
    print_kv({{"alphabet", spec},
              {"delta", r.empty ? "empty alphabet (-inf)" : format_double(r.delta)},
              {"error", format_double(r.error_estimate)},
              {"grid", std::to_string(r.grid_size)}});
  }
  return 0;
}

int cmd_pressure(const std::string& spec, const Flags& fl) {
  const Alphabet a = parse_alphabet(spec);
  if (fl.at.empty()) throw ParseError("pressure: give at least one --at s");
  const int m = fl.cfg.grid > 0 ? fl.cfg.grid : 64;
  const auto grid = make_grid(m);
  std::vector<std::pair<double, double>> vals;
  for (double s : fl.at) vals.emplace_back(s, pressure(a, s, grid, fl.cfg.tail_order));
  if (fl.format == "json") {
    json rows = json::array();
    for (auto [s, p] : vals) rows.push_back({{"s", s}, {"pressure", num(p)}});
    std::cout << json{{"alphabet", spec}, {"grid", m}, {"samples", rows}}.dump(2) << "\n";
  } else {
    std::cout << "s,pressure\n";
    for (auto [s, p] : vals) std::cout << format_double(s) << "," << format_double(p) << "\n";
  }
  return 0;
}

int cmd_coeffs(const std::string& which, const Flags& fl) {
  json out = {{"which", which}, {"coefficients", json::array()}};
  std::vector<std::pair<std::string, std::string>> rows;
  auto add = [&](const std::string& name, const json& value, const std::string& shown) {
    out["coefficients"].push_back({{"name", name}, {"value", value}});
    rows.emplace_back(name, shown);
  };
  if (which == "tree") {
    const auto t = tree_coefficients(fl.max);
    for (int j = 0; j <= fl.max; ++j) {
      const std::string s = to_fraction_string(t.a[j]);
      add("a" + std::to_string(j), s, s);
    }
  } else if (which == "diagonal") {
    for (int i = 1; i <= fl.max; ++i) {
      const double c = c_ii1(i);
      add("c" + std::to_string(i) + "," + std::to_string(i - 1), c, format_double(c));
    }
  } else if (which == "hensley") {
    const QTerms q = qterms(fl.cfg.grid > 0 ? fl.cfg.grid / 2 : 32, fl.cfg.tail_order);
    const HensleyExpansion h = hensley_expansion(fl.cfg.order, q);
    for (const auto& [ij, c] : h.coefficients)
      add("c" + std::to_string(ij.first) + "," + std::to_string(ij.second), c, format_double(c));
  } else if (which == "loglog") {
    const auto lc = loglog_coefficients(fl.max);
    for (const auto& [kl, c] : lc.c) {
      const std::string s = to_fraction_string(c);
      add("c" + std::to_string(kl.first) + "," + std::to_string(kl.second), s, s);
    }
  } else {
    throw ParseError("coeffs: expected tree, diagonal, hensley or loglog");
  }
  if (fl.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else if (fl.format == "csv") {
    std::cout << "name,value\n";
    for (const auto& [k, v] : rows) std::cout << k << "," << v << "\n";
  } else {
    print_kv(rows);
  }
  return 0;
}

int cmd_verify(const std::string& family, const Flags& fl) {
  const SweepReport rep = run_verify(family, fl.cfg);
  if (fl.format == "json") {
    std::cout << to_json(rep).dump(2) << "\n";
    return 0;
  }
  std::cout << to_csv(rep.rows);
  const Fit& f = rep.fit;
  std::cerr << "fit: residual ~ " << format_double(f.constant) << " N^" << format_double(f.exponent)
            << " log^" << f.log_power << " N (r2 " << format_double(f.r2) << ", " << f.points
            << " points)";
  if (f.richardson) std::cerr << "; extrapolated constant " << format_double(*f.richardson);
  std::cerr << "\n";
  for (const auto& b : rep.bounds)
    std::cerr << "bound " << b.name << ": " << b.rows_checked - b.rows_violating << "/"
              << b.rows_checked << " rows inside\n";
  return 0;
}

int cmd_qterms(const Flags& fl) {
  const int m = fl.cfg.grid > 0 ? fl.cfg.grid : 64;
  if (m < 16) throw ParseError("qterms: grid must be at least 16");
  const QTerms q = qterms(m / 2, fl.cfg.tail_order);
  const Base base = build_base(parse_alphabet("geq:1"), 1.0, make_grid(m), fl.cfg.tail_order);
  const double neumann = nu_Q_h_neumann(base);
  const double c20 = coefficient_c20(q);
  const std::vector<std::pair<std::string, QTermValue>> terms{
      {"mu_phi_Q_Lphi_g", q.mu_phi_Q_Lphi_g},
      {"mu_phi_Q_h", q.mu_phi_Q_h},
      {"nu_Q_Lphi_g", q.nu_Q_Lphi_g},
      {"nu_Q_h", q.nu_Q_h}};
  if (fl.format == "json") {
    json t = json::object();
    for (const auto& [k, v] : terms) t[k] = {{"value", v.value}, {"error_estimate", v.error_estimate}};
    std::cout << json{{"grid", q.m},
                      {"terms", t},
                      {"zeta2", q.zeta2},
                      {"zeta3", q.zeta3},
                      {"c20", c20},
                      {"nu_Q_h_neumann", neumann}}
                     .dump(2)
              << "\n";
  } else if (fl.format == "csv") {
    std::cout << "name,value,error_estimate\n";
    for (const auto& [k, v] : terms)
      std::cout << k << "," << format_double(v.value) << "," << format_double(v.error_estimate) << "\n";
  } else {
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& [k, v] : terms)
      rows.emplace_back(k, format_double(v.value) + "  +- " + format_double(v.error_estimate));
    rows.emplace_back("nu_Q_h (Neumann)", format_double(neumann));
    rows.emplace_back("zeta2", format_double(q.zeta2));
    rows.emplace_back("zeta3", format_double(q.zeta3));
    rows.emplace_back("c20", format_double(c20));
    rows.emplace_back("grid", std::to_string(q.m));
    print_kv(rows);
  }
  return 0;
}

// Lists the terms of an expansion, with their values when --at N is given.
int cmd_expand(const std::string& family, const Flags& fl) {
  struct Term {
    std::string label;
    double coefficient;
    double value;
  };
  std::vector<Term> terms;
  const double N = static_cast<double>(fl.at_n);
  double total = std::numeric_limits<double>::quiet_NaN();
  if (family == "hensley") {
    const QTerms q = qterms(fl.cfg.grid > 0 ? fl.cfg.grid / 2 : 32, fl.cfg.tail_order);
    const HensleyExpansion h = hensley_expansion(fl.cfg.order, q);
    terms.push_back({"1", 1.0, 1.0});
    for (const auto& [ij, c] : h.coefficients) {
      const auto [i, j] = ij;
      const double v = fl.at_n > 0 ? c * std::pow(std::log(N), j) / std::pow(N, i) : 0.0;
      terms.push_back({"log^" + std::to_string(j) + " N / N^" + std::to_string(i), c, v});
    }
    if (fl.at_n > 0) total = h.evaluate(N);
  } else if (family == "good") {
    if (fl.at_n > 0 && fl.at_n < 20) throw ParseError("expand good: N must be at least 20");
    const auto lc = loglog_coefficients(fl.cfg.order);
    LogLogVars v{};
    if (fl.at_n > 0) v = LogLogVars::from_log_inv_b(std::log(N));
    const double pre = fl.at_n > 0 ? 1.0 / (2.0 * v.C) : 0.0;
    terms.push_back({"1/2", 0.5, 0.5});
    terms.push_back({"D / (2C)", 1.0, pre * v.D});
    terms.push_back({"E / (2C)", -1.0, -pre * v.E});
    for (const auto& [kl, c] : lc.c) {
      const auto [k, l] = kl;
      const double cv = -to_double(c);
      const double val = fl.at_n > 0 ? pre * cv * std::pow(v.E, l) / std::pow(v.D, k) : 0.0;
      terms.push_back({"E^" + std::to_string(l) + " / (2C D^" + std::to_string(k) + ")", cv, val});
    }
    if (fl.at_n > 0) total = good_estimate(fl.at_n, fl.cfg.order);
  } else {
    throw ParseError("expand: expected hensley or good");
  }
  if (fl.format == "json") {
    json t = json::array();
    for (const auto& x : terms) {
      json e = {{"term", x.label}, {"coefficient", x.coefficient}};
      if (fl.at_n > 0) e["value"] = x.value;
      t.push_back(e);
    }
    json out = {{"family", family}, {"order", fl.cfg.order}, {"terms", t}};
    if (fl.at_n > 0) {
      out["N"] = fl.at_n;
      out["sum"] = total;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (fl.at_n > 0 ? "term,coefficient,value\n" : "term,coefficient\n");
    for (const auto& x : terms) {
      std::cout << x.label << "," << format_double(x.coefficient);
      if (fl.at_n > 0) std::cout << "," << format_double(x.value);
      std::cout << "\n";
    }
    if (fl.at_n > 0) std::cout << "sum,," << format_double(total) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hausdorff dimension of continued-fraction Cantor sets and their asymptotic expansions"};
  app.require_subcommand(1);
  Flags fl;
  RunConfig& c = fl.cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--grid", c.grid, "collocation grid size (0: adaptive doubling)")->envname("CFDIM_GRID");
    sub->add_option("--tail-order", c.tail_order, "Euler-Maclaurin order of the tail closure")
        ->envname("CFDIM_TAIL_ORDER");
    sub->add_option("--tol", c.tol, "grid-doubling tolerance")->envname("CFDIM_TOL");
    sub->add_option("--format", fl.format, "text, csv or json")->envname("CFDIM_FORMAT");
  };

  std::string spec, which, family;
  auto* dim = app.add_subcommand("dim", "dimension of an alphabet, e.g. leq:2, set:1,3, fib:geq:5");
  dim->add_option("alphabet", spec)->required();
  common(dim);

  auto* pres = app.add_subcommand("pressure", "pressure P(s) at the given points");
  pres->add_option("alphabet", spec)->required();
  pres->add_option("--at", fl.at, "values of s")->required();
  common(pres);

  auto* coeffs = app.add_subcommand("coeffs", "coefficient tables: tree, diagonal, hensley, loglog");
  coeffs->add_option("which", which)->required();
  coeffs->add_option("--max", fl.max, "largest index for tree, diagonal and loglog");
  coeffs->add_option("--order", c.order, "order of the hensley expansion")->envname("CFDIM_ORDER");
  common(coeffs);

  auto* verify = app.add_subcommand("verify", "N-sweep of a family against its expansion");
  verify->add_option("family", family, "hensley, good, pair, one-n or fib")->required();
  verify->add_option("--from", c.from, "first N (0: family default)");
  verify->add_option("--to", c.to, "last N (0: family default)");
  verify->add_option("--step", c.step, "arithmetic step (0: family default, doubling for most)");
  verify->add_option("--order", c.order, "expansion order (hensley <= 3, good = k_max)")
      ->envname("CFDIM_ORDER");
  verify->add_option("--jobs", c.jobs, "worker threads")->envname("CFDIM_JOBS");
  common(verify);

  auto* qt = app.add_subcommand("qterms", "the four resolvent scalars entering c20");
  common(qt);

  auto* expand = app.add_subcommand("expand", "terms of the hensley or good expansion");
  expand->add_option("family", family)->required();
  expand->add_option("--order", c.order, "expansion order")->envname("CFDIM_ORDER");
  expand->add_option("--at", fl.at_n, "evaluate the terms at this N");
  common(expand);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    check_format(fl.format);
    if (c.tail_order < 2 || c.tail_order > 16 || c.tail_order % 2)
      throw ParseError("--tail-order must be even and in [2, 16]");
    if (!(c.tol > 0)) throw ParseError("--tol must be positive");
    c.format = fl.format;
    if (*dim) return cmd_dim(spec, fl);
    if (*pres) return cmd_pressure(spec, fl);
    if (*coeffs) return cmd_coeffs(which, fl);
    if (*verify) return cmd_verify(family, fl);
    if (*qt) return cmd_qterms(fl);
    if (*expand) return cmd_expand(family, fl);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 1;
}
