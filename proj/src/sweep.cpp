#include "cfdim/sweep.hpp"

#include <cmath>

#include "cfdim/errors.hpp"
#include "cfdim/expansions.hpp"

namespace cfdim {

const std::vector<std::string> kSweepFamilies{"hensley", "good", "pair", "one-n", "fib"};

namespace {

const double kLogPhi = std::log((1.0 + std::sqrt(5.0)) / 2.0);

struct Defaults {
  long long from, to, step;
};

Defaults family_defaults(const std::string& family) {
  if (family == "hensley") return {20, 640, 0};
  if (family == "good") return {20, 2560, 0};
  if (family == "pair") return {50, 400, 0};
  if (family == "one-n") return {16, 16384, 0};
  if (family == "fib") return {10, 40, 5};
  throw ParseError("unknown family '" + family + "' (expected hensley, good, pair, one-n or fib)");
}

void check_bound(BoundCheck& b, const Interval& iv, double x) {
  ++b.rows_checked;
  if (!iv.contains(x)) ++b.rows_violating;
}

struct Point {
  SweepRow row;
  nlohmann::json extra;
};

}  // namespace

RunConfig resolve_family_defaults(const std::string& family, RunConfig cfg) {
  const Defaults d = family_defaults(family);
  if (cfg.from == 0) cfg.from = d.from;
  if (cfg.to == 0) cfg.to = std::max(cfg.from, d.to);
  if (cfg.step == 0) cfg.step = d.step;
  return cfg;
}

std::vector<long long> sweep_points(const RunConfig& cfg) {
  if (cfg.from < 1 || cfg.to < cfg.from) throw ParseError("invalid N-range");
  if (cfg.step < 0) throw ParseError("step must be non-negative");
  std::vector<long long> out;
  for (long long n = cfg.from; n <= cfg.to; n = cfg.step > 0 ? n + cfg.step : 2 * n) out.push_back(n);
  return out;
}

DimensionOptions dimension_options(const RunConfig& cfg) {
  DimensionOptions opt;
  opt.tol = cfg.tol;
  opt.tail_order = cfg.tail_order;
  if (cfg.grid > 0) {
    if (cfg.grid < 16) throw ParseError("grid size must be at least 16");
    opt.m_start = cfg.grid / 2;
    opt.m_max = cfg.grid;
    opt.require_tol = false;
  }
  return opt;
}

SweepReport run_verify(const std::string& family, const RunConfig& cfg_in) {
  const RunConfig cfg = resolve_family_defaults(family, cfg_in);
  const auto Ns = sweep_points(cfg);
  const DimensionOptions opt = dimension_options(cfg);
  SweepReport rep;
  rep.family = family;
  rep.config = cfg;

  std::function<Point(std::size_t)> eval;
  int log_power = 0;
  double expected = 0.0;

  std::optional<HensleyExpansion> hensley;
  if (family == "hensley") {
    if (cfg.order < 1 || cfg.order > 3) throw ParseError("hensley: --order must be 1, 2 or 3");
    const QTerms q = qterms(cfg.grid > 0 ? cfg.grid / 2 : 32, cfg.tail_order);
    hensley = hensley_expansion(cfg.order, q);
    nlohmann::json coeffs = nlohmann::json::object();
    for (const auto& [ij, c] : hensley->coefficients)
      coeffs["c" + std::to_string(ij.first) + std::to_string(ij.second)] = c;
    rep.extra["coefficients"] = coeffs;
    // Leading omitted term: c21 log N/N^2, c32 log^2 N/N^3, then c31 log N/N^3.
    static const int kLog[] = {0, 1, 2, 1};
    log_power = kLog[cfg.order];
    expected = cfg.order == 1 ? -2.0 : -3.0;
    eval = [&](std::size_t i) {
      const long long N = Ns[i];
      const auto d = bowen_dimension(parse_alphabet("leq:" + std::to_string(N)), opt);
      const double e = hensley->evaluate(static_cast<double>(N));
      return Point{{N, d.delta, d.error_estimate, e, d.delta - e}, {}};
    };
  } else if (family == "good") {
    if (cfg.order < 0 || cfg.order > 12) throw ParseError("good: --order must be in [0, 12]");
    log_power = -1;
    expected = 0.0;
    eval = [&](std::size_t i) {
      const long long N = Ns[i];
      if (N < 20) throw DomainError("good: N must be at least 20");
      const auto d = bowen_dimension(parse_alphabet("geq:" + std::to_string(N)), opt);
      const double e = good_estimate(N, cfg.order);
      return Point{{N, d.delta, d.error_estimate, e, d.delta - e}, {}};
    };
  } else if (family == "pair") {
    // delta_expansion is the leading term, so the fit targets c21 / 2.
    log_power = -2;
    expected = -2.0;
    rep.extra["c21"] = pair_c21();
    eval = [&](std::size_t i) {
      const ExampleReport r = pair_example_theta(Ns[i], opt);
      const double lead = kLogPhi / (2.0 * std::log(static_cast<double>(Ns[i])));
      return Point{{r.N, r.direct, r.direct_error, lead, r.direct - lead},
                   {{"N", r.N}, {"statistic", r.statistic}, {"alt_statistic", r.alt_statistic}}};
    };
  } else if (family == "one-n") {
    log_power = -1;
    expected = 0.0;
    eval = [&](std::size_t i) {
      const ExampleReport r = one_n_example_theta(Ns[i], opt);
      return Point{{r.N, r.direct, r.direct_error, r.prediction, r.residual},
                   {{"N", r.N}, {"alt_residual", r.alt_residual}, {"loglog_theta", r.statistic}}};
    };
  } else if (family == "fib") {
    log_power = 0;
    expected = -1.0;
    eval = [&](std::size_t i) {
      const ExampleReport r = fibonacci_family_check(Ns[i], opt);
      return Point{{r.N, r.direct, r.direct_error, r.prediction, r.residual},
                   {{"N", r.N}, {"statistic", r.statistic}}};
    };
  } else {
    family_defaults(family);
  }

  const auto points = parallel_map<Point>(Ns.size(), cfg.jobs, eval);
  nlohmann::json per_row = nlohmann::json::array();
  for (const auto& p : points) {
    rep.rows.push_back(p.row);
    if (!p.extra.is_null()) per_row.push_back(p.extra);
  }
  if (!per_row.empty()) rep.extra["per_row"] = per_row;
  rep.fit = fit_residuals(rep.rows, log_power, expected);

  if (family == "hensley") {
    BoundCheck jarnik{"jarnik"}, kurzweil{"kurzweil"};
    for (const auto& r : rep.rows) {
      if (r.N >= 8) check_bound(jarnik, jarnik_bounds(r.N), r.delta_direct);
      if (r.N >= 1000) check_bound(kurzweil, kurzweil_bounds(r.N), r.delta_direct);
    }
    rep.bounds = {jarnik, kurzweil};
  } else if (family == "good") {
    BoundCheck direct{"good(direct)"}, estimate{"good(estimate)"};
    for (const auto& r : rep.rows) {
      check_bound(direct, good_bounds(r.N), r.delta_direct);
      check_bound(estimate, good_bounds(r.N), r.delta_expansion);
    }
    rep.bounds = {direct, estimate};
  }
  return rep;
}

}  // namespace cfdim
