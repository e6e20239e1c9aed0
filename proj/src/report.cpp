#include "cfdim/report.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cfdim/errors.hpp"

namespace cfdim {

const char* const kCsvHeader = "N,delta_direct,err_direct,delta_expansion,residual";

nlohmann::json RunConfig::to_json() const {
  return {{"grid", grid},   {"tail_order", tail_order}, {"tol", tol},   {"from", from},
          {"to", to},       {"step", step},             {"order", order}, {"format", format},
          {"jobs", jobs}};
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += std::to_string(r.N) + "," + format_double(r.delta_direct) + "," +
           format_double(r.err_direct) + "," + format_double(r.delta_expansion) + "," +
           format_double(r.residual) + "\n";
  }
  return out;
}

namespace {

double parse_field(const std::string& s, int line) {
  // strtod rather than stod: stod rejects the subnormals %.17g can emit.
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || std::isspace(static_cast<unsigned char>(s[0])) || end != s.c_str() + s.size())
    throw ParseError("csv line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

}  // namespace

std::vector<SweepRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ParseError("csv: unexpected header");
  std::vector<SweepRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 5) throw ParseError("csv line " + std::to_string(lineno) + ": expected 5 fields");
    SweepRow r;
    auto [p, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), r.N);
    if (ec != std::errc() || p != f[0].data() + f[0].size())
      throw ParseError("csv line " + std::to_string(lineno) + ": bad N");
    r.delta_direct = parse_field(f[1], lineno);
    r.err_direct = parse_field(f[2], lineno);
    r.delta_expansion = parse_field(f[3], lineno);
    r.residual = parse_field(f[4], lineno);
    rows.push_back(r);
  }
  return rows;
}

namespace {

nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const SweepReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"N", r.N},
                    {"delta_direct", number_or_null(r.delta_direct)},
                    {"err_direct", number_or_null(r.err_direct)},
                    {"delta_expansion", number_or_null(r.delta_expansion)},
                    {"residual", number_or_null(r.residual)}});
  const Fit& f = report.fit;
  nlohmann::json fit = {{"exponent", number_or_null(f.exponent)},
                        {"log_power", f.log_power},
                        {"constant", number_or_null(f.constant)},
                        {"r2", number_or_null(f.r2)},
                        {"expected_exponent", f.expected_exponent},
                        {"points", f.points},
                        {"richardson", f.richardson ? number_or_null(*f.richardson) : nlohmann::json(nullptr)}};
  nlohmann::json bounds = nlohmann::json::array();
  for (const auto& b : report.bounds)
    bounds.push_back({{"name", b.name}, {"rows_checked", b.rows_checked},
                      {"rows_violating", b.rows_violating}});
  return {{"family", report.family}, {"config", report.config.to_json()},
          {"rows", rows},           {"fit", fit},
          {"bounds", bounds},       {"extra", report.extra}};
}

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DomainError("least_squares: need at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("least_squares: degenerate abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

Fit fit_residuals(const std::vector<SweepRow>& rows, int log_power, double expected_exponent) {
  Fit fit;
  fit.log_power = log_power;
  fit.expected_exponent = expected_exponent;
  std::vector<const SweepRow*> use;
  for (const auto& r : rows)
    if (r.residual != 0.0 && std::isfinite(r.residual)) use.push_back(&r);
  if (use.size() < 2) {
    fit.exponent = fit.constant = fit.r2 = std::nan("");
    return fit;
  }
  const std::size_t start = use.size() >= 4 ? use.size() / 2 : 0;
  std::vector<double> x, y;
  double sign = 0.0;
  for (std::size_t i = start; i < use.size(); ++i) {
    const double n = static_cast<double>(use[i]->N), L = std::log(n);
    x.push_back(L);
    y.push_back(std::log(std::abs(use[i]->residual) / std::pow(L, log_power)));
    sign += use[i]->residual > 0 ? 1 : -1;
  }
  const LineFit lf = least_squares(x, y);
  fit.exponent = lf.slope;
  fit.constant = (sign >= 0 ? 1.0 : -1.0) * std::exp(lf.intercept);
  fit.r2 = lf.r2;
  fit.points = static_cast<int>(x.size());

  // s(N) = residual N^{-e} / log^k N = A + B / log N on the last two rows.
  const SweepRow& a = *use[use.size() - 2];
  const SweepRow& b = *use.back();
  auto scaled = [&](const SweepRow& r) {
    const double n = static_cast<double>(r.N), L = std::log(n);
    return r.residual * std::pow(n, -expected_exponent) / std::pow(L, log_power);
  };
  const double La = std::log(static_cast<double>(a.N)), Lb = std::log(static_cast<double>(b.N));
  fit.richardson = (scaled(b) * Lb - scaled(a) * La) / (Lb - La);
  return fit;
}

}  // namespace cfdim
