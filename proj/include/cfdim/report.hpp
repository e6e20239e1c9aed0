#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace cfdim {

struct RunConfig {
  int grid = 0;  // 0: adaptive grid doubling
  int tail_order = 8;
  double tol = 1e-12;
  long long from = 0, to = 0;  // 0: family default
  long long step = 0;          // 0: doubling
  int order = 3;
  std::string format = "csv";
  int jobs = 1;

  nlohmann::json to_json() const;
};

struct SweepRow {
  long long N = 0;
  double delta_direct = 0.0;
  double err_direct = 0.0;
  double delta_expansion = 0.0;
  double residual = 0.0;  // delta_direct - delta_expansion

  bool operator==(const SweepRow&) const = default;
};

// |residual| ~ |constant| N^exponent log^log_power N, least squares in
// log-log coordinates.  `richardson` removes a 1/log N drift from the scaled
// residual using the last two rows and the expected exponent.
struct Fit {
  double exponent = 0.0;
  int log_power = 0;
  double constant = 0.0;
  double r2 = 0.0;
  double expected_exponent = 0.0;
  std::optional<double> richardson;
  int points = 0;
};

struct BoundCheck {
  std::string name;
  int rows_checked = 0;
  int rows_violating = 0;
};

struct SweepReport {
  std::string family;
  RunConfig config;
  std::vector<SweepRow> rows;
  Fit fit;
  std::vector<BoundCheck> bounds;
  nlohmann::json extra = nlohmann::json::object();
};

// %.17g
std::string format_double(double x);

extern const char* const kCsvHeader;
std::string to_csv(const std::vector<SweepRow>& rows);
// Throws ParseError on a bad header or malformed line.
std::vector<SweepRow> parse_csv(const std::string& text);

nlohmann::json to_json(const SweepReport& report);

struct LineFit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

// Fits the last half of the rows (at least two).
Fit fit_residuals(const std::vector<SweepRow>& rows, int log_power, double expected_exponent);

}  // namespace cfdim
