// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "cfdim/dimension.hpp"
#include "cfdim/euler_maclaurin.hpp"
#include "cfdim/expansions.hpp"
#include "cfdim/perturbation.hpp"
#include "cfdim/report.hpp"
#include "cfdim/series.hpp"

using namespace cfdim;

namespace {

const double kPi = std::acos(-1.0);

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records a sub-check; the criterion passes only if all do.
  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) o.check(false, fmt("runtime %.1fs over budget %.0fs", secs, budget_s));
  if (!o.pass) ++failures;
  std::printf("%s %2d  %-28s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
  std::fflush(stdout);
}

double delta_of(const std::string& spec) { return bowen_dimension(parse_alphabet(spec)).delta; }

double max_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

// Sum_{n=N}^{N+count-1} (n+x)^{-sigma}: double terms, compensated
// long double accumulation from the small end.
long double brute_sum(double sigma, long long N, double x, long long count) {
  long double sum = 0, comp = 0;
  for (long long k = count - 1; k >= 0; --k) {
    const long double term = std::pow(static_cast<double>(N + k) + x, -sigma);
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

Outcome gauss_fixed_point() {
  Outcome o;
  const GridPtr grid = make_grid(32);
  const auto t = dominant_eigentriple(assemble(parse_alphabet("geq:1"), 1.0, grid));
  const auto exact = GridFunction::sample(grid, [](double x) { return 1 / (1 + x); });
  const double lam = std::abs(t.lambda - 1), gerr = max_abs(t.g.values() - exact.values());
  const double mug = std::abs(t.measure(t.g) - std::log(2.0));
  const double mux = std::abs(t.measure(GridFunction::sample(grid, [](double x) { return x; })) - 0.5);
  o.check(lam < 1e-10, fmt("|lambda-1| %.1e", lam));
  o.check(gerr < 1e-10, fmt("|g-1/(1+x)| %.1e", gerr));
  o.check(mug < 1e-10, fmt("|mu g-log2| %.1e", mug));
  o.check(mux < 1e-9, fmt("|mu x-1/2| %.1e", mux));
  return o;
}

Outcome moment_identities() {
  Outcome o;
  const GridPtr grid = make_grid(64);
  const Alphabet N = parse_alphabet("geq:1");
  const auto ops = alpha_ops(N, 1.0, 3, grid);
  const auto t = dominant_eigentriple(ops[0]);
  for (int j = 1; j <= 3; ++j) {
    const double expect = (j % 2 ? -1.0 : 1.0) * (std::pow(2.0, j) - 1) * std::riemann_zeta(j + 1.0);
    const double err = std::abs(t.measure(apply(ops[static_cast<std::size_t>(j)], t.g)) - expect);
    o.check(err < 1e-8, "j=" + std::to_string(j) + fmt(" err %.1e", err));
  }
  return o;
}

Outcome dimension_bounds() {
  Outcome o;
  int jarnik = 0, kurz = 0, good = 0, jn = 0, kn = 0, gn = 0;
  for (long long N : {8, 16, 32, 64, 128, 1024}) {
    const double d = delta_of("leq:" + std::to_string(N));
    ++jn;
    jarnik += jarnik_bounds(N).contains(d);
    if (N >= 1000) {
      ++kn;
      kurz += kurzweil_bounds(N).contains(d);
    }
  }
  for (long long N : {20, 100, 1000}) {
    ++gn;
    good += good_bounds(N).contains(delta_of("geq:" + std::to_string(N)));
  }
  o.check(jarnik == jn, "Jarnik " + std::to_string(jarnik) + "/" + std::to_string(jn));
  o.check(kurz == kn, "Kurzweil " + std::to_string(kurz) + "/" + std::to_string(kn));
  o.check(good == gn, "Good " + std::to_string(good) + "/" + std::to_string(gn));
  return o;
}

struct Ladder {
  std::vector<double> N, delta;
};

const Ladder& hensley_ladder() {
  static const Ladder l = [] {
    Ladder r;
    for (long long n : {20, 40, 80, 160, 320, 640}) {
      r.N.push_back(double(n));
      r.delta.push_back(delta_of("leq:" + std::to_string(n)));
    }
    return r;
  }();
  return l;
}

const double& pipeline_c20() {
  static const double c = coefficient_c20(qterms(64));
  return c;
}

Outcome hensley() {
  Outcome o;
  const Ladder& l = hensley_ladder();
  const double c10 = c_ii1(1), c21 = c_ii1(2), c32 = c_ii1(3), c20 = pipeline_c20();
  const std::size_t n = l.N.size();

  // r1 N^2 / log N stays bounded.
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double N = l.N[i], L = std::log(N);
    worst = std::max(worst, std::abs((l.delta[i] - 1 - c10 / N) * N * N / L));
  }
  o.check(worst < 2 * std::abs(c21), fmt("max|r1 N^2/logN| %.3f", worst));

  // Slope of r1 N^2 in log N from the two largest N, after removing the
  // known c32 log^2 N / N^3 term.
  auto y = [&](std::size_t i) {
    const double N = l.N[i], L = std::log(N);
    return (l.delta[i] - 1 - c10 / N - c32 * L * L / (N * N * N)) * N * N;
  };
  const double A = (y(n - 1) - y(n - 2)) / (std::log(l.N[n - 1]) - std::log(l.N[n - 2]));
  const double rel = std::abs(A / c21 - 1);
  o.check(rel < 0.05, fmt("fitted c21 %.5f (rel err %.2e)", A, rel));

  // What is left after the c21 and c20 terms, divided by log^2 N.
  std::vector<double> x, lr;
  for (std::size_t i = 0; i < n; ++i) {
    const double N = l.N[i], L = std::log(N);
    const double r3 = l.delta[i] - 1 - c10 / N - c21 * L / (N * N) - c20 / (N * N);
    x.push_back(std::log(N));
    lr.push_back(std::log(std::abs(r3) / (L * L)));
  }
  const std::vector<double> xs(x.begin() + long(n / 2), x.end()), ys(lr.begin() + long(n / 2), lr.end());
  const double e = least_squares(xs, ys).slope;
  o.check(std::abs(e + 3) <= 0.2, fmt("third-order exponent %.3f", e));
  return o;
}

Outcome c20_cross_validation() {
  Outcome o;
  const double c10 = c_ii1(1), c21 = c_ii1(2);
  // y = (delta - 1 - c10/N - c21 L/N^2) N^2
  //   = c20 + (c32 L^2 + c31 L + c30)/N + (c43 L^3 + c42 L^2 + c41 L + c40)/N^2 + ...
  // The diagonal c32, c43, c54 are known in closed form and removed; c20 and
  // the five unknown off-diagonal coefficients come from least squares over a
  // doubling sweep N = 20 .. 10240.
  std::vector<double> Ns;
  for (long long N = 20; N <= 10240; N *= 2) Ns.push_back(double(N));
  const long n = static_cast<long>(Ns.size());
  Eigen::MatrixXd A(n, 6);
  Eigen::VectorXd b(n);
  for (long i = 0; i < n; ++i) {
    const double N = Ns[std::size_t(i)], L = std::log(N);
    const double d = delta_of("leq:" + std::to_string(static_cast<long long>(N)));
    double y = (d - 1 - c10 / N - c21 * L / (N * N)) * N * N;
    y -= c_ii1(3) * L * L / N + c_ii1(4) * L * L * L / (N * N) + c_ii1(5) * std::pow(L, 4) / (N * N * N);
    A.row(i) << 1.0, L / N, 1.0 / N, L * L / (N * N), L / (N * N), 1.0 / (N * N);
    b[i] = y;
  }
  const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);
  const double empirical = coef[0], pipeline = pipeline_c20();
  o.check(std::abs(empirical - pipeline) < 1e-3,
          fmt("empirical %.6f vs pipeline %.6f", empirical, pipeline) +
              fmt(" (diff %.1e)", std::abs(empirical - pipeline)));
  return o;
}

Outcome tree_and_diagonal() {
  Outcome o;
  const auto t = tree_coefficients(30);  // throws on any mismatch with the closed form
  bool exact = t.a.size() == 31;
  for (int j = 0; j <= 30; ++j) exact = exact && t.a[std::size_t(j)] == tree_closed_form(j);
  o.check(exact, "a_j exact for j <= 30");
  double worst = 0;
  for (int i = 1; i <= 20; ++i) worst = std::max(worst, std::abs(c_ii1(i) / c_ii1_via_tree(i) - 1));
  o.check(worst <= 1e-14, fmt("c_{i,i-1} routes rel %.1e", worst));
  // Two routes to the same double may differ in the last bit.
  const double eps = std::numeric_limits<double>::epsilon();
  const double e10 = std::abs(c_ii1(1) / (-6 / (kPi * kPi)) - 1);
  const double e21 = std::abs(c_ii1(2) / (-72 / std::pow(kPi, 4)) - 1);
  o.check(e10 <= 2 * eps && e21 <= 2 * eps, fmt("c10 rel %.1e, c21 rel %.1e", e10, e21));
  return o;
}

Outcome loglog_suite() {
  Outcome o;
  const auto c = loglog_coefficients(3);
  const Rational half = Rational(1) / 2;
  const bool exact = c.at(1, 1) == -1 && c.at(2, 1) == 1 && c.at(2, 2) == -half && c.at(3, 1) == -1 &&
                     c.at(3, 2) == 3 * half && c.at(3, 3) == Rational(-1) / 3;
  o.check(exact, "six rationals exact");
  double worst = 0;
  for (double C : {50.0, 200.0, 1000.0}) {
    const auto s = loglog_solve_numeric(C, [](double, double) { return 1.0; });
    worst = std::max(worst, std::abs(s.theta - s.theta_newton));
  }
  o.check(worst < 1e-12, fmt("solver vs Newton %.1e", worst));
  return o;
}

Outcome xi_property() {
  Outcome o;
  const GridPtr grid = make_grid(64);
  const Alphabet Nat = parse_alphabet("geq:1");
  const Base base = build_base(Nat, 1.0, grid);
  for (int N : {30, 100}) {
    const Alphabet Sp = parse_alphabet("leq:" + std::to_string(N));
    const double theta = delta_of("leq:" + std::to_string(N)) - 1.0;
    const double at = xi_residual(make_state(base, Nat, Sp, 1.0, theta), 8).value;
    const double off = xi_residual(make_state(base, Nat, Sp, 1.0, theta + 1e-3), 8).value;
    o.check(std::abs(at) < 1e-7, "leq:" + std::to_string(N) + fmt(" |Xi| %.1e", std::abs(at)));
    o.check(std::abs(off) > 5e-4, fmt("displaced %.2e", std::abs(off)));
  }
  const Alphabet empty = parse_alphabet("empty"), g30 = parse_alphabet("geq:30");
  const double d30 = delta_of("geq:30");
  const Base eb = build_base(empty, d30, grid);
  const double at = xi_residual(make_state(eb, empty, g30, d30, 0.0), 8).value;
  o.check(eb.cbar == 1.0 && std::abs(at) < 1e-7, fmt("geq:30 from empty |Xi| %.1e", std::abs(at)));
  return o;
}

Outcome base_construction() {
  Outcome o;
  const GridPtr grid = make_grid(32);
  const Base b = build_base(parse_alphabet("set:2"), 0.5, grid);
  const auto& g = b.triple.g.values();
  const auto& mu = b.triple.mu;
  const double rg = max_abs(b.L.matrix * g - g), rm = max_abs(b.L.matrix.transpose() * mu - mu);
  const double gap = spectral_gap(b.L);
  o.check(rg < 1e-9 && rm < 1e-9, fmt("{2}: |Lg-g| %.1e, |muL-mu| %.1e", rg, rm));
  o.check(gap < 1, fmt("gap %.4f", gap));
  const Base e = build_base(parse_alphabet("empty"), 0.5, grid);
  Eigen::MatrixXd hnu = Eigen::MatrixXd::Zero(grid->size(), grid->size());
  hnu.col(0).setOnes();
  const double diff = (e.L.matrix - hnu).cwiseAbs().maxCoeff(), egap = spectral_gap(e.L);
  o.check(diff == 0 && egap < 1e-12, fmt("empty: |L - h nu| %.1e, gap %.1e", diff, egap));
  return o;
}

Outcome example_families() {
  Outcome o;
  // Pair family: statistic (2 theta log N - log phi) N^2 log N against c21.
  const double c21 = pair_c21();
  std::vector<double> stat, alt;
  for (long long N : {50, 100, 200, 400}) {
    const auto r = pair_example_theta(N);
    stat.push_back(r.statistic);
    alt.push_back(r.alt_statistic);
  }
  const double rel = std::abs(stat.back() / c21 - 1);
  o.check(rel < 0.10, fmt("pair constant %.4g vs c21 %.4f", stat.back(), c21) +
                          fmt(" (first %.4g; log-2 statistic %.4f", stat.front(), alt.back()) + ")");
  // Fibonacci tails: residual N / log log N bounded.
  double lo = INFINITY, hi = 0;
  for (long long N = 10; N <= 40; N += 5) {
    const double s = std::abs(fibonacci_family_check(N).statistic);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  o.check(std::isfinite(hi) && hi < 1.0, fmt("fib |residual N/loglogN| in [%.3f, %.3f]", lo, hi));
  return o;
}

Outcome euler_maclaurin() {
  Outcome o;
  std::mt19937_64 rng(20261015);
  std::uniform_real_distribution<double> two_s(1.1, 2.5), xs(0.0, 1.0);
  std::uniform_int_distribution<long long> Ns(1, 2000);
  const long long K = 10000000;
  const double eps = std::numeric_limits<double>::epsilon();
  // Tails from N and N + K differ by the K brute-force terms.  The allowance
  // is the two remainder bounds plus 4 ulp of each double result; the default
  // bounds sit below double resolution, so the low-order configuration
  // (p = 4, loose rel_tol) is checked as well, where the bound dominates.
  struct Tally {
    int ok = 0;
    double worst = 0;
    void add(double diff, double allowance) {
      ok += diff <= allowance;
      worst = std::max(worst, diff / allowance);
    }
  } hurwitz, hurwitz4, em;
  const EmTail tail = em_tail(12, BernoulliSign::plus);
  for (int trial = 0; trial < 10; ++trial) {
    const double sigma = two_s(rng), s = sigma / 2, x = xs(rng);
    const long long N = Ns(rng);
    const long double brute = brute_sum(sigma, N, x, K);
    for (int p : {8, 4}) {
      const double rel = p == 8 ? 1e-17 : 1e-8;
      const TailSum a = hurwitz_tail(s, N, x, p, rel), b = hurwitz_tail(s, N + K, x, p, rel);
      const double diff = std::abs(static_cast<double>(static_cast<long double>(a.value) - b.value - brute));
      (p == 8 ? hurwitz : hurwitz4)
          .add(diff, a.remainder_bound + b.remainder_bound + 4 * eps * (a.value + b.value));
    }
    const long double brute0 = brute_sum(sigma, N, 0.0, K);
    const double alpha = sigma - 1;
    const double ea = tail.evaluate(alpha, N), eb = tail.evaluate(alpha, N + K);
    em.add(std::abs(static_cast<double>(static_cast<long double>(ea) - eb - brute0)),
           tail.remainder_bound(alpha, N) + tail.remainder_bound(alpha, N + K) + 4 * eps * (ea + eb));
  }
  auto line = [](const char* name, const Tally& t) {
    return std::string(name) + " " + std::to_string(t.ok) + "/10" + fmt(" (worst %.2f of allowance)", t.worst);
  };
  o.check(hurwitz.ok == 10, line("hurwitz_tail", hurwitz));
  o.check(hurwitz4.ok == 10, line("hurwitz_tail p=4", hurwitz4));
  o.check(em.ok == 10, line("em_tail", em));
  return o;
}

}  // namespace

int main() {
  criterion(1, "Gauss fixed point", 1, gauss_fixed_point);
  criterion(2, "moment identities", 5, moment_identities);
  criterion(3, "dimension bounds", 120, dimension_bounds);
  criterion(4, "Hensley ladder", 180, hensley);
  criterion(5, "c20 cross-validation", 180, c20_cross_validation);
  criterion(6, "tree/diagonal coefficients", 1, tree_and_diagonal);
  criterion(7, "log-log-log suite", 1, loglog_suite);
  criterion(8, "Xi residual", 60, xi_property);
  criterion(9, "base construction", 1, base_construction);
  criterion(10, "example families", 120, example_families);
  criterion(11, "Euler-Maclaurin", 60, euler_maclaurin);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
