#include "cfdim/perturbation.hpp"

#include <boost/math/special_functions/zeta.hpp>
#include <cmath>

#include "cfdim/errors.hpp"
#include "cfdim/tail_sums.hpp"

namespace cfdim {

namespace {

void factor(Base& b) {
  const int m = b.L.size();
  b.c = 1.0 / b.triple.measure(b.triple.g);
  b.R = b.L.matrix - b.c * b.triple.g.values() * b.triple.mu.transpose();
  b.lu.compute(Eigen::MatrixXd::Identity(m, m) - b.R);
  // A nearly singular I - R means the base has no usable spectral gap.
  const double diag_min = b.lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(diag_min > 1e-12)) throw NumericalError("resolvent: I - R is singular");
}

double power_sum(const Alphabet& a, double sigma, int p) {
  if (a.is_empty()) return 0.0;
  return alphabet_power_sum(a, sigma, p);
}

}  // namespace

Base build_base(const Alphabet& S, double delta, const GridPtr& grid, int p, double regular_tol) {
  const int m = grid->size();
  DiscretizedOperator L1 = assemble(S, delta, grid, p);
  const double rho = S.is_empty() ? 0.0 : dominant_eigenvalue(L1.matrix);
  if (rho > 1.0 + regular_tol)
    throw NumericalError("build_base: spectral radius exceeds 1 (delta below the dimension of S)");
  if (std::abs(rho - 1.0) <= regular_tol) {
    Base b{L1, dominant_eigentriple(L1), 0.0, 0.0, rho, {}, {}};
    factor(b);
    return b;
  }
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(m, m);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu1(I - L1.matrix);
  const Eigen::VectorXd h = Eigen::VectorXd::Ones(m);
  const Eigen::VectorXd q = lu1.solve(h);
  const double cbar = 1.0 / q[0];
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(m);
  e0[0] = 1.0;
  Eigen::VectorXd mu = lu1.transpose().solve(e0);
  mu /= mu.sum();
  Eigen::VectorXd g = q / q[0];
  DiscretizedOperator L = L1;
  L.matrix.col(0).array() += cbar;  // + cbar h nu
  Eigentriple t{1.0, GridFunction(grid, g), mu, 0.0, 0.0};
  t.residual_right = (L.matrix * g - g).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff();
  t.residual_left = (L.matrix.transpose() * mu - mu).cwiseAbs().sum() / mu.cwiseAbs().sum();
  Base b{L, t, 0.0, cbar, rho, {}, {}};
  factor(b);
  return b;
}

GridFunction resolvent_apply(const Base& base, const GridFunction& f) {
  require_same_grid(*base.grid(), *f.grid());
  return GridFunction(f.grid(), base.lu.solve(f.values()));
}

GridFunction resolvent_apply_neumann(const Base& base, const GridFunction& f, int terms) {
  require_same_grid(*base.grid(), *f.grid());
  Eigen::VectorXd term = f.values(), sum = Eigen::VectorXd::Zero(f.size());
  for (int n = 0; n < terms; ++n) {
    sum += term;
    term = base.R * term;
  }
  return GridFunction(f.grid(), sum);
}

Eigen::VectorXd resolvent_apply_left(const Base& base, const Eigen::VectorXd& weights) {
  return base.lu.transpose().solve(weights);
}

PerturbationState make_state(const Base& base, const Alphabet& S, const Alphabet& S_prime,
                             double delta, double theta, int n_eta, int p) {
  PerturbationState st;
  st.base = &base;
  st.delta = delta;
  st.theta = theta;
  st.prime = assemble(S_prime, delta + theta, base.grid(), p);
  st.delta_op = st.prime.matrix - base.L.matrix;
  for (int i = 0; i < n_eta; ++i) {
    const double sigma = 2.0 * (delta + theta) + i;
    st.eta.push_back(power_sum(S_prime, sigma, p) - power_sum(S, sigma, p));
  }
  st.xi = (st.eta.empty() ? 0.0 : st.eta[0]) - base.cbar;
  return st;
}

XiResult xi_residual(const PerturbationState& st, int p_max) {
  const Base& b = *st.base;
  const Eigen::VectorXd& mu = b.triple.mu;
  XiResult r;
  Eigen::VectorXd u = st.delta_op * b.triple.g.values();
  r.terms.push_back(mu.dot(u));
  for (int k = 1; k <= p_max; ++k) {
    u = st.delta_op * b.lu.solve(u);
    r.terms.push_back(mu.dot(u));
  }
  for (double t : r.terms) r.value += t;
  const std::size_t n = r.terms.size();
  if (n >= 3) {
    const double t1 = std::abs(r.terms[n - 1]), t0 = std::abs(r.terms[n - 2]);
    const double scale = std::abs(r.terms[0]) + 1e-300;
    if (t1 > t0 && std::abs(r.terms[n - 2]) > std::abs(r.terms[n - 3]) && t1 > 1e-14 * scale)
      throw NumericalError("xi_residual: partial sums diverge (perturbation too large)");
    const double ratio = t0 > 0 ? t1 / t0 : 0.0;
    r.tail_bound = ratio < 1 ? t1 * ratio / (1 - ratio) : t1;
  }
  return r;
}

double nu_Q_h_neumann(const Base& base, double cutoff) {
  const double gap = spectral_gap(base.L);
  const int nmax = gap > 0 ? static_cast<int>(std::ceil(std::log(cutoff) / std::log(gap))) : 1;
  const double proj = base.c * base.triple.g[0] * base.triple.mu.sum();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(base.L.size());
  double s = 1.0;
  for (int n = 1; n <= nmax; ++n) {
    v = base.L.matrix * v;
    s += v[0] - proj;
  }
  return s;
}

namespace {

struct RawQ {
  double t1, t2, t3, t4, z2, z3;
};

RawQ qterms_at(int m, int p) {
  const Alphabet N = parse_alphabet("geq:1");
  auto grid = make_grid(m);
  Base b = build_base(N, 1.0, grid, p);
  const GridFunction& g = b.triple.g;
  const GridFunction h = GridFunction::constant(grid, 1.0);
  auto alphas = alpha_ops(N, 1.0, 2, grid, p);
  const GridFunction Lphi_g = apply_L_phi(N, 1.0, 1, g, p);
  const GridFunction Q_Lphi_g = resolvent_apply(b, Lphi_g);
  const GridFunction Q_h = resolvent_apply(b, h);
  RawQ r;
  r.t1 = b.triple.measure(apply_L_phi(N, 1.0, 1, Q_Lphi_g, p));
  r.t2 = b.triple.measure(apply_L_phi(N, 1.0, 1, Q_h, p));
  r.t3 = Q_Lphi_g[0];
  r.t4 = Q_h[0];
  r.z2 = -b.triple.measure(apply(alphas[1], g));
  r.z3 = b.triple.measure(apply(alphas[2], g)) / 3.0;
  return r;
}

}  // namespace

QTerms qterms(int m, int p) {
  const RawQ a = qterms_at(m, p), b = qterms_at(2 * m, p);
  QTerms q;
  q.mu_phi_Q_Lphi_g = {b.t1, std::abs(b.t1 - a.t1)};
  q.mu_phi_Q_h = {b.t2, std::abs(b.t2 - a.t2)};
  q.nu_Q_Lphi_g = {b.t3, std::abs(b.t3 - a.t3)};
  q.nu_Q_h = {b.t4, std::abs(b.t4 - a.t4)};
  q.zeta2 = b.z2;
  q.zeta3 = b.z3;
  q.m = 2 * m;
  return q;
}

double c20_analytic_part() {
  const double z2 = M_PI * M_PI / 6.0;
  const double z3 = boost::math::zeta(3.0);
  return 1.5 - 2.0 / z2 + 3.0 * z3 / (z2 * z2);
}

double coefficient_c20(const QTerms& q) {
  const double z2 = q.zeta2, z3 = q.zeta3;
  const double a = 1.0 / z2;
  const double analytic = 1.5 - 2.0 / z2 + 3.0 * z3 / (z2 * z2);
  const double bracket = a * a * q.mu_phi_Q_Lphi_g.value + a * q.mu_phi_Q_h.value +
                         a * q.nu_Q_Lphi_g.value + q.nu_Q_h.value;
  return (analytic + bracket) / z2;
}

LeadingCoefficients leading_coefficients(const QTerms& q) {
  const double c10 = -1.0 / q.zeta2;
  return {c10, -2.0 * c10 * c10};
}

}  // namespace cfdim
