#pragma once

#include <vector>

#include "cfdim/spectral.hpp"

namespace cfdim {

// An operator with right and left fixed points g, mu (mu h = 1, g(0) = 1)
// and the factorization of I - R, R = L - c g mu.
struct Base {
  DiscretizedOperator L;
  Eigentriple triple;
  double c = 0.0;       // 1 / (mu g)
  double cbar = 0.0;    // 0 when the alphabet is regular at delta
  double rho_L1 = 0.0;  // spectral radius of the unmodified operator
  Eigen::MatrixXd R;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;  // of I - R

  const GridPtr& grid() const { return L.grid; }
};

// Regular case (rho(L1) = 1): L = L1.  Subcritical case: L = L1 + cbar h nu
// with cbar = 1 / (nu (I - L1)^{-1} h).
Base build_base(const Alphabet& S, double delta, const GridPtr& grid, int p = 8,
                double regular_tol = 1e-9);

GridFunction resolvent_apply(const Base& base, const GridFunction& f);
// sum_{n < terms} R^n f, for cross-checking the direct solve.
GridFunction resolvent_apply_neumann(const Base& base, const GridFunction& f, int terms);
// mu Q as node weights.
Eigen::VectorXd resolvent_apply_left(const Base& base, const Eigen::VectorXd& weights);

struct PerturbationState {
  const Base* base = nullptr;
  DiscretizedOperator prime;
  Eigen::MatrixXd delta_op;  // L' - L
  double delta = 0.0;
  double theta = 0.0;
  std::vector<double> eta;  // eta_0 .. eta_{n-1}
  double xi = 0.0;          // eta_0 - cbar
};

// S' operator at delta + theta against the base built at delta.
PerturbationState make_state(const Base& base, const Alphabet& S, const Alphabet& S_prime,
                             double delta, double theta, int n_eta = 3, int p = 8);

struct XiResult {
  double value = 0.0;
  std::vector<double> terms;  // mu Delta (Q Delta)^p g
  double tail_bound = 0.0;    // geometric estimate of the omitted terms
};

XiResult xi_residual(const PerturbationState& state, int p_max = 8);

struct QTermValue {
  double value;
  double error_estimate;
};

struct QTerms {
  QTermValue mu_phi_Q_Lphi_g;  // mu M_phi Q L M_phi g
  QTermValue mu_phi_Q_h;       // mu M_phi Q h
  QTermValue nu_Q_Lphi_g;      // nu Q L M_phi g
  QTermValue nu_Q_h;           // nu Q h
  double zeta2 = 0.0;          // -mu alpha_1 g from the operator
  double zeta3 = 0.0;          // mu alpha_2 g / 3 from the operator
  int m = 0;
};

// Gauss operator at delta = 1 on grids m and 2m.
QTerms qterms(int m = 64, int p = 8);

// nu Q h by 1 + sum_{n >= 1} (L^n 1(0) - c g(0) mu 1), stopped once gap^n < cutoff.
double nu_Q_h_neumann(const Base& base, double cutoff = 1e-12);

// 3/2 - 2/zeta(2) + 3 zeta(3)/zeta(2)^2
double c20_analytic_part();

double coefficient_c20(const QTerms& q);

struct LeadingCoefficients {
  double c10;  // 1 / (mu alpha_1 g)
  double c21;  // -2 c10^2
};
LeadingCoefficients leading_coefficients(const QTerms& q);

}  // namespace cfdim
