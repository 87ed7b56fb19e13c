#pragma once

#include <stdexcept>
#include <vector>

#include "swlab/model.hpp"
#include "swlab/solution_sets.hpp"

namespace swlab {

/// Real vector indexed by lattice site n in [-halfwidth, halfwidth], with
/// zero Dirichlet closure beyond the ends.
struct LatticeVector {
  int halfwidth = 0;
  std::vector<double> data;

  LatticeVector() = default;
  explicit LatticeVector(int hw) : halfwidth(hw), data(2 * static_cast<std::size_t>(hw) + 1, 0.0) {}

  int size() const { return static_cast<int>(data.size()); }
  double& at_site(int n) { return data[static_cast<std::size_t>(n + halfwidth)]; }
  double at_site(int n) const { return data[static_cast<std::size_t>(n + halfwidth)]; }
  double get(int n) const { // zero outside the truncation
    return std::abs(n) <= halfwidth ? at_site(n) : 0.0;
  }

  double norm_inf() const;
  double norm_l1() const;
  double norm_l2() const;
};

LatticeVector operator-(const LatticeVector& a, const LatticeVector& b);

/// Default truncation: window plus ten sites of exponential tail room.
inline int default_lattice_halfwidth(const ModelParams& params) { return params.window_n + 10; }

/// Embeds a finite-mode solution as a lattice vector.
LatticeVector seed_from(const FiniteModeSolution& sol, int halfwidth);

/// Residual of the DNLSWE:
///   R_n = -beta (g_{n+1} + g_{n-1}) + f xi(n) g_n + nu g_n^3 - lambda g_n.
LatticeVector dnlswe_residual(const LatticeVector& g, double lambda_tilde,
                              const ModelParams& params);

/// Symmetric tridiagonal Jacobian of the residual in g.
struct TridiagJacobian {
  std::vector<double> sub;  // -beta
  std::vector<double> diag; // f xi(n) + 3 nu g_n^2 - lambda
  std::vector<double> sup;  // -beta
};

TridiagJacobian jacobian(const LatticeVector& g, double lambda_tilde, const ModelParams& params);

struct newton_error : std::runtime_error {
  double final_residual;
  int iterations;
  newton_error(const std::string& what, double res, int iters)
      : std::runtime_error(what), final_residual(res), iterations(iters) {}
};

struct LatticeSolution {
  LatticeVector g;
  double lambda_tilde = 0.0;
  double beta = 0.0;
  double residual_norm = 0.0; // final l-infinity residual
  int iterations = 0;
  std::vector<double> residual_history; // per accepted Newton step
  bool converged = false;
};

struct NewtonOptions {
  double tol = 1e-12;          // l-infinity residual target
  int max_iter = 50;
  double condition_cap = 1e12; // Jacobian condition estimate limit
  int max_halvings = 8;        // step damping attempts
};

/// Newton iteration at fixed lambda_tilde.  Throws newton_error on an
/// ill-conditioned Jacobian ("bifurcation-adjacent") or non-convergence.
LatticeSolution newton_solve(const LatticeVector& seed, double lambda_tilde,
                             const ModelParams& params, const NewtonOptions& opts = {});

/// The T_n stability diagnostic of the anticontinuous solution:
///   T_n = (f xi(n) - mu)/mu off the set, -2 (f xi(n) - mu)/mu on it.
struct StabilityDiagnostic {
  std::vector<double> t; // indexed n + halfwidth
  int halfwidth = 0;
  double inf_abs = 0.0;      // inf over all lattice sites
  double min_abs_on_set = 0.0;
  double min_abs_off_set = 0.0;
  bool exceeds_half = false; // inf_abs > 1/2

  double at_site(int n) const { return t[static_cast<std::size_t>(n + halfwidth)]; }
};

StabilityDiagnostic stability_diagnostic(const SolutionSet& set, const ModelParams& params);

struct ContinuationStep {
  double beta = 0.0;
  double lambda_tilde = 0.0;
  double l1_error = 0.0; // ||g(beta) - d||_1
  double residual = 0.0;
  int iterations = 0;
};

struct ContinuationResult {
  std::vector<ContinuationStep> steps;
  LatticeSolution final;
  bool completed = false;
  double last_good_beta = 0.0;
  std::string failure; // empty when completed
};

/// Homotopy in beta from 0 to beta_target at fixed lambda_tilde = mu^S,
/// log-spaced with Newton correction per step and bisection on failure.
ContinuationResult continue_in_beta(const FiniteModeSolution& sol0, const ModelParams& params,
                                    double beta_target, int n_steps,
                                    const NewtonOptions& opts = {});

struct NormalizedSolution {
  LatticeSolution solution;
  double lambda_tilde = 0.0;
  double lambda_shift = 0.0; // |lambda_tilde - mu^S|
};

/// Bordered system {R(g, lambda) = 0, ||g||_2^2 = 1} with lambda free.
NormalizedSolution continue_normalized(const FiniteModeSolution& sol0, const ModelParams& params,
                                       double beta_target, const NewtonOptions& opts = {});

struct BranchPoint {
  double nu_over_f = 0.0;
  double lambda_tilde_over_f = 0.0;
  double l1_error = 0.0;
  bool exists = false;
  std::string note;
};

/// Traces lambda_tilde(nu/f) for a fixed set at fixed beta, re-seeding from
/// the anticontinuous solution at each ratio.  Points where the seed loses
/// positivity are recorded as non-existent (branch below threshold).
std::vector<BranchPoint> branch_sweep_nu(const SolutionSet& set, const ModelParams& params_template,
                                         const std::vector<double>& nu_over_f_values, double beta);

} // namespace swlab
