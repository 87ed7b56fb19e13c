#include "swlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swlab/tridiag.hpp"

namespace swlab {

double LatticeVector::norm_inf() const {
  double m = 0.0;
  for (double v : data) m = std::max(m, std::abs(v));
  return m;
}

double LatticeVector::norm_l1() const {
  double s = 0.0;
  for (double v : data) s += std::abs(v);
  return s;
}

double LatticeVector::norm_l2() const {
  double s = 0.0;
  for (double v : data) s += v * v;
  return std::sqrt(s);
}

LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
  if (a.halfwidth != b.halfwidth) throw std::invalid_argument("LatticeVector: size mismatch");
  LatticeVector out(a.halfwidth);
  for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] - b.data[i];
  return out;
}

LatticeVector seed_from(const FiniteModeSolution& sol, int halfwidth) {
  LatticeVector v(halfwidth);
  for (const auto& [site, d] : sol.amplitudes) {
    if (std::abs(site) > halfwidth)
      throw std::invalid_argument("seed_from: set site outside the lattice truncation");
    v.at_site(site) = d;
  }
  return v;
}

LatticeVector dnlswe_residual(const LatticeVector& g, double lambda_tilde,
                              const ModelParams& params) {
  LatticeVector r(g.halfwidth);
  for (int n = -g.halfwidth; n <= g.halfwidth; ++n) {
    const double gn = g.at_site(n);
    r.at_site(n) = -params.beta * (g.get(n + 1) + g.get(n - 1)) +
                   params.f * params.xi(n) * gn + params.nu * gn * gn * gn - lambda_tilde * gn;
  }
  return r;
}

TridiagJacobian jacobian(const LatticeVector& g, double lambda_tilde, const ModelParams& params) {
  const int n = g.size();
  TridiagJacobian j;
  j.sub.assign(static_cast<std::size_t>(n - 1), -params.beta);
  j.sup = j.sub;
  j.diag.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const int site = k - g.halfwidth;
    const double gn = g.data[static_cast<std::size_t>(k)];
    j.diag[static_cast<std::size_t>(k)] =
        params.f * params.xi(site) + 3.0 * params.nu * gn * gn - lambda_tilde;
  }
  return j;
}

LatticeSolution newton_solve(const LatticeVector& seed, double lambda_tilde,
                             const ModelParams& params, const NewtonOptions& opts) {
  LatticeSolution out;
  out.g = seed;
  out.lambda_tilde = lambda_tilde;
  out.beta = params.beta;

  {
    const TridiagJacobian j0 = jacobian(seed, lambda_tilde, params);
    const double cond = condition_inf(j0.sub, j0.diag, j0.sup);
    if (!(cond < opts.condition_cap))
      throw newton_error("newton_solve: Jacobian ill-conditioned at seed (estimate " +
                             std::to_string(cond) + "), bifurcation-adjacent, refine nu/f",
                         0.0, 0);
  }

  LatticeVector r = dnlswe_residual(out.g, lambda_tilde, params);
  double rnorm = r.norm_inf();
  out.residual_history.push_back(rnorm);

  for (int it = 0; it < opts.max_iter && rnorm >= opts.tol; ++it) {
    const TridiagJacobian j = jacobian(out.g, lambda_tilde, params);
    std::vector<double> step;
    try {
      step = solve_tridiag(j.sub, j.diag, j.sup, r.data);
    } catch (const std::runtime_error&) {
      throw newton_error("newton_solve: singular Jacobian, bifurcation-adjacent, refine nu/f",
                         rnorm, it);
    }

    // Undamped first; halve on residual increase.
    double scale = 1.0;
    LatticeVector trial(out.g.halfwidth);
    double trial_norm = 0.0;
    for (int halvings = 0; halvings <= opts.max_halvings; ++halvings) {
      for (std::size_t i = 0; i < trial.data.size(); ++i)
        trial.data[i] = out.g.data[i] - scale * step[i];
      trial_norm = dnlswe_residual(trial, lambda_tilde, params).norm_inf();
      if (trial_norm < rnorm) break;
      scale *= 0.5;
    }
    if (!(trial_norm < rnorm))
      throw newton_error("newton_solve: no descent after step halving (residual " +
                             std::to_string(rnorm) + ")",
                         rnorm, it);
    out.g = trial;
    rnorm = trial_norm;
    out.iterations = it + 1;
    out.residual_history.push_back(rnorm);
    r = dnlswe_residual(out.g, lambda_tilde, params);
  }

  out.residual_norm = rnorm;
  out.converged = rnorm < opts.tol;
  if (!out.converged)
    throw newton_error("newton_solve: no convergence in " + std::to_string(opts.max_iter) +
                           " iterations, final residual " + std::to_string(rnorm),
                       rnorm, out.iterations);
  return out;
}

StabilityDiagnostic stability_diagnostic(const SolutionSet& set, const ModelParams& params) {
  const double mu = energy_of(set, params);
  if (mu == 0.0) throw std::domain_error("stability_diagnostic: mu^S = 0, singular scaling");
  const int hw = default_lattice_halfwidth(params);
  const auto sites = set.sites();

  StabilityDiagnostic d;
  d.halfwidth = hw;
  d.t.resize(2 * static_cast<std::size_t>(hw) + 1);
  d.inf_abs = std::numeric_limits<double>::infinity();
  d.min_abs_on_set = std::numeric_limits<double>::infinity();
  d.min_abs_off_set = std::numeric_limits<double>::infinity();
  for (int n = -hw; n <= hw; ++n) {
    const bool on = std::find(sites.begin(), sites.end(), n) != sites.end();
    const double base = (params.f * params.xi(n) - mu) / mu;
    const double tn = on ? -2.0 * base : base;
    d.t[static_cast<std::size_t>(n + hw)] = tn;
    d.inf_abs = std::min(d.inf_abs, std::abs(tn));
    (on ? d.min_abs_on_set : d.min_abs_off_set) =
        std::min(on ? d.min_abs_on_set : d.min_abs_off_set, std::abs(tn));
  }
  d.exceeds_half = d.inf_abs > 0.5;
  return d;
}

namespace {

std::vector<double> beta_schedule(double beta_target, double lambda_tilde, int n_steps) {
  if (beta_target == 0.0) return {};
  if (lambda_tilde != 0.0 && beta_target / std::abs(lambda_tilde) < 1e-4) return {beta_target};
  if (n_steps < 2) return {beta_target};
  std::vector<double> betas(static_cast<std::size_t>(n_steps));
  const double b0 = 1e-4 * beta_target;
  const double ratio = std::pow(beta_target / b0, 1.0 / (n_steps - 1));
  double b = b0;
  for (int k = 0; k < n_steps; ++k) {
    betas[static_cast<std::size_t>(k)] = b;
    b *= ratio;
  }
  betas.back() = beta_target;
  return betas;
}

} // namespace

ContinuationResult continue_in_beta(const FiniteModeSolution& sol0, const ModelParams& params,
                                    double beta_target, int n_steps, const NewtonOptions& opts) {
  if (beta_target < 0.0) throw std::invalid_argument("continue_in_beta: beta_target must be >= 0");
  if (params.f > 0.0 && near_integer(params.nu / params.f))
    throw std::invalid_argument("continue_in_beta: nu/f at a bifurcation integer");

  const int hw = default_lattice_halfwidth(params);
  const LatticeVector d = seed_from(sol0, hw);
  const double mu = sol0.mu;

  ContinuationResult out;
  if (beta_target == 0.0) {
    out.final.g = d;
    out.final.lambda_tilde = mu;
    out.final.beta = 0.0;
    out.final.converged = true;
    ModelParams p0 = params;
    p0.beta = 0.0;
    out.final.residual_norm = dnlswe_residual(d, mu, p0).norm_inf();
    out.steps.push_back({0.0, mu, 0.0, out.final.residual_norm, 0});
    out.completed = true;
    return out;
  }

  LatticeVector g = d;
  double beta_done = 0.0;
  auto betas = beta_schedule(beta_target, mu, n_steps);
  std::size_t idx = 0;
  int bisections = 0;
  while (idx < betas.size()) {
    const double beta_try = betas[idx];
    ModelParams p = params;
    p.beta = beta_try;
    try {
      LatticeSolution sol = newton_solve(g, mu, p, opts);
      g = sol.g;
      beta_done = beta_try;
      out.steps.push_back({beta_try, mu, (g - d).norm_l1(), sol.residual_norm, sol.iterations});
      out.final = std::move(sol);
      ++idx;
      bisections = 0;
    } catch (const newton_error& err) {
      if (++bisections > opts.max_halvings) {
        out.completed = false;
        out.last_good_beta = beta_done;
        out.failure = err.what();
        return out;
      }
      // Bisect the step in beta and retry from the last good point.
      betas.insert(betas.begin() + static_cast<std::ptrdiff_t>(idx), 0.5 * (beta_done + beta_try));
    }
  }
  out.completed = true;
  out.last_good_beta = beta_done;
  return out;
}

NormalizedSolution continue_normalized(const FiniteModeSolution& sol0, const ModelParams& params,
                                       double beta_target, const NewtonOptions& opts) {
  // Walk the fixed-lambda branch to beta_target first, then switch on the
  // normalization constraint with lambda free.
  ContinuationResult path = continue_in_beta(sol0, params, beta_target, 12, opts);
  if (!path.completed)
    throw newton_error("continue_normalized: homotopy stalled at beta = " +
                           std::to_string(path.last_good_beta) + ": " + path.failure,
                       0.0, 0);

  ModelParams p = params;
  p.beta = beta_target;
  LatticeVector g = path.final.g;
  double lambda = path.final.lambda_tilde;

  const int n = g.size();
  NormalizedSolution out;
  int it = 0;
  double rnorm = 0.0;
  std::vector<double> history;
  for (; it < opts.max_iter; ++it) {
    LatticeVector r = dnlswe_residual(g, lambda, p);
    const double norm_defect = g.norm_l2() * g.norm_l2() - 1.0;
    rnorm = std::max(r.norm_inf(), std::abs(norm_defect));
    history.push_back(rnorm);
    if (rnorm < opts.tol) break;

    const TridiagJacobian j = jacobian(g, lambda, p);
    // Bordered solve: J dg - g dlambda = -R, 2 g . dg = -(||g||^2 - 1).
    std::vector<double> y, z;
    try {
      y = solve_tridiag(j.sub, j.diag, j.sup, r.data); // J y = R
      z = solve_tridiag(j.sub, j.diag, j.sup, g.data); // J z = g
    } catch (const std::runtime_error&) {
      throw newton_error("continue_normalized: singular bordered Jacobian", rnorm, it);
    }
    double gy = 0.0, gz = 0.0;
    for (int i = 0; i < n; ++i) {
      gy += g.data[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
      gz += g.data[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
    }
    if (gz == 0.0) throw newton_error("continue_normalized: degenerate border", rnorm, it);
    // dg = -y - dlambda * z with 2 g.(dg) = -norm_defect.
    const double dlambda = (norm_defect / 2.0 - gy) / gz;
    for (int i = 0; i < n; ++i)
      g.data[static_cast<std::size_t>(i)] +=
          -y[static_cast<std::size_t>(i)] - dlambda * z[static_cast<std::size_t>(i)];
    lambda += dlambda;
  }
  if (!(rnorm < opts.tol))
    throw newton_error("continue_normalized: bordered Newton did not converge", rnorm, it);

  out.solution.g = g;
  out.solution.lambda_tilde = lambda;
  out.solution.beta = beta_target;
  out.solution.residual_norm = rnorm;
  out.solution.iterations = it;
  out.solution.residual_history = std::move(history);
  out.solution.converged = true;
  out.lambda_tilde = lambda;
  out.lambda_shift = std::abs(lambda - sol0.mu);
  return out;
}

std::vector<BranchPoint> branch_sweep_nu(const SolutionSet& set, const ModelParams& params_template,
                                         const std::vector<double>& nu_over_f_values, double beta) {
  std::vector<BranchPoint> out;
  for (double r : nu_over_f_values) {
    BranchPoint pt;
    pt.nu_over_f = r;
    ModelParams p = params_template;
    p.nu = r * p.f;
    p.beta = beta;
    try {
      const FiniteModeSolution d = amplitudes(set, p);
      if (beta == 0.0) {
        pt.lambda_tilde_over_f = d.mu / p.f;
        pt.l1_error = 0.0;
        pt.exists = true;
      } else {
        ModelParams p0 = p;
        const ContinuationResult res = continue_in_beta(d, p0, beta, 8);
        if (!res.completed) {
          pt.note = "continuation stalled: " + res.failure;
        } else {
          pt.lambda_tilde_over_f = res.final.lambda_tilde / p.f;
          pt.l1_error = res.steps.back().l1_error;
          pt.exists = true;
        }
      }
    } catch (const positivity_error& err) {
      pt.note = std::string("below existence threshold: ") + err.what();
    } catch (const std::invalid_argument& err) {
      pt.note = err.what(); // nu/f at a bifurcation integer
    }
    out.push_back(std::move(pt));
  }
  return out;
}

} // namespace swlab
