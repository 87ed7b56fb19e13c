#pragma once

#include <cmath>
#include <stdexcept>

#include "swlab/tilt.hpp"

namespace swlab {

/// Dimensionless lattice parameters of the discrete nonlinear Stark-Wannier
/// equation: nonlinear strength nu, tilt step f, hopping beta, and the tilt
/// profile with its linear window N.
struct ModelParams {
  double nu = 1.0;   // nonlinear strength, >= 0
  double f = 1.0;    // tilt step F*a, >= 0
  double beta = 0.0; // hopping, >= 0
  int window_n = 10; // N, sites where the tilt is exactly linear
  TiltProfile tilt = TiltProfile::clamped(10);

  ModelParams() = default;

  ModelParams(double nu_, double f_, double beta_, int window)
      : nu(nu_), f(f_), beta(beta_), window_n(window), tilt(TiltProfile::clamped(window)) {
    validate();
  }

  ModelParams(double nu_, double f_, double beta_, TiltProfile profile)
      : nu(nu_), f(f_), beta(beta_), window_n(profile.window_n), tilt(profile) {
    validate();
  }

  void validate() const {
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw std::invalid_argument("ModelParams: nu must be finite and >= 0");
    if (!(f >= 0.0) || !std::isfinite(f)) throw std::invalid_argument("ModelParams: f must be finite and >= 0");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("ModelParams: beta must be finite and >= 0");
    if (window_n < 1) throw std::invalid_argument("ModelParams: window N must be >= 1");
  }

  double nu_over_f() const {
    if (f == 0.0) throw std::domain_error("ModelParams: nu/f undefined for f = 0");
    return nu / f;
  }

  double xi(int n) const { return tilt.xi(n); }
};

/// Integer detection used wherever strict inequalities at nu/f in N matter.
inline bool near_integer(double x, double tol = 1e-9) {
  return std::abs(x - std::round(x)) < tol;
}

} // namespace swlab
