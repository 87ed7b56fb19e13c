#pragma once

#include <complex>
#include <vector>

namespace swlab {

/// Symmetric real tridiagonal matrix: diag[i] on the diagonal, off[i] linking
/// i and i+1.  The workhorse container for every 1D operator in the project.
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> off;

  int size() const { return static_cast<int>(diag.size()); }
  /// y = A x.
  std::vector<double> apply(const std::vector<double>& x) const;
};

/// Thomas solve of a general tridiagonal system (sub, diag, sup), with
/// partial-pivoting-free elimination; throws on a vanishing pivot.
std::vector<double> solve_tridiag(const std::vector<double>& sub, const std::vector<double>& diag,
                                  const std::vector<double>& sup, std::vector<double> rhs);

/// Symmetric shifted solve (A - shift) x = rhs.
std::vector<double> solve_shifted(const SymTridiag& a, double shift, std::vector<double> rhs);

/// Complex shifted solve (A - z) x = rhs for real symmetric A, complex z.
std::vector<std::complex<double>> solve_shifted(const SymTridiag& a, std::complex<double> z,
                                                std::vector<std::complex<double>> rhs);

/// Number of eigenvalues of A strictly below x (Sturm / LDL^T inertia count).
int sturm_count_below(const SymTridiag& a, double x);

/// k-th eigenvalue (0-based, ascending) by bisection to near machine
/// precision; deterministic and immune to clustering.
double eigenvalue_bisect(const SymTridiag& a, int k);

/// Eigenvalues k_lo..k_hi inclusive.
std::vector<double> eigenvalues_bisect(const SymTridiag& a, int k_lo, int k_hi);

/// Inverse iteration for the eigenvector at an isolated eigenvalue lambda.
std::vector<double> inverse_iteration(const SymTridiag& a, double lambda, int max_iter = 8);

/// Infinity-norm condition estimate of a general tridiagonal matrix, exact
/// up to the final norm (computes the inverse column by column).
double condition_inf(const std::vector<double>& sub, const std::vector<double>& diag,
                     const std::vector<double>& sup);

} // namespace swlab
