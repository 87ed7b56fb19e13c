#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "swlab/model.hpp"

namespace swlab {

using Rational = boost::rational<long long>;

/// Exact conversion of a finite double to a rational (every double is one).
Rational rational_from_double(double x);

/// Finite set of occupied sites, stored as a base site j plus strictly
/// increasing offsets with offsets[0] = 0.
struct SolutionSet {
  int rung_j = 0;
  std::vector<int> offsets; // strictly increasing, first element 0

  SolutionSet() = default;
  SolutionSet(int j, std::vector<int> off);

  int cardinality() const { return static_cast<int>(offsets.size()); }
  std::vector<int> sites() const;
  int max_site() const { return rung_j + offsets.back(); }

  /// Stable branch identity, offsets joined by '+': "0+1+3".
  std::string id() const;

  bool operator==(const SolutionSet& o) const {
    return rung_j == o.rung_j && offsets == o.offsets;
  }
};

/// Orders by (cardinality, lexicographic offsets).
bool set_order(const SolutionSet& a, const SolutionSet& b);

struct window_overflow_error : std::runtime_error {
  int site;
  explicit window_overflow_error(int s, int window)
      : std::runtime_error("solution-set requires site " + std::to_string(s) +
                           " outside the linear window [-" + std::to_string(window) + "," +
                           std::to_string(window) + "]"),
        site(s) {}
};

struct positivity_error : std::runtime_error {
  int site;
  double deficit; // mu^S - f*xi(site), <= 0 at the violation
  positivity_error(int s, double d)
      : std::runtime_error("amplitude positivity violated at site " + std::to_string(s) +
                           ": mu - f*xi = " + std::to_string(d)),
        site(s), deficit(d) {}
};

/// All solution-sets connected to rung j with cardinality <= max_card,
/// i.e. the sets satisfying the strict admissibility inequality
/// xi(max site) < nu/(f N) + (1/N) sum xi(site).  Includes the singleton {j}.
/// Sorted by (cardinality, lexicographic offsets).
///
/// If an admissible set would require a site beyond the tilt window the
/// enumeration throws window_overflow_error naming the site, unless
/// restrict_to_window is set, in which case such sets are silently dropped
/// (the Theorem-style ladder claims assume S inside the window).
std::vector<SolutionSet> enumerate_solution_sets(const ModelParams& params, int rung_j,
                                                 int max_card,
                                                 bool restrict_to_window = false);

/// mu^S = nu/N + (f/N) sum_{n in S} xi(n), evaluated so that sets with equal
/// integer xi-sums compare exactly equal in floating point.
double energy_of(const SolutionSet& set, const ModelParams& params);

/// Exact mu^S / f for rational nu/f; requires xi integer-valued on the set
/// (all sites inside the linear window).
Rational energy_over_f_exact(const SolutionSet& set, const Rational& nu_over_f,
                             const TiltProfile& tilt);

/// Finite-mode stationary solution of the anticontinuous limit equation.
struct FiniteModeSolution {
  SolutionSet set;
  double mu = 0.0;
  std::map<int, double> amplitudes; // site -> d_n, zero off the set
  std::vector<int> signs;           // +-1 per offset

  double amplitude(int site) const {
    auto it = amplitudes.find(site);
    return it == amplitudes.end() ? 0.0 : it->second;
  }
  double norm_sq() const;
  /// Per-site residual (mu - nu d_n^2) d_n - f xi(n) d_n, max over sites.
  double residual_inf(const ModelParams& params) const;
};

/// Amplitudes d_n = sign * sqrt((mu^S - f xi(n))/nu) on the set, zero off it.
/// Throws positivity_error if mu^S - f xi(n) <= 0 for some site.
FiniteModeSolution amplitudes(const SolutionSet& set, const ModelParams& params,
                              const std::vector<int>& signs);

/// Convenience: all-plus sign pattern.
FiniteModeSolution amplitudes(const SolutionSet& set, const ModelParams& params);

/// All 2^N sign patterns; the canonical representative (d positive at min S)
/// comes first, and patterns differing by a global flip are adjacent halves.
std::vector<FiniteModeSolution> sign_variants(const FiniteModeSolution& sol);

struct ThresholdEvent {
  int m = 0;                         // integer nu/f value crossed
  std::vector<SolutionSet> new_sets; // sets appearing for nu/f > m (min S = 0)
  bool consecutive_branch = false;   // m = N(N-1)/2 with the consecutive set
  int consecutive_card = 0;
};

/// Bifurcation thresholds up to m_max: at each positive integer m the new
/// solution-sets (weight exactly m) are listed; Q(m) of them when the
/// cardinality is not capped.
std::vector<ThresholdEvent> bifurcation_thresholds(int max_card, int m_max);

struct DiagramRow {
  double nu_over_f = 0.0;
  std::string set_id;
  int cardinality = 0;
  double mu_over_f = 0.0;
  std::string flag; // empty or "bifurcation_point"
};

/// Figure-2 style data: mu^S/f of every admissible set with min S = 0 and
/// cardinality <= max_card, per nu/f in the sweep.  Branch identity is the
/// offset set itself.  Integer nu/f values (within 1e-9) contribute flagged
/// rows for the sets that remain admissible there.
std::vector<DiagramRow> diagram_data(const std::vector<double>& nu_over_f_sweep,
                                     int max_card, int window_n = 25);

} // namespace swlab
