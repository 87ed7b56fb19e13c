#pragma once

#include <cstdint>
#include <vector>

namespace swlab {

/// Number of partitions of n into distinct positive integers, Q(0) := 1.
std::vector<std::int64_t> distinct_partition_table(int n_max);

std::int64_t q_distinct_partitions(int n);

/// M(nu/f) = sum of Q(n) over 0 < n < nu/f (strict upper bound).  Counts the
/// multi-site solution-sets with min S = 0; the always-present singleton {0}
/// is deliberately not included.
std::int64_t count_solution_sets(double nu_over_f);

/// Imaginary error function erfi(x) = -i erf(ix), by Maclaurin series.
double erfi(double x);

struct CountingAsymptotics {
  double q_asymptotic = 0.0;
  double m_asymptotic = 0.0;
  std::int64_t q_exact = 0;
  std::int64_t m_exact = 0;
  double q_ratio = 0.0; // exact / asymptotic
  double m_ratio = 0.0;
};

/// Evaluates the large-n asymptotic formulas for Q(n) and M(n) next to the
/// exact dynamic-programming values.
CountingAsymptotics counting_asymptotics(int n);

} // namespace swlab
