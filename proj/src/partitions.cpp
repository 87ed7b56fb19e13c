#include "swlab/partitions.hpp"

#include <cmath>
#include <stdexcept>

#include "swlab/model.hpp"

namespace swlab {

std::vector<std::int64_t> distinct_partition_table(int n_max) {
  if (n_max < 0) throw std::domain_error("distinct_partition_table: n_max must be >= 0");
  std::vector<std::int64_t> q(static_cast<std::size_t>(n_max) + 1, 0);
  q[0] = 1; // empty partition
  for (int part = 1; part <= n_max; ++part)
    for (int s = n_max; s >= part; --s)
      q[s] += q[s - part];
  return q;
}

std::int64_t q_distinct_partitions(int n) {
  if (n < 0) throw std::domain_error("q_distinct_partitions: n must be >= 0");
  return distinct_partition_table(n)[static_cast<std::size_t>(n)];
}

std::int64_t count_solution_sets(double nu_over_f) {
  if (!(nu_over_f > 0.0) || !std::isfinite(nu_over_f))
    throw std::domain_error("count_solution_sets: nu/f must be positive and finite");
  // Strict n < nu/f: at integer nu/f the boundary term is excluded.
  int n_top;
  if (near_integer(nu_over_f))
    n_top = static_cast<int>(std::llround(nu_over_f)) - 1;
  else
    n_top = static_cast<int>(std::floor(nu_over_f));
  if (n_top < 1) return 0;
  const auto q = distinct_partition_table(n_top);
  std::int64_t m = 0;
  for (int n = 1; n <= n_top; ++n) m += q[static_cast<std::size_t>(n)];
  return m;
}

double erfi(double x) {
  // Maclaurin series: erfi(x) = 2/sqrt(pi) * sum x^(2k+1) / (k! (2k+1)).
  // Converges quickly for the modest arguments used here (x <~ 4).
  const double two_over_sqrt_pi = 2.0 / std::sqrt(M_PI);
  double term = x;
  double sum = x;
  const double x2 = x * x;
  for (int k = 1; k < 200; ++k) {
    term *= x2 / k;
    const double add = term / (2 * k + 1);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return two_over_sqrt_pi * sum;
}

CountingAsymptotics counting_asymptotics(int n) {
  if (n < 1) throw std::domain_error("counting_asymptotics: n must be >= 1");
  CountingAsymptotics out;
  const double nd = static_cast<double>(n);
  out.q_asymptotic = std::exp(M_PI * std::sqrt(nd / 3.0)) /
                     (4.0 * std::pow(3.0, 0.25) * std::pow(nd, 0.75));
  out.m_asymptotic = 0.5 * erfi(std::sqrt(M_PI) * std::pow(nd / 3.0, 0.25));
  const auto q = distinct_partition_table(n);
  out.q_exact = q[static_cast<std::size_t>(n)];
  out.m_exact = 0;
  for (int k = 1; k <= n; ++k) out.m_exact += q[static_cast<std::size_t>(k)];
  out.q_ratio = static_cast<double>(out.q_exact) / out.q_asymptotic;
  out.m_ratio = static_cast<double>(out.m_exact) / out.m_asymptotic;
  return out;
}

} // namespace swlab
