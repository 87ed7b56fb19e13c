#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "swlab/model.hpp"
#include "swlab/partitions.hpp"
#include "swlab/solution_sets.hpp"
#include "swlab/tilt.hpp"

using namespace swlab;

namespace {

// Brute-force oracle: number of subsets of {1..n} with distinct elements
// summing to n, by direct DFS over inclusion.
long long q_oracle_rec(int remaining, int next) {
  if (remaining == 0) return 1;
  long long count = 0;
  for (int part = next; part <= remaining; ++part) count += q_oracle_rec(remaining - part, part + 1);
  return count;
}
long long q_oracle(int n) { return q_oracle_rec(n, 1); }

// Brute-force oracle for solution-set enumeration: recursively walks subsets
// of {0..k_max} containing 0 and keeps those satisfying the admissibility
// inequality xi(max) < nu/(f card) + (1/card) sum xi, checked literally.
void oracle_rec(const TiltProfile& tilt, double nu_over_f, int k_max, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
  if (!cur.empty()) {
    const int card = static_cast<int>(cur.size());
    double sum_xi = 0.0;
    for (int s : cur) sum_xi += tilt.xi(s);
    const double lhs = tilt.xi(cur.back());
    const double rhs = nu_over_f / card + sum_xi / card;
    if (lhs < rhs) out.push_back(cur);
    // Adding a larger site can only raise the left side faster than the
    // right; prune once the margin is irrecoverable.
    if (card * (lhs - rhs) >= 0.0 && lhs >= rhs) return;
  }
  const int start = cur.empty() ? 0 : cur.back() + 1;
  if (cur.empty() && start != 0) return;
  if (cur.empty()) {
    cur.push_back(0);
    oracle_rec(tilt, nu_over_f, k_max, cur, out);
    cur.pop_back();
    return;
  }
  for (int s = start; s <= k_max; ++s) {
    cur.push_back(s);
    oracle_rec(tilt, nu_over_f, k_max, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> oracle_enumerate(double nu_over_f, int k_max) {
  const TiltProfile tilt = TiltProfile::clamped(k_max);
  std::vector<int> cur;
  std::vector<std::vector<int>> out;
  oracle_rec(tilt, nu_over_f, k_max, cur, out);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

double erfi_quadrature(double x) {
  // Simpson on 2/sqrt(pi) * int_0^x exp(t^2) dt, independent of the series.
  const int n = 4000;
  const double h = x / n;
  double s = std::exp(0.0) + std::exp(x * x);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * std::exp((i * h) * (i * h));
  return 2.0 / std::sqrt(M_PI) * s * h / 3.0;
}

} // namespace

TEST_CASE("distinct partition counts match the paper examples and a subset-sum oracle") {
  CHECK(q_distinct_partitions(0) == 1);
  CHECK(q_distinct_partitions(1) == 1);
  CHECK(q_distinct_partitions(2) == 1);
  CHECK(q_distinct_partitions(3) == 2);
  CHECK(q_distinct_partitions(4) == 2);
  CHECK(q_distinct_partitions(10) == 10);

  const auto table = distinct_partition_table(30);
  for (int n = 0; n <= 30; ++n) CHECK(table[static_cast<std::size_t>(n)] == q_oracle(n));
}

TEST_CASE("Q(100) equals the frozen dynamic-programming value") {
  CHECK(q_distinct_partitions(100) == 444793);
}

TEST_CASE("count_solution_sets: strictness and examples") {
  CHECK(count_solution_sets(0.5) == 0);
  CHECK(count_solution_sets(3.5) == 4);
  CHECK(count_solution_sets(3.0) == 2); // strict bound excludes n = 3
  CHECK(count_solution_sets(1.0) == 0);
  CHECK(count_solution_sets(1.0 + 1e-12) == 0); // within integer tolerance
  CHECK(count_solution_sets(1.0 + 1e-6) == 1);  // outside it
  CHECK_THROWS_AS(count_solution_sets(0.0), std::domain_error);
  CHECK_THROWS_AS(count_solution_sets(-2.0), std::domain_error);
}

TEST_CASE("counting asymptotics") {
  const auto a1 = counting_asymptotics(1);
  CHECK(a1.q_asymptotic ==
        doctest::Approx(std::exp(M_PI / std::sqrt(3.0)) / (4.0 * std::pow(3.0, 0.25))).epsilon(1e-12));

  const auto a100 = counting_asymptotics(100);
  CHECK(a100.q_exact == 444793);
  CHECK(a100.q_ratio > 0.5);
  CHECK(a100.q_ratio < 2.0);

  double prev = 0.0;
  for (int n : {5, 10, 20, 40, 80}) {
    const auto a = counting_asymptotics(n);
    CHECK(a.m_asymptotic > prev);
    prev = a.m_asymptotic;
  }

  for (double x : {0.3, 1.0, 2.0, 2.9}) CHECK(erfi(x) == doctest::Approx(erfi_quadrature(x)).epsilon(1e-9));
}

TEST_CASE("tilt profile: window, clamping, oddness, boundedness") {
  const TiltProfile clamp = TiltProfile::clamped(10);
  CHECK(clamp.xi(3) == 3.0);
  CHECK(clamp.xi(0) == 0.0);
  CHECK(clamp.xi(15) == 10.0);
  CHECK(clamp.xi(-15) == -10.0);
  for (int n = -100; n <= 100; ++n) {
    CHECK(clamp.xi(-n) == -clamp.xi(n));
    CHECK(std::abs(clamp.xi(n)) <= 10.0);
    if (std::abs(n) <= 10) CHECK(clamp.xi(n) == static_cast<double>(n));
  }

  const TiltProfile taper = TiltProfile::tapered(10, 4);
  for (int n = -100; n <= 100; ++n) {
    CHECK(std::abs(taper.xi(n)) <= 10.0 + 4.0);
    if (std::abs(n) <= 10) CHECK(taper.xi(n) == static_cast<double>(n));
    if (std::abs(n) >= 14) CHECK(taper.xi(n) == 0.0);
  }
  CHECK(taper.xi(12) == doctest::Approx(5.0));
}

TEST_CASE("enumerate_solution_sets: worked examples") {
  auto ids = [](const std::vector<SolutionSet>& sets) {
    std::vector<std::string> v;
    for (const auto& s : sets) v.push_back(s.id());
    return v;
  };

  ModelParams p15(1.5, 1.0, 0.0, 25);
  CHECK(ids(enumerate_solution_sets(p15, 0, 10)) == std::vector<std::string>{"0", "0+1"});

  ModelParams p05(0.5, 1.0, 0.0, 25);
  CHECK(ids(enumerate_solution_sets(p05, 0, 10)) == std::vector<std::string>{"0"});

  ModelParams p35(3.5, 1.0, 0.0, 25);
  CHECK(ids(enumerate_solution_sets(p35, 0, 3)) ==
        std::vector<std::string>{"0", "0+1", "0+2", "0+3", "0+1+2"});
}

TEST_CASE("enumeration equals the brute-force oracle across the sweep") {
  const int window = 25;
  for (double r = 0.25; r <= 20.0 + 1e-12; r += 0.25) {
    ModelParams p(r, 1.0, 0.0, window);
    const auto sets = enumerate_solution_sets(p, 0, window);
    const auto oracle = oracle_enumerate(r, window);
    REQUIRE(sets.size() == oracle.size());
    for (std::size_t i = 0; i < sets.size(); ++i) CHECK(sets[i].offsets == oracle[i]);

    if (!near_integer(r)) {
      long long multi = 0;
      for (const auto& s : sets)
        if (s.cardinality() >= 2) ++multi;
      CHECK(multi == count_solution_sets(r));
    }
  }
}

TEST_CASE("enumeration window overflow and restriction") {
  ModelParams p(10.0, 1.0, 0.0, 3);
  CHECK_THROWS_AS(enumerate_solution_sets(p, 0, 6), window_overflow_error);
  try {
    enumerate_solution_sets(p, 0, 6);
  } catch (const window_overflow_error& e) {
    CHECK(e.site == 4);
  }
  const auto restricted = enumerate_solution_sets(p, 0, 6, true);
  for (const auto& s : restricted)
    for (int site : s.sites()) CHECK(std::abs(site) <= 3);
  CHECK(!restricted.empty());

  // A rung far outside the window trips the overflow check on the seed site.
  ModelParams pr(1.5, 1.0, 0.0, 3);
  CHECK_THROWS_AS(enumerate_solution_sets(pr, 7, 2), window_overflow_error);
}

TEST_CASE("energies: closed forms, degeneracy, ladder covariance") {
  ModelParams p(2.0, 0.5, 0.0, 25);

  for (int j : {-3, 0, 5})
    CHECK(energy_of(SolutionSet(j, {0}), p) == doctest::Approx(2.0 + 0.5 * j).epsilon(1e-15));

  CHECK(energy_of(SolutionSet(0, {0, 1}), p) == doctest::Approx(1.0 + 0.25).epsilon(1e-15));

  const double mu034 = energy_of(SolutionSet(0, {0, 3, 4}), p);
  const double mu025 = energy_of(SolutionSet(0, {0, 2, 5}), p);
  CHECK(mu034 == mu025); // bit-identical through the integer-sum form
  CHECK(mu034 == doctest::Approx(2.0 / 3.0 + 7.0 * 0.5 / 3.0).epsilon(1e-15));

  // Exact rational path.
  const Rational r35 = rational_from_double(3.5);
  CHECK(r35 == Rational(7, 2));
  const TiltProfile tilt = TiltProfile::clamped(25);
  CHECK(energy_over_f_exact(SolutionSet(0, {0, 3, 4}), r35, tilt) ==
        energy_over_f_exact(SolutionSet(0, {0, 2, 5}), r35, tilt));
  CHECK(energy_over_f_exact(SolutionSet(0, {0, 3, 4}), r35, tilt) ==
        Rational(7, 2) / 3 + Rational(7, 3));

  // Ladder covariance is exact in the rational path: mu(S + j) - mu(S) = j.
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> jdist(-10, 10);
  for (int trial = 0; trial < 20; ++trial) {
    const int j = jdist(rng);
    const Rational base = energy_over_f_exact(SolutionSet(0, {0, 2, 5}), r35, tilt);
    const Rational moved = energy_over_f_exact(SolutionSet(j, {0, 2, 5}), r35, tilt);
    CHECK(moved - base == Rational(j));
  }
}

TEST_CASE("amplitudes: closed forms, normalization, residual") {
  // One-mode: d_j = +-1.
  ModelParams p(3.0, 1.0, 0.0, 25);
  const auto one = amplitudes(SolutionSet(2, {0}), p);
  CHECK(one.amplitude(2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one.amplitude(3) == 0.0);

  // Two-mode at nu/f = 2.
  ModelParams p2(2.0, 1.0, 0.0, 25);
  const auto two = amplitudes(SolutionSet(0, {0, 1}), p2);
  CHECK(two.amplitude(0) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(two.amplitude(1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(two.norm_sq() - 1.0) < 1e-14);
  CHECK(two.residual_inf(p2) < 1e-12);

  // Threshold limit: d at the top site vanishes as nu/f -> 3+.
  double prev = 1.0;
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    ModelParams pt(3.0 + eps, 1.0, 0.0, 25);
    const auto sol = amplitudes(SolutionSet(0, {0, 1, 2}), pt);
    const double d2 = sol.amplitude(2);
    CHECK(d2 > 0.0);
    CHECK(d2 < prev);
    prev = d2;
    CHECK(sol.residual_inf(pt) < 1e-12);
    CHECK(std::abs(sol.norm_sq() - 1.0) < 1e-14);
  }

  // Positivity violation reports the offending site and deficit.
  ModelParams bad(2.9, 1.0, 0.0, 25);
  CHECK_THROWS_AS(amplitudes(SolutionSet(0, {0, 1, 2}), bad), positivity_error);
  try {
    amplitudes(SolutionSet(0, {0, 1, 2}), bad);
  } catch (const positivity_error& e) {
    CHECK(e.site == 2);
    CHECK(e.deficit <= 0.0);
  }
}

TEST_CASE("amplitude residual and normalization across random admissible sets") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> rdist(0.3, 19.7);
  for (int trial = 0; trial < 200; ++trial) {
    double r = rdist(rng);
    if (near_integer(r)) r += 0.01;
    ModelParams p(r * 0.7, 0.7, 0.0, 25);
    const auto sets = enumerate_solution_sets(p, 0, 6);
    for (const auto& s : sets) {
      const auto sol = amplitudes(s, p);
      CHECK(sol.residual_inf(p) < 1e-12);
      CHECK(std::abs(sol.norm_sq() - 1.0) < 1e-14);
    }
  }
}

TEST_CASE("sign variants: count, canonical representative, shared energy") {
  ModelParams p(7.3, 1.0, 0.0, 25);
  const auto base = amplitudes(SolutionSet(0, {0, 2, 3}), p);
  const auto variants = sign_variants(base);
  REQUIRE(variants.size() == 8);
  CHECK(variants.front().amplitude(0) > 0.0); // canonical: + at min S

  for (const auto& v : variants) {
    CHECK(v.mu == base.mu);
    for (int site : {0, 2, 3})
      CHECK(std::abs(v.amplitude(site)) == doctest::Approx(std::abs(base.amplitude(site))));
    CHECK(v.residual_inf(p) < 1e-12); // the equation is odd in d
  }

  // Global flips pair up: variant k vs variant 2^N-1-k.
  for (std::size_t k = 0; k < variants.size(); ++k) {
    const auto& a = variants[k];
    const auto& b = variants[variants.size() - 1 - k];
    for (int site : {0, 2, 3}) CHECK(a.amplitude(site) == doctest::Approx(-b.amplitude(site)));
  }

  const auto single = sign_variants(amplitudes(SolutionSet(0, {0}), p));
  REQUIRE(single.size() == 2);
  CHECK(single[0].amplitude(0) == doctest::Approx(1.0));
  CHECK(single[1].amplitude(0) == doctest::Approx(-1.0));
}

TEST_CASE("bifurcation thresholds") {
  const auto events = bifurcation_thresholds(10, 12);
  REQUIRE(!events.empty());

  auto find_event = [&](int m) -> const ThresholdEvent& {
    for (const auto& e : events)
      if (e.m == m) return e;
    REQUIRE(false);
    return events.front();
  };

  CHECK(find_event(1).new_sets.size() == 1);
  CHECK(find_event(1).new_sets[0].id() == "0+1");
  CHECK(find_event(1).consecutive_branch); // N(N-1)/2 = 1 for N = 2

  CHECK(find_event(2).new_sets.size() == 1);
  CHECK(find_event(2).new_sets[0].id() == "0+2");

  const auto& e3 = find_event(3);
  REQUIRE(e3.new_sets.size() == 2);
  CHECK(e3.new_sets[0].id() == "0+3");
  CHECK(e3.new_sets[1].id() == "0+1+2");
  CHECK(e3.consecutive_branch);
  CHECK(e3.consecutive_card == 3);

  // Q(m) new sets at every threshold when the cardinality is not capped.
  const auto q = distinct_partition_table(12);
  for (const auto& e : events)
    CHECK(static_cast<long long>(e.new_sets.size()) == q[static_cast<std::size_t>(e.m)]);

  // Oracle cross-check: sets appearing between r = m - 0.01 and r = m + 0.01.
  for (int m : {1, 2, 3, 5}) {
    const auto before = oracle_enumerate(m - 0.01, 25);
    const auto after = oracle_enumerate(m + 0.01, 25);
    CHECK(after.size() - before.size() == find_event(m).new_sets.size());
  }
}

TEST_CASE("diagram data") {
  const auto rows = diagram_data({10.0}, 10);
  bool saw0 = false, saw01 = false, saw012 = false;
  for (const auto& row : rows) {
    if (row.set_id == "0") {
      saw0 = true;
      CHECK(row.mu_over_f == doctest::Approx(10.0).epsilon(1e-15));
    }
    if (row.set_id == "0+1") {
      saw01 = true;
      CHECK(row.mu_over_f == doctest::Approx(5.5).epsilon(1e-15));
    }
    if (row.set_id == "0+1+2") {
      saw012 = true;
      CHECK(row.mu_over_f == doctest::Approx(10.0 / 3.0 + 1.0).epsilon(1e-15));
    }
  }
  CHECK(saw0);
  CHECK(saw01);
  CHECK(saw012);

  // No 3-site branches below nu/f = 3 and row counts of 1 + M(nu/f).
  for (double r = 0.3; r < 10.0; r += 0.5) {
    const auto sweep = diagram_data({r}, 30);
    long long n_rows = 0;
    for (const auto& row : sweep) {
      ++n_rows;
      if (r < 3.0) CHECK(row.cardinality < 3);
    }
    CHECK(n_rows == 1 + count_solution_sets(r));
  }

  // Integer points carry the bifurcation flag.
  const auto flagged = diagram_data({3.0}, 10);
  for (const auto& row : flagged) CHECK(row.flag == "bifurcation_point");
}

TEST_CASE("model parameter validation") {
  CHECK_THROWS_AS(ModelParams(-1.0, 1.0, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1.0, -1.0, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, -0.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1.0, 0.0, 0.0, 10).nu_over_f(), std::domain_error);
}

TEST_CASE("rational_from_double is exact") {
  CHECK(rational_from_double(3.5) == Rational(7, 2));
  CHECK(rational_from_double(-0.25) == Rational(-1, 4));
  CHECK(rational_from_double(0.0) == Rational(0));
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(-20.0, 20.0);
  for (int i = 0; i < 100; ++i) {
    const double x = dist(rng);
    const Rational r = rational_from_double(x);
    CHECK(static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()) ==
          doctest::Approx(x).epsilon(1e-15));
  }
}
