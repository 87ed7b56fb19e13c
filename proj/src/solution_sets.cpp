#include "swlab/solution_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swlab {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite value");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double m = std::frexp(x, &exp);
  long long mant = static_cast<long long>(std::ldexp(m, 53)); // |mant| in [2^52, 2^53)
  int e = exp - 53;
  while ((mant & 1LL) == 0 && e < 0) {
    mant >>= 1;
    ++e;
  }
  if (e >= 0) {
    if (e > 10) throw std::overflow_error("rational_from_double: value too large for exact rational");
    return Rational(mant << e, 1);
  }
  if (e < -62) throw std::overflow_error("rational_from_double: denominator exceeds 2^62");
  return Rational(mant, 1LL << (-e));
}

SolutionSet::SolutionSet(int j, std::vector<int> off) : rung_j(j), offsets(std::move(off)) {
  if (offsets.empty() || offsets.front() != 0)
    throw std::invalid_argument("SolutionSet: offsets must start at 0");
  for (std::size_t k = 1; k < offsets.size(); ++k)
    if (offsets[k] <= offsets[k - 1])
      throw std::invalid_argument("SolutionSet: offsets must be strictly increasing");
}

std::vector<int> SolutionSet::sites() const {
  std::vector<int> s(offsets.size());
  for (std::size_t k = 0; k < offsets.size(); ++k) s[k] = rung_j + offsets[k];
  return s;
}

std::string SolutionSet::id() const {
  std::string out;
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    if (k) out += '+';
    out += std::to_string(offsets[k]);
  }
  return out;
}

bool set_order(const SolutionSet& a, const SolutionSet& b) {
  if (a.cardinality() != b.cardinality()) return a.cardinality() < b.cardinality();
  return a.offsets < b.offsets;
}

namespace {

// Left side of the admissibility inequality, rearranged:
//   card * xi(last site) - sum_k xi(site_k) < nu/f.
// Integer-valued inside the linear window, so strict comparisons at integer
// nu/f are exact.
double set_weight(const TiltProfile& tilt, int j, const std::vector<int>& offsets) {
  const double xi_last = tilt.xi(j + offsets.back());
  double sum = 0.0;
  for (int off : offsets) sum += tilt.xi(j + off);
  return static_cast<double>(offsets.size()) * xi_last - sum;
}

struct Enumerator {
  const ModelParams& params;
  int rung_j;
  int max_card;
  bool restrict_win;
  double r_eff;        // effective strict bound on the weight
  int max_offset;      // largest offset probed
  std::vector<SolutionSet> found;
  std::vector<int> cur;

  bool inside_window(int site) const { return std::abs(site) <= params.window_n; }

  // Returns false when the set must be dropped (restricted mode).
  bool handle_admissible() {
    int outside = std::numeric_limits<int>::min();
    for (int off : cur) {
      const int site = rung_j + off;
      if (!inside_window(site)) {
        outside = site;
        break;
      }
    }
    if (outside != std::numeric_limits<int>::min()) {
      if (restrict_win) return false;
      throw window_overflow_error(outside, params.window_n);
    }
    found.emplace_back(rung_j, cur);
    return true;
  }

  void extend() {
    if (static_cast<int>(cur.size()) >= max_card) return;
    const int start = cur.back() + 1;
    const bool tapered = params.tilt.kind == TiltKind::LinearTapered;
    for (int off = start; off <= max_offset; ++off) {
      cur.push_back(off);
      const double w = set_weight(params.tilt, rung_j, cur);
      if (w < r_eff) {
        if (handle_admissible()) extend();
      } else if (!tapered && inside_window(rung_j + off)) {
        // Inside the window the weight grows with the new offset; once the
        // bound is exceeded every larger extension is excluded too.
        cur.pop_back();
        break;
      }
      cur.pop_back();
    }
  }

  void run() {
    if (!(0.0 < r_eff)) return; // strict bound excludes even the singleton
    cur.assign(1, 0);
    if (handle_admissible()) extend();
  }
};

} // namespace

std::vector<SolutionSet> enumerate_solution_sets(const ModelParams& params, int rung_j,
                                                 int max_card, bool restrict_to_window) {
  if (max_card < 1) throw std::invalid_argument("enumerate_solution_sets: max_card must be >= 1");
  if (params.f == 0.0 && params.nu == 0.0)
    throw std::invalid_argument("enumerate_solution_sets: nu and f cannot both vanish");

  double r = params.f == 0.0 ? std::numeric_limits<double>::infinity() : params.nu / params.f;
  if (std::isfinite(r) && near_integer(r)) r = std::round(r);

  Enumerator en{params, rung_j, max_card, restrict_to_window, r,
                /*max_offset=*/0, {}, {}};
  // One probe site beyond where xi saturates suffices to detect admissible
  // sets escaping the window; past it xi repeats and adds nothing new.
  const int probe = params.tilt.saturation_site() + 1;
  int bound = probe - rung_j;
  if (std::isfinite(r)) {
    // Inside the window the weight of {j, j+l} is at least l - |saturation|,
    // so offsets beyond r + window are hopeless for any rung.
    bound = std::min(bound, static_cast<int>(std::ceil(r)) + 2 * params.window_n + 1);
  }
  en.max_offset = std::max(bound, 1);
  en.run();

  std::sort(en.found.begin(), en.found.end(), set_order);
  return en.found;
}

double energy_of(const SolutionSet& set, const ModelParams& params) {
  double sum_xi = 0.0;
  for (int site : set.sites()) sum_xi += params.xi(site);
  // Integer-sum form: xi values are integers inside the window, so sets with
  // equal xi-sums get bit-identical energies.
  return (params.nu + params.f * sum_xi) / set.cardinality();
}

Rational energy_over_f_exact(const SolutionSet& set, const Rational& nu_over_f,
                             const TiltProfile& tilt) {
  long long sum_xi = 0;
  for (int site : set.sites()) {
    if (!tilt.linear_at(site))
      throw std::domain_error("energy_over_f_exact: xi not integer-valued at site " +
                              std::to_string(site));
    sum_xi += site;
  }
  return (nu_over_f + Rational(sum_xi)) / Rational(set.cardinality());
}

double FiniteModeSolution::norm_sq() const {
  double s = 0.0;
  for (const auto& [site, d] : amplitudes) s += d * d;
  return s;
}

double FiniteModeSolution::residual_inf(const ModelParams& params) const {
  double worst = 0.0;
  for (const auto& [site, d] : amplitudes) {
    const double r = (mu - params.nu * d * d) * d - params.f * params.xi(site) * d;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

FiniteModeSolution amplitudes(const SolutionSet& set, const ModelParams& params,
                              const std::vector<int>& signs) {
  if (!(params.nu > 0.0)) throw std::invalid_argument("amplitudes: requires nu > 0");
  if (static_cast<int>(signs.size()) != set.cardinality())
    throw std::invalid_argument("amplitudes: sign pattern size mismatch");
  for (int s : signs)
    if (s != 1 && s != -1) throw std::invalid_argument("amplitudes: signs must be +-1");

  FiniteModeSolution sol;
  sol.set = set;
  sol.mu = energy_of(set, params);
  sol.signs = signs;
  const auto sites = set.sites();
  for (std::size_t k = 0; k < sites.size(); ++k) {
    const double head = sol.mu - params.f * params.xi(sites[k]);
    if (!(head > 0.0)) throw positivity_error(sites[k], head);
    sol.amplitudes[sites[k]] = signs[k] * std::sqrt(head / params.nu);
  }
  return sol;
}

FiniteModeSolution amplitudes(const SolutionSet& set, const ModelParams& params) {
  return amplitudes(set, params, std::vector<int>(set.cardinality(), 1));
}

std::vector<FiniteModeSolution> sign_variants(const FiniteModeSolution& sol) {
  const int card = sol.set.cardinality();
  const auto sites = sol.set.sites();
  std::vector<FiniteModeSolution> out;
  out.reserve(1u << card);
  for (unsigned pattern = 0; pattern < (1u << card); ++pattern) {
    FiniteModeSolution v = sol;
    v.signs.assign(card, 1);
    for (int k = 0; k < card; ++k) {
      const int s = (pattern >> k) & 1u ? -1 : 1;
      v.signs[k] = s;
      v.amplitudes[sites[k]] = s * std::abs(sol.amplitudes.at(sites[k]));
    }
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

void threshold_sets_rec(int m, int max_card, std::vector<int>& cur, std::vector<SolutionSet>& out) {
  // Weight of {0, l_1, ..., l_k} with linear xi: k*max - sum.
  const int card = static_cast<int>(cur.size());
  long long w = 0;
  for (int off : cur) w += cur.back() - off;
  if (w == m && card >= 2 && card <= max_card) out.emplace_back(0, cur);
  if (card >= max_card) return;
  for (int next = cur.back() + 1; next <= m + cur.back() + 1; ++next) {
    cur.push_back(next);
    long long wn = 0;
    for (int off : cur) wn += cur.back() - off;
    if (wn <= m)
      threshold_sets_rec(m, max_card, cur, out);
    else {
      cur.pop_back();
      break;
    }
    cur.pop_back();
  }
}

} // namespace

std::vector<ThresholdEvent> bifurcation_thresholds(int max_card, int m_max) {
  if (max_card < 2) throw std::invalid_argument("bifurcation_thresholds: max_card must be >= 2");
  if (m_max < 1) throw std::invalid_argument("bifurcation_thresholds: m_max must be >= 1");
  std::vector<ThresholdEvent> events;
  for (int m = 1; m <= m_max; ++m) {
    ThresholdEvent ev;
    ev.m = m;
    std::vector<int> cur{0};
    threshold_sets_rec(m, max_card, cur, ev.new_sets);
    std::sort(ev.new_sets.begin(), ev.new_sets.end(), set_order);
    for (const auto& s : ev.new_sets) {
      const int card = s.cardinality();
      if (s.offsets.back() == card - 1 && m == card * (card - 1) / 2) {
        ev.consecutive_branch = true;
        ev.consecutive_card = card;
      }
    }
    if (!ev.new_sets.empty()) events.push_back(std::move(ev));
  }
  return events;
}

std::vector<DiagramRow> diagram_data(const std::vector<double>& nu_over_f_sweep, int max_card,
                                     int window_n) {
  std::vector<DiagramRow> rows;
  for (double r : nu_over_f_sweep) {
    if (!(r > 0.0) || !std::isfinite(r))
      throw std::domain_error("diagram_data: nu/f values must be positive and finite");
    const bool integer_point = near_integer(r);
    ModelParams params(r, 1.0, 0.0, window_n);
    const auto sets = enumerate_solution_sets(params, 0, max_card);
    // Exact rational energies keep degenerate branches bit-identical; fall
    // back to the double path when the dyadic denominator would overflow the
    // 64-bit rational arithmetic.
    const Rational r_exact = rational_from_double(r);
    const bool exact_ok = r_exact.denominator() <= (1LL << 20);
    for (const auto& s : sets) {
      DiagramRow row;
      row.nu_over_f = r;
      row.set_id = s.id();
      row.cardinality = s.cardinality();
      row.mu_over_f = exact_ok
                          ? boost::rational_cast<double>(energy_over_f_exact(s, r_exact, params.tilt))
                          : energy_of(s, ModelParams(r, 1.0, 0.0, window_n));
      if (integer_point) row.flag = "bifurcation_point";
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

} // namespace swlab
