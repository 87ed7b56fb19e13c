#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace swlab {

enum class TiltKind { LinearClamped, LinearTapered };

/// Site-dependent tilt xi(n).  Equal to n on the linear window |n| <= N and
/// bounded outside it: the clamped profile freezes at +/-N, the tapered one
/// decays linearly to zero over taper_width extra sites.
struct TiltProfile {
  TiltKind kind = TiltKind::LinearClamped;
  int window_n = 10;   // N: half-width of the exactly linear window
  int taper_width = 0; // extra sites used by the tapered profile

  static TiltProfile clamped(int n) {
    if (n < 1) throw std::invalid_argument("TiltProfile: window N must be >= 1");
    return TiltProfile{TiltKind::LinearClamped, n, 0};
  }

  static TiltProfile tapered(int n, int width) {
    if (n < 1) throw std::invalid_argument("TiltProfile: window N must be >= 1");
    if (width < 0) throw std::invalid_argument("TiltProfile: taper width must be >= 0");
    return TiltProfile{TiltKind::LinearTapered, n, width};
  }

  double xi(int n) const {
    const int an = std::abs(n);
    if (an <= window_n) return static_cast<double>(n);
    const double s = n > 0 ? 1.0 : -1.0;
    if (kind == TiltKind::LinearClamped) return s * window_n;
    if (an >= window_n + taper_width) return 0.0;
    const double t = static_cast<double>(an - window_n) / taper_width;
    return s * window_n * (1.0 - t);
  }

  bool linear_at(int n) const { return std::abs(n) <= window_n; }

  /// Sites strictly beyond this index all share the same xi value (clamped)
  /// or are identically zero (tapered); enumeration probes stop here.
  int saturation_site() const {
    return kind == TiltKind::LinearClamped ? window_n : window_n + taper_width;
  }
};

} // namespace swlab
