#include "dwell/quadrature.hpp"

#include <cmath>

namespace dwell {

QuadRule gauss_legendre(int n) {
  if (n < 1) throw domain_error("gauss_legendre: need at least one node");
  QuadRule r;
  r.x.resize(n);
  r.w.resize(n);
  int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0, z1;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    } while (std::fabs(z - z1) > 1e-15);
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.w[n - 1 - i] = r.w[i];
  }
  return r;
}

QuadRule composite_gl(double a, double b, double max_panel, int points_per_panel) {
  if (!(b > a)) throw domain_error("composite_gl: empty interval");
  if (!(max_panel > 0.0)) throw domain_error("composite_gl: panel width must be positive");
  QuadRule base = gauss_legendre(points_per_panel);
  int nseg = static_cast<int>(std::ceil((b - a) / max_panel));
  double w = (b - a) / nseg;
  QuadRule r;
  r.x.reserve(static_cast<size_t>(nseg) * points_per_panel);
  r.w.reserve(static_cast<size_t>(nseg) * points_per_panel);
  for (int s = 0; s < nseg; ++s) {
    double lo = a + s * w, hi = lo + w;
    for (int j = 0; j < points_per_panel; ++j) {
      r.x.push_back(0.5 * (hi - lo) * base.x[j] + 0.5 * (hi + lo));
      r.w.push_back(0.5 * (hi - lo) * base.w[j]);
    }
  }
  return r;
}

double basis_halfwidth(const PhysicalParams& p, double x_s) {
  return x_s + 12.0 * std::sqrt(p.g() / 2.0);
}

double packet_halfwidth(const PhysicalParams& p, double x_s, const GaussianPacketSpec& s) {
  return std::max(x_s, std::fabs(s.x0)) + 12.0 * std::max(std::sqrt(s.mu), std::sqrt(p.g() / 2.0));
}

}  // namespace dwell
