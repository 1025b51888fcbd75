#include "dwell/model.hpp"

#include <cmath>
#include <vector>

namespace dwell {

double critical_asymmetry(const PhysicalParams& p, const WellShape& w) {
  return p.m * p.omega * p.omega / (2.0 * w.x_s);
}

QuarticCoefficients quartic_from_well(const PhysicalParams& p, const WellShape& w) {
  if (!(w.x_s > 0.0)) throw domain_error("well.x_s must be positive");
  double dc = critical_asymmetry(p, w);
  if (!(std::fabs(w.d) < dc))
    throw domain_error("well.d = " + std::to_string(w.d) + " out of range: |d| must be < m omega^2/(2 x_s) = " +
                       std::to_string(dc) + ", or the barrier top leaves (-x_s, x_s)");
  double mw2 = p.m * p.omega * p.omega;
  return {mw2 / (2.0 * w.x_s * w.x_s), -w.d, -mw2 / 2.0, w.d * w.x_s * w.x_s, mw2 * w.x_s * w.x_s / 8.0};
}

double potential_value(const QuarticCoefficients& c, double x) {
  return (((c.a4 / 4.0 * x + c.a3 / 3.0) * x + c.a2 / 2.0) * x + c.a1) * x + c.a0;
}

double potential_slope(const QuarticCoefficients& c, double x) {
  return ((c.a4 * x + c.a3) * x + c.a2) * x + c.a1;
}

StationaryPoints stationary_points(const PhysicalParams& p, const WellShape& w) {
  QuarticCoefficients c = quartic_from_well(p, w);  // validates |d|
  StationaryPoints sp;
  sp.x_minus = -w.x_s;
  sp.x_plus = w.x_s;
  sp.x_u = 2.0 * w.d * w.x_s * w.x_s / (p.m * p.omega * p.omega);
  sp.u_minus = potential_value(c, sp.x_minus);
  sp.u_barrier = potential_value(c, sp.x_u);
  sp.u_plus = potential_value(c, sp.x_plus);
  sp.delta_u = 4.0 * w.d * w.x_s * w.x_s * w.x_s / 3.0;
  return sp;
}

// normalized Hermite functions h_n(xi) = H_n(xi) e^{-xi^2/2} / sqrt(2^n n! sqrt(pi)):
//   h_{n+1} = sqrt(2/(n+1)) xi h_n - sqrt(n/(n+1)) h_{n-1}
void oscillator_column(int n_max, const PhysicalParams& p, double x, double* out) {
  double g = p.g();
  double s = 1.0 / std::sqrt(std::sqrt(g));  // g^{-1/4}, converts h_n(xi) to phi_n(x)
  double xi = x / std::sqrt(g);
  double h0 = std::pow(M_PI, -0.25) * std::exp(-xi * xi / 2.0);
  out[0] = s * h0;
  if (n_max == 0) return;
  double h1 = std::sqrt(2.0) * xi * h0;
  out[1] = s * h1;
  for (int n = 1; n < n_max; ++n) {
    double h2 = std::sqrt(2.0 / (n + 1.0)) * xi * h1 - std::sqrt(n / (n + 1.0)) * h0;
    out[n + 1] = s * h2;
    h0 = h1;
    h1 = h2;
  }
}

double oscillator_eigenfunction(int n, const PhysicalParams& p, double x) {
  if (n < 0) throw domain_error("oscillator index must be >= 0");
  std::vector<double> col(n + 1);
  oscillator_column(n, p, x, col.data());
  return col[n];
}

std::complex<double> packet_value(const GaussianPacketSpec& s, const PhysicalParams& p, double x) {
  if (!(s.mu > 0.0)) throw domain_error("packet.mu must be positive");
  double dx = x - s.x0;
  std::complex<double> ex = -std::complex<double>(1.0, -s.alpha) * dx * dx / (4.0 * s.mu) +
                            std::complex<double>(0.0, s.p0 * dx / p.hbar);
  return std::pow(2.0 * M_PI * s.mu, -0.25) * std::exp(ex);
}

}  // namespace dwell
