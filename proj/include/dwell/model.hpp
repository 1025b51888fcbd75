#pragma once
#include <complex>

#include "dwell/errors.hpp"

namespace dwell {

struct PhysicalParams {
  double m = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double g() const { return hbar / (m * omega); }  // squared oscillator length
};

// double well with minima near +-x_s, tilted by the cubic asymmetry d
struct WellShape {
  double x_s = 2.8284271247461903;  // 2*sqrt(2)
  double d = 0.0;
};

// U(x) = a4 x^4/4 + a3 x^3/3 + a2 x^2/2 + a1 x + a0
struct QuarticCoefficients {
  double a4, a3, a2, a1, a0;
};

struct StationaryPoints {
  double x_minus, x_u, x_plus;  // left minimum, barrier top, right minimum
  double u_minus, u_barrier, u_plus;
  double delta_u;  // u_plus - u_minus = 4 d x_s^3 / 3
};

// normalized Gaussian
//   (2 pi mu)^{-1/4} exp[-(1 - i alpha)(x - x0)^2/(4 mu) + i p0 (x - x0)/hbar]
// mu is the initial position variance, alpha the initial <dx dp + dp dx>
struct GaussianPacketSpec {
  double x0 = -2.8284271247461903;
  double p0 = 0.0;
  double mu = 0.1;
  double alpha = 0.0;
};

// largest |d| for which the barrier top stays inside (-x_s, x_s)
double critical_asymmetry(const PhysicalParams& p, const WellShape& w);

// throws domain_error when |d| >= critical_asymmetry or x_s <= 0
QuarticCoefficients quartic_from_well(const PhysicalParams& p, const WellShape& w);

double potential_value(const QuarticCoefficients& c, double x);
double potential_slope(const QuarticCoefficients& c, double x);  // dU/dx

StationaryPoints stationary_points(const PhysicalParams& p, const WellShape& w);

// phi_n(x) of the harmonic oscillator, by the normalized-function recurrence
// (stable for n up to at least 64 and |x|/sqrt(g) up to 12)
double oscillator_eigenfunction(int n, const PhysicalParams& p, double x);

// phi_0(x) .. phi_{n_max}(x) in one recurrence pass; out has n_max+1 slots
void oscillator_column(int n_max, const PhysicalParams& p, double x, double* out);

std::complex<double> packet_value(const GaussianPacketSpec& s, const PhysicalParams& p, double x);

}  // namespace dwell
