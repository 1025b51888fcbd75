#pragma once
#include <complex>
#include <vector>

#include "dwell/dynamics.hpp"

namespace dwell {

struct ObservableSample {
  double t = 0;
  double x_mean = 0, p_mean = 0, x2_mean = 0, p2_mean = 0, xp_sym = 0;
  double norm = 0;
  double uncertainty = 0;  // <dx^2><dp^2>
  double x_var() const { return x2_mean - x_mean * x_mean; }
  double p_var() const { return p2_mean - p_mean * p_mean; }
};

// half-line overlaps of eigenfunctions: D(nu, la) = integral over x > 0
struct OverlapMatrix {
  int dim = 0;
  std::vector<double> d;
  double at(int i, int j) const { return d[static_cast<size_t>(i) * dim + j]; }
};

struct TwoLevelModel {
  int i, j;
  double a_i, a_j;  // real amplitudes, a_i^2 + a_j^2 = 1
};

// <x>, <p>, <x^2>, <p^2>, <xp+px> by ladder-operator sums in O(n_max)
ObservableSample expectations(const CoefficientState& s, const PhysicalParams& p);

double state_energy(const CoefficientState& s, const EnergyMatrix& h);

// C(t) = sum_n c_n(t)^* c_n(0)
cplx autocorrelation(const CoefficientState& s, const CoefficientState& initial);

std::vector<cplx> wavefunction_on_grid(const CoefficientState& s, const PhysicalParams& p,
                                       const std::vector<double>& x);

OverlapMatrix half_line_overlaps(const EigenSystem& es, const PhysicalParams& p, double x_s);

// P_r(t) = a(t)^dag D a(t) with a(t) projected from the state
double tunneling_probability(const CoefficientState& s, const EigenSystem& es, const OverlapMatrix& d);

double max_tunneling(const std::vector<double>& p_r);

// a_i^2 D_ii + a_j^2 D_jj + 2 a_i a_j D_ij cos(dE t / hbar)
double two_level_probability(const TwoLevelModel& mdl, const EigenSystem& es, const OverlapMatrix& d,
                             const PhysicalParams& p, double t);

// 2 a_i^2 a_j^2 (1 - cos(dE t / hbar))
double cd_probability(const TwoLevelModel& mdl, const EigenSystem& es, const PhysicalParams& p, double t);

// period of an oscillating series from rising zero crossings of x - midpoint,
// linear interpolation between samples, hysteresis against superposed ripples
double tunneling_period(const std::vector<double>& t, const std::vector<double>& x);

}  // namespace dwell
