#pragma once
#include <complex>
#include <vector>

#include "dwell/hamiltonian.hpp"
#include "dwell/model.hpp"

namespace dwell {

using cplx = std::complex<double>;

struct CoefficientState {
  double t = 0.0;
  std::vector<cplx> c;
  double norm() const;  // sum |c_n|^2; at t=0 this is the captured fraction of the packet
};

struct EigenAmplitudes {
  std::vector<cplx> a;
};

enum class Method { A, B };

struct EvolutionSettings {
  double t_max = 1000.0;
  double dt_out = 0.25;
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  Method method = Method::B;
};

// Crank-Nicolson reference grid (verification only, not a user-facing path)
struct GridSettings {
  double x_min = -10.0, x_max = 10.0;
  double dx = 0.02;
  double dt = 1e-3;
};

struct GridWavefunction {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<std::vector<cplx>> psi;  // psi[k] sampled on x at time t[k]
};

struct ClassicalState {
  double t, x, p;
};

// c_n(0) = integral of phi_n * packet over the standard composite rule.
// The captured norm is state.norm(); callers should treat < 0.999 as a
// poorly represented packet.
CoefficientState initial_coefficients(const GaussianPacketSpec& s, const PhysicalParams& p, const BasisSpec& b);

// a_nu = sum_n vec(n, nu) c_n(0); requires c0.t == 0
EigenAmplitudes to_eigen_amplitudes(const CoefficientState& c0, const EigenSystem& es);

// integrate i hbar dc/dt = H c, sampled at 0, dt_out, 2 dt_out, ...
std::vector<CoefficientState> evolve_spectral_a(const CoefficientState& c0, const EnergyMatrix& h,
                                                const PhysicalParams& p, const EvolutionSettings& st);

// c_n(t) = sum_nu a_nu vec(n, nu) exp(-i E_nu t / hbar), exact at each sample
std::vector<CoefficientState> evolve_spectral_b(const EigenAmplitudes& a, const EigenSystem& es,
                                                const PhysicalParams& p, const EvolutionSettings& st);

GridWavefunction evolve_reference_grid(const GaussianPacketSpec& s, const QuarticCoefficients& c,
                                       const PhysicalParams& p, const EvolutionSettings& st,
                                       const GridSettings& grid);

// dx/dt = p/m, dp/dt = -U'(x), same integrator and sampling as method A
std::vector<ClassicalState> classical_trajectory(double x0, double p0, const QuarticCoefficients& c,
                                                 const PhysicalParams& p, const EvolutionSettings& st);

}  // namespace dwell
