#include "dwell/dynamics.hpp"

#include <cmath>

#include "dwell/ode.hpp"
#include "dwell/quadrature.hpp"

namespace dwell {

double CoefficientState::norm() const {
  double s = 0.0;
  for (const cplx& z : c) s += std::norm(z);
  return s;
}

namespace {

void check_settings(const EvolutionSettings& st) {
  if (!(st.t_max > 0.0)) throw domain_error("evolution.t_max must be positive");
  if (!(st.dt_out > 0.0)) throw domain_error("evolution.dt_out must be positive");
  if (!(st.rel_tol > 0.0) || !(st.abs_tol > 0.0)) throw domain_error("evolution tolerances must be positive");
}

int sample_count(const EvolutionSettings& st) {
  return static_cast<int>(std::floor(st.t_max / st.dt_out + 1e-9)) + 1;
}

// y = H c restricted to the band |n - k| <= 4
void apply_banded(const EnergyMatrix& h, const std::vector<cplx>& c, std::vector<cplx>& y) {
  int n = h.dim;
  for (int i = 0; i < n; ++i) {
    cplx acc = 0.0;
    int k0 = i > 4 ? i - 4 : 0;
    int k1 = i + 4 < n - 1 ? i + 4 : n - 1;
    for (int k = k0; k <= k1; ++k) acc += h.at(i, k) * c[k];
    y[i] = acc;
  }
}

}  // namespace

CoefficientState initial_coefficients(const GaussianPacketSpec& s, const PhysicalParams& p, const BasisSpec& b) {
  if (b.n_max < 4) throw domain_error("basis.n_max must be >= 4");
  if (!(s.mu > 0.0)) throw domain_error("packet.mu must be positive");
  // panels must cover the packet and the farthest basis function: phi_n turns
  // around at sqrt(g (2n+1)) and decays on the oscillator length beyond that
  double reach_packet = std::fabs(s.x0) + 12.0 * std::sqrt(s.mu);
  double reach_basis = std::sqrt(p.g() * (2.0 * b.n_max + 1.0)) + 12.0 * std::sqrt(p.g() / 2.0);
  double half = std::max(reach_packet, reach_basis);
  QuadRule q = composite_gl(-half, half);

  CoefficientState st;
  st.t = 0.0;
  st.c.assign(b.n_max + 1, cplx(0.0, 0.0));
  std::vector<double> col(b.n_max + 1);
  for (int j = 0; j < q.size(); ++j) {
    oscillator_column(b.n_max, p, q.x[j], col.data());
    cplx wpsi = q.w[j] * packet_value(s, p, q.x[j]);
    for (int n = 0; n <= b.n_max; ++n) st.c[n] += col[n] * wpsi;
  }
  return st;
}

EigenAmplitudes to_eigen_amplitudes(const CoefficientState& c0, const EigenSystem& es) {
  if (c0.t != 0.0) throw domain_error("to_eigen_amplitudes: state must be at t = 0");
  if (static_cast<int>(c0.c.size()) != es.dim) throw domain_error("to_eigen_amplitudes: dimension mismatch");
  EigenAmplitudes am;
  am.a.assign(es.dim, cplx(0.0, 0.0));
  for (int nu = 0; nu < es.dim; ++nu) {
    cplx acc = 0.0;
    for (int n = 0; n < es.dim; ++n) acc += es.vec(n, nu) * c0.c[n];
    am.a[nu] = acc;
  }
  return am;
}

std::vector<CoefficientState> evolve_spectral_a(const CoefficientState& c0, const EnergyMatrix& h,
                                                const PhysicalParams& p, const EvolutionSettings& st) {
  check_settings(st);
  if (static_cast<int>(c0.c.size()) != h.dim) throw domain_error("evolve_spectral_a: dimension mismatch");
  int nout = sample_count(st);
  std::vector<CoefficientState> out;
  out.reserve(nout);
  out.push_back(c0);

  double inv_hbar = 1.0 / p.hbar;
  std::vector<cplx> hc(h.dim);
  auto rhs = [&](double, const std::vector<cplx>& y, std::vector<cplx>& dydt) {
    apply_banded(h, y, hc);
    for (int i = 0; i < h.dim; ++i) dydt[i] = cplx(0.0, -inv_hbar) * hc[i];
  };

  Dopri5<cplx> solver(c0.t, c0.c, st.dt_out / 100.0);
  solver.rel_tol = st.rel_tol;
  solver.abs_tol = st.abs_tol;
  for (int k = 1; k < nout; ++k) {
    solver.advance_to(c0.t + k * st.dt_out, rhs);
    out.push_back({solver.t(), solver.y()});
  }
  return out;
}

std::vector<CoefficientState> evolve_spectral_b(const EigenAmplitudes& a, const EigenSystem& es,
                                                const PhysicalParams& p, const EvolutionSettings& st) {
  check_settings(st);
  if (static_cast<int>(a.a.size()) != es.dim) throw domain_error("evolve_spectral_b: dimension mismatch");
  int nout = sample_count(st);
  std::vector<CoefficientState> out;
  out.reserve(nout);
  std::vector<cplx> ph(es.dim);
  for (int k = 0; k < nout; ++k) {
    double t = k * st.dt_out;
    for (int nu = 0; nu < es.dim; ++nu) {
      double arg = -es.values[nu] * t / p.hbar;
      ph[nu] = a.a[nu] * cplx(std::cos(arg), std::sin(arg));
    }
    CoefficientState s;
    s.t = t;
    s.c.assign(es.dim, cplx(0.0, 0.0));
    for (int n = 0; n < es.dim; ++n) {
      cplx acc = 0.0;
      for (int nu = 0; nu < es.dim; ++nu) acc += es.vec(n, nu) * ph[nu];
      s.c[n] = acc;
    }
    out.push_back(std::move(s));
  }
  return out;
}

GridWavefunction evolve_reference_grid(const GaussianPacketSpec& s, const QuarticCoefficients& c,
                                       const PhysicalParams& p, const EvolutionSettings& st,
                                       const GridSettings& grid) {
  check_settings(st);
  if (!(grid.x_max > grid.x_min) || !(grid.dx > 0.0) || !(grid.dt > 0.0))
    throw domain_error("reference grid: need x_max > x_min, dx > 0, dt > 0");
  int np = static_cast<int>(std::lround((grid.x_max - grid.x_min) / grid.dx)) + 1;
  if (np < 16) throw domain_error("reference grid: too few points");

  GridWavefunction gw;
  gw.x.resize(np);
  for (int i = 0; i < np; ++i) gw.x[i] = grid.x_min + i * grid.dx;

  std::vector<cplx> psi(np);
  for (int i = 0; i < np; ++i) psi[i] = packet_value(s, p, gw.x[i]);
  if (std::abs(psi.front()) > 1e-8 || std::abs(psi.back()) > 1e-8)
    throw domain_error("reference grid: packet amplitude at the domain edge exceeds 1e-8; widen the grid");

  // Crank-Nicolson with a constant tridiagonal system: factor once, reuse.
  // Hard walls at the edges (wavefunction pinned to zero outside).
  double kin = p.hbar * p.hbar / (2.0 * p.m * grid.dx * grid.dx);
  cplx z = cplx(0.0, grid.dt / (2.0 * p.hbar));
  cplx off = z * (-kin);
  std::vector<cplx> diag1(np), diag2(np);  // 1 + z H, 1 - z H main diagonals
  for (int i = 0; i < np; ++i) {
    double u = potential_value(c, gw.x[i]);
    cplx zd = z * (2.0 * kin + u);
    diag1[i] = 1.0 + zd;
    diag2[i] = 1.0 - zd;
  }
  std::vector<cplx> cp(np), inv(np);  // Thomas forward coefficients
  cp[0] = off / diag1[0];
  inv[0] = 1.0 / diag1[0];
  for (int i = 1; i < np; ++i) {
    cplx den = diag1[i] - off * cp[i - 1];
    cp[i] = off / den;
    inv[i] = 1.0 / den;
  }

  std::vector<cplx> rhs(np), fwd(np);
  auto step = [&]() {
    rhs[0] = diag2[0] * psi[0] - off * psi[1];
    for (int i = 1; i < np - 1; ++i) rhs[i] = diag2[i] * psi[i] - off * (psi[i - 1] + psi[i + 1]);
    rhs[np - 1] = diag2[np - 1] * psi[np - 1] - off * psi[np - 2];
    fwd[0] = rhs[0] * inv[0];
    for (int i = 1; i < np; ++i) fwd[i] = (rhs[i] - off * fwd[i - 1]) * inv[i];
    psi[np - 1] = fwd[np - 1];
    for (int i = np - 2; i >= 0; --i) psi[i] = fwd[i] - cp[i] * psi[i + 1];
  };

  auto edge_mass = [&]() {
    int edge = 10 < np / 4 ? 10 : np / 4;
    double mass = 0.0;
    for (int i = 0; i < edge; ++i) mass += std::norm(psi[i]) + std::norm(psi[np - 1 - i]);
    return mass * grid.dx;
  };

  long steps_per_out = std::lround(st.dt_out / grid.dt);
  if (steps_per_out < 1) steps_per_out = 1;
  int nout = sample_count(st);
  long step_count = 0;
  gw.t.push_back(0.0);
  gw.psi.push_back(psi);
  for (int k = 1; k < nout; ++k) {
    for (long i = 0; i < steps_per_out; ++i) step();
    step_count += steps_per_out;
    if (edge_mass() > 1e-4)
      throw numerical_error("reference grid: boundary mass leakage above 1e-4; widen the grid");
    gw.t.push_back(step_count * grid.dt);
    gw.psi.push_back(psi);
  }
  return gw;
}

std::vector<ClassicalState> classical_trajectory(double x0, double p0, const QuarticCoefficients& c,
                                                 const PhysicalParams& p, const EvolutionSettings& st) {
  check_settings(st);
  int nout = sample_count(st);
  std::vector<ClassicalState> out;
  out.reserve(nout);
  out.push_back({0.0, x0, p0});

  auto rhs = [&](double, const std::vector<double>& y, std::vector<double>& dydt) {
    dydt[0] = y[1] / p.m;
    dydt[1] = -potential_slope(c, y[0]);
  };
  Dopri5<double> solver(0.0, {x0, p0}, st.dt_out / 100.0);
  solver.rel_tol = st.rel_tol;
  solver.abs_tol = st.abs_tol;
  for (int k = 1; k < nout; ++k) {
    solver.advance_to(k * st.dt_out, rhs);
    out.push_back({solver.t(), solver.y()[0], solver.y()[1]});
  }
  return out;
}

}  // namespace dwell
