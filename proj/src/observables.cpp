#include "dwell/observables.hpp"

#include <algorithm>
#include <cmath>

#include "dwell/quadrature.hpp"

namespace dwell {

ObservableSample expectations(const CoefficientState& s, const PhysicalParams& p) {
  int dim = static_cast<int>(s.c.size());
  if (dim < 3) throw domain_error("expectations: state needs at least three components");
  double g = p.g();

  // ladder sums: s1 = <a^dag>, s2 = <a^dag a^dag>, diag = sum (2n+1)|c_n|^2
  cplx s1 = 0.0, s2 = 0.0;
  double diag = 0.0, nrm = 0.0;
  for (int n = 0; n < dim; ++n) {
    double cn2 = std::norm(s.c[n]);
    diag += (2.0 * n + 1.0) * cn2;
    nrm += cn2;
    if (n + 1 < dim) s1 += std::conj(s.c[n + 1]) * s.c[n] * std::sqrt(n + 1.0);
    if (n + 2 < dim) s2 += std::conj(s.c[n + 2]) * s.c[n] * std::sqrt((n + 1.0) * (n + 2.0));
  }

  ObservableSample o;
  o.t = s.t;
  o.norm = nrm;
  double xs = std::sqrt(g / 2.0);
  double ps = std::sqrt(p.hbar * p.hbar / (2.0 * g));
  o.x_mean = xs * 2.0 * s1.real();
  o.p_mean = -ps * 2.0 * s1.imag();
  o.x2_mean = g / 2.0 * (2.0 * s2.real() + diag);
  o.p2_mean = p.hbar * p.hbar / (2.0 * g) * (diag - 2.0 * s2.real());
  o.xp_sym = -2.0 * p.hbar * s2.imag();
  o.uncertainty = o.x_var() * o.p_var();
  return o;
}

double state_energy(const CoefficientState& s, const EnergyMatrix& h) {
  if (static_cast<int>(s.c.size()) != h.dim) throw domain_error("state_energy: dimension mismatch");
  cplx e = 0.0;
  for (int i = 0; i < h.dim; ++i) {
    int k0 = i > 4 ? i - 4 : 0;
    int k1 = i + 4 < h.dim - 1 ? i + 4 : h.dim - 1;
    cplx acc = 0.0;
    for (int k = k0; k <= k1; ++k) acc += h.at(i, k) * s.c[k];
    e += std::conj(s.c[i]) * acc;
  }
  return e.real();
}

cplx autocorrelation(const CoefficientState& s, const CoefficientState& initial) {
  if (s.c.size() != initial.c.size()) throw domain_error("autocorrelation: dimension mismatch");
  cplx acc = 0.0;
  for (size_t n = 0; n < s.c.size(); ++n) acc += std::conj(s.c[n]) * initial.c[n];
  return acc;
}

std::vector<cplx> wavefunction_on_grid(const CoefficientState& s, const PhysicalParams& p,
                                       const std::vector<double>& x) {
  int n_max = static_cast<int>(s.c.size()) - 1;
  std::vector<cplx> psi(x.size());
  std::vector<double> col(n_max + 1);
  for (size_t j = 0; j < x.size(); ++j) {
    oscillator_column(n_max, p, x[j], col.data());
    cplx acc = 0.0;
    for (int n = 0; n <= n_max; ++n) acc += s.c[n] * col[n];
    psi[j] = acc;
  }
  return psi;
}

OverlapMatrix half_line_overlaps(const EigenSystem& es, const PhysicalParams& p, double x_s) {
  QuadRule q = composite_gl(0.0, basis_halfwidth(p, x_s));
  int dim = es.dim;
  // eigenfunctions on the nodes: B(nu, j) = sum_n vec(n, nu) phi_n(x_j)
  std::vector<double> bgrid(static_cast<size_t>(dim) * q.size());
  std::vector<double> col(dim);
  for (int j = 0; j < q.size(); ++j) {
    oscillator_column(dim - 1, p, q.x[j], col.data());
    for (int nu = 0; nu < dim; ++nu) {
      double acc = 0.0;
      for (int n = 0; n < dim; ++n) acc += es.vec(n, nu) * col[n];
      bgrid[static_cast<size_t>(nu) * q.size() + j] = acc;
    }
  }
  OverlapMatrix d;
  d.dim = dim;
  d.d.assign(static_cast<size_t>(dim) * dim, 0.0);
  for (int nu = 0; nu < dim; ++nu) {
    const double* bn = &bgrid[static_cast<size_t>(nu) * q.size()];
    for (int la = nu; la < dim; ++la) {
      const double* bl = &bgrid[static_cast<size_t>(la) * q.size()];
      double acc = 0.0;
      for (int j = 0; j < q.size(); ++j) acc += q.w[j] * bn[j] * bl[j];
      d.d[static_cast<size_t>(nu) * dim + la] = acc;
      d.d[static_cast<size_t>(la) * dim + nu] = acc;
    }
  }
  return d;
}

double tunneling_probability(const CoefficientState& s, const EigenSystem& es, const OverlapMatrix& d) {
  if (static_cast<int>(s.c.size()) != es.dim || d.dim != es.dim)
    throw domain_error("tunneling_probability: dimension mismatch");
  int dim = es.dim;
  std::vector<cplx> a(dim, cplx(0.0, 0.0));
  for (int nu = 0; nu < dim; ++nu) {
    cplx acc = 0.0;
    for (int n = 0; n < dim; ++n) acc += es.vec(n, nu) * s.c[n];
    a[nu] = acc;
  }
  double pr = 0.0;
  for (int nu = 0; nu < dim; ++nu) {
    cplx w = 0.0;
    for (int la = 0; la < dim; ++la) w += d.at(nu, la) * a[la];
    pr += (std::conj(a[nu]) * w).real();
  }
  return pr;
}

double max_tunneling(const std::vector<double>& p_r) {
  if (p_r.empty()) throw domain_error("max_tunneling: empty series");
  return *std::max_element(p_r.begin(), p_r.end());
}

namespace {

void check_model(const TwoLevelModel& mdl, int dim) {
  if (mdl.i < 0 || mdl.j < 0 || mdl.i >= dim || mdl.j >= dim || mdl.i == mdl.j)
    throw domain_error("two-level model: invalid level indices");
  if (std::fabs(mdl.a_i * mdl.a_i + mdl.a_j * mdl.a_j - 1.0) > 1e-9)
    throw domain_error("two-level model: amplitudes must satisfy a_i^2 + a_j^2 = 1");
}

}  // namespace

double two_level_probability(const TwoLevelModel& mdl, const EigenSystem& es, const OverlapMatrix& d,
                             const PhysicalParams& p, double t) {
  check_model(mdl, es.dim);
  double de = es.values[mdl.i] - es.values[mdl.j];
  return mdl.a_i * mdl.a_i * d.at(mdl.i, mdl.i) + mdl.a_j * mdl.a_j * d.at(mdl.j, mdl.j) +
         2.0 * mdl.a_i * mdl.a_j * d.at(mdl.i, mdl.j) * std::cos(de * t / p.hbar);
}

double cd_probability(const TwoLevelModel& mdl, const EigenSystem& es, const PhysicalParams& p, double t) {
  check_model(mdl, es.dim);
  double de = es.values[mdl.i] - es.values[mdl.j];
  double a2 = mdl.a_i * mdl.a_i * mdl.a_j * mdl.a_j;
  return 2.0 * a2 * (1.0 - std::cos(de * t / p.hbar));
}

double tunneling_period(const std::vector<double>& t, const std::vector<double>& x) {
  if (t.size() != x.size() || t.size() < 4) throw domain_error("tunneling_period: series too short");
  auto [mn_it, mx_it] = std::minmax_element(x.begin(), x.end());
  double mid = 0.5 * (*mn_it + *mx_it);
  double amp = 0.5 * (*mx_it - *mn_it);
  if (!(amp > 0.0)) throw numerical_error("tunneling_period: series does not oscillate");
  // Schmitt trigger: a rising crossing counts only after the series has been
  // below mid - h and then reaches mid + h; the superposed fast ripples stay
  // inside the band and are ignored. The crossing time itself is the linear
  // interpolation at mid on the rising leg.
  double h = 0.4 * amp;
  std::vector<double> cross;
  int state = 0;  // -1 below band, +1 above band
  size_t last_below = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    double y = x[i] - mid;
    if (y < -h) {
      state = -1;
      last_below = i;
    } else if (y > h) {
      if (state == -1) {
        for (size_t j = last_below; j + 1 <= i; ++j) {
          double y0 = x[j] - mid, y1 = x[j + 1] - mid;
          if (y0 < 0.0 && y1 >= 0.0) {
            cross.push_back(t[j] - y0 * (t[j + 1] - t[j]) / (y1 - y0));
            break;
          }
        }
      }
      state = +1;
    }
  }
  if (cross.size() < 2)
    throw numerical_error("tunneling_period: fewer than two rising crossings in the series");
  std::vector<double> gaps(cross.size() - 1);
  for (size_t i = 0; i + 1 < cross.size(); ++i) gaps[i] = cross[i + 1] - cross[i];
  std::sort(gaps.begin(), gaps.end());
  size_t mmid = gaps.size() / 2;
  return gaps.size() % 2 ? gaps[mmid] : 0.5 * (gaps[mmid - 1] + gaps[mmid]);
}

}  // namespace dwell
