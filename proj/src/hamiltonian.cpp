#include "dwell/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dwell {

EnergyMatrix build_matrix(const QuarticCoefficients& c, const PhysicalParams& p, const BasisSpec& b) {
  if (b.n_max < 4) throw domain_error("basis.n_max must be >= 4 (quartic band half-width)");
  double g = p.g();
  double a2p = c.a2 - p.m * p.omega * p.omega;  // residual quadratic after splitting off the oscillator
  EnergyMatrix h;
  h.dim = b.n_max + 1;
  h.a.assign(static_cast<size_t>(h.dim) * h.dim, 0.0);
  double s = std::sqrt(g / 2.0);
  for (int n = 0; n < h.dim; ++n) {
    double dn = n;
    h.at(n, n) = (dn + 0.5) * p.hbar * p.omega + 3.0 * c.a4 * g * g / 16.0 * (2.0 * dn * dn + 2.0 * dn + 1.0) +
                 a2p * g / 2.0 * (dn + 0.5) + c.a0;
    if (n >= 1) {
      double v = c.a3 * s * s * s * dn * std::sqrt(dn) + c.a1 * s * std::sqrt(dn);
      h.at(n, n - 1) = h.at(n - 1, n) = v;
    }
    if (n >= 2) {
      double r = std::sqrt(dn * (dn - 1.0));
      double v = c.a4 * g * g / 8.0 * (2.0 * dn - 1.0) * r + a2p * g / 4.0 * r;
      h.at(n, n - 2) = h.at(n - 2, n) = v;
    }
    if (n >= 3) {
      double v = c.a3 / 3.0 * s * s * s * std::sqrt(dn * (dn - 1.0) * (dn - 2.0));
      h.at(n, n - 3) = h.at(n - 3, n) = v;
    }
    if (n >= 4) {
      double v = c.a4 * g * g / 16.0 * std::sqrt(dn * (dn - 1.0) * (dn - 2.0) * (dn - 3.0));
      h.at(n, n - 4) = h.at(n - 4, n) = v;
    }
  }
  return h;
}

namespace {

double offdiag_norm(const std::vector<double>& a, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += a[static_cast<size_t>(i) * n + j] * a[static_cast<size_t>(i) * n + j];
  return std::sqrt(2.0 * s);
}

}  // namespace

EigenSystem diagonalize(const EnergyMatrix& hmat) {
  const int n = hmat.dim;
  std::vector<double> a(hmat.a);
  std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

  double hnorm = 0.0;
  for (double x : hmat.a) hnorm += x * x;
  hnorm = std::sqrt(hnorm);
  double thresh = 1e-14 * hnorm;

  auto A = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
  auto V = [&](int i, int j) -> double& { return v[static_cast<size_t>(i) * n + j]; };

  const int max_sweeps = 100;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (offdiag_norm(a, n) <= thresh) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = A(p, q);
        if (apq == 0.0) continue;
        double tau = (A(q, q) - A(p, p)) / (2.0 * apq);
        double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        double cth = 1.0 / std::sqrt(1.0 + t * t);
        double sth = t * cth;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          double akp = A(k, p), akq = A(k, q);
          A(k, p) = A(p, k) = cth * akp - sth * akq;
          A(k, q) = A(q, k) = sth * akp + cth * akq;
        }
        A(p, p) -= t * apq;
        A(q, q) += t * apq;
        A(p, q) = A(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = cth * vkp - sth * vkq;
          V(k, q) = sth * vkp + cth * vkq;
        }
      }
    }
  }
  if (sweep == max_sweeps) throw numerical_error("jacobi eigensolver did not converge in 100 sweeps");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return A(i, i) < A(j, j); });

  EigenSystem es;
  es.dim = n;
  es.values.resize(n);
  es.vectors.resize(static_cast<size_t>(n) * n);
  for (int nu = 0; nu < n; ++nu) {
    int src = order[nu];
    es.values[nu] = A(src, src);
    int kmax = 0;
    double amax = 0.0;
    for (int k = 0; k < n; ++k) {
      double m = std::fabs(V(k, src));
      if (m > amax) {
        amax = m;
        kmax = k;
      }
    }
    double sgn = V(kmax, src) < 0.0 ? -1.0 : 1.0;
    for (int k = 0; k < n; ++k) es.vectors[static_cast<size_t>(k) * n + nu] = sgn * V(k, src);
  }
  return es;
}

SpectralGaps spectral_gaps(const EigenSystem& es) {
  if (es.dim < 3) throw domain_error("spectral_gaps: need at least three levels");
  return {es.values[1] - es.values[0], es.values[2] - es.values[1]};
}

}  // namespace dwell
