#pragma once
#include <vector>

#include "dwell/model.hpp"

namespace dwell {

struct QuadRule {
  std::vector<double> x, w;
  int size() const { return static_cast<int>(x.size()); }
};

// n-point Gauss-Legendre rule on [-1, 1], nodes by Newton iteration
QuadRule gauss_legendre(int n);

// equal panels of width <= max_panel covering [a, b], points_per_panel nodes each
QuadRule composite_gl(double a, double b, double max_panel = 0.5, int points_per_panel = 64);

// integration half-widths: far enough out that every integrand tail is < 1e-16
double basis_halfwidth(const PhysicalParams& p, double x_s);
double packet_halfwidth(const PhysicalParams& p, double x_s, const GaussianPacketSpec& s);

}  // namespace dwell
