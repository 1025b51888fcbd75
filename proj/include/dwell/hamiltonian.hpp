#pragma once
#include <vector>

#include "dwell/model.hpp"

namespace dwell {

struct BasisSpec {
  int n_max = 30;  // highest oscillator level kept
};

// dense symmetric Hamiltonian in the oscillator basis; banded with
// half-width 4 (a quartic couples n to n-4 .. n+4 only)
struct EnergyMatrix {
  int dim = 0;
  std::vector<double> a;  // row-major dim x dim
  double& at(int i, int j) { return a[static_cast<size_t>(i) * dim + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * dim + j]; }
};

struct EigenSystem {
  int dim = 0;
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row-major; vec(n, nu) = basis component n of level nu
  double vec(int n, int nu) const { return vectors[static_cast<size_t>(n) * dim + nu]; }
};

struct SpectralGaps {
  double delta;        // E_1 - E_0
  double delta_prime;  // E_2 - E_1
};

EnergyMatrix build_matrix(const QuarticCoefficients& c, const PhysicalParams& p, const BasisSpec& b);

// cyclic Jacobi; deterministic, ascending eigenvalues, each vector's
// largest-magnitude component made positive
EigenSystem diagonalize(const EnergyMatrix& h);

SpectralGaps spectral_gaps(const EigenSystem& es);

}  // namespace dwell
