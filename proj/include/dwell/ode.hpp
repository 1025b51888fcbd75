#pragma once
#include <algorithm>
#include <cmath>
#include <vector>

#include "dwell/errors.hpp"

namespace dwell {

// Dormand-Prince 5(4) embedded pair with adaptive step control and FSAL.
// S is double or std::complex<double>; the derivative functor has signature
//   void f(double t, const std::vector<S>& y, std::vector<S>& dydt)
// The integrator keeps its state (t, y, step size, first stage) across calls
// to advance_to, so a sequence of output times costs no restarts.
template <class S>
class Dopri5 {
 public:
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;

  Dopri5(double t0, std::vector<S> y0, double h0)
      : t_(t0), y_(std::move(y0)), h_(h0) {
    int n = static_cast<int>(y_.size());
    k1_.resize(n);
    for (auto* k : {&k2_, &k3_, &k4_, &k5_, &k6_, &k7_}) k->resize(n);
    ytmp_.resize(n);
    y5_.resize(n);
  }

  double t() const { return t_; }
  const std::vector<S>& y() const { return y_; }

  template <class F>
  void advance_to(double t_end, F&& f) {
    const int n = static_cast<int>(y_.size());
    if (!have_k1_) {
      f(t_, y_, k1_);
      have_k1_ = true;
    }
    while (t_ < t_end) {
      if (h_ <= 0.0) h_ = (t_end - t_) / 100.0;
      double hs = std::min(h_, t_end - t_);
      if (hs < 1e-14 * std::max(1.0, std::fabs(t_)))
        throw numerical_error("ode integrator: step size underflow at t = " + std::to_string(t_));

      stage(f, hs, n);

      // scaled RMS error of the embedded 4th-order difference
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        double e = std::abs(err_i(i, hs));
        double sc = abs_tol + rel_tol * std::max(std::abs(y_[i]), std::abs(y5_[i]));
        double r = e / sc;
        sum += r * r;
      }
      double err = std::sqrt(sum / n);

      if (std::isnan(err) || std::isinf(err)) {
        h_ = 0.2 * hs;  // derivative blew up, retry smaller
        continue;
      }
      if (err <= 1.0) {
        t_ += hs;
        y_.swap(y5_);
        k1_.swap(k7_);  // FSAL
        double fac = (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h_ = hs * fac;
      } else {
        h_ = hs * std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
      }
    }
  }

 private:
  template <class F>
  void stage(F& f, double h, int n) {
    auto comb = [&](std::vector<S>& out, std::initializer_list<std::pair<const std::vector<S>*, double>> terms) {
      for (int i = 0; i < n; ++i) {
        S acc = y_[i];
        for (auto& [k, a] : terms) acc += (h * a) * (*k)[i];
        out[i] = acc;
      }
    };
    comb(ytmp_, {{&k1_, 1.0 / 5.0}});
    f(t_ + h / 5.0, ytmp_, k2_);
    comb(ytmp_, {{&k1_, 3.0 / 40.0}, {&k2_, 9.0 / 40.0}});
    f(t_ + 3.0 * h / 10.0, ytmp_, k3_);
    comb(ytmp_, {{&k1_, 44.0 / 45.0}, {&k2_, -56.0 / 15.0}, {&k3_, 32.0 / 9.0}});
    f(t_ + 4.0 * h / 5.0, ytmp_, k4_);
    comb(ytmp_, {{&k1_, 19372.0 / 6561.0}, {&k2_, -25360.0 / 2187.0}, {&k3_, 64448.0 / 6561.0}, {&k4_, -212.0 / 729.0}});
    f(t_ + 8.0 * h / 9.0, ytmp_, k5_);
    comb(ytmp_, {{&k1_, 9017.0 / 3168.0}, {&k2_, -355.0 / 33.0}, {&k3_, 46732.0 / 5247.0}, {&k4_, 49.0 / 176.0}, {&k5_, -5103.0 / 18656.0}});
    f(t_ + h, ytmp_, k6_);
    comb(y5_, {{&k1_, 35.0 / 384.0}, {&k3_, 500.0 / 1113.0}, {&k4_, 125.0 / 192.0}, {&k5_, -2187.0 / 6784.0}, {&k6_, 11.0 / 84.0}});
    f(t_ + h, y5_, k7_);
  }

  S err_i(int i, double h) const {
    return h * (71.0 / 57600.0 * k1_[i] - 71.0 / 16695.0 * k3_[i] + 71.0 / 1920.0 * k4_[i] -
                17253.0 / 339200.0 * k5_[i] + 22.0 / 525.0 * k6_[i] - 1.0 / 40.0 * k7_[i]);
  }

  double t_;
  std::vector<S> y_;
  double h_;
  std::vector<S> k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_, y5_;
  bool have_k1_ = false;
};

}  // namespace dwell
