#pragma once

// Shared test helpers: relative-error checks, a counter-based RNG for
// reproducible property tests, and the independent quadrature oracle used
// against the closed-form coupled model.

#include <cmath>
#include <cstdint>

namespace testsupport {

inline double rel_diff(double actual, double expected) {
  if (expected == 0.0) return std::abs(actual);
  return std::abs(actual - expected) / std::abs(expected);
}

// splitmix64, so sequences depend only on (seed, counter).
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct Rng {
  std::uint64_t seed;
  std::uint64_t counter = 0;
  double next() {  // uniform in [0, 1)
    return static_cast<double>(mix64(seed, counter++) >> 11) * 0x1.0p-53;
  }
  double in(double lo, double hi) { return lo + (hi - lo) * next(); }
};

// Numeric integration of the coupled model's rate, dC = k*alpha*(t/a)^(1/b) dt
// over [0, T]. The integrand has an integrable singularity at t = 0 (the
// exponent 1/b lies in (-1, 0)), removed by the substitution t = u^m with m
// large enough that the transformed integrand vanishes at zero; adaptive
// Simpson then runs at absolute tolerance 1e-12.
class QuadratureOracle {
 public:
  QuadratureOracle(double a, double b, double alpha, double k)
      : a_(a), b_(b), rate_(alpha * k) {
    const double e = 1.0 + 1.0 / b;
    m_ = 1;
    while (m_ * e < 2.0) ++m_;
  }

  double cost(double turnaround) const {
    const double hi = std::pow(turnaround, 1.0 / static_cast<double>(m_));
    const double flo = integrand(0.0);
    const double fhi = integrand(hi);
    const double fmid = integrand(0.5 * hi);
    const double whole = simpson(0.0, hi, flo, fmid, fhi);
    return adapt(0.0, hi, flo, fmid, fhi, whole, 1e-12, 64);
  }

 private:
  double integrand(double u) const {
    if (u <= 0.0) return 0.0;
    const double t = std::pow(u, static_cast<double>(m_));
    const double f = rate_ * std::pow(t / a_, 1.0 / b_);
    return f * static_cast<double>(m_) * std::pow(u, static_cast<double>(m_ - 1));
  }

  static double simpson(double lo, double hi, double flo, double fmid, double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  }

  double adapt(double lo, double hi, double flo, double fmid, double fhi,
               double whole, double tol, int depth) const {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const double flm = integrand(lm), frm = integrand(rm);
    const double left = simpson(lo, mid, flo, flm, fmid);
    const double right = simpson(mid, hi, fmid, frm, fhi);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
      return left + right + (left + right - whole) / 15.0;
    return adapt(lo, mid, flo, flm, fmid, left, 0.5 * tol, depth - 1) +
           adapt(mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1);
  }

  double a_;
  double b_;
  double rate_;
  int m_;
};

}  // namespace testsupport
