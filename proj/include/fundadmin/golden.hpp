#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

namespace fundadmin {

struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
///
/// Stops once the bracket is narrower than rel_tol * max(1, |x|) or after
/// max_iterations. The returned point is the best of the final interior
/// probe and the two bracket ends, so boundary maxima are reported exactly.
template <class F>
ScalarOptimum golden_section_maximize(F&& f, double lo, double hi, double rel_tol = 1e-9,
                                      std::size_t max_iterations = 500) {
  constexpr double inv_phi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
  if (hi < lo) std::swap(lo, hi);

  ScalarOptimum out;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  out.evaluations = 2;

  for (std::size_t it = 0; it < max_iterations; ++it) {
    const double scale = std::fmax(1.0, std::fabs(0.5 * (a + b)));
    if (b - a <= rel_tol * scale) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++out.evaluations;
  }

  out.x = fc >= fd ? c : d;
  out.value = fc >= fd ? fc : fd;

  // Ends of the original interval, in case the maximum sits on a boundary.
  const double flo = f(lo);
  const double fhi = f(hi);
  out.evaluations += 2;
  if (flo >= out.value) {
    out.x = lo;
    out.value = flo;
  }
  if (fhi > out.value) {
    out.x = hi;
    out.value = fhi;
  }
  return out;
}

template <class F>
ScalarOptimum golden_section_minimize(F&& f, double lo, double hi, double rel_tol = 1e-9,
                                      std::size_t max_iterations = 500) {
  ScalarOptimum r = golden_section_maximize([&f](double x) { return -f(x); }, lo, hi, rel_tol, max_iterations);
  r.value = -r.value;
  return r;
}

}  // namespace fundadmin
