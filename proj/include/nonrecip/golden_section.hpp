#pragma once

#include <cmath>
#include <stdexcept>

namespace nonrecip {

template <typename Scalar>
struct LineExtremum {
  Scalar x = 0;
  Scalar value = 0;
  int evaluations = 0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi],
/// stopping once the bracket is narrower than tol.
template <typename Scalar, typename F>
LineExtremum<Scalar> golden_section_maximize(const F& f, Scalar lo, Scalar hi, Scalar tol) {
  if (!(lo < hi)) throw std::invalid_argument("golden section bracket requires lo < hi");
  if (!(tol > 0)) throw std::invalid_argument("golden section tolerance must be > 0");
  const Scalar inv_phi = (std::sqrt(Scalar(5)) - 1) / 2;
  Scalar a = lo;
  Scalar b = hi;
  Scalar c = b - inv_phi * (b - a);
  Scalar d = a + inv_phi * (b - a);
  Scalar fc = f(c);
  Scalar fd = f(d);
  int evaluations = 2;
  while (b - a > tol) {
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
    ++evaluations;
  }
  const Scalar x = (a + b) / 2;
  return {x, f(x), evaluations + 1};
}

}  // namespace nonrecip
