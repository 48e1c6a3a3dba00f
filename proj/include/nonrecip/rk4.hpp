#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

namespace nonrecip {

/// One classical Runge-Kutta step of y' = f(t, y). State must support
/// addition and scaling by Scalar (Eigen vectors do).
template <typename Scalar, typename State, typename Rhs>
State rk4_step(const Rhs& f, Scalar t, const State& y, Scalar h) {
  const State k1 = f(t, y);
  const State k2 = f(t + h / 2, State(y + (h / 2) * k1));
  const State k3 = f(t + h / 2, State(y + (h / 2) * k2));
  const State k4 = f(t + h, State(y + h * k3));
  return State(y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4));
}

/// Integrates from t0 to t_end with the smallest uniform step <= max_step,
/// calling observer(t, y) at the start and after every step.
template <typename Scalar, typename State, typename Rhs, typename Observer>
State rk4_integrate(const Rhs& f, Scalar t0, State y, Scalar t_end, Scalar max_step,
                    Observer&& observer) {
  const auto steps = static_cast<std::size_t>(std::ceil((t_end - t0) / max_step - Scalar(1e-9)));
  const Scalar h = steps == 0 ? Scalar(0) : (t_end - t0) / static_cast<Scalar>(steps);
  observer(t0, y);
  for (std::size_t n = 0; n < steps; ++n) {
    const Scalar t = t0 + static_cast<Scalar>(n) * h;
    y = rk4_step(f, t, y, h);
    observer(t + h, y);
  }
  return y;
}

template <typename Scalar, typename State, typename Rhs>
State rk4_integrate(const Rhs& f, Scalar t0, State y, Scalar t_end, Scalar max_step) {
  return rk4_integrate(f, t0, std::move(y), t_end, max_step, [](Scalar, const State&) {});
}

}  // namespace nonrecip
