#pragma once

#include <utility>

namespace mick::fd {

// 4th-order central first derivative.
template <class F> auto d1(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) /
         (12.0 * h);
}

// 4th-order central second derivative.
template <class F> auto d2(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) -
          f(x - 2 * h)) /
         (12.0 * h * h);
}

// One Richardson step on the 4th-order stencils (kills the h^4 term).
template <class F> auto d1_rich(F&& f, double x, double h) {
  const auto coarse = d1(f, x, h);
  const auto fine = d1(f, x, 0.5 * h);
  return (16.0 * fine - coarse) / 15.0;
}

template <class F> auto d2_rich(F&& f, double x, double h) {
  const auto coarse = d2(f, x, h);
  const auto fine = d2(f, x, 0.5 * h);
  return (16.0 * fine - coarse) / 15.0;
}

// Mixed second derivative d^2/dxdy, two nested 4th-order first derivatives.
template <class F> auto d2_mixed(F&& f, double x, double y, double hx, double hy) {
  auto dfy = [&](double xx) {
    return d1([&](double yy) { return f(xx, yy); }, y, hy);
  };
  return d1(dfy, x, hx);
}

} // namespace mick::fd
