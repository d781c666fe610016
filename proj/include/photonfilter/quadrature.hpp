#pragma once

#include <cmath>
#include <utility>

namespace photonfilter {

namespace detail {

template <typename Scalar, typename F>
Scalar simpson_step(F& f, Scalar a, Scalar fa, Scalar b, Scalar fb, Scalar m, Scalar fm,
                    Scalar whole, Scalar tol, int depth) {
  const Scalar lm = (a + m) / 2;
  const Scalar rm = (m + b) / 2;
  const Scalar flm = f(lm);
  const Scalar frm = f(rm);
  const Scalar left = (m - a) / 6 * (fa + 4 * flm + fm);
  const Scalar right = (b - m) / 6 * (fm + 4 * frm + fb);
  const Scalar delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol) {
    return left + right + delta / 15;
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance abs_tol.
///
/// The interval is first cut into `panels` equal pieces so that narrow features
/// inside a long window (a Lorentzian core, a tanh plateau edge) are sampled
/// before refinement starts.
template <typename Scalar, typename F>
Scalar adaptive_simpson(F&& f, Scalar a, Scalar b, Scalar abs_tol, int panels = 32,
                        int max_depth = 48) {
  if (a == b) return Scalar(0);
  const Scalar width = (b - a) / panels;
  const Scalar panel_tol = abs_tol / panels;
  Scalar total = 0;
  Scalar x0 = a;
  Scalar f0 = f(x0);
  for (int i = 0; i < panels; ++i) {
    const Scalar x1 = (i + 1 == panels) ? b : a + width * (i + 1);
    const Scalar f1 = f(x1);
    const Scalar xm = (x0 + x1) / 2;
    const Scalar fm = f(xm);
    const Scalar whole = (x1 - x0) / 6 * (f0 + 4 * fm + f1);
    total += detail::simpson_step(f, x0, f0, x1, f1, xm, fm, whole, panel_tol, max_depth);
    x0 = x1;
    f0 = f1;
  }
  return total;
}

}  // namespace photonfilter
