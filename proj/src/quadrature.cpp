#include "solitonlab/quadrature.hpp"

#include <cmath>

#include "solitonlab/error.hpp"

namespace solitonlab::quad {

namespace {

struct Ctx {
  const std::function<double(double)>& f;
  int min_depth, max_depth;
  Result res;
};

void recurse(Ctx& c, double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
  const double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = c.f(lm), frm = c.f(rm);
  c.res.evaluations += 2;
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth >= c.min_depth && (std::abs(delta) <= 15 * tol || depth >= c.max_depth)) {
    c.res.value += left + right + delta / 15;
    c.res.error += std::abs(delta) / 15;
    return;
  }
  recurse(c, a, m, fa, flm, fm, left, tol / 2, depth + 1);
  recurse(c, m, b, fm, frm, fb, right, tol / 2, depth + 1);
}

}  // namespace

Result adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol, int segments,
                        int min_depth, int max_depth) {
  if (!(b >= a)) throw InvalidArgument("quadrature interval reversed");
  if (segments < 1) throw InvalidArgument("quadrature needs at least one segment");
  Ctx c{f, min_depth, max_depth, {}};
  if (b == a) return c.res;
  const double h = (b - a) / segments;
  for (int s = 0; s < segments; ++s) {
    const double lo = a + s * h, hi = (s + 1 == segments) ? b : a + (s + 1) * h;
    const double flo = f(lo), fhi = f(hi), fm = f((lo + hi) / 2);
    c.res.evaluations += 3;
    const double whole = (hi - lo) / 6 * (flo + 4 * fm + fhi);
    recurse(c, lo, hi, flo, fm, fhi, whole, abs_tol / segments, 0);
  }
  if (!std::isfinite(c.res.value)) throw ConvergenceError("quadrature produced a non-finite value");
  return c.res;
}

}  // namespace solitonlab::quad
