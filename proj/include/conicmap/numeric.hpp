/**
 * \file numeric.hpp
 * \brief Golden-section minimization on a bracket
 **********************************************************************/

#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

namespace conicmap {

  struct ScalarMinimum {
    double x, fx;
    std::size_t evaluations;
  };

  /// Minimize a unimodal f on [lo, hi] by golden-section search until the
  /// bracket is narrower than tol.  Kinks at the minimum are fine; only
  /// comparisons of f are used.  Returns the best point evaluated, lo and hi
  /// included.
  template <class F>
  ScalarMinimum golden_section(F&& f, double lo, double hi, double tol) {
    constexpr double invphi = 0.6180339887498949;   // (sqrt 5 - 1) / 2
    std::size_t evals = 0;
    auto eval = [&](double x) { ++evals; return f(x); };

    ScalarMinimum best{lo, eval(lo), 0};
    auto consider = [&](double x, double fx) {
      if (fx < best.fx || (fx == best.fx && x < best.x)) best = {x, fx, 0};
    };
    consider(hi, eval(hi));
    if (!(hi > lo)) { best.evaluations = evals; return best; }

    double a = lo, b = hi;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = eval(c), fd = eval(d);
    consider(c, fc);
    consider(d, fd);
    while (b - a > tol) {
      if (fc <= fd) {
        b = d; d = c; fd = fc;
        c = b - invphi * (b - a);
        fc = eval(c);
        consider(c, fc);
      } else {
        a = c; c = d; fc = fd;
        d = a + invphi * (b - a);
        fd = eval(d);
        consider(d, fd);
      }
    }
    best.evaluations = evals;
    return best;
  }

} // namespace conicmap
