// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include "hatsim/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "hatsim/errors.hpp"

namespace hatsim {

double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 const std::vector<double>& breaks) {
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, tol, breaks);
  std::vector<double> pts{a};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  double total = 0.0, err_total = 0.0, abs_total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double w = pts[i + 1] - pts[i];
    if (w <= 1e-13 * std::max(1.0, std::abs(pts[i + 1]))) {
      // sliver left by rounding of a break point
      const double v = f(pts[i] + 0.5 * w) * w;
      total += v;
      abs_total += std::abs(v);
      continue;
    }
    double err = 0.0, l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, pts[i], pts[i + 1], 20,
                                                                                    tol, &err, &l1);
    if (!std::isfinite(v)) throw QuadratureError("non-finite integrand");
    total += v;
    err_total += err;
    abs_total += l1;
  }
  if (err_total > 100.0 * tol * std::max(1.0, abs_total))
    throw QuadratureError("adaptive quadrature missed its tolerance");
  return total;
}

}  // namespace hatsim
