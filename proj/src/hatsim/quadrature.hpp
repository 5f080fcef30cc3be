// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#pragma once

#include <functional>
#include <vector>

namespace hatsim {

// Adaptive Gauss-Kronrod on [a, b], split at every break inside the interval.
// Throws QuadratureError when the error estimate exceeds tol * max(1, |result|) by 100x.
double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 const std::vector<double>& breaks = {});

}  // namespace hatsim
