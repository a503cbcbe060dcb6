#pragma once

#include <complex>
#include <functional>

#include "kurepa/errors.hpp"

namespace kurepa {

struct QuadResult {
    std::complex<double> value;
    double abs_error;  // accumulated estimate, upper-bound flavoured
};

/// Adaptive Gauss-Kronrod 7-15 over [a, b] for a complex-valued integrand of
/// a real variable. Panels are accepted once the local K15-G7 difference is
/// below the panel's share of abs_tol or below rel_tol * |panel value|.
QuadResult integrate_adaptive(const std::function<std::complex<double>(double)>& f,
                              double a, double b,
                              double abs_tol, double rel_tol = 1e-13,
                              int max_panels = 40000);

} // namespace kurepa
