#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kurepa/kurepa.hpp"

namespace kurepa::xval {

/// |K(z) - K(z-1) - Gamma(z)| with both K evaluations by the given method.
double functional_equation_residual(ComplexValue z, Method method = Method::Auto,
                                    double tol = kDefaultTol);

/// Same residual for K1 (series evaluator).
double k1_functional_equation_residual(ComplexValue z, double tol = kDefaultTol);

/// f_n(z) = sum_{j=0}^n (-1)^j (j+1)/j! z^(j-n) + e^-z (z^(1-n) - z^-n).
/// Exact closed form; cancels badly for |z| < 1 with large n.
ComplexValue fn_closed_form(int n, ComplexValue z);

/// f_n(z) by its defining series sum_{k>=1} (-1)^(n+k-1) (n+k+1)/(n+k)! z^k.
ComplexValue fn_series(int n, ComplexValue z, int terms = 80);

/// |sum_{n=1}^N f_n(z) - (e^-z - 1)|. Uses the closed form for |z| >= 1 and
/// the series for |z| < 1 (where the closed form loses all digits).
double entire_sum_check(ComplexValue z, int N);

/// |sum_{n=1}^N (-1)^(n+k-1)(n+k+1)/(n+k)! - (-1)^k/k!| (telescoping sum).
double telescoping_check(int k, int N);

/// |(z-1) sum_{n=1}^N sum_{k=0}^Kmax (-1)^(k+n) z^k/(k+n)! - (e^-z - e^-1)|.
double double_series_check(ComplexValue z, int N, int Kmax);

/// p.v. int_0^inf e^-t t^z/(t-1) dt by symmetric excision of (1-eps, 1+eps)
/// with eps in {1e-2, 5e-3, 2.5e-3} and Richardson extrapolation.
ComplexValue pv_integral(ComplexValue z);

/// Residual of the hypergeometric form of the principal-value integral:
/// |p.v. integral - (Gamma(z) 1F1(1,1-z,-1) - (pi/e) cot pi z)|.
double maricev_check(ComplexValue z);

/// |1F1(1,1-z,-1) - (-1)^z/e (Gamma(1-z) + z Gamma(-z,-1))|.
double conversion_check(ComplexValue z);

enum class GridFunction { K, K1 };

struct GridSpec {
    double re_min, re_max, im_min, im_max;
    int re_steps = 1, im_steps = 1;
    double pole_exclusion_radius = 0.05;
};

struct PairStat {
    Method a, b;
    double max_abs_diff = 0.0;
    ComplexValue argmax{0.0, 0.0};
};

struct GridPoint {
    ComplexValue z;
    bool skipped = false;  // excluded by radius, or every method failed here
    std::vector<std::optional<ComplexValue>> values;  // one slot per method
};

struct SweepReport {
    GridSpec grid;
    GridFunction function = GridFunction::K;
    std::vector<Method> methods;
    std::vector<PairStat> pairs;
    double residual_max = 0.0;
    int skipped_points = 0;
    std::vector<GridPoint> points;
};

/// Evaluate every method at every non-excluded grid point; record pairwise
/// max discrepancies and the max functional-equation residual. Points within
/// pole_exclusion_radius of the pole set (Z<=0 for K, Z for K1) are skipped.
/// Per-point work may run on several threads (capped by KUREPA_THREADS);
/// the report is assembled in deterministic order.
SweepReport grid_sweep(const GridSpec& spec, const std::vector<Method>& methods,
                       GridFunction function = GridFunction::K,
                       double tol = kDefaultTol);

std::string report_to_json(const SweepReport& report);
std::string report_to_csv(const SweepReport& report);

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double bound = 0.0;
    bool pass = false;
    std::string detail;
};

struct SelfTestOptions {
    // Internal hook: shrink every bound so each check fails (exercises the
    // failure path of the CLI self test).
    bool corrupt_tolerances = false;
};

/// Desk-scale run of the whole cross-validation suite. Deterministic.
std::vector<CheckResult> run_selftest(const SelfTestOptions& options = {});

} // namespace kurepa::xval
