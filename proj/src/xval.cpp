#include "kurepa/xval.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <locale>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "kurepa/quadrature.hpp"

namespace kurepa::xval {

namespace {

using json = nlohmann::json;

} // namespace

double functional_equation_residual(ComplexValue z, Method method, double tol) {
    const ComplexValue kz = K(z, method, tol).value;
    const ComplexValue kzm1 = K(z - 1.0, method, tol).value;
    return std::abs(kz - kzm1 - gamma(z));
}

double k1_functional_equation_residual(ComplexValue z, double tol) {
    const ComplexValue a = k1_series(z, tol).value;
    const ComplexValue b = k1_series(z - 1.0, tol).value;
    return std::abs(a - b - gamma(z));
}

ComplexValue fn_closed_form(int n, ComplexValue z) {
    if (n < 1) throw DomainError("fn_closed_form: requires n >= 1");
    if (z == ComplexValue(0.0, 0.0)) throw DomainError("fn_closed_form: z = 0");
    ComplexValue zp = std::pow(z, ComplexValue(-n, 0.0));  // z^(j-n), j = 0
    ComplexValue sum(0.0, 0.0);
    double factorial = 1.0;
    for (int j = 0; j <= n; ++j) {
        if (j > 0) factorial *= j;
        const double coeff = (j + 1.0) / factorial;  // j/j! + 1/j!
        sum += (j % 2 == 0 ? coeff : -coeff) * zp;
        zp *= z;
    }
    const ComplexValue zmn = std::pow(z, ComplexValue(-n, 0.0));
    return sum + std::exp(-z) * (zmn * z - zmn);
}

ComplexValue fn_series(int n, ComplexValue z, int terms) {
    if (n < 1) throw DomainError("fn_series: requires n >= 1");
    ComplexValue sum(0.0, 0.0);
    ComplexValue zk(1.0, 0.0);
    double factorial = 1.0;  // (n+k)! running, start at n!
    for (int j = 2; j <= n; ++j) factorial *= j;
    for (int k = 1; k <= terms; ++k) {
        factorial *= n + k;
        zk *= z;
        const double coeff = (n + k + 1.0) / factorial;
        const ComplexValue term = ((n + k) % 2 == 0 ? -coeff : coeff) * zk;
        sum += term;
        if (std::abs(term) < 1e-20 * (1.0 + std::abs(sum)) && k > 8) break;
    }
    return sum;
}

double entire_sum_check(ComplexValue z, int N) {
    if (z == ComplexValue(0.0, 0.0)) throw DomainError("entire_sum_check: z = 0");
    if (N < 1) throw DomainError("entire_sum_check: requires N >= 1");
    const bool use_closed = std::abs(z) >= 1.0;
    ComplexValue sum(0.0, 0.0);
    for (int n = 1; n <= N; ++n)
        sum += use_closed ? fn_closed_form(n, z) : fn_series(n, z);
    return std::abs(sum - (std::exp(-z) - 1.0));
}

double telescoping_check(int k, int N) {
    if (k < 1) throw DomainError("telescoping_check: requires k >= 1");
    if (N < 1) throw DomainError("telescoping_check: requires N >= 1");
    double factorial = 1.0;  // (n+k)!
    for (int j = 2; j <= k; ++j) factorial *= j;
    double sum = 0.0;
    for (int n = 1; n <= N; ++n) {
        factorial *= n + k;
        const double term = (n + k + 1.0) / factorial;
        sum += ((n + k) % 2 == 0) ? -term : term;
    }
    double kfact = 1.0;
    for (int j = 2; j <= k; ++j) kfact *= j;
    const double target = (k % 2 == 0 ? 1.0 : -1.0) / kfact;
    return std::abs(sum - target);
}

double double_series_check(ComplexValue z, int N, int Kmax) {
    if (N < 1 || Kmax < 0) throw DomainError("double_series_check: requires N >= 1, Kmax >= 0");
    ComplexValue total(0.0, 0.0);
    for (int n = 1; n <= N; ++n) {
        double factorial = 1.0;  // (k+n)!
        for (int j = 2; j <= n; ++j) factorial *= j;
        ComplexValue zk(1.0, 0.0);
        ComplexValue inner(0.0, 0.0);
        for (int k = 0; k <= Kmax; ++k) {
            if (k > 0) {
                factorial *= k + n;
                zk *= z;
            }
            const double coeff = 1.0 / factorial;
            inner += ((k + n) % 2 == 0 ? coeff : -coeff) * zk;
        }
        total += inner;
    }
    const ComplexValue lhs = (z - 1.0) * total;
    const ComplexValue rhs = std::exp(-z) - std::exp(ComplexValue(-1.0, 0.0));
    return std::abs(lhs - rhs);
}

namespace {

// One excised integral int_0^(1-eps) + int_(1+eps)^T of e^-t t^z/(t-1).
// On the left segment t = u^p turns the t^z endpoint singularity into
// u^(p(Re z + 1) - 1); p is chosen so that exponent stays >= 0.3.
ComplexValue excised_integral(ComplexValue z, double eps) {
    const double T = 40.0 + 2.0 * std::abs(z);
    const double p = std::max(2.0, std::ceil(1.3 / (1.0 + z.real())));
    auto left = [&](double u) -> ComplexValue {
        const double t = std::pow(u, p);
        return p * std::pow(u, p - 1.0) * std::exp(-t) * std::exp(z * std::log(t)) / (t - 1.0);
    };
    auto right = [&](double t) -> ComplexValue {
        return std::exp(-t) * std::exp(z * std::log(t)) / (t - 1.0);
    };
    const QuadResult l = integrate_adaptive(left, 0.0, std::pow(1.0 - eps, 1.0 / p), 1e-11);
    const QuadResult r = integrate_adaptive(right, 1.0 + eps, T, 1e-11);
    return l.value + r.value;
}

} // namespace

ComplexValue pv_integral(ComplexValue z) {
    if (z.real() <= -1.0) throw DomainError("pv_integral: requires Re z > -1");
    if (distance_to_integer(z) <= 1e-12)
        throw PoleError("pv_integral: cot factor of the identity is singular at integer z");
    // The excision error is odd in eps: I(eps) = pv + c1 eps + c3 eps^3 + ...
    // so the second Richardson stage carries weight 8/7.
    const double eps0 = 1e-2;
    const ComplexValue i0 = excised_integral(z, eps0);
    const ComplexValue i1 = excised_integral(z, eps0 / 2);
    const ComplexValue i2 = excised_integral(z, eps0 / 4);
    const ComplexValue r1 = 2.0 * i1 - i0;
    const ComplexValue r2 = 2.0 * i2 - i1;
    if (std::abs(r2 - r1) > 1e-4)
        throw ConvergenceError("pv_integral: excision extrapolation did not settle");
    return (8.0 * r2 - r1) / 7.0;
}

double maricev_check(ComplexValue z) {
    if (z.real() <= -1.0) throw DomainError("maricev_check: requires Re z > -1");
    const ComplexValue lhs = pv_integral(z);
    const ComplexValue rhs = gamma(z) * kummer_1f1(1.0, ComplexValue(1.0, 0.0) - z, -1.0) -
                             (constants::pi / constants::e) * cot_pi(z);
    return std::abs(lhs - rhs);
}

double conversion_check(ComplexValue z) {
    const ComplexValue one(1.0, 0.0);
    const ComplexValue lhs = kummer_1f1(one, one - z, ComplexValue(-1.0, 0.0));
    const ComplexValue rhs = branch::minus_one_pow(z) / constants::e *
                             (gamma(one - z) + z * upper_incomplete_gamma(-z, ComplexValue(-1.0, 0.0)));
    return std::abs(lhs - rhs);
}

namespace {

double sample_coordinate(double lo, double hi, int steps, int i) {
    if (steps <= 1) return lo == hi ? lo : 0.5 * (lo + hi);
    return lo + (hi - lo) * i / (steps - 1);
}

bool excluded(ComplexValue z, GridFunction fn, double radius) {
    const double r = std::round(z.real());
    for (double cand : {r - 1.0, r, r + 1.0}) {
        if (fn == GridFunction::K && cand > 0.5) continue;
        if (std::abs(z - ComplexValue(cand, 0.0)) < radius) return true;
    }
    return false;
}

ComplexValue eval_point(GridFunction fn, ComplexValue z, Method m, double tol) {
    if (fn == GridFunction::K) return K(z, m, tol).value;
    return K1(z, m, tol).value;
}

int sweep_thread_count(size_t npoints) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("KUREPA_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && cap < static_cast<long>(n)) n = static_cast<unsigned>(cap);
    }
    return static_cast<int>(std::min<size_t>(n, std::max<size_t>(npoints, 1)));
}

} // namespace

SweepReport grid_sweep(const GridSpec& spec, const std::vector<Method>& methods,
                       GridFunction function, double tol) {
    if (spec.re_steps < 1 || spec.im_steps < 1)
        throw DomainError("grid_sweep: steps must be >= 1");
    if (spec.re_min > spec.re_max || spec.im_min > spec.im_max)
        throw DomainError("grid_sweep: empty range");
    if ((spec.re_steps > 1 && spec.re_min >= spec.re_max) ||
        (spec.im_steps > 1 && spec.im_min >= spec.im_max))
        throw DomainError("grid_sweep: range must be non-degenerate when steps > 1");
    if (methods.empty()) throw DomainError("grid_sweep: needs at least one method");

    SweepReport report;
    report.grid = spec;
    report.function = function;
    report.methods = methods;

    for (int j = 0; j < spec.im_steps; ++j)
        for (int i = 0; i < spec.re_steps; ++i) {
            GridPoint p;
            p.z = {sample_coordinate(spec.re_min, spec.re_max, spec.re_steps, i),
                   sample_coordinate(spec.im_min, spec.im_max, spec.im_steps, j)};
            p.values.resize(methods.size());
            report.points.push_back(std::move(p));
        }

    struct PointResidual {
        double value = -1.0;  // <0: not computed
    };
    std::vector<PointResidual> residuals(report.points.size());

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t idx = next.fetch_add(1);
            if (idx >= report.points.size()) return;
            GridPoint& p = report.points[idx];
            if (excluded(p.z, function, spec.pole_exclusion_radius)) {
                p.skipped = true;
                continue;
            }
            bool any = false;
            for (size_t m = 0; m < methods.size(); ++m) {
                try {
                    p.values[m] = eval_point(function, p.z, methods[m], tol);
                    any = true;
                } catch (const std::exception&) {
                    p.values[m] = std::nullopt;
                }
            }
            if (!any) {
                p.skipped = true;
                continue;
            }
            if (!excluded(p.z - 1.0, function, spec.pole_exclusion_radius)) {
                try {
                    residuals[idx].value =
                        function == GridFunction::K
                            ? functional_equation_residual(p.z, Method::Auto, tol)
                            : k1_functional_equation_residual(p.z, tol);
                } catch (const std::exception&) {
                }
            }
        }
    };
    const int nthreads = sweep_thread_count(report.points.size());
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (size_t a = 0; a < methods.size(); ++a)
        for (size_t b = a + 1; b < methods.size(); ++b) {
            PairStat stat;
            stat.a = methods[a];
            stat.b = methods[b];
            for (const GridPoint& p : report.points) {
                if (p.skipped || !p.values[a] || !p.values[b]) continue;
                const double d = std::abs(*p.values[a] - *p.values[b]);
                if (d > stat.max_abs_diff) {
                    stat.max_abs_diff = d;
                    stat.argmax = p.z;
                }
            }
            report.pairs.push_back(stat);
        }
    for (const GridPoint& p : report.points)
        if (p.skipped) ++report.skipped_points;
    for (const PointResidual& r : residuals)
        if (r.value >= 0.0) report.residual_max = std::max(report.residual_max, r.value);
    return report;
}

std::string report_to_json(const SweepReport& report) {
    json doc;
    doc["grid"] = {{"re_min", report.grid.re_min}, {"re_max", report.grid.re_max},
                   {"im_min", report.grid.im_min}, {"im_max", report.grid.im_max},
                   {"re_steps", report.grid.re_steps}, {"im_steps", report.grid.im_steps},
                   {"pole_exclusion_radius", report.grid.pole_exclusion_radius}};
    doc["function"] = report.function == GridFunction::K ? "K" : "K1";
    json pairs = json::array();
    for (const PairStat& p : report.pairs)
        pairs.push_back({{"a", method_name(p.a)},
                         {"b", method_name(p.b)},
                         {"max_abs_diff", p.max_abs_diff},
                         {"at", {p.argmax.real(), p.argmax.imag()}}});
    doc["pairs"] = pairs;
    doc["residual_max"] = report.residual_max;
    doc["skipped_points"] = report.skipped_points;
    return doc.dump(2);
}

std::string report_to_csv(const SweepReport& report) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << "re,im";
    for (Method m : report.methods)
        os << "," << method_name(m) << "_re," << method_name(m) << "_im";
    os << "\n";
    for (const GridPoint& p : report.points) {
        os << p.z.real() << "," << p.z.imag();
        for (const auto& v : p.values) {
            if (v)
                os << "," << v->real() << "," << v->imag();
            else
                os << ",,";
        }
        os << "\n";
    }
    return os.str();
}

namespace {

class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    // Point with both coordinates in [-range, range], at least `clear` away
    // from every integer on the real axis.
    ComplexValue point_clear_of_integers(double range, double clear) {
        for (;;) {
            const ComplexValue z{uniform(-range, range), uniform(-range, range)};
            if (distance_to_integer(z) >= clear) return z;
        }
    }

private:
    std::mt19937_64 gen_;
};

} // namespace

std::vector<CheckResult> run_selftest(const SelfTestOptions& options) {
    std::vector<CheckResult> out;
    const double squeeze = options.corrupt_tolerances ? 1e-12 : 1.0;
    auto push = [&](std::string name, double residual, double bound, std::string detail = "") {
        CheckResult c;
        c.name = std::move(name);
        c.residual = residual;
        c.bound = bound * squeeze;
        c.pass = residual <= c.bound;
        c.detail = std::move(detail);
        out.push_back(std::move(c));
    };

    {  // functional equation, K and K1
        Rng rng(20240915);
        double worst_k = 0.0, worst_k1 = 0.0;
        ComplexValue at_k, at_k1;
        for (int i = 0; i < 60; ++i) {
            const ComplexValue z = rng.point_clear_of_integers(5.0, 0.1);
            const double bound_scale = 1.0 + std::abs(gamma(z));
            const double rk = functional_equation_residual(z, Method::Auto) / bound_scale;
            if (rk > worst_k) { worst_k = rk; at_k = z; }
            const double rk1 = k1_functional_equation_residual(z) / bound_scale;
            if (rk1 > worst_k1) { worst_k1 = rk1; at_k1 = z; }
        }
        std::ostringstream d1, d2;
        d1 << "worst at " << at_k.real() << (at_k.imag() < 0 ? "" : "+") << at_k.imag() << "i";
        d2 << "worst at " << at_k1.real() << (at_k1.imag() < 0 ? "" : "+") << at_k1.imag() << "i";
        push("functional-equation-K", worst_k, 1e-9, d1.str());
        push("functional-equation-K1", worst_k1, 1e-9, d2.str());
    }

    {  // representation agreement on the derivation strip
        GridSpec spec{0.05, 0.95, -2.0, 2.0, 12, 12, 0.05};
        const SweepReport rep =
            grid_sweep(spec, {Method::Integral, Method::Slavic, Method::IncGamma});
        double worst = 0.0;
        for (const PairStat& p : rep.pairs) worst = std::max(worst, p.max_abs_diff);
        push("representation-agreement", worst, 1e-8);
    }

    {  // series identity checks
        Rng rng(77001);
        double worst = 0.0;
        for (int i = 0; i < 12; ++i) {
            const double re = rng.uniform(-3.0, 3.0);
            const double im = rng.uniform(-3.0, 3.0);
            ComplexValue z{re, im};
            if (std::abs(z) < 0.05) z += ComplexValue(0.5, 0.0);
            worst = std::max(worst, entire_sum_check(z, 30));
        }
        push("entire-sum-identity", worst, 1e-10);

        double worst_tel = 0.0;
        for (int k = 1; k <= 10; ++k) worst_tel = std::max(worst_tel, telescoping_check(k, 30));
        push("telescoping-sum", worst_tel, 1e-13);

        double worst_l3 = 0.0;
        for (int i = 0; i < 12; ++i) {
            const ComplexValue z{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
            worst_l3 = std::max(worst_l3, double_series_check(z, 40, 60));
        }
        push("double-series-sum", worst_l3, 1e-9);

        double worst_conv = 0.0;
        for (int i = 0; i < 18; ++i) {
            const ComplexValue z = rng.point_clear_of_integers(3.9, 0.05);
            worst_conv = std::max(worst_conv, conversion_check(z));
        }
        push("kummer-conversion", worst_conv, 1e-9);

        double worst_mar = 0.0;
        for (int i = 0; i < 6; ++i) {
            ComplexValue z;
            do {
                z = {rng.uniform(-0.4, 2.9), rng.uniform(-1.5, 1.5)};
            } while (distance_to_integer(z) < 0.1);
            worst_mar = std::max(worst_mar, maricev_check(z));
        }
        push("pv-integral-identity", worst_mar, 1e-6);
    }

    {  // principal values against the symmetric-limit oracle
        double worst = 0.0;
        auto Kf = [](ComplexValue w) { return K(w).value; };
        for (int n = 1; n <= 6; ++n) {
            const double e1 = 1e-4;
            const ComplexValue m{static_cast<double>(-n), 0.0};
            const ComplexValue a0 =
                0.5 * (Kf(m - ComplexValue(e1, 0)) + Kf(m + ComplexValue(e1, 0)));
            const ComplexValue a1 =
                0.5 * (Kf(m - ComplexValue(e1 / 10, 0)) + Kf(m + ComplexValue(e1 / 10, 0)));
            const ComplexValue extrap = (100.0 * a1 - a0) / 99.0;
            worst = std::max(worst, std::abs(extrap.real() - pv_kurepa(-n)));
        }
        push("principal-value-symmetric-limit", worst, 1e-6);
        push("pv-gamma-at-0", std::abs(pv_gamma_at_negative_integer(0) + constants::euler_gamma),
             1e-14);
        push("l1-vs-ei", std::abs(l1_constant() - constants::ei_one() / constants::e), 1e-12);
    }

    {  // residues against the numerical limit
        double worst = 0.0;
        auto Kf = [](ComplexValue w) { return K(w).value; };
        for (int n : {1, 3, 4, 5}) {
            const double r = numerical_residue(Kf, ComplexValue(-n, 0.0)).real();
            worst = std::max(worst, std::abs(r - residue_kurepa(n)));
        }
        auto K1f = [](ComplexValue w) { return k1_series(w).value; };
        for (int m : {-3, -1, 0, 1, 2}) {
            const double r = numerical_residue(K1f, ComplexValue(m, 0.0)).real();
            worst = std::max(worst, std::abs(r - residue_k1(m)));
        }
        push("residue-consistency", worst, 1e-5);
    }

    return out;
}

} // namespace kurepa::xval
