#include "kurepa/kurepa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kurepa/quadrature.hpp"

namespace kurepa {

namespace {

constexpr double kPoleTol = 1e-12;
constexpr double kNearPoleBand = 1e-3;

std::string describe(ComplexValue z) {
    std::ostringstream os;
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

// K is meromorphic with simple poles at -1 and -n (n >= 3); -2 is removable.
double distance_to_kurepa_pole(ComplexValue z) {
    const double r = std::round(z.real());
    double best = std::numeric_limits<double>::infinity();
    for (double cand : {r - 1.0, r, r + 1.0}) {
        if (cand > -0.5 || cand == -2.0) continue;
        best = std::min(best, std::abs(z - ComplexValue(cand, 0.0)));
    }
    return best;
}

bool at_kurepa_pole(ComplexValue z) { return distance_to_kurepa_pole(z) <= kPoleTol; }

bool at_removable_point(ComplexValue z) {
    return std::abs(z - ComplexValue(-2.0, 0.0)) <= kPoleTol;
}

// Condition-factor inflation inside the near-pole band (honest reporting:
// the evaluation passes through Gamma values of size ~ 1/dist).
double near_pole_inflation(double dist) {
    return dist < kNearPoleBand ? kNearPoleBand / std::max(dist, 1e-300) * 1e3 : 1.0;
}

double real_log_gamma(double x) { return log_gamma(ComplexValue(x, 0.0)).real(); }

} // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::Integral: return "Integral";
        case Method::Recurrence: return "Recurrence";
        case Method::Series: return "Series";
        case Method::Slavic: return "Slavic";
        case Method::IncGamma: return "IncGamma";
        case Method::Auto: return "Auto";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    std::string s;
    for (char c : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "integral") return Method::Integral;
    if (s == "recurrence") return Method::Recurrence;
    if (s == "series") return Method::Series;
    if (s == "slavic") return Method::Slavic;
    if (s == "incgamma") return Method::IncGamma;
    if (s == "auto") return Method::Auto;
    throw DomainError("unknown method '" + name + "'");
}

std::string flags_to_string(EvalFlags f) {
    std::string out;
    auto add = [&out](const char* name) {
        if (!out.empty()) out += "|";
        out += name;
    };
    if (has_flag(f, EvalFlags::NearPole)) add("NearPole");
    if (has_flag(f, EvalFlags::PrincipalValueUsed)) add("PrincipalValueUsed");
    if (has_flag(f, EvalFlags::RemovableSingularity)) add("RemovableSingularity");
    if (out.empty()) out = "None";
    return out;
}

EvalResult kurepa_integral(ComplexValue z, double tol) {
    if (z.real() <= 0.0)
        throw DomainError("kurepa_integral: requires Re z > 0 (use the recurrence for Re z <= 0)");
    const double delta = 1e-2;
    const double x = z.real();
    const double T = 40.0 + 2.0 * std::abs(z);

    bool series_branch_fired = false;
    auto integrand = [&](double t) -> ComplexValue {
        const double u = t - 1.0;
        if (std::abs(u) < delta) {
            series_branch_fired = true;
            // (t^z - 1)/(t - 1) = sum_{k>=1} binom(z,k) u^(k-1)
            ComplexValue coeff = z;
            ComplexValue sum = coeff;
            ComplexValue upow(1.0, 0.0);
            for (int k = 2; k <= 40; ++k) {
                coeff *= (z - ComplexValue(k - 1.0, 0.0)) / static_cast<double>(k);
                upow *= u;
                const ComplexValue term = coeff * upow;
                sum += term;
                if (std::abs(term) < 1e-18 * std::abs(sum)) break;
            }
            return std::exp(-t) * sum;
        }
        return std::exp(-t) * (std::exp(z * std::log(t)) - 1.0) / u;
    };

    const double seg_tol = std::max(tol, 1e-11) / 3.0;
    QuadResult q1 = integrate_adaptive(integrand, 0.0, 1.0 - delta, seg_tol);
    QuadResult q2 = integrate_adaptive(integrand, 1.0 - delta, 1.0 + delta, seg_tol);
    QuadResult q3 = integrate_adaptive(integrand, 1.0 + delta, T, seg_tol);

    // Tail: |int_T^inf| <= 2/(T-1) * Gamma(x+1,T) <= 2 e^-T T^x / ((T-1)(1 - x/T)).
    const double tail = 2.0 * std::exp(-T + x * std::log(T)) / ((T - 1.0) * (1.0 - x / T));

    EvalResult r;
    r.value = q1.value + q2.value + q3.value;
    r.method = Method::Integral;
    r.abs_error_estimate = q1.abs_error + q2.abs_error + q3.abs_error + tail;
    if (series_branch_fired) r.flags |= EvalFlags::RemovableSingularity;
    return r;
}

namespace {

EvalResult kurepa_recurrence(ComplexValue z, double tol) {
    // Normalise Re into (0.5, 1.5], evaluate the base point by the integral,
    // and carry the Gamma sum across.
    const double x = z.real();
    ComplexValue gamma_sum(0.0, 0.0);
    double gamma_abs = 0.0;
    ComplexValue base = z;
    if (x <= 0.5) {
        const int k = static_cast<int>(std::floor(0.5 - x)) + 1;
        for (int j = 1; j <= k; ++j) {
            const ComplexValue g = gamma(z + ComplexValue(j, 0.0));
            gamma_sum -= g;
            gamma_abs += std::abs(g);
        }
        base = z + ComplexValue(k, 0.0);
    } else if (x > 1.5) {
        const int m = static_cast<int>(std::ceil(x - 1.5));
        for (int j = 0; j < m; ++j) {
            const ComplexValue g = gamma(z - ComplexValue(j, 0.0));
            gamma_sum += g;
            gamma_abs += std::abs(g);
        }
        base = z - ComplexValue(m, 0.0);
    }
    EvalResult r = kurepa_integral(base, tol);
    r.value += gamma_sum;
    r.method = Method::Recurrence;
    r.abs_error_estimate += 1e-13 * gamma_abs;
    return r;
}

} // namespace

EvalResult K(ComplexValue z, Method method, double tol) {
    if (at_kurepa_pole(z))
        throw PoleError("K: simple pole at z = " + describe(z) +
                        "; use residue_kurepa / pv_kurepa for this point");
    if (at_removable_point(z)) {
        EvalResult r;
        r.value = {1.0, 0.0};
        r.method = method == Method::Auto ? Method::Recurrence : method;
        r.abs_error_estimate = 0.0;
        r.flags = EvalFlags::RemovableSingularity;
        return r;
    }
    Method resolved = method;
    if (resolved == Method::Auto) {
        if (std::abs(z.imag()) > 8.0) resolved = Method::Slavic;
        else if (z.real() > 0.0) resolved = Method::Integral;
        else resolved = Method::Recurrence;
    }
    if (resolved == Method::Series) resolved = Method::Slavic;

    EvalResult r;
    switch (resolved) {
        case Method::Integral: r = kurepa_integral(z, tol); break;
        case Method::Recurrence: r = kurepa_recurrence(z, tol); break;
        case Method::Slavic: r = kurepa_slavic(z, tol); break;
        case Method::IncGamma: r = kurepa_incgamma(z); break;
        default: throw DomainError("K: unsupported method");
    }
    const double dist = distance_to_kurepa_pole(z);
    if (dist < kNearPoleBand) {
        r.flags |= EvalFlags::NearPole;
        r.abs_error_estimate *= near_pole_inflation(dist);
    }
    // The recurrence also degrades near the regular points 0, -2 where the
    // Gamma terms (not K itself) blow up.
    if (resolved == Method::Recurrence) {
        const double hazard = distance_to_integer(z);
        if (hazard < kNearPoleBand)
            r.abs_error_estimate = std::max(r.abs_error_estimate,
                                            1e-13 * near_pole_inflation(hazard));
    }
    return r;
}

TailBoundParams classify_tail_case(ComplexValue z) {
    TailBoundParams p{};
    p.x = z.real();
    p.y = z.imag();
    const double r = std::round(p.x);
    if (std::abs(p.x - r) <= kPoleTol) {
        if (p.y == 0.0)
            throw PoleError("k1 tail bound: integer z = " + describe(z));
        p.which = TailBoundParams::Case::D2;
        p.m = static_cast<int>(r);
        p.min_terms = std::max(p.m + 1, 0);
    } else {
        p.which = TailBoundParams::Case::D1;
        p.m = static_cast<int>(std::floor(p.x));
        p.min_terms = std::max(p.m + 2, 0);
    }
    return p;
}

double k1_tail_bound(ComplexValue z, int N) {
    if (distance_to_integer(z) <= kPoleTol)
        throw PoleError("k1_tail_bound: pole at integer z = " + describe(z));
    const TailBoundParams p = classify_tail_case(z);
    if (N < p.min_terms)
        throw DomainError("k1_tail_bound: N below validity threshold for this z");
    double log_bound;
    if (p.which == TailBoundParams::Case::D1) {
        const double s = std::abs(sin_pi(ComplexValue(p.x, 0.0)).real());
        log_bound = std::log(2.0 * constants::pi / s) - real_log_gamma(N - p.m);
    } else {
        const double ysh = p.y * std::sinh(constants::pi * p.y);  // even in y, positive
        log_bound = std::log(2.0) + 0.5 * std::log(constants::pi / ysh) -
                    real_log_gamma(N - p.m + 1);
    }
    return std::max(std::exp(log_bound), 1e-300);
}

EvalResult k1_series(ComplexValue z, double tol) {
    if (distance_to_integer(z) <= kPoleTol)
        throw PoleError("k1: simple pole at integer z = " + describe(z) +
                        "; use pv_k1 / residue_k1 for this point");
    const TailBoundParams p = classify_tail_case(z);
    ComplexValue sum(0.0, 0.0);
    double abs_sum = 0.0;
    int n = 0;
    auto add_term = [&](int idx) {
        const ComplexValue g = gamma(z - ComplexValue(idx, 0.0));
        sum += g;
        abs_sum += std::abs(g);
    };
    for (; n < p.min_terms; ++n) add_term(n);
    double bound = k1_tail_bound(z, n);
    while (bound > tol && n < p.min_terms + 400) {
        add_term(n);
        ++n;
        bound = k1_tail_bound(z, n);
    }
    EvalResult r;
    r.value = sum;
    r.method = Method::Series;
    r.abs_error_estimate = bound + 1e-14 * abs_sum;
    const double dist = distance_to_integer(z);
    if (dist < kNearPoleBand) {
        r.flags |= EvalFlags::NearPole;
        r.abs_error_estimate *= near_pole_inflation(dist);
    }
    return r;
}

EvalResult kurepa_slavic(ComplexValue z, double tol) {
    if (distance_to_integer(z) <= kPoleTol)
        throw PoleError("kurepa_slavic: representation has a pole at integer z = " + describe(z) +
                        "; integer points are served by pv_kurepa");
    EvalResult r = k1_series(z, tol);
    const ComplexValue cot = cot_pi(z);
    const double pie = constants::pi / constants::e;
    r.value += constants::ei_one() / constants::e - pie * cot;
    r.method = Method::Slavic;
    r.abs_error_estimate += 1e-15 * (1.0 + pie * std::abs(cot));
    return r;
}

namespace {

// Shared second term of Eqs. for K and K1: (-1)^z Gamma(1+z) Gamma(-z,-1) / e,
// with an error estimate tracking the Gamma(a) - gamma(a,-1) cancellation.
struct IncGammaTerm {
    ComplexValue value;
    double err;
};

IncGammaTerm incgamma_term(ComplexValue z) {
    const ComplexValue a = -z;
    const ComplexValue g = gamma(a);
    const ComplexValue lower = lower_incomplete_gamma(a, ComplexValue(-1.0, 0.0));
    const ComplexValue upper = g - lower;
    const ComplexValue prefix =
        branch::minus_one_pow(z) * gamma(ComplexValue(1.0, 0.0) + z) / constants::e;
    IncGammaTerm t;
    t.value = prefix * upper;
    t.err = 1e-13 * std::abs(prefix) * (std::abs(g) + std::abs(lower)) + 1e-15;
    return t;
}

void check_k1_point(ComplexValue z, const char* fn) {
    if (distance_to_integer(z) <= kPoleTol)
        throw PoleError(std::string(fn) + ": pole at integer z = " + describe(z) +
                        "; use pv_kurepa / pv_k1 for integer points");
}

} // namespace

EvalResult kurepa_incgamma(ComplexValue z) {
    check_k1_point(z, "kurepa_incgamma");
    const IncGammaTerm t = incgamma_term(z);
    const ComplexValue head =
        ComplexValue(constants::ei_one(), constants::pi) / constants::e;
    EvalResult r;
    r.value = head + t.value;
    r.method = Method::IncGamma;
    r.abs_error_estimate =
        t.err + 1e-14 * (std::abs(head) + std::abs(t.value) + std::abs(r.value) + 1.0);
    const double dist = distance_to_kurepa_pole(z);
    if (dist < kNearPoleBand) r.flags |= EvalFlags::NearPole;
    const double hazard = distance_to_integer(z);
    if (hazard < kNearPoleBand) r.abs_error_estimate *= near_pole_inflation(hazard);
    return r;
}

EvalResult k1_incgamma(ComplexValue z) {
    check_k1_point(z, "k1_incgamma");
    const IncGammaTerm t = incgamma_term(z);
    const ComplexValue head =
        branch::minus_one_pow(z) * constants::pi / (constants::e * sin_pi(z));
    EvalResult r;
    r.value = head + t.value;
    r.method = Method::IncGamma;
    r.abs_error_estimate =
        t.err + 1e-14 * (std::abs(head) + std::abs(t.value) + std::abs(r.value) + 1.0);
    const double dist = distance_to_integer(z);
    if (dist < kNearPoleBand) {
        r.flags |= EvalFlags::NearPole;
        r.abs_error_estimate *= near_pole_inflation(dist);
    }
    return r;
}

EvalResult K1(ComplexValue z, Method method, double tol) {
    switch (method) {
        case Method::Auto:
        case Method::Series: return k1_series(z, tol);
        case Method::IncGamma: return k1_incgamma(z);
        default:
            throw DomainError(std::string("K1: method ") + method_name(method) +
                              " applies to K only (use series or incgamma)");
    }
}

double l1_constant() {
    static const double value = [] {
        double sum = 0.0;
        double harmonic = 0.0;
        double factorial = 1.0;
        for (int n = 0; n <= 60; ++n) {
            if (n > 0) {
                harmonic += 1.0 / n;
                factorial *= n;
            }
            const double term = (-constants::euler_gamma + harmonic) / factorial;
            sum += (n % 2 == 0) ? -term : term;  // (-1)^(n+1)
            if (n > 1 && std::abs(term) < 1e-16) break;
        }
        return sum;
    }();
    return value;
}

double pv_kurepa(int m) {
    if (m >= 0) {
        // Regular point: K(m) = sum of factorials, as a double.
        double sum = 0.0;
        double factorial = 1.0;
        for (int i = 0; i < m; ++i) {
            if (i > 0) factorial *= i;
            sum += factorial;
        }
        return sum;
    }
    const int n = -m;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += -pv_gamma_at_negative_integer(i);
    return sum;
}

double pv_k1(int m) {
    if (m > 0) {
        double sum = 0.0;
        double factorial = 1.0;
        for (int i = 0; i < m; ++i) {
            if (i > 0) factorial *= i;
            sum += factorial;
        }
        return sum - l1_constant();
    }
    return pv_kurepa(m) - l1_constant();
}

double residue_kurepa(int n) {
    if (n < 1) throw DomainError("residue_kurepa: K is regular at non-negative integers");
    if (n == 1) return -1.0;
    if (n == 2) return 0.0;  // removable
    double sum = 0.0;
    double factorial = 2.0;  // k!
    for (int k = 2; k <= n - 1; ++k) {
        if (k > 2) factorial *= k;
        sum += (k % 2 == 1 ? 1.0 : -1.0) / factorial;
    }
    return sum;
}

double residue_k1(int m) {
    const double res_k = (m <= -1) ? residue_kurepa(-m) : 0.0;
    return 1.0 / constants::e + res_k;
}

ComplexValue numerical_residue(const std::function<ComplexValue(ComplexValue)>& f,
                               ComplexValue m) {
    const double eps0 = 1e-4;
    const ComplexValue a0 = eps0 * f(m + ComplexValue(eps0, 0.0));
    const ComplexValue a1 = (eps0 / 2) * f(m + ComplexValue(eps0 / 2, 0.0));
    const ComplexValue a2 = (eps0 / 4) * f(m + ComplexValue(eps0 / 4, 0.0));
    const ComplexValue r1 = 2.0 * a1 - a0;
    const ComplexValue r2 = 2.0 * a2 - a1;
    if (std::abs(r2 - r1) > 1e-3)
        throw ConvergenceError("numerical_residue: extrapolants disagree; "
                               "pole is absent or not simple");
    return (4.0 * r2 - r1) / 3.0;
}

} // namespace kurepa
