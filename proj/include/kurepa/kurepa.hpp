#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "kurepa/special_functions.hpp"

namespace kurepa {

enum class Method { Integral, Recurrence, Series, Slavic, IncGamma, Auto };

const char* method_name(Method m);
Method method_from_name(const std::string& name);  // throws DomainError

enum class EvalFlags : std::uint8_t {
    None = 0,
    NearPole = 1,
    PrincipalValueUsed = 2,
    RemovableSingularity = 4,
};
inline EvalFlags operator|(EvalFlags a, EvalFlags b) {
    return static_cast<EvalFlags>(static_cast<std::uint8_t>(a) | static_cast<std::uint8_t>(b));
}
inline EvalFlags& operator|=(EvalFlags& a, EvalFlags b) { return a = a | b; }
inline bool has_flag(EvalFlags f, EvalFlags bit) {
    return (static_cast<std::uint8_t>(f) & static_cast<std::uint8_t>(bit)) != 0;
}
std::string flags_to_string(EvalFlags f);

struct EvalResult {
    ComplexValue value;
    Method method = Method::Auto;
    double abs_error_estimate = 0.0;
    EvalFlags flags = EvalFlags::None;
};

inline constexpr double kDefaultTol = 1e-10;

/// K(z) for Re z > 0 by the integral of e^-t (t^z - 1)/(t - 1) over [0, inf).
/// The removable integrand point t = 1 is evaluated by its Taylor series.
EvalResult kurepa_integral(ComplexValue z, double tol = kDefaultTol);

/// K(z) anywhere off the poles {-1, -3, -4, ...}. Auto dispatch: Slavic when
/// |Im z| > 8, Integral for Re z > 0, Recurrence otherwise. K(-2) = 1
/// (removable). For K, Method::Series is an alias of Method::Slavic.
EvalResult K(ComplexValue z, Method method = Method::Auto, double tol = kDefaultTol);

/// K1(z) = sum_n Gamma(z - n), truncated once the rigorous tail bound drops
/// below tol. Poles at every integer.
EvalResult k1_series(ComplexValue z, double tol = kDefaultTol);

/// K1(z) dispatcher (Series, IncGamma, or Auto = Series).
EvalResult K1(ComplexValue z, Method method = Method::Auto, double tol = kDefaultTol);

struct TailBoundParams {
    enum class Case { D1, D2 };  // D1: Re z not integer; D2: Re z integer, Im z != 0
    Case which;
    double x, y;
    int m;            // floor(x) for D1, Re z for D2
    int min_terms;    // m1 = max(m+2, 0) for D1, m2 = max(m+1, 0) for D2
};
TailBoundParams classify_tail_case(ComplexValue z);

/// Rigorous upper bound on |sum_{n >= N} Gamma(z - n)|:
/// D1: pi/|sin pi x| * 2/Gamma(N - m); D2: sqrt(pi/(y sinh pi y)) * 2/Gamma(N - m + 1).
double k1_tail_bound(ComplexValue z, int N);

/// K(z) = Ei(1)/e - (pi/e) cot(pi z) + K1(z).
EvalResult kurepa_slavic(ComplexValue z, double tol = kDefaultTol);

/// K(z) = (Ei(1) + i pi)/e + (-1)^z Gamma(1+z) Gamma(-z,-1) / e on the
/// arg = +pi branch; imaginary part vanishes for real non-integer z.
EvalResult kurepa_incgamma(ComplexValue z);

/// K1(z) = (-1)^z pi/(e sin pi z) + (-1)^z Gamma(1+z) Gamma(-z,-1) / e.
EvalResult k1_incgamma(ComplexValue z);

/// L1 = sum_n (-1)^(n+1) Gamma'(n+1)/Gamma(n+1)^2 = Ei(1)/e. Cached.
double l1_constant();

/// Cauchy principal value of K at the integer point m (regular value for
/// m >= 0 and m = -2).
double pv_kurepa(int m);

/// p.v. K1(m) = p.v. K(m) - L1.
double pv_k1(int m);

/// res_{z=-n} K(z): -1 for n = 1, 0 for n = 2 (removable),
/// sum_{k=2}^{n-1} (-1)^(k-1)/k! for n >= 3.
double residue_kurepa(int n);

/// res_{z=m} K1(z) = 1/e + res_{z=m} K(z).
double residue_k1(int m);

/// Residue of f at a simple pole m: Richardson-extrapolated eps*f(m+eps) over
/// eps in {1e-4, 5e-5, 2.5e-5}.
ComplexValue numerical_residue(const std::function<ComplexValue(ComplexValue)>& f,
                               ComplexValue m);

} // namespace kurepa
