#pragma once

#include <complex>

#include "kurepa/errors.hpp"

namespace kurepa {

using ComplexValue = std::complex<double>;

namespace constants {
inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double e = 2.718281828459045235360287471352662498;

/// Ei(1), evaluated once from the power series.
double ei_one();
} // namespace constants

// Branch convention used throughout: arg(-1) = +pi. Every multivalued
// expression -- (-1)^z, t^z, Gamma(a,x) for x < 0 -- is taken as the limit
// from the upper half-plane.
namespace branch {
inline constexpr double arg_of_minus_one = constants::pi;

/// log on the fixed branch: negative real axis gets arg = +pi. A negative
/// real input carrying a negative-zero imaginary part is a request for the
/// arg = -pi side and raises BranchError.
ComplexValue log_arg_pi(ComplexValue x);

/// (-1)^z = exp(i pi z).
ComplexValue minus_one_pow(ComplexValue z);
} // namespace branch

/// Complex gamma function. Lanczos approximation, reflection for Re z < 1/2.
/// Relative error <= 1e-13 for |z| <= 50 away from poles.
ComplexValue gamma(ComplexValue z);

/// Principal branch of log Gamma (continuous along the Lanczos evaluation,
/// not the analytic continuation around poles).
ComplexValue log_gamma(ComplexValue z);

/// Digamma psi(z) = Gamma'(z)/Gamma(z).
ComplexValue digamma(ComplexValue z);

/// Exponential integral Ei(x) for x > 0, by the everywhere-positive series
/// Ei(x) = gamma + ln x + sum_k x^k/(k k!).
double ei(double x);

/// Upper incomplete gamma Gamma(a,x). Power series in x for |x| < |a|+1,
/// Legendre continued fraction otherwise; x on the negative real axis is the
/// arg = +pi limit.
ComplexValue upper_incomplete_gamma(ComplexValue a, ComplexValue x);

/// Lower incomplete gamma by the single-fraction series
/// x^a e^-x sum_n x^n / (a(a+1)...(a+n)).
ComplexValue lower_incomplete_gamma(ComplexValue a, ComplexValue x);

/// Kummer's confluent hypergeometric 1F1(a,b,x) by direct series.
ComplexValue kummer_1f1(ComplexValue a, ComplexValue b, ComplexValue x);

/// Pochhammer symbol (x)_n = x(x+1)...(x+n-1), (x)_0 = 1.
ComplexValue pochhammer(ComplexValue x, int n);

/// sin(pi z) with argument reduction z -> z - round(Re z); accurate near
/// integer z where sin(pi*z) evaluated directly would lose all digits.
ComplexValue sin_pi(ComplexValue z);

/// cos(pi z), same reduction.
ComplexValue cos_pi(ComplexValue z);

/// cot(pi z) via reduced argument; returns -i (resp. +i) exactly once
/// |Im z| > 20, where the true value differs from the limit by < 1e-55.
ComplexValue cot_pi(ComplexValue z);

/// p.v. Gamma(-n) = (-1)^n (-euler_gamma + H_n) / n!  for n >= 0.
double pv_gamma_at_negative_integer(int n);

/// Distance from z to the nearest integer (as a complex distance).
double distance_to_integer(ComplexValue z);

/// True if z is within tol of a non-positive integer.
bool near_nonpositive_integer(ComplexValue z, double tol);

} // namespace kurepa
