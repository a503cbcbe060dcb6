#include <doctest.h>

#include <cmath>

#include "kurepa/kurepa.hpp"
#include "kurepa/left_factorial.hpp"
#include "oracles.hpp"

using namespace kurepa;
using oracles::Rng;

TEST_CASE("integral evaluator: exact low integers") {
    CHECK(std::abs(kurepa_integral({1.0, 0.0}).value - ComplexValue(1, 0)) < 1e-11);
    CHECK(std::abs(kurepa_integral({2.0, 0.0}).value - ComplexValue(2, 0)) < 1e-11);
    CHECK_THROWS_AS(kurepa_integral({0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(kurepa_integral({-1.5, 0.0}), DomainError);
}

TEST_CASE("integral evaluator: removable integrand point is flagged") {
    const EvalResult r = kurepa_integral({0.5, 0.0});
    CHECK(has_flag(r.flags, EvalFlags::RemovableSingularity));
    CHECK(std::abs(r.value - kurepa_slavic({0.5, 0.0}).value) < 1e-8);
}

TEST_CASE("kurepa: removable point and poles") {
    const EvalResult r = K({-2.0, 0.0});
    CHECK(r.value == ComplexValue(1.0, 0.0));
    CHECK(has_flag(r.flags, EvalFlags::RemovableSingularity));
    CHECK_THROWS_AS(K({-1.0, 0.0}), PoleError);
    CHECK_THROWS_AS(K({-3.0, 0.0}), PoleError);
    CHECK_THROWS_AS(K({-4.0, 0.0}), PoleError);
    CHECK_NOTHROW(K({0.0, 0.0}));  // regular: K(0) = 0
    CHECK(std::abs(K({0.0, 0.0}).value) < 1e-9);
    try {
        K({-3.0, 0.0});
    } catch (const PoleError& e) {
        const std::string what = e.what();
        CHECK(what.find("pv_kurepa") != std::string::npos);
        CHECK(what.find("residue_kurepa") != std::string::npos);
    }
}

TEST_CASE("kurepa: near-pole flag band") {
    const EvalResult near = K({-1.0 + 5e-4, 0.0});
    CHECK(has_flag(near.flags, EvalFlags::NearPole));
    const EvalResult far = K({0.5, 0.0});
    CHECK(!has_flag(far.flags, EvalFlags::NearPole));
}

TEST_CASE("kurepa: recurrence continuation") {
    // K(-0.5) = K(0.5) - Gamma(0.5), one recurrence step.
    const ComplexValue lhs = K({-0.5, 0.0}, Method::Recurrence).value;
    const ComplexValue rhs = kurepa_integral({0.5, 0.0}).value - gamma({0.5, 0.0});
    CHECK(std::abs(lhs - rhs) < 1e-9);
    // Downward normalisation for large Re z agrees with the plain integral.
    const ComplexValue a = K({4.2, 1.0}, Method::Recurrence).value;
    const ComplexValue b = K({4.2, 1.0}, Method::Integral).value;
    CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("kurepa: integer consistency with the exact sequence") {
    for (int n = 1; n <= 15; ++n) {
        const double exact = static_cast<double>(left_factorial_exact(n));
        const ComplexValue got = K({static_cast<double>(n), 0.0}).value;
        CHECK(std::abs(got - ComplexValue(exact, 0.0)) <= 1e-11 * exact);
    }
}

TEST_CASE("k1 series: functional-equation instance and Slavic rearrangement") {
    const ComplexValue d =
        k1_series({0.5, 0.0}, 1e-12).value - k1_series({-0.5, 0.0}, 1e-12).value;
    CHECK(std::abs(d - gamma({0.5, 0.0})) < 1e-10);
    // K1(0.5) = K(0.5) - Ei(1)/e (cot term vanishes at 1/2).
    const ComplexValue k1v = k1_series({0.5, 0.0}).value;
    const ComplexValue kv = K({0.5, 0.0}).value;
    CHECK(std::abs(k1v - (kv - constants::ei_one() / constants::e)) < 1e-8);
    CHECK_THROWS_AS(k1_series({2.0, 0.0}), PoleError);
    CHECK_THROWS_AS(k1_series({-7.0, 0.0}), PoleError);
}

TEST_CASE("k1 series vs incomplete-gamma representation") {
    for (const ComplexValue z : {ComplexValue{0.5, 0.0}, ComplexValue{2.5, 1.0},
                                 ComplexValue{0.5, 1.0}, ComplexValue{-1.3, -0.7}}) {
        const ComplexValue a = k1_series(z, 1e-12).value;
        const ComplexValue b = k1_incgamma(z).value;
        CHECK(std::abs(a - b) < 1e-8);
    }
}

TEST_CASE("tail bound: rigorous and monotone") {
    // Measured tail = 200 further terms beyond N.
    auto measured_tail = [](ComplexValue z, int N) {
        ComplexValue sum(0.0, 0.0);
        for (int n = N; n < N + 200; ++n) sum += gamma(z - ComplexValue(n, 0.0));
        return std::abs(sum);
    };
    CHECK(k1_tail_bound({0.5, 0.0}, 10) >= measured_tail({0.5, 0.0}, 10));
    double prev = k1_tail_bound({0.5, 0.0}, 2);
    for (int N = 3; N <= 40; ++N) {
        const double b = k1_tail_bound({0.5, 0.0}, N);
        CHECK(b <= prev);
        prev = b;
    }
    // Case D2 (integer real part, nonzero imaginary part).
    const TailBoundParams p = classify_tail_case({3.0, 2.0});
    CHECK(p.which == TailBoundParams::Case::D2);
    CHECK(p.m == 3);
    CHECK(p.min_terms == 4);
    CHECK(k1_tail_bound({3.0, 2.0}, 10) >= measured_tail({3.0, 2.0}, 10));
    CHECK_THROWS_AS(k1_tail_bound({0.5, 0.0}, 1), DomainError);   // below m1 = 2
    CHECK_THROWS_AS(k1_tail_bound({4.0, 0.0}, 10), PoleError);    // integer z
}

TEST_CASE("tail bound: soundness over random points") {
    Rng rng(2301);
    for (int i = 0; i < 40; ++i) {
        const ComplexValue z = rng.clear_of_integers(5.0, 0.05);
        const int N = classify_tail_case(z).min_terms + static_cast<int>(rng.uniform(0, 20));
        ComplexValue tail(0.0, 0.0);
        for (int n = N; n < N + 200; ++n) tail += gamma(z - ComplexValue(n, 0.0));
        CHECK(std::abs(tail) <= k1_tail_bound(z, N));
    }
}

TEST_CASE("slavic representation agrees with integral and recurrence") {
    CHECK(std::abs(kurepa_slavic({0.5, 0.0}).value - kurepa_integral({0.5, 0.0}).value) < 1e-8);
    CHECK(std::abs(kurepa_slavic({0.25, 0.0}).value - kurepa_integral({0.25, 0.0}).value) < 1e-8);
    CHECK(std::abs(kurepa_slavic({-1.5, 0.0}).value -
                   K({-1.5, 0.0}, Method::Recurrence).value) < 1e-8);
    CHECK_THROWS_AS(kurepa_slavic({1.0, 0.0}), PoleError);
}

TEST_CASE("incomplete-gamma representation of K: realness and agreement") {
    CHECK(std::abs(kurepa_incgamma({0.5, 0.0}).value - kurepa_slavic({0.5, 0.0}).value) < 1e-8);
    const EvalResult r = kurepa_incgamma({1.5, 0.0});
    CHECK(std::abs(r.value.imag()) <= 1e-8);
    CHECK(std::abs(r.value.real() - kurepa_integral({1.5, 0.0}).value.real()) < 1e-8);
    // Real on the whole of (-1, 5) off the integers.
    for (const double x : {-0.5, 0.7, 3.3, 4.5})
        CHECK(std::abs(kurepa_incgamma({x, 0.0}).value.imag()) <= 1e-8);
    CHECK_THROWS_AS(kurepa_incgamma({2.0, 0.0}), PoleError);
}

TEST_CASE("incgamma difference identity between K1 and K") {
    // K1 - K = (-1)^z pi/(e sin pi z) - (Ei(1)+i pi)/e, both sides independent.
    Rng rng(2302);
    for (int i = 0; i < 50; ++i) {
        const ComplexValue z = rng.clear_of_integers(3.0, 0.1);
        const ComplexValue lhs = k1_incgamma(z).value - kurepa_incgamma(z).value;
        const ComplexValue rhs =
            branch::minus_one_pow(z) * constants::pi / (constants::e * sin_pi(z)) -
            ComplexValue(constants::ei_one(), constants::pi) / constants::e;
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("L1 constant") {
    CHECK(std::abs(l1_constant() - 0.697174883) <= 5e-10);  // value reported with Eq. (20)
    CHECK(std::abs(l1_constant() - constants::ei_one() / constants::e) <= 1e-12);
    // Partial sum N=3 equals -(pv Gamma(0) + pv Gamma(-1) + pv Gamma(-2)).
    const double direct = -(pv_gamma_at_negative_integer(0) + pv_gamma_at_negative_integer(1) +
                            pv_gamma_at_negative_integer(2));
    double partial = 0.0;
    for (int n = 0; n <= 2; ++n) {
        const double term =
            (-constants::euler_gamma + oracles::harmonic(n)) / oracles::factorial(n);
        partial += (n % 2 == 0) ? -term : term;
    }
    CHECK(std::abs(partial - direct) < 1e-15);
}

TEST_CASE("principal values of K") {
    CHECK(pv_kurepa(-2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(pv_kurepa(-1) - constants::euler_gamma) < 1e-14);
    CHECK(std::abs(pv_kurepa(-3) - 0.5386078324507664) < 1e-13);  // term-by-term oracle
    CHECK(pv_kurepa(0) == 0.0);
    CHECK(pv_kurepa(3) == 4.0);
}

TEST_CASE("pv K matches the symmetric-limit oracle") {
    auto Kf = [](oracles::Complex w) { return K(w).value; };
    for (int n = 1; n <= 8; ++n) {
        const oracles::Complex lim = oracles::symmetric_limit(Kf, {-static_cast<double>(n), 0.0});
        CHECK(std::abs(lim.real() - pv_kurepa(-n)) <= 1e-6);
        CHECK(std::abs(lim.imag()) <= 1e-6);
    }
}

TEST_CASE("principal values of K1") {
    CHECK(std::abs(pv_k1(0) + l1_constant()) < 1e-15);
    CHECK(std::abs(pv_k1(1) - (1.0 - l1_constant())) < 1e-15);
    CHECK(std::abs(pv_k1(-2) - (1.0 - l1_constant())) < 1e-15);
    CHECK(std::abs(pv_k1(1) - 0.302825117) < 5e-10);
}

TEST_CASE("residues of K") {
    CHECK(residue_kurepa(1) == -1.0);
    CHECK(residue_kurepa(2) == 0.0);
    CHECK(std::abs(residue_kurepa(4) - (-1.0 / 3.0)) < 1e-16);
    CHECK_THROWS_AS(residue_kurepa(0), DomainError);
    auto Kf = [](ComplexValue w) { return K(w).value; };
    for (int n : {1, 3, 4, 5, 6}) {
        const ComplexValue num = numerical_residue(Kf, {-static_cast<double>(n), 0.0});
        CHECK(std::abs(num.real() - residue_kurepa(n)) <= 1e-5);
    }
}

TEST_CASE("residues of K1") {
    CHECK(std::abs(residue_k1(0) - 1.0 / constants::e) < 1e-16);
    CHECK(std::abs(residue_k1(-1) - (1.0 / constants::e - 1.0)) < 1e-15);
    CHECK(std::abs(residue_k1(-2) - 1.0 / constants::e) < 1e-16);
    auto K1f = [](ComplexValue w) { return k1_series(w).value; };
    for (int m = -3; m <= 2; ++m) {
        const ComplexValue num = numerical_residue(K1f, {static_cast<double>(m), 0.0});
        CHECK(std::abs(num.real() - residue_k1(m)) <= 1e-5);
    }
}

TEST_CASE("numerical residue: gamma anchors and failure mode") {
    auto G = [](ComplexValue w) { return gamma(w); };
    CHECK(std::abs(numerical_residue(G, {0.0, 0.0}).real() - 1.0) < 1e-6);
    CHECK(std::abs(numerical_residue(G, {-1.0, 0.0}).real() + 1.0) < 1e-6);
    auto double_pole = [](ComplexValue w) { return 1.0 / (w * w); };
    CHECK_THROWS_AS(numerical_residue(double_pole, {0.0, 0.0}), ConvergenceError);
}

TEST_CASE("functional equation property for K and K1") {
    Rng rng(2303);
    for (int i = 0; i < 120; ++i) {
        ComplexValue z = rng.clear_of_integers(5.0, 0.1);
        if (std::abs(std::round(z.real() - 1.0) - (z.real() - 1.0)) < 0.1)
            continue;  // keep z-1 clear as well
        const double scale = 1.0 + std::abs(gamma(z));
        const ComplexValue kz = K(z).value;
        const ComplexValue kzm1 = K(z - 1.0).value;
        CHECK(std::abs(kz - kzm1 - gamma(z)) <= 1e-9 * scale);
        const ComplexValue az = k1_series(z).value;
        const ComplexValue azm1 = k1_series(z - 1.0).value;
        CHECK(std::abs(az - azm1 - gamma(z)) <= 1e-9 * scale);
    }
}

TEST_CASE("representation agreement with honest error estimates") {
    Rng rng(2304);
    for (int i = 0; i < 200; ++i) {
        const ComplexValue z{rng.uniform(0.02, 0.98), rng.uniform(-3.0, 3.0)};
        if (distance_to_integer(z) < 0.02) continue;
        const EvalResult a = kurepa_integral(z);
        const EvalResult b = kurepa_slavic(z);
        const EvalResult c = kurepa_incgamma(z);
        const EvalResult* reps[3] = {&a, &b, &c};
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                const double diff = std::abs(reps[p]->value - reps[q]->value);
                CHECK(diff <= reps[p]->abs_error_estimate + reps[q]->abs_error_estimate + 1e-9);
            }
    }
}

TEST_CASE("method dispatch") {
    CHECK(K({0.5, 0.0}).method == Method::Integral);
    CHECK(K({-0.5, 0.0}).method == Method::Recurrence);
    CHECK(K({0.5, 9.0}).method == Method::Slavic);
    CHECK(K({0.5, 0.0}, Method::Series).method == Method::Slavic);
    CHECK(K1({0.5, 0.0}).method == Method::Series);
    CHECK(K1({0.5, 0.0}, Method::IncGamma).method == Method::IncGamma);
    CHECK_THROWS_AS(K1({0.5, 0.0}, Method::Integral), DomainError);
    CHECK(method_from_name("slavic") == Method::Slavic);
    CHECK_THROWS_AS(method_from_name("simpson"), DomainError);
}
