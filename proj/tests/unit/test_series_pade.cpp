#include <doctest.h>

#include <random>

#include "ffl/pade.hpp"
#include "ffl/series.hpp"

using namespace ffl;

namespace {

using RSeries = TruncatedSeries<Rational>;
using RPoly = Polynomial<Rational>;
using CSeries = TruncatedSeries<Cyclotomic>;
using CPoly = Polynomial<Cyclotomic>;

RPoly random_rpoly(std::mt19937& rng, unsigned max_deg, bool unit_constant) {
    std::uniform_int_distribution<long> d(-5, 5);
    std::uniform_int_distribution<unsigned> dd(0, max_deg);
    std::vector<Rational> c(dd(rng) + 1);
    for (auto& x : c) x = Rational(d(rng));
    if (unit_constant) c[0] = Rational(1);
    return RPoly(std::move(c));
}

CPoly random_cpoly(std::mt19937& rng, unsigned n, unsigned max_deg, bool unit_constant) {
    std::uniform_int_distribution<long> d(-3, 3);
    std::uniform_int_distribution<unsigned> dd(0, max_deg);
    std::vector<Cyclotomic> c(dd(rng) + 1);
    for (auto& x : c) {
        std::vector<Rational> v(euler_phi(n));
        for (auto& y : v) y = Rational(d(rng));
        x = Cyclotomic::from_power_coeffs(n, v);
    }
    if (unit_constant) c[0] = Cyclotomic(1);
    return CPoly(std::move(c));
}

} // namespace

TEST_CASE("series division produces the geometric examples") {
    unsigned N = 8;
    RPoly one{Rational(1)};
    RSeries geo = series_div(one, RSeries::from_poly(RPoly({Rational(1), Rational(-1)}), N));
    for (unsigned i = 0; i <= N; ++i) CHECK(geo.coeff(i) == Rational(1));

    RSeries pow2 = series_div(one, RSeries::from_poly(RPoly({Rational(1), Rational(-2)}), N));
    Rational expect(1);
    for (unsigned i = 0; i <= N; ++i) {
        CHECK(pow2.coeff(i) == expect);
        expect *= 2;
    }

    RPoly oneMinusT({Rational(1), Rational(-1)});
    RSeries idt = series_div(oneMinusT, RSeries::from_poly(oneMinusT, N));
    CHECK(idt.coeff(0) == Rational(1));
    for (unsigned i = 1; i <= N; ++i) CHECK(idt.coeff(i) == Rational(0));

    CHECK_THROWS_AS(series_div(one, RSeries(4)), Error); // zero constant term
}

TEST_CASE("series arithmetic truncates to the smaller order") {
    RSeries a = RSeries::one(6);
    RSeries b = RSeries::one(4);
    CHECK((a * b).order() == 4);
    CHECK((a + b).order() == 4);
}

TEST_CASE("log derivative coefficients are power sums") {
    unsigned N = 7;
    long q = 3;
    RPoly one{Rational(1)};
    RSeries p = series_div(one, RSeries::from_poly(RPoly({Rational(1), Rational(-q)}), N));
    RSeries ld = series_log_derivative(p);
    CHECK(ld.coeff(0) == Rational(0));
    Rational qe(1);
    for (unsigned n = 1; n <= N; ++n) {
        qe *= q;
        CHECK(ld.coeff(n) == qe);
    }

    RSeries flat = series_log_derivative(RSeries::one(N));
    for (unsigned n = 0; n <= N; ++n) CHECK(flat.coeff(n) == Rational(0));

    // 1/((1-T)(1-qT)): coefficient of T^n is 1 + q^n
    RSeries both = series_div(one, RSeries::from_poly(RPoly({Rational(1), Rational(-q)}), N) *
                                       RSeries::from_poly(RPoly({Rational(1), Rational(-1)}), N));
    RSeries ld2 = series_log_derivative(both);
    qe = 1;
    for (unsigned n = 1; n <= N; ++n) {
        qe *= q;
        CHECK(ld2.coeff(n) == Rational(1) + qe);
    }

    RSeries shifted(N);
    shifted.set_coeff(0, Rational(2));
    CHECK_THROWS_AS(series_log_derivative(shifted), Error); // NotNormalized
}

TEST_CASE("log derivative is additive on products") {
    std::mt19937 rng(4242);
    unsigned N = 10;
    for (int rep = 0; rep < 12; ++rep) {
        RPoly p = random_rpoly(rng, 4, true), q = random_rpoly(rng, 4, true);
        RSeries sp = RSeries::from_poly(p, N), sq = RSeries::from_poly(q, N);
        RSeries lhs = series_log_derivative(sp * sq);
        RSeries rhs = series_log_derivative(sp) + series_log_derivative(sq);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("series automorphism: examples and the rational-function rule") {
    unsigned N = 6;
    CSeries p = CSeries::from_poly(CPoly({Cyclotomic(1), Cyclotomic::zeta(4)}), N);
    GaloisAutomorphism ident(4, 1), conj(4, 3);
    CHECK(series_automorphism(p, ident) == p);
    CSeries conjp = series_automorphism(p, conj);
    CHECK(conjp.coeff(1) == -Cyclotomic::zeta(4));

    // sigma(P*Q) = sigma(P)*sigma(Q): finite convolution, rational and
    // cyclotomic coefficients
    std::mt19937 rng(99);
    for (int rep = 0; rep < 10; ++rep) {
        CPoly a = random_cpoly(rng, 4, 3, false), b = random_cpoly(rng, 4, 3, false);
        CSeries sa = CSeries::from_poly(a, N), sb = CSeries::from_poly(b, N);
        for (unsigned e : coprime_exponents(4)) {
            GaloisAutomorphism sigma(4, e);
            CHECK(series_automorphism(sa * sb, sigma) ==
                  series_automorphism(sa, sigma) * series_automorphism(sb, sigma));
        }
    }
}

TEST_CASE("pade reconstruction: stated examples") {
    // [1,2,4,8,16] with (dnum, dden) = (0, 1) -> (1, 1-2T)
    RSeries s(4, {Rational(1), Rational(2), Rational(4), Rational(8), Rational(16)});
    auto r = pade_reconstruct(s, 0, 1);
    CHECK(r.num == RPoly({Rational(1)}));
    CHECK(r.den == RPoly({Rational(1), Rational(-2)}));

    // polynomial input 1+3T with dden = 0
    RSeries poly_in = RSeries::from_poly(RPoly({Rational(1), Rational(3)}), 5);
    auto r2 = pade_reconstruct(poly_in, 2, 0);
    CHECK(r2.num == RPoly({Rational(1), Rational(3)}));
    CHECK(r2.den == RPoly({Rational(1)}));

    // series of 1/((1-T)(1-3T)): numerator 1, denominator expanded product
    unsigned N = 9;
    RPoly den({Rational(1), Rational(-4), Rational(3)});
    RSeries s3 = series_div(RPoly{Rational(1)}, RSeries::from_poly(den, N));
    auto r3 = pade_reconstruct(s3, 2, 2);
    CHECK(r3.num == RPoly({Rational(1)}));
    CHECK(r3.den == den);
}

TEST_CASE("pade picks the minimal degrees and verifies through N") {
    // (1-T^2)/(1-T) = 1+T exactly: a denominator-free representation wins
    unsigned N = 8;
    RSeries s = RSeries::from_poly(RPoly({Rational(1), Rational(1)}), N);
    auto r = pade_reconstruct(s, 3, 3);
    CHECK(r.den == RPoly({Rational(1)}));
    CHECK(r.num == RPoly({Rational(1), Rational(1)}));

    // factorial-style growth is not rational within the bounds
    RSeries bad(7);
    long f = 1;
    for (unsigned i = 0; i <= 7; ++i) {
        bad.set_coeff(i, Rational(f));
        f *= (i + 1);
    }
    CHECK_THROWS_AS(pade_reconstruct(bad, 1, 1), Error);

    // insufficient truncation for the requested bounds
    CHECK_THROWS_AS(pade_reconstruct(RSeries::one(4), 2, 2), Error);
}

TEST_CASE("pade then re-expansion reproduces random rational functions") {
    std::mt19937 rng(31337);
    unsigned N = 14;
    for (int rep = 0; rep < 10; ++rep) {
        RPoly num = random_rpoly(rng, 3, false);
        RPoly den = random_rpoly(rng, 3, true);
        if (num.is_zero()) num = RPoly({Rational(2)});
        RSeries s = series_div(num, RSeries::from_poly(den, N));
        auto r = pade_reconstruct(s, 4, 4);
        RSeries back = series_div(r.num, RSeries::from_poly(r.den, N));
        CHECK(back == s);
        CHECK(r.den.coeff(0) == Rational(1));
    }
}
