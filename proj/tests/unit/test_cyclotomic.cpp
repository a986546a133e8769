#include <doctest.h>

#include <random>

#include "ffl/cyclotomic.hpp"

using namespace ffl;

namespace {

// Independent reduction oracle: multiply two coefficient vectors as
// polynomials in zeta and reduce with the given cyclotomic relation rows,
// written directly against small hand-checked relations.
std::vector<Rational> oracle_mul_mod(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                     const std::vector<std::vector<long>>& rows) {
    size_t phi = rows[0].size();
    std::vector<Rational> prod(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
    std::vector<Rational> out(phi, Rational(0));
    for (size_t m = 0; m < prod.size(); ++m)
        for (size_t k = 0; k < phi; ++k) out[k] += prod[m] * Rational(rows[m][k]);
    return out;
}

Cyclotomic random_cyclo(std::mt19937& rng, unsigned n) {
    std::uniform_int_distribution<long> d(-4, 4);
    std::vector<Rational> c(euler_phi(n));
    for (auto& x : c) x = make_rational(d(rng), 1 + std::abs(d(rng)));
    return Cyclotomic::from_power_coeffs(n, c);
}

} // namespace

TEST_CASE("cyclotomic arithmetic matches hand values") {
    Cyclotomic z4 = Cyclotomic::zeta(4);
    CHECK(z4 * z4 == Cyclotomic(-1)); // Phi_4 = X^2 + 1

    CHECK(Cyclotomic(make_rational(1, 2)).inverse() == Cyclotomic(2));

    // (1 + z3)(1 + z3^2) = 1, via the independent reduction oracle for
    // Phi_3 = X^2 + X + 1: row m is zeta^m in the basis {1, zeta}
    // (z^2 = -1 - z, z^3 = 1, z^4 = z)
    std::vector<std::vector<long>> rows3{{1, 0}, {0, 1}, {-1, -1}, {1, 0}, {0, 1}};
    auto expect = oracle_mul_mod({Rational(1), Rational(1)},              // 1 + z
                                 {Rational(1), Rational(0), Rational(1)}, // 1 + z^2
                                 rows3);
    CHECK(expect[0] == Rational(1));
    CHECK(expect[1] == Rational(0));
    Cyclotomic z3 = Cyclotomic::zeta(3);
    Cyclotomic value = (Cyclotomic(1) + z3) * (Cyclotomic(1) + z3 * z3);
    CHECK(value == Cyclotomic(1));

    CHECK_THROWS_AS(Cyclotomic(0L).inverse(), Error);
}

TEST_CASE("cyclotomic equality handles conductor coercion") {
    // zeta_6^2 = zeta_3 at different conductors
    Cyclotomic z6 = Cyclotomic::zeta(6);
    CHECK(z6 * z6 == Cyclotomic::zeta(3));
    CHECK(Cyclotomic::zeta(4) * Cyclotomic::zeta(3) == Cyclotomic::root_of_unity(12, 7));
    CHECK(Cyclotomic(make_rational(7, 3)).conductor() == 1);
    // n = 1 embeds the rationals
    CHECK(Cyclotomic(make_rational(3, 4)) + Cyclotomic(make_rational(1, 4)) == Cyclotomic(1));
}

TEST_CASE("galois automorphisms act as expected") {
    GaloisAutomorphism conj(4, 3);
    CHECK(Cyclotomic::zeta(4).apply(conj) == -Cyclotomic::zeta(4));
    CHECK(Cyclotomic(make_rational(7, 3)).apply(conj) == Cyclotomic(make_rational(7, 3)));

    // (1 + 2 zeta_5, a = 2) -> 1 + 2 zeta_5^2
    Cyclotomic x = Cyclotomic(1) + Cyclotomic(2) * Cyclotomic::zeta(5);
    Cyclotomic expected = Cyclotomic(1) + Cyclotomic(2) * Cyclotomic::root_of_unity(5, 2);
    CHECK(x.apply(GaloisAutomorphism(5, 2)) == expected);

    CHECK_THROWS_AS(GaloisAutomorphism(4, 2), Error);
    CHECK_THROWS_AS(GaloisAutomorphism(6, 3), Error);

    // composition law
    GaloisAutomorphism a(12, 5), b(12, 7);
    CHECK((a * b).exponent() == (5 * 7) % 12);
    Cyclotomic y = Cyclotomic::zeta(12);
    CHECK(y.apply(a * b) == y.apply(b).apply(a));
}

TEST_CASE("automorphisms are field homomorphisms") {
    std::mt19937 rng(12345);
    for (unsigned n : {4u, 5u, 12u}) {
        for (unsigned a : coprime_exponents(n)) {
            GaloisAutomorphism sigma(n, a);
            for (int rep = 0; rep < 8; ++rep) {
                Cyclotomic x = random_cyclo(rng, n), y = random_cyclo(rng, n);
                CHECK((x + y).apply(sigma) == x.apply(sigma) + y.apply(sigma));
                CHECK((x * y).apply(sigma) == x.apply(sigma) * y.apply(sigma));
            }
            CHECK(Cyclotomic(1).apply(sigma) == Cyclotomic(1));
        }
    }
}

TEST_CASE("inverses multiply back to one") {
    std::mt19937 rng(777);
    for (unsigned n : {3u, 4u, 8u, 12u}) {
        for (int rep = 0; rep < 10; ++rep) {
            Cyclotomic x = random_cyclo(rng, n);
            if (x.is_zero()) continue;
            CHECK(x * x.inverse() == Cyclotomic(1));
        }
    }
    // inverse stays in the same field and round-trips through division
    Cyclotomic z8 = Cyclotomic::zeta(8);
    Cyclotomic v = Cyclotomic(2) + z8;
    CHECK((Cyclotomic(1) / v) * v == Cyclotomic(1));
}
