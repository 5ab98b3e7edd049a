#include "helpers.hpp"

#include "weil/cyclotomic.hpp"

#include "doctest.h"

using namespace weil;

TEST_SUITE("cyclotomic")
{
    TEST_CASE("roots of unity")
    {
        const CycNumber z3 = CycNumber::root_of_unity(3, 1);
        CHECK(z3 * z3 * z3 == CycNumber(1));
        CHECK(z3 + z3 * z3 == CycNumber(-1));
        CHECK(CycNumber::root_of_unity(4, 1) * CycNumber::root_of_unity(4, 1) == CycNumber(-1));
        CHECK(CycNumber::root_of_unity(6, 3) == CycNumber(-1));
    }

    TEST_CASE("square roots via Gauss sums")
    {
        for (int64_t n : {2, 3, 5, 6, 12, 20}) {
            const CycNumber s = CycNumber::sqrt_of(n);
            REQUIRE(s * s == CycNumber(n));
            REQUIRE(std::abs(s.to_complex() - std::complex<long double>(std::sqrt(static_cast<long double>(n)))) <
                    1e-15L);
        }
    }

    TEST_CASE("minimal conductor and rational detection")
    {
        const CycNumber z12 = CycNumber::root_of_unity(12, 4); // zeta_3
        CHECK(z12.minimal().conductor() == 3);
        const CycNumber r = CycNumber::root_of_unity(5, 1) + CycNumber::root_of_unity(5, 4) +
                            CycNumber::root_of_unity(5, 2) + CycNumber::root_of_unity(5, 3);
        CHECK(r.is_rational());
        CHECK(r.as_rational() == Rational(-1));
    }

    TEST_CASE("field axioms on random elements")
    {
        std::mt19937_64 rng(11);
        for (int64_t M : {1, 3, 4, 5, 8, 12, 15}) {
            for (int i = 0; i < 20; ++i) {
                const CycNumber a = testing::random_cyc(rng, M), b = testing::random_cyc(rng, M),
                                c = testing::random_cyc(rng, 2 * M);
                REQUIRE((a + b) * c == a * c + b * c);
                REQUIRE(a * b == b * a);
                REQUIRE(a - a == CycNumber(0));
                if (!a.is_zero())
                    REQUIRE(a * a.inverse() == CycNumber(1));
                const auto z = a.to_complex() * b.to_complex();
                REQUIRE(std::abs((a * b).to_complex() - z) <= 1e-12L * (1 + std::abs(z)));
            }
        }
    }

    TEST_CASE("Galois action is a field automorphism")
    {
        std::mt19937_64 rng(5);
        for (int i = 0; i < 30; ++i) {
            const CycNumber a = testing::random_cyc(rng, 12), b = testing::random_cyc(rng, 12);
            for (int64_t s : {5, 7, 11}) {
                REQUIRE((a * b).galois(s) == a.galois(s) * b.galois(s));
                REQUIRE((a + b).galois(s) == a.galois(s) + b.galois(s));
            }
            const auto c = a.conj().to_complex();
            REQUIRE(std::abs(c - std::conj(a.to_complex())) <= 1e-12L * (1 + std::abs(c)));
        }
    }

    TEST_CASE("coefficients round trip")
    {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 20; ++i) {
            const CycNumber a = testing::random_cyc(rng, 15);
            REQUIRE(CycNumber::from_coefficients(a.conductor(), a.coefficients()) == a);
        }
    }
}
