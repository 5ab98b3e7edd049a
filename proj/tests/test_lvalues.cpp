#include "weil/errors.hpp"
#include "weil/lvalues.hpp"
#include "weil/oracles.hpp"

#include "doctest.h"

#include <numbers>

using namespace weil;

TEST_SUITE("lvalues")
{
    TEST_CASE("Bernoulli numbers")
    {
        CHECK(bernoulli_number(0) == 1);
        CHECK(bernoulli_number(1) == make_rational(-1, 2));
        CHECK(bernoulli_number(4) == make_rational(-1, 30));
        CHECK(bernoulli_number(12) == make_rational(-691, 2730));
        CHECK(bernoulli_number(7) == 0);
        CHECK(bernoulli_polynomial(2, make_rational(1, 3)) == make_rational(1, 9) - make_rational(1, 3) + make_rational(1, 6));
    }

    TEST_CASE("values at non-positive integers")
    {
        CHECK(l_value_nonpositive(DirichletCharacter(), 2) == CycNumber(make_rational(-1, 12)));
        CHECK(l_value_nonpositive(DirichletCharacter::kronecker(-4), 1) == CycNumber(make_rational(1, 2)));
    }

    TEST_CASE("values at positive integers")
    {
        const Ledger z4 = l_value_positive(DirichletCharacter(), 4);
        CHECK(z4.value == CycNumber(make_rational(1, 90)));
        CHECK(z4.pi_twice == 8);
        CHECK(z4.i_exp % 4 == 0);
        CHECK(z4.radicand == 1);

        const Ledger l4 = l_value_positive(DirichletCharacter::kronecker(-4), 1);
        CHECK(std::abs(l4.to_complex() - std::complex<long double>(std::numbers::pi_v<long double> / 4)) < 1e-15L);

        const Ledger z2_imprimitive = l_value_positive(DirichletCharacter::trivial(2), 2);
        const long double want = std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 8;
        CHECK(std::abs(z2_imprimitive.to_complex() - std::complex<long double>(want)) < 1e-15L);
    }

    TEST_CASE("exact values agree with the Hurwitz-zeta oracle")
    {
        for (int64_t q : {1, 3, 4, 5, 7, 8, 12})
            for (const auto& chi : DirichletCharacter::all(q))
                for (int s = 1; s <= 5; ++s) {
                    if (s == 1 && chi.is_trivial())
                        continue;
                    Ledger exact;
                    try {
                        exact = l_value_positive(chi, s);
                    } catch (const ParityError&) {
                        continue;
                    } catch (const ExactFallback&) {
                        continue;
                    }
                    const NumericValue num = numeric_l_value(chi, static_cast<long double>(s));
                    const auto diff = std::abs(exact.to_complex() - num.value);
                    INFO("chi=" << chi.label() << " s=" << s);
                    REQUIRE(diff <= std::max<long double>(num.error, 1e-15L) + 1e-15L * std::abs(num.value));
                }
    }
}
