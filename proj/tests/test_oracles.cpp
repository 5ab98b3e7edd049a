#include "helpers.hpp"

#include "weil/oracles.hpp"

#include "doctest.h"

using namespace weil;
using testing::form;

TEST_SUITE("oracles")
{
    TEST_CASE("divisor sums")
    {
        CHECK(divisor_sum_reference(4, 1) == 480);
        CHECK(divisor_sum_reference(4, 0) == 2);
        CHECK(divisor_sum_reference(6, 2) == -1008 * 33);
    }

    TEST_CASE("series oracle on the trivial lattice")
    {
        const auto A = form({});
        const SeriesOracle oracle(*A, A->zero(), A->zero(), 200);
        const auto w = SeriesOracle::individual_weights(1, 4);
        const NumericValue v = oracle.coefficient(1, 4, 4, w);
        CHECK(std::abs(v.value - std::complex<long double>(480)) < 1e-4L);
        CHECK(std::abs(v.value - std::complex<long double>(480)) <= v.error);
        CHECK(v.bound_proven);
    }

    TEST_CASE("empty truncation")
    {
        const auto A = form({});
        const SeriesOracle oracle(*A, A->zero(), A->zero(), 0);
        const NumericValue v = oracle.coefficient(1, 4, 4, SeriesOracle::individual_weights(1, 4));
        CHECK(v.value == std::complex<long double>(0));
        CHECK(v.error >= 480);
    }

    TEST_CASE("no proven tail at the convergence edge")
    {
        const auto U3 = form({{0, 3}, {3, 0}});
        const auto odd3 = DirichletCharacter::kronecker(-3);
        const auto beta = U3->make({1, 0}), gamma = U3->make({0, 1});
        const NumericValue v = series_coefficient_numeric(*U3, beta, 3, odd3, gamma, 1, 100);
        CHECK_FALSE(v.bound_proven);
        const auto spec = EisensteinSpec::make(U3, beta, 3, odd3);
        const auto exact = EisensteinEngine(spec, 1).coefficient_exact(gamma, 1).to_complex();
        // the truncated sum still lands near the exact value, just without a certificate
        CHECK(std::abs(v.value - exact) < 0.05L * std::abs(exact));
    }

    TEST_CASE("Hurwitz zeta and digamma")
    {
        CHECK(std::abs(hurwitz_zeta(2, 1) - 1.6449340668482264365L) < 1e-15L);
        CHECK(std::abs(digamma(1) + 0.57721566490153286061L) < 1e-15L);
        CHECK(std::abs(numeric_l_value(DirichletCharacter::kronecker(-4), 1).value.real() - 0.78539816339744830962L) <
              1e-14L);
    }
}
