#include "helpers.hpp"

#include "weil/oracles.hpp"
#include "weil/verify.hpp"

#include "doctest.h"

using namespace weil;
using testing::form;

TEST_SUITE("gsums")
{
    TEST_CASE("direct G sums")
    {
        const auto U3 = form({{0, 3}, {3, 0}});
        const auto odd3 = DirichletCharacter::kronecker(-3);
        const CycNumber z3 = CycNumber::root_of_unity(3, 1);
        CHECK(brute_G(*U3, U3->make({0, 1}), 1, 1, U3->make({1, 0}), odd3) == z3 * z3 - z3);
        CHECK(brute_G(*U3, U3->zero(), 1, 1, U3->zero(), DirichletCharacter()) == CycNumber(1));
    }

    TEST_CASE("Ramanujan sums")
    {
        CHECK(ramanujan_sum(4, 2) == -2);
        CHECK(ramanujan_sum_mobius(4, 2) == -2);
        CHECK(ramanujan_sum(1, 17) == 1);
        for (int64_t p : {2, 3, 5, 7, 11})
            CHECK(ramanujan_sum(p, 3 * p) == p - 1);
        CHECK(checks::ramanujan(60, 60).status == Status::pass);
    }

    TEST_CASE("epsilon factor examples")
    {
        const auto U3 = form({{0, 3}, {3, 0}});
        const auto odd3 = DirichletCharacter::kronecker(-3);
        const auto beta = U3->make({1, 0});
        const CycNumber z3 = CycNumber::root_of_unity(3, 1);
        const auto s01 = split_data(*U3, beta, U3->make({0, 1}), odd3);
        CHECK(s01.g == 1);
        CHECK(epsilon_factor(s01, odd3) == z3 - z3 * z3);
        const auto s10 = split_data(*U3, beta, U3->make({1, 0}), odd3);
        CHECK(s10.g == 3);
        CHECK(epsilon_factor(s10, odd3) == CycNumber(make_rational(1, 3)) * gauss_sum(odd3));
        const auto s0 = split_data(*U3, U3->zero(), U3->zero(), DirichletCharacter());
        CHECK(s0.g == 1);
        CHECK(epsilon_factor(s0, DirichletCharacter()) == CycNumber(1));
    }

    TEST_CASE("closed forms on the corpus")
    {
        for (auto gram : {IntMatrix{{2}}, IntMatrix{{2, 0}, {0, -2}}, IntMatrix{{0, 2}, {2, 0}}, IntMatrix{{0, 3}, {3, 0}},
                          IntMatrix{{0, 4}, {4, 0}}, IntMatrix{{2, 1}, {1, -4}}}) {
            VerifyOptions opt;
            opt.A = form(gram);
            opt.k = 4;
            for (const auto& r : run_suite("gsums", opt).results) {
                INFO(r.property << ": " << r.detail);
                CHECK(r.status != Status::fail);
                CHECK(r.status != Status::budget);
            }
        }
    }
}
