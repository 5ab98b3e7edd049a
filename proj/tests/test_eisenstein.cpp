#include "helpers.hpp"

#include "weil/oracles.hpp"
#include "weil/verify.hpp"

#include "doctest.h"

using namespace weil;
using testing::form;

TEST_SUITE("eisenstein")
{
    TEST_CASE("kappa and parity")
    {
        CHECK(kappa_for(Lattice(IntMatrix{{2}}), make_rational(7, 2)) == 4);
        CHECK(kappa_for(Lattice(IntMatrix{{2, 0}, {0, -2}}), 4) == 4);
        CHECK_THROWS_AS(kappa_for(Lattice(IntMatrix{{2}}), 4), ParityError);
        const auto A = form({{2}});
        CHECK(EisensteinSpec::make(A, A->zero(), make_rational(9, 2), DirichletCharacter()).vanishes());
        CHECK_FALSE(EisensteinSpec::make(A, A->zero(), make_rational(7, 2), DirichletCharacter()).vanishes());
        CHECK_THROWS(EisensteinSpec::make(A, A->make({1}), make_rational(7, 2), DirichletCharacter::trivial(2)));
    }

    TEST_CASE("discriminant data")
    {
        const auto dd0 = discriminant_data(Lattice(), 1, 1, 4, 4);
        CHECK(dd0.D == 1);
        CHECK(dd0.D0 == 1);
        const auto dd1 = discriminant_data(Lattice(IntMatrix{{2}}), 1, 1, make_rational(7, 2), 4);
        CHECK(dd1.D == -4);
        CHECK(dd1.D0 == -4);
        const auto dd2 = discriminant_data(Lattice(IntMatrix{{2, 0}, {0, -2}}), 1, 1, 4, 4);
        CHECK(dd2.D == 4);
        CHECK(dd2.D0 == 1);
    }

    TEST_CASE("classical series")
    {
        CHECK(checks::classical(4, 20).status == Status::pass);
        CHECK(checks::classical(6, 20).status == Status::pass);
        CHECK(checks::classical(8, 10).status == Status::pass);
    }

    TEST_CASE("vanishing specs give zero tables")
    {
        const auto A = form({{2}});
        const auto t = twisted_series(EisensteinSpec::make(A, A->zero(), make_rational(9, 2), DirichletCharacter()), 3);
        for (const auto& [key, v] : t.entries())
            CHECK(v.is_zero());
    }

    TEST_CASE("constant terms")
    {
        const auto U3 = form({{0, 3}, {3, 0}});
        const auto beta = U3->make({1, 0});
        const auto odd3 = DirichletCharacter::kronecker(-3);
        const auto t = twisted_series(EisensteinSpec::make(U3, beta, 5, odd3), 0);
        // 2 sum_nu chi(nu) e_{nu beta}
        CHECK(t.at(beta, 0) == CycNumber(2));
        CHECK(t.at(U3->make({2, 0}), 0) == CycNumber(-2));
        CHECK(t.at(U3->zero(), 0) == CycNumber(0));

        const auto u = untwisted_series(U3, beta, 4, 0);
        CHECK(u.at(beta, 0) == CycNumber(1));
        CHECK(u.at(U3->make({2, 0}), 0) == CycNumber(1));
    }

    TEST_CASE("oldform decomposition shape")
    {
        const auto D = form({{2, 0}, {0, -2}});
        const auto beta = D->make({1, 1});
        const auto terms = oldform_decompose(EisensteinSpec::make(D, beta, 4, DirichletCharacter::trivial(2)));
        CHECK(terms.size() == 2);
        const auto U3 = form({{0, 3}, {3, 0}});
        const auto prim = oldform_decompose(EisensteinSpec::make(U3, U3->make({1, 0}), 5, DirichletCharacter::kronecker(-3)));
        CHECK(prim.size() == 1);
        CHECK(prim.front().d == 1);
    }

    TEST_CASE("coefficient and oldform properties on [[2]] and diag(2,-2)")
    {
        for (auto [gram, k] : std::vector<std::pair<IntMatrix, Rational>>{{{{2}}, make_rational(7, 2)},
                                                                          {{{2, 0}, {0, -2}}, 4}}) {
            VerifyOptions opt;
            opt.A = form(gram);
            opt.k = k;
            opt.c_max = 150;
            opt.exponents = 2;
            for (const std::string suite : {"coefficients", "oldforms", "galois"})
                for (const auto& r : run_suite(suite, opt).results) {
                    INFO(suite << "/" << r.property << ": " << r.detail);
                    CHECK((r.status == Status::pass || r.status == Status::skipped));
                }
        }
    }

    TEST_CASE("odd rank sign of D0 against the oracle")
    {
        for (auto [gram, k] : std::vector<std::pair<IntMatrix, Rational>>{{{{-2}}, make_rational(9, 2)},
                                                                          {{{6}}, make_rational(7, 2)},
                                                                          {{{-6}}, make_rational(9, 2)},
                                                                          {{{2}}, make_rational(11, 2)}}) {
            VerifyOptions opt;
            opt.A = form(gram);
            opt.k = k;
            opt.exponents = 4;
            const auto r = checks::coefficient_oracle(opt);
            INFO(gram[0][0] << ": " << r.detail);
            CHECK(r.status == Status::pass);
        }
    }

    TEST_CASE("mode dispatch")
    {
        const auto A = form({{2}});
        const auto spec = EisensteinSpec::make(A, A->zero(), make_rational(7, 2), DirichletCharacter());
        const auto exact = compute_twisted(spec, 2, Mode::exact);
        const auto numeric = compute_twisted(spec, 2, Mode::numeric);
        CHECK(exact.exact);
        CHECK_FALSE(numeric.exact);
        CHECK(max_relative_deviation(exact.as_numeric(), numeric.numeric_table) < 1e-12L);
        CHECK(parse_mode("auto") == Mode::automatic);
        CHECK_THROWS(parse_mode("fast"));
    }
}
