#include "helpers.hpp"

#include "weil/table.hpp"

#include "doctest.h"

using namespace weil;
using testing::form;

TEST_SUITE("lattice")
{
    TEST_CASE("validation")
    {
        CHECK_THROWS_AS(Lattice(IntMatrix{{1}}), InvalidLattice);
        CHECK_THROWS_AS(Lattice(IntMatrix{{2, 1}, {0, 2}}), InvalidLattice);
        CHECK_THROWS_AS(Lattice(IntMatrix{{2, 2}, {2, 2}}), InvalidLattice);
        CHECK_NOTHROW(Lattice());
    }

    TEST_CASE("discriminant forms")
    {
        CHECK(form({{0, 1}, {1, 0}})->size() == 1);
        CHECK(form({{0, 1}, {1, 0}})->divisors().empty());

        const auto A2 = form({{2}});
        CHECK(A2->size() == 2);
        CHECK(A2->q_value(A2->make({1})) == make_rational(1, 4));
        CHECK(A2->order_of(A2->zero()) == 1);
        CHECK(A2->isotropic_elements().size() == 1);

        const auto U3 = form({{0, 3}, {3, 0}});
        CHECK(U3->divisors() == IntVector{3, 3});
        CHECK(U3->isotropic_elements().size() == 5);
        for (const auto& g : U3->isotropic_elements())
            CHECK(U3->q_value(g) == 0);

        const auto D = form({{2, 0}, {0, -2}});
        CHECK(D->lattice().b_plus() == 1);
        CHECK(D->lattice().b_minus() == 1);
        CHECK(D->sig_mod8() == 0);
        CHECK(form({{2}})->sig_mod8() == 1);
    }

    TEST_CASE("bilinear form properties")
    {
        for (const auto& A : {form({{0, 3}, {3, 0}}), form({{2, 1}, {1, 4}}), form({{4, 2}, {2, -6}}), form({{6}})})
            for (const auto& g : A->elements()) {
                REQUIRE(A->q_value(A->neg(g)) == A->q_value(g));
                REQUIRE(A->add(g, A->neg(g)) == A->zero());
                for (const auto& h : A->elements()) {
                    const Rational lhs = frac(A->q_value(A->add(g, h)) - A->q_value(g) - A->q_value(h));
                    REQUIRE(lhs == frac(A->pairing(g, h)));
                    REQUIRE(A->pairing(g, h) == A->pairing(h, g));
                }
                REQUIRE(A->project(A->lift(g)) == g);
            }
    }

    TEST_CASE("quotient modules")
    {
        const auto U3 = form({{0, 3}, {3, 0}});
        const QuotientModule Q(U3, make_isotropic_subgroup(*U3, {U3->make({1, 0})}));
        CHECK(Q.complement().size() == 3);
        CHECK(Q.quotient().size() == 1);

        const auto D = form({{2, 0}, {0, -2}});
        const QuotientModule QD(D, make_isotropic_subgroup(*D, {D->make({1, 1})}));
        CHECK(QD.quotient().size() == 1);
        CHECK(QD.complement().size() == 2);

        const QuotientModule trivial(U3, make_isotropic_subgroup(*U3, {}));
        CHECK(trivial.quotient().size() == 9);
        for (const auto& g : U3->elements())
            CHECK(trivial.quotient().q_value(trivial.project(g)) == U3->q_value(g));

        CHECK_THROWS(make_isotropic_subgroup(*form({{2}}), {form({{2}})->make({1})}));
    }

    TEST_CASE("lift_up through the trivial subgroup is the identity")
    {
        const auto U3 = form({{0, 3}, {3, 0}});
        const QuotientModule Q(U3, make_isotropic_subgroup(*U3, {}));
        FourierTable<CycNumber> f(Q.quotient_ptr(), 2);
        int i = 1;
        for (auto& [k, v] : f.entries())
            v = CycNumber(i++);
        const auto up = lift_up(f, Q);
        for (const auto& g : U3->elements())
            for (const auto& n : exponents_for(*U3, g, 2))
                REQUIRE(up.at(g, n) == f.at(Q.project(g), n));
    }
}
