#include "helpers.hpp"

#include "weil/hecke.hpp"
#include "weil/verify.hpp"

#include "doctest.h"

using namespace weil;
using testing::form;

TEST_SUITE("hecke")
{
    TEST_CASE("descriptors")
    {
        const auto U3 = form({{0, 3}, {3, 0}});
        CHECK_THROWS_AS(HeckeDescriptor::make(*U3, 3, 0), ContractViolation);
        CHECK_THROWS_AS(HeckeDescriptor::make(*U3, 5, 1), ContractViolation);
        CHECK_NOTHROW(HeckeDescriptor::make(*U3, 7, 1));
        CHECK_NOTHROW(HeckeDescriptor::make(*U3, 7, 2));
        const auto hs = admissible_descriptors(*form({{2}}), 2);
        REQUIRE(hs.size() == 2);
        CHECK(hs[0].p == 3);
        CHECK(hs[1].p == 5);
        CHECK(hs[0].odd_rank);
    }

    TEST_CASE("eigenvalues")
    {
        const auto triv = form({});
        CHECK(eigenvalue(DirichletCharacter(), HeckeDescriptor::make(*triv, 5, 1), 4) == CycNumber(126));
        const auto odd3 = DirichletCharacter::kronecker(-3);
        const auto A = form({{6}});
        CHECK(eigenvalue(odd3, HeckeDescriptor::make(*A, 5), make_rational(5, 2)) == CycNumber(-126));
        const auto U5 = form({{0, 5}, {5, 0}});
        for (const auto& chi : DirichletCharacter::all(5))
            if (chi.order() == 4)
                for (int64_t r = 1; r < 5; ++r)
                    if (chi(r) == CycNumber::root_of_unity(4, 1) && mod(r * r - 19, 5) == 0) {
                        const auto h = HeckeDescriptor::make(*U5, 19, r);
                        CHECK(eigenvalue(chi, h, 4) == CycNumber::root_of_unity(4, 1) * CycNumber(1 - 6859));
                    }
    }

    TEST_CASE("classical Hecke identity")
    {
        const auto triv = form({});
        const auto t = twisted_series(EisensteinSpec::make(triv, triv->zero(), 4, DirichletCharacter()), 15);
        const auto h = HeckeDescriptor::make(*triv, 5, 1);
        const auto image = hecke_act(t, h, 4, 3);
        CHECK(image.at(triv->zero(), 1) == CycNumber(126) * t.at(triv->zero(), 1));
        const auto c = verify_eigenform(t, h, 4, 126, 3);
        CHECK(c.ok);
        CHECK(c.deviation == 0);
        CHECK_FALSE(verify_eigenform(t, h, 4, 125, 3).ok);
        CHECK_THROWS_AS(hecke_act(t, h, 4, 4), DepthError);
        FourierTable<CycNumber> zero(triv, 15);
        const auto zero_image = hecke_act(zero, h, 4, 3);
        for (const auto& [key, v] : zero_image.entries())
            CHECK(v.is_zero());
    }

    TEST_CASE("odd rank middle term")
    {
        // the value that makes the eigen-relation hold on [[2]]
        const auto A = form({{2}});
        for (int64_t p : {3, 5, 7, 11})
            CHECK(hecke_middle_constant(*A, p) == CycNumber(1));
    }

    TEST_CASE("odd rank eigenforms")
    {
        for (auto gram : {IntMatrix{{2}}, IntMatrix{{-2}}, IntMatrix{{6}}, IntMatrix{{-6}}, IntMatrix{{4}}}) {
            VerifyOptions opt;
            opt.A = form(gram);
            opt.k = opt.A->lattice().b_plus() ? make_rational(7, 2) : make_rational(9, 2);
            for (const auto& r : run_suite("hecke", opt).results) {
                INFO(gram[0][0] << " " << r.property << ": " << r.detail);
                CHECK((r.status == Status::pass || r.status == Status::skipped));
            }
        }
    }

    TEST_CASE("even rank eigenforms")
    {
        for (auto [gram, k] : std::vector<std::pair<IntMatrix, int>>{
                 {{{2, 0}, {0, -2}}, 4}, {{{0, 2}, {2, 0}}, 4}, {{{0, 3}, {3, 0}}, 4}, {{{0, 3}, {3, 0}}, 5}}) {
            VerifyOptions opt;
            opt.A = form(gram);
            opt.k = k;
            for (const auto& r : run_suite("hecke", opt).results) {
                INFO(r.property << ": " << r.detail);
                CHECK(r.status == Status::pass);
            }
        }
    }
}
