#include "weil/arith.hpp"
#include "weil/character.hpp"

#include "doctest.h"

#include <numeric>

using namespace weil;

TEST_SUITE("character")
{
    TEST_CASE("enumeration sizes and small tables")
    {
        for (int64_t q = 1; q <= 40; ++q)
            REQUIRE(static_cast<int64_t>(DirichletCharacter::all(q).size()) == totient(q));
        const auto mod1 = DirichletCharacter::all(1);
        CHECK(mod1.front()(17) == CycNumber(1));
        int nontrivial3 = 0;
        for (const auto& chi : DirichletCharacter::all(3))
            if (!chi.is_trivial()) {
                ++nontrivial3;
                CHECK(chi(2) == CycNumber(-1));
            }
        CHECK(nontrivial3 == 1);
        const CycNumber i = CycNumber::root_of_unity(4, 1);
        for (const auto& chi : DirichletCharacter::all(5))
            if (chi.order() == 4)
                CHECK((chi(2) == i || chi(2) == -i));
    }

    TEST_CASE("orthogonality and multiplicativity")
    {
        for (int64_t q : {4, 5, 8, 9, 12, 15, 16, 20, 24}) {
            const auto chars = DirichletCharacter::all(q);
            for (const auto& chi : chars) {
                CycNumber s;
                for (int64_t n = 0; n < q; ++n)
                    s += chi(n);
                REQUIRE(s == CycNumber(chi.is_trivial() ? totient(q) : 0));
                for (int64_t a = 0; a < q; ++a)
                    for (int64_t b = 0; b < q; ++b)
                        REQUIRE(chi(a * b) == chi(a) * chi(b));
            }
        }
    }

    TEST_CASE("conductor and primitive part")
    {
        CHECK(DirichletCharacter::trivial(6).conductor() == 1);
        for (const auto& chi : DirichletCharacter::all(6))
            if (!chi.is_trivial()) {
                CHECK(chi(5) == CycNumber(-1));
                CHECK(chi.conductor() == 3);
                const auto psi = chi.primitive_part();
                CHECK(psi.modulus() == 3);
                for (int64_t n = 0; n < 6; ++n)
                    if (std::gcd<int64_t>(n, 6) == 1)
                        CHECK(psi(n) == chi(n));
            }
        for (const auto& chi : DirichletCharacter::all(5))
            if (!chi.is_trivial())
                CHECK(chi.primitive_part() == chi);
    }

    TEST_CASE("factor round trip")
    {
        for (int64_t q1 : {1, 3, 4, 5})
            for (int64_t q2 : {1, 7, 9}) {
                if (std::gcd(q1, q2) != 1)
                    continue;
                for (const auto& chi : DirichletCharacter::all(q1 * q2)) {
                    const auto [a, b] = chi.factor(q1, q2);
                    REQUIRE(a.modulus() == q1);
                    REQUIRE(b.modulus() == q2);
                    for (int64_t n = 0; n < q1 * q2; ++n)
                        REQUIRE(chi(n) == a(n) * b(n));
                }
            }
        const auto chi = DirichletCharacter::all(7).back();
        const auto [one, same] = chi.factor(1, 7);
        CHECK(one.is_trivial());
        CHECK(same == chi);
    }

    TEST_CASE("labels parse back")
    {
        for (int64_t q : {1, 8, 12, 45})
            for (const auto& chi : DirichletCharacter::all(q))
                REQUIRE(DirichletCharacter::parse(chi.label()) == chi);
        CHECK_THROWS(DirichletCharacter::parse("5:[1,2]"));
        CHECK_THROWS(DirichletCharacter::parse("nonsense"));
    }

    TEST_CASE("Kronecker characters match the symbol")
    {
        for (int64_t D : {-3, -4, -7, -8, 5, 8, 12, -20, 13, -24}) {
            const auto chi = DirichletCharacter::kronecker(D);
            REQUIRE(chi.conductor() == std::abs(D));
            for (int64_t n = 1; n < 4 * std::abs(D); ++n)
                REQUIRE(chi(n) == CycNumber(kronecker(D, n)));
        }
        CHECK(DirichletCharacter::kronecker(-20).label() == "20:[1,2]");
    }

    TEST_CASE("Gauss and Jacobi sums")
    {
        CHECK(gauss_sum(DirichletCharacter()) == CycNumber(1));
        const auto chi4 = DirichletCharacter::kronecker(-4);
        CHECK(gauss_sum(chi4) == CycNumber(2) * CycNumber::root_of_unity(4, 1));
        const auto chi3 = DirichletCharacter::kronecker(-3);
        CHECK(jacobi_sum(chi3, chi3) == CycNumber(1));
        for (int64_t q : {5, 7, 8, 12, 13})
            for (const auto& chi : DirichletCharacter::all(q))
                if (chi.is_primitive()) {
                    const CycNumber g = gauss_sum(chi);
                    REQUIRE(g * g.conj() == CycNumber(q));
                }
    }
}
