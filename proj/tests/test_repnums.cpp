#include "helpers.hpp"

#include "weil/oracles.hpp"
#include "weil/repnums.hpp"
#include "weil/verify.hpp"

#include "doctest.h"

using namespace weil;
using testing::form;

TEST_SUITE("repnums")
{
    TEST_CASE("small counts")
    {
        const Lattice L(IntMatrix{{2}});
        const DualVector zero{{0}, 1};
        CHECK(brute_rep_count(L, zero, 1, 2) == 1);
        CHECK(brute_rep_count(L, zero, 1, 5) == 2);
        CHECK(brute_rep_count(L, zero, 1, 10) == 2);
        CHECK(brute_rep_count(L, zero, 5, 1) == 1);
        CHECK_THROWS(brute_rep_count(L, zero, make_rational(3, 7), 1));
        RepCounter counter(L);
        CHECK(counter.count(zero, 1, 10) == 2);
        CHECK_THROWS_AS(brute_rep_count(Lattice(IntMatrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}), DualVector{{0, 0, 0}, 1}, 1, 1000,
                                        1000),
                        BudgetExceeded);
    }

    TEST_CASE("w exponent")
    {
        CHECK(w_exponent(3, 1, 1, 1) == 1);
        CHECK(w_exponent(2, 1, 2, make_rational(7, 4)) == 1);
        CHECK(w_exponent(2, 2, 2, 1) == 7);
    }

    TEST_CASE("local polynomial and its evaluation")
    {
        const Lattice L(IntMatrix{{2}});
        RepCounter counter(L);
        const auto poly = local_polynomial(counter, DualVector{{0}, 1}, 1, 5, 1);
        CHECK(poly.w == 1);
        REQUIRE(poly.coeffs.size() == 2);
        CHECK(poly.coeffs[0] == 1);
        CHECK(poly.coeffs[1] == 1);
        LocalPolynomial one_plus_x{5, 1, {1, 1}};
        CHECK(eval_local(one_plus_x, DirichletCharacter(), 4, 0) == CycNumber(make_rational(126, 125)));
    }

    TEST_CASE("closed form at odd primes prime to det matches level-by-level enumeration")
    {
        for (const IntMatrix& gram : {IntMatrix{{2}}, IntMatrix{{2, 0}, {0, -2}}, IntMatrix{{0, 2}, {2, 0}},
                                      IntMatrix{{2, 1}, {1, 2}}, IntMatrix{{2, 0, 0}, {0, 2, 0}, {0, 0, -2}}}) {
            const auto A = form(gram);
            RepCounter fast(A->lattice()), plain(A->lattice(), false);
            for (const auto& g : A->elements())
                for (int j = 0; j < 4; ++j) {
                    const Rational n = Rational(j) - A->q_value(g);
                    for (int64_t p : {3, 5, 7})
                        for (int alpha = 1; alpha <= (p == 3 ? 4 : 2); ++alpha) {
                            INFO("gram rank " << gram.size() << " p=" << p << " alpha=" << alpha << " n=" << to_string(n));
                            REQUIRE(fast.count_prime_power(A->lift(g), n, p, alpha) ==
                                    plain.count_prime_power(A->lift(g), n, p, alpha));
                        }
                }
        }
    }

    TEST_CASE("property suite on the corpus")
    {
        for (auto [gram, k] : std::vector<std::pair<IntMatrix, Rational>>{
                 {{{2}}, make_rational(7, 2)}, {{{2, 0}, {0, -2}}, 4}, {{{0, 2}, {2, 0}}, 4}, {{{0, 3}, {3, 0}}, 4}}) {
            VerifyOptions opt;
            opt.A = form(gram);
            opt.k = k;
            for (const auto& r : run_suite("repnums", opt).results) {
                INFO(r.property << ": " << r.detail);
                CHECK(r.status == Status::pass);
            }
        }
    }
}
