#include "weil/arith.hpp"
#include "weil/rational.hpp"

#include "doctest.h"

#include <numeric>
#include <random>

using namespace weil;

TEST_SUITE("arith")
{
    TEST_CASE("mod is non-negative")
    {
        CHECK(mod(-7, 3) == 2);
        CHECK(mod(7, 3) == 1);
        CHECK(mod(0, 5) == 0);
    }

    TEST_CASE("factorize and multiplicative functions")
    {
        CHECK(prime_divisors(360) == std::vector<int64_t>{2, 3, 5});
        CHECK(totient(36) == 12);
        CHECK(mobius(30) == -1);
        CHECK(mobius(12) == 0);
        CHECK(divisors(12).size() == 6);
        CHECK(valuation(2, 48) == 4);
        for (int64_t n = 1; n < 300; ++n) {
            int64_t phi = 0;
            for (int64_t a = 1; a <= n; ++a)
                phi += std::gcd(a, n) == 1;
            REQUIRE(totient(n) == phi);
            int sum = 0;
            for (int64_t d : divisors(n))
                sum += mobius(d);
            REQUIRE(sum == (n == 1 ? 1 : 0));
        }
    }

    TEST_CASE("inverse and powers mod m")
    {
        CHECK(inverse_mod(3, 7) == 5);
        CHECK(pow_mod(2, 10, 1000) == 24);
        CHECK_THROWS(inverse_mod(2, 4));
    }

    TEST_CASE("kronecker symbol against Euler's criterion")
    {
        for (int64_t p : {3, 5, 7, 11, 13, 101})
            for (int64_t a = -30; a <= 30; ++a) {
                const int64_t e = pow_mod(mod(a, p), (p - 1) / 2, p);
                const int want = mod(a, p) == 0 ? 0 : (e == 1 ? 1 : -1);
                REQUIRE(kronecker(a, p) == want);
            }
        CHECK(kronecker(-1, 2) == 1);
        CHECK(kronecker(3, 2) == -1);
        CHECK(kronecker(5, 2) == -1);
        CHECK(kronecker(7, 2) == 1);
        CHECK(kronecker(2, 4) == 0);
    }

    TEST_CASE("kronecker is multiplicative in the top argument")
    {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int64_t> d(-200, 200), n(1, 200);
        for (int i = 0; i < 2000; ++i) {
            const int64_t a = d(rng), b = d(rng), m = n(rng);
            REQUIRE(kronecker(a * b, m) == kronecker(a, m) * kronecker(b, m));
        }
    }

    TEST_CASE("fundamental discriminants")
    {
        CHECK(fundamental_discriminant(45) == 5);
        CHECK(fundamental_discriminant(-4) == -4);
        CHECK(fundamental_discriminant(1) == 1);
        CHECK(fundamental_discriminant(-16) == -4);
        CHECK(fundamental_discriminant(12) == 12);
        CHECK(is_fundamental_discriminant(-3));
        CHECK_FALSE(is_fundamental_discriminant(-12 * 4));
    }

    TEST_CASE("rationals")
    {
        CHECK(to_string(make_rational(6, -4)) == "-3/2");
        CHECK(to_string(make_rational(5)) == "5/1");
        CHECK(parse_rational("-7/21") == make_rational(-1, 3));
        CHECK(frac(make_rational(-1, 4)) == make_rational(3, 4));
        CHECK(valuation(3, make_rational(5, 18)) == -2);
        CHECK(rational_pow(make_rational(2, 3), -2) == make_rational(9, 4));
        CHECK_THROWS(parse_rational("1/0"));
    }
}
