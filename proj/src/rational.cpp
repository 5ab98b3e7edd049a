#include "weil/rational.hpp"

#include "weil/errors.hpp"

namespace weil
{

BigInt floor_of(const Rational& q)
{
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

Rational frac(const Rational& q) { return q - Rational(floor_of(q)); }

int valuation(int64_t p, const Rational& q)
{
    WEIL_REQUIRE(q != 0, ContractViolation, "valuation of zero rational");
    const BigInt bp(static_cast<long>(p));
    int v = 0;
    BigInt num = abs(q.get_num()), den = q.get_den();
    while (mpz_divisible_p(num.get_mpz_t(), bp.get_mpz_t())) {
        num /= bp;
        ++v;
    }
    while (mpz_divisible_p(den.get_mpz_t(), bp.get_mpz_t())) {
        den /= bp;
        --v;
    }
    return v;
}

std::string to_string(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(BigInt(s));
        Rational q(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
        WEIL_REQUIRE(q.get_den() != 0, std::invalid_argument, "zero denominator in '" + s + "'");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not a rational number: '" + s + "'");
    }
}

int64_t to_int64(const BigInt& z)
{
    WEIL_REQUIRE(z.fits_slong_p(), std::overflow_error, "integer does not fit in 64 bits");
    return z.get_si();
}

Rational rational_pow(const Rational& q, int e)
{
    Rational out = 1;
    if (e < 0) {
        WEIL_REQUIRE(q != 0, ContractViolation, "zero to a negative power");
        Rational inv = 1 / q;
        for (int i = 0; i < -e; ++i)
            out *= inv;
        return out;
    }
    for (int i = 0; i < e; ++i)
        out *= q;
    return out;
}

} // namespace weil
