#include "weil/lvalues.hpp"

#include "weil/arith.hpp"
#include "weil/errors.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

namespace weil
{

Rational factorial(int n)
{
    WEIL_REQUIRE(n >= 0, ContractViolation, "factorial of a negative number");
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(out);
}

namespace
{
BigInt binomial(int n, int k)
{
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}
} // namespace

Rational bernoulli_number(int n)
{
    WEIL_REQUIRE(n >= 0, ContractViolation, "negative Bernoulli index");
    static std::mutex mutex;
    static std::vector<Rational> cache{Rational(1)};
    std::lock_guard lock(mutex);
    // sum_{j=0}^{n} C(n+1, j) B_j = 0
    while (static_cast<int>(cache.size()) <= n) {
        const int m = static_cast<int>(cache.size());
        Rational acc = 0;
        for (int j = 0; j < m; ++j)
            acc += Rational(binomial(m + 1, j)) * cache[j];
        cache.push_back(-acc / (m + 1));
    }
    return cache[n];
}

Rational bernoulli_polynomial(int s, const Rational& x)
{
    Rational out = 0, xp = 1;
    // sum_j C(s, j) B_{s-j} x^j
    for (int j = 0; j <= s; ++j) {
        out += Rational(binomial(s, j)) * bernoulli_number(s - j) * xp;
        xp *= x;
    }
    return out;
}

Ledger Ledger::sqrt(const Rational& q)
{
    WEIL_REQUIRE(q > 0, ContractViolation, "ledger square root of a non-positive number");
    // sqrt(a/b) = sqrt(a b) / b
    BigInt ab = q.get_num() * q.get_den();
    WEIL_REQUIRE(ab.fits_slong_p(), std::overflow_error, "radicand too large");
    auto [s, f] = squarefree_decomposition(ab.get_si());
    Ledger out(CycNumber(Rational(BigInt(static_cast<long>(f)), q.get_den())));
    out.radicand = s;
    return out;
}

Ledger Ledger::pi_power(int twice)
{
    Ledger out(CycNumber(1));
    out.pi_twice = twice;
    return out;
}

Ledger Ledger::i_power(int e)
{
    Ledger out(CycNumber(1));
    out.i_exp = static_cast<int>(mod(e, 4));
    return out;
}

Ledger& Ledger::operator*=(const Ledger& o)
{
    value *= o.value;
    pi_twice += o.pi_twice;
    i_exp = static_cast<int>(mod(i_exp + o.i_exp, 4));
    const int64_t g = std::gcd(radicand, o.radicand);
    value *= CycNumber(g);
    radicand = (radicand / g) * (o.radicand / g);
    return *this;
}

Ledger Ledger::inverse() const
{
    Ledger out(value.inverse());
    out.pi_twice = -pi_twice;
    out.i_exp = static_cast<int>(mod(-i_exp, 4));
    out.radicand = radicand;
    out.value *= CycNumber(make_rational(1, radicand));
    return out;
}

CycNumber Ledger::to_cyclotomic() const
{
    WEIL_REQUIRE(pi_twice == 0, InvariantViolation, "ledger still carries a power of pi");
    CycNumber out = value * CycNumber::root_of_unity(4, i_exp);
    if (radicand != 1)
        out *= CycNumber::sqrt_of(radicand);
    return out;
}

std::complex<long double> Ledger::to_complex() const
{
    std::complex<long double> out = value.to_complex();
    out *= std::pow(std::numbers::pi_v<long double>, static_cast<long double>(pi_twice) / 2.0L);
    static const std::complex<long double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    out *= ipow[i_exp];
    out *= std::sqrt(static_cast<long double>(radicand));
    return out;
}

CycNumber l_value_nonpositive(const DirichletCharacter& xi0, int s)
{
    WEIL_REQUIRE(s >= 1, ContractViolation, "l_value_nonpositive needs s >= 1");
    if (xi0.parity() != s % 2)
        throw ParityError("L(chi, 1 - s) vanishes: parity of " + xi0.label() + " does not match s = " +
                          std::to_string(s));
    const int64_t f = xi0.modulus();
    CycNumber acc;
    for (int64_t n = 1; n <= f; ++n) {
        if (!xi0.index(n))
            continue;
        acc += xi0.conj_value(n) * CycNumber(bernoulli_polynomial(s, make_rational(n, f)));
    }
    Rational scale = -rational_pow(make_rational(f), s - 1) / s;
    return acc * CycNumber(scale);
}

Ledger l_value_positive(const DirichletCharacter& xi, int s)
{
    WEIL_REQUIRE(s >= 1, ContractViolation, "l_value_positive needs s >= 1");
    const DirichletCharacter xi0 = xi.primitive_part();
    const int delta = xi0.parity();
    if ((s - delta) % 2 != 0)
        throw ParityError("functional equation gives no closed form: " + xi0.label() + " at s = " +
                          std::to_string(s));
    const int64_t f0 = xi0.modulus();
    const int j = (s - delta) / 2;
    // Gamma((1-s+delta)/2) / Gamma((s+delta)/2) with the sqrt(pi) folded into pi^s
    Rational c = rational_pow(Rational(-4), j) * factorial(j) / (factorial(2 * j) * factorial((s + delta) / 2 - 1));
    c /= rational_pow(make_rational(f0), s);

    Ledger out(CycNumber(c) * l_value_nonpositive(xi0, s));
    out *= Ledger::pi_power(2 * s);
    if (xi0.order() <= 2) {
        // G(xi0) = i^delta sqrt(f0) for quadratic characters; the i^delta cancels
        out *= Ledger::sqrt(make_rational(f0));
    } else {
        out *= Ledger(gauss_sum(xi0));
        out *= Ledger::i_power(-delta);
    }
    CycNumber euler(1);
    for (int64_t p : prime_divisors(xi.modulus()))
        if (auto i = xi0.index(p))
            euler *= CycNumber(1) - CycNumber::root_of_unity(xi0.order(), *i) * CycNumber(rational_pow(make_rational(1, p), s));
    out.value *= euler;
    return out;
}

} // namespace weil
