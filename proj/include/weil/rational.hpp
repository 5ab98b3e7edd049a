#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace weil
{

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(int64_t num, int64_t den = 1)
{
    Rational q(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Representative of q mod 1 in [0, 1).
Rational frac(const Rational& q);

/// floor(q) as an integer.
BigInt floor_of(const Rational& q);

/// p-adic valuation of a nonzero rational.
int valuation(int64_t p, const Rational& q);

/// "num/den", always with an explicit denominator.
std::string to_string(const Rational& q);

/// Accepts "a", "-a", "a/b".
Rational parse_rational(std::string_view text);

int64_t to_int64(const BigInt& z);

/// q^e for integer e (q != 0 when e < 0).
Rational rational_pow(const Rational& q, int e);

} // namespace weil
