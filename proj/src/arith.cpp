#include "weil/arith.hpp"

#include "weil/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace weil
{

int64_t mod(int64_t a, int64_t m)
{
    WEIL_REQUIRE(m > 0, ContractViolation, "modulus must be positive");
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int64_t checked_mul(int64_t a, int64_t b)
{
    int64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("64-bit overflow in multiplication");
    return out;
}

int64_t checked_add(int64_t a, int64_t b)
{
    int64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw std::overflow_error("64-bit overflow in addition");
    return out;
}

int64_t ipow(int64_t base, int exp)
{
    WEIL_REQUIRE(exp >= 0, ContractViolation, "negative exponent in ipow");
    int64_t out = 1;
    for (int i = 0; i < exp; ++i)
        out = checked_mul(out, base);
    return out;
}

Factorization factorize(int64_t n)
{
    WEIL_REQUIRE(n != 0, ContractViolation, "cannot factor zero");
    WEIL_REQUIRE(n != std::numeric_limits<int64_t>::min(), ContractViolation, "factor input out of range");
    n = std::llabs(n);
    Factorization out;
    for (int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0)
            continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

std::vector<int64_t> prime_divisors(int64_t n)
{
    std::vector<int64_t> out;
    for (auto [p, e] : factorize(n))
        out.push_back(p);
    return out;
}

std::vector<int64_t> divisors(int64_t n)
{
    std::vector<int64_t> out{1};
    for (auto [p, e] : factorize(n)) {
        const size_t count = out.size();
        int64_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < count; ++i)
                out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_prime(int64_t n)
{
    if (n < 2)
        return false;
    auto f = factorize(n);
    return f.size() == 1 && f[0].second == 1;
}

int64_t totient(int64_t n)
{
    WEIL_REQUIRE(n >= 1, ContractViolation, "totient of non-positive integer");
    int64_t out = n;
    for (auto [p, e] : factorize(n))
        out = out / p * (p - 1);
    return out;
}

int mobius(int64_t n)
{
    WEIL_REQUIRE(n >= 1, ContractViolation, "mobius of non-positive integer");
    int out = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1)
            return 0;
        out = -out;
    }
    return out;
}

int valuation(int64_t p, int64_t n)
{
    WEIL_REQUIRE(n != 0, ContractViolation, "valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int64_t inverse_mod(int64_t a, int64_t m)
{
    if (m == 1)
        return 0;
    int64_t old_r = mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        int64_t q = old_r / r;
        std::swap(old_r, r);
        r -= q * old_r;
        std::swap(old_s, s);
        s -= q * old_s;
    }
    WEIL_REQUIRE(old_r == 1, ContractViolation, "inverse_mod: argument not a unit");
    return mod(old_s, m);
}

int64_t pow_mod(int64_t base, int64_t exp, int64_t m)
{
    __int128 result = 1 % m, b = mod(base, m);
    while (exp > 0) {
        if (exp & 1)
            result = result * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<int64_t>(result);
}

int kronecker(int64_t a, int64_t n)
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            result = -result;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0)
            return 0;
        if (v % 2 == 1) {
            int64_t r = mod(a, 8);
            if (r == 3 || r == 5)
                result = -result;
        }
    }
    // Jacobi symbol (a/n) for odd n > 0.
    a = mod(a, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            int64_t r = n % 8;
            if (r == 3 || r == 5)
                result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

std::pair<int64_t, int64_t> squarefree_decomposition(int64_t n)
{
    WEIL_REQUIRE(n != 0, ContractViolation, "squarefree part of zero");
    int64_t s = n < 0 ? -1 : 1, f = 1;
    for (auto [p, e] : factorize(n)) {
        if (e % 2)
            s *= p;
        f *= ipow(p, e / 2);
    }
    return {s, f};
}

bool is_squarefree(int64_t n)
{
    for (auto [p, e] : factorize(n))
        if (e > 1)
            return false;
    return true;
}

int64_t smallest_primitive_root(int64_t p, int e)
{
    WEIL_REQUIRE(p > 2 && is_prime(p) && e >= 1, ContractViolation, "primitive root needs an odd prime power");
    const int64_t pe = ipow(p, e);
    const int64_t phi = pe / p * (p - 1);
    const auto primes = prime_divisors(phi);
    for (int64_t g = 2; g < pe; ++g) {
        if (g % p == 0)
            continue;
        bool ok = true;
        for (int64_t q : primes)
            if (pow_mod(g, phi / q, pe) == 1) {
                ok = false;
                break;
            }
        if (ok)
            return g;
    }
    throw InvariantViolation("no primitive root found");
}

int64_t fundamental_discriminant(int64_t D)
{
    WEIL_REQUIRE(D != 0 && (mod(D, 4) == 0 || mod(D, 4) == 1), InvalidDiscriminant,
                 "discriminant must be nonzero and congruent to 0 or 1 mod 4, got " + std::to_string(D));
    auto [s, f] = squarefree_decomposition(D);
    return mod(s, 4) == 1 ? s : 4 * s;
}

bool is_fundamental_discriminant(int64_t D)
{
    if (D == 1)
        return true;
    if (D == 0)
        return false;
    if (mod(D, 4) == 1)
        return is_squarefree(D);
    if (mod(D, 4) != 0)
        return false;
    int64_t d = D / 4;
    return is_squarefree(d) && (mod(d, 4) == 2 || mod(d, 4) == 3);
}

} // namespace weil
