#pragma once

// Elementary number theory on 64-bit integers. Inputs are desk-scale
// (determinants, levels, moduli well below 2^62); overflow is checked and
// reported instead of wrapping.

#include <cstdint>
#include <utility>
#include <vector>

namespace weil
{

using Factorization = std::vector<std::pair<int64_t, int>>;

/// Non-negative residue of a mod m (m > 0).
int64_t mod(int64_t a, int64_t m);

int64_t checked_mul(int64_t a, int64_t b);
int64_t checked_add(int64_t a, int64_t b);
int64_t ipow(int64_t base, int exp);

/// Trial-division factorization of |n|, primes ascending. factorize(1) is empty.
Factorization factorize(int64_t n);
std::vector<int64_t> prime_divisors(int64_t n);
std::vector<int64_t> divisors(int64_t n);

bool is_prime(int64_t n);
int64_t totient(int64_t n);
int mobius(int64_t n);

/// p-adic valuation of a nonzero integer.
int valuation(int64_t p, int64_t n);

/// Inverse of a modulo m; requires gcd(a, m) = 1. Returns 0 when m = 1.
int64_t inverse_mod(int64_t a, int64_t m);
int64_t pow_mod(int64_t base, int64_t exp, int64_t m);

/// Kronecker symbol (a/n) for arbitrary integers.
int kronecker(int64_t a, int64_t n);

/// Squarefree s and f with n = s * f^2 (sign carried by s).
std::pair<int64_t, int64_t> squarefree_decomposition(int64_t n);
bool is_squarefree(int64_t n);

/// Smallest generator of (Z/p^e Z)^* for an odd prime p.
int64_t smallest_primitive_root(int64_t p, int e);

/// Fundamental discriminant D0 with D / D0 a square.
int64_t fundamental_discriminant(int64_t D);
bool is_fundamental_discriminant(int64_t D);

} // namespace weil
