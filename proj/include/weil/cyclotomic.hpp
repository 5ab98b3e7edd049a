#pragma once

#include "weil/rational.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace weil
{

/// Integer coefficients of the M-th cyclotomic polynomial, constant term first.
const std::vector<int64_t>& cyclotomic_polynomial(int64_t M);

/**
 * Exact element of the cyclotomic field Q(zeta_M), zeta_M = e(1/M).
 *
 * Stored as num(zeta_M) / den with num of degree < phi(M), reduced modulo the
 * M-th cyclotomic polynomial, so that equal field elements at the same
 * conductor have identical storage. Operations on elements of different
 * conductors work in Q(zeta_lcm).
 */
class CycNumber
{
public:
    CycNumber();
    CycNumber(const Rational& q); // NOLINT: implicit embedding of Q
    CycNumber(int64_t n) : CycNumber(Rational(static_cast<long>(n))) {} // NOLINT

    /// zeta_order^k.
    static CycNumber root_of_unity(int64_t order, int64_t k);

    /// sum_j counts[j] zeta_M^j for a length-M table of integer counts.
    static CycNumber from_counts(int64_t M, const std::vector<int64_t>& counts);
    static CycNumber from_counts(int64_t M, const std::vector<BigInt>& counts);

    /// Coefficient vector in the power basis 1, zeta_M, ..., zeta_M^{phi(M)-1}.
    static CycNumber from_coefficients(int64_t M, const std::vector<Rational>& coeffs);

    /// Positive square root of a positive integer, via quadratic Gauss sums.
    static CycNumber sqrt_of(int64_t n);

    int64_t conductor() const { return conductor_; }
    std::vector<Rational> coefficients() const;

    /// The same element written in Q(zeta_target); conductor must divide target.
    CycNumber embed(int64_t target) const;

    /// Express in Q(zeta_d) if the element lies there.
    std::optional<CycNumber> restrict_to(int64_t d) const;

    /// Smallest conductor representation.
    CycNumber minimal() const;

    bool is_zero() const;
    bool is_rational() const { return conductor_ == 1; }
    std::optional<Rational> as_rational() const;

    CycNumber conj() const { return galois(-1); }
    /// Automorphism zeta_M -> zeta_M^a, gcd(a, M) = 1.
    CycNumber galois(int64_t a) const;
    CycNumber inverse() const;

    CycNumber operator-() const;
    CycNumber& operator+=(const CycNumber& other);
    CycNumber& operator-=(const CycNumber& other);
    CycNumber& operator*=(const CycNumber& other);
    CycNumber& operator/=(const CycNumber& other) { return *this *= other.inverse(); }

    friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
    friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
    friend CycNumber operator*(CycNumber a, const CycNumber& b) { return a *= b; }
    friend CycNumber operator/(CycNumber a, const CycNumber& b) { return a /= b; }
    friend bool operator==(const CycNumber& a, const CycNumber& b) { return (a - b).is_zero(); }
    friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

    std::complex<long double> to_complex() const;

    friend std::ostream& operator<<(std::ostream& os, const CycNumber& x);

private:
    CycNumber(int64_t M, std::vector<BigInt> num, BigInt den);
    void normalize();
    static std::vector<BigInt> reduce_poly(int64_t M, std::vector<BigInt> poly);

    int64_t conductor_ = 1;
    std::vector<BigInt> num_;
    BigInt den_ = 1;
};

} // namespace weil
