#pragma once

#include "weil/character.hpp"
#include "weil/cyclotomic.hpp"

#include <complex>
#include <cstdint>

namespace weil
{

Rational bernoulli_number(int n); // B_1 = -1/2
Rational bernoulli_polynomial(int s, const Rational& x);
Rational factorial(int n);

// value * pi^(pi_twice/2) * i^i_exp * sqrt(radicand), radicand squarefree.
// The pi exponent is stored doubled so half-integral weights stay exact.
struct Ledger
{
    CycNumber value;
    int pi_twice = 0;
    int i_exp = 0;
    int64_t radicand = 1;

    Ledger() : value(0) {}
    Ledger(const CycNumber& v) : value(v) {} // NOLINT
    static Ledger sqrt(const Rational& q);   // sqrt of a positive rational
    static Ledger pi_power(int twice);
    static Ledger i_power(int e);

    Rational pi_exp() const { return make_rational(pi_twice, 2); }
    bool is_rational_cyclotomic() const { return pi_twice == 0 && radicand == 1 && i_exp == 0; }
    bool is_zero() const { return value.is_zero(); }

    Ledger inverse() const;
    // Absorb i^e and sqrt(r) into the value. Requires pi_twice == 0.
    CycNumber to_cyclotomic() const;
    std::complex<long double> to_complex() const;

    Ledger& operator*=(const Ledger& o);
    friend Ledger operator*(Ledger a, const Ledger& b) { return a *= b; }
    friend Ledger operator/(const Ledger& a, const Ledger& b) { return a * b.inverse(); }
};

// L(conj(xi0), 1 - s) for primitive xi0 with xi0(-1) = (-1)^s.
CycNumber l_value_nonpositive(const DirichletCharacter& xi0, int s);

// L(xi, s) at a positive integer s, via the functional equation of the primitive part.
Ledger l_value_positive(const DirichletCharacter& xi, int s);

} // namespace weil
