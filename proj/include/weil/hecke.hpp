#pragma once

#include "weil/arith.hpp"
#include "weil/character.hpp"
#include "weil/errors.hpp"
#include "weil/table.hpp"

namespace weil
{

// T_r(p) for even rank (p = r^2 mod N), T(p^2) for odd rank
struct HeckeDescriptor
{
    int64_t p = 0;
    int64_t r = 1;
    bool odd_rank = false;

    static HeckeDescriptor make(const DiscriminantForm& A, int64_t p, int64_t r = 0);
};

// primes coprime to the level admitting a descriptor, ascending; for even rank every square root r is listed
std::vector<HeckeDescriptor> admissible_descriptors(const DiscriminantForm& A, int count);

// the root of unity and sign in front of c(gamma, n) for odd rank, without the p^{k-3/2} and (-n/p) factors
CycNumber hecke_middle_constant(const DiscriminantForm& A, int64_t p);
// (-n/p) for rational n with denominator prime to p
int kronecker_minus_n(const Rational& n, int64_t p);

CycNumber eigenvalue(const DirichletCharacter& chi, const HeckeDescriptor& h, const Rational& k);

namespace detail
{
inline CycNumber as_value(const CycNumber& c, const CycNumber&) { return c; }
inline NumericValue as_value(const CycNumber& c, const NumericValue&) { return NumericValue(c.to_complex()); }
} // namespace detail

template <class V>
FourierTable<V> hecke_act(const FourierTable<V>& f, const HeckeDescriptor& h, const Rational& k, const Rational& n_max)
{
    const DiscriminantForm& A = f.form();
    WEIL_REQUIRE(h.odd_rank == (A.lattice().rank() % 2 == 1), ContractViolation,
                 "Hecke descriptor parity does not match the lattice rank");
    const Rational scale = h.odd_rank ? Rational(h.p * h.p) : Rational(static_cast<long>(h.p));
    WEIL_REQUIRE(n_max * scale <= f.n_max(), DepthError,
                 "Hecke action to depth " + to_string(n_max) + " needs source depth " + to_string(n_max * scale) +
                     ", table has " + to_string(f.n_max()));
    const int64_t ex = A.exponent();
    const V zero{};
    FourierTable<V> out(f.form_ptr(), n_max);
    const Rational p(static_cast<long>(h.p));
    if (!h.odd_rank) {
        const int64_t r_bar = inverse_mod(mod(h.r, ex), ex);
        const Rational pk1 = rational_pow(p, static_cast<int>(to_int64(Rational(k - 1).get_num())));
        const V w = detail::as_value(CycNumber(pk1), zero);
        for (auto& [key, v] : out.entries()) {
            const DiscElement& g = A.elements()[key.gamma];
            v = f.get(A.scale(h.r, g), p * key.n);
            V tail = f.get(A.scale(r_bar, g), key.n / p);
            tail *= w;
            v += tail;
        }
        return out;
    }
    const int64_t p_bar = inverse_mod(mod(h.p, ex), ex);
    WEIL_REQUIRE(is_integer(k - Rational(3, 2)), ContractViolation, "odd rank needs half-integral weight");
    const int e_mid = static_cast<int>(to_int64(Rational(k - Rational(3, 2)).get_num()));
    const CycNumber mid = hecke_middle_constant(A, h.p) * CycNumber(rational_pow(p, e_mid));
    const V w2 = detail::as_value(CycNumber(rational_pow(p, 2 * e_mid + 1)), zero);
    for (auto& [key, v] : out.entries()) {
        const DiscElement& g = A.elements()[key.gamma];
        v = f.get(A.scale(h.p, g), p * p * key.n);
        const int leg = key.n == 0 ? 0 : kronecker_minus_n(key.n, h.p);
        if (leg != 0) {
            V m = f.get(g, key.n);
            m *= detail::as_value(mid * CycNumber(leg), zero);
            v += m;
        }
        V tail = f.get(A.scale(p_bar, g), key.n / (p * p));
        tail *= w2;
        v += tail;
    }
    return out;
}

struct EigenCheck
{
    bool ok = false;
    long double deviation = 0;
};

EigenCheck verify_eigenform(const FourierTable<CycNumber>& f, const HeckeDescriptor& h, const Rational& k,
                            const CycNumber& lambda, const Rational& n_max);
EigenCheck verify_eigenform(const FourierTable<NumericValue>& f, const HeckeDescriptor& h, const Rational& k,
                            const CycNumber& lambda, const Rational& n_max);

} // namespace weil
