#pragma once

#include "weil/character.hpp"
#include "weil/lattice.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

namespace weil
{

// N_{x,n}(a) = #{ r in L/aL : Q(r - x) + n = 0 mod a } for a dual vector x.
class RepCounter
{
public:
    // shortcuts: stability extrapolation and the closed form at odd p not dividing det;
    // without them every count is enumerated level by level
    explicit RepCounter(Lattice lat, bool shortcuts = true) : lat_(std::move(lat)), shortcuts_(shortcuts) {}

    const Lattice& lattice() const { return lat_; }

    BigInt count(const DualVector& x, const Rational& n, int64_t a) const;
    BigInt count_prime_power(const DualVector& x, const Rational& n, int64_t p, int alpha) const;

    // memo statistics, for tests
    size_t memo_size() const;

private:
    struct Key
    {
        IntVector h; // G x mod p^alpha
        int64_t t;   // Q(x) + n mod p^alpha
        int64_t p;
        int alpha;
        friend bool operator<(const Key& a, const Key& b)
        {
            return std::tie(a.p, a.alpha, a.t, a.h) < std::tie(b.p, b.alpha, b.t, b.h);
        }
    };
    BigInt enumerate(const IntVector& h, int64_t t, int64_t p, int alpha) const;

    Lattice lat_;
    bool shortcuts_ = true;
    mutable std::mutex mutex_;
    mutable std::map<Key, BigInt> memo_;
};

int w_exponent(int64_t p, int64_t N_beta, int64_t N_gamma, const Rational& n);

struct LocalPolynomial
{
    int64_t p = 2;
    int w = 1;
    std::vector<Rational> coeffs; // coeffs[j] of X^j; rational because p^(m-1) can be 1/p
};

LocalPolynomial local_polynomial(const RepCounter& counter, const DualVector& x, const Rational& n, int64_t p,
                                 int64_t N_beta);

// L^{(p)}(chi(p) p^{1 - m/2 - k})
CycNumber eval_local(const LocalPolynomial& poly, const DirichletCharacter& chi, const Rational& k, int m);

} // namespace weil
