#include "weil/repnums.hpp"

#include "weil/arith.hpp"
#include "weil/errors.hpp"

namespace weil
{

namespace
{

int64_t gamma_order(DualVector x)
{
    x.reduce();
    return x.den;
}

BigInt big_pow(int64_t p, int e)
{
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return out;
}

int64_t residue(const Rational& n, int64_t p)
{
    const int64_t num = to_int64(BigInt(n.get_num() % p));
    const int64_t den = to_int64(BigInt(n.get_den() % p));
    return mod(num * inverse_mod(mod(den, p), p), p);
}

// #{ y mod p^alpha : Q(y) = n mod p^alpha } for odd p not dividing det G, where det2 = det(G/2) mod p
BigInt unimodular_count(int m, int64_t det2, int64_t p, const Rational& n, int alpha)
{
    if (alpha == 0)
        return 1;
    if (m == 0)
        return (n == 0 || valuation(p, n) >= alpha) ? 1 : 0;
    const int64_t t = n == 0 ? 0 : residue(n, p);
    // points of the quadric mod p
    BigInt mod_p = big_pow(p, m - 1);
    if (m % 2 == 1) {
        if (t != 0) {
            const int64_t sign = (m - 1) / 2 % 2 == 0 ? 1 : p - 1;
            mod_p += kronecker(mod(sign * t % p * det2, p), p) * big_pow(p, (m - 1) / 2);
        }
    } else {
        const int64_t sign = m / 2 % 2 == 0 ? 1 : p - 1;
        const int eta = kronecker(mod(sign * det2, p), p);
        const BigInt pw = big_pow(p, (m - 2) / 2);
        if (t == 0)
            mod_p += eta * (p - 1) * pw;
        else
            mod_p -= eta * pw;
    }
    // smooth points lift p^{m-1} times per step; the origin is the only singular point
    BigInt out = (mod_p - (t == 0 ? 1 : 0)) * big_pow(p, (m - 1) * (alpha - 1));
    if (t != 0)
        return out;
    if (alpha == 1)
        return out + 1;
    if (n != 0 && valuation(p, n) < 2)
        return out;
    const Rational p2 = make_rational(p * p);
    return out + big_pow(p, m) * unimodular_count(m, det2, p, n / p2, alpha - 2);
}

} // namespace

BigInt RepCounter::enumerate(const IntVector& h, int64_t t, int64_t p, int alpha) const
{
    const auto& G = lat_.gram();
    const size_t m = G.size();
    auto f = [&](const IntVector& r, int64_t modulus) {
        __int128 acc = t;
        for (size_t i = 0; i < m; ++i) {
            acc += static_cast<__int128>(G[i][i] / 2) * r[i] % modulus * r[i];
            for (size_t j = i + 1; j < m; ++j)
                acc += static_cast<__int128>(G[i][j]) * r[i] % modulus * r[j];
            acc -= static_cast<__int128>(h[i]) * r[i];
            acc %= modulus;
        }
        return acc % modulus == 0;
    };
    std::vector<IntVector> current{IntVector(m, 0)};
    int64_t pj = 1;
    for (int j = 0; j < alpha; ++j) {
        const int64_t next_mod = checked_mul(pj, p);
        std::vector<IntVector> next;
        IntVector s(m, 0);
        for (const auto& r : current) {
            std::fill(s.begin(), s.end(), 0);
            while (true) {
                IntVector cand(m);
                for (size_t i = 0; i < m; ++i)
                    cand[i] = r[i] + pj * s[i];
                if (f(cand, next_mod))
                    next.push_back(std::move(cand));
                size_t i = 0;
                for (; i < m; ++i) {
                    if (++s[i] < p)
                        break;
                    s[i] = 0;
                }
                if (i == m)
                    break;
            }
        }
        current = std::move(next);
        pj = next_mod;
        // intermediate levels are free to cache
        Key key{h, mod(t, pj), p, j + 1};
        for (auto& v : key.h)
            v = mod(v, pj);
        std::lock_guard lock(mutex_);
        memo_.emplace(std::move(key), BigInt(static_cast<unsigned long>(current.size())));
        if (current.empty())
            break;
    }
    if (current.empty()) {
        // all deeper levels are empty too
        return 0;
    }
    return BigInt(static_cast<unsigned long>(current.size()));
}

BigInt RepCounter::count_prime_power(const DualVector& x, const Rational& n, int64_t p, int alpha) const
{
    WEIL_REQUIRE(alpha >= 0, ContractViolation, "negative prime-power exponent");
    WEIL_REQUIRE(is_prime(p), ContractViolation, "rep count modulus must be a prime power");
    const Rational tq = lat_.q(x) + n;
    WEIL_REQUIRE(is_integer(tq), ContractViolation, "n + Q(gamma) must be an integer, got " + to_string(tq));
    if (alpha == 0)
        return 1;
    const int m = lat_.rank();
    if (shortcuts_ && p != 2 && lat_.det() % p != 0) {
        const int64_t det2 = mod(mod(lat_.det(), p) * inverse_mod(mod(ipow(2, m), p), p), p);
        return unimodular_count(m, det2, p, -n, alpha);
    }
    if (shortcuts_ && m >= 1 && n != 0) {
        const int cap = 2 + 2 * valuation(p, Rational(2 * gamma_order(x)) * n);
        if (alpha > cap) {
            BigInt base = count_prime_power(x, n, p, cap);
            BigInt scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>((m - 1) * (alpha - cap)));
            return base * scale;
        }
    }
    const int64_t pa = ipow(p, alpha);
    const IntVector gx = lat_.apply(x.num);
    IntVector h(gx.size());
    for (size_t i = 0; i < gx.size(); ++i) {
        WEIL_REQUIRE(gx[i] % x.den == 0, ContractViolation, "vector is not in the dual lattice");
        h[i] = mod(gx[i] / x.den, pa);
    }
    const int64_t t = mod(to_int64(tq.get_num() % BigInt(static_cast<long>(pa))), pa);
    const Key key{h, t, p, alpha};
    {
        std::lock_guard lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
    }
    BigInt out = enumerate(h, t, p, alpha);
    std::lock_guard lock(mutex_);
    memo_.emplace(key, out);
    return out;
}

BigInt RepCounter::count(const DualVector& x, const Rational& n, int64_t a) const
{
    WEIL_REQUIRE(a >= 1, ContractViolation, "rep count modulus must be positive");
    BigInt out = 1;
    for (auto [p, e] : factorize(a))
        out *= count_prime_power(x, n, p, e);
    if (a == 1)
        WEIL_REQUIRE(is_integer(lat_.q(x) + n), ContractViolation, "n + Q(gamma) must be an integer");
    return out;
}

size_t RepCounter::memo_size() const
{
    std::lock_guard lock(mutex_);
    return memo_.size();
}

int w_exponent(int64_t p, int64_t N_beta, int64_t N_gamma, const Rational& n)
{
    const Rational v = Rational(2 * N_beta * N_gamma) * n;
    WEIL_REQUIRE(v != 0 && is_integer(v), ContractViolation, "2 N_beta N_gamma n must be a nonzero integer");
    return 1 + 2 * valuation(p, v);
}

LocalPolynomial local_polynomial(const RepCounter& counter, const DualVector& x, const Rational& n, int64_t p,
                                 int64_t N_beta)
{
    LocalPolynomial out;
    out.p = p;
    out.w = w_exponent(p, N_beta, gamma_order(x), n);
    const int m = counter.lattice().rank();
    const Rational pm1 = rational_pow(make_rational(p), m - 1);
    out.coeffs.assign(static_cast<size_t>(out.w) + 1, Rational(0));
    for (int nu = 0; nu < out.w; ++nu) {
        const Rational N(counter.count_prime_power(x, n, p, nu));
        out.coeffs[nu] += N;
        out.coeffs[nu + 1] -= pm1 * N;
    }
    out.coeffs[out.w] += Rational(counter.count_prime_power(x, n, p, out.w));
    return out;
}

CycNumber eval_local(const LocalPolynomial& poly, const DirichletCharacter& chi, const Rational& k, int m)
{
    const Rational e = Rational(1) - make_rational(m, 2) - k;
    WEIL_REQUIRE(is_integer(e), InvariantViolation, "exponent 1 - m/2 - k is not an integer; weight and rank disagree");
    auto idx = chi.index(poly.p);
    if (!idx)
        return CycNumber(poly.coeffs[0]);
    const CycNumber X = CycNumber::root_of_unity(chi.order(), *idx) *
                        CycNumber(rational_pow(make_rational(poly.p), static_cast<int>(to_int64(e.get_num()))));
    CycNumber out;
    CycNumber Xj(1);
    for (const auto& c : poly.coeffs) {
        out += Xj * CycNumber(c);
        Xj *= X;
    }
    return out;
}

} // namespace weil
