#include "weil/oracles.hpp"

#include "weil/arith.hpp"
#include "weil/errors.hpp"
#include "weil/lvalues.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace weil
{

namespace
{

using cld = std::complex<long double>;
constexpr long double two_pi = 2 * std::numbers::pi_v<long double>;

cld e_of(long double x)
{
    return std::polar<long double>(1, two_pi * x);
}

std::vector<cld> roots_table(int64_t c)
{
    std::vector<cld> out(static_cast<size_t>(c));
    for (int64_t j = 0; j < c; ++j)
        out[j] = e_of(static_cast<long double>(j) / c);
    return out;
}

// visit every r in (Z/c)^m
template <class F>
void for_each_residue(int m, int64_t c, F f)
{
    IntVector r(static_cast<size_t>(m), 0);
    while (true) {
        f(r);
        int i = 0;
        for (; i < m; ++i) {
            if (++r[i] < c)
                break;
            r[i] = 0;
        }
        if (i == m)
            break;
    }
}

int64_t q_int(const IntMatrix& G, const IntVector& r, int64_t c)
{
    const size_t m = G.size();
    __int128 acc = 0;
    for (size_t i = 0; i < m; ++i) {
        acc += static_cast<__int128>(G[i][i] / 2) * r[i] % c * r[i];
        for (size_t j = i + 1; j < m; ++j)
            acc += static_cast<__int128>(G[i][j]) * r[i] % c * r[j];
        acc %= c;
    }
    return mod(static_cast<int64_t>(acc), c);
}

int64_t dot_mod(const IntVector& h, const IntVector& r, int64_t c)
{
    __int128 acc = 0;
    for (size_t i = 0; i < h.size(); ++i)
        acc = (acc + static_cast<__int128>(mod(h[i], c)) * r[i]) % c;
    return static_cast<int64_t>(acc);
}

// G lifted vector divided by its denominator; x must be in the dual lattice
IntVector dual_pairing_vector(const Lattice& lat, const DualVector& x)
{
    IntVector h = lat.apply(x.num);
    for (auto& v : h) {
        WEIL_REQUIRE(v % x.den == 0, ContractViolation, "vector is not in the dual lattice");
        v /= x.den;
    }
    return h;
}

std::vector<int64_t> units_mod(int64_t N)
{
    std::vector<int64_t> out;
    if (N == 1)
        return {0};
    for (int64_t u = 1; u < N; ++u)
        if (std::gcd(u, N) == 1)
            out.push_back(u);
    return out;
}

int64_t power_cost(int64_t c, int m)
{
    int64_t out = 1;
    for (int i = 0; i < m; ++i)
        out = checked_mul(out, c);
    return out;
}

// Counts of N*exponent mod N*c for each nu, N the level.
struct GCounts
{
    int64_t M = 1;
    std::vector<int64_t> nus;
    std::vector<std::vector<int64_t>> counts;
};

GCounts g_counts(const DiscriminantForm& A, const DiscElement& gamma, const Rational& n, int64_t c,
                 const DiscElement& beta, int64_t a_shift, int64_t budget)
{
    WEIL_REQUIRE(c >= 1, ContractViolation, "c must be positive");
    WEIL_REQUIRE(A.is_isotropic(beta), ContractViolation, "beta must be isotropic");
    const Lattice& lat = A.lattice();
    const int m = lat.rank();
    const int64_t N = A.level();
    const int64_t N_beta = A.order_of(beta);
    const DualVector x = A.lift(gamma), b = A.lift(beta);
    const Rational t_rat = lat.q(x) + n;
    WEIL_REQUIRE(is_integer(t_rat), ContractViolation, "n + Q(gamma) must be an integer");
    const int64_t t = mod(to_int64(t_rat.get_num() % BigInt(static_cast<long>(c))), c);

    GCounts out;
    out.nus = units_mod(N_beta);
    const int64_t cost = checked_mul(checked_mul(static_cast<int64_t>(out.nus.size()), totient(c)), power_cost(c, m));
    WEIL_REQUIRE(cost <= budget, BudgetExceeded, "G-sum enumeration exceeds budget");
    out.M = checked_mul(N, c);

    const IntVector hx = dual_pairing_vector(lat, x);
    const IntVector hb = dual_pairing_vector(lat, b);
    const Rational qb = lat.q(b);
    WEIL_REQUIRE(is_integer(qb), InvariantViolation, "isotropic lift has non-integral norm");
    const Rational xb = lat.pairing(x, b);
    WEIL_REQUIRE(is_integer(xb * N), InvariantViolation, "pairing denominator exceeds the level");
    const int64_t qb_c = mod(to_int64(qb.get_num() % BigInt(static_cast<long>(c))), c);
    const int64_t Nxb = mod(to_int64(Rational(xb * N).get_num() % BigInt(static_cast<long>(out.M))), out.M);

    for (int64_t nu : out.nus) {
        std::vector<int64_t> cnt(static_cast<size_t>(out.M), 0);
        const int64_t nu_c = mod(nu, c);
        for_each_residue(m, c, [&](const IntVector& r) {
            // Q(nu b + r) mod c and N (x, nu b + r) mod N c
            const int64_t qv = mod(nu_c * nu_c % c * qb_c + nu_c * dot_mod(hb, r, c) + q_int(lat.gram(), r, c), c);
            const int64_t xv = mod(nu * Nxb + N * dot_mod(hx, r, c), out.M);
            for (int64_t d = 1; d <= c; ++d) {
                if (std::gcd(d, c) != 1)
                    continue;
                const int64_t a = inverse_mod(d, c) + a_shift * c;
                const int64_t e = mod(static_cast<int64_t>(
                                          (static_cast<__int128>(N) * mod(a % c * qv + d % c * t, c) - xv) % out.M),
                                      out.M);
                ++cnt[e];
            }
        });
        out.counts.push_back(std::move(cnt));
    }
    return out;
}

CycNumber combine_exact(const GCounts& g, const DirichletCharacter& chi)
{
    CycNumber out;
    for (size_t i = 0; i < g.nus.size(); ++i)
        out += chi(g.nus[i]) * CycNumber::from_counts(g.M, g.counts[i]);
    return out;
}

void check_character(const DiscriminantForm& A, const DiscElement& beta, const DirichletCharacter& chi)
{
    WEIL_REQUIRE(chi.modulus() == A.order_of(beta), ContractViolation,
                 "character modulus must equal the order of beta");
}

} // namespace

BigInt brute_rep_count(const Lattice& lat, const DualVector& x, const Rational& n, int64_t a, int64_t budget)
{
    WEIL_REQUIRE(a >= 1, ContractViolation, "modulus must be positive");
    WEIL_REQUIRE(power_cost(a, lat.rank()) <= budget, BudgetExceeded, "rep count enumeration exceeds budget");
    const Rational t_rat = lat.q(x) + n;
    WEIL_REQUIRE(is_integer(t_rat), ContractViolation, "n + Q(gamma) must be an integer");
    const int64_t t = mod(to_int64(t_rat.get_num() % BigInt(static_cast<long>(a))), a);
    const IntVector h = dual_pairing_vector(lat, x);
    int64_t count = 0;
    for_each_residue(lat.rank(), a, [&](const IntVector& r) {
        // Q(r - x) + n = Q(r) - (x, r) + Q(x) + n
        if (mod(q_int(lat.gram(), r, a) - dot_mod(h, r, a) + t, a) == 0)
            ++count;
    });
    return BigInt(static_cast<long>(count));
}

CycNumber brute_G(const DiscriminantForm& A, const DiscElement& gamma, const Rational& n, int64_t c,
                  const DiscElement& beta, const DirichletCharacter& chi, int64_t budget)
{
    check_character(A, beta, chi);
    return combine_exact(g_counts(A, gamma, n, c, beta, 0, budget), chi);
}

CycNumber brute_G_with_lift(const DiscriminantForm& A, const DiscElement& gamma, const Rational& n, int64_t c,
                            const DiscElement& beta, const DirichletCharacter& chi, int64_t a_shift)
{
    check_character(A, beta, chi);
    return combine_exact(g_counts(A, gamma, n, c, beta, a_shift, default_budget), chi);
}

NumericValue brute_G_numeric(const DiscriminantForm& A, const DiscElement& gamma, const Rational& n, int64_t c,
                             const DiscElement& beta, const DirichletCharacter& chi, int64_t budget)
{
    check_character(A, beta, chi);
    const GCounts g = g_counts(A, gamma, n, c, beta, 0, budget);
    const auto roots = roots_table(g.M);
    cld sum = 0;
    long double mass = 0;
    for (size_t i = 0; i < g.nus.size(); ++i) {
        cld inner = 0;
        for (int64_t j = 0; j < g.M; ++j) {
            inner += static_cast<long double>(g.counts[i][j]) * roots[j];
            mass += g.counts[i][j];
        }
        sum += chi(g.nus[i]).to_complex() * inner;
    }
    return NumericValue(sum, NumericValue::ulp_scale() * (mass + 1));
}

int64_t ramanujan_sum(int64_t c, int64_t n)
{
    WEIL_REQUIRE(c >= 1, ContractViolation, "c must be positive");
    std::vector<int64_t> counts(static_cast<size_t>(c), 0);
    for (int64_t d = 1; d <= c; ++d)
        if (std::gcd(d, c) == 1)
            ++counts[mod(d * mod(n, c), c)];
    auto r = CycNumber::from_counts(c, counts).as_rational();
    WEIL_REQUIRE(r && is_integer(*r), InvariantViolation, "Ramanujan sum is not an integer");
    return to_int64(r->get_num());
}

int64_t ramanujan_sum_mobius(int64_t c, int64_t n)
{
    int64_t g = std::gcd(c, n == 0 ? c : (n < 0 ? -n : n));
    int64_t out = 0;
    for (int64_t d : divisors(g))
        out += mobius(c / d) * d;
    return out;
}

long double hurwitz_zeta(long double s, long double a)
{
    WEIL_REQUIRE(s > 1 && a > 0, ContractViolation, "Hurwitz zeta needs s > 1 and a > 0");
    constexpr int N = 24, M = 14;
    long double sum = 0;
    for (int j = 0; j < N; ++j)
        sum += std::pow(a + j, -s);
    const long double y = a + N;
    sum += std::pow(y, 1 - s) / (s - 1) + std::pow(y, -s) / 2;
    long double rising = s; // s (s+1) ... (s + 2i - 2)
    long double fact = 2;   // (2i)!
    for (int i = 1; i <= M; ++i) {
        sum += bernoulli_number(2 * i).get_d() / fact * rising * std::pow(y, -s - 2 * i + 1);
        rising *= (s + 2 * i - 1) * (s + 2 * i);
        fact *= (2 * i + 1) * (2 * i + 2);
    }
    return sum;
}

long double digamma(long double x)
{
    WEIL_REQUIRE(x > 0, ContractViolation, "digamma needs x > 0");
    constexpr int N = 24, M = 12;
    long double shift = 0;
    for (int j = 0; j < N; ++j)
        shift += 1 / (x + j);
    const long double y = x + N;
    long double out = std::log(y) - 1 / (2 * y);
    for (int i = 1; i <= M; ++i)
        out -= bernoulli_number(2 * i).get_d() / (2 * i * std::pow(y, 2 * i));
    return out - shift;
}

NumericValue numeric_l_value(const DirichletCharacter& chi, long double s)
{
    const int64_t q = chi.modulus();
    cld sum = 0;
    if (s == 1) {
        WEIL_REQUIRE(!chi.is_trivial(), ContractViolation, "L(chi, 1) diverges for principal chi");
        for (int64_t a = 1; a <= q; ++a)
            if (auto idx = chi.index(a))
                sum += e_of(static_cast<long double>(*idx) / chi.order()) * digamma(static_cast<long double>(a) / q);
        sum *= -1.0L / q;
    } else {
        WEIL_REQUIRE(s > 1, ContractViolation, "numeric L-values need s >= 1");
        for (int64_t a = 1; a <= q; ++a)
            if (auto idx = chi.index(a))
                sum += e_of(static_cast<long double>(*idx) / chi.order()) *
                       hurwitz_zeta(s, static_cast<long double>(a) / q);
        sum *= std::pow(static_cast<long double>(q), -s);
    }
    return NumericValue(sum, 64 * NumericValue::ulp_scale() * (std::abs(sum) + 1));
}

Rational divisor_sum_reference(int k, int64_t n)
{
    WEIL_REQUIRE(k >= 2 && k % 2 == 0, ContractViolation, "weight must be even and at least 2");
    if (n == 0)
        return 2;
    Rational sigma = 0;
    for (int64_t d : divisors(n))
        sigma += rational_pow(make_rational(d), k - 1);
    return Rational(2) * Rational(-2 * k) / bernoulli_number(k) * sigma;
}

SeriesOracle::SeriesOracle(const DiscriminantForm& A, const DiscElement& beta, const DiscElement& gamma, int64_t c_max,
                           int64_t budget)
    : A_(A), N_beta_(A.order_of(beta)), c_max_(c_max), units_(units_mod(N_beta_))
{
    WEIL_REQUIRE(c_max >= 0, ContractViolation, "c_max must be non-negative");
    WEIL_REQUIRE(A.is_isotropic(beta), ContractViolation, "beta must be isotropic");
    const Lattice& lat = A.lattice();
    const int m = lat.rank();
    int64_t cost = 0;
    for (int64_t c = 1; c <= c_max; ++c)
        cost = checked_add(cost, checked_mul(static_cast<int64_t>(units_.size()), power_cost(c, m) + c * c));
    WEIL_REQUIRE(cost <= budget, BudgetExceeded, "series oracle exceeds budget");

    x_ = A.lift(gamma);
    const DualVector b = A.lift(beta);
    const IntVector hx = dual_pairing_vector(lat, x_);
    const IntVector hb = dual_pairing_vector(lat, b);
    const Rational qb = lat.q(b);
    const Rational xb = lat.pairing(x_, b);

    U_.assign(static_cast<size_t>(c_max) + 1, {});
    for (int64_t c = 1; c <= c_max; ++c) {
        const auto roots = roots_table(c);
        const int64_t qb_c = mod(to_int64(qb.get_num() % BigInt(static_cast<long>(c))), c);
        for (int64_t nu : units_) {
            const int64_t nu_c = mod(nu, c);
            std::vector<cld> T(static_cast<size_t>(c), 0);
            for_each_residue(m, c, [&](const IntVector& r) {
                const int64_t qv =
                    mod(nu_c * nu_c % c * qb_c + nu_c * dot_mod(hb, r, c) + q_int(lat.gram(), r, c), c);
                T[qv] += roots[mod(-dot_mod(hx, r, c), c)];
            });
            // e(-nu (x, b) / c), (x, b) only defined up to the lift
            const Rational phase = -Rational(static_cast<long>(nu)) * xb / Rational(static_cast<long>(c));
            const cld twist = e_of(frac(phase).get_d());
            std::vector<cld> U(static_cast<size_t>(c), 0);
            for (int64_t j = 0; j < c; ++j) {
                if (std::gcd(j, c) != 1 && c != 1)
                    continue;
                cld acc = 0;
                for (int64_t q = 0; q < c; ++q)
                    acc += T[q] * roots[j * q % c];
                U[j] = twist * acc;
            }
            U_[c].push_back(std::move(U));
        }
    }
}

NumericValue SeriesOracle::coefficient(const Rational& n, const Rational& k, int kappa,
                                       const std::vector<cld>& weights) const
{
    WEIL_REQUIRE(n > 0, ContractViolation, "series oracle needs n > 0");
    WEIL_REQUIRE(static_cast<int64_t>(weights.size()) == N_beta_, ContractViolation, "one weight per residue mod N_beta");
    const Lattice& lat = A_.lattice();
    const int m = lat.rank();
    const Rational t_rat = lat.q(x_) + n;
    WEIL_REQUIRE(is_integer(t_rat), ContractViolation, "n + Q(gamma) must be an integer");
    const long double kd = k.get_d();
    const long double s = kd + m / 2.0L;

    cld sum = 0;
    long double mass = 0;
    for (int64_t c = 1; c <= c_max_; ++c) {
        const auto roots = roots_table(c);
        const int64_t t = mod(to_int64(t_rat.get_num() % BigInt(static_cast<long>(c))), c);
        cld Gc = 0;
        for (size_t i = 0; i < units_.size(); ++i) {
            const cld w = weights[mod(units_[i], N_beta_)];
            if (w == cld(0))
                continue;
            cld inner = 0;
            for (int64_t d = 0; d < c; ++d) {
                if (std::gcd(d, c) != 1)
                    continue;
                inner += roots[d * t % c] * U_[c][i][c == 1 ? 0 : inverse_mod(d, c)];
            }
            Gc += w * inner;
        }
        const long double scale = std::pow(static_cast<long double>(c), -s);
        sum += scale * Gc;
        mass += scale * std::abs(Gc);
    }

    long double wsum = 0;
    for (const auto& w : weights)
        wsum += std::abs(w);
    const long double pre_abs = std::pow(two_pi, kd) * std::pow(n.get_d(), kd - 1) / std::tgamma(kd) /
                                std::sqrt(static_cast<long double>(A_.size()));
    const cld pre = pre_abs * std::pow(cld(0, -1), kappa);

    const long double rounding = NumericValue::ulp_scale() * (mass + 1) * pre_abs * 64;
    const long double excess = kd - m / 2.0L - 2;
    if (excess > 0) {
        // sum_{c > C} c^{-1-excess} <= C^{-excess}/excess, and <= 1 + 1/excess from c = 1
        const long double tail = wsum * (c_max_ == 0 ? 1 + 1 / excess
                                                     : std::pow(static_cast<long double>(c_max_), -excess) / excess);
        return NumericValue(pre * sum, pre_abs * tail + rounding, true);
    }
    return NumericValue(pre * sum, std::numeric_limits<long double>::infinity(), false);
}

std::vector<cld> SeriesOracle::twisted_weights(const DirichletCharacter& chi, int kappa)
{
    const int64_t N = chi.modulus();
    std::vector<cld> w(static_cast<size_t>(N), 0);
    const long double sign = (kappa % 2 == 0) ? 1 : -1;
    for (int64_t nu : units_mod(N))
        w[nu] = chi(nu).to_complex() + sign * chi(mod(-nu, N)).to_complex();
    return w;
}

std::vector<cld> SeriesOracle::individual_weights(int64_t N_beta, int kappa)
{
    std::vector<cld> w(static_cast<size_t>(N_beta), 0);
    w[mod(1, N_beta)] += 1;
    w[mod(-1, N_beta)] += (kappa % 2 == 0) ? 1 : -1;
    return w;
}

NumericValue series_coefficient_numeric(const DiscriminantForm& A, const DiscElement& beta, const Rational& k,
                                        const DirichletCharacter& chi, const DiscElement& gamma, const Rational& n,
                                        int64_t c_max)
{
    check_character(A, beta, chi);
    const Rational kappa_r = k + make_rational(A.lattice().b_plus() - A.lattice().b_minus(), 2);
    WEIL_REQUIRE(is_integer(kappa_r), ParityError, "k + (b+ - b-)/2 must be an integer");
    const int kappa = static_cast<int>(to_int64(kappa_r.get_num()));
    SeriesOracle oracle(A, beta, gamma, c_max);
    return oracle.coefficient(n, k, kappa, SeriesOracle::twisted_weights(chi, kappa));
}

} // namespace weil
