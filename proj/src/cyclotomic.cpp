#include "weil/cyclotomic.hpp"

#include "weil/arith.hpp"
#include "weil/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

namespace weil
{

namespace
{

std::vector<int64_t> compute_cyclotomic(int64_t M)
{
    // (x^M - 1) / prod_{d | M, d < M} Phi_d, by exact long division.
    std::vector<int64_t> poly(static_cast<size_t>(M) + 1, 0);
    poly[0] = -1;
    poly[static_cast<size_t>(M)] = 1;
    for (int64_t d : divisors(M)) {
        if (d == M)
            continue;
        const auto& div = cyclotomic_polynomial(d);
        const size_t dd = div.size() - 1;
        std::vector<int64_t> quotient(poly.size() - dd, 0);
        for (size_t i = poly.size(); i-- > dd;) {
            int64_t c = poly[i];
            quotient[i - dd] = c;
            if (c == 0)
                continue;
            for (size_t j = 0; j <= dd; ++j)
                poly[i - dd + j] -= c * div[j];
        }
        for (size_t j = 0; j < dd; ++j)
            WEIL_REQUIRE(poly[j] == 0, InvariantViolation, "cyclotomic division left a remainder");
        poly = std::move(quotient);
    }
    return poly;
}

int64_t canonical_conductor(int64_t M) { return (M % 4 == 2) ? M / 2 : M; }

// Index remap for zeta_{2m}^j = (-1)^j zeta_m^{j (m+1)/2} with m odd.
std::pair<int64_t, bool> halve_root(int64_t M, int64_t j)
{
    const int64_t m = M / 2;
    return {mod(j * ((m + 1) / 2), m), (j % 2) != 0};
}

// Solve A x = b over Q for a (possibly overdetermined) system. Returns nullopt
// when inconsistent; requires full column rank.
std::optional<std::vector<Rational>> solve_rational(std::vector<std::vector<Rational>> A, std::vector<Rational> b)
{
    const size_t rows = A.size();
    const size_t cols = rows ? A[0].size() : 0;
    size_t r = 0;
    std::vector<size_t> pivot_col;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && A[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(A[piv], A[r]);
        std::swap(b[piv], b[r]);
        const Rational inv = 1 / A[r][c];
        for (size_t k = c; k < cols; ++k)
            A[r][k] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0)
                continue;
            const Rational f = A[i][c];
            for (size_t k = c; k < cols; ++k)
                A[i][k] -= f * A[r][k];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    WEIL_REQUIRE(pivot_col.size() == cols, InvariantViolation, "rank-deficient system in cyclotomic solve");
    for (size_t i = r; i < rows; ++i)
        if (b[i] != 0)
            return std::nullopt;
    std::vector<Rational> x(cols);
    for (size_t i = 0; i < r; ++i)
        x[pivot_col[i]] = b[i];
    return x;
}

} // namespace

const std::vector<int64_t>& cyclotomic_polynomial(int64_t M)
{
    WEIL_REQUIRE(M >= 1, ContractViolation, "cyclotomic polynomial index must be positive");
    static std::mutex mutex;
    static std::map<int64_t, std::vector<int64_t>> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(M);
        if (it != cache.end())
            return it->second;
    }
    std::vector<int64_t> poly = (M == 1) ? std::vector<int64_t>{-1, 1} : compute_cyclotomic(M);
    std::lock_guard lock(mutex);
    return cache.emplace(M, std::move(poly)).first->second;
}

CycNumber::CycNumber() : conductor_(1), num_{BigInt(0)}, den_(1) {}

CycNumber::CycNumber(const Rational& q) : conductor_(1)
{
    Rational c(q);
    c.canonicalize();
    num_ = {c.get_num()};
    den_ = c.get_den();
}

CycNumber::CycNumber(int64_t M, std::vector<BigInt> num, BigInt den)
    : conductor_(M), num_(std::move(num)), den_(std::move(den))
{
    normalize();
}

void CycNumber::normalize()
{
    WEIL_REQUIRE(den_ != 0, InvariantViolation, "zero denominator in cyclotomic number");
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_)
            c = -c;
    }
    BigInt g = den_;
    for (const auto& c : num_)
        if (c != 0)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g != 1) {
        den_ /= g;
        for (auto& c : num_)
            c /= g;
    }
    bool only_constant = true;
    for (size_t j = 1; j < num_.size(); ++j)
        if (num_[j] != 0) {
            only_constant = false;
            break;
        }
    if (only_constant && conductor_ != 1) {
        conductor_ = 1;
        num_.resize(1);
    }
    if (num_.empty())
        num_.assign(1, BigInt(0));
    if (num_.size() == 1 && num_[0] == 0)
        den_ = 1;
}

std::vector<BigInt> CycNumber::reduce_poly(int64_t M, std::vector<BigInt> poly)
{
    const auto& phi = cyclotomic_polynomial(M);
    const size_t deg = phi.size() - 1;
    for (size_t i = poly.size(); i-- > deg;) {
        if (poly[i] == 0)
            continue;
        const BigInt c = poly[i];
        for (size_t j = 0; j <= deg; ++j)
            if (phi[j] != 0)
                poly[i - deg + j] -= c * static_cast<long>(phi[j]);
    }
    poly.resize(deg, BigInt(0));
    return poly;
}

CycNumber CycNumber::root_of_unity(int64_t order, int64_t k)
{
    WEIL_REQUIRE(order >= 1, ContractViolation, "root of unity order must be positive");
    std::vector<int64_t> counts(static_cast<size_t>(order), 0);
    counts[static_cast<size_t>(mod(k, order))] = 1;
    return from_counts(order, counts);
}

CycNumber CycNumber::from_counts(int64_t M, const std::vector<int64_t>& counts)
{
    std::vector<BigInt> big(counts.size());
    for (size_t j = 0; j < counts.size(); ++j)
        big[j] = static_cast<long>(counts[j]);
    return from_counts(M, big);
}

CycNumber CycNumber::from_counts(int64_t M, const std::vector<BigInt>& counts)
{
    WEIL_REQUIRE(static_cast<int64_t>(counts.size()) == M, ContractViolation, "count table length must equal conductor");
    if (M % 4 == 2) {
        const int64_t m = M / 2;
        std::vector<BigInt> halved(static_cast<size_t>(m), BigInt(0));
        for (int64_t j = 0; j < M; ++j) {
            if (counts[j] == 0)
                continue;
            auto [idx, negate] = halve_root(M, j);
            if (negate)
                halved[idx] -= counts[j];
            else
                halved[idx] += counts[j];
        }
        return from_counts(m, halved);
    }
    return CycNumber(M, reduce_poly(M, counts), BigInt(1));
}

CycNumber CycNumber::from_coefficients(int64_t M, const std::vector<Rational>& coeffs)
{
    WEIL_REQUIRE(M % 4 != 2 || M == 2, ContractViolation, "power-basis coefficients need a canonical conductor");
    if (M == 2)
        M = 1;
    const size_t deg = cyclotomic_polynomial(M).size() - 1;
    WEIL_REQUIRE(coeffs.size() <= deg, ContractViolation, "too many power-basis coefficients");
    BigInt den = 1;
    for (const auto& c : coeffs)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<BigInt> num(deg, BigInt(0));
    for (size_t j = 0; j < coeffs.size(); ++j)
        num[j] = coeffs[j].get_num() * (den / coeffs[j].get_den());
    return CycNumber(M, std::move(num), den);
}

CycNumber CycNumber::sqrt_of(int64_t n)
{
    WEIL_REQUIRE(n > 0, ContractViolation, "sqrt_of needs a positive integer");
    auto [s, f] = squarefree_decomposition(n);
    if (s == 1)
        return CycNumber(f);
    // Gauss sum of the Kronecker character of D0 > 0 equals sqrt(D0).
    const int64_t D0 = (mod(s, 4) == 1) ? s : 4 * s;
    std::vector<int64_t> counts(static_cast<size_t>(D0), 0);
    for (int64_t u = 1; u <= D0; ++u)
        counts[static_cast<size_t>(u % D0)] += kronecker(D0, u);
    CycNumber g = from_counts(D0, counts);
    return g * Rational(static_cast<long>(f), D0 == s ? 1L : 2L);
}

std::vector<Rational> CycNumber::coefficients() const
{
    std::vector<Rational> out(num_.size());
    for (size_t j = 0; j < num_.size(); ++j) {
        out[j] = Rational(num_[j], den_);
        out[j].canonicalize();
    }
    return out;
}

CycNumber CycNumber::embed(int64_t target) const
{
    target = canonical_conductor(target);
    WEIL_REQUIRE(target % conductor_ == 0, ContractViolation, "embed target must be a multiple of the conductor");
    if (target == conductor_)
        return *this;
    const int64_t t = target / conductor_;
    std::vector<BigInt> poly(static_cast<size_t>((static_cast<int64_t>(num_.size()) - 1) * t + 1), BigInt(0));
    for (size_t j = 0; j < num_.size(); ++j)
        poly[j * static_cast<size_t>(t)] = num_[j];
    CycNumber out;
    out.conductor_ = target;
    out.num_ = reduce_poly(target, std::move(poly));
    out.den_ = den_;
    out.normalize();
    if (out.conductor_ != target) // collapsed to a rational
        return out;
    return out;
}

bool CycNumber::is_zero() const { return conductor_ == 1 && num_[0] == 0; }

std::optional<Rational> CycNumber::as_rational() const
{
    if (conductor_ != 1)
        return std::nullopt;
    Rational q(num_[0], den_);
    q.canonicalize();
    return q;
}

CycNumber CycNumber::galois(int64_t a) const
{
    WEIL_REQUIRE(std::gcd(a, conductor_) == 1, ContractViolation, "Galois automorphism index must be a unit");
    if (conductor_ == 1)
        return *this;
    const int64_t M = conductor_;
    std::vector<BigInt> poly(static_cast<size_t>(M), BigInt(0));
    for (size_t j = 0; j < num_.size(); ++j)
        poly[static_cast<size_t>(mod(static_cast<int64_t>(j) * a, M))] += num_[j];
    return CycNumber(M, reduce_poly(M, std::move(poly)), den_);
}

CycNumber CycNumber::operator-() const
{
    CycNumber out = *this;
    for (auto& c : out.num_)
        c = -c;
    return out;
}

CycNumber& CycNumber::operator+=(const CycNumber& other)
{
    const int64_t L = std::lcm(conductor_, other.conductor_);
    CycNumber a = embed(L), b = other.embed(L);
    if (a.conductor_ != L) // rational collapsed; re-expand in the power basis
        a.num_.resize(cyclotomic_polynomial(L).size() - 1, BigInt(0)), a.conductor_ = L;
    if (b.conductor_ != L)
        b.num_.resize(cyclotomic_polynomial(L).size() - 1, BigInt(0)), b.conductor_ = L;
    std::vector<BigInt> num(a.num_.size());
    for (size_t j = 0; j < num.size(); ++j)
        num[j] = a.num_[j] * b.den_ + b.num_[j] * a.den_;
    *this = CycNumber(L, std::move(num), a.den_ * b.den_);
    return *this;
}

CycNumber& CycNumber::operator-=(const CycNumber& other) { return *this += -other; }

CycNumber& CycNumber::operator*=(const CycNumber& other)
{
    if (other.conductor_ == 1 || conductor_ == 1) {
        const CycNumber& scalar = (other.conductor_ == 1) ? other : *this;
        CycNumber out = (other.conductor_ == 1) ? *this : other;
        for (auto& c : out.num_)
            c *= scalar.num_[0];
        out.den_ *= scalar.den_;
        out.normalize();
        *this = std::move(out);
        return *this;
    }
    const int64_t L = std::lcm(conductor_, other.conductor_);
    const CycNumber a = embed(L), b = other.embed(L);
    const size_t na = a.num_.size(), nb = b.num_.size();
    std::vector<BigInt> poly(na + nb - 1, BigInt(0));
    for (size_t i = 0; i < na; ++i) {
        if (a.num_[i] == 0)
            continue;
        for (size_t j = 0; j < nb; ++j)
            if (b.num_[j] != 0)
                poly[i + j] += a.num_[i] * b.num_[j];
    }
    *this = CycNumber(L, reduce_poly(L, std::move(poly)), a.den_ * b.den_);
    return *this;
}

CycNumber CycNumber::inverse() const
{
    WEIL_REQUIRE(!is_zero(), std::domain_error, "inverse of zero cyclotomic number");
    if (conductor_ == 1)
    {
        Rational q(den_, num_[0]);
        q.canonicalize();
        return CycNumber(q);
    }
    const int64_t M = conductor_;
    const size_t n = num_.size();
    // Column j holds num * x^j mod Phi_M.
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
    std::vector<BigInt> col = num_;
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < n; ++i)
            A[i][j] = col[i];
        std::vector<BigInt> shifted(n + 1, BigInt(0));
        for (size_t i = 0; i < n; ++i)
            shifted[i + 1] = col[i];
        col = reduce_poly(M, std::move(shifted));
    }
    std::vector<Rational> rhs(n, Rational(0));
    rhs[0] = Rational(den_);
    auto x = solve_rational(std::move(A), std::move(rhs));
    WEIL_REQUIRE(x.has_value(), InvariantViolation, "cyclotomic inverse system inconsistent");
    return from_coefficients(M, *x);
}

std::optional<CycNumber> CycNumber::restrict_to(int64_t d) const
{
    WEIL_REQUIRE(d >= 1, ContractViolation, "subfield conductor must be positive");
    d = canonical_conductor(d);
    if (d % conductor_ == 0)
        return embed(d);
    if (is_zero())
        return CycNumber();
    const int64_t L = std::lcm(conductor_, d);
    const CycNumber x = embed(L);
    const size_t nL = cyclotomic_polynomial(L).size() - 1;
    const size_t nd = cyclotomic_polynomial(d).size() - 1;
    std::vector<std::vector<Rational>> A(nL, std::vector<Rational>(nd));
    for (size_t j = 0; j < nd; ++j) {
        std::vector<BigInt> poly(j * static_cast<size_t>(L / d) + 1, BigInt(0));
        poly.back() = 1;
        auto img = reduce_poly(L, std::move(poly));
        for (size_t i = 0; i < nL; ++i)
            A[i][j] = img[i];
    }
    std::vector<Rational> rhs(nL, Rational(0));
    auto xs = x.coefficients();
    if (x.conductor_ == L)
        for (size_t i = 0; i < nL; ++i)
            rhs[i] = xs[i];
    else
        rhs[0] = xs[0];
    auto y = solve_rational(std::move(A), std::move(rhs));
    if (!y)
        return std::nullopt;
    return from_coefficients(d, *y);
}

CycNumber CycNumber::minimal() const
{
    for (int64_t d : divisors(conductor_)) {
        if (d % 4 == 2)
            continue;
        if (auto r = restrict_to(d))
            return *r;
    }
    return *this;
}

std::complex<long double> CycNumber::to_complex() const
{
    std::complex<long double> out = 0;
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (size_t j = 0; j < num_.size(); ++j) {
        if (num_[j] == 0)
            continue;
        Rational c(num_[j], den_);
        c.canonicalize();
        const long double v = c.get_d();
        const long double angle = two_pi * static_cast<long double>(j) / static_cast<long double>(conductor_);
        out += std::complex<long double>(v * std::cos(angle), v * std::sin(angle));
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const CycNumber& x)
{
    if (x.conductor_ == 1)
        return os << to_string(*x.as_rational());
    os << "(";
    bool first = true;
    for (size_t j = 0; j < x.num_.size(); ++j) {
        if (x.num_[j] == 0)
            continue;
        if (!first)
            os << " + ";
        first = false;
        os << x.num_[j].get_str();
        if (j > 0)
            os << "*z" << x.conductor_ << "^" << j;
    }
    os << ")";
    if (x.den_ != 1)
        os << "/" << x.den_.get_str();
    return os;
}

} // namespace weil
