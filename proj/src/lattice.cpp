#include "weil/lattice.hpp"

#include "weil/arith.hpp"
#include "weil/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace weil
{

void DualVector::reduce()
{
    WEIL_REQUIRE(den > 0, InvariantViolation, "dual vector denominator must be positive");
    int64_t g = den;
    for (int64_t v : num)
        g = std::gcd(g, v);
    if (g > 1) {
        den /= g;
        for (auto& v : num)
            v /= g;
    }
}

namespace
{

using RatMatrix = std::vector<std::vector<Rational>>;

BigInt bareiss_det(const IntMatrix& m)
{
    const size_t n = m.size();
    if (n == 0)
        return 1;
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            a[i][j] = static_cast<long>(m[i][j]);
    BigInt prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t r = k + 1;
            while (r < n && a[r][k] == 0)
                ++r;
            if (r == n)
                return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

RatMatrix rational_inverse(const IntMatrix& m)
{
    const size_t n = m.size();
    RatMatrix a(n, std::vector<Rational>(2 * n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j)
            a[i][j] = static_cast<long>(m[i][j]);
        a[i][n + i] = 1;
    }
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a[piv][c] == 0)
            ++piv;
        WEIL_REQUIRE(piv < n, InvalidLattice, "Gram matrix is singular");
        std::swap(a[piv], a[c]);
        const Rational inv = 1 / a[c][c];
        for (auto& v : a[c])
            v *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0)
                continue;
            const Rational f = a[i][c];
            for (size_t j = 0; j < 2 * n; ++j)
                a[i][j] -= f * a[c][j];
        }
    }
    RatMatrix out(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            out[i][j] = a[i][n + j];
    return out;
}

// Faddeev-LeVerrier; coefficients c_0..c_n with c_n = 1.
std::vector<Rational> characteristic_polynomial(const IntMatrix& m)
{
    const size_t n = m.size();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    RatMatrix M(n, std::vector<Rational>(n, Rational(0)));
    for (size_t k = 1; k <= n; ++k) {
        RatMatrix next(n, std::vector<Rational>(n, Rational(0)));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j)
                for (size_t l = 0; l < n; ++l)
                    next[i][j] += Rational(static_cast<long>(m[i][l])) * M[l][j];
            next[i][i] += c[n - k + 1];
        }
        M = std::move(next);
        Rational tr = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t l = 0; l < n; ++l)
                tr += Rational(static_cast<long>(m[i][l])) * M[l][i];
        c[n - k] = -tr / static_cast<long>(k);
    }
    return c;
}

int sign_changes(const std::vector<Rational>& c)
{
    int changes = 0, last = 0;
    for (const auto& v : c) {
        const int s = sgn(v);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

} // namespace

Lattice::Lattice(IntMatrix gram) : gram_(std::move(gram))
{
    const size_t n = gram_.size();
    for (size_t i = 0; i < n; ++i) {
        WEIL_REQUIRE(gram_[i].size() == n, InvalidLattice, "Gram matrix is not square");
        WEIL_REQUIRE(gram_[i][i] % 2 == 0, InvalidLattice, "Gram matrix has an odd diagonal entry");
        for (size_t j = 0; j < i; ++j)
            WEIL_REQUIRE(gram_[i][j] == gram_[j][i], InvalidLattice, "Gram matrix is not symmetric");
    }
    BigInt d = bareiss_det(gram_);
    WEIL_REQUIRE(d != 0, InvalidLattice, "Gram matrix is singular");
    det_ = to_int64(d);
    inverse_ = rational_inverse(gram_);
    level_ = 1;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Rational v = (i == j) ? inverse_[i][i] / 2 : inverse_[i][j];
            level_ = std::lcm(level_, to_int64(v.get_den()));
        }
    auto c = characteristic_polynomial(gram_);
    b_plus_ = sign_changes(c);
    for (size_t i = 1; i < c.size(); i += 2)
        c[i] = -c[i];
    b_minus_ = sign_changes(c);
    WEIL_REQUIRE(b_plus_ + b_minus_ == static_cast<int>(n), InvariantViolation, "inertia does not add up to the rank");
}

IntVector Lattice::apply(const IntVector& v) const
{
    IntVector out(gram_.size(), 0);
    for (size_t i = 0; i < gram_.size(); ++i)
        for (size_t j = 0; j < gram_.size(); ++j)
            out[i] = checked_add(out[i], checked_mul(gram_[i][j], v[j]));
    return out;
}

Rational Lattice::pairing(const DualVector& x, const DualVector& y) const
{
    const IntVector gy = apply(y.num);
    BigInt acc = 0;
    for (size_t i = 0; i < gy.size(); ++i)
        acc += BigInt(static_cast<long>(x.num[i])) * static_cast<long>(gy[i]);
    Rational out(acc, BigInt(static_cast<long>(x.den)) * static_cast<long>(y.den));
    out.canonicalize();
    return out;
}

Rational Lattice::q(const DualVector& x) const { return pairing(x, x) / 2; }

std::string Lattice::describe() const
{
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < gram_.size(); ++i) {
        os << (i ? "," : "") << "[";
        for (size_t j = 0; j < gram_.size(); ++j)
            os << (j ? "," : "") << gram_[i][j];
        os << "]";
    }
    os << "]";
    return os.str();
}

std::string to_string(const DiscElement& g)
{
    std::string out = "(";
    for (size_t i = 0; i < g.coords.size(); ++i)
        out += (i ? "," : "") + std::to_string(g.coords[i]);
    return out + ")";
}

DiscriminantForm::DiscriminantForm(Lattice lat) : lat_(std::move(lat))
{
    const size_t n = static_cast<size_t>(lat_.rank());
    IntMatrix a = lat_.gram();
    IntMatrix U(n, IntVector(n, 0)), V(n, IntVector(n, 0));
    for (size_t i = 0; i < n; ++i)
        U[i][i] = V[i][i] = 1;
    auto row_op = [&](size_t dst, size_t src, int64_t f) { // row_dst -= f row_src
        for (size_t j = 0; j < n; ++j) {
            a[dst][j] = checked_add(a[dst][j], -checked_mul(f, a[src][j]));
            U[dst][j] = checked_add(U[dst][j], -checked_mul(f, U[src][j]));
        }
    };
    auto col_op = [&](size_t dst, size_t src, int64_t f) { // col_dst -= f col_src
        for (size_t i = 0; i < n; ++i) {
            a[i][dst] = checked_add(a[i][dst], -checked_mul(f, a[i][src]));
            V[i][dst] = checked_add(V[i][dst], -checked_mul(f, V[i][src]));
        }
    };
    auto swap_rows = [&](size_t r, size_t s) { std::swap(a[r], a[s]); std::swap(U[r], U[s]); };
    auto swap_cols = [&](size_t c, size_t d) {
        for (size_t i = 0; i < n; ++i) {
            std::swap(a[i][c], a[i][d]);
            std::swap(V[i][c], V[i][d]);
        }
    };
    for (size_t t = 0; t < n; ++t) {
        while (true) {
            size_t pi = n, pj = n;
            for (size_t i = t; i < n; ++i)
                for (size_t j = t; j < n; ++j)
                    if (a[i][j] != 0 && (pi == n || std::llabs(a[i][j]) < std::llabs(a[pi][pj])))
                        pi = i, pj = j;
            WEIL_REQUIRE(pi != n, InvalidLattice, "Gram matrix is singular");
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool clean = true;
            for (size_t i = t + 1; i < n; ++i) {
                row_op(i, t, a[i][t] / a[t][t]);
                clean = clean && a[i][t] == 0;
            }
            for (size_t j = t + 1; j < n; ++j) {
                col_op(j, t, a[t][j] / a[t][t]);
                clean = clean && a[t][j] == 0;
            }
            if (!clean)
                continue;
            size_t bad = n;
            for (size_t i = t + 1; i < n && bad == n; ++i)
                for (size_t j = t + 1; j < n; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == n)
                break;
            row_op(t, bad, -1);
        }
        if (a[t][t] < 0) {
            for (size_t j = 0; j < n; ++j) {
                a[t][j] = -a[t][j];
                U[t][j] = -U[t][j];
            }
        }
    }
    for (size_t i = 0; i < n; ++i) {
        if (a[i][i] == 1)
            continue;
        divisors_.push_back(a[i][i]);
        U_.push_back(U[i]);
        DualVector g;
        g.den = a[i][i];
        for (size_t r = 0; r < n; ++r)
            g.num.push_back(V[r][i]);
        g.reduce();
        gen_.push_back(g);
        size_ = checked_mul(size_, a[i][i]);
    }
    WEIL_REQUIRE(size_ == std::llabs(lat_.det()), InvariantViolation, "|A| differs from |det|");

    const int64_t N = level();
    const size_t s = divisors_.size();
    gen_q_.resize(s);
    gen_b_.assign(s, IntVector(s, 0));
    for (size_t i = 0; i < s; ++i) {
        Rational qi = lat_.q(gen_[i]) * static_cast<long>(N);
        WEIL_REQUIRE(is_integer(qi), InvariantViolation, "level does not clear Q on the dual lattice");
        gen_q_[i] = mod(to_int64(qi.get_num() % static_cast<long>(N)), N);
        for (size_t j = 0; j < s; ++j) {
            Rational bij = lat_.pairing(gen_[i], gen_[j]) * static_cast<long>(N);
            gen_b_[i][j] = mod(to_int64(bij.get_num() % static_cast<long>(N)), N);
        }
    }

    for (int64_t idx = 0; idx < size_; ++idx) {
        IntVector c(s, 0);
        int64_t rest = idx;
        for (size_t i = s; i-- > 0;) {
            c[i] = rest % divisors_[i];
            rest /= divisors_[i];
        }
        elements_.push_back(DiscElement{c});
    }
}

int DiscriminantForm::sig_mod8() const { return static_cast<int>(mod(lat_.b_plus() - lat_.b_minus(), 8)); }

size_t DiscriminantForm::index_of(const DiscElement& g) const
{
    size_t idx = 0;
    for (size_t i = 0; i < divisors_.size(); ++i)
        idx = idx * static_cast<size_t>(divisors_[i]) + static_cast<size_t>(g.coords[i]);
    return idx;
}

DiscElement DiscriminantForm::zero() const { return DiscElement{IntVector(divisors_.size(), 0)}; }

DiscElement DiscriminantForm::make(const IntVector& coords) const
{
    WEIL_REQUIRE(coords.size() == divisors_.size(), ContractViolation,
                 "element needs " + std::to_string(divisors_.size()) + " coordinates");
    DiscElement out{coords};
    for (size_t i = 0; i < coords.size(); ++i)
        out.coords[i] = mod(coords[i], divisors_[i]);
    return out;
}

DiscElement DiscriminantForm::add(const DiscElement& a, const DiscElement& b) const
{
    DiscElement out = a;
    for (size_t i = 0; i < divisors_.size(); ++i)
        out.coords[i] = mod(a.coords[i] + b.coords[i], divisors_[i]);
    return out;
}

DiscElement DiscriminantForm::neg(const DiscElement& a) const { return scale(-1, a); }

DiscElement DiscriminantForm::scale(int64_t k, const DiscElement& a) const
{
    DiscElement out = a;
    for (size_t i = 0; i < divisors_.size(); ++i)
        out.coords[i] = mod(static_cast<int64_t>(static_cast<__int128>(mod(k, divisors_[i])) * a.coords[i] % divisors_[i]),
                            divisors_[i]);
    return out;
}

int64_t DiscriminantForm::q_num(const DiscElement& g) const
{
    const int64_t N = level();
    __int128 acc = 0;
    for (size_t i = 0; i < divisors_.size(); ++i) {
        const __int128 ci = g.coords[i];
        acc += ci * ci % N * gen_q_[i];
        for (size_t j = i + 1; j < divisors_.size(); ++j)
            acc += ci * g.coords[j] % N * gen_b_[i][j];
        acc %= N;
    }
    return mod(static_cast<int64_t>(acc), N);
}

int64_t DiscriminantForm::pairing_num(const DiscElement& g, const DiscElement& h) const
{
    const int64_t N = level();
    __int128 acc = 0;
    for (size_t i = 0; i < divisors_.size(); ++i)
        for (size_t j = 0; j < divisors_.size(); ++j)
            acc = (acc + static_cast<__int128>(g.coords[i]) * h.coords[j] % N * gen_b_[i][j]) % N;
    return mod(static_cast<int64_t>(acc), N);
}

int64_t DiscriminantForm::order_of(const DiscElement& g) const
{
    int64_t out = 1;
    for (size_t i = 0; i < divisors_.size(); ++i)
        out = std::lcm(out, divisors_[i] / std::gcd(g.coords[i], divisors_[i]));
    return out;
}

DualVector DiscriminantForm::lift(const DiscElement& g) const
{
    const size_t n = static_cast<size_t>(lat_.rank());
    const int64_t D = exponent();
    DualVector out;
    out.num.assign(n, 0);
    out.den = D;
    for (size_t i = 0; i < divisors_.size(); ++i) {
        const int64_t f = checked_mul(g.coords[i], D / gen_[i].den);
        for (size_t r = 0; r < n; ++r)
            out.num[r] = checked_add(out.num[r], checked_mul(f, gen_[i].num[r]));
    }
    out.reduce();
    return out;
}

DiscElement DiscriminantForm::project(const DualVector& x) const
{
    const IntVector gx = lat_.apply(x.num);
    IntVector y(gx.size());
    for (size_t i = 0; i < gx.size(); ++i) {
        WEIL_REQUIRE(gx[i] % x.den == 0, ContractViolation, "vector is not in the dual lattice");
        y[i] = gx[i] / x.den;
    }
    DiscElement out;
    for (size_t i = 0; i < divisors_.size(); ++i) {
        int64_t acc = 0;
        for (size_t j = 0; j < y.size(); ++j)
            acc = mod(acc + static_cast<int64_t>(static_cast<__int128>(mod(U_[i][j], divisors_[i])) * mod(y[j], divisors_[i]) % divisors_[i]),
                      divisors_[i]);
        out.coords.push_back(acc);
    }
    return out;
}

std::vector<DiscElement> DiscriminantForm::isotropic_elements() const
{
    std::vector<DiscElement> out;
    for (const auto& g : elements_)
        if (is_isotropic(g))
            out.push_back(g);
    return out;
}

std::vector<DiscElement> DiscriminantForm::subgroup(const std::vector<DiscElement>& gens) const
{
    std::set<DiscElement> seen{zero()};
    std::vector<DiscElement> frontier{zero()};
    while (!frontier.empty()) {
        std::vector<DiscElement> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                auto y = add(x, g);
                if (seen.insert(y).second)
                    next.push_back(y);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

std::vector<DiscElement> DiscriminantForm::orthogonal_complement(const std::vector<DiscElement>& gens) const
{
    std::vector<DiscElement> out;
    for (const auto& x : elements_) {
        bool ok = true;
        for (const auto& g : gens)
            if (pairing_num(x, g) != 0) {
                ok = false;
                break;
            }
        if (ok)
            out.push_back(x);
    }
    return out;
}

IsotropicSubgroup make_isotropic_subgroup(const DiscriminantForm& A, const std::vector<DiscElement>& gens)
{
    IsotropicSubgroup H{gens, A.subgroup(gens)};
    for (const auto& h : H.elements)
        WEIL_REQUIRE(A.is_isotropic(h), ContractViolation, "subgroup is not isotropic: Q" + to_string(h) + " != 0");
    return H;
}

QuotientModule::QuotientModule(std::shared_ptr<const DiscriminantForm> A, IsotropicSubgroup H)
    : A_(std::move(A)), H_(std::move(H))
{
    const auto& lat = A_->lattice();
    const size_t n = static_cast<size_t>(lat.rank());
    for (const auto& h : H_.elements)
        WEIL_REQUIRE(A_->is_isotropic(h), ContractViolation, "subgroup is not isotropic");
    perp_ = A_->orthogonal_complement(H_.elements);

    std::vector<DualVector> lifts;
    den_ = 1;
    for (const auto& g : H_.generators) {
        lifts.push_back(A_->lift(g));
        den_ = std::lcm(den_, lifts.back().den);
    }
    // columns: den * e_j, then the scaled lifts; column-HNF to a basis
    IntMatrix cols;
    for (size_t j = 0; j < n; ++j) {
        IntVector c(n, 0);
        c[j] = den_;
        cols.push_back(c);
    }
    for (const auto& x : lifts) {
        IntVector c(n);
        for (size_t r = 0; r < n; ++r)
            c[r] = checked_mul(x.num[r], den_ / x.den);
        cols.push_back(c);
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < cols.size(); ++j) {
            while (cols[j][i] != 0) {
                const int64_t q = cols[i][i] / cols[j][i];
                for (size_t r = 0; r < n; ++r)
                    cols[i][r] = checked_add(cols[i][r], -checked_mul(q, cols[j][r]));
                std::swap(cols[i], cols[j]);
            }
        }
        WEIL_REQUIRE(cols[i][i] != 0, InvariantViolation, "overlattice generators are not of full rank");
        if (cols[i][i] < 0)
            for (auto& v : cols[i])
                v = -v;
    }
    basis_.assign(n, IntVector(n, 0)); // basis_[r][c]
    for (size_t c = 0; c < n; ++c)
        for (size_t r = 0; r < n; ++r)
            basis_[r][c] = cols[c][r];

    IntMatrix gram(n, IntVector(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            BigInt acc = 0;
            for (size_t a = 0; a < n; ++a)
                for (size_t b = 0; b < n; ++b)
                    acc += BigInt(static_cast<long>(basis_[a][i])) * static_cast<long>(lat.gram()[a][b]) *
                           static_cast<long>(basis_[b][j]);
            BigInt d2 = BigInt(static_cast<long>(den_)) * static_cast<long>(den_);
            WEIL_REQUIRE(mpz_divisible_p(acc.get_mpz_t(), d2.get_mpz_t()), InvariantViolation,
                         "overlattice Gram matrix is not integral");
            gram[i][j] = to_int64(acc / d2);
        }
    B_ = std::make_shared<DiscriminantForm>(Lattice(gram));
    WEIL_REQUIRE(B_->size() * static_cast<int64_t>(H_.elements.size()) * static_cast<int64_t>(H_.elements.size()) ==
                     A_->size(),
                 InvariantViolation, "|A| != |H|^2 |B|");

    basis_inv_ = std::vector<std::vector<Rational>>(n, std::vector<Rational>(n));
    {
        // invert basis_ over Q
        std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j)
                a[i][j] = static_cast<long>(basis_[i][j]);
            a[i][n + i] = 1;
        }
        for (size_t c = 0; c < n; ++c) {
            size_t piv = c;
            while (a[piv][c] == 0)
                ++piv;
            std::swap(a[piv], a[c]);
            const Rational inv = 1 / a[c][c];
            for (auto& v : a[c])
                v *= inv;
            for (size_t i = 0; i < n; ++i) {
                if (i == c || a[i][c] == 0)
                    continue;
                const Rational f = a[i][c];
                for (size_t j = 0; j < 2 * n; ++j)
                    a[i][j] -= f * a[c][j];
            }
        }
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                basis_inv_[i][j] = a[i][n + j];
    }

    proj_.assign(A_->elements().size(), -1);
    for (const auto& g : perp_) {
        const DualVector x = A_->lift(g);
        // z = den * basis^{-1} x
        std::vector<Rational> z(n, Rational(0));
        BigInt common = 1;
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j)
                z[i] += basis_inv_[i][j] * static_cast<long>(x.num[j]);
            z[i] *= make_rational(den_, x.den);
            z[i].canonicalize();
            mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), z[i].get_den_mpz_t());
        }
        DualVector y;
        y.den = to_int64(common);
        for (size_t i = 0; i < n; ++i)
            y.num.push_back(to_int64(z[i].get_num() * (common / z[i].get_den())));
        proj_[A_->index_of(g)] = static_cast<int64_t>(B_->index_of(B_->project(y)));
    }
}

bool QuotientModule::in_complement(const DiscElement& g) const { return proj_[A_->index_of(g)] >= 0; }

DiscElement QuotientModule::project(const DiscElement& g) const
{
    const int64_t idx = proj_[A_->index_of(g)];
    WEIL_REQUIRE(idx >= 0, ContractViolation, "element " + to_string(g) + " is not in the orthogonal complement");
    return B_->elements()[static_cast<size_t>(idx)];
}

DiscElement QuotientModule::section(const DiscElement& b) const
{
    const size_t n = static_cast<size_t>(A_->lattice().rank());
    const DualVector z = B_->lift(b);
    DualVector x;
    x.num.assign(n, 0);
    x.den = checked_mul(z.den, den_);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c)
            x.num[r] = checked_add(x.num[r], checked_mul(basis_[r][c], z.num[c]));
    x.reduce();
    return A_->project(x);
}

} // namespace weil
