#pragma once

#include "weil/cyclotomic.hpp"
#include "weil/errors.hpp"
#include "weil/lattice.hpp"
#include "weil/numeric.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <vector>

namespace weil
{

struct CoeffKey
{
    size_t gamma; // index into the form's element list
    Rational n;

    friend bool operator<(const CoeffKey& a, const CoeffKey& b)
    {
        if (a.gamma != b.gamma)
            return a.gamma < b.gamma;
        return a.n < b.n;
    }
};

// n in Z - Q(gamma) with 0 <= n <= n_max, ascending
inline std::vector<Rational> exponents_for(const DiscriminantForm& A, const DiscElement& g, const Rational& n_max)
{
    std::vector<Rational> out;
    const Rational q = A.q_value(g); // in [0, 1)
    for (Rational n = (q == 0) ? Rational(0) : Rational(1) - q; n <= n_max; n += 1)
        out.push_back(n);
    return out;
}

inline bool exponent_compatible(const DiscriminantForm& A, const DiscElement& g, const Rational& n)
{
    return is_integer(n + A.q_value(g));
}

// Coefficients c(gamma, n) for all gamma in A and 0 <= n <= n_max; n = 0 holds the constant term.
template <class V>
class FourierTable
{
public:
    FourierTable() = default;
    FourierTable(std::shared_ptr<const DiscriminantForm> A, Rational n_max) : A_(std::move(A)), n_max_(std::move(n_max))
    {
        for (size_t i = 0; i < A_->elements().size(); ++i)
            for (auto& n : exponents_for(*A_, A_->elements()[i], n_max_))
                entries_.emplace(CoeffKey{i, n}, V{});
    }

    const DiscriminantForm& form() const { return *A_; }
    std::shared_ptr<const DiscriminantForm> form_ptr() const { return A_; }
    const Rational& n_max() const { return n_max_; }
    const std::map<CoeffKey, V>& entries() const { return entries_; }
    std::map<CoeffKey, V>& entries() { return entries_; }

    bool contains(const DiscElement& g, const Rational& n) const
    {
        return entries_.count(CoeffKey{A_->index_of(g), n}) > 0;
    }

    V& at(const DiscElement& g, const Rational& n)
    {
        auto it = entries_.find(CoeffKey{A_->index_of(g), n});
        WEIL_REQUIRE(it != entries_.end(), DepthError,
                     "no coefficient at gamma = " + to_string(g) + ", n = " + to_string(n));
        return it->second;
    }
    const V& at(const DiscElement& g, const Rational& n) const { return const_cast<FourierTable*>(this)->at(g, n); }

    // c(g, n) with the convention that incompatible or negative exponents give zero
    V get(const DiscElement& g, const Rational& n) const
    {
        if (n < 0 || !exponent_compatible(*A_, g, n))
            return V{};
        WEIL_REQUIRE(n <= n_max_, DepthError,
                     "table depth " + to_string(n_max_) + " does not reach n = " + to_string(n));
        return at(g, n);
    }

    template <class F>
    auto map(F f) const -> FourierTable<decltype(f(std::declval<const V&>()))>
    {
        FourierTable<decltype(f(std::declval<const V&>()))> out(A_, n_max_);
        for (const auto& [k, v] : entries_)
            out.entries()[k] = f(v);
        return out;
    }

    FourierTable truncated(const Rational& n_max) const
    {
        FourierTable out(A_, std::min(n_max, n_max_));
        for (auto& [k, v] : out.entries_)
            v = entries_.at(k);
        return out;
    }

    FourierTable& operator+=(const FourierTable& o)
    {
        WEIL_REQUIRE(o.entries_.size() == entries_.size(), ContractViolation, "tables have different shapes");
        for (auto& [k, v] : entries_)
            v += o.entries_.at(k);
        return *this;
    }

    FourierTable& operator*=(const V& s)
    {
        for (auto& [k, v] : entries_)
            v *= s;
        return *this;
    }

private:
    std::shared_ptr<const DiscriminantForm> A_;
    Rational n_max_;
    std::map<CoeffKey, V> entries_;
};

using ExactTable = FourierTable<CycNumber>;
using NumericTable = FourierTable<NumericValue>;

inline NumericTable to_numeric(const ExactTable& t)
{
    return t.map([](const CycNumber& c) { return NumericValue(c.to_complex(), 0); });
}

inline bool tables_equal(const ExactTable& a, const ExactTable& b)
{
    if (a.entries().size() != b.entries().size())
        return false;
    for (const auto& [k, v] : a.entries()) {
        auto it = b.entries().find(k);
        if (it == b.entries().end() || it->second != v)
            return false;
    }
    return true;
}

// max over entries of |a - b| / max(1, |b|)
inline long double max_relative_deviation(const NumericTable& a, const NumericTable& b)
{
    long double worst = 0;
    for (const auto& [k, v] : a.entries()) {
        const auto& w = b.entries().at(k);
        const long double scale = std::max<long double>(1, std::abs(w.value));
        worst = std::max(worst, std::abs(v.value - w.value) / scale);
    }
    return worst;
}

// f up arrow: coefficient of e_gamma is f^{gamma + H} on H^perp, zero elsewhere
template <class V>
FourierTable<V> lift_up(const FourierTable<V>& f, const QuotientModule& Q)
{
    FourierTable<V> out(Q.ambient_ptr(), f.n_max());
    const auto& A = Q.ambient();
    for (auto& [k, v] : out.entries()) {
        const DiscElement& g = A.elements()[k.gamma];
        if (Q.in_complement(g))
            v = f.at(Q.project(g), k.n);
    }
    return out;
}

} // namespace weil
