#pragma once

#include "weil/rational.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace weil
{

using IntMatrix = std::vector<std::vector<int64_t>>;
using IntVector = std::vector<int64_t>;

// Vector num / den in the coordinates of the lattice basis (so num = den * x).
struct DualVector
{
    IntVector num;
    int64_t den = 1;

    void reduce();
};

class Lattice
{
public:
    Lattice() = default; // rank 0
    explicit Lattice(IntMatrix gram);

    const IntMatrix& gram() const { return gram_; }
    int rank() const { return static_cast<int>(gram_.size()); }
    int b_plus() const { return b_plus_; }
    int b_minus() const { return b_minus_; }
    int64_t det() const { return det_; }
    int64_t level() const { return level_; }
    // Gram inverse entries as rationals
    const std::vector<std::vector<Rational>>& gram_inverse() const { return inverse_; }

    Rational q(const DualVector& x) const;
    Rational pairing(const DualVector& x, const DualVector& y) const;
    IntVector apply(const IntVector& v) const; // gram * v
    std::string describe() const;

private:
    IntMatrix gram_;
    int b_plus_ = 0, b_minus_ = 0;
    int64_t det_ = 1, level_ = 1;
    std::vector<std::vector<Rational>> inverse_;
};

struct DiscElement
{
    IntVector coords;

    friend bool operator==(const DiscElement& a, const DiscElement& b) { return a.coords == b.coords; }
    friend bool operator!=(const DiscElement& a, const DiscElement& b) { return !(a == b); }
    friend bool operator<(const DiscElement& a, const DiscElement& b) { return a.coords < b.coords; }
};

std::string to_string(const DiscElement& g);

// A = L'/L in Smith-normal-form coordinates: Z/d_1 x ... x Z/d_s with d_i | d_{i+1}.
class DiscriminantForm
{
public:
    explicit DiscriminantForm(Lattice lat);

    const Lattice& lattice() const { return lat_; }
    const IntVector& divisors() const { return divisors_; }
    int64_t size() const { return size_; }
    int64_t level() const { return lat_.level(); }
    int64_t exponent() const { return divisors_.empty() ? 1 : divisors_.back(); }
    int sig_mod8() const;

    const std::vector<DiscElement>& elements() const { return elements_; }
    size_t index_of(const DiscElement& g) const;
    DiscElement zero() const;
    DiscElement make(const IntVector& coords) const; // reduces mod d_i

    DiscElement add(const DiscElement& a, const DiscElement& b) const;
    DiscElement neg(const DiscElement& a) const;
    DiscElement scale(int64_t k, const DiscElement& a) const;
    DiscElement sub(const DiscElement& a, const DiscElement& b) const { return add(a, neg(b)); }

    // N*Q(g) mod N and N*(g,h) mod N, with N the level
    int64_t q_num(const DiscElement& g) const;
    int64_t pairing_num(const DiscElement& g, const DiscElement& h) const;
    Rational q_value(const DiscElement& g) const { return make_rational(q_num(g), level()); }
    Rational pairing(const DiscElement& g, const DiscElement& h) const { return make_rational(pairing_num(g, h), level()); }
    int64_t order_of(const DiscElement& g) const;
    bool is_isotropic(const DiscElement& g) const { return q_num(g) == 0; }

    // canonical dual-lattice representative and its inverse
    DualVector lift(const DiscElement& g) const;
    DiscElement project(const DualVector& x) const;

    std::vector<DiscElement> isotropic_elements() const;
    std::vector<DiscElement> subgroup(const std::vector<DiscElement>& gens) const;
    std::vector<DiscElement> orthogonal_complement(const std::vector<DiscElement>& gens) const;

private:
    Lattice lat_;
    IntVector divisors_;
    int64_t size_ = 1;
    IntMatrix U_;                 // rows with d_i > 1 only
    std::vector<DualVector> gen_; // generator lifts V e_i / d_i
    IntVector gen_q_;             // N*Q(g_i) mod N
    IntMatrix gen_b_;             // N*(g_i,g_j) mod N
    std::vector<DiscElement> elements_;
};

struct IsotropicSubgroup
{
    std::vector<DiscElement> generators;
    std::vector<DiscElement> elements;
};

IsotropicSubgroup make_isotropic_subgroup(const DiscriminantForm& A, const std::vector<DiscElement>& gens);

// B = H^perp / H, realized as the discriminant form of the overlattice L + H.
class QuotientModule
{
public:
    QuotientModule(std::shared_ptr<const DiscriminantForm> A, IsotropicSubgroup H);

    const DiscriminantForm& ambient() const { return *A_; }
    std::shared_ptr<const DiscriminantForm> ambient_ptr() const { return A_; }
    const DiscriminantForm& quotient() const { return *B_; }
    std::shared_ptr<const DiscriminantForm> quotient_ptr() const { return B_; }
    const IsotropicSubgroup& subgroup() const { return H_; }
    const std::vector<DiscElement>& complement() const { return perp_; }

    bool in_complement(const DiscElement& g) const;
    DiscElement project(const DiscElement& g) const; // H^perp -> B
    DiscElement section(const DiscElement& b) const; // B -> H^perp

private:
    std::shared_ptr<const DiscriminantForm> A_;
    std::shared_ptr<const DiscriminantForm> B_;
    IsotropicSubgroup H_;
    std::vector<DiscElement> perp_;
    IntMatrix basis_; // overlattice basis columns, scaled by den_
    int64_t den_ = 1;
    std::vector<std::vector<Rational>> basis_inv_;
    std::vector<int64_t> proj_; // per ambient index, quotient index or -1
};

} // namespace weil
