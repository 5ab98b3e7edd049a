#pragma once

#include "weil/cyclotomic.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace weil
{

// Dirichlet character mod q, labelled by exponents on fixed generators of (Z/q)^*.
// Generators: smallest primitive root mod p^e (odd p), -1 mod 4, {-1, 5} mod 2^e (e >= 3).
class DirichletCharacter
{
public:
    DirichletCharacter(); // trivial mod 1
    DirichletCharacter(int64_t modulus, std::vector<int64_t> exponents);

    static DirichletCharacter trivial(int64_t modulus);
    static std::vector<DirichletCharacter> all(int64_t modulus);
    // Character determined by chi(n) = e(angle(n)) on units; angle returns a value in Q/Z.
    static DirichletCharacter from_angles(int64_t modulus, const std::function<Rational(int64_t)>& angle);
    // Kronecker symbol (D0 / .) as a character mod |D0|.
    static DirichletCharacter kronecker(int64_t D0);
    static DirichletCharacter parse(const std::string& label);

    int64_t modulus() const { return modulus_; }
    const std::vector<int64_t>& exponents() const { return exponents_; }
    int64_t order() const { return order_; }
    std::string label() const;

    // chi(n) = zeta_order^index; nullopt when gcd(n, q) > 1.
    std::optional<int64_t> index(int64_t n) const;
    std::optional<Rational> angle(int64_t n) const;
    CycNumber operator()(int64_t n) const;
    CycNumber conj_value(int64_t n) const;

    bool is_trivial() const { return order_ == 1; }
    bool is_even() const;
    int parity() const { return is_even() ? 0 : 1; }
    int64_t conductor() const;
    bool is_primitive() const { return conductor() == modulus_; }
    DirichletCharacter primitive_part() const;
    DirichletCharacter induce(int64_t modulus) const;
    std::pair<DirichletCharacter, DirichletCharacter> factor(int64_t q1, int64_t q2) const;

    DirichletCharacter conj() const { return pow(-1); }
    DirichletCharacter pow(int64_t a) const;
    // sigma_a o chi for the automorphism zeta -> zeta^a of Q(zeta_order).
    DirichletCharacter galois(int64_t a) const { return pow(a); }

    friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b);
    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b)
    {
        return a.modulus_ == b.modulus_ && a.exponents_ == b.exponents_;
    }
    friend bool operator!=(const DirichletCharacter& a, const DirichletCharacter& b) { return !(a == b); }

private:
    struct Generator
    {
        int64_t value; // CRT lift mod q
        int64_t order;
    };
    static std::vector<Generator> generators(int64_t modulus);
    void build();

    int64_t modulus_ = 1;
    std::vector<int64_t> exponents_;
    std::vector<Generator> gens_;
    int64_t order_ = 1;
    std::vector<int64_t> table_; // index per residue, -1 off the units
};

// sum_{u mod q} chi(u) e(u/q)
CycNumber gauss_sum(const DirichletCharacter& chi);
// sum_{a mod q} chi1(a) chi2(1 - a), same modulus
CycNumber jacobi_sum(const DirichletCharacter& chi1, const DirichletCharacter& chi2);

} // namespace weil
