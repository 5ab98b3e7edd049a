#include "weil/hecke.hpp"

#include <algorithm>
#include <numeric>

namespace weil
{

HeckeDescriptor HeckeDescriptor::make(const DiscriminantForm& A, int64_t p, int64_t r)
{
    WEIL_REQUIRE(is_prime(p), ContractViolation, "Hecke operator needs a prime, got " + std::to_string(p));
    const int64_t N = A.level();
    WEIL_REQUIRE(std::gcd(p, N) == 1, ContractViolation,
                 "p = " + std::to_string(p) + " divides the level " + std::to_string(N));
    HeckeDescriptor h;
    h.p = p;
    h.odd_rank = A.lattice().rank() % 2 == 1;
    if (h.odd_rank) {
        h.r = 1;
        return h;
    }
    h.r = mod(r, N);
    WEIL_REQUIRE(mod(h.r * h.r - p, N) == 0, ContractViolation,
                 "r = " + std::to_string(r) + " is not a square root of p = " + std::to_string(p) + " mod " +
                     std::to_string(N));
    return h;
}

std::vector<HeckeDescriptor> admissible_descriptors(const DiscriminantForm& A, int count)
{
    const int64_t N = A.level();
    const bool odd = A.lattice().rank() % 2 == 1;
    std::vector<HeckeDescriptor> out;
    int found = 0;
    for (int64_t p = 3; found < count; p += 2) {
        if (!is_prime(p) || std::gcd(p, N) != 1)
            continue;
        if (odd) {
            out.push_back(HeckeDescriptor::make(A, p));
            ++found;
            continue;
        }
        bool any = false;
        for (int64_t r = 0; r < N; ++r)
            if (mod(r * r - p, N) == 0) {
                out.push_back(HeckeDescriptor::make(A, p, r));
                any = true;
            }
        if (any)
            ++found;
    }
    return out;
}

CycNumber hecke_middle_constant(const DiscriminantForm& A, int64_t p)
{
    const int64_t size = A.size();
    const int sig = A.lattice().b_plus() - A.lattice().b_minus();
    const int e = kronecker(-1, size) - sig;
    CycNumber out = (mod(p, 4) == 1) ? CycNumber(1) : CycNumber::root_of_unity(4, mod(e, 4));
    int sign = kronecker(p, size);
    if (mod(sig, 2) == 1)
        sign *= kronecker(p, 2);
    return out * CycNumber(sign);
}

int kronecker_minus_n(const Rational& n, int64_t p)
{
    WEIL_REQUIRE(n.get_den() % p != 0, ContractViolation, "denominator of n must be prime to p");
    // (-num/den / p) = (-num den / p)
    const BigInt v = -n.get_num() * n.get_den();
    BigInt r = v % p;
    if (r < 0)
        r += p;
    return kronecker(to_int64(r), p);
}

CycNumber eigenvalue(const DirichletCharacter& chi, const HeckeDescriptor& h, const Rational& k)
{
    const int64_t q = chi.modulus();
    if (h.odd_rank) {
        const int e = static_cast<int>(to_int64(Rational(2 * k - 2).get_num()));
        WEIL_REQUIRE(is_integer(2 * k - 2), ContractViolation, "2k - 2 must be an integer");
        return chi(mod(h.p, q)) + CycNumber(rational_pow(Rational(static_cast<long>(h.p)), e)) * chi.conj_value(mod(h.p, q));
    }
    WEIL_REQUIRE(is_integer(k), ContractViolation, "even rank needs integral weight");
    const int e = static_cast<int>(to_int64(k.get_num())) - 1;
    return chi(mod(h.r, q)) + CycNumber(rational_pow(Rational(static_cast<long>(h.p)), e)) * chi.conj_value(mod(h.r, q));
}

EigenCheck verify_eigenform(const FourierTable<CycNumber>& f, const HeckeDescriptor& h, const Rational& k,
                            const CycNumber& lambda, const Rational& n_max)
{
    const auto image = hecke_act(f, h, k, n_max);
    EigenCheck out;
    out.ok = true;
    for (const auto& [key, v] : image.entries()) {
        const CycNumber diff = v - lambda * f.entries().at(key);
        if (!diff.is_zero()) {
            out.ok = false;
            out.deviation = std::max(out.deviation, std::abs(diff.to_complex()));
        }
    }
    return out;
}

EigenCheck verify_eigenform(const FourierTable<NumericValue>& f, const HeckeDescriptor& h, const Rational& k,
                            const CycNumber& lambda, const Rational& n_max)
{
    const auto image = hecke_act(f, h, k, n_max);
    const NumericValue l(lambda.to_complex());
    EigenCheck out;
    out.ok = true;
    for (const auto& [key, v] : image.entries()) {
        const NumericValue diff = v - l * f.entries().at(key);
        out.deviation = std::max(out.deviation, std::abs(diff.value));
        if (!diff.is_zero())
            out.ok = false;
    }
    return out;
}

} // namespace weil
