#pragma once

#include "weil/character.hpp"
#include "weil/lattice.hpp"
#include "weil/numeric.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace weil
{

constexpr int64_t default_budget = 10'000'000;

// literal enumeration over (Z/a)^m
BigInt brute_rep_count(const Lattice& lat, const DualVector& x, const Rational& n, int64_t a,
                       int64_t budget = default_budget);

// G_{gamma,n}(c; beta, chi), summing over nu in (Z/N_beta)^* with the given character.
CycNumber brute_G(const DiscriminantForm& A, const DiscElement& gamma, const Rational& n, int64_t c,
                  const DiscElement& beta, const DirichletCharacter& chi, int64_t budget = default_budget);
NumericValue brute_G_numeric(const DiscriminantForm& A, const DiscElement& gamma, const Rational& n, int64_t c,
                             const DiscElement& beta, const DirichletCharacter& chi, int64_t budget = default_budget);
// Same sum with a fixed lift a_shift * c added to every inverse a; must not change the value.
CycNumber brute_G_with_lift(const DiscriminantForm& A, const DiscElement& gamma, const Rational& n, int64_t c,
                            const DiscElement& beta, const DirichletCharacter& chi, int64_t a_shift);

int64_t ramanujan_sum(int64_t c, int64_t n);
int64_t ramanujan_sum_mobius(int64_t c, int64_t n);

// numeric L(chi, s) for real s > 1, or s = 1 with chi non-principal
NumericValue numeric_l_value(const DirichletCharacter& chi, long double s);
long double hurwitz_zeta(long double s, long double a);
long double digamma(long double x);

// classical 2 (-2k / B_k) sigma_{k-1}(n)
Rational divisor_sum_reference(int k, int64_t n);

// Truncated c-series for one gamma. Weights w[nu] on nu mod N_beta select the combination
// sum_nu w_nu g(nu beta, c); the twisted series uses w_nu = chi(nu) + (-1)^kappa chi(-nu),
// the individual E_{A,beta} uses w_1 = 1, w_{-1} = (-1)^kappa.
class SeriesOracle
{
public:
    SeriesOracle(const DiscriminantForm& A, const DiscElement& beta, const DiscElement& gamma, int64_t c_max,
                 int64_t budget = 4'000'000'000LL);

    NumericValue coefficient(const Rational& n, const Rational& k, int kappa,
                             const std::vector<std::complex<long double>>& weights) const;

    static std::vector<std::complex<long double>> twisted_weights(const DirichletCharacter& chi, int kappa);
    static std::vector<std::complex<long double>> individual_weights(int64_t N_beta, int kappa);

private:
    const DiscriminantForm& A_;
    int64_t N_beta_;
    int64_t c_max_;
    std::vector<int64_t> units_;
    DualVector x_;
    // U[c][nu_index][j] = sum_r e((j Q(nu b + r) - (x, nu b + r)) / c), j a unit mod c
    std::vector<std::vector<std::vector<std::complex<long double>>>> U_;
};

// c(gamma, n) of E_{A,beta,chi} through the c-series
NumericValue series_coefficient_numeric(const DiscriminantForm& A, const DiscElement& beta, const Rational& k,
                                        const DirichletCharacter& chi, const DiscElement& gamma, const Rational& n,
                                        int64_t c_max);

} // namespace weil
