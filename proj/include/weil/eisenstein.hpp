#pragma once

#include "weil/character.hpp"
#include "weil/lattice.hpp"
#include "weil/lvalues.hpp"
#include "weil/numeric.hpp"
#include "weil/repnums.hpp"
#include "weil/table.hpp"

#include <memory>
#include <string>
#include <vector>

namespace weil
{

enum class Mode
{
    exact,
    numeric,
    automatic
};

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

// kappa = k + (b+ - b-)/2; throws ParityError when not integral
int kappa_for(const Lattice& lat, const Rational& k);

struct EisensteinSpec
{
    std::shared_ptr<const DiscriminantForm> A;
    DiscElement beta;
    int64_t N_beta = 1;
    Rational k;
    int kappa = 0;
    DirichletCharacter chi;

    static EisensteinSpec make(std::shared_ptr<const DiscriminantForm> A, const DiscElement& beta, const Rational& k,
                               const DirichletCharacter& chi);

    const Lattice& lattice() const { return A->lattice(); }
    int rank() const { return lattice().rank(); }
    // chi(-1) != (-1)^kappa
    bool vanishes() const;
};

struct DiscriminantData
{
    int64_t D = 1;
    int64_t D0 = 1;
    DirichletCharacter chi_D0;
};

DiscriminantData discriminant_data(const Lattice& lat, int64_t N_gamma, const Rational& n, const Rational& k,
                                   int kappa);

struct PrimeSplit
{
    int64_t p = 2;
    int e = 0; // nu_p(N_beta)
    DirichletCharacter chi_p;
    DirichletCharacter chi_p_prime;
};

struct SplitData
{
    int64_t g = 1;
    int64_t N_g = 1;
    int64_t N_g_prime = 1;
    int64_t pairing = 0; // N_beta (gamma, beta) mod N_beta
    DirichletCharacter chi_Ng;
    DirichletCharacter chi_Ng_prime;
    std::vector<PrimeSplit> primes;
};

SplitData split_data(const DiscriminantForm& A, const DiscElement& beta, const DiscElement& gamma,
                     const DirichletCharacter& chi);

CycNumber epsilon_factor(const SplitData& split, const DirichletCharacter& chi);
CycNumber finite_part(const EisensteinSpec& spec, const RepCounter& counter, const DiscElement& gamma,
                      const Rational& n, const SplitData& split);
Ledger main_part(const EisensteinSpec& spec, const RepCounter& counter, const DiscElement& gamma, const Rational& n,
                 const DiscriminantData& dd);
NumericValue main_part_numeric(const EisensteinSpec& spec, const RepCounter& counter, const DiscElement& gamma,
                               const Rational& n, const DiscriminantData& dd);
// 2^{k+1} pi^k n^{k-1} i^kappa / (sqrt|A| Gamma(k))
Ledger prefactor(const EisensteinSpec& spec, const Rational& n);
NumericValue prefactor_numeric(const EisensteinSpec& spec, const Rational& n);

// Closed forms for G_{gamma,n}(c; beta, chi), chi primitive mod N_beta.
// (c, g) = 1:
CycNumber g_closed_coprime(const DiscriminantForm& A, const RepCounter& counter, const DiscElement& gamma,
                           const Rational& n, int64_t c, const DiscElement& beta, const DirichletCharacter& chi);
// c = p^alpha with p | g and N_beta a power of p:
CycNumber g_closed_prime_power(const DiscriminantForm& A, const RepCounter& counter, const DiscElement& gamma,
                               const Rational& n, int64_t p, int alpha, const DiscElement& beta,
                               const DirichletCharacter& chi);

// Coefficients of E_{A,beta,chi} for primitive chi.
class EisensteinEngine
{
public:
    explicit EisensteinEngine(EisensteinSpec spec, int threads = 0);

    const EisensteinSpec& spec() const { return spec_; }
    const RepCounter& counter() const { return counter_; }

    CycNumber coefficient_exact(const DiscElement& gamma, const Rational& n) const;
    NumericValue coefficient_numeric(const DiscElement& gamma, const Rational& n) const;

    ExactTable table_exact(const Rational& n_max) const;
    NumericTable table_numeric(const Rational& n_max) const;

private:
    void add_constant_term(ExactTable& t) const;
    void add_constant_term(NumericTable& t) const;

    EisensteinSpec spec_;
    RepCounter counter_;
    int threads_;
};

struct OldformTerm
{
    CycNumber sign; // mu(d) psi(N0')
    int64_t d = 1;
    std::shared_ptr<QuotientModule> module;
    EisensteinSpec spec; // over B_d with primitive psi
};

std::vector<OldformTerm> oldform_decompose(const EisensteinSpec& spec);

// E_{A,beta,chi} for any chi; imprimitive chi goes through the oldform decomposition.
ExactTable twisted_series(const EisensteinSpec& spec, const Rational& n_max, int threads = 0);
NumericTable twisted_series_numeric(const EisensteinSpec& spec, const Rational& n_max, int threads = 0);

// E_{A,beta} = (1/phi(N_beta)) sum_chi E_{A,beta,chi}; all entries rational.
ExactTable untwisted_series(std::shared_ptr<const DiscriminantForm> A, const DiscElement& beta, const Rational& k,
                            const Rational& n_max, int threads = 0);
NumericTable untwisted_series_numeric(std::shared_ptr<const DiscriminantForm> A, const DiscElement& beta,
                                      const Rational& k, const Rational& n_max, int threads = 0);

// Result of a mode-dispatched computation
struct SeriesResult
{
    bool exact = true;
    ExactTable exact_table;
    NumericTable numeric_table;
    std::string fallback_reason;

    NumericTable as_numeric() const { return exact ? to_numeric(exact_table) : numeric_table; }
};

SeriesResult compute_twisted(const EisensteinSpec& spec, const Rational& n_max, Mode mode, int threads = 0);
SeriesResult compute_untwisted(std::shared_ptr<const DiscriminantForm> A, const DiscElement& beta, const Rational& k,
                               const Rational& n_max, Mode mode, int threads = 0);

} // namespace weil
