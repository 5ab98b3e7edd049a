#pragma once

#include "weil/eisenstein.hpp"
#include "weil/errors.hpp"
#include "weil/oracles.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace weil
{

enum class Status
{
    pass,
    fail,
    budget,
    skipped
};

std::string to_string(Status s);

struct PropertyResult
{
    std::string suite;
    std::string property;
    Status status = Status::pass;
    long checks = 0;
    std::string detail; // first counterexample, or why it was skipped
};

struct VerifyReport
{
    std::vector<PropertyResult> results;

    bool failed() const;
    bool budget_hit() const;
};

struct VerifyOptions
{
    std::shared_ptr<const DiscriminantForm> A;
    Rational k;
    int n_count = 2;          // smallest n > 0 per gamma in the G-sum and rep-count checks
    int exponents = 5;        // n per gamma in the oracle comparison
    int64_t gsum_c = 12;      // coprime closed form for c <= gsum_c
    int64_t gsum_pp = 27;     // prime-power closed form for p^alpha <= gsum_pp
    int64_t rep_a_max = 64;   // multiplicativity for a1 a2 <= rep_a_max
    int64_t c_max = 300;      // series oracle truncation
    long double tolerance = 1e-6;
    Rational hecke_depth = 3;
    int hecke_primes = 2;
    Rational table_depth = 3; // galois, oldform and lifting tables
    int threads = 1;
    int64_t budget = default_budget;
};

const std::vector<std::string>& suite_names();
// throws std::invalid_argument for an unknown suite
VerifyReport run_suite(const std::string& suite, const VerifyOptions& opt);

// Single properties, also used directly by the acceptance runner.
namespace checks
{
PropertyResult classical(int k, int n_max);
PropertyResult rep_brute(const VerifyOptions& opt);
PropertyResult rep_multiplicative(const VerifyOptions& opt);
PropertyResult rep_stability(const VerifyOptions& opt, const std::vector<int64_t>& primes);
PropertyResult local_exponent(const VerifyOptions& opt);
PropertyResult gsum_coprime(const VerifyOptions& opt);
PropertyResult gsum_prime_power(const VerifyOptions& opt);
PropertyResult gsum_multiplicative(const VerifyOptions& opt);
PropertyResult gsum_lift_invariance(const VerifyOptions& opt);
PropertyResult ramanujan(int64_t c_max, int64_t n_abs);
PropertyResult coefficient_oracle(const VerifyOptions& opt);
PropertyResult untwisted_oracle(const VerifyOptions& opt);
PropertyResult symmetry(const VerifyOptions& opt);
PropertyResult parity_vanishing(const VerifyOptions& opt);
PropertyResult untwisted_rational(const VerifyOptions& opt);
PropertyResult galois(const VerifyOptions& opt);
PropertyResult hecke_eigen(const VerifyOptions& opt);
PropertyResult hecke_wrong_eigenvalue(const VerifyOptions& opt);
PropertyResult hecke_untwisted(const VerifyOptions& opt);
PropertyResult hecke_linearity(const VerifyOptions& opt);
PropertyResult oldform_oracle(const VerifyOptions& opt);
PropertyResult oldform_recombination(const VerifyOptions& opt);
// H = <h> for every nonzero isotropic h, or just the given generator
PropertyResult lifting(const VerifyOptions& opt, const std::vector<DiscElement>& generators = {});
} // namespace checks

// (beta, chi) pairs: isotropic beta, chi mod N_beta
std::vector<EisensteinSpec> corpus_specs(std::shared_ptr<const DiscriminantForm> A, const Rational& k,
                                         bool primitive_only, bool skip_vanishing);

} // namespace weil
