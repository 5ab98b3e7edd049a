#include "weil/verify.hpp"

#include "weil/arith.hpp"
#include "weil/hecke.hpp"
#include "weil/oracles.hpp"

#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace weil
{

std::string to_string(Status s)
{
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "FAIL";
    case Status::budget:
        return "budget";
    case Status::skipped:
        return "skipped";
    }
    return "?";
}

bool VerifyReport::failed() const
{
    return std::any_of(results.begin(), results.end(), [](const auto& r) { return r.status == Status::fail; });
}

bool VerifyReport::budget_hit() const
{
    return std::any_of(results.begin(), results.end(), [](const auto& r) { return r.status == Status::budget; });
}

namespace
{

class Probe
{
public:
    Probe(std::string suite, std::string property)
    {
        r_.suite = std::move(suite);
        r_.property = std::move(property);
    }

    template <class F>
    void check(bool ok, F describe)
    {
        ++r_.checks;
        if (!ok && r_.status != Status::fail) {
            r_.status = Status::fail;
            r_.detail = describe();
        }
    }
    void skip(const std::string& why)
    {
        if (r_.status == Status::pass && r_.checks == 0) {
            r_.status = Status::skipped;
            r_.detail = why;
        }
    }
    void out_of_budget(const std::string& what)
    {
        if (r_.status == Status::pass || r_.status == Status::skipped) {
            r_.status = Status::budget;
            r_.detail = what;
        }
    }
    PropertyResult& result() { return r_; }

private:
    PropertyResult r_;
};

PropertyResult guarded(const std::string& suite, const std::string& property, const std::function<void(Probe&)>& body)
{
    Probe p(suite, property);
    try {
        body(p);
    } catch (const BudgetExceeded& e) {
        p.out_of_budget(e.what());
    } catch (const std::exception& e) {
        p.check(false, [&] { return std::string("exception: ") + e.what(); });
    }
    auto& r = p.result();
    if (r.status == Status::pass && r.checks == 0) {
        r.status = Status::skipped;
        if (r.detail.empty())
            r.detail = "no instances";
    }
    return r;
}

std::vector<Rational> positive_exponents(const DiscriminantForm& A, const DiscElement& g, int count)
{
    std::vector<Rational> out;
    const Rational q = A.q_value(g);
    for (Rational n = (q == 0) ? Rational(1) : Rational(1) - q; static_cast<int>(out.size()) < count; n += 1)
        out.push_back(n);
    return out;
}

template <class... T>
std::string describe(const T&... parts)
{
    std::ostringstream os;
    (os << ... << parts);
    return os.str();
}

std::string at(const DiscElement& beta, const DirichletCharacter& chi, const DiscElement& gamma, const Rational& n)
{
    return describe("beta=", to_string(beta), " chi=", chi.label(), " gamma=", to_string(gamma), " n=", to_string(n));
}

bool tail_provable(const VerifyOptions& opt)
{
    return opt.k > make_rational(opt.A->lattice().rank(), 2) + 2;
}

std::string tail_reason(const VerifyOptions& opt)
{
    return "k = " + to_string(opt.k) + " <= m/2 + 2: the series oracle has no proven tail bound";
}

std::vector<DirichletCharacter> characters(int64_t N, bool primitive_only)
{
    std::vector<DirichletCharacter> out;
    for (auto& chi : DirichletCharacter::all(N))
        if (!primitive_only || chi.is_primitive())
            out.push_back(chi);
    return out;
}

bool close(std::complex<long double> a, std::complex<long double> b, long double tol)
{
    return std::abs(a - b) <= tol * std::max<long double>(1, std::abs(b));
}

// source depth needed for a Hecke check to depth n
Rational hecke_source_depth(const std::vector<HeckeDescriptor>& hs, const Rational& depth)
{
    Rational out = depth;
    for (const auto& h : hs) {
        const Rational p(static_cast<long>(h.p));
        const Rational need = depth * (h.odd_rank ? Rational(p * p) : p);
        if (need > out)
            out = need;
    }
    return out;
}

// sum_nu chi(nu) E_{A, nu beta}
ExactTable character_recombination(const EisensteinSpec& spec, const Rational& depth, int threads,
                                   std::map<size_t, ExactTable>& untwisted)
{
    const DiscriminantForm& A = *spec.A;
    ExactTable out(spec.A, depth);
    for (int64_t nu = 1; nu <= spec.N_beta; ++nu) {
        if (std::gcd(nu, spec.N_beta) != 1)
            continue;
        const DiscElement b = A.scale(nu, spec.beta);
        auto it = untwisted.find(A.index_of(b));
        if (it == untwisted.end())
            it = untwisted.emplace(A.index_of(b), untwisted_series(spec.A, b, spec.k, depth, threads)).first;
        ExactTable term = it->second;
        term *= spec.chi(nu);
        out += term;
    }
    return out;
}

} // namespace

std::vector<EisensteinSpec> corpus_specs(std::shared_ptr<const DiscriminantForm> A, const Rational& k,
                                         bool primitive_only, bool skip_vanishing)
{
    std::vector<EisensteinSpec> out;
    for (const auto& beta : A->isotropic_elements())
        for (const auto& chi : characters(A->order_of(beta), primitive_only)) {
            auto spec = EisensteinSpec::make(A, beta, k, chi);
            if (skip_vanishing && spec.vanishes())
                continue;
            out.push_back(std::move(spec));
        }
    return out;
}

namespace checks
{

PropertyResult classical(int k, int n_max)
{
    return guarded("coefficients", "classical E_" + std::to_string(k), [&](Probe& p) {
        auto A = std::make_shared<const DiscriminantForm>(Lattice());
        const auto table = twisted_series(EisensteinSpec::make(A, A->zero(), k, DirichletCharacter()), n_max);
        for (int n = 0; n <= n_max; ++n) {
            const CycNumber got = table.at(A->zero(), n);
            const Rational want = divisor_sum_reference(k, n);
            p.check(got == CycNumber(want), [&] { return describe("n=", n, ": got ", got, ", want ", to_string(want)); });
        }
    });
}

PropertyResult rep_brute(const VerifyOptions& opt)
{
    return guarded("repnums", "counts equal brute force", [&](Probe& p) {
        const DiscriminantForm& A = *opt.A;
        const Lattice& lat = A.lattice();
        const int m = lat.rank();
        RepCounter fast(lat);
        for (const auto& g : A.elements())
            for (const auto& n : positive_exponents(A, g, opt.n_count))
                for (int64_t prime : {2, 3, 5, 7}) {
                    int64_t pa = 1;
                    for (int alpha = 1; alpha <= 8; ++alpha) {
                        pa *= prime;
                        if (std::pow(static_cast<double>(pa), m) > 1e6)
                            break;
                        const BigInt got = fast.count_prime_power(A.lift(g), n, prime, alpha);
                        const BigInt want = brute_rep_count(lat, A.lift(g), n, pa, opt.budget);
                        p.check(got == want, [&] {
                            return describe("gamma=", to_string(g), " n=", to_string(n), " a=", pa, ": got ", got.get_str(),
                                            ", brute ", want.get_str());
                        });
                    }
                }
    });
}

PropertyResult rep_multiplicative(const VerifyOptions& opt)
{
    return guarded("repnums", "multiplicativity", [&](Probe& p) {
        const DiscriminantForm& A = *opt.A;
        const Lattice& lat = A.lattice();
        const int m = lat.rank();
        RepCounter fast(lat);
        for (const auto& g : A.elements())
            for (const auto& n : positive_exponents(A, g, opt.n_count)) {
                std::map<int64_t, BigInt> brute;
                auto count = [&](int64_t a) -> const BigInt& {
                    auto it = brute.find(a);
                    if (it == brute.end())
                        it = brute.emplace(a, brute_rep_count(lat, A.lift(g), n, a, opt.budget)).first;
                    return it->second;
                };
                for (int64_t a1 = 2; a1 * 2 <= opt.rep_a_max; ++a1)
                    for (int64_t a2 = a1 + 1; a1 * a2 <= opt.rep_a_max; ++a2) {
                        if (std::gcd(a1, a2) != 1)
                            continue;
                        if (std::pow(static_cast<double>(a1 * a2), m) > static_cast<double>(opt.budget)) {
                            p.out_of_budget(describe("a=", a1 * a2, " skipped"));
                            continue;
                        }
                        const BigInt whole = count(a1 * a2);
                        p.check(whole == count(a1) * count(a2), [&] {
                            return describe("gamma=", to_string(g), " n=", to_string(n), " N(", a1 * a2, ")=", whole.get_str(),
                                            " but N(", a1, ")N(", a2, ")=", BigInt(count(a1) * count(a2)).get_str());
                        });
                        p.check(fast.count(A.lift(g), n, a1 * a2) == whole, [&] {
                            return describe("gamma=", to_string(g), " n=", to_string(n), " a=", a1 * a2,
                                            ": counter disagrees with enumeration");
                        });
                    }
            }
    });
}

PropertyResult rep_stability(const VerifyOptions& opt, const std::vector<int64_t>& primes)
{
    return guarded("repnums", "stability above 1 + 2 v_p(2 N_gamma n)", [&](Probe& p) {
        const DiscriminantForm& A = *opt.A;
        const Lattice& lat = A.lattice();
        const int m = lat.rank();
        RepCounter plain(lat, false);
        for (const auto& g : A.elements())
            for (const auto& n : positive_exponents(A, g, opt.n_count))
                for (int64_t prime : primes) {
                    const int bound = 1 + 2 * valuation(prime, Rational(2 * A.order_of(g)) * n);
                    for (int alpha = bound + 1; alpha <= bound + 2; ++alpha) {
                        const BigInt lo = plain.count_prime_power(A.lift(g), n, prime, alpha);
                        const BigInt hi = plain.count_prime_power(A.lift(g), n, prime, alpha + 1);
                        BigInt scale;
                        if (m >= 1)
                            mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(prime),
                                          static_cast<unsigned long>(m - 1));
                        const Rational factor = m >= 1 ? Rational(scale) : make_rational(1, prime);
                        p.check(Rational(hi) == factor * Rational(lo), [&] {
                            return describe("gamma=", to_string(g), " n=", to_string(n), " p=", prime, " alpha=", alpha,
                                            ": N(p^(a+1))=", hi.get_str(), ", N(p^a)=", lo.get_str());
                        });
                    }
                }
    });
}

PropertyResult local_exponent(const VerifyOptions& opt)
{
    return guarded("repnums", "local exponent 1 - m/2 - k is integral", [&](Probe& p) {
        const int m = opt.A->lattice().rank();
        const Rational e = Rational(1) - make_rational(m, 2) - opt.k;
        kappa_for(opt.A->lattice(), opt.k);
        p.check(is_integer(e), [&] { return "1 - m/2 - k = " + to_string(e); });
    });
}

PropertyResult gsum_coprime(const VerifyOptions& opt)
{
    return guarded("gsums", "closed form for (c, g) = 1", [&](Probe& p) {
        const DiscriminantForm& A = *opt.A;
        RepCounter counter(A.lattice());
        for (const auto& beta : A.isotropic_elements())
            for (const auto& chi : characters(A.order_of(beta), true))
                for (const auto& g : A.elements()) {
                    const int64_t gcd_g = split_data(A, beta, g, chi).g;
                    for (const auto& n : positive_exponents(A, g, opt.n_count))
                        for (int64_t c = 1; c <= opt.gsum_c; ++c) {
                            if (std::gcd(c, gcd_g) != 1)
                                continue;
                            const CycNumber brute = brute_G(A, g, n, c, beta, chi, opt.budget);
                            const CycNumber closed = g_closed_coprime(A, counter, g, n, c, beta, chi);
                            p.check(brute == closed, [&] {
                                return describe(at(beta, chi, g, n), " c=", c, ": brute ", brute, ", closed ", closed);
                            });
                        }
                }
    });
}

PropertyResult gsum_prime_power(const VerifyOptions& opt)
{
    return guarded("gsums", "closed form at p^alpha, p | g", [&](Probe& p) {
        const DiscriminantForm& A = *opt.A;
        RepCounter counter(A.lattice());
        for (const auto& beta : A.isotropic_elements()) {
            const int64_t N_beta = A.order_of(beta);
            const auto primes = prime_divisors(N_beta);
            if (primes.size() != 1)
                continue;
            const int64_t prime = primes.front();
            for (const auto& chi : characters(N_beta, true))
                for (const auto& g : A.elements()) {
                    const int64_t gcd_g = split_data(A, beta, g, chi).g;
                    if (gcd_g % prime != 0)
                        continue;
                    const int nu_g = valuation(prime, gcd_g);
                    for (const auto& n : positive_exponents(A, g, opt.n_count)) {
                        const int w = w_exponent(prime, N_beta, A.order_of(g), n);
                        int64_t pa = 1;
                        for (int alpha = 0; pa <= opt.gsum_pp; ++alpha, pa *= prime) {
                            const CycNumber brute = brute_G(A, g, n, pa, beta, chi, opt.budget);
                            const CycNumber closed = g_closed_prime_power(A, counter, g, n, prime, alpha, beta, chi);
                            const bool zero_expected = alpha < nu_g || alpha > w;
                            p.check(brute == closed && (!zero_expected || brute.is_zero()), [&] {
                                return describe(at(beta, chi, g, n), " p^alpha=", pa, " (v_p(g)=", nu_g, ", w_p=", w,
                                                "): brute ", brute, ", closed ", closed);
                            });
                        }
                    }
                }
        }
    });
}

PropertyResult gsum_multiplicative(const VerifyOptions& opt)
{
    return guarded("gsums", "multiplicativity in c", [&](Probe& p) {
        const DiscriminantForm& A = *opt.A;
        const std::vector<std::pair<int64_t, int64_t>> pairs{{2, 3}, {3, 4}, {4, 5}};
        for (const auto& beta : A.isotropic_elements()) {
            const int64_t N_beta = A.order_of(beta);
            for (const auto& chi : characters(N_beta, false))
                for (const auto& g : A.elements())
                    for (const auto& n : positive_exponents(A, g, opt.n_count))
                        for (auto [c1, c2] : pairs) {
                            int64_t N1 = 1;
                            for (int64_t q : prime_divisors(c1))
                                N1 *= ipow(q, valuation(q, N_beta));
                            const int64_t N2 = N_beta / N1;
                            const auto [chi1, chi2] = chi.factor(N1, N2);
                            const CycNumber whole = brute_G(A, g, n, c1 * c2, beta, chi, opt.budget);
                            const CycNumber split = chi1(N2 * c2) * chi2(N1 * c1) *
                                                    brute_G(A, g, n, c1, A.scale(N2, beta), chi1, opt.budget) *
                                                    brute_G(A, g, n, c2, A.scale(N1, beta), chi2, opt.budget);
                            p.check(whole == split, [&] {
                                return describe(at(beta, chi, g, n), " c=", c1, "*", c2, ": G(c) ", whole, ", product ",
                                                split);
                            });
                        }
        }
    });
}

PropertyResult gsum_lift_invariance(const VerifyOptions& opt)
{
    return guarded("gsums", "independent of the lift of d^-1", [&](Probe& p) {
        const DiscriminantForm& A = *opt.A;
        for (const auto& beta : A.isotropic_elements())
            for (const auto& chi : characters(A.order_of(beta), false))
                for (const auto& g : A.elements())
                    for (const auto& n : positive_exponents(A, g, 1))
                        for (int64_t c = 2; c <= 6; ++c) {
                            const CycNumber a = brute_G(A, g, n, c, beta, chi, opt.budget);
                            const CycNumber b = brute_G_with_lift(A, g, n, c, beta, chi, 1);
                            p.check(a == b, [&] { return describe(at(beta, chi, g, n), " c=", c, ": ", a, " vs ", b); });
                        }
    });
}

PropertyResult ramanujan(int64_t c_max, int64_t n_abs)
{
    return guarded("gsums", "Ramanujan sums, direct and Moebius", [&](Probe& p) {
        for (int64_t c = 1; c <= c_max; ++c)
            for (int64_t n = -n_abs; n <= n_abs; ++n) {
                const int64_t a = ramanujan_sum(c, n), b = ramanujan_sum_mobius(c, n);
                p.check(a == b, [&] { return describe("c=", c, " n=", n, ": ", a, " vs ", b); });
            }
    });
}

PropertyResult coefficient_oracle(const VerifyOptions& opt)
{
    return guarded("coefficients", "exact coefficients match the series oracle", [&](Probe& p) {
        if (!tail_provable(opt))
            return p.skip(tail_reason(opt));
        const DiscriminantForm& A = *opt.A;
        for (const auto& beta : A.isotropic_elements()) {
            std::vector<EisensteinSpec> specs;
            for (const auto& chi : characters(A.order_of(beta), true)) {
                auto spec = EisensteinSpec::make(opt.A, beta, opt.k, chi);
                if (!spec.vanishes())
                    specs.push_back(std::move(spec));
            }
            if (specs.empty())
                continue;
            for (const auto& g : A.elements()) {
                const SeriesOracle oracle(A, beta, g, opt.c_max, std::numeric_limits<int64_t>::max());
                for (const auto& spec : specs) {
                    const EisensteinEngine engine(spec, 1);
                    const auto weights = SeriesOracle::twisted_weights(spec.chi, spec.kappa);
                    for (const auto& n : positive_exponents(A, g, opt.exponents)) {
                        const auto exact = engine.coefficient_exact(g, n).to_complex();
                        const NumericValue num = oracle.coefficient(n, opt.k, spec.kappa, weights);
                        const long double diff = std::abs(exact - num.value);
                        p.check(close(exact, num.value, opt.tolerance) && diff <= num.error, [&] {
                            return describe(at(beta, spec.chi, g, n), ": exact ", exact, ", oracle ", num.value,
                                            " +- ", num.error);
                        });
                    }
                }
            }
        }
    });
}

PropertyResult untwisted_oracle(const VerifyOptions& opt)
{
    return guarded("coefficients", "untwisted normalization against the oracle", [&](Probe& p) {
        if (!tail_provable(opt))
            return p.skip(tail_reason(opt));
        const DiscriminantForm& A = *opt.A;
        const int kappa = kappa_for(A.lattice(), opt.k);
        for (const auto& beta : A.isotropic_elements()) {
            Rational depth = 0;
            for (const auto& g : A.elements())
                depth = std::max(depth, positive_exponents(A, g, opt.n_count).back());
            const auto table = untwisted_series(opt.A, beta, opt.k, depth, opt.threads);
            const auto weights = SeriesOracle::individual_weights(A.order_of(beta), kappa);
            for (const auto& g : A.elements()) {
                const SeriesOracle oracle(A, beta, g, opt.c_max, std::numeric_limits<int64_t>::max());
                for (const auto& n : positive_exponents(A, g, opt.n_count)) {
                    const auto exact = table.at(g, n).to_complex();
                    const NumericValue num = oracle.coefficient(n, opt.k, kappa, weights);
                    p.check(close(exact, num.value, opt.tolerance), [&] {
                        return describe("beta=", to_string(beta), " gamma=", to_string(g), " n=", to_string(n), ": exact ",
                                        exact, ", oracle ", num.value);
                    });
                }
            }
        }
    });
}

PropertyResult symmetry(const VerifyOptions& opt)
{
    return guarded("coefficients", "c(-gamma, n) = (-1)^kappa c(gamma, n)", [&](Probe& p) {
        const DiscriminantForm& A = *opt.A;
        for (const auto& spec : corpus_specs(opt.A, opt.k, true, true)) {
            const auto table = twisted_series(spec, opt.table_depth, opt.threads);
            const CycNumber sign(spec.kappa % 2 == 0 ? 1 : -1);
            for (const auto& [key, v] : table.entries()) {
                const DiscElement& g = A.elements()[key.gamma];
                const CycNumber mirror = table.at(A.neg(g), key.n);
                p.check(mirror == sign * v,
                        [&] { return describe(at(spec.beta, spec.chi, g, key.n), ": ", v, " vs mirror ", mirror); });
            }
        }
    });
}

PropertyResult parity_vanishing(const VerifyOptions& opt)
{
    return guarded("coefficients", "chi(-1) != (-1)^kappa gives zero", [&](Probe& p) {
        std::map<size_t, ExactTable> untwisted;
        for (const auto& spec : corpus_specs(opt.A, opt.k, false, false)) {
            if (!spec.vanishes())
                continue;
            const auto table = character_recombination(spec, opt.table_depth, opt.threads, untwisted);
            for (const auto& [key, v] : table.entries())
                p.check(v.is_zero(), [&] {
                    return describe(at(spec.beta, spec.chi, opt.A->elements()[key.gamma], key.n), ": ", v);
                });
        }
    });
}

PropertyResult untwisted_rational(const VerifyOptions& opt)
{
    return guarded("galois", "untwisted coefficients are rational", [&](Probe& p) {
        for (const auto& beta : opt.A->isotropic_elements()) {
            const auto table = untwisted_series(opt.A, beta, opt.k, opt.table_depth, opt.threads);
            for (const auto& [key, v] : table.entries())
                p.check(v.is_rational(), [&] {
                    return describe("beta=", to_string(beta), " gamma=", to_string(opt.A->elements()[key.gamma]),
                                    " n=", to_string(key.n), ": ", v);
                });
        }
    });
}

PropertyResult galois(const VerifyOptions& opt)
{
    return guarded("galois", "sigma(E_chi) = E_(sigma chi)", [&](Probe& p) {
        const DiscriminantForm& A = *opt.A;
        for (const auto& beta : A.isotropic_elements()) {
            std::map<std::string, ExactTable> tables;
            auto table_for = [&](const DirichletCharacter& chi) -> const ExactTable& {
                auto it = tables.find(chi.label());
                if (it == tables.end())
                    it = tables
                             .emplace(chi.label(), twisted_series(EisensteinSpec::make(opt.A, beta, opt.k, chi),
                                                                  opt.table_depth, opt.threads))
                             .first;
                return it->second;
            };
            for (const auto& chi : characters(A.order_of(beta), false)) {
                const ExactTable& src = table_for(chi);
                int64_t M = std::lcm<int64_t>(2, chi.order());
                for (const auto& [key, v] : src.entries())
                    M = std::lcm(M, v.minimal().conductor());
                for (int64_t a = 1; a < M; ++a) {
                    if (std::gcd(a, M) != 1)
                        continue;
                    const ExactTable& dst = table_for(chi.galois(a));
                    for (const auto& [key, v] : src.entries()) {
                        const CycNumber image = v.galois(a);
                        const CycNumber& want = dst.entries().at(key);
                        p.check(image == want, [&] {
                            return describe(at(beta, chi, A.elements()[key.gamma], key.n), " sigma_", a, ": ", image,
                                            " vs ", want);
                        });
                    }
                }
            }
        }
    });
}

PropertyResult hecke_eigen(const VerifyOptions& opt)
{
    return guarded("hecke", "twisted series are eigenforms", [&](Probe& p) {
        const auto hs = admissible_descriptors(*opt.A, opt.hecke_primes);
        const Rational source = hecke_source_depth(hs, opt.hecke_depth);
        for (const auto& spec : corpus_specs(opt.A, opt.k, true, true)) {
            const auto table = twisted_series(spec, source, opt.threads);
            for (const auto& h : hs) {
                const CycNumber lambda = eigenvalue(spec.chi, h, opt.k);
                const EigenCheck c = verify_eigenform(table, h, opt.k, lambda, opt.hecke_depth);
                p.check(c.ok, [&] {
                    return describe("beta=", to_string(spec.beta), " chi=", spec.chi.label(), " p=", h.p, " r=", h.r,
                                    " lambda=", lambda, ": deviation ", c.deviation);
                });
            }
        }
    });
}

PropertyResult hecke_wrong_eigenvalue(const VerifyOptions& opt)
{
    return guarded("hecke", "a wrong eigenvalue is rejected", [&](Probe& p) {
        const auto hs = admissible_descriptors(*opt.A, 1);
        const auto specs = corpus_specs(opt.A, opt.k, true, true);
        if (specs.empty())
            return;
        const auto table = twisted_series(specs.front(), hecke_source_depth(hs, opt.hecke_depth), opt.threads);
        const CycNumber wrong = eigenvalue(specs.front().chi, hs.front(), opt.k) + CycNumber(1);
        const EigenCheck c = verify_eigenform(table, hs.front(), opt.k, wrong, opt.hecke_depth);
        p.check(!c.ok && c.deviation > 0, [&] { return describe("lambda + 1 accepted for p=", hs.front().p); });
    });
}

PropertyResult hecke_untwisted(const VerifyOptions& opt)
{
    return guarded("hecke", "untwisted series map to the shifted combination", [&](Probe& p) {
        const DiscriminantForm& A = *opt.A;
        const auto hs = admissible_descriptors(A, opt.hecke_primes);
        const Rational source = hecke_source_depth(hs, opt.hecke_depth);
        std::map<size_t, ExactTable> tables;
        auto table_for = [&](const DiscElement& b) -> const ExactTable& {
            auto it = tables.find(A.index_of(b));
            if (it == tables.end())
                it = tables.emplace(A.index_of(b), untwisted_series(opt.A, b, opt.k, source, opt.threads)).first;
            return it->second;
        };
        const int64_t ex = A.exponent();
        long non_eigen = 0;
        for (const auto& beta : A.isotropic_elements())
            for (const auto& h : hs) {
                const auto image = hecke_act(table_for(beta), h, opt.k, opt.hecke_depth);
                const int64_t r = h.odd_rank ? h.p : h.r;
                const DiscElement down = A.scale(inverse_mod(mod(r, ex), ex), beta);
                const DiscElement up = A.scale(r, beta);
                const Rational pk = h.odd_rank ? rational_pow(make_rational(h.p), static_cast<int>(to_int64(Rational(2 * opt.k - 2).get_num())))
                                               : rational_pow(make_rational(h.p), static_cast<int>(to_int64(Rational(opt.k - 1).get_num())));
                ExactTable want = table_for(down).truncated(opt.hecke_depth);
                ExactTable tail = table_for(up).truncated(opt.hecke_depth);
                tail *= CycNumber(pk);
                want += tail;
                if (down != beta)
                    ++non_eigen;
                p.check(tables_equal(image, want), [&] {
                    return describe("beta=", to_string(beta), " p=", h.p, " r=", h.r, ": T E_beta differs from E_(beta/r) + p^e E_(r beta)");
                });
            }
        if (p.result().status == Status::pass)
            p.result().detail = std::to_string(non_eigen) + " instances with beta/r != beta";
    });
}

PropertyResult hecke_linearity(const VerifyOptions& opt)
{
    return guarded("hecke", "linearity", [&](Probe& p) {
        const auto hs = admissible_descriptors(*opt.A, 1);
        const Rational source = hecke_source_depth(hs, opt.hecke_depth);
        const auto specs = corpus_specs(opt.A, opt.k, true, true);
        if (specs.empty())
            return;
        const auto t1 = twisted_series(specs.front(), source, opt.threads);
        const auto t2 = untwisted_series(opt.A, opt.A->zero(), opt.k, source, opt.threads);
        ExactTable combo = t1;
        combo *= CycNumber(2);
        ExactTable scaled = t2;
        scaled *= CycNumber(-3);
        combo += scaled;
        ExactTable want = hecke_act(t1, hs.front(), opt.k, opt.hecke_depth);
        want *= CycNumber(2);
        ExactTable rhs2 = hecke_act(t2, hs.front(), opt.k, opt.hecke_depth);
        rhs2 *= CycNumber(-3);
        want += rhs2;
        p.check(tables_equal(hecke_act(combo, hs.front(), opt.k, opt.hecke_depth), want),
                [&] { return std::string("T(2 f - 3 g) != 2 T f - 3 T g"); });
    });
}

PropertyResult oldform_oracle(const VerifyOptions& opt)
{
    return guarded("oldforms", "decomposition matches the direct definition", [&](Probe& p) {
        if (!tail_provable(opt))
            return p.skip(tail_reason(opt));
        const DiscriminantForm& A = *opt.A;
        for (const auto& beta : A.isotropic_elements()) {
            std::vector<EisensteinSpec> specs;
            for (const auto& chi : characters(A.order_of(beta), false)) {
                if (chi.is_primitive())
                    continue;
                auto spec = EisensteinSpec::make(opt.A, beta, opt.k, chi);
                if (!spec.vanishes())
                    specs.push_back(std::move(spec));
            }
            if (specs.empty())
                continue;
            std::vector<ExactTable> tables;
            for (const auto& spec : specs)
                tables.push_back(twisted_series(spec, opt.table_depth, opt.threads));
            for (const auto& g : A.elements()) {
                const SeriesOracle oracle(A, beta, g, opt.c_max, std::numeric_limits<int64_t>::max());
                for (size_t i = 0; i < specs.size(); ++i) {
                    const auto weights = SeriesOracle::twisted_weights(specs[i].chi, specs[i].kappa);
                    for (const auto& n : exponents_for(A, g, opt.table_depth)) {
                        if (n == 0)
                            continue;
                        const auto exact = tables[i].at(g, n).to_complex();
                        const NumericValue num = oracle.coefficient(n, opt.k, specs[i].kappa, weights);
                        p.check(close(exact, num.value, opt.tolerance), [&] {
                            return describe(at(beta, specs[i].chi, g, n), ": decomposition ", exact, ", oracle ",
                                            num.value);
                        });
                    }
                }
            }
        }
    });
}

PropertyResult oldform_recombination(const VerifyOptions& opt)
{
    return guarded("oldforms", "decomposition matches the character recombination", [&](Probe& p) {
        std::map<size_t, ExactTable> untwisted;
        for (const auto& spec : corpus_specs(opt.A, opt.k, false, true)) {
            if (spec.chi.is_primitive())
                continue;
            const auto direct = twisted_series(spec, opt.table_depth, opt.threads);
            const auto recombined = character_recombination(spec, opt.table_depth, opt.threads, untwisted);
            for (const auto& [key, v] : direct.entries()) {
                const CycNumber& w = recombined.entries().at(key);
                p.check(v == w, [&] {
                    return describe(at(spec.beta, spec.chi, opt.A->elements()[key.gamma], key.n), ": ", v, " vs ", w);
                });
            }
        }
    });
}

PropertyResult lifting(const VerifyOptions& opt, const std::vector<DiscElement>& generators)
{
    return guarded("oldforms", "lifting identity", [&](Probe& p) {
        const DiscriminantForm& A = *opt.A;
        std::vector<DiscElement> gens = generators;
        if (gens.empty())
            for (const auto& h : A.isotropic_elements())
                if (h != A.zero())
                    gens.push_back(h);
        const int kappa = kappa_for(A.lattice(), opt.k);
        const bool numeric = tail_provable(opt);
        std::map<size_t, ExactTable> untwisted;
        auto table_for = [&](const DiscElement& b) -> const ExactTable& {
            auto it = untwisted.find(A.index_of(b));
            if (it == untwisted.end())
                it = untwisted.emplace(A.index_of(b), untwisted_series(opt.A, b, opt.k, opt.table_depth, opt.threads))
                         .first;
            return it->second;
        };
        std::map<std::pair<size_t, size_t>, std::unique_ptr<SeriesOracle>> oracles;
        auto oracle_for = [&](const DiscElement& b, const DiscElement& g) -> const SeriesOracle& {
            auto& slot = oracles[{A.index_of(b), A.index_of(g)}];
            if (!slot)
                slot = std::make_unique<SeriesOracle>(A, b, g, opt.c_max, std::numeric_limits<int64_t>::max());
            return *slot;
        };
        std::set<std::vector<DiscElement>> seen;
        for (const auto& h : gens) {
            auto members = A.subgroup({h});
            std::sort(members.begin(), members.end());
            if (!seen.insert(members).second)
                continue;
            const QuotientModule Q(opt.A, make_isotropic_subgroup(A, {h}));
            for (const auto& beta : Q.complement()) {
                if (!A.is_isotropic(beta))
                    continue;
                const auto lhs =
                    lift_up(untwisted_series(Q.quotient_ptr(), Q.project(beta), opt.k, opt.table_depth, opt.threads), Q);
                ExactTable rhs(opt.A, opt.table_depth);
                for (const auto& e : Q.subgroup().elements)
                    rhs += table_for(A.add(beta, e));
                p.check(tables_equal(lhs, rhs), [&] {
                    return describe("H=<", to_string(h), "> beta=", to_string(beta), ": exact sides differ");
                });
                if (!numeric)
                    continue;
                for (const auto& [key, v] : lhs.entries()) {
                    if (key.n == 0)
                        continue;
                    const DiscElement& g = A.elements()[key.gamma];
                    std::complex<long double> sum = 0;
                    for (const auto& e : Q.subgroup().elements) {
                        const DiscElement b = A.add(beta, e);
                        sum += oracle_for(b, g).coefficient(key.n, opt.k, kappa,
                                                  SeriesOracle::individual_weights(A.order_of(b), kappa))
                                   .value;
                    }
                    p.check(close(v.to_complex(), sum, opt.tolerance), [&] {
                        return describe("H=<", to_string(h), "> beta=", to_string(beta), " gamma=", to_string(g),
                                        " n=", to_string(key.n), ": lifted ", v.to_complex(), ", oracle sum ", sum);
                    });
                }
            }
        }
    });
}

} // namespace checks

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"repnums", "gsums", "coefficients", "hecke", "oldforms", "galois", "all"};
    return names;
}

VerifyReport run_suite(const std::string& suite, const VerifyOptions& opt)
{
    WEIL_REQUIRE(std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end(),
                 std::invalid_argument, "unknown suite '" + suite + "'");
    const bool all = suite == "all";
    VerifyReport report;
    auto add = [&](PropertyResult r) { report.results.push_back(std::move(r)); };
    if (all || suite == "repnums") {
        add(checks::rep_brute(opt));
        add(checks::rep_multiplicative(opt));
        add(checks::rep_stability(opt, {2, 3, 5}));
        add(checks::local_exponent(opt));
    }
    if (all || suite == "gsums") {
        add(checks::gsum_coprime(opt));
        add(checks::gsum_prime_power(opt));
        add(checks::gsum_multiplicative(opt));
        add(checks::gsum_lift_invariance(opt));
        add(checks::ramanujan(200, 200));
    }
    if (all || suite == "coefficients") {
        const bool classical = opt.A->lattice().rank() == 0 && is_integer(opt.k) && opt.k >= 4 &&
                               mpz_even_p(opt.k.get_num_mpz_t());
        if (classical)
            add(checks::classical(static_cast<int>(to_int64(opt.k.get_num())), 20));
        add(checks::coefficient_oracle(opt));
        add(checks::untwisted_oracle(opt));
        add(checks::symmetry(opt));
        add(checks::parity_vanishing(opt));
    }
    if (all || suite == "hecke") {
        add(checks::hecke_eigen(opt));
        add(checks::hecke_wrong_eigenvalue(opt));
        add(checks::hecke_untwisted(opt));
        add(checks::hecke_linearity(opt));
    }
    if (all || suite == "oldforms") {
        add(checks::oldform_oracle(opt));
        add(checks::oldform_recombination(opt));
        add(checks::lifting(opt));
    }
    if (all || suite == "galois") {
        add(checks::untwisted_rational(opt));
        add(checks::galois(opt));
    }
    return report;
}

} // namespace weil
