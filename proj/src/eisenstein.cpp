#include "weil/eisenstein.hpp"

#include "weil/arith.hpp"
#include "weil/errors.hpp"
#include "weil/oracles.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <numeric>
#include <thread>

namespace weil
{

namespace
{

DualVector shifted(const DualVector& x, const BigInt& coef, const DualVector& b)
{
    DualVector out;
    out.den = std::lcm(x.den, b.den);
    out.num.resize(x.num.size());
    for (size_t i = 0; i < x.num.size(); ++i) {
        BigInt v = BigInt(static_cast<long>(x.num[i])) * (out.den / x.den) +
                   coef * BigInt(static_cast<long>(b.num[i])) * (out.den / b.den);
        // only x mod L matters
        out.num[i] = mod(to_int64(BigInt(v % out.den)), out.den);
    }
    out.reduce();
    return out;
}

int64_t pairing_int(const DiscriminantForm& A, const DiscElement& gamma, const DiscElement& beta, int64_t N_beta)
{
    const BigInt v = BigInt(static_cast<long>(A.pairing_num(gamma, beta))) * N_beta;
    WEIL_REQUIRE(v % A.level() == 0, InvariantViolation, "N_beta (gamma, beta) is not an integer");
    return mod(to_int64(BigInt(v / A.level())), N_beta);
}

int64_t as_int(const Rational& q, const char* what)
{
    WEIL_REQUIRE(is_integer(q), InvariantViolation, std::string(what) + " is not an integer: " + to_string(q));
    return to_int64(q.get_num());
}

Rational p_power(int64_t p, int64_t e)
{
    return rational_pow(make_rational(p), static_cast<int>(e));
}

// sum_{u (p^e)^*, u p^alpha = P (p^e)} conj chi_p(u) sum_{nu (p^e)} (N_{x - nu b, n + p^alpha nu u / p^e}(p^alpha)
//   - p^{m-1} N_{...}(p^{alpha-1}))
CycNumber prime_power_inner(const RepCounter& counter, const DualVector& x, const Rational& n, int64_t p, int alpha,
                            int e, int64_t P, const DualVector& b, const DirichletCharacter& chi_p)
{
    const int64_t pe = ipow(p, e);
    const int m = counter.lattice().rank();
    const Rational pm1 = p_power(p, m - 1);
    BigInt p_alpha;
    mpz_ui_pow_ui(p_alpha.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(alpha));
    const int64_t pa_mod = mod(to_int64(BigInt(p_alpha % pe)), pe);
    std::vector<Rational> acc(static_cast<size_t>(chi_p.order()), Rational(0));
    for (int64_t u = 1; u < pe; ++u) {
        auto idx = chi_p.index(u);
        if (!idx || mod(u * pa_mod - P, pe) != 0)
            continue;
        Rational s = 0;
        for (int64_t nu = 0; nu < pe; ++nu) {
            const DualVector xs = shifted(x, BigInt(static_cast<long>(-nu)), b);
            const Rational ns = n + Rational(p_alpha * nu * u) / Rational(static_cast<long>(pe));
            s += Rational(counter.count_prime_power(xs, ns, p, alpha));
            s -= pm1 * Rational(counter.count_prime_power(xs, ns, p, alpha - 1));
        }
        acc[mod(-*idx, chi_p.order())] += s;
    }
    CycNumber out;
    for (size_t j = 0; j < acc.size(); ++j)
        if (acc[j] != 0)
            out += CycNumber::root_of_unity(chi_p.order(), static_cast<int64_t>(j)) * CycNumber(acc[j]);
    return out;
}

CycNumber char_value(const DirichletCharacter& chi, const BigInt& n)
{
    return chi(mod(to_int64(BigInt(n % chi.modulus())), chi.modulus()));
}

std::vector<int64_t> main_primes(const Lattice& lat, int64_t N_gamma, const Rational& n)
{
    const Rational v = Rational(2 * N_gamma * N_gamma) * n * Rational(static_cast<long>(lat.det()));
    return prime_divisors(as_int(v, "2 N_gamma^2 n det(L)"));
}

// exact product of the local factors of the main part
CycNumber local_product(const EisensteinSpec& spec, const RepCounter& counter, const DualVector& x, int64_t N_gamma,
                        const Rational& n, const DirichletCharacter& xi)
{
    const int m = spec.rank();
    CycNumber out(1);
    for (int64_t p : main_primes(spec.lattice(), N_gamma, n)) {
        const LocalPolynomial poly = local_polynomial(counter, x, n, p, spec.N_beta);
        CycNumber f = eval_local(poly, spec.chi, spec.k, m);
        if (m % 2 == 0) {
            const int k = static_cast<int>(as_int(spec.k, "k"));
            f /= CycNumber(1) - xi(mod(p, xi.modulus())) * CycNumber(p_power(p, -k));
        } else {
            const int s1 = static_cast<int>(as_int(spec.k - Rational(1, 2), "k - 1/2"));
            const DirichletCharacter chi2 = spec.chi.pow(2);
            f *= CycNumber(1) - xi(mod(p, xi.modulus())) * CycNumber(p_power(p, -s1));
            f /= CycNumber(1) - chi2(mod(p, chi2.modulus())) * CycNumber(p_power(p, -(2 * s1)));
        }
        out *= f;
    }
    return out;
}

template <class V, class F>
void fill_parallel(FourierTable<V>& table, int threads, F compute)
{
    std::vector<std::pair<CoeffKey, V*>> jobs;
    for (auto& [key, v] : table.entries())
        if (key.n > 0)
            jobs.emplace_back(key, &v);
    if (threads <= 0)
        threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min<int>(threads, static_cast<int>(std::max<size_t>(1, jobs.size())));
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < jobs.size(); i = next++) {
            try {
                *jobs[i].second = compute(table.form().elements()[jobs[i].first.gamma], jobs[i].first.n);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    // first failure in canonical order, so error reports are deterministic
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace

std::string to_string(Mode mode)
{
    switch (mode) {
    case Mode::exact:
        return "exact";
    case Mode::numeric:
        return "numeric";
    case Mode::automatic:
        return "auto";
    }
    return "auto";
}

Mode parse_mode(const std::string& text)
{
    if (text == "exact")
        return Mode::exact;
    if (text == "numeric")
        return Mode::numeric;
    if (text == "auto")
        return Mode::automatic;
    throw ContractViolation("unknown mode '" + text + "' (expected exact, numeric or auto)");
}

int kappa_for(const Lattice& lat, const Rational& k)
{
    const Rational kappa = k + make_rational(lat.b_plus() - lat.b_minus(), 2);
    WEIL_REQUIRE(is_integer(kappa), ParityError,
                 "kappa = k + (b+ - b-)/2 = " + to_string(kappa) + " is not an integer");
    return static_cast<int>(to_int64(kappa.get_num()));
}

EisensteinSpec EisensteinSpec::make(std::shared_ptr<const DiscriminantForm> A, const DiscElement& beta,
                                    const Rational& k, const DirichletCharacter& chi)
{
    WEIL_REQUIRE(A != nullptr, ContractViolation, "missing discriminant form");
    WEIL_REQUIRE(is_integer(2 * k), ContractViolation, "weight must lie in (1/2)Z, got " + to_string(k));
    WEIL_REQUIRE(k >= Rational(5, 2), ContractViolation, "weight must be at least 5/2, got " + to_string(k));
    EisensteinSpec s;
    s.kappa = kappa_for(A->lattice(), k);
    s.beta = A->make(beta.coords);
    WEIL_REQUIRE(A->is_isotropic(s.beta), ContractViolation,
                 "beta = " + to_string(s.beta) + " is not isotropic: Q(beta) = " + to_string(A->q_value(s.beta)));
    s.N_beta = A->order_of(s.beta);
    WEIL_REQUIRE(chi.modulus() == s.N_beta, ContractViolation,
                 "character " + chi.label() + " must have modulus N_beta = " + std::to_string(s.N_beta));
    s.A = std::move(A);
    s.k = k;
    s.chi = chi;
    return s;
}

bool EisensteinSpec::vanishes() const
{
    return chi.parity() != mod(kappa, 2);
}

DiscriminantData discriminant_data(const Lattice& lat, int64_t N_gamma, const Rational& n, const Rational& k,
                                   int kappa)
{
    const int m = lat.rank();
    DiscriminantData out;
    if (m % 2 == 0) {
        out.D = checked_mul((m / 2) % 2 == 0 ? 1 : -1, lat.det());
    } else {
        WEIL_REQUIRE(n > 0, ContractViolation, "odd rank needs n > 0 for the discriminant");
        const Rational v = Rational(2 * ((m + 1) / 2 % 2 == 0 ? 1 : -1)) * Rational(N_gamma * N_gamma) * n *
                           Rational(static_cast<long>(lat.det()));
        out.D = as_int(v, "discriminant D");
    }
    WEIL_REQUIRE(mod(out.D, 4) <= 1, InvariantViolation,
                 "discriminant " + std::to_string(out.D) + " is not 0 or 1 mod 4");
    out.D0 = fundamental_discriminant(out.D);
    out.chi_D0 = DirichletCharacter::kronecker(out.D0);
    // sign law; for odd rank the exponent is kappa + k - 1/2
    const Rational e = (m % 2 == 0) ? Rational(Rational(kappa) + k) : Rational(Rational(kappa) + k - Rational(1, 2));
    const int expected = (mod(as_int(e, "sign exponent"), 2) == 0) ? 1 : -1;
    WEIL_REQUIRE((out.D0 > 0 ? 1 : -1) == expected, InvariantViolation,
                 "sign of D0 = " + std::to_string(out.D0) + " contradicts the signature");
    return out;
}

SplitData split_data(const DiscriminantForm& A, const DiscElement& beta, const DiscElement& gamma,
                     const DirichletCharacter& chi)
{
    const int64_t N_beta = A.order_of(beta);
    WEIL_REQUIRE(A.is_isotropic(beta), ContractViolation, "beta must be isotropic");
    WEIL_REQUIRE(chi.modulus() == N_beta, ContractViolation, "character modulus must equal N_beta");
    SplitData s;
    s.pairing = pairing_int(A, gamma, beta, N_beta);
    s.g = std::gcd(N_beta, s.pairing);
    for (int64_t p : prime_divisors(s.g))
        s.N_g *= ipow(p, valuation(p, N_beta));
    s.N_g_prime = N_beta / s.N_g;
    std::tie(s.chi_Ng, s.chi_Ng_prime) = chi.factor(s.N_g, s.N_g_prime);
    for (int64_t p : prime_divisors(s.g)) {
        PrimeSplit ps;
        ps.p = p;
        ps.e = valuation(p, N_beta);
        const int64_t pe = ipow(p, ps.e);
        std::tie(ps.chi_p, ps.chi_p_prime) = s.chi_Ng.factor(pe, s.N_g / pe);
        s.primes.push_back(ps);
    }
    return s;
}

CycNumber epsilon_factor(const SplitData& split, const DirichletCharacter& chi)
{
    WEIL_REQUIRE(chi.is_primitive(), ContractViolation,
                 "epsilon factor needs a primitive character; route " + chi.label() + " through oldform_decompose");
    return CycNumber(make_rational(1, split.N_g)) * split.chi_Ng_prime.conj_value(mod(split.pairing, split.N_g_prime)) *
           gauss_sum(chi);
}

CycNumber finite_part(const EisensteinSpec& spec, const RepCounter& counter, const DiscElement& gamma,
                      const Rational& n, const SplitData& split)
{
    const DiscriminantForm& A = *spec.A;
    const int m = spec.rank();
    const int64_t e1 = as_int(Rational(1) - make_rational(m, 2) - spec.k, "1 - m/2 - k");
    const DualVector x = A.lift(gamma);
    const int64_t N_gamma = A.order_of(gamma);
    CycNumber out(1);
    for (const auto& ps : split.primes) {
        const int64_t pe = ipow(ps.p, ps.e);
        const DualVector b = A.lift(A.scale(spec.N_beta / pe, spec.beta));
        const int w = w_exponent(ps.p, spec.N_beta, N_gamma, n);
        CycNumber sum;
        for (int alpha = valuation(ps.p, split.g); alpha <= w; ++alpha) {
            BigInt p_alpha;
            mpz_ui_pow_ui(p_alpha.get_mpz_t(), static_cast<unsigned long>(ps.p), static_cast<unsigned long>(alpha));
            const CycNumber c1 = char_value(ps.chi_p_prime, p_alpha);
            if (c1.is_zero())
                continue;
            const CycNumber inner =
                prime_power_inner(counter, x, n, ps.p, alpha, ps.e, mod(split.pairing, pe), b, ps.chi_p);
            sum += c1 * CycNumber(p_power(ps.p, alpha * e1)) * inner;
        }
        out *= sum;
        if (out.is_zero())
            break;
    }
    return out;
}

Ledger main_part(const EisensteinSpec& spec, const RepCounter& counter, const DiscElement& gamma, const Rational& n,
                 const DiscriminantData& dd)
{
    const DiscriminantForm& A = *spec.A;
    const DirichletCharacter xi = spec.chi * dd.chi_D0;
    auto l_value = [](const DirichletCharacter& c, int s) {
        try {
            return l_value_positive(c, s);
        } catch (const ParityError& err) {
            throw ExactFallback(std::string("exact L-value unavailable: ") + err.what());
        }
    };
    const CycNumber local = local_product(spec, counter, A.lift(gamma), A.order_of(gamma), n, xi);
    if (spec.rank() % 2 == 0) {
        const int k = static_cast<int>(as_int(spec.k, "k"));
        return l_value(xi, k).inverse() * Ledger(local);
    }
    const int s1 = static_cast<int>(as_int(spec.k - Rational(1, 2), "k - 1/2"));
    return l_value(xi, s1) / l_value(spec.chi.pow(2), 2 * s1) * Ledger(local);
}

NumericValue main_part_numeric(const EisensteinSpec& spec, const RepCounter& counter, const DiscElement& gamma,
                               const Rational& n, const DiscriminantData& dd)
{
    const DiscriminantForm& A = *spec.A;
    const DirichletCharacter xi = spec.chi * dd.chi_D0;
    const NumericValue local(local_product(spec, counter, A.lift(gamma), A.order_of(gamma), n, xi).to_complex());
    auto inv = [](const NumericValue& v) {
        const long double a = std::abs(v.value);
        WEIL_REQUIRE(a > v.error, InvariantViolation, "numeric L-value indistinguishable from zero");
        return NumericValue(1.0L / v.value, v.error / (a * (a - v.error)), v.bound_proven);
    };
    if (spec.rank() % 2 == 0)
        return inv(numeric_l_value(xi, spec.k.get_d())) * local;
    const long double s1 = Rational(spec.k - Rational(1, 2)).get_d();
    return numeric_l_value(xi, s1) * inv(numeric_l_value(spec.chi.pow(2), 2 * s1)) * local;
}

Ledger prefactor(const EisensteinSpec& spec, const Rational& n)
{
    Ledger out;
    if (is_integer(spec.k)) {
        const int k = static_cast<int>(to_int64(spec.k.get_num()));
        out = Ledger(CycNumber(p_power(2, k + 1) * rational_pow(n, k - 1) / factorial(k - 1)));
        out *= Ledger::pi_power(2 * k);
    } else {
        // Gamma(j + 1/2) = (2j)! sqrt(pi) / (4^j j!)
        const int j = static_cast<int>(as_int(spec.k - Rational(1, 2), "k - 1/2"));
        out = Ledger(CycNumber(p_power(2, j + 1) * rational_pow(n, j - 1) * p_power(4, j) * factorial(j) /
                               factorial(2 * j)));
        out *= Ledger::sqrt(2 * n);
        out *= Ledger::pi_power(2 * j);
    }
    out *= Ledger::i_power(spec.kappa);
    out *= Ledger::sqrt(make_rational(1, spec.A->size()));
    return out;
}

NumericValue prefactor_numeric(const EisensteinSpec& spec, const Rational& n)
{
    const long double k = spec.k.get_d();
    const long double mag = std::pow(2.0L, k + 1) * std::pow(std::numbers::pi_v<long double>, k) *
                            std::pow(n.get_d(), k - 1) /
                            (std::sqrt(static_cast<long double>(spec.A->size())) * std::tgamma(k));
    const std::complex<long double> ik = std::pow(std::complex<long double>(0, 1), spec.kappa);
    return NumericValue(mag * ik, 16 * NumericValue::ulp_scale() * mag);
}

CycNumber g_closed_coprime(const DiscriminantForm& A, const RepCounter& counter, const DiscElement& gamma,
                           const Rational& n, int64_t c, const DiscElement& beta, const DirichletCharacter& chi)
{
    const int64_t N_beta = A.order_of(beta);
    WEIL_REQUIRE(chi.modulus() == N_beta && chi.is_primitive(), ContractViolation,
                 "closed form needs a primitive character mod N_beta");
    const int64_t P = pairing_int(A, gamma, beta, N_beta);
    WEIL_REQUIRE(std::gcd(c, std::gcd(N_beta, P)) == 1, ContractViolation, "closed form needs (c, g) = 1");
    const int m = A.lattice().rank();
    const DualVector x = A.lift(gamma);
    Rational s = 0;
    for (int64_t a : divisors(c)) {
        const int mu = mobius(c / a);
        if (mu != 0)
            s += Rational(mu) * p_power(a, 1 - m) * Rational(counter.count(x, n, a));
    }
    return chi(mod(c, N_beta)) * chi.conj_value(mod(-P, N_beta)) * gauss_sum(chi) *
           CycNumber(p_power(c, m) * s);
}

CycNumber g_closed_prime_power(const DiscriminantForm& A, const RepCounter& counter, const DiscElement& gamma,
                               const Rational& n, int64_t p, int alpha, const DiscElement& beta,
                               const DirichletCharacter& chi)
{
    const int64_t N_beta = A.order_of(beta);
    WEIL_REQUIRE(chi.modulus() == N_beta && chi.is_primitive(), ContractViolation,
                 "closed form needs a primitive character mod N_beta");
    const int e = valuation(p, N_beta);
    WEIL_REQUIRE(e >= 1 && ipow(p, e) == N_beta, ContractViolation, "closed form needs N_beta to be a power of p");
    const int64_t P = pairing_int(A, gamma, beta, N_beta);
    const int64_t g = std::gcd(N_beta, P);
    WEIL_REQUIRE(g % p == 0, ContractViolation, "closed form needs p | g");
    if (alpha < valuation(p, g))
        return CycNumber();
    const CycNumber inner = prime_power_inner(counter, A.lift(gamma), n, p, alpha, e, P, A.lift(beta), chi);
    return chi(mod(-1, N_beta)) * gauss_sum(chi) * CycNumber(p_power(p, alpha - e)) * inner;
}

EisensteinEngine::EisensteinEngine(EisensteinSpec spec, int threads)
    : spec_(std::move(spec)), counter_(spec_.lattice()), threads_(threads)
{
    WEIL_REQUIRE(spec_.chi.is_primitive(), ContractViolation,
                 "engine needs a primitive character; " + spec_.chi.label() + " has conductor " +
                     std::to_string(spec_.chi.conductor()));
}

CycNumber EisensteinEngine::coefficient_exact(const DiscElement& gamma, const Rational& n) const
{
    WEIL_REQUIRE(n > 0, ContractViolation, "coefficient needs n > 0");
    WEIL_REQUIRE(exponent_compatible(*spec_.A, gamma, n), ContractViolation, "n + Q(gamma) must be an integer");
    if (spec_.vanishes())
        return CycNumber();
    const SplitData split = split_data(*spec_.A, spec_.beta, gamma, spec_.chi);
    const CycNumber eps = epsilon_factor(split, spec_.chi);
    if (eps.is_zero())
        return CycNumber();
    const CycNumber fin = finite_part(spec_, counter_, gamma, n, split);
    if (fin.is_zero())
        return CycNumber();
    const DiscriminantData dd =
        discriminant_data(spec_.lattice(), spec_.A->order_of(gamma), n, spec_.k, spec_.kappa);
    const Ledger total = prefactor(spec_, n) * Ledger(eps * fin) * main_part(spec_, counter_, gamma, n, dd);
    WEIL_REQUIRE(total.pi_twice == 0, InvariantViolation,
                 "coefficient keeps a factor pi^" + to_string(total.pi_exp()));
    const CycNumber value = total.to_cyclotomic();
    int64_t field = spec_.chi.order();
    auto r = value.restrict_to(field);
    WEIL_REQUIRE(r.has_value(), InvariantViolation,
                 "coefficient at gamma = " + to_string(gamma) + ", n = " + to_string(n) + " is not in Q(chi)");
    return r->minimal();
}

NumericValue EisensteinEngine::coefficient_numeric(const DiscElement& gamma, const Rational& n) const
{
    WEIL_REQUIRE(n > 0, ContractViolation, "coefficient needs n > 0");
    WEIL_REQUIRE(exponent_compatible(*spec_.A, gamma, n), ContractViolation, "n + Q(gamma) must be an integer");
    if (spec_.vanishes())
        return NumericValue();
    const SplitData split = split_data(*spec_.A, spec_.beta, gamma, spec_.chi);
    const CycNumber ef = epsilon_factor(split, spec_.chi);
    if (ef.is_zero())
        return NumericValue();
    const CycNumber fin = finite_part(spec_, counter_, gamma, n, split);
    if (fin.is_zero())
        return NumericValue();
    const DiscriminantData dd =
        discriminant_data(spec_.lattice(), spec_.A->order_of(gamma), n, spec_.k, spec_.kappa);
    return prefactor_numeric(spec_, n) * NumericValue((ef * fin).to_complex()) *
           main_part_numeric(spec_, counter_, gamma, n, dd);
}

void EisensteinEngine::add_constant_term(ExactTable& t) const
{
    for (int64_t nu = 1; nu <= spec_.N_beta; ++nu)
        if (std::gcd(nu, spec_.N_beta) == 1)
            t.at(spec_.A->scale(nu, spec_.beta), Rational(0)) += CycNumber(2) * spec_.chi(mod(nu, spec_.N_beta));
}

void EisensteinEngine::add_constant_term(NumericTable& t) const
{
    for (int64_t nu = 1; nu <= spec_.N_beta; ++nu)
        if (std::gcd(nu, spec_.N_beta) == 1)
            t.at(spec_.A->scale(nu, spec_.beta), Rational(0)) +=
                NumericValue(2.0L * spec_.chi(mod(nu, spec_.N_beta)).to_complex());
}

ExactTable EisensteinEngine::table_exact(const Rational& n_max) const
{
    ExactTable t(spec_.A, n_max);
    if (spec_.vanishes())
        return t;
    add_constant_term(t);
    fill_parallel(t, threads_, [&](const DiscElement& g, const Rational& n) { return coefficient_exact(g, n); });
    return t;
}

NumericTable EisensteinEngine::table_numeric(const Rational& n_max) const
{
    NumericTable t(spec_.A, n_max);
    if (spec_.vanishes())
        return t;
    add_constant_term(t);
    fill_parallel(t, threads_, [&](const DiscElement& g, const Rational& n) { return coefficient_numeric(g, n); });
    return t;
}

std::vector<OldformTerm> oldform_decompose(const EisensteinSpec& spec)
{
    const DiscriminantForm& A = *spec.A;
    const DirichletCharacter psi = spec.chi.primitive_part();
    const int64_t N_psi = psi.modulus();
    int64_t N0 = 1;
    for (int64_t p : prime_divisors(N_psi))
        N0 *= ipow(p, valuation(p, spec.N_beta));
    const int64_t N0p = spec.N_beta / N0;
    const CycNumber psi_N0p = psi(mod(N0p, N_psi));
    std::vector<OldformTerm> out;
    for (int64_t d : divisors(N0p)) {
        const int mu = mobius(d);
        if (mu == 0)
            continue;
        OldformTerm term;
        term.d = d;
        term.sign = CycNumber(mu) * psi_N0p;
        const DiscElement gen = A.scale(checked_mul(d, N_psi), spec.beta);
        term.module = std::make_shared<QuotientModule>(spec.A, make_isotropic_subgroup(A, {gen}));
        const DiscElement beta_d = term.module->project(A.scale(N0p, spec.beta));
        term.spec = EisensteinSpec::make(term.module->quotient_ptr(), beta_d, spec.k, psi);
        out.push_back(std::move(term));
    }
    return out;
}

ExactTable twisted_series(const EisensteinSpec& spec, const Rational& n_max, int threads)
{
    if (spec.vanishes())
        return ExactTable(spec.A, n_max);
    if (spec.chi.is_primitive())
        return EisensteinEngine(spec, threads).table_exact(n_max);
    ExactTable out(spec.A, n_max);
    for (const auto& term : oldform_decompose(spec)) {
        ExactTable lifted = lift_up(EisensteinEngine(term.spec, threads).table_exact(n_max), *term.module);
        lifted *= term.sign;
        out += lifted;
    }
    return out;
}

NumericTable twisted_series_numeric(const EisensteinSpec& spec, const Rational& n_max, int threads)
{
    if (spec.vanishes())
        return NumericTable(spec.A, n_max);
    if (spec.chi.is_primitive())
        return EisensteinEngine(spec, threads).table_numeric(n_max);
    NumericTable out(spec.A, n_max);
    for (const auto& term : oldform_decompose(spec)) {
        NumericTable lifted = lift_up(EisensteinEngine(term.spec, threads).table_numeric(n_max), *term.module);
        lifted *= NumericValue(term.sign.to_complex());
        out += lifted;
    }
    return out;
}

ExactTable untwisted_series(std::shared_ptr<const DiscriminantForm> A, const DiscElement& beta, const Rational& k,
                            const Rational& n_max, int threads)
{
    const int64_t N_beta = A->order_of(A->make(beta.coords));
    ExactTable out(A, n_max);
    for (const auto& chi : DirichletCharacter::all(N_beta))
        out += twisted_series(EisensteinSpec::make(A, beta, k, chi), n_max, threads);
    out *= CycNumber(make_rational(1, totient(N_beta)));
    for (auto& [key, v] : out.entries()) {
        auto q = v.as_rational();
        WEIL_REQUIRE(q.has_value(), InvariantViolation,
                     "untwisted coefficient at gamma = " + to_string(A->elements()[key.gamma]) +
                         ", n = " + to_string(key.n) + " is not rational");
        v = CycNumber(*q);
    }
    return out;
}

NumericTable untwisted_series_numeric(std::shared_ptr<const DiscriminantForm> A, const DiscElement& beta,
                                      const Rational& k, const Rational& n_max, int threads)
{
    const int64_t N_beta = A->order_of(A->make(beta.coords));
    NumericTable out(A, n_max);
    for (const auto& chi : DirichletCharacter::all(N_beta))
        out += twisted_series_numeric(EisensteinSpec::make(A, beta, k, chi), n_max, threads);
    out *= NumericValue(1.0L / totient(N_beta));
    return out;
}

SeriesResult compute_twisted(const EisensteinSpec& spec, const Rational& n_max, Mode mode, int threads)
{
    SeriesResult r;
    if (mode != Mode::numeric) {
        try {
            r.exact_table = twisted_series(spec, n_max, threads);
            return r;
        } catch (const ExactFallback& err) {
            if (mode == Mode::exact)
                throw;
            r.fallback_reason = err.what();
        }
    }
    r.exact = false;
    r.numeric_table = twisted_series_numeric(spec, n_max, threads);
    return r;
}

SeriesResult compute_untwisted(std::shared_ptr<const DiscriminantForm> A, const DiscElement& beta, const Rational& k,
                               const Rational& n_max, Mode mode, int threads)
{
    SeriesResult r;
    if (mode != Mode::numeric) {
        try {
            r.exact_table = untwisted_series(A, beta, k, n_max, threads);
            return r;
        } catch (const ExactFallback& err) {
            if (mode == Mode::exact)
                throw;
            r.fallback_reason = err.what();
        }
    }
    r.exact = false;
    r.numeric_table = untwisted_series_numeric(A, beta, k, n_max, threads);
    return r;
}

} // namespace weil
