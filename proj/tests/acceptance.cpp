// One line per acceptance criterion; exit status 1 if any line fails.

#include "weil/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace weil;

namespace
{

struct Corpus
{
    IntMatrix gram;
    Rational k;
};

const std::vector<Corpus>& corpus()
{
    // k chosen so that every lattice has non-vanishing specs; U(3) twice for the odd character
    static const std::vector<Corpus> c{{{{2}}, make_rational(7, 2)},
                                       {{{2, 0}, {0, -2}}, 4},
                                       {{{0, 2}, {2, 0}}, 4},
                                       {{{0, 3}, {3, 0}}, 4},
                                       {{{0, 3}, {3, 0}}, 5}};
    return c;
}

VerifyOptions options(const Corpus& c)
{
    VerifyOptions opt;
    opt.A = std::make_shared<const DiscriminantForm>(Lattice(c.gram));
    opt.k = c.k;
    return opt;
}

std::string gram_string(const IntMatrix& g)
{
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < g.size(); ++i) {
        os << (i ? "," : "") << "[";
        for (size_t j = 0; j < g[i].size(); ++j)
            os << (j ? "," : "") << g[i][j];
        os << "]";
    }
    os << "]";
    return os.str();
}

std::string name(const Corpus& c)
{
    std::ostringstream os;
    os << gram_string(c.gram) << " k=" << to_string(c.k);
    return os.str();
}

struct Tally
{
    bool ok = true;
    long checks = 0;
    std::string first_problem;

    void add(const PropertyResult& r, const std::string& where)
    {
        checks += r.checks;
        if (r.status != Status::pass && ok) {
            ok = false;
            first_problem = where + " " + r.property + ": " + to_string(r.status) + " " + r.detail;
        }
    }
    void require(bool cond, const std::string& why)
    {
        if (!cond && ok) {
            ok = false;
            first_problem = why;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<void(Tally&)>& body)
{
    Tally t;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(t);
    } catch (const std::exception& e) {
        t.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > limit_seconds)
        t.require(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(limit_seconds) + " s");
    if (!t.ok)
        ++failures;
    std::printf("criterion %d: %s  %s  (%ld checks, %.2f s)%s%s\n", id, t.ok ? "PASS" : "FAIL", title.c_str(), t.checks,
                secs, t.ok ? "" : "  ", t.first_problem.c_str());
    std::fflush(stdout);
}

} // namespace

int main()
{
    criterion(1, "classical E_4, E_6 to n = 20, exact", 1.0, [](Tally& t) {
        t.add(checks::classical(4, 20), "k=4");
        t.add(checks::classical(6, 20), "k=6");
    });

    criterion(2, "G-sum closed forms equal brute force", 120.0, [](Tally& t) {
        bool prime_power_seen = false;
        for (const auto& c : corpus()) {
            auto opt = options(c);
            opt.n_count = 2;
            opt.gsum_c = 12;
            opt.gsum_pp = 27;
            t.add(checks::gsum_coprime(opt), name(c));
            const auto pp = checks::gsum_prime_power(opt);
            if (pp.status == Status::skipped)
                continue;
            prime_power_seen = true;
            t.add(pp, name(c));
        }
        t.require(prime_power_seen, "no instance of the prime-power case");
    });

    criterion(3, "exact coefficients match the c-series (c_max 300, 5 exponents, rel 1e-6)", 600.0, [](Tally& t) {
        for (const auto& c : corpus()) {
            auto opt = options(c);
            opt.c_max = 300;
            opt.exponents = 5;
            opt.tolerance = 1e-6L;
            t.add(checks::coefficient_oracle(opt), name(c));
        }
    });

    criterion(4, "representation numbers: multiplicativity and stability", 60.0, [](Tally& t) {
        for (const auto& c : corpus()) {
            auto opt = options(c);
            opt.rep_a_max = 64;
            t.add(checks::rep_multiplicative(opt), name(c));
            t.add(checks::rep_stability(opt, {2, 3, 5}), name(c));
        }
    });

    criterion(5, "untwisted tables rational, Galois action on twisted tables (chi mod 3, 4, 5)", 120.0, [](Tally& t) {
        std::vector<Corpus> lattices = corpus();
        lattices.push_back({{{0, 4}, {4, 0}}, 4});
        lattices.push_back({{{0, 4}, {4, 0}}, 5});
        lattices.push_back({{{0, 5}, {5, 0}}, 4});
        lattices.push_back({{{0, 5}, {5, 0}}, 5});
        for (const auto& c : lattices) {
            auto opt = options(c);
            t.add(checks::untwisted_rational(opt), name(c));
            const auto g = checks::galois(opt);
            if (g.status != Status::skipped)
                t.add(g, name(c));
        }
    });

    criterion(6, "Hecke eigen-relations, two smallest primes, depth 3", 300.0, [](Tally& t) {
        long non_eigen = 0;
        for (const auto& c : corpus()) {
            auto opt = options(c);
            opt.hecke_primes = 2;
            opt.hecke_depth = 3;
            t.add(checks::hecke_eigen(opt), name(c));
            const auto u = checks::hecke_untwisted(opt);
            t.add(u, name(c));
            if (u.status == Status::pass)
                non_eigen += std::stol(u.detail);
        }
        t.require(non_eigen > 0, "no untwisted instance with beta/r != beta");
    });

    criterion(7, "oldform decomposition vs direct definition and recombination", 300.0, [](Tally& t) {
        for (const auto& c : std::vector<Corpus>{{{{2, 0}, {0, -2}}, 4}, {{{0, 3}, {3, 0}}, 4}}) {
            auto opt = options(c);
            opt.table_depth = 3;
            opt.tolerance = 1e-6L;
            t.add(checks::oldform_oracle(opt), name(c));
            t.add(checks::oldform_recombination(opt), name(c));
        }
    });

    criterion(8, "lifting identity on diag(2,-2), H = <(1,1)>", 120.0, [](Tally& t) {
        const Corpus c{{{2, 0}, {0, -2}}, 4};
        auto opt = options(c);
        opt.table_depth = 3;
        opt.tolerance = 1e-6L;
        t.add(checks::lifting(opt, {opt.A->make({1, 1})}), name(c));
    });

    return failures == 0 ? 0 : 1;
}
