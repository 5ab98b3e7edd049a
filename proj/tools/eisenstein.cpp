#include "weil/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace weil;
using namespace weil::cli;

namespace
{

int run_compute_cmd(const std::string& config, const std::string& mode, const std::string& nmax, int precision,
                    const std::string& cache, int threads)
{
    JobConfig cfg = load_config(config);
    if (!mode.empty()) {
        try {
            cfg.mode = parse_mode(mode);
        } catch (const std::exception&) {
            throw UsageError("--mode: expected exact, numeric or auto, got '" + mode + "'");
        }
    }
    if (!nmax.empty()) {
        try {
            cfg.n_max = parse_rational(nmax);
        } catch (const std::exception&) {
            throw UsageError("--nmax: expected a rational, got '" + nmax + "'");
        }
    }
    if (precision > 0)
        cfg.precision_bits = precision;
    if (!cache.empty())
        cfg.cache_dir = cache;
    const Job job = resolve(cfg);
    const ComputeOutcome out = compute_document(job, threads);
    std::cout << out.text;
    std::cerr << (out.cache_hit ? "cache hit " : "computed ") << out.hash << "\n";
    return exit_ok;
}

int run_verify_cmd(const std::string& config, const std::string& suite, int threads)
{
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw UsageError("--suite: unknown suite '" + suite + "'");
    const Job job = resolve(load_config(config));
    const VerifyReport report = run_suite(suite, verify_options(job, threads));
    for (const auto& r : report.results) {
        std::cout << to_string(r.status) << "  " << r.suite << ": " << r.property << " (" << r.checks << " checks)";
        if (!r.detail.empty())
            std::cout << "  " << r.detail;
        std::cout << "\n";
    }
    return report.failed() ? exit_verify_failed : exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fourier coefficients of twisted vector-valued Eisenstein series"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);

    std::string config, mode, nmax, cache, suite;
    int precision = 0;
    auto* compute = app.add_subcommand("compute", "compute a coefficient table as JSON");
    compute->add_option("--config", config, "job config file")->required()->check(CLI::ExistingFile);
    compute->add_option("--mode", mode, "exact, numeric or auto");
    compute->add_option("--nmax", nmax, "largest n, a rational");
    compute->add_option("--precision", precision, "mantissa bits for numeric output (24..64)");
    compute->add_option("--cache", cache, std::string("cache directory, default $") + cache_env);

    auto* verify = app.add_subcommand("verify", "run the oracle suites");
    verify->add_option("--config", config, "job config file")->required()->check(CLI::ExistingFile);
    verify->add_option("--suite", suite, "repnums, gsums, coefficients, hecke, oldforms, galois or all")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*compute)
            return run_compute_cmd(config, mode, nmax, precision, cache, threads);
        return run_verify_cmd(config, suite, threads);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return exit_budget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
