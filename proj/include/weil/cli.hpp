#pragma once

#include "weil/eisenstein.hpp"
#include "weil/verify.hpp"

#include "json.hpp"

#include <filesystem>
#include <istream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

namespace weil::cli
{

// bad command line or config; exit code 1
struct UsageError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_verify_failed = 2;
constexpr int exit_budget = 3;

constexpr const char* cache_env = "EISENSTEIN_CACHE_DIR";

struct JobConfig
{
    IntMatrix lattice;
    std::optional<int64_t> weight_twice;
    std::optional<IntVector> beta;                 // coordinates in A
    std::optional<std::vector<Rational>> beta_dual; // vector of L', projected to A
    std::string character;                         // label, "all", or empty for the trivial character mod N_beta
    Rational n_max = 3;
    Mode mode = Mode::automatic;
    int precision_bits = 64;
    std::string cache_dir;
};

// key = value lines, '#' starts a comment; arrays are JSON
JobConfig parse_config(std::istream& in);
JobConfig load_config(const std::filesystem::path& path);

// validated job
struct Job
{
    JobConfig config;
    std::shared_ptr<const DiscriminantForm> A;
    Rational k;
    int kappa = 0;
    DiscElement beta;
    int64_t N_beta = 1;
    bool all_characters = false;
    DirichletCharacter chi;
};

// throws UsageError naming the offending field
Job resolve(const JobConfig& cfg);

// canonical description of the job without cache_dir
nlohmann::json job_key(const Job& job);
std::string sha256_hex(const std::string& data);

nlohmann::json run_compute(const Job& job, int threads = 1);
std::string render(const nlohmann::json& doc);

// one <hash>.json per document plus index.json
class Cache
{
public:
    explicit Cache(std::filesystem::path dir);

    const std::filesystem::path& dir() const { return dir_; }
    std::optional<std::string> load(const std::string& hash) const;
    void store(const std::string& hash, const std::string& text, const nlohmann::json& summary);

private:
    std::filesystem::path dir_;
    mutable std::mutex mutex_;
};

struct ComputeOutcome
{
    std::string text;
    std::string hash;
    bool cache_hit = false;
};

// cache_dir from the config, else the environment, else no cache
ComputeOutcome compute_document(const Job& job, int threads = 1);

VerifyOptions verify_options(const Job& job, int threads = 1);

} // namespace weil::cli
