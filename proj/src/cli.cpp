#include "weil/cli.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace weil::cli
{

using nlohmann::json;

namespace
{

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void field_error(const std::string& field, const std::string& msg)
{
    throw UsageError("config field '" + field + "': " + msg);
}

json parse_json_value(const std::string& field, const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error&) {
        field_error(field, "expected a JSON array, got '" + text + "'");
    }
}

int64_t as_int(const std::string& field, const json& v)
{
    if (!v.is_number_integer())
        field_error(field, "expected an integer, got " + v.dump());
    return v.get<int64_t>();
}

Rational as_rational(const std::string& field, const json& v)
{
    try {
        if (v.is_number_integer())
            return make_rational(v.get<int64_t>());
        if (v.is_string())
            return parse_rational(v.get<std::string>());
    } catch (const std::exception&) {
    }
    field_error(field, "expected an integer or \"num/den\", got " + v.dump());
}

std::string strip_quotes(const std::string& s)
{
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return s.substr(1, s.size() - 2);
    return s;
}

json vector_json(const IntVector& v) { return json(v); }

json value_json(const CycNumber& c)
{
    const CycNumber m = c.minimal();
    json coeffs = json::array();
    for (const auto& q : m.coefficients())
        coeffs.push_back(to_string(q));
    return {{"conductor", m.conductor()}, {"coeffs", coeffs}};
}

std::string format_real(long double x, int bits)
{
    if (bits < 64 && x != 0) {
        int e = 0;
        const long double f = std::frexp(x, &e);
        x = std::ldexp(std::nearbyint(std::ldexp(f, bits)), e - bits);
    }
    const int digits = static_cast<int>(std::ceil(bits * std::log10(2.0))) + 1;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Lg", digits, x);
    return buf;
}

json value_json(const NumericValue& v, int bits)
{
    long double err = v.error;
    if (bits < 64)
        err += std::ldexp(std::abs(v.value), -bits);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3Lg", err);
    json out = {{"re", format_real(v.value.real(), bits)}, {"im", format_real(v.value.imag(), bits)}, {"err", buf}};
    if (!v.bound_proven)
        out["err_proven"] = false;
    return out;
}

template <class V, class F>
json table_json(const FourierTable<V>& t, F value)
{
    const DiscriminantForm& A = t.form();
    json constant = json::array(), records = json::array();
    for (const auto& [key, v] : t.entries()) {
        const json gamma = vector_json(A.elements()[key.gamma].coords);
        if (key.n == 0)
            constant.push_back({{"gamma", gamma}, {"value", value(v)}});
        else
            records.push_back({{"gamma", gamma}, {"n", to_string(key.n)}, {"value", value(v)}});
    }
    return {{"constant_term", constant}, {"coefficients", records}};
}

json result_json(const SeriesResult& r, int bits)
{
    json out = r.exact ? table_json(r.exact_table, [](const CycNumber& c) { return value_json(c); })
                       : table_json(r.numeric_table, [bits](const NumericValue& v) { return value_json(v, bits); });
    out["mode_used"] = r.exact ? "exact" : "numeric";
    if (!r.fallback_reason.empty())
        out["fallback_reason"] = r.fallback_reason;
    return out;
}

} // namespace

JobConfig parse_config(std::istream& in)
{
    JobConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "lattice") {
            const json v = parse_json_value(key, val);
            if (!v.is_array())
                field_error(key, "expected a nested array of integer rows");
            for (const auto& row : v) {
                if (!row.is_array())
                    field_error(key, "expected a nested array of integer rows");
                IntVector r;
                for (const auto& x : row)
                    r.push_back(as_int(key, x));
                cfg.lattice.push_back(std::move(r));
            }
        } else if (key == "weight_twice") {
            cfg.weight_twice = as_int(key, parse_json_value(key, val));
        } else if (key == "beta") {
            const json v = parse_json_value(key, val);
            if (!v.is_array())
                field_error(key, "expected an integer array");
            IntVector b;
            for (const auto& x : v)
                b.push_back(as_int(key, x));
            cfg.beta = std::move(b);
        } else if (key == "beta_dual") {
            const json v = parse_json_value(key, val);
            if (!v.is_array())
                field_error(key, "expected an array of rationals");
            std::vector<Rational> b;
            for (const auto& x : v)
                b.push_back(as_rational(key, x));
            cfg.beta_dual = std::move(b);
        } else if (key == "character") {
            cfg.character = strip_quotes(val);
        } else if (key == "n_max") {
            try {
                cfg.n_max = parse_rational(strip_quotes(val));
            } catch (const std::exception&) {
                field_error(key, "expected a rational, got '" + val + "'");
            }
        } else if (key == "mode") {
            try {
                cfg.mode = parse_mode(strip_quotes(val));
            } catch (const std::exception&) {
                field_error(key, "expected exact, numeric or auto, got '" + val + "'");
            }
        } else if (key == "precision_bits") {
            cfg.precision_bits = static_cast<int>(as_int(key, parse_json_value(key, val)));
        } else if (key == "cache_dir") {
            cfg.cache_dir = strip_quotes(val);
        } else {
            throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

JobConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read config file " + path.string());
    return parse_config(in);
}

Job resolve(const JobConfig& cfg)
{
    Job job;
    job.config = cfg;
    try {
        job.A = std::make_shared<const DiscriminantForm>(Lattice(cfg.lattice));
    } catch (const InvalidLattice& e) {
        field_error("lattice", e.what());
    }
    const Lattice& lat = job.A->lattice();
    if (!cfg.weight_twice)
        field_error("weight_twice", "missing");
    const int64_t w = *cfg.weight_twice;
    if (w < 5)
        field_error("weight_twice", "2k = " + std::to_string(w) + " must be at least 5");
    if ((w - lat.rank()) % 2 != 0)
        field_error("weight_twice", "2k = " + std::to_string(w) + " must have the parity of the rank " +
                                        std::to_string(lat.rank()));
    job.k = make_rational(w, 2);
    job.kappa = kappa_for(lat, job.k);

    if (cfg.beta && cfg.beta_dual)
        field_error("beta", "give either beta or beta_dual, not both");
    job.beta = job.A->zero();
    if (cfg.beta) {
        if (cfg.beta->size() != job.A->divisors().size())
            field_error("beta", "A has " + std::to_string(job.A->divisors().size()) + " generators, got " +
                                    std::to_string(cfg.beta->size()) + " coordinates");
        job.beta = job.A->make(*cfg.beta);
    } else if (cfg.beta_dual) {
        if (static_cast<int>(cfg.beta_dual->size()) != lat.rank())
            field_error("beta_dual", "expected " + std::to_string(lat.rank()) + " entries");
        DualVector x;
        BigInt den = 1;
        for (const auto& q : *cfg.beta_dual)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
        x.den = to_int64(den);
        for (const auto& q : *cfg.beta_dual)
            x.num.push_back(to_int64(BigInt(q.get_num() * (den / q.get_den()))));
        x.reduce();
        try {
            job.beta = job.A->project(x);
        } catch (const std::exception&) {
            field_error("beta_dual", "not a vector of the dual lattice");
        }
    }
    if (!job.A->is_isotropic(job.beta))
        field_error(cfg.beta_dual ? "beta_dual" : "beta", "Q(beta) = " + to_string(job.A->q_value(job.beta)) +
                                                              " mod 1, beta must be isotropic");
    job.N_beta = job.A->order_of(job.beta);

    if (cfg.character == "all") {
        job.all_characters = true;
        job.chi = DirichletCharacter::trivial(job.N_beta);
    } else if (cfg.character.empty()) {
        job.chi = DirichletCharacter::trivial(job.N_beta);
    } else {
        try {
            job.chi = DirichletCharacter::parse(cfg.character);
        } catch (const std::exception& e) {
            field_error("character", "cannot parse '" + cfg.character + "' as q:[e1,...]");
        }
        if (job.chi.modulus() != job.N_beta)
            field_error("character", "modulus " + std::to_string(job.chi.modulus()) + " differs from N_beta = " +
                                         std::to_string(job.N_beta));
    }
    if (cfg.n_max < 0)
        field_error("n_max", "must be non-negative");
    if (cfg.precision_bits < 24 || cfg.precision_bits > 64)
        field_error("precision_bits", std::to_string(cfg.precision_bits) + " outside the supported range 24..64");
    return job;
}

json job_key(const Job& job)
{
    const auto& cfg = job.config;
    return {{"format", 1},
            {"lattice", cfg.lattice},
            {"weight_twice", *cfg.weight_twice},
            {"beta", job.beta.coords},
            {"character", job.all_characters ? "all" : job.chi.label()},
            {"n_max", to_string(cfg.n_max)},
            {"mode", to_string(cfg.mode)},
            {"precision_bits", cfg.precision_bits}};
}

std::string sha256_hex(const std::string& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

json run_compute(const Job& job, int threads)
{
    const DiscriminantForm& A = *job.A;
    const Lattice& lat = A.lattice();
    const int bits = job.config.precision_bits;
    json doc;
    doc["metadata"] = {{"lattice", lat.gram()},
                       {"discriminant_order", A.size()},
                       {"discriminant_group", A.divisors()},
                       {"signature", {lat.b_plus(), lat.b_minus()}},
                       {"weight", to_string(job.k)},
                       {"kappa", job.kappa},
                       {"beta", job.beta.coords},
                       {"N_beta", job.N_beta},
                       {"character", job.all_characters ? "all" : job.chi.label()},
                       {"n_max", to_string(job.config.n_max)},
                       {"mode", to_string(job.config.mode)},
                       {"precision_bits", bits}};
    std::vector<DirichletCharacter> chars;
    if (job.all_characters)
        chars = DirichletCharacter::all(job.N_beta);
    else
        chars.push_back(job.chi);

    json tables = json::array();
    for (const auto& chi : chars) {
        const auto spec = EisensteinSpec::make(job.A, job.beta, job.k, chi);
        json t = result_json(compute_twisted(spec, job.config.n_max, job.config.mode, threads), bits);
        t["character"] = chi.label();
        t["vanishes"] = spec.vanishes();
        tables.push_back(std::move(t));
    }
    if (job.all_characters) {
        json t = result_json(compute_untwisted(job.A, job.beta, job.k, job.config.n_max, job.config.mode, threads), bits);
        t["character"] = "untwisted";
        tables.push_back(std::move(t));
    }
    doc["tables"] = std::move(tables);
    return doc;
}

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::optional<std::string> Cache::load(const std::string& hash) const
{
    std::lock_guard lock(mutex_);
    std::ifstream in(dir_ / (hash + ".json"), std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace
{
void write_atomic(const std::filesystem::path& path, const std::string& text)
{
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp);
        out << text;
    }
    std::filesystem::rename(tmp, path);
}
} // namespace

void Cache::store(const std::string& hash, const std::string& text, const json& summary)
{
    std::lock_guard lock(mutex_);
    std::filesystem::create_directories(dir_);
    write_atomic(dir_ / (hash + ".json"), text);
    json index = json::object();
    const auto index_path = dir_ / "index.json";
    if (std::ifstream in(index_path); in) {
        try {
            index = json::parse(in);
        } catch (const json::parse_error&) {
            index = json::object();
        }
    }
    index[hash] = summary;
    write_atomic(index_path, index.dump(2) + "\n");
}

ComputeOutcome compute_document(const Job& job, int threads)
{
    const json key = job_key(job);
    ComputeOutcome out;
    out.hash = sha256_hex(key.dump());
    std::string dir = job.config.cache_dir;
    if (dir.empty())
        if (const char* env = std::getenv(cache_env))
            dir = env;
    std::optional<Cache> cache;
    if (!dir.empty()) {
        cache.emplace(dir);
        if (auto hit = cache->load(out.hash)) {
            out.text = std::move(*hit);
            out.cache_hit = true;
            return out;
        }
    }
    out.text = render(run_compute(job, threads));
    if (cache)
        cache->store(out.hash, out.text, key);
    return out;
}

VerifyOptions verify_options(const Job& job, int threads)
{
    VerifyOptions opt;
    opt.A = job.A;
    opt.k = job.k;
    opt.threads = threads;
    return opt;
}

} // namespace weil::cli
