#include "weil/cli.hpp"

#include "doctest.h"

#include <sstream>

using namespace weil;
using namespace weil::cli;

namespace
{
Job job_from(const std::string& text)
{
    std::istringstream in(text);
    return resolve(parse_config(in));
}

std::filesystem::path fresh_dir(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("weil_cli_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}
} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("config parsing")
    {
        std::istringstream in("# U(3)\nlattice = [[0,3],[3,0]]\nweight_twice = 10\nbeta = [1, 0]\n"
                              "character = 3:[1]\nn_max = 5/2\nmode = exact\nprecision_bits = 53\n");
        const JobConfig cfg = parse_config(in);
        CHECK(cfg.lattice == IntMatrix{{0, 3}, {3, 0}});
        CHECK(cfg.weight_twice == 10);
        CHECK(cfg.n_max == make_rational(5, 2));
        CHECK(cfg.mode == Mode::exact);
        const Job job = resolve(cfg);
        CHECK(job.kappa == 5);
        CHECK(job.N_beta == 3);
        CHECK(job.chi.label() == "3:[1]");
    }

    TEST_CASE("field diagnostics")
    {
        auto message = [](const std::string& text) {
            try {
                job_from(text);
            } catch (const UsageError& e) {
                return std::string(e.what());
            }
            return std::string();
        };
        CHECK(message("lattice = [[2]]\nweight_twice = 7\nbeta = [1]\n").find("Q(beta) = 1/4") != std::string::npos);
        CHECK(message("lattice = [[2]]\nweight_twice = 8\n").find("weight_twice") != std::string::npos);
        CHECK(message("lattice = [[2]]\nweight_twice = 3\n").find("at least 5") != std::string::npos);
        CHECK(message("lattice = [[1]]\nweight_twice = 7\n").find("'lattice'") != std::string::npos);
        CHECK(message("lattice = [[0,3],[3,0]]\nweight_twice = 8\nbeta = [1,0]\ncharacter = 5:[1]\n").find("modulus") !=
              std::string::npos);
        CHECK(message("lattice = []\nweight_twice = 8\nprecision_bits = 200\n").find("precision_bits") !=
              std::string::npos);
        CHECK(message("lattice = []\nweight = 8\n").find("unknown key") != std::string::npos);
        CHECK(message("lattice = [[0,3],[3,0]]\nweight_twice = 8\nbeta_dual = [\"1/3\", 0]\n").empty());
    }

    TEST_CASE("classical table as JSON")
    {
        const auto doc = run_compute(job_from("lattice = []\nweight_twice = 8\nn_max = 3\nmode = exact\n"));
        const auto& t = doc["tables"][0];
        CHECK(t["mode_used"] == "exact");
        CHECK(t["coefficients"][0]["n"] == "1/1");
        CHECK(t["coefficients"][0]["value"]["coeffs"][0] == "480/1");
        CHECK(t["constant_term"][0]["value"]["coeffs"][0] == "2/1");
        CHECK(doc["metadata"]["kappa"] == 4);
    }

    TEST_CASE("all characters")
    {
        const auto doc =
            run_compute(job_from("lattice = [[0,3],[3,0]]\nweight_twice = 10\nbeta = [1,0]\ncharacter = all\nn_max = 1\n"));
        REQUIRE(doc["tables"].size() == 3);
        CHECK(doc["tables"][0]["vanishes"] == true);
        CHECK(doc["tables"][2]["character"] == "untwisted");
    }

    TEST_CASE("cache hits are byte identical")
    {
        const auto dir = fresh_dir("cache");
        const std::string text = "lattice = [[2,0],[0,-2]]\nweight_twice = 8\nbeta = [1,1]\nn_max = 2\ncache_dir = " +
                                 dir.string() + "\n";
        const auto cold = compute_document(job_from(text));
        CHECK_FALSE(cold.cache_hit);
        const auto warm = compute_document(job_from(text));
        CHECK(warm.cache_hit);
        CHECK(warm.text == cold.text);
        CHECK(warm.hash == cold.hash);
        CHECK(std::filesystem::exists(dir / "index.json"));
        CHECK(std::filesystem::exists(dir / (cold.hash + ".json")));

        // cache_dir does not enter the key
        auto other = job_from(text);
        other.config.cache_dir = "/elsewhere";
        CHECK(sha256_hex(job_key(other).dump()) == cold.hash);
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("output does not depend on the thread count")
    {
        const auto job = job_from("lattice = [[0,3],[3,0]]\nweight_twice = 8\nbeta = [0,1]\nn_max = 2\n");
        const std::string one = render(run_compute(job, 1));
        CHECK(render(run_compute(job, 4)) == one);
        CHECK(render(run_compute(job, 1)) == one);
    }

    TEST_CASE("numeric output")
    {
        const auto doc =
            run_compute(job_from("lattice = []\nweight_twice = 8\nn_max = 2\nmode = numeric\nprecision_bits = 30\n"));
        const auto& v = doc["tables"][0]["coefficients"][0]["value"];
        CHECK(std::abs(std::stold(v["re"].get<std::string>()) - 480) < 1e-6L);
        CHECK(doc["tables"][0]["mode_used"] == "numeric");
    }

    TEST_CASE("sha256")
    {
        CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
