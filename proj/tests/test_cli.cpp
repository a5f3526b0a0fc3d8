#include <catch2/catch.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include <fsig/job.hpp>

using namespace fsig;

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
};

CmdResult run_cmd(const std::string& args) {
    std::string cmd = std::string(FSIG_CLI_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult r;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace

TEST_CASE("variable spec parsing", "[cli]") {
    auto vars = parse_var_spec("x:3,y:3,z:2");
    REQUIRE(vars.size() == 3);
    CHECK(vars[0] == std::pair<std::string, long long>{"x", 3});
    CHECK(vars[2] == std::pair<std::string, long long>{"z", 2});
    CHECK_THROWS_AS(parse_var_spec("x"), error);
    CHECK_THROWS_AS(parse_var_spec("x:abc"), error);
    CHECK_THROWS_AS(parse_var_spec(""), error);
}

TEST_CASE("job files merge under flags", "[cli]") {
    nlohmann::json j = {
        {"prime", 3},
        {"variables", {{{"name", "x"}, {"weight", 2}}, {{"name", "y"}, {"weight", 2}}}},
        {"poly", "x^2+y^2"},
        {"e_max", 2},
    };
    JobSpec base = job_from_json(j);
    CHECK(base.prime == 3);
    CHECK(base.e_max == 2);
    REQUIRE(base.variables.size() == 2);

    JobSpec flags;
    flags.poly_text = "x*y";
    JobSpec merged = merge_jobs(base, flags);
    CHECK(merged.poly_text == "x*y");
    CHECK(merged.prime == 3);

    ValidatedJob vj = validate_job(merged);
    CHECK(vj.ring->prime == 3);
    REQUIRE(vj.poly.has_value());
    CHECK(weighted_degree(*vj.poly) == 4);

    JobSpec incomplete;
    CHECK_THROWS_AS(validate_job(incomplete), error);
}

TEST_CASE("bound command prints the exact invariants", "[cli]") {
    auto r = run_cmd("bound -p 5 -v x:3,y:3,z:2 -f x^2+y^2+z^3");
    CHECK(r.code == 0);
    CHECK(r.out.find("d = 2\n") != std::string::npos);
    CHECK(r.out.find("a = -2\n") != std::string::npos);
    CHECK(r.out.find("eprime = 1/3\n") != std::string::npos);
    CHECK(r.out.find("bound = 1/3\n") != std::string::npos);
    CHECK(r.out.find("series = (1 - t^6)/((1 - t^3)(1 - t^3)(1 - t^2))") !=
          std::string::npos);
}

TEST_CASE("bound command covers polynomial rings", "[cli]") {
    auto r = run_cmd("bound -p 3 -v x:1,y:1,z:1");
    CHECK(r.code == 0);
    CHECK(r.out.find("d = 3\n") != std::string::npos);
    CHECK(r.out.find("bound = 9/8\n") != std::string::npos);
}

TEST_CASE("exit codes match the contract", "[cli]") {
    CHECK(run_cmd("bound -p 3 -v x:1,y:1 -f x+y^2").code == 3);   // inhomogeneous
    CHECK(run_cmd("bound -p 4 -v x:1 -f x").code == 2);           // not a prime
    CHECK(run_cmd("bound -p 3 -v x:1 -f 'x+w'").code == 2);       // unknown variable
    CHECK(run_cmd("aq -p 3 -v x:1,y:1,z:1 -f x --budget 10").code == 5); // budget abort
    CHECK(run_cmd("aq -p 3 -v x:1,y:1,z:1").code == 2);           // missing equation
}

TEST_CASE("aq runs the oracle cross-check", "[cli]") {
    auto r = run_cmd("aq -p 3 -v x:2,y:2,z:2 -f x^2+y^2+z^2 -e 1 --oracle");
    CHECK(r.code == 0);
    CHECK(r.out.find("a_q=5") != std::string::npos);
    CHECK(r.out.find("oracle agrees") != std::string::npos);
}

TEST_CASE("fsignature prints one row per iterate", "[cli]") {
    auto r = run_cmd("fsignature -p 3 -v x:1,y:1,z:1 -f x -e 2");
    CHECK(r.code == 0);
    CHECK(r.out.find("e=1 q=3 a_q=9 ratio=1") != std::string::npos);
    CHECK(r.out.find("e=2 q=9 a_q=81 ratio=1") != std::string::npos);
}

TEST_CASE("classify prints the verdict first", "[cli]") {
    auto uniq = run_cmd("classify -p 7 -v x:1,y:1,z:1 -f x^3+y^3+z^3 -e 2");
    CHECK(uniq.code == 0);
    CHECK(uniq.out.rfind("UniqueSummand\n", 0) == 0);

    auto notfp = run_cmd("classify -p 5 -v x:1,y:1,z:1 -f x^3+y^3+z^3 -e 1");
    CHECK(notfp.code == 0);
    CHECK(notfp.out.rfind("NotFPure\n", 0) == 0);

    auto like = run_cmd("classify -p 3 -v x:2,y:2,z:2 -f x^2+y^2+z^2 -e 1");
    CHECK(like.code == 0);
    CHECK(like.out.rfind("FPureRationalLike\n", 0) == 0);
}

TEST_CASE("json output round-trips through the documented schema", "[cli]") {
    auto r = run_cmd("bound -p 3 -v x:2,y:2,z:2 -f x^2+y^2+z^2 --json");
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j.at("d") == 2);
    CHECK(j.at("a") == -2);
    CHECK(j.at("eprime") == "1/2");
    CHECK(j.at("bound") == "1/2");
    CHECK(nlohmann::json::parse(j.dump()) == j);

    auto aq = run_cmd("aq -p 3 -v x:2,y:2,z:2 -f x^2+y^2+z^2 --json");
    nlohmann::json ja = nlohmann::json::parse(aq.out);
    CHECK(ja.at("a_q") == 5);
    CHECK(ja.at("ratio") == "5/9");
    CHECK(ja.at("profile").size() > 0);
}

TEST_CASE("flags win over the job file", "[cli]") {
    std::string path = "cli_test_job.json";
    {
        std::ofstream out(path);
        out << R"({"prime":3,"variables":[{"name":"x","weight":1},{"name":"y","weight":1},{"name":"z","weight":1}],"poly":"x^3+y^3+z^3","e_max":1})";
    }
    auto from_file = run_cmd("classify -j " + path);
    CHECK(from_file.code == 0);
    CHECK(from_file.out.rfind("NotFPure\n", 0) == 0); // p = 3... Fermat degenerates

    auto overridden = run_cmd("classify -j " + path + " -p 7");
    CHECK(overridden.code == 0);
    CHECK(overridden.out.rfind("UniqueSummand\n", 0) == 0);
    std::remove(path.c_str());
}

TEST_CASE("approx flag only decorates", "[cli]") {
    auto plain = run_cmd("bound -p 5 -v x:3,y:3,z:2 -f x^2+y^2+z^3");
    auto approx = run_cmd("bound -p 5 -v x:3,y:3,z:2 -f x^2+y^2+z^3 --approx");
    CHECK(approx.out.find("bound = 1/3 (~0.333333)") != std::string::npos);
    CHECK(plain.out.find("~") == std::string::npos);
}
