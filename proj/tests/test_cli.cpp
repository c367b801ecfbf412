#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "boxzeta/cli.hpp"
#include "tmpdir.hpp"

namespace {
struct Result {
    int code;
    std::string out;
    std::string err;
};
Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = boxzeta::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}
}  // namespace

TEST_CASE("verify exits 0 with zero residuals") {
    auto r = run({"verify", "--pmax", "97"});
    CHECK(r.code == 0);
    CHECK(r.out.find("all residuals zero") != std::string::npos);
    auto j = nlohmann::json::parse(run({"--format", "json", "verify", "--pmax", "97"}).out);
    CHECK(j["success"] == true);
}

TEST_CASE("verify with the alternative convention exits 2") {
    auto r = run({"verify", "--pmax", "97", "--h16-inert", "minus2p"});
    CHECK(r.code == 2);
}

TEST_CASE("ap and count examples") {
    auto r = run({"ap", "--form", "f32", "--prime", "13"});
    CHECK(r.code == 0);
    CHECK(r.out == "6\n");
    auto c = run({"--format", "json", "count", "--variety", "surface", "--prime", "3", "--brute"});
    CHECK(c.code == 0);
    auto j = nlohmann::json::parse(c.out);
    CHECK(j["count"] == 24);
    CHECK(j["method"] == "brute");
    CHECK(run({"count", "--variety", "singular", "--prime", "7"}).out.rfind("24", 0) == 0);
    CHECK(run({"gpair", "--prime", "11"}).out == "{6i, -6i}\n");
}

TEST_CASE("bad prime and usage errors exit 1") {
    auto r = run({"count", "--variety", "surface", "--prime", "2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("bad prime excluded") != std::string::npos);
    CHECK(run({"ap", "--form", "f32", "--prime", "15"}).code == 1);
    CHECK(run({"ap", "--form", "g64", "--prime", "3"}).code == 1);
    CHECK(run({"count", "--variety", "plane", "--prime", "3"}).code == 1);
    CHECK(run({"--format", "xml", "verify"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("fit reports rank deficiency on ten primes") {
    auto ok = run({"fit", "--pmax", "97"});
    CHECK(ok.code == 0);
    auto bad = run({"fit", "--pmax", "31", "--fit-max", "31"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("rank 6") != std::string::npos);
}

TEST_CASE("report JSON is identical with a cold cache, a warm cache and no cache") {
    TempDir tmp;
    const std::string dir = tmp.path.string();
    auto cold = run({"--format", "json", "--cache-dir", dir, "report", "--pmax", "97"});
    auto warm = run({"--format", "json", "--cache-dir", dir, "--jobs", "3", "report", "--pmax", "97"});
    auto none = run({"--format", "json", "report", "--pmax", "97"});
    CHECK(cold.code == 0);
    CHECK(cold.out == warm.out);
    CHECK(cold.out == none.out);
    auto j = nlohmann::json::parse(cold.out);
    CHECK(j["exceptional_hypotheses_disagree"] == true);
    CHECK(j["l_function_degrees"]["s-paper"] == 78);
    CHECK(j["picard_splits"]["permutation"]["trivial"] == 46);
}

TEST_CASE("report table names the discrepancy") {
    auto r = run({"report"});
    CHECK(r.code == 0);
    CHECK(r.out.find("DISCREPANCY") != std::string::npos);
}

TEST_CASE("export and euler") {
    TempDir tmp;
    const auto path = (tmp.path / "t.csv").string();
    CHECK(run({"export", "--pmax", "31", "--output", path}).code == 0);
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("# excluded: p=2", 0) == 0);
    auto e = run({"--format", "json", "euler", "--preset", "s-perm", "--pmax", "13"});
    CHECK(e.code == 0);
    auto j = nlohmann::json::parse(e.out);
    CHECK(j["degree"] == 78);
    CHECK(j["all_pure"] == true);
    CHECK(run({"euler", "--preset", "bogus"}).code == 1);
}

TEST_CASE("qexp output") {
    auto r = run({"qexp", "--form", "g64", "--limit", "33"});
    CHECK(r.code == 0);
    CHECK(r.out.find("a_9 = -1") != std::string::npos);
    CHECK(r.out.find("a_33 = undetermined") != std::string::npos);
    CHECK(r.out.find("a_2 = excluded") != std::string::npos);
}
