#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "liesym/reference_tables.hpp"

using liesym::cli::run;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("liesym_cli_test_" + name);
}

}  // namespace

TEST_CASE("count") {
    const auto r = call({"count", "--n", "1..4"});
    CHECK(r.code == 0);
    CHECK(r.out == "n  integer  fractional\n1  7  4\n2  10  6\n3  14  9\n4  19  13\n");
    const auto j = nlohmann::json::parse(call({"count", "--n", "5..8", "--format", "json"}).out);
    CHECK(j.at("rows").size() == 4);
    CHECK(j.at("rows")[3].at("integer") == 49);
    CHECK(j.at("rows")[3].at("fractional") == 39);
    CHECK(j.at("rows")[3].at("integer_catalog") == 49);
    CHECK(call({"count", "--n", "3"}).out == "n  integer  fractional\n3  14  9\n");
}

TEST_CASE("usage errors exit 2") {
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"count", "--n", "4..1"}).code == 2);
    CHECK(call({"count", "--n", "x"}).code == 2);
    CHECK(call({"count", "--n", "0"}).code == 2);
    CHECK(call({"verify", "--alpha", "1.5"}).code == 2);
    CHECK(call({"verify", "--grid", "8"}).code == 2);
    CHECK(call({"gen", "--format", "yaml"}).code == 2);
    CHECK(call({"gen", "--regime", "caputo"}).code == 2);
    CHECK(call({"count", "--help"}).code == 0);
}

TEST_CASE("I/O errors exit 3") {
    CHECK(call({"count", "--fixtures", "/nonexistent/fixtures.json"}).code == 3);
    const auto bad = temp_file("bad.json");
    std::ofstream(bad) << "{ not json";
    CHECK(call({"brackets", "--fixtures", bad.string()}).code == 3);
    std::ofstream(bad) << "[]";
    CHECK(call({"brackets", "--fixtures", bad.string()}).code == 3);
    CHECK(call({"count", "--output", "/nonexistent/dir/out.txt"}).code == 3);
    std::filesystem::remove(bad);
}

TEST_CASE("a corrupted fixture makes the regression fail") {
    auto j = liesym::to_json(liesym::default_fixtures());
    const auto good = temp_file("good.json"), bad = temp_file("corrupt.json");
    std::ofstream(good) << j.dump();
    CHECK(call({"brackets", "--n", "1", "--fixtures", good.string()}).code == 0);
    // [G1, G2] = -G6 becomes +G6
    for (auto& t : j.at("brackets"))
        if (t.at("id") == "integer-1")
            for (auto& e : t.at("entries"))
                if (e.at("a") == "G1" && e.at("b") == "G2") e["value"] = "G6";
    std::ofstream(bad) << j.dump();
    const auto r = call({"brackets", "--n", "1", "--fixtures", bad.string()});
    CHECK(r.code == 1);
    CHECK(r.out.find("NOT allow-listed") != std::string::npos);
    CHECK(call({"verify", "--n", "1", "--regime", "integer", "--catalog", bad.string()}).code == 1);
    std::filesystem::remove(good);
    std::filesystem::remove(bad);
}

TEST_CASE("verify") {
    const auto r = call({"verify", "--n", "2", "--regime", "integer"});
    CHECK(r.code == 0);
    CHECK(r.out.find("determining residuals: 10/10 zero") != std::string::npos);
    CHECK(r.out.find("conservation divergences: 10/10 zero") != std::string::npos);
    CHECK(r.out.find("6/6 checks passed") != std::string::npos);
}

TEST_CASE("verify json is deterministic") {
    const std::vector<std::string> args{"verify", "--n", "1..2", "--regime", "integer", "--format", "json", "--seed", "5"};
    const auto a = call(args), b = call(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j.at("pass") == true);
    CHECK(j.at("config").at("seed") == 5);
    const auto path = temp_file("verify.json");
    auto with_out = args;
    with_out.insert(with_out.end(), {"--output", path.string()});
    CHECK(call(with_out).out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == a.out);
    std::filesystem::remove(path);
}

TEST_CASE("brackets for the fractional line") {
    const auto r = call({"brackets", "--n", "1", "--regime", "fractional"});
    CHECK(r.code == 0);
    CHECK(r.out.find("[G01, G02] = alpha*G01") != std::string::npos);
    CHECK(r.out.find("printed 0, computed alpha*G01 (allow-listed)") != std::string::npos);
    const auto tex = call({"brackets", "--n", "1", "--format", "latex"});
    CHECK(tex.out.find("\\begin{tabular}") != std::string::npos);
}

TEST_CASE("gen, algebra and conserve") {
    const auto g = nlohmann::json::parse(call({"gen", "--n", "1", "--regime", "both", "--format", "json"}).out);
    CHECK(g.at("catalogs").size() == 2);
    CHECK(g.at("catalogs")[0].at("generators").size() == 7);
    CHECK(call({"gen", "--n", "1"}).out.find("G5") != std::string::npos);

    const auto a = call({"algebra", "--n", "1..4"});
    CHECK(a.code == 0);
    CHECK(a.out.find("so(4)") != std::string::npos);
    CHECK(a.out.find("no match") == std::string::npos);

    const auto c = nlohmann::json::parse(call({"conserve", "--n", "1", "--regime", "fractional", "--format", "json"}).out);
    const auto& vecs = c.at("results")[0].at("vectors");
    CHECK(vecs.size() == 4);
    CHECK(vecs[2].at("symmetry") == "G03");
    CHECK(vecs[2].at("paper_diff").size() == 5);
    const auto tex = call({"conserve", "--n", "1", "--format", "latex"});
    CHECK(tex.out.find("\\begin{eqnarray}") != std::string::npos);
    // no printed tables beyond n = 4: the report is empty, not absent
    const auto five = nlohmann::json::parse(call({"conserve", "--n", "5", "--format", "json"}).out);
    CHECK(five.at("results")[0].at("vectors")[0].at("paper_diff").empty());
}

TEST_CASE("jet order override") {
    setenv("LIESYM_MAX_JET", "banana", 1);
    CHECK(call({"verify", "--n", "1", "--regime", "integer"}).code == 2);
    setenv("LIESYM_MAX_JET", "6", 1);
    const auto j = nlohmann::json::parse(call({"verify", "--n", "1", "--regime", "integer", "--format", "json"}).out);
    CHECK(j.at("config").at("max_jet") == 6);
    CHECK(j.at("pass") == true);
    unsetenv("LIESYM_MAX_JET");
}
