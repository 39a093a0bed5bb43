#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;
using namespace hdcat::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;

    json report() const { return json::parse(out); }
};

Run run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "hdcat");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const char* name)
{
    return std::string(HDCAT_FIXTURE_DIR) + "/" + name;
}

std::string temp_path(const char* name)
{
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("validate")
{
    Run ok = run_cli({"validate", "--input", fixture("e2_nerve.json")});
    CHECK(ok.code == kExitOk);
    CHECK(ok.report().at("valid") == true);

    Run face = run_cli({"validate", "--input", fixture("corrupted_face.json")});
    CHECK(face.code == kExitPropertyFailure);
    CHECK(face.report().at("error").at("kind") == "IdentityViolation");
    CHECK_FALSE(face.report().at("error").at("location").get<std::string>().empty());

    Run segal = run_cli({"validate", "--input", fixture("non_segal.json")});
    CHECK(segal.code == kExitPropertyFailure);
    CHECK(segal.report().at("error").at("kind") == "SegalFailure");
}

TEST_CASE("check-hd and discretize")
{
    Run tower = run_cli({"check-hd", "--input", fixture("tower_321.json")});
    CHECK(tower.code == kExitOk);
    CHECK(tower.report().at("hd") == true);

    Run arrow = run_cli({"check-hd", "--input", fixture("arrow_nerve.json")});
    CHECK(arrow.code == kExitPropertyFailure);
    CHECK(arrow.report().at("failure").at("clause") == "equivalence_relation");

    Run d = run_cli({"discretize", "--input", fixture("tower_321.json")});
    CHECK(d.code == kExitOk);
    CHECK(d.report().at("discretization").size() == 1);
    CHECK(d.report().at("gamma").contains("maps"));
}

TEST_CASE("gamma from discretize is an equivalence")
{
    const std::string report = temp_path("hdcat_cli_gamma.json");
    Run d = run_cli({"discretize", "--input", fixture("tower_321.json"), "--output", report});
    REQUIRE(d.code == kExitOk);
    CHECK(d.out.empty());
    Run e = run_cli({"nequiv", "--input", report});
    CHECK(e.code == kExitOk);
    CHECK(e.report().at("equivalence") == true);
    CHECK(e.report().at("agree") == true);
    std::filesystem::remove(report);
}

TEST_CASE("nequiv on map files")
{
    Run yes = run_cli({"nequiv", "--input", fixture("map_to_point.json")});
    CHECK(yes.code == kExitOk);
    CHECK(yes.report().at("equivalence") == true);

    Run no = run_cli({"nequiv", "--input", fixture("map_fold.json")});
    CHECK(no.code == kExitPropertyFailure);
    CHECK(no.report().at("equivalence") == false);
    CHECK(no.report().at("agree") == true);

    CHECK(run_cli({"nequiv", "--input", fixture("tower_321.json")}).code == kExitInputError);
}

TEST_CASE("bspace")
{
    Run tower = run_cli({"bspace", "--input", fixture("tower_321.json"), "--level", "3"});
    CHECK(tower.code == kExitOk);
    CHECK(tower.report().at("zero_type_necessary") == true);
    CHECK(tower.report().at("level") == 3);

    Run z2 = run_cli({"bspace", "--input", fixture("z2.json")});
    CHECK(z2.code == kExitOk);
    CHECK(z2.report().at("hd") == false);
    CHECK(z2.report().at("h1").at("torsion") == json::array({"2"}));

    CHECK(run_cli({"bspace", "--input", fixture("z2.json"), "--level", "1"}).code == kExitInputError);
}

TEST_CASE("gen-tower is deterministic and guarded")
{
    Run a = run_cli({"gen-tower", "--seed", "7", "--n", "3", "--max-size", "4"});
    Run b = run_cli({"gen-tower", "--seed", "7", "--n", "3", "--max-size", "4"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.report().at("sets").size() == 4);

    Run big = run_cli({"gen-tower", "--n", "5"});
    CHECK(big.code == kExitInputError);
    CHECK(big.err.find("SizeExceeded") != std::string::npos);
}

TEST_CASE("roundtrip on generated towers and carriers")
{
    for (int seed = 1; seed <= 5; ++seed) {
        const std::string path = temp_path("hdcat_cli_tower.json");
        REQUIRE(run_cli({"gen-tower", "--seed", std::to_string(seed), "--n", "2", "--max-elements", "5000", "--output", path})
                    .code == kExitOk);
        Run r = run_cli({"roundtrip", "--input", path});
        CHECK(r.code == kExitOk);
        CHECK(r.report().at("cathd_eqr_cathd") == true);
        CHECK(r.report().at("eqr_cathd_eqr") == true);
        std::filesystem::remove(path);
    }
    CHECK(run_cli({"roundtrip", "--input", fixture("e2_nerve.json")}).code == kExitOk);
    CHECK(run_cli({"roundtrip", "--input", fixture("arrow_nerve.json")}).code == kExitPropertyFailure);
}

TEST_CASE("fuzz")
{
    Run r = run_cli({"fuzz", "--seed", "11", "--n", "2", "--count", "10"});
    CHECK(r.code == kExitOk);
    CHECK(r.report().at("failures").empty());
}

TEST_CASE("input errors")
{
    CHECK(run_cli({}).code == kExitInputError);
    CHECK(run_cli({"check-hd"}).code == kExitInputError);
    CHECK(run_cli({"check-hd", "--input", fixture("missing.json")}).code == kExitInputError);
    const std::string garbage = temp_path("hdcat_cli_garbage.json");
    std::ofstream(garbage) << "{ not json";
    Run g = run_cli({"validate", "--input", garbage});
    CHECK(g.code == kExitInputError);
    CHECK(g.err.find("ParseError") != std::string::npos);
    std::filesystem::remove(garbage);
    CHECK(run_cli({"--help"}).code == kExitOk);
}
