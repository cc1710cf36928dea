#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ocs/cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string specs = OCS_SPEC_DIR;

struct Result {
    int code;
    std::string out, err;
    json parsed() const { return json::parse(out); }
    json error() const { return json::parse(err); }
};

Result call(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = ocs::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    fs::path dir = fs::temp_directory_path() / "ocs-cli-test";
    fs::create_directories(dir);
    return dir / name;
}

void write(const fs::path& p, const std::string& text)
{
    std::ofstream(p) << text;
}

} // namespace

TEST_CASE("dowling build and count")
{
    Result r = call({"dowling", "build", "--spec", specs + "/typeC.json", "--n", "2"});
    REQUIRE(r.code == 0);
    json j = r.parsed();
    CHECK(j["n"] == 6);
    CHECK(j["elements"].size() == 6);
    CHECK(j["degree"] == 2);

    Result c = call({"dowling", "count", "--spec", specs + "/toricD-poset.json", "--n", "3"});
    REQUIRE(c.code == 0);
    CHECK(c.parsed()["enumerated"] == 19);
    CHECK(c.parsed()["match"] == true);
}

TEST_CASE("dowling interval")
{
    Result r = call({"dowling", "interval", "--spec", specs + "/typeC.json", "--element", "0:1,1:2|Z{3:0}"});
    REQUIRE(r.code == 0);
    json j = r.parsed();
    CHECK(j["isomorphic"] == true);
    CHECK(j["intervalSize"] == j["productSize"]);

    Result bad = call({"dowling", "interval", "--spec", specs + "/typeC.json", "--element", "0:1,5:2|Z{}"});
    CHECK(bad.code == 1);
    CHECK(bad.error().contains("error"));
}

TEST_CASE("poset commands on a built poset")
{
    fs::path p = scratch("typeC2.json");
    fs::remove(p);
    REQUIRE(call({"dowling", "build", "--spec", specs + "/typeC.json", "--n", "2", "--out", p.string()}).code == 0);
    REQUIRE(fs::exists(p));

    Result m = call({"poset", "mobius", "--in", p.string(), "--no-cache"});
    REQUIRE(m.code == 0);
    CHECK(m.parsed()["mobius"].back() == 3);

    Result w = call({"poset", "whitney", "--in", p.string(), "--no-cache"});
    REQUIRE(w.code == 0);
    CHECK(w.parsed()["concentrated"] == true);
    CHECK(w.parsed()["philipHall"] == true);

    Result h = call({"poset", "homology", "--in", p.string(), "--format", "csv", "--no-cache"});
    REQUIRE(h.code == 0);
    CHECK(h.out == "degree,rank\n0,3\n");

    Result d = call({"rep", "decompose", "--poset", p.string(), "--action", "sym"});
    REQUIRE(d.code == 0);
    CHECK(d.parsed()["whitney"].size() == 3);
}

TEST_CASE("cache hits agree with recomputation")
{
    fs::path dir = scratch("cache");
    fs::remove_all(dir);
    fs::create_directories(dir);
    ::setenv("OCS_CACHE", dir.c_str(), 1);

    fs::path p = scratch("q4.json");
    REQUIRE(call({"dowling", "build", "--spec", specs + "/partition.json", "--n", "4", "--out", p.string()}).code == 0);
    for (std::string kind : {"mobius", "homology", "whitney"}) {
        Result first = call({"poset", kind, "--in", p.string()});
        Result second = call({"poset", kind, "--in", p.string()});
        Result fresh = call({"poset", kind, "--in", p.string(), "--no-cache"});
        REQUIRE(first.code == 0);
        CHECK(first.out == second.out);
        CHECK(first.out == fresh.out);
    }
    CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == 3);
    ::unsetenv("OCS_CACHE");
}

TEST_CASE("config commands")
{
    Result e = call({"config", "euler", "--spec", specs + "/rp2free.json", "--nmax", "6", "--check-closed-form"});
    REQUIRE(e.code == 0);
    json chi = e.parsed()["chi"];
    CHECK(chi[0] == "1");
    for (std::size_t n = 1; n < chi.size(); ++n)
        CHECK(chi[n] == "0");

    Result b = call({"config", "betti", "--spec", specs + "/R2.json", "--n", "3", "--format", "csv"});
    REQUIRE(b.code == 0);
    CHECK(b.out == "degree,rank\n4,2\n5,3\n6,1\n");

    Result t = call({"config", "e1", "--spec", specs + "/R1.json", "--nmax", "3"});
    REQUIRE(t.code == 0);
    CHECK(t.parsed()["nmax"] == 3);
}

TEST_CASE("stability and representation commands")
{
    Result s = call({"stability", "report", "--spec", specs + "/R3.json", "--steps", "2", "--verify", "--nmax", "6", "--j", "2"});
    REQUIRE(s.code == 0);
    json j = s.parsed();
    CHECK(j["steps"][0]["classification"] == "absolute");
    CHECK(j["steps"][1]["factor"] == "main(2,3)");
    CHECK(j["steps"][1]["epsilon"] == "1/3");
    CHECK(j.contains("verification"));

    Result r = call({"rep", "stability", "--spec", specs + "/R2.json", "--rank", "1", "--window", "4..6"});
    REQUIRE(r.code == 0);
    CHECK(r.parsed()["stable"] == true);
    CHECK(r.parsed()["firstViolation"].is_null());
}

TEST_CASE("errors and exit codes")
{
    fs::path bad = scratch("bad.json");
    write(bad, "{\"betti\": [0, 1], \"iAcyclic\": true, \"colour\": 3}");
    fs::path out = scratch("never.json");
    fs::remove(out);

    Result unknown = call({"config", "betti", "--spec", bad.string(), "--n", "2", "--out", out.string()});
    CHECK(unknown.code == 2);
    CHECK(unknown.error()["error"]["code"] == "malformed_input");
    CHECK_FALSE(fs::exists(out));
    CHECK_FALSE(fs::exists(out.string() + ".partial"));

    write(bad, "{not json");
    CHECK(call({"config", "betti", "--spec", bad.string(), "--n", "2"}).code == 2);
    CHECK(call({"config", "betti", "--spec", scratch("missing.json").string(), "--n", "2"}).code == 2);

    write(bad, "{\"name\": \"x\", \"betti\": [0, 1], \"iAcyclic\": false}");
    Result domain = call({"config", "betti", "--spec", bad.string(), "--n", "2", "--out", out.string()});
    CHECK(domain.code == 1);
    CHECK(domain.error()["error"]["code"] == "not_i_acyclic");
    CHECK_FALSE(fs::exists(out));

    CHECK(call({"dowling", "frobnicate"}).code == 2);
    CHECK(call({"config", "betti", "--spec", specs + "/R2.json"}).code == 2);
    CHECK(call({"config", "betti", "--spec", specs + "/R2.json", "--n", "2", "--format", "xml"}).code == 2);

    Result noaction = call({"rep", "decompose", "--poset", specs + "/../../data/specs/typeC.json"});
    CHECK(noaction.code != 0);
}
