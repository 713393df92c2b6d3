#include <doctest.h>

#include <sstream>

#include "polylb/cli.hpp"
#include "polylb/json_io.hpp"

using namespace polylb;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cfg(const RunConfig& cfg) {
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

RunConfig config(const std::string& command, const std::string& json = "") {
    RunConfig c;
    c.command = command;
    c.json_text = json;
    c.budget = 1000;
    c.mc_samples = 20000;
    c.trials = 500;
    return c;
}

}  // namespace

TEST_CASE("interval on the unit interval") {
    const auto o = run_cfg(config("interval"));
    REQUIRE(o.code == kExitOk);
    const auto j = Json::parse(o.out);
    CHECK(j["kind"] == "theorem0");
    const auto I = realset_from_json(j["region"]).hull();
    CHECK(I.length() >= 0.75);
    CHECK(j["constant"].get<double>() > 0.0);
    CHECK(j["oracle"].contains("witness_coeffs"));
}

TEST_CASE("kernel samples the tent") {
    auto c = config("kernel");
    c.nodes = {0, 1, 2};
    c.samples_per_piece = 2;
    const auto o = run_cfg(c);
    REQUIRE(o.code == kExitOk);
    const auto j = Json::parse(o.out);
    CHECK(j["samples"].size() == 5);
    CHECK(j["samples"][2][1].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("lnorm of a two-atom measure") {
    auto c = config("lnorm", R"({"atoms": [[0, 0.5], [1, 0.5]]})");
    c.eps = 0.5;
    const auto o = run_cfg(c);
    REQUIRE(o.code == kExitOk);
    CHECK(Json::parse(o.out)["value"].get<double>() == 0.0);
}

TEST_CASE("malformed JSON reports line and column") {
    const auto o = run_cfg(config("lnorm", "{\n  \"atoms\": [[0, 0.5],\n  ]\n}"));
    CHECK(o.code == kExitInput);
    CHECK(o.err.find("line 3, column 3") != std::string::npos);
}

TEST_CASE("configuration is checked") {
    auto c = config("lnorm");
    c.eps = 1.5;
    CHECK(run_cfg(c).code == kExitInput);
    c = config("lnorm");
    c.n = 13;
    CHECK(run_cfg(c).code == kExitInput);
    c = config("interval");
    c.budget = 10;
    CHECK(run_cfg(c).code == kExitInput);
    CHECK(run_cfg(config("validate")).code == kExitInput);
    CHECK(run_cfg(config("nonsense")).code == kExitInput);
}

TEST_CASE("validate: emitted certificates pass, inflated ones exit 2") {
    const auto cert = run_cfg(config("interval"));
    REQUIRE(cert.code == kExitOk);
    const auto ok = run_cfg(config("validate", cert.out));
    CHECK(ok.code == kExitOk);
    CHECK(Json::parse(ok.out)["violations"] == 0);

    auto j = Json::parse(cert.out);
    for (auto& c : j["constants"]) c = c.get<double>() * 2.0;
    CHECK(run_cfg(config("validate", j.dump())).code == kExitViolation);
}

TEST_CASE("identical configuration gives identical bytes") {
    for (const char* cmd : {"interval", "ell", "children", "keps", "lnorm"}) {
        const auto a = run_cfg(config(cmd));
        const auto b = run_cfg(config(cmd));
        CHECK(a.code == kExitOk);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("argv front end") {
    const char* argv[] = {"polylb", "lnorm", "--n", "1", "--eps", "0.5", "--json", R"({"atoms": [[0, 0.5], [1, 0.5]]})"};
    std::ostringstream out, err;
    CHECK(cli_main(8, const_cast<char**>(argv), out, err) == kExitOk);
    CHECK(Json::parse(out.str())["value"].get<double>() == 0.0);

    const char* bad[] = {"polylb", "lnorm", "--bogus"};
    std::ostringstream o2, e2;
    CHECK(cli_main(3, const_cast<char**>(bad), o2, e2) == kExitInput);

    const char* nodes[] = {"polylb", "kernel", "--nodes", "0,1,x"};
    std::ostringstream o3, e3;
    CHECK(cli_main(4, const_cast<char**>(nodes), o3, e3) == kExitInput);
}
