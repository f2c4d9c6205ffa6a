#include "cy3/cli.hpp"
#include "cy3/json_io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cy3;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

const std::string kFormsA =
    R"({"rank":2,"mode":"normal_form","trilinear":{"111":0,"112":"1/3","122":"1/3","222":0},"c2":[6,6]})";
const std::string kFormsB =
    R"({"rank":2,"mode":"normal_form","trilinear":{"111":0,"112":"1/3","122":0,"222":0},"c2":[2,0]})";
// D = (1, 1) has D^3 = 2 and c2.D = 24.
const std::string kFormsRR =
    R"({"rank":2,"mode":"normal_form","trilinear":{"111":2,"112":0,"122":0,"222":0},"c2":[12,12]})";

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p;
}

struct EnvGuard {
    explicit EnvGuard(const char* value) { setenv("CY3_DEFAULT_CAPS", value, 1); }
    ~EnvGuard() { unsetenv("CY3_DEFAULT_CAPS"); }
};

}  // namespace

TEST_CASE("exit codes") {
    auto none = run({});
    CHECK(none.code == 2);
    CHECK(none.err.find("Usage") != std::string::npos);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"rr"}, kFormsRR).code == 2);
    CHECK(run({"rr", "--class", "1,x"}, kFormsRR).code == 2);
    CHECK(run({"nonsense"}).code == 2);

    auto bad = run({"classify"}, R"({"rank":2,"mode":"normal_form","trilinear":{"111":"1/0"},"c2":[1,1]})");
    CHECK(bad.code == 1);
    auto diag = Json::parse(bad.err);
    CHECK(diag["error"]["code"] == "parse");
    CHECK(run({"classify"}, "{not json").code == 1);
    CHECK(run({"classify", "-i", "/nonexistent/forms.json"}).code == 1);
    // Topological forms failing RR integrality are domain errors.
    auto topo = run({"classify"}, R"({"rank":2,"mode":"topological","trilinear":{"111":1,"112":0,"122":0,"222":0},"c2":[0,0]})");
    CHECK(topo.code == 1);
    CHECK(run({"threshold", "--r", "0", "--class", "1,1", "--l", "1,0", "--e", "0,1"}, kFormsRR).code != 0);
}

TEST_CASE("classify and cone") {
    auto r = run({"classify"}, kFormsA);
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["case"] == "three_distinct_real");
    CHECK(j["label"] == "a");
    auto c = run({"cone"}, kFormsB);
    REQUIRE(c.code == 0);
    CHECK(Json::parse(c.out)["components"].size() == 2);
    auto text = run({"--format", "text", "classify"}, kFormsA);
    CHECK(text.code == 0);
    CHECK(text.out.find("three_distinct_real") != std::string::npos);
}

TEST_CASE("rr output") {
    auto r = run({"rr", "--class", "1,1"}, kFormsRR);
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["cube"] == "2");
    CHECK(j["c2"] == 24);
    CHECK(j["m"] == 1);
    // chi(D) = D^3 / 6 + c2.D / 12 = 1/3 + 2.
    CHECK(j["chi"] == "7/3");
    auto capped = Json::parse(run({"rr", "--class", "-1,0", "--m-cap", "7"}, kFormsRR).out);
    CHECK(capped["m"].is_null());
    CHECK(capped["m_cap"] == 7);
}

TEST_CASE("flop output round-trips") {
    auto r = run({"flop", "--eta", "1,-1", "--nd", "1:1"}, kFormsA);
    REQUIRE(r.code == 0);
    auto state = forms_from_json(Json::parse(r.out));
    CHECK(state.trilinear.at(0, 0, 0) == -1);
    CHECK(state.trilinear.at(0, 0, 1) == Q(4, 3));
    CHECK(state.c2 == LinearFormC2{8, 4});
    auto back = run({"flop", "--eta", "1,-1", "--nd", "1:1", "--inverse"}, r.out);
    REQUIRE(back.code == 0);
    CHECK(Json::parse(back.out) == Json::parse(run({"flop", "--eta", "1,0", "--nd", "1:1", "--inverse"},
                                                   run({"flop", "--eta", "1,0", "--nd", "1:1"}, kFormsA).out)
                                                   .out));
    CHECK(forms_from_json(Json::parse(back.out)) == forms_from_json(parse_json(kFormsA)));
    CHECK(run({"flop", "--eta", "1,-1", "--nd", "1"}, kFormsA).code == 2);
    CHECK(run({"flop", "--eta", "2,2", "--nd", "1:1"}, kFormsA).code == 1);
}

TEST_CASE("surfaces") {
    auto r = run({"surfaces", "--c2-upper", "-2"});
    REQUIRE(r.code == 0);
    auto pairs = Json::parse(r.out)["pairs"];
    REQUIRE(pairs.size() == 4);
    CHECK(pairs[3]["e_cubed"] == 1);
    CHECK(run({"surfaces"}).code == 2);
    auto cls = run({"surfaces", "--c2-upper", "-2", "--classes"}, kFormsB);
    CHECK(cls.code == 0);
    CHECK(Json::parse(cls.out)["classes"].size() == 4);
}

TEST_CASE("batch keeps record order and reports bad lines") {
    std::string corpus = kFormsA + "\n\n" + kFormsB + "\n" +
                         R"({"rank":2,"mode":"normal_form","trilinear":{"111":"1/0","112":0,"122":0,"222":0},"c2":[1,1]})" +
                         "\n" + kFormsRR + "\n";
    auto r = run({"batch"}, corpus);
    REQUIRE(r.code == 0);
    std::vector<Json> lines;
    std::istringstream ss(r.out);
    for (std::string line; std::getline(ss, line);) lines.push_back(Json::parse(line));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0]["line"] == 1);
    CHECK(lines[1]["line"] == 3);
    CHECK(lines[2]["line"] == 4);
    CHECK(lines[2]["error"]["code"] == "parse");
    CHECK(lines[3].contains("report"));
    for (int jobs : {2, 4, 8}) CHECK(run({"batch", "--jobs", std::to_string(jobs)}, corpus).out == r.out);
    CHECK(run({"batch"}, "").out.empty());
    CHECK(run({"batch", "--jobs", "0"}, corpus).code == 2);
}

TEST_CASE("output file and config") {
    auto out = std::filesystem::temp_directory_path() / "cy3_cli_out.json";
    std::filesystem::remove(out);
    REQUIRE(run({"-o", out.string(), "classify"}, kFormsA).code == 0);
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(Json::parse(ss.str())["case"] == "three_distinct_real");

    auto cfg = temp_file("cy3_cli_config.json", R"({"rr": {"class": "-1,0", "m-cap": 9}})");
    auto j = Json::parse(run({"--config", cfg.string(), "rr"}, kFormsRR).out);
    CHECK(j["m_cap"] == 9);
    CHECK(j["class"] == Json::array({-1, 0}));
    // Flags win over the config file.
    j = Json::parse(run({"--config", cfg.string(), "rr", "--m-cap", "4"}, kFormsRR).out);
    CHECK(j["m_cap"] == 4);
    auto broken = temp_file("cy3_cli_broken.json", "{");
    CHECK(run({"--config", broken.string(), "rr"}, kFormsRR).code == 2);
}

TEST_CASE("caps from the environment") {
    {
        EnvGuard env("m_cap=12,n_cap=3");
        auto j = Json::parse(run({"rr", "--class", "1,1"}, kFormsRR).out);
        CHECK(j["m_cap"] == 12);
    }
    for (const char* bad : {"m_cap=x", "m_cap=0", "depth=4", "m_cap"}) {
        EnvGuard env(bad);
        auto r = run({"rr", "--class", "1,1"}, kFormsRR);
        CHECK(r.code == 2);
        CHECK(r.err.find("CY3_DEFAULT_CAPS") != std::string::npos);
    }
    {
        EnvGuard env("node_cap=5");
        CHECK(run({"surfaces", "--c2-upper", "20"}).code == 1);
    }
}

TEST_CASE("render and analyze svg") {
    auto r = run({"render"}, kFormsA);
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("<svg", 0) == 0);
    CHECK(run({"render"}, kFormsA).out == r.out);
    auto svg = std::filesystem::temp_directory_path() / "cy3_cli_analyze.svg";
    auto a = run({"analyze", "--svg", svg.string(), "--mu0", "1/2"}, kFormsB);
    REQUIRE(a.code == 0);
    CHECK(std::filesystem::file_size(svg) > 0);
    CHECK(run({"analyze", "--mu0", "x"}, kFormsB).code == 2);
}
