#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "embedlab/errors.hpp"
#include "embedlab/json_io.hpp"
#include "embedlab/primitives.hpp"

using namespace embedlab;
using nlohmann::json;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("embedlab_test_" + name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("rounding to significant digits") {
    CHECK(round_sig(0.123456789012345678, 12) == doctest::Approx(0.123456789012).epsilon(1e-15));
    CHECK(round_sig(123456.789, 6) == doctest::Approx(123457.0).epsilon(1e-12));
    CHECK(round_sig(0.0, 12) == 0.0);
    CHECK(round_sig(-0.5487949406953985, 6) == doctest::Approx(-0.548795).epsilon(1e-12));
    CHECK(round_sig(1e-300, 12) == doctest::Approx(1e-300));
}

TEST_CASE("distribution round trip keeps labels and masses") {
    JointDistribution p = make_rot(1).dist;
    json j = to_json(p);
    REQUIRE(j.contains("x"));
    REQUIRE(j.contains("y"));
    REQUIRE(j.contains("p"));
    CHECK(j["y"][2] == "_bot");

    JointDistribution back = distribution_from_json(j);
    CHECK(back.x_alphabet() == p.x_alphabet());
    CHECK(back.y_alphabet() == p.y_alphabet());
    CHECK((back.probs() - p.probs()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("distribution parsing rejects malformed documents") {
    CHECK_THROWS_AS(distribution_from_json(json::parse(R"({"x": ["a"], "y": ["b"]})")),
                    ParseError);
    CHECK_THROWS_AS(distribution_from_json(json::parse(
                        R"({"x": ["a"], "y": ["b"], "p": [[1.0], [0.0]]})")),
                    ParseError);
    CHECK_THROWS_AS(distribution_from_json(json::parse(
                        R"({"x": ["a"], "y": ["b"], "p": "oops"})")),
                    ParseError);
    CHECK_THROWS_AS(distribution_from_json(json::parse(
                        R"({"x": ["a", "b"], "y": ["c"], "p": [[0.9], [0.3]]})")),
                    NotNormalized);
}

TEST_CASE("loading distributions from disk") {
    TempFile good("good.json", R"({"x": ["0", "1"], "y": ["0", "1"],
                                   "p": [[0.5, 0.0], [0.0, 0.5]]})");
    JointDistribution p = load_distribution(good.path);
    CHECK(p.prob(0, 0) == doctest::Approx(0.5));

    CHECK_THROWS_AS(load_distribution("no/such/file.json"), ParseError);

    TempFile bad("bad.json", "{ not json");
    CHECK_THROWS_AS(load_distribution(bad.path), ParseError);
}

TEST_CASE("leakage report serialization") {
    LeakageReport r;
    r.toward_bob = 0.25;
    r.toward_alice = 0.125;
    r.delta = 0.25;
    r.s_x_bb = 1.25;
    r.s_aa_y = 1.125;
    r.mutual_information = 1.0;
    json j = to_json(r);
    CHECK(j["delta"] == 0.25);
    CHECK(j["toward_bob"] == 0.25);
    CHECK(j["toward_alice"] == 0.125);
    CHECK(j["s_x_bb"] == 1.25);
    CHECK(j["s_aa_y"] == 1.125);
    CHECK(j["mutual_information"] == 1.0);
}

TEST_CASE("phase assignment serialization lists support triples") {
    JointDistribution p = make_rot(1).dist;
    PhaseAssignment theta = PhaseAssignment::zeros(p);
    theta.set(0, 0, 1.5);
    json j = to_json(theta);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == p.support().size());
    CHECK(j[0]["x"] == 0);
    CHECK(j[0]["y"] == 0);
    CHECK(j[0]["theta"] == 1.5);
}

TEST_CASE("numbers are rounded to twelve significant digits on export") {
    LeakageReport r;
    r.delta = 0.31127812445913283;  // more precision than the export keeps
    json j = to_json(r);
    CHECK(j["delta"].get<double>() == doctest::Approx(0.311278124459).epsilon(1e-14));
}

TEST_CASE("manifest carries command metadata") {
    json m = make_manifest("analyze", {"rot/1", "--seed", "7"}, 7, 0.125,
                           json{{"delta", 0.5}});
    CHECK(m["command"] == "analyze");
    CHECK(m["arguments"].size() == 3);
    CHECK(m["seed"] == 7);
    CHECK(m["version"] == "0.1.0");
    CHECK(m["wall_time_seconds"].get<double>() == doctest::Approx(0.125));
    CHECK(m["results"]["delta"] == 0.5);
}
