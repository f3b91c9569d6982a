// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"
#include "doctest.h"

using namespace helegeo;

namespace {

std::string schema_message(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Schema);
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("complex literals") {
    CHECK(parse_complex("1+0i") == cplx(1.0, 0.0));
    CHECK(parse_complex("0.3-1.2i") == cplx(0.3, -1.2));
    CHECK(parse_complex("-2") == cplx(-2.0, 0.0));
    CHECK(parse_complex("-0.5i") == cplx(0.0, -0.5));
    CHECK(parse_complex("i") == cplx(0.0, 1.0));
    CHECK(parse_complex("1e-1+2e0i") == cplx(0.1, 2.0));
    CHECK_THROWS_AS(parse_complex("1+"), Error);
    CHECK_THROWS_AS(parse_complex("one"), Error);
}

TEST_CASE("a full config parses and round-trips") {
    const std::string text = R"({
  "scenario": {"kind": "diffeo", "params": {"map": "radial", "eps": 0.05, "m": 4}},
  "grids": {"N": 32, "grid_size": 64, "s_max": 6, "s_samples": 100},
  "stages": ["synthesize", "geodesic", "synthesize"],
  "export": {"dir": "out", "formats": ["csv", "json"]}
})";
    Config c = parse_config(text);
    CHECK(c.scenario.kind == ScenarioConfig::Kind::Diffeo);
    CHECK(c.scenario.diffeo.kind == DiffeoSpec::Kind::Radial);
    CHECK(c.scenario.diffeo.m == 4);
    CHECK(c.scenario.name() == "diffeo:radial");
    CHECK(c.grids.N == 32);
    CHECK(c.grids.s_max == 6.0);
    CHECK(c.stages.size() == 2);
    CHECK(c.output.wants("csv"));
    CHECK_FALSE(c.output.wants("svg"));
    Config d = parse_config(config_to_json(c));
    CHECK(config_to_json(d) == config_to_json(c));

    Config t = parse_config(R"({"scenario": {"kind": "tangency", "params": {"pinches": ["0+1.2i", [0, -1.2]]}},
                                "stages": ["singularity"]})");
    REQUIRE(t.scenario.tangency.pinches.size() == 2);
    CHECK(t.scenario.tangency.pinches[1] == cplx(0.0, -1.2));
}

TEST_CASE("schema violations name the line and the key") {
    CHECK(schema_message("{\n  \"scenario\": {\"kind\": \"standard\"},\n  \"stages\": [\"synthesize\"],\n  \"grids\": {\n    \"N\": 30\n  }\n}")
              .rfind("config:5: grids.N: must be a multiple of 4", 0) == 0);
    CHECK(schema_message("{\"scenario\": {\"kind\": \"standard\"},\n \"stages\": [\"paint\"]}").rfind("config:2: stages: unknown stage", 0) == 0);
    CHECK(schema_message("{\"scenario\": {\"kind\": \"weird\"}, \"stages\": [\"verify\"]}").find("scenario.kind") != std::string::npos);
    CHECK(schema_message("{\"stages\": [\"verify\"]}").find("scenario: required key missing") != std::string::npos);
    CHECK(schema_message("{\"scenario\": {\"kind\": \"standard\", \"params\": {\"eps\": 1}}, \"stages\": [\"verify\"]}")
              .find("scenario.params.eps: unknown key") != std::string::npos);
    CHECK(schema_message("{\n\"scenario\": {\"kind\": \"standard\"},\n\"stages\": [\"verify\"],,\n}").rfind("config:3: malformed JSON", 0) == 0);
    CHECK(schema_message("{\"scenario\": {\"kind\": \"diffeo\", \"params\": {\"rise0\": 0.5}}, \"stages\": [\"verify\"]}")
              .find("bump breakpoints") != std::string::npos);
    CHECK(schema_message("{\"scenario\": {\"kind\": \"standard\"}, \"stages\": [\"verify\"], \"export\": {\"formats\": [\"png\"]}}")
              .find("unknown format 'png'") != std::string::npos);
}

TEST_CASE("scenario names") {
    CHECK(scenario_from_name("standard").kind == ScenarioConfig::Kind::Standard);
    CHECK(scenario_from_name("diffeo:shear").diffeo.kind == DiffeoSpec::Kind::Shear);
    CHECK(scenario_from_name("diffeo").kind == ScenarioConfig::Kind::Diffeo);
    CHECK(scenario_from_name("tangency").kind == ScenarioConfig::Kind::Tangency);
    CHECK_THROWS_AS(scenario_from_name("diffeo:twist"), Error);
    CHECK_THROWS_AS(scenario_from_name("bubble"), Error);
}
