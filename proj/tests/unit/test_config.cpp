#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "frl/config.hpp"

using namespace frl;
using namespace frl::config;

TEST_CASE("experiment names") {
  const auto& names = experiment_names();
  for (const char* n : {"measure", "energy", "kernel", "hecke-returns", "amplifier", "integrals", "beta-scaling",
                        "rapid-decay", "restrict", "kn", "theorem3", "exponents", "dyadic"}) {
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  }
  CHECK_THROWS_AS(defaults_for("nonsense"), ConfigError);
}

TEST_CASE("defaults are filled and echoed") {
  const auto cfg = make_config("kernel", Json{{"lambda", 100}});
  CHECK(cfg.params["lambda"] == 100);
  CHECK(cfg.params["h_width"] == 0.05);
  CHECK(cfg.params["x_max"] == 4.0);
  CHECK(cfg.seed == 1);
  CHECK(make_config("kernel", Json::object()).params == defaults_for("kernel"));
}

TEST_CASE("validation") {
  SUBCASE("theorem3 alpha range") {
    CHECK_THROWS_AS(make_config("theorem3", Json{{"alpha", 0.4}}), ConfigError);
    CHECK_NOTHROW(make_config("theorem3", Json{{"alpha", 1.0}}));
  }
  SUBCASE("unknown key is named") {
    try {
      make_config("kernel", Json{{"lamda", 100}});
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "lamda");
    }
  }
  SUBCASE("type mismatch") {
    try {
      make_config("measure", Json{{"depth", "six"}});
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "depth");
    }
  }
  SUBCASE("module preconditions") {
    CHECK_THROWS_AS(make_config("kernel", Json{{"lambda", 5}}), ConfigError);
    CHECK_THROWS_AS(make_config("measure", Json{{"alpha", 1.5}}), ConfigError);
    CHECK_THROWS_AS(make_config("integrals", Json{{"lambda", 400}}), ConfigError);
  }
}

TEST_CASE("parsing") {
  const auto j = parse_text("{\n  \"lambda\": 50,\n  \"seed\": 9\n}\n");
  CHECK(j["lambda"] == 50);
  try {
    parse_text("{\n  \"lambda\": 50,\n  \"h_width\" 0.1\n}\n");
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_text("[1, 2]"), ParseError);
  const auto o = parse_overrides({"lambda=200", "kind=zonal", "s=[0.5,0.6]"});
  CHECK(o["lambda"] == 200);
  CHECK(o["kind"] == "zonal");
  CHECK(o["s"].size() == 2);
  CHECK_THROWS_AS(parse_overrides({"novalue"}), ConfigError);
}

TEST_CASE("file plus overrides") {
  const auto path = std::filesystem::temp_directory_path() / "frl_config_test.json";
  {
    std::ofstream f(path);
    f << "{\"lambda\": 50, \"seed\": 7}";
  }
  const auto cfg = load_config("kernel", path.string(), {"h_width=0.04"}, "outdir", std::nullopt);
  CHECK(cfg.params["lambda"] == 50);
  CHECK(cfg.params["h_width"] == 0.04);
  CHECK(cfg.seed == 7);
  CHECK(cfg.out_dir == "outdir");
  CHECK(load_config("kernel", path.string(), {}, "o", 3).seed == 3);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_config("kernel", path.string(), {}, "o", std::nullopt), ConfigError);
}
