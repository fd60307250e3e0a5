#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "nuforge/pipeline.hpp"
#include "nuforge/report.hpp"
#include "support/util.hpp"

using namespace nuforge;
using namespace nuforge::pipeline;
using nlohmann::json;

namespace {

RunConfig config_for(const char* spec) {
  RunConfig config;
  config.morphism = spec;
  return config;
}

int run_to(const RunConfig& config, std::string* text = nullptr) {
  std::ostringstream out;
  int code = run(config, out);
  if (text) *text = out.str();
  return code;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run_to(config_for("a->ab;b->ba")) == 0);
  CHECK(run_to(config_for("a->aba;b->bab")) == 1);   // periodic fixed point
  CHECK(run_to(config_for("a->ab;b->")) == 1);       // parse error
  CHECK(run_to(config_for("a->aba;b->bbb")) == 1);   // not uniformly recurrent
  RunConfig capped = config_for("a->aabab;b->bba");
  capped.delay_cap = 2;
  CHECK(run_to(capped) == 3);
  RunConfig missing_fp = config_for("a->aab;b->abb");
  missing_fp.fixed_point = RunConfig::FixedPointChoice::b;
  CHECK(run_to(missing_fp) == 1);
}

TEST_CASE("reports are deterministic") {
  for (auto format : {RunConfig::Format::text, RunConfig::Format::json}) {
    RunConfig config = config_for("a->aab;b->abb");
    config.format = format;
    config.terms = 10;
    std::string first, second;
    run_to(config, &first);
    run_to(config, &second);
    CHECK(first == second);
    CHECK_FALSE(first.empty());
  }
}

TEST_CASE("JSON round-trips exact values canonically") {
  RunConfig config = config_for("a->ab;b->a");
  config.format = RunConfig::Format::json;
  config.terms = 12;
  std::string text;
  REQUIRE(run_to(config, &text) == 0);
  json root = json::parse(text);
  CHECK(root.at("schema") == "nu-forge-report/1");

  const json& theta = root.at("theta");
  qfield::FieldDesc field{theta.at("trace").get<long long>(),
                          theta.at("det").get<long long>(), false,
                          mpq_class(0)};
  if (theta.at("rational").get<bool>()) {
    field.rational = true;
    field.rational_theta = mpq_class(theta.at("exact").get<std::string>());
  }
  for (const json& seq : root.at("sequences"))
    for (const json& term : seq.at("terms")) {
      mpq_class a(term.at("a").get<std::string>());
      mpq_class b(term.at("b").get<std::string>());
      qfield::QNum rebuilt(a, b, field);
      CHECK(rebuilt.coeff_a().get_str() == term.at("a").get<std::string>());
      CHECK(rebuilt.coeff_b().get_str() == term.at("b").get<std::string>());
      CHECK(rebuilt.decimal(config.digits) ==
            term.at("decimal").get<std::string>());
    }
}

TEST_CASE("JSON carries the extension section for the 17-letter system") {
  RunConfig config = config_for("a->aabab;b->bba");
  config.format = RunConfig::Format::json;
  config.terms = 4;
  std::string text;
  REQUIRE(run_to(config, &text) == 0);
  json root = json::parse(text);
  REQUIRE_FALSE(root.at("extension").is_null());
  CHECK(root.at("extension").at("alphabet").size() == 17);
  CHECK(root.at("extension").at("separable").get<bool>());
  CHECK(root.at("language").at("delay").get<int>() == 5);
  CHECK_FALSE(root.at("language").at("separable").get<bool>());
  // chi rules are part of the report.
  bool found = false;
  for (const json& rule : root.at("extension").at("chi"))
    if (rule.at("letter") == "b_6") {
      found = true;
      std::string joined;
      for (const json& y : rule.at("image")) joined += y.get<std::string>();
      CHECK(joined == "b_7b_4a_6");
    }
  CHECK(found);
}

TEST_CASE("forcing the extension leaves the sequences unchanged") {
  for (const char* spec : {"a->ab;b->ba", "a->baa;b->bab", "a->ab;b->babab"}) {
    RunConfig plain = config_for(spec);
    plain.terms = 24;
    PipelineResult direct = run_pipeline(plain);
    RunConfig forced = plain;
    forced.force_extend = true;
    PipelineResult via_chi = run_pipeline(forced);
    REQUIRE(via_chi.extended);
    REQUIRE(direct.sequences.size() == via_chi.sequences.size());
    for (std::size_t s = 0; s < direct.sequences.size(); ++s) {
      const auto& lhs = direct.sequences[s];
      const auto& rhs = via_chi.sequences[s];
      REQUIRE(lhs.terms.size() == rhs.terms.size());
      for (std::size_t n = 0; n < lhs.terms.size(); ++n) {
        CHECK(lhs.terms[n].value == rhs.terms[n].value);
        CHECK(lhs.terms[n].tag == rhs.terms[n].tag);
      }
    }
  }
}

TEST_CASE("the non-primitive admissible shape runs end to end") {
  RunConfig config = config_for("a->aaba;b->b");
  config.terms = 24;
  PipelineResult r = run_pipeline(config);
  REQUIRE(r.validity->admissible());
  CHECK(r.theta->rational);
  CHECK(r.theta->rational_theta == 3);
  REQUIRE(r.sequences.size() == 1);
  CHECK(r.sequences[0].terms.size() == 24);
}

TEST_CASE("oracle check flags are reflected in the report") {
  RunConfig config = config_for("a->ab;b->ba");
  config.terms = 32;
  config.check = true;
  std::string text;
  CHECK(run_to(config, &text) == 0);
  CHECK(text.find("[oracle]") != std::string::npos);
  CHECK(text.find("PASS") != std::string::npos);
}

TEST_CASE("text report carries the pipeline stages in order") {
  RunConfig config = config_for("a->aab;b->abb");
  config.terms = 5;
  std::string text;
  REQUIRE(run_to(config, &text) == 0);
  std::size_t p1 = text.find("[1] input screening");
  std::size_t p2 = text.find("[2] normalization");
  std::size_t p3 = text.find("[3] synchronization and typing");
  std::size_t p5 = text.find("[5] interval morphism");
  std::size_t p6 = text.find("[6] sequences");
  CHECK(p1 < p2);
  CHECK(p2 < p3);
  CHECK(p3 < p5);
  CHECK(p5 < p6);
  CHECK(text.find("a->baa; b->bab") != std::string::npos);
  CHECK(text.find("0.000000000000") != std::string::npos);
}
