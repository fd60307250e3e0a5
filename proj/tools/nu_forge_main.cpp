#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "nuforge/pipeline.hpp"

int main(int argc, char** argv) {
  using nuforge::pipeline::RunConfig;
  RunConfig config;

  CLI::App app{
      "nu-forge: builds the affine interval morphism of a binary substitution"
      " and the equidistributed sequences of its fixed points"};
  app.add_option("morphism", config.morphism,
                 "rules like \"a->ab;b->ba\" over the alphabet {a,b}")
      ->required();
  app.add_option("--terms", config.terms, "sequence terms to generate")
      ->capture_default_str();
  std::map<std::string, RunConfig::FixedPointChoice> fp_map{
      {"a", RunConfig::FixedPointChoice::a},
      {"b", RunConfig::FixedPointChoice::b},
      {"both", RunConfig::FixedPointChoice::both}};
  app.add_option("--fixed-point", config.fixed_point,
                 "which fixed point to expand: a, b or both")
      ->transform(CLI::CheckedTransformer(fp_map, CLI::ignore_case))
      ->default_str("both");
  app.add_option("--digits", config.digits, "decimal digits in the output")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  std::map<std::string, RunConfig::Format> fmt_map{
      {"text", RunConfig::Format::text}, {"json", RunConfig::Format::json}};
  app.add_option("--format", config.format, "report format: text or json")
      ->transform(CLI::CheckedTransformer(fmt_map, CLI::ignore_case))
      ->default_str("text");
  app.add_option("--delay-cap", config.delay_cap,
                 "largest synchronization delay to try")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--check", config.check,
               "run the brute-force oracle against the output");
  app.add_flag("--force-extend", config.force_extend,
               "recode over the factor alphabet even when separable");
  app.add_flag("--verbose", config.verbose, "include factor tables and anchors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  return nuforge::pipeline::run(config, std::cout);
}
