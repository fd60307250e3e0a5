#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nuforge/extend.hpp"
#include "nuforge/intervals.hpp"
#include "nuforge/language.hpp"
#include "nuforge/normalize.hpp"
#include "nuforge/oracle.hpp"
#include "nuforge/qfield.hpp"
#include "nuforge/sequence.hpp"
#include "nuforge/words.hpp"

namespace nuforge::pipeline {

struct RunConfig {
  std::string morphism;
  std::size_t terms = 16;
  enum class FixedPointChoice { a, b, both };
  FixedPointChoice fixed_point = FixedPointChoice::both;
  int digits = 12;
  enum class Format { text, json };
  Format format = Format::text;
  int delay_cap = 64;
  bool check = false;
  bool force_extend = false;
  bool verbose = false;
};

struct OracleSequenceReport {
  words::Letter source = 0;
  std::size_t compared_terms = 0;
  std::size_t order_mismatches = 0;
  bool frequencies_ok = false;
  std::string discrepancy_decimal;
  std::string max_nu_error_decimal;  // vs empirical nu on sampled indices
  bool ok() const { return order_mismatches == 0 && frequencies_ok; }
};

struct OracleReport {
  std::vector<OracleSequenceReport> sequences;
  bool ok() const {
    for (const auto& s : sequences)
      if (!s.ok()) return false;
    return true;
  }
};

// Artifacts of one full run. Stages before the first failure are filled.
struct PipelineResult {
  RunConfig config;
  std::optional<words::GeneralMorphism> original;
  std::optional<words::IntMatrix> input_matrix;
  bool primitive = false;
  std::vector<words::Letter> fixed_points;
  std::optional<words::Validity> validity;

  std::optional<normalize::NormalizationTrace> trace;

  std::optional<int> delay;
  std::optional<language::TypingReport> typing;

  bool extended = false;
  std::optional<extend::Coding> coding;
  std::optional<words::GeneralMorphism> chi;
  std::optional<int> chi_delay;
  std::optional<language::TypingReport> chi_typing;

  std::optional<qfield::FieldDesc> theta;
  std::vector<qfield::QNum> frequencies;  // final alphabet
  std::optional<intervals::IntervalMorphism> interval_morphism;

  std::vector<sequence::NuSequence> sequences;
  std::optional<sequence::KRegularRecurrence> recurrence;

  std::optional<OracleReport> oracle;

  const words::GeneralMorphism& final_morphism() const;
};

// Runs stages 1-6; throws nuforge::Error on failure. A non-admissible input
// is not an exception: the result carries the verdict and nothing else.
PipelineResult run_pipeline(const RunConfig& config);

// Full front end: runs the pipeline, renders text or JSON to `out`, and
// maps failures to exit codes (0 ok, 1 input, 2 internal, 3 caps).
int run(const RunConfig& config, std::ostream& out);

}  // namespace nuforge::pipeline
