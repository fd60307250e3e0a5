#include "nuforge/pipeline.hpp"

#include <algorithm>
#include <ostream>

#include "nuforge/errors.hpp"
#include "nuforge/report.hpp"

namespace nuforge::pipeline {

using words::GeneralMorphism;
using words::Letter;
using words::Word;

namespace {

std::vector<Letter> requested_fixed_points(const RunConfig& config,
                                           const std::vector<Letter>& have) {
  if (config.fixed_point == RunConfig::FixedPointChoice::both) return have;
  Letter want = config.fixed_point == RunConfig::FixedPointChoice::a ? 0 : 1;
  if (std::find(have.begin(), have.end(), want) == have.end())
    throw_input("sequence",
                std::string("the morphism has no fixed point starting with "
                            "letter ") +
                    (want == 0 ? "a" : "b"));
  return {want};
}

OracleReport run_oracle_checks(const PipelineResult& result) {
  OracleReport report;
  const auto& original = *result.original;
  const std::size_t freq_prefix = 100000;
  for (const sequence::NuSequence& seq : result.sequences) {
    OracleSequenceReport sr;
    sr.source = seq.source;
    const std::size_t n_terms = std::min<std::size_t>(seq.terms.size(), 200);
    oracle::PrefixUniverse pu(original, seq.source,
                              std::max<std::size_t>(freq_prefix, 4096));

    sr.compared_terms = n_terms;
    for (std::size_t i = 0; i < n_terms; ++i)
      for (std::size_t j = i + 1; j < n_terms; ++j) {
        int by_value = seq.terms[i].cmp(seq.terms[j]);
        int by_word = pu.shift_compare(i, j);
        if ((by_value < 0) != (by_word < 0)) ++sr.order_mismatches;
      }

    // Letter frequencies against the exact eigenvector, within the loose
    // statistical band 5/sqrt(len).
    mpq_class band(5, 1);
    {
      mpz_class len(static_cast<unsigned long>(pu.prefix().size()));
      mpz_class root = sqrt(len);
      band = mpq_class(5) / mpq_class(root);
    }
    sr.frequencies_ok = true;
    for (Letter x = 0; x < original.alphabet_size(); ++x) {
      mpq_class emp = pu.empirical_frequency(Word({x}));
      // Sum the final-alphabet frequencies that project onto x.
      qfield::QNum exact = qfield::QNum::integer(0, *result.theta);
      if (result.coding) {
        for (std::size_t c = 0; c < result.coding->rho.size(); ++c)
          if (result.coding->rho[c] == x)
            exact = exact + result.frequencies[c];
      } else {
        exact = result.frequencies[std::size_t(x)];
      }
      qfield::QNum diff = exact - qfield::QNum::rational(emp, *result.theta);
      if (diff.sign() < 0) diff = -diff;
      if (diff > qfield::QNum::rational(band, *result.theta))
        sr.frequencies_ok = false;
    }

    // Empirical nu at the first few indices, T = 4096 samples.
    {
      qfield::QNum worst = qfield::QNum::integer(0, *result.theta);
      const std::size_t upto = std::min<std::size_t>(seq.terms.size(), 8);
      for (std::size_t n = 0; n < upto; ++n) {
        mpq_class emp = pu.empirical_nu(n, 4096);
        qfield::QNum diff =
            seq.terms[n].value - qfield::QNum::rational(emp, *result.theta);
        if (diff.sign() < 0) diff = -diff;
        if (diff > worst) worst = diff;
      }
      sr.max_nu_error_decimal = worst.decimal(6);
    }

    sr.discrepancy_decimal =
        seq.terms.empty() ? "n/a" : oracle::discrepancy(seq.terms).decimal(6);
    report.sequences.push_back(std::move(sr));
  }
  return report;
}

}  // namespace

const words::GeneralMorphism& PipelineResult::final_morphism() const {
  if (extended) return *chi;
  return trace->prepared;
}

PipelineResult run_pipeline(const RunConfig& config) {
  PipelineResult result;
  result.config = config;

  // 1. Parse and screen the input.
  result.original = words::parse_morphism(config.morphism);
  const GeneralMorphism& original = *result.original;
  result.input_matrix = words::matrix(original);
  result.primitive = words::is_primitive(original);
  result.fixed_points = words::fixed_point_letters(original);
  result.validity = words::admissibility(original);
  if (!result.validity->admissible()) return result;

  // 2. Orientation and suffix transfer.
  result.trace = normalize::prepare(original);
  const GeneralMorphism& psi = result.trace->prepared;

  // 3. Synchronization delay and typing of the prepared morphism.
  language::MorphicFactorSource source(psi);
  result.delay = language::synchronization_delay(psi, source, config.delay_cap);
  result.typing = language::typing_and_separability(psi, source, *result.delay);

  // theta is shared by the prepared morphism and any extension of it.
  result.theta = qfield::dominant_root(words::matrix(psi));

  // 4. Recode onto the factor alphabet when types cannot be ordered.
  const GeneralMorphism* final_m = &psi;
  std::vector<language::TypeTag> type_order = result.typing->type_order;
  if (!result.typing->separable || config.force_extend) {
    result.extended = true;
    result.coding =
        extend::build_coding(source.factors(std::size_t(*result.delay)),
                             psi.alphabet());
    result.chi = extend::build_chi(psi, *result.coding);
    extend::ChiDiagnostics diag =
        extend::verify_chi(psi, *result.chi, *result.coding);
    if (!diag.ok) {
      std::string all;
      for (const std::string& issue : diag.issues) all += issue + "; ";
      throw_internal("extend", "recoded morphism failed verification: " + all);
    }
    const extend::Coding& coding = *result.coding;
    language::WindowFactorSource lifted(
        source, std::size_t(coding.window()),
        [&coding](const Word& w) { return extend::lift_word(w, coding); });
    result.chi_delay =
        language::synchronization_delay(*result.chi, lifted, config.delay_cap);
    result.chi_typing =
        language::typing_and_separability(*result.chi, lifted,
                                          *result.chi_delay);
    if (!result.chi_typing->separable)
      throw_internal("extend", "recoded subshift is not separable");
    final_m = &*result.chi;
    type_order = result.chi_typing->type_order;
  }

  // 5. Frequencies and the interval morphism.
  result.frequencies =
      qfield::solve_frequencies(words::matrix(*final_m), *result.theta);
  result.interval_morphism = intervals::build_interval_morphism(
      *final_m, result.frequencies, *result.theta, type_order);

  // 6. nu sequences for the fixed points of the input morphism, plus the
  // uniform recurrence table when it applies.
  std::vector<Letter> wanted = requested_fixed_points(config, result.fixed_points);
  for (Letter x : wanted)
    result.sequences.push_back(sequence::generate_nu(
        original, *result.trace, result.coding, *result.interval_morphism, x,
        config.terms));
  result.recurrence = sequence::kregular_recurrence(*result.interval_morphism,
                                                    result.trace->pi.size());

  if (config.check) result.oracle = run_oracle_checks(result);
  return result;
}

int run(const RunConfig& config, std::ostream& out) {
  try {
    PipelineResult result = run_pipeline(config);
    if (config.format == RunConfig::Format::json)
      out << report::render_json(result).dump(2) << "\n";
    else
      out << report::render_text(result);
    if (!result.validity->admissible()) return 1;
    if (result.oracle && !result.oracle->ok()) return 2;
    return 0;
  } catch (const Error& e) {
    report::render_error(out, config, e);
    switch (e.kind()) {
      case ErrorKind::Input: return 1;
      case ErrorKind::Internal: return 2;
      case ErrorKind::ResourceCap: return 3;
    }
    return 2;
  }
}

}  // namespace nuforge::pipeline
