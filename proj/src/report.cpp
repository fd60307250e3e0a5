#include "nuforge/report.hpp"

#include <ostream>
#include <sstream>

namespace nuforge::report {

using nlohmann::json;
using pipeline::PipelineResult;
using pipeline::RunConfig;
using qfield::ExtReal;
using qfield::QNum;
using words::Letter;

namespace {

std::string letter_label(const words::Alphabet& alphabet, Letter x) {
  return alphabet.label(x);
}

std::string minimal_polynomial(const qfield::FieldDesc& f) {
  std::string out = "x^2";
  if (f.trace != 0) {
    out += f.trace > 0 ? " - " : " + ";
    long long mag = f.trace > 0 ? f.trace : -f.trace;
    out += (mag == 1 ? "x" : std::to_string(mag) + "x");
  }
  if (f.det != 0) {
    out += f.det > 0 ? " + " : " - ";
    long long mag = f.det > 0 ? f.det : -f.det;
    out += std::to_string(mag);
  }
  return out;
}

bool prints_bare(const ExtReal& x) {
  return x.value.is_rational_value() &&
         (x.value.coeff_a() == 0 || x.value.coeff_a() == 1);
}

std::string type_name(const words::Alphabet& alphabet,
                      const language::TypeTag& t) {
  return "(" + alphabet.label(t.letter) + "," + std::to_string(t.offset) + ")";
}

std::string piece_formula(const intervals::AffinePiece& piece) {
  std::string out = "x/θ";
  int s = piece.intercept.sign();
  if (s != 0) {
    QNum mag = s < 0 ? -piece.intercept : piece.intercept;
    std::string text = mag.exact();
    if (text.find(' ') != std::string::npos) text = "(" + text + ")";
    out += (s < 0 ? " - " : " + ") + text;
  }
  return out;
}

json qnum_json(const QNum& v, int digits) {
  return json{{"a", v.coeff_a().get_str()},
              {"b", v.coeff_b().get_str()},
              {"decimal", v.decimal(digits)}};
}

json extreal_json(const ExtReal& x, int digits) {
  json j = qnum_json(x.value, digits);
  j["tag"] = display_tag(x);
  return j;
}

json type_json(const words::Alphabet& alphabet, const language::TypeTag& t) {
  return json{{"letter", alphabet.label(t.letter)}, {"offset", t.offset}};
}

}  // namespace

std::string display_tag(const qfield::ExtReal& x) {
  if (prints_bare(x)) return "";
  return tag_suffix(x.tag);
}

std::string render_text(const PipelineResult& result) {
  std::ostringstream out;
  const RunConfig& config = result.config;
  const words::Alphabet& base = result.original->alphabet();

  out << "nu-forge report (schema 1)\n";
  out << "input: " << result.original->render() << "\n\n";

  out << "[1] input screening\n";
  {
    const words::IntMatrix& M = *result.input_matrix;
    out << "    matrix (columns are images): [";
    for (int i = 0; i < M.q; ++i) {
      if (i) out << ", ";
      out << "[";
      for (int j = 0; j < M.q; ++j) {
        if (j) out << ", ";
        out << M.at(i, j);
      }
      out << "]";
    }
    out << "]\n";
    out << "    primitive: " << (result.primitive ? "yes" : "no") << "\n";
    out << "    fixed points:";
    for (Letter x : result.fixed_points) out << " " << base.label(x);
    if (result.fixed_points.empty()) out << " (none)";
    out << "\n";
    out << "    verdict: " << words::verdict_name(result.validity->verdict)
        << " (" << result.validity->detail << ")\n";
  }
  if (!result.validity->admissible()) return out.str();

  const auto& trace = *result.trace;
  out << "\n[2] normalization\n";
  out << "    order-preserving: " << (trace.squared ? "no (squared)" : "yes")
      << "\n";
  if (trace.squared)
    out << "    working morphism: " << trace.source.render() << "\n";
  out << "    suffix transfers: ";
  if (trace.transfers.empty()) {
    out << "(none)\n";
  } else {
    for (std::size_t i = 0; i < trace.transfers.size(); ++i)
      out << (i ? ", " : "") << trace.transfers[i].render(base);
    out << "\n";
  }
  out << "    pi: \"" << trace.pi.render(base) << "\" (length "
      << trace.pi.size() << ")\n";
  out << "    prepared: " << trace.prepared.render() << "\n";

  out << "\n[3] synchronization and typing\n";
  out << "    delay D = " << *result.delay << " (cap " << config.delay_cap
      << ")\n";
  out << "    factors of length " << *result.delay << ": "
      << result.typing->typed.size() << "\n";
  out << "    separable: " << (result.typing->separable ? "yes" : "no")
      << "\n";
  if (result.typing->separable) {
    out << "    type order:";
    for (std::size_t i = 0; i < result.typing->type_order.size(); ++i)
      out << (i ? " < " : " ")
          << type_name(base, result.typing->type_order[i]);
    out << "\n";
  }
  if (config.verbose) {
    out << "    factor types:\n";
    for (const auto& [w, t] : result.typing->typed)
      out << "      " << w.render(base) << " -> " << type_name(base, t)
          << "\n";
  }

  out << "\n[4] extension\n";
  if (!result.extended) {
    out << "    not needed\n";
  } else {
    const extend::Coding& coding = *result.coding;
    const words::Alphabet& ext = coding.ext.alphabet;
    out << "    extended alphabet (" << coding.ext.factors.size()
        << " letters over factors of length " << coding.ext.D << "):\n";
    for (std::size_t i = 0; i < coding.ext.factors.size(); ++i)
      out << "      " << ext.label(static_cast<Letter>(i)) << " = "
          << coding.ext.factors[i].render(base) << "\n";
    out << "    chi:\n";
    for (int c = 0; c < result.chi->alphabet_size(); ++c)
      out << "      " << ext.label(c) << " -> "
          << result.chi->image(c).render(ext) << "\n";
    out << "    delay D' = " << *result.chi_delay << ", separable: "
        << (result.chi_typing->separable ? "yes" : "no") << "\n";
  }

  const intervals::IntervalMorphism& im = *result.interval_morphism;
  const words::Alphabet& fin = im.alphabet;
  out << "\n[5] interval morphism\n";
  out << "    theta: root of " << minimal_polynomial(*result.theta);
  if (result.theta->rational)
    out << ", theta = " << result.theta->rational_theta.get_str();
  out << ", decimal " << im.theta_value().decimal(20) << "\n";
  out << "    frequencies:";
  for (std::size_t i = 0; i < result.frequencies.size(); ++i)
    out << " " << fin.label(static_cast<Letter>(i)) << "="
        << result.frequencies[i].exact();
  out << "\n";
  out << "    letter intervals:\n";
  for (std::size_t i = 0; i < im.letter_intervals.size(); ++i)
    out << "      I_" << fin.label(static_cast<Letter>(i)) << " = "
        << im.letter_intervals[i].render() << "\n";
  out << "    ranges in type order:\n";
  for (const language::TypeTag& t : im.type_order)
    out << "      J_" << type_name(fin, t) << " = " << im.piece(t).range.render()
        << "\n";
  out << "    pieces:\n";
  for (int x = 0; x < static_cast<int>(im.pieces.size()); ++x)
    for (const intervals::AffinePiece& piece : im.pieces[std::size_t(x)])
      out << "      f_" << type_name(fin, piece.type)
          << "(x) = " << piece_formula(piece) << "\n";

  out << "\n[6] sequences (" << config.terms << " terms, " << config.digits
      << " digits)\n";
  bool any_unknown = false;
  for (const sequence::NuSequence& seq : result.sequences) {
    out << "    fixed point " << base.label(seq.source) << ":\n";
    for (std::size_t n = 0; n < seq.terms.size(); ++n) {
      const ExtReal& t = seq.terms[n];
      std::string tag = display_tag(t);
      // A neutral interior value is one whose membership in the doubled set
      // was not decided by the construction.
      if (config.verbose && tag.empty() && t.tag == qfield::Tag::neutral &&
          !prints_bare(t)) {
        tag = "?";
        any_unknown = true;
      }
      out << "      " << n << "\t" << t.value.exact() << "\t" << tag << "\t"
          << t.value.decimal(config.digits) << "\n";
    }
    if (config.verbose) {
      out << "      anchors:";
      for (std::size_t idx : seq.cycle_anchors)
        out << " " << idx << "=f_"
            << type_name(fin, seq.links[idx].piece);
      out << "\n";
    }
  }
  if (any_unknown)
    out << "    (? = tag unknown: the value was not forced onto a doubled "
           "point)\n";
  if (result.recurrence) {
    const auto& rec = *result.recurrence;
    out << "    k-regular recurrence: nu[" << rec.k << "n+p] = nu[n]/" << rec.k
        << " + C[w[n]][p]\n";
    for (std::size_t x = 0; x < rec.constants.size(); ++x)
      for (std::size_t p = 0; p < rec.constants[x].size(); ++p)
        out << "      C_" << rec.alphabet.label(static_cast<Letter>(x)) << ","
            << p << " = " << rec.constants[x][p].exact() << "\n";
  } else {
    out << "    k-regular recurrence: not uniform (or shifted); none\n";
  }

  if (result.oracle) {
    out << "\n[oracle]\n";
    for (const auto& sr : result.oracle->sequences) {
      out << "    fixed point " << base.label(sr.source) << ": "
          << (sr.ok() ? "PASS" : "FAIL") << " (" << sr.compared_terms
          << " terms, " << sr.order_mismatches << " order mismatches, "
          << "frequencies " << (sr.frequencies_ok ? "ok" : "off")
          << ", discrepancy " << sr.discrepancy_decimal << ", max nu error "
          << sr.max_nu_error_decimal << ")\n";
    }
  }
  return out.str();
}

json render_json(const PipelineResult& result) {
  const RunConfig& config = result.config;
  const words::Alphabet& base = result.original->alphabet();
  json root;
  root["schema"] = "nu-forge-report/1";
  root["input"] = result.original->render();
  root["config"] = {
      {"terms", config.terms},
      {"digits", config.digits},
      {"delay_cap", config.delay_cap},
      {"force_extend", config.force_extend},
      {"check", config.check},
  };

  {
    json m = json::array();
    const words::IntMatrix& M = *result.input_matrix;
    for (int i = 0; i < M.q; ++i) {
      json row = json::array();
      for (int j = 0; j < M.q; ++j) row.push_back(M.at(i, j));
      m.push_back(row);
    }
    json fixed = json::array();
    for (Letter x : result.fixed_points) fixed.push_back(base.label(x));
    root["screening"] = {
        {"matrix", m},
        {"primitive", result.primitive},
        {"fixed_points", fixed},
        {"verdict", words::verdict_name(result.validity->verdict)},
        {"detail", result.validity->detail},
    };
  }
  if (!result.validity->admissible()) return root;

  {
    const auto& trace = *result.trace;
    json transfers = json::array();
    for (const words::Word& s : trace.transfers)
      transfers.push_back(s.render(base));
    root["normalization"] = {
        {"squared", trace.squared},
        {"transfers", transfers},
        {"pi", trace.pi.render(base)},
        {"prepared", trace.prepared.render()},
    };
  }

  {
    json types = json::object();
    for (const auto& [w, t] : result.typing->typed)
      types[w.render(base)] = type_json(base, t);
    json order = json::array();
    for (const auto& t : result.typing->type_order)
      order.push_back(type_json(base, t));
    root["language"] = {
        {"delay", *result.delay},
        {"factor_count", result.typing->typed.size()},
        {"separable", result.typing->separable},
        {"type_order", order},
        {"types", types},
    };
  }

  if (!result.extended) {
    root["extension"] = nullptr;
  } else {
    const extend::Coding& coding = *result.coding;
    const words::Alphabet& ext = coding.ext.alphabet;
    json letters = json::array();
    for (std::size_t i = 0; i < coding.ext.factors.size(); ++i)
      letters.push_back(json{{"label", ext.label(static_cast<Letter>(i))},
                             {"factor", coding.ext.factors[i].render(base)}});
    json rules = json::array();
    for (int c = 0; c < result.chi->alphabet_size(); ++c) {
      json img = json::array();
      for (Letter y : result.chi->image(c)) img.push_back(ext.label(y));
      rules.push_back(json{{"letter", ext.label(c)}, {"image", img}});
    }
    json order = json::array();
    for (const auto& t : result.chi_typing->type_order)
      order.push_back(type_json(ext, t));
    root["extension"] = {
        {"window", coding.ext.D},
        {"alphabet", letters},
        {"chi", rules},
        {"delay", *result.chi_delay},
        {"separable", result.chi_typing->separable},
        {"type_order", order},
    };
  }

  const intervals::IntervalMorphism& im = *result.interval_morphism;
  const words::Alphabet& fin = im.alphabet;
  root["theta"] = {
      {"polynomial", minimal_polynomial(*result.theta)},
      {"trace", result.theta->trace},
      {"det", result.theta->det},
      {"rational", result.theta->rational},
      {"exact", im.theta_value().exact()},
      {"decimal", im.theta_value().decimal(20)},
  };

  {
    json freqs = json::array();
    for (std::size_t i = 0; i < result.frequencies.size(); ++i) {
      json f = qnum_json(result.frequencies[i], config.digits);
      f["letter"] = fin.label(static_cast<Letter>(i));
      freqs.push_back(f);
    }
    root["frequencies"] = freqs;
  }

  {
    json letters = json::array();
    for (std::size_t i = 0; i < im.letter_intervals.size(); ++i)
      letters.push_back(
          json{{"letter", fin.label(static_cast<Letter>(i))},
               {"lo", extreal_json(im.letter_intervals[i].lo, config.digits)},
               {"hi", extreal_json(im.letter_intervals[i].hi, config.digits)}});
    json pieces = json::array();
    for (const language::TypeTag& t : im.type_order) {
      const intervals::AffinePiece& piece = im.piece(t);
      pieces.push_back(
          json{{"type", type_json(fin, t)},
               {"intercept", qnum_json(piece.intercept, config.digits)},
               {"range_lo", extreal_json(piece.range.lo, config.digits)},
               {"range_hi", extreal_json(piece.range.hi, config.digits)}});
    }
    root["intervals"] = {{"letters", letters}, {"pieces", pieces}};
  }

  {
    json seqs = json::array();
    for (const sequence::NuSequence& seq : result.sequences) {
      json terms = json::array();
      for (std::size_t n = 0; n < seq.terms.size(); ++n) {
        json t = extreal_json(seq.terms[n], config.digits);
        t["index"] = n;
        terms.push_back(t);
      }
      json anchors = json::array();
      for (std::size_t idx : seq.cycle_anchors) anchors.push_back(idx);
      seqs.push_back(json{{"fixed_point", base.label(seq.source)},
                          {"anchors", anchors},
                          {"terms", terms}});
    }
    root["sequences"] = seqs;
  }

  if (result.recurrence) {
    const auto& rec = *result.recurrence;
    json constants = json::array();
    for (std::size_t x = 0; x < rec.constants.size(); ++x) {
      json row = json::array();
      for (const QNum& c : rec.constants[x])
        row.push_back(qnum_json(c, config.digits));
      constants.push_back(json{
          {"letter", rec.alphabet.label(static_cast<Letter>(x))},
          {"values", row}});
    }
    root["kregular"] = {{"k", rec.k}, {"constants", constants}};
  } else {
    root["kregular"] = nullptr;
  }

  if (result.oracle) {
    json seqs = json::array();
    for (const auto& sr : result.oracle->sequences)
      seqs.push_back(json{{"fixed_point", base.label(sr.source)},
                          {"pass", sr.ok()},
                          {"compared_terms", sr.compared_terms},
                          {"order_mismatches", sr.order_mismatches},
                          {"frequencies_ok", sr.frequencies_ok},
                          {"discrepancy", sr.discrepancy_decimal},
                          {"max_nu_error", sr.max_nu_error_decimal}});
    root["oracle"] = {{"pass", result.oracle->ok()}, {"sequences", seqs}};
  } else {
    root["oracle"] = nullptr;
  }
  return root;
}

void render_error(std::ostream& out, const pipeline::RunConfig& config,
                  const Error& e) {
  const char* kind = e.kind() == ErrorKind::Input
                         ? "input"
                         : e.kind() == ErrorKind::Internal ? "internal"
                                                           : "resource-cap";
  if (config.format == RunConfig::Format::json) {
    json root;
    root["schema"] = "nu-forge-report/1";
    root["error"] = {
        {"stage", e.stage()}, {"kind", kind}, {"message", e.what()}};
    out << root.dump(2) << "\n";
  } else {
    out << "error (" << kind << "): " << e.what() << "\n";
  }
}

}  // namespace nuforge::report
