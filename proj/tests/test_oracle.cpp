#include <doctest.h>

#include "nuforge/errors.hpp"
#include "nuforge/oracle.hpp"
#include "nuforge/pipeline.hpp"
#include "support/util.hpp"

using namespace nuforge;
using namespace nuforge::oracle;
using qfield::ExtReal;
using qfield::QNum;
using qfield::Tag;
using testsupport::bword;
using words::GeneralMorphism;

namespace {
GeneralMorphism parse(const char* s) { return words::parse_morphism(s); }

bool within(const mpq_class& value, const mpq_class& target, const mpq_class& tol) {
  mpq_class diff = value - target;
  if (diff < 0) diff = -diff;
  return diff <= tol;
}
}  // namespace

TEST_CASE("shift_compare on the Thue-Morse word") {
  PrefixUniverse pu(parse("a->ab;b->ba"), 0, 4096);
  CHECK(pu.shift_compare(0, 1) < 0);
  CHECK(pu.shift_compare(1, 0) > 0);
  CHECK(pu.shift_compare(5, 5) == 0);
  CHECK(pu.shift_compare(3, 2) < 0);
}

TEST_CASE("empirical_nu approaches the exact values") {
  {
    PrefixUniverse pu(parse("a->ab;b->ba"), 0, 4096);
    CHECK(within(pu.empirical_nu(0, 4096), mpq_class(1, 2), mpq_class(1, 50)));
    CHECK(within(pu.empirical_nu(1, 4096), mpq_class(1), mpq_class(1, 50)));
  }
  {
    PrefixUniverse pu(parse("a->baa;b->bab"), 1, 4096);
    CHECK(within(pu.empirical_nu(0, 4096), mpq_class(3, 4), mpq_class(1, 50)));
  }
}

TEST_CASE("empirical_frequency") {
  PrefixUniverse pu(parse("a->ab;b->ba"), 0, 100000);
  CHECK(within(pu.empirical_frequency(bword("a")), mpq_class(1, 2),
               mpq_class(1, 100)));
  CHECK(within(pu.empirical_frequency(bword("aa")), mpq_class(1, 6),
               mpq_class(1, 100)));
  CHECK(pu.empirical_frequency(bword("abb")) > 0);
}

TEST_CASE("discrepancy") {
  qfield::FieldDesc f = qfield::dominant_root(
      words::matrix(parse("a->ab;b->ba")));
  auto q = [&](long n, long d) {
    mpq_class v(n, d);
    v.canonicalize();
    return QNum::rational(v, f);
  };
  {
    // Equidistant points i/N give exactly 1/N.
    std::vector<ExtReal> pts;
    const long N = 16;
    for (long i = 0; i < N; ++i) pts.push_back(ExtReal{q(i, N), Tag::neutral});
    CHECK(discrepancy(pts) == q(1, N));
  }
  {
    // A constant list v,...,v has star discrepancy max(v, 1-v).
    std::vector<ExtReal> pts(10, ExtReal{q(3, 10), Tag::neutral});
    CHECK(discrepancy(pts) == q(7, 10));
  }
  CHECK_THROWS_AS(discrepancy({}), Error);
}

TEST_CASE("order isomorphism against the generated sequences") {
  pipeline::RunConfig config;
  config.morphism = "a->baa;b->bab";
  config.terms = 120;
  pipeline::PipelineResult r = pipeline::run_pipeline(config);
  const auto& seq = r.sequences.front();
  PrefixUniverse pu(*r.original, seq.source, 100000);
  for (std::size_t i = 0; i < seq.terms.size(); ++i)
    for (std::size_t j = i + 1; j < seq.terms.size(); ++j) {
      int lhs = seq.terms[i].cmp(seq.terms[j]);
      int rhs = pu.shift_compare(i, j);
      CHECK((lhs < 0) == (rhs < 0));
    }
}

TEST_CASE("tagged terms witness cylinder extremes") {
  // Minus-tagged values mark lexicographically maximal words of their
  // cylinder, plus-tagged values minimal ones; one orbit never carries both.
  const char* spec = nullptr;
  SUBCASE("a->ab;b->ba") { spec = "a->ab;b->ba"; }
  SUBCASE("a->aab;b->abb") { spec = "a->aab;b->abb"; }
  SUBCASE("a->aaba;b->b") { spec = "a->aaba;b->b"; }
  SUBCASE("a->aabab;b->bba") { spec = "a->aabab;b->bba"; }
  pipeline::RunConfig config;
  config.morphism = spec;
  config.terms = 8;
  pipeline::PipelineResult r = pipeline::run_pipeline(config);
  for (const auto& seq : r.sequences) {
    bool minus = false, plus = false;
    for (const ExtReal& t : seq.terms) {
      minus |= t.tag == Tag::minus;
      plus |= t.tag == Tag::plus;
    }
    CHECK_FALSE((minus && plus));

    PrefixUniverse pu(*r.original, seq.source, 20000);
    const words::Word& w = pu.prefix();
    for (std::size_t i = 0; i < 3; ++i) {
      if (seq.terms[i].tag == Tag::neutral) continue;
      words::Word witness = w.subword(i, 12);
      for (std::size_t j = 0; j + 12 < 20000; ++j) {
        if (j == i) continue;
        bool same_prefix = true;
        for (std::size_t k = 0; k < witness.size() && same_prefix; ++k)
          if (w[j + k] != witness[k]) same_prefix = false;
        if (!same_prefix) continue;
        if (seq.terms[i].tag == Tag::minus)
          CHECK(pu.shift_compare(j, i) < 0);
        else
          CHECK(pu.shift_compare(j, i) > 0);
      }
    }
  }
}

TEST_CASE("comparisons deepen the prefix on demand") {
  // Shifts of a slowly separating pair still resolve.
  PrefixUniverse pu(parse("a->ab;b->babab"), 0, 2000, 4);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = i + 1; j < 40; ++j)
      CHECK(pu.shift_compare(i, j) != 0);
}
