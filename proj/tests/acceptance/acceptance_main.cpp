// Acceptance suite: one check per release criterion, each printed as a
// single PASS/FAIL line. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nuforge/errors.hpp"
#include "nuforge/oracle.hpp"
#include "nuforge/pipeline.hpp"
#include "support/bruteforce.hpp"
#include "support/util.hpp"

using namespace nuforge;
using pipeline::PipelineResult;
using pipeline::RunConfig;
using qfield::ExtReal;
using qfield::QNum;
using qfield::Tag;
using sequence::NuSequence;
using words::GeneralMorphism;
using words::Letter;
using words::Word;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::function<void(std::string&)> body;  // throws or appends notes
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw Failure(msg);
}

PipelineResult run_spec(const std::string& spec, std::size_t terms,
                        int delay_cap = 64) {
  RunConfig config;
  config.morphism = spec;
  config.terms = terms;
  config.delay_cap = delay_cap;
  PipelineResult r = pipeline::run_pipeline(config);
  require(r.validity->admissible(), spec + " was not admissible");
  return r;
}

const NuSequence& seq_for(const PipelineResult& r, Letter x) {
  for (const NuSequence& s : r.sequences)
    if (s.source == x) return s;
  throw Failure("missing fixed point sequence");
}

std::vector<std::string> exact_terms(const NuSequence& s) {
  std::vector<std::string> out;
  for (const ExtReal& t : s.terms) out.push_back(t.exact());
  return out;
}

void expect_terms(const NuSequence& s, const std::vector<std::string>& want) {
  std::vector<std::string> got = exact_terms(s);
  require(got.size() >= want.size(), "sequence too short");
  for (std::size_t i = 0; i < want.size(); ++i)
    require(got[i] == want[i],
            "term " + std::to_string(i) + " is " + got[i] + ", expected " +
                want[i]);
}

mpq_class frac(long n, long d) {
  mpq_class v(n, d);
  v.canonicalize();
  return v;
}

// ---------------------------------------------------------------------------

void criterion_tm_golden(std::string& note) {
  auto start = std::chrono::steady_clock::now();
  PipelineResult r = run_spec("a->ab;b->ba", 8);
  expect_terms(seq_for(r, 0), {"1/2-", "1", "3/4-", "1/4-", "5/8-", "1/8-",
                               "3/8-", "7/8-"});
  expect_terms(seq_for(r, 1), {"1/2+", "0", "1/4+", "3/4+", "3/8+", "7/8+",
                               "5/8+", "1/8+"});
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  require(ms < 1000, "took " + std::to_string(ms) + " ms (limit 1000)");
  note = std::to_string(ms) + " ms";
}

void criterion_tm_intervals(std::string&) {
  PipelineResult r = run_spec("a->ab;b->ba", 4);
  const auto& im = *r.interval_morphism;
  const auto& f = *r.theta;
  auto q = [&](long n, long d) { return QNum::rational(frac(n, d), f); };

  require(im.pieces[0][0].intercept == q(1, 4), "C_a0");
  require(im.pieces[0][1].intercept == q(3, 4), "C_a1");
  require(im.pieces[1][0].intercept == q(1, 4), "C_b0");
  require(im.pieces[1][1].intercept == q(-1, 4), "C_b1");
  for (const auto& row : im.pieces)
    for (const auto& piece : row)
      require(piece.slope == q(1, 2), "slope 1/2");

  auto expect_range = [&](int letter, int offset, long lon, long lod,
                          Tag lot, long hin, long hid, Tag hit) {
    const auto& rng = im.pieces[std::size_t(letter)][std::size_t(offset)].range;
    require(rng.lo.value == q(lon, lod) && rng.lo.tag == lot, "range lo");
    require(rng.hi.value == q(hin, hid) && rng.hi.tag == hit, "range hi");
  };
  expect_range(0, 0, 1, 4, Tag::plus, 1, 2, Tag::minus);
  expect_range(0, 1, 3, 4, Tag::plus, 1, 1, Tag::neutral);
  expect_range(1, 0, 1, 2, Tag::plus, 3, 4, Tag::minus);
  expect_range(1, 1, 0, 1, Tag::neutral, 1, 4, Tag::minus);

  const auto& order = r.typing->type_order;
  require(order.size() == 4, "four types");
  require(order[0] == language::TypeTag{1, 1} &&
              order[1] == language::TypeTag{0, 0} &&
              order[2] == language::TypeTag{1, 0} &&
              order[3] == language::TypeTag{0, 1},
          "type order (b,1)<(a,0)<(b,0)<(a,1)");
}

void criterion_suffix_transfer(std::string&) {
  PipelineResult r = run_spec("a->aab;b->abb", 5);
  require(r.trace->prepared.render() == "a->baa; b->bab", "prepared psi");
  const auto& im = *r.interval_morphism;
  const auto& f = *r.theta;
  auto q = [&](long n, long d) { return QNum::rational(frac(n, d), f); };
  require(im.pieces[0][0].intercept == q(1, 2) &&
              im.pieces[0][1].intercept == q(0, 1) &&
              im.pieces[0][2].intercept == q(1, 6),
          "pieces over I_a");
  require(im.pieces[1][0].intercept == q(1, 2) &&
              im.pieces[1][1].intercept == q(1, 6) &&
              im.pieces[1][2].intercept == q(2, 3),
          "pieces over I_b");
  for (const auto& row : im.pieces)
    for (const auto& piece : row)
      require(piece.slope == q(1, 3), "slope 1/3");
  expect_terms(seq_for(r, 0), {"0", "1/6+", "5/9+", "1/18+", "2/9+"});

  PipelineResult v = run_spec("a->baa;b->bab", 4);
  expect_terms(seq_for(v, 1), {"3/4", "5/12", "11/12", "23/36"});
}

void criterion_extended_alphabet(std::string&) {
  PipelineResult r = run_spec("a->aabab;b->bba", 4);
  require(*r.delay == 5, "synchronization delay 5");
  require(r.extended, "extension engaged");
  const auto& coding = *r.coding;
  require(coding.ext.factors.size() == 17, "17 factors");
  const auto& ext = coding.ext.alphabet;
  auto image = [&](int c) { return r.chi->image(c).render(ext); };
  auto expect_rows = [&](std::vector<int> letters, const std::string& want) {
    for (int c : letters)
      require(image(c) == want, ext.label(c) + " -> " + image(c) +
                                    ", expected " + want);
  };
  expect_rows({0, 1}, "a_2a_4b_3a_3b_2");
  expect_rows({2, 3, 4}, "a_2a_5b_5a_8b_8");
  expect_rows({5, 6, 7}, "a_2a_5b_5a_8b_9");
  expect_rows({8, 9, 10, 11, 12}, "b_6b_1a_1");
  expect_rows({13, 14}, "b_7b_4a_6");
  expect_rows({15, 16}, "b_7b_4a_7");
  require(r.chi_typing->separable, "chi separable");
}

void criterion_shifted_anchors(std::string&) {
  PipelineResult r = run_spec("a->ab;b->babab", 6);
  require(r.trace->prepared.render() == "a->ba; b->babab", "prepared psi");
  require(r.trace->pi.size() == 5, "|pi| = 5");
  const NuSequence& wa = seq_for(r, 0);
  require(wa.links[1].parent == 1 && wa.links[1].piece == language::TypeTag{1, 4},
          "w_a anchor nu[1] = fix f_(b,4)");
  require(wa.links[2].parent == 2 && wa.links[2].piece == language::TypeTag{1, 0},
          "w_a anchor nu[2] = fix f_(b,0)");
  const NuSequence& wb = seq_for(r, 1);
  require(wb.links[1].parent == 1 && wb.links[1].piece == language::TypeTag{0, 1},
          "w_b anchor nu[1] = fix f_(a,1)");
  require(wb.links[2].parent == 2 && wb.links[2].piece == language::TypeTag{1, 0},
          "w_b anchor nu[2] = fix f_(b,0)");
}

void criterion_order_isomorphism(std::string& note) {
  auto start = std::chrono::steady_clock::now();
  const char* corpus[] = {"a->ab;b->ba",    "a->ab;b->a",
                          "a->aab;b->abb",  "a->aabab;b->bba",
                          "a->aaba;b->b",   "a->ab;b->babab"};
  std::size_t checked = 0;
  for (const char* spec : corpus) {
    PipelineResult r = run_spec(spec, 200);
    for (const NuSequence& seq : r.sequences) {
      oracle::PrefixUniverse pu(*r.original, seq.source, 100000);
      for (std::size_t i = 0; i < seq.terms.size(); ++i)
        for (std::size_t j = i + 1; j < seq.terms.size(); ++j) {
          int lhs = seq.terms[i].cmp(seq.terms[j]);
          int rhs = pu.shift_compare(i, j);
          require((lhs < 0) == (rhs < 0),
                  std::string(spec) + ": order mismatch at (" +
                      std::to_string(i) + "," + std::to_string(j) + ")");
          ++checked;
        }
    }
  }
  auto s = std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::steady_clock::now() - start)
               .count();
  require(s < 30, "took " + std::to_string(s) + " s (limit 30)");
  note = std::to_string(checked) + " pairs, " + std::to_string(s) + " s";
}

void criterion_equidistribution(std::string& note) {
  {
    PipelineResult r = run_spec("a->ab;b->ba", 1024);
    QNum d = oracle::discrepancy(seq_for(r, 0).terms);
    require(d <= QNum::rational(frac(1, 20), *r.theta),
            "Thue-Morse discrepancy " + d.decimal(4) + " > 0.05");
    note = "tm " + d.decimal(4);
  }
  {
    PipelineResult r = run_spec("a->ab;b->a", 1024);
    QNum d = oracle::discrepancy(seq_for(r, 0).terms);
    require(d <= QNum::rational(frac(1, 20), *r.theta),
            "Fibonacci discrepancy " + d.decimal(4) + " > 0.05");
    note += ", fib " + d.decimal(4);
  }
}

void criterion_kregular(std::string&) {
  PipelineResult r = run_spec("a->ab;b->ba", 1024);
  require(r.recurrence.has_value(), "recurrence available");
  const auto& rec = *r.recurrence;
  require(rec.k == 2, "k = 2");
  const NuSequence& seq = seq_for(r, 0);
  Word w = words::fixed_point_prefix(*r.original, 0, 512);
  QNum half = QNum::rational(frac(1, 2), *r.theta);
  for (std::size_t n = 0; n < 512; ++n)
    for (std::size_t p = 0; p < 2; ++p) {
      QNum expect =
          seq.terms[n].value * half + rec.constants[std::size_t(w[n])][p];
      require(seq.terms[2 * n + p].value == expect,
              "recurrence mismatch at n=" + std::to_string(n) +
                  " p=" + std::to_string(p));
    }
}

void criterion_frequencies(std::string&) {
  PipelineResult r = run_spec("a->ab;b->ba", 4);
  require(r.frequencies.size() == 2, "two letters");
  require(r.frequencies[0] == QNum::rational(frac(1, 2), *r.theta) &&
              r.frequencies[1] == QNum::rational(frac(1, 2), *r.theta),
          "letter frequencies exactly 1/2");
  oracle::PrefixUniverse pu(*r.original, 0, 100000);
  mpq_class emp = pu.empirical_frequency(testsupport::bword("aa"));
  mpq_class diff = emp - frac(1, 6);
  if (diff < 0) diff = -diff;
  require(diff <= frac(1, 100),
          "empirical frequency of aa off by more than 0.01");
}

void criterion_fuzz(std::string& note) {
  auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> len(1, 6), coin(0, 1);
  auto random_image = [&]() {
    std::vector<Letter> img;
    int n = len(rng);
    for (int i = 0; i < n; ++i) img.push_back(coin(rng));
    return Word(std::move(img));
  };
  std::size_t admissible = 0, completed = 0, classified = 0;
  while (admissible < 500) {
    GeneralMorphism m(words::Alphabet::binary(),
                      {random_image(), random_image()});
    if (!words::admissibility(m).admissible()) continue;
    ++admissible;
    RunConfig config;
    config.morphism = m.render();
    config.terms = 50;
    PipelineResult r;
    try {
      r = pipeline::run_pipeline(config);
    } catch (const Error& e) {
      require(e.kind() != ErrorKind::Internal,
              m.render() + ": internal error: " + e.what());
      ++classified;  // cap or screened limitation, reported as such
      continue;
    }
    ++completed;
    const auto& im = *r.interval_morphism;
    QNum one = QNum::integer(1, *r.theta);
    QNum total = QNum::integer(0, *r.theta);
    for (const auto& iv : im.letter_intervals) total = total + iv.length();
    require(total == one, m.render() + ": letter partition not exact");
    QNum jtotal = QNum::integer(0, *r.theta);
    for (const auto& t : im.type_order)
      jtotal = jtotal + im.piece(t).range.length();
    require(jtotal == one, m.render() + ": range partition not exact");
    for (const auto& row : im.pieces)
      for (const auto& piece : row)
        require(piece.slope * im.theta_value() == one,
                m.render() + ": slope is not 1/theta");
    for (const NuSequence& seq : r.sequences) {
      for (std::size_t n = 0; n < seq.terms.size(); ++n) {
        const auto& link = seq.links[n];
        ExtReal expect = intervals::apply_piece(im.piece(link.piece),
                                                seq.terms[link.parent]);
        require(seq.terms[n] == expect && seq.terms[n].tag == expect.tag,
                m.render() + ": replay mismatch");
      }
      oracle::PrefixUniverse pu(*r.original, seq.source, 4000);
      for (std::size_t i = 0; i < seq.terms.size(); ++i)
        for (std::size_t j = i + 1; j < seq.terms.size(); ++j)
          require((seq.terms[i].cmp(seq.terms[j]) < 0) ==
                      (pu.shift_compare(i, j) < 0),
                  m.render() + ": oracle order mismatch");
    }
  }
  auto s = std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::steady_clock::now() - start)
               .count();
  require(s < 300, "took " + std::to_string(s) + " s (limit 300)");
  note = std::to_string(completed) + " completed, " +
         std::to_string(classified) + " classified failures, " +
         std::to_string(s) + " s";
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "Thue-Morse golden sequences", criterion_tm_golden},
      {2, "Thue-Morse interval morphism", criterion_tm_intervals},
      {3, "suffix-transfer golden (aab/abb and baa/bab)",
       criterion_suffix_transfer},
      {4, "extended alphabet golden (aabab/bba)", criterion_extended_alphabet},
      {5, "shifted anchors (ab/babab)", criterion_shifted_anchors},
      {6, "oracle order isomorphism over the corpus",
       criterion_order_isomorphism},
      {7, "equidistribution: star discrepancy at 1024 terms",
       criterion_equidistribution},
      {8, "k-regular recurrence reproduces Thue-Morse", criterion_kregular},
      {9, "frequencies, exact and empirical", criterion_frequencies},
      {10, "fuzz: 500 random admissible morphisms", criterion_fuzz},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string note;
    try {
      c.body(note);
      std::printf("PASS criterion %2d: %s%s%s\n", c.id, c.title.c_str(),
                  note.empty() ? "" : " - ", note.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("FAIL criterion %2d: %s - %s\n", c.id, c.title.c_str(),
                  e.what());
    }
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
