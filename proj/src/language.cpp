#include "nuforge/language.hpp"

#include <algorithm>

#include "nuforge/errors.hpp"

namespace nuforge::language {

using words::GeneralMorphism;
using words::Letter;
using words::Word;

namespace {
constexpr const char* kStage = "language";

std::vector<Word> sorted_unique(std::set<Word>&& s) {
  return std::vector<Word>(s.begin(), s.end());
}

void collect_windows(const Word& w, std::size_t n, std::set<Word>& out) {
  if (w.size() < n) return;
  for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.subword(i, n));
}

// Number of images a window of length l can touch when every image has at
// least min_len letters.
std::size_t max_span(std::size_t l, std::size_t min_len) {
  if (l <= 1) return 1;
  return (l - 2) / min_len + 2;
}
}  // namespace

bool FactorSet::contains(const words::Word& w) const {
  return std::binary_search(factors.begin(), factors.end(), w);
}

const FactorSet& FactorSource::factors(std::size_t n) {
  auto it = cache_.find(n);
  if (it != cache_.end()) return it->second;
  FactorSet fs = compute(n);
  auto [pos, _] = cache_.emplace(n, std::move(fs));
  return pos->second;
}

MorphicFactorSource::MorphicFactorSource(words::GeneralMorphism m)
    : m_(m), worker_(m) {
  if (!words::is_primitive(m_)) {
    // Expect the shape phi(x) = x w x with the other letter fixed; the
    // admissibility screen guarantees it on the pipeline path.
    bool found = false;
    for (Letter x = 0; x < m_.alphabet_size() && !found; ++x) {
      Letter y = 1 - x;
      if (m_.alphabet_size() != 2) break;
      const Word& ximg = m_.image(x);
      const Word& yimg = m_.image(y);
      if (yimg.size() == 1 && yimg[0] == y && ximg.size() >= 3 &&
          ximg.front() == x && ximg.back() == x && ximg.contains(y)) {
        nonprimitive_shape_ = true;
        shape_letter_ = x;
        std::size_t run = 0, best = 0;
        for (Letter c : ximg) {
          if (c == y)
            best = std::max(best, ++run);
          else
            run = 0;
        }
        h_runs_ = best;
        found = true;
      }
    }
    if (!found)
      throw_internal(kStage,
                     "factor enumeration needs a primitive morphism or the "
                     "x·w·x non-primitive shape");
  } else {
    while (worker_.min_image_length() < 2)
      worker_ = words::compose(worker_, worker_);
  }
}

FactorSet MorphicFactorSource::closure_len2() const {
  std::set<Word> fac;
  for (int x = 0; x < m_.alphabet_size(); ++x)
    collect_windows(m_.image(x), 2, fac);
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<Word> boundary;
    for (const Word& u : fac) {
      Word pair({m_.image(u[0]).back(), m_.image(u[1]).front()});
      if (!fac.count(pair)) boundary.insert(pair);
    }
    if (!boundary.empty()) {
      fac.insert(boundary.begin(), boundary.end());
      changed = true;
    }
  }
  return FactorSet{2, sorted_unique(std::move(fac))};
}

FactorSet MorphicFactorSource::compute(std::size_t n) {
  if (n == 0) return FactorSet{0, {Word{}}};
  if (n == 2) return closure_len2();
  if (n == 1) {
    std::set<Word> letters;
    for (const Word& u : factors(2).factors)
      for (Letter x : u) letters.insert(Word({x}));
    return FactorSet{1, sorted_unique(std::move(letters))};
  }
  // Derive from any longer complete set already known.
  for (auto it = cache_.lower_bound(n); it != cache_.end(); ++it) {
    if (it->first < n) continue;
    std::set<Word> fac;
    for (const Word& u : it->second.factors) collect_windows(u, n, fac);
    return FactorSet{n, sorted_unique(std::move(fac))};
  }

  if (!nonprimitive_shape_) {
    const std::size_t mlen = worker_.min_image_length();
    const std::size_t anc_len = (n - 2) / mlen + 2;  // ceil((n-1)/mlen) + 1
    const FactorSet& anc = factors(anc_len);
    std::set<Word> fac;
    for (const Word& v : anc.factors) collect_windows(worker_.apply(v), n, fac);
    return FactorSet{n, sorted_unique(std::move(fac))};
  }

  // Non-primitive shape: seed with the factors of phi^2(x) at length h+2
  // and grow through images of complete factor sets. A complete set of
  // length l yields complete sets up to p(l) = 1 + q(h + |phi(x)|) + r where
  // l - 1 = q(h + 1) + r.
  const std::size_t base_len = h_runs_ + 2;
  if (n <= base_len) {
    Word seed({shape_letter_});
    Word phi2 = m_.apply(m_.apply(seed));
    std::set<Word> fac;
    collect_windows(phi2, n, fac);
    return FactorSet{n, sorted_unique(std::move(fac))};
  }
  std::size_t l = base_len;
  const FactorSet* current = &factors(base_len);
  while (l < n) {
    std::size_t q = (l - 1) / (h_runs_ + 1);
    std::size_t r = (l - 1) % (h_runs_ + 1);
    std::size_t p = 1 + q * (h_runs_ + m_.image(shape_letter_).size()) + r;
    if (p <= l) throw_internal(kStage, "factor growth stalled");
    std::size_t next = std::min(n, p);
    std::set<Word> fac;
    for (const Word& v : current->factors)
      collect_windows(m_.apply(v), next, fac);
    auto [pos, inserted] =
        cache_.emplace(next, FactorSet{next, sorted_unique(std::move(fac))});
    current = &pos->second;
    l = next;
  }
  return *current;  // n == l; copied into the cache by the caller
}

WindowFactorSource::WindowFactorSource(
    FactorSource& parent, std::size_t window,
    std::function<words::Word(const words::Word&)> lift)
    : parent_(parent), window_(window), lift_(std::move(lift)) {}

FactorSet WindowFactorSource::compute(std::size_t n) {
  if (n == 0) return FactorSet{0, {Word{}}};
  const FactorSet& base = parent_.factors(n + window_ - 1);
  std::set<Word> fac;
  for (const Word& u : base.factors) fac.insert(lift_(u));
  return FactorSet{n, sorted_unique(std::move(fac))};
}

FactorSet factors_len2(const words::GeneralMorphism& m) {
  MorphicFactorSource src(m);
  return src.factors(2);
}

FactorSet factors(const words::GeneralMorphism& m, std::size_t L) {
  MorphicFactorSource src(m);
  return src.factors(L);
}

std::map<words::Word, std::set<TypeTag>> interpretation_map(
    const words::GeneralMorphism& m, FactorSource& source, std::size_t l) {
  const std::size_t anc_len = max_span(l, m.min_image_length());
  const FactorSet& anc = source.factors(anc_len);
  std::map<Word, std::set<TypeTag>> out;
  for (const Word& v : anc.factors) {
    // Walk the image of v, tracking which letter's image covers position s.
    std::vector<std::size_t> starts(v.size() + 1, 0);
    for (std::size_t i = 0; i < v.size(); ++i)
      starts[i + 1] = starts[i] + m.image(v[i]).size();
    Word img = m.apply(v);
    if (img.size() < l) continue;
    std::size_t i0 = 0;
    for (std::size_t s = 0; s + l <= img.size(); ++s) {
      while (starts[i0 + 1] <= s) ++i0;
      out[img.subword(s, l)].insert(
          TypeTag{v[i0], static_cast<int>(s - starts[i0])});
    }
  }
  // The scan covers exactly the factor set of length l.
  const FactorSet& expect = source.factors(l);
  if (out.size() != expect.factors.size())
    throw_internal(kStage, "interpretation scan missed factors");
  return out;
}

std::set<TypeTag> interpretations(const words::Word& u,
                                  const words::GeneralMorphism& m,
                                  FactorSource& source) {
  auto map = interpretation_map(m, source, u.size());
  auto it = map.find(u);
  if (it == map.end())
    throw_input(kStage, "word is not a factor of the subshift");
  return it->second;
}

int synchronization_delay(const words::GeneralMorphism& m,
                          FactorSource& source, int cap) {
  const bool binary = m.alphabet_size() == 2;
  for (int l = 2; l <= cap; ++l) {
    auto imap = interpretation_map(m, source, static_cast<std::size_t>(l));
    bool ok = true;
    for (const auto& [w, tags] : imap) {
      if (tags.size() != 1) {
        ok = false;
        break;
      }
      if (binary && (!w.contains(0) || !w.contains(1))) {
        ok = false;
        break;
      }
    }
    if (ok) return l;
  }
  throw_cap(kStage, "no synchronization delay found up to cap " +
                        std::to_string(cap));
}

TypingReport typing_and_separability(const words::GeneralMorphism& m,
                                     FactorSource& source, int D) {
  auto imap = interpretation_map(m, source, static_cast<std::size_t>(D));
  TypingReport report;
  report.delay = D;
  for (const auto& [w, tags] : imap) {
    if (tags.size() != 1)
      throw_internal(kStage, "typing at a length that is not a delay");
    report.typed.emplace(w, *tags.begin());
  }

  std::size_t expected_types = 0;
  for (int x = 0; x < m.alphabet_size(); ++x)
    expected_types += m.image(x).size();
  std::set<TypeTag> seen_tags;
  for (const auto& [w, tag] : report.typed) seen_tags.insert(tag);
  if (seen_tags.size() != expected_types)
    throw_internal(kStage, "not every image position occurs as a type");

  // The map is keyed in lexicographic order; group into runs.
  report.separable = true;
  std::set<TypeTag> closed;
  bool have_current = false;
  TypeTag current{};
  for (const auto& [w, tag] : report.typed) {
    if (have_current && tag == current) continue;
    if (closed.count(tag)) {
      report.separable = false;
      break;
    }
    if (have_current) closed.insert(current);
    current = tag;
    have_current = true;
    report.type_order.push_back(tag);
  }
  if (!report.separable) report.type_order.clear();
  return report;
}

}  // namespace nuforge::language
