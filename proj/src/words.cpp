#include "nuforge/words.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "nuforge/errors.hpp"

namespace nuforge::words {

namespace {
constexpr const char* kStageParse = "parse";
constexpr const char* kStageWords = "words";
}  // namespace

Alphabet Alphabet::binary() { return Alphabet{{"a", "b"}}; }

Word Word::subword(std::size_t pos, std::size_t len) const {
  return Word(std::vector<Letter>(letters_.begin() + pos,
                                  letters_.begin() + pos + len));
}

bool Word::starts_with(const Word& prefix) const {
  if (prefix.size() > size()) return false;
  return std::equal(prefix.letters_.begin(), prefix.letters_.end(),
                    letters_.begin());
}

bool Word::contains(Letter x) const {
  return std::find(letters_.begin(), letters_.end(), x) != letters_.end();
}

std::size_t Word::count(Letter x) const {
  return static_cast<std::size_t>(
      std::count(letters_.begin(), letters_.end(), x));
}

std::string Word::render(const Alphabet& alphabet) const {
  std::string out;
  for (Letter x : letters_) out += alphabet.label(x);
  return out;
}

GeneralMorphism::GeneralMorphism(Alphabet alphabet, std::vector<Word> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
  if (images_.size() != static_cast<std::size_t>(alphabet_.size()))
    throw_internal(kStageWords, "morphism needs one image per letter");
  for (const Word& img : images_) {
    if (img.empty()) throw_input(kStageWords, "erasing morphism (empty image)");
    for (Letter x : img)
      if (x < 0 || x >= alphabet_.size())
        throw_internal(kStageWords, "image letter outside alphabet");
  }
}

Word GeneralMorphism::apply(const Word& w) const {
  std::size_t total = 0;
  for (Letter x : w) total += image(x).size();
  std::vector<Letter> buf;
  buf.reserve(total);
  for (Letter x : w)
    for (Letter y : image(x)) buf.push_back(y);
  return Word(std::move(buf));
}

Word GeneralMorphism::apply_capped(const Word& w, std::size_t cap) const {
  std::vector<Letter> buf;
  buf.reserve(cap);
  for (Letter x : w) {
    for (Letter y : image(x)) {
      if (buf.size() >= cap) return Word(std::move(buf));
      buf.push_back(y);
    }
  }
  return Word(std::move(buf));
}

std::size_t GeneralMorphism::min_image_length() const {
  std::size_t m = images_.front().size();
  for (const Word& img : images_) m = std::min(m, img.size());
  return m;
}

std::size_t GeneralMorphism::max_image_length() const {
  std::size_t m = 0;
  for (const Word& img : images_) m = std::max(m, img.size());
  return m;
}

bool GeneralMorphism::is_uniform(std::size_t* k) const {
  std::size_t len = images_.front().size();
  for (const Word& img : images_)
    if (img.size() != len) return false;
  if (k) *k = len;
  return true;
}

std::string GeneralMorphism::render() const {
  std::string out;
  for (int i = 0; i < alphabet_.size(); ++i) {
    if (i) out += "; ";
    out += alphabet_.label(i) + "->" + images_[std::size_t(i)].render(alphabet_);
  }
  return out;
}

GeneralMorphism compose(const GeneralMorphism& outer,
                        const GeneralMorphism& inner) {
  if (outer.alphabet_size() != inner.alphabet_size())
    throw_internal(kStageWords, "composition over mismatched alphabets");
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(inner.alphabet_size()));
  for (int x = 0; x < inner.alphabet_size(); ++x)
    images.push_back(outer.apply(inner.image(x)));
  return GeneralMorphism(outer.alphabet(), std::move(images));
}

long long IntMatrix::trace() const {
  long long t = 0;
  for (int i = 0; i < q; ++i) t += at(i, i);
  return t;
}

long long IntMatrix::det2() const {
  if (q != 2) throw_internal(kStageWords, "det2 on non-2x2 matrix");
  return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
}

IntMatrix IntMatrix::times(const IntMatrix& other) const {
  if (q != other.q) throw_internal(kStageWords, "matrix size mismatch");
  IntMatrix out{q, std::vector<long long>(std::size_t(q) * q, 0)};
  for (int i = 0; i < q; ++i)
    for (int k = 0; k < q; ++k) {
      long long v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < q; ++j) out.at(i, j) += v * other.at(k, j);
    }
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Admissible: return "Admissible";
    case Verdict::PeriodicFixedPoint: return "PeriodicFixedPoint";
    case Verdict::NoFixedPoint: return "NoFixedPoint";
    case Verdict::NotUniformlyRecurrent: return "NotUniformlyRecurrent";
    case Verdict::UnsupportedShape: return "UnsupportedShape";
  }
  return "?";
}

GeneralMorphism parse_morphism(std::string_view text) {
  std::string compact;
  compact.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  if (compact.empty()) throw_input(kStageParse, "empty morphism spec");

  std::vector<std::string> rules;
  std::string cur;
  for (char c : compact) {
    if (c == ';' || c == ',') {
      rules.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  rules.push_back(cur);

  auto letter_of = [&](char c) -> Letter {
    if (c == 'a') return 0;
    if (c == 'b') return 1;
    throw_input(kStageParse, std::string("unknown letter '") + c +
                                 "' (input alphabet is {a, b})");
  };

  std::map<Letter, Word> images;
  for (const std::string& rule : rules) {
    if (rule.empty()) throw_input(kStageParse, "empty rule");
    auto arrow = rule.find("->");
    if (arrow == std::string::npos)
      throw_input(kStageParse, "malformed rule '" + rule + "' (expected ->)");
    if (arrow != 1)
      throw_input(kStageParse,
                  "rule left side must be a single letter in '" + rule + "'");
    Letter lhs = letter_of(rule[0]);
    std::string rhs = rule.substr(arrow + 2);
    if (rhs.empty())
      throw_input(kStageParse, "empty image in rule '" + rule + "'");
    std::vector<Letter> img;
    img.reserve(rhs.size());
    for (char c : rhs) img.push_back(letter_of(c));
    if (images.count(lhs))
      throw_input(kStageParse, "duplicate rule for letter '" + rule.substr(0, 1) + "'");
    images[lhs] = Word(std::move(img));
  }
  for (Letter x : {0, 1})
    if (!images.count(x))
      throw_input(kStageParse, std::string("missing rule for letter '") +
                                   (x == 0 ? 'a' : 'b') + "'");
  return GeneralMorphism(Alphabet::binary(), {images[0], images[1]});
}

IntMatrix matrix(const GeneralMorphism& m) {
  int q = m.alphabet_size();
  IntMatrix out{q, std::vector<long long>(std::size_t(q) * q, 0)};
  for (int j = 0; j < q; ++j)
    for (Letter i : m.image(j)) out.at(i, j) += 1;
  return out;
}

bool is_primitive(const GeneralMorphism& m) {
  const IntMatrix M = matrix(m);
  const int q = M.q;
  // Wielandt bound: if any power is positive, one of the first q^2-2q+2 is.
  const int bound = q * q - 2 * q + 2;
  std::vector<char> base(std::size_t(q) * q), pow(std::size_t(q) * q);
  for (int i = 0; i < q * q; ++i)
    base[std::size_t(i)] = pow[std::size_t(i)] = M.entries[std::size_t(i)] > 0;
  for (int step = 1; step <= bound; ++step) {
    if (std::all_of(pow.begin(), pow.end(), [](char c) { return c != 0; }))
      return true;
    std::vector<char> next(std::size_t(q) * q, 0);
    for (int i = 0; i < q; ++i)
      for (int k = 0; k < q; ++k)
        if (pow[std::size_t(i) * q + k])
          for (int j = 0; j < q; ++j)
            if (base[std::size_t(k) * q + j]) next[std::size_t(i) * q + j] = 1;
    pow.swap(next);
  }
  return false;
}

std::vector<Letter> fixed_point_letters(const GeneralMorphism& m) {
  std::vector<Letter> out;
  for (int x = 0; x < m.alphabet_size(); ++x) {
    const Word& img = m.image(x);
    if (img.front() == x && img.size() > 1) out.push_back(x);
  }
  return out;
}

namespace {

// phi(x) == x (ba)^m, used with the symmetric pattern on b for the
// alternating periodic fixed points.
bool alternating_shape(const Word& img, Letter x, Letter y, std::size_t* reps) {
  if (img.empty() || img[0] != x || img.size() % 2 == 0) return false;
  std::size_t m = (img.size() - 1) / 2;
  for (std::size_t i = 0; i < m; ++i)
    if (img[1 + 2 * i] != y || img[2 + 2 * i] != x) return false;
  if (reps) *reps = m;
  return true;
}

// Smallest u with w == u^k; returns |u|.
std::size_t primitive_root_length(const Word& w) {
  for (std::size_t p = 1; p <= w.size(); ++p) {
    if (w.size() % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < w.size() && ok; ++i)
      if (w[i] != w[i - p]) ok = false;
    if (ok) return p;
  }
  return w.size();
}

// phi(x) == x (y^m x)^n with m >= 1, n >= 1: fixed point (x y^m)^w.
bool bounded_run_shape(const Word& img, Letter x, Letter y) {
  if (img.size() < 3 || img.front() != x || img.back() != x) return false;
  std::vector<std::size_t> runs;
  std::size_t run = 0;
  for (std::size_t i = 1; i < img.size(); ++i) {
    if (img[i] == y) {
      ++run;
    } else if (img[i] == x) {
      runs.push_back(run);
      run = 0;
    }
  }
  if (runs.empty()) return false;
  for (std::size_t r : runs)
    if (r != runs.front() || r == 0) return false;
  return true;
}

}  // namespace

Validity admissibility(const GeneralMorphism& m) {
  if (m.alphabet_size() != 2)
    throw_input("admissibility", "only binary morphisms are accepted");
  const Word& A = m.image(0);
  const Word& B = m.image(1);

  std::vector<Letter> fixed = fixed_point_letters(m);
  // Letters with image equal to themselves still anchor the non-primitive
  // admissible shape, but yield no growing fixed point on their own.
  bool a_identity = (A.size() == 1 && A[0] == 0);
  bool b_identity = (B.size() == 1 && B[0] == 1);
  if (fixed.empty())
    return {Verdict::NoFixedPoint,
            "no letter x with phi(x) starting with x and phi(x) != x"};

  // Alternating images a(ba)^m / b(ab)^n give the periodic word (ab)^w.
  std::size_t ma = 0, nb = 0;
  if (alternating_shape(A, 0, 1, &ma) && alternating_shape(B, 1, 0, &nb) &&
      ma + nb >= 1)
    return {Verdict::PeriodicFixedPoint,
            "images are a(ba)^m and b(ab)^n; fixed points are (ab)-periodic"};

  // Both images powers of one word of length >= 2.
  {
    std::size_t pa = primitive_root_length(A);
    std::size_t pb = primitive_root_length(B);
    if (pa == pb && pa >= 2 && A.subword(0, pa) == B.subword(0, pb))
      return {Verdict::PeriodicFixedPoint,
              "both images are powers of the common word " +
                  A.subword(0, pa).render(m.alphabet())};
  }

  if (is_primitive(m)) return {Verdict::Admissible, "primitive"};

  // Non-primitive. The only minimal aperiodic shape is phi(x) = x w x with
  // the other letter fixed and occurring in w.
  for (Letter x : {0, 1}) {
    Letter y = 1 - x;
    bool y_fixed = (x == 0) ? b_identity : a_identity;
    const Word& img = m.image(x);
    if (y_fixed && img.size() >= 3 && img.front() == x && img.back() == x &&
        img.contains(y)) {
      if (bounded_run_shape(img, x, y))
        return {Verdict::PeriodicFixedPoint,
                "image of " + m.alphabet().label(x) +
                    " is x(y^m x)^n with the other letter fixed"};
      return {Verdict::Admissible,
              "non-primitive of shape x·w·x with the other letter fixed"};
    }
  }

  bool all_trivial = true;
  for (Letter x : fixed) {
    const Word& img = m.image(x);
    if (img.count(x) != img.size()) all_trivial = false;
  }
  if (all_trivial)
    return {Verdict::PeriodicFixedPoint,
            "every fixed point is a single repeated letter"};

  for (Letter y : {0, 1}) {
    const Word& yimg = m.image(y);
    if (yimg.count(y) == yimg.size() && yimg.size() >= 2) {
      for (Letter x : fixed)
        if (m.image(x).contains(y))
          return {Verdict::NotUniformlyRecurrent,
                  "subshift contains arbitrarily long runs of " +
                      m.alphabet().label(y)};
    }
  }

  for (Letter y : {0, 1}) {
    bool y_identity = (y == 0) ? a_identity : b_identity;
    if (!y_identity) continue;
    for (Letter x : fixed) {
      const Word& img = m.image(x);
      if (img.contains(y) && img.back() != x)
        return {Verdict::NotUniformlyRecurrent,
                "fixed letter image contains the fixed " +
                    m.alphabet().label(y) + " but does not end with " +
                    m.alphabet().label(x)};
    }
  }

  return {Verdict::UnsupportedShape,
          "non-primitive morphism outside the supported shape"};
}

Word fixed_point_prefix(const GeneralMorphism& m, Letter x, std::size_t n) {
  std::vector<Letter> fixed = fixed_point_letters(m);
  if (std::find(fixed.begin(), fixed.end(), x) == fixed.end())
    throw_input(kStageWords, "letter " + m.alphabet().label(x) +
                                 " is not a fixed-point letter");
  if (n == 0) return Word{};
  Word w({x});
  std::size_t guard = 0;
  while (w.size() < n) {
    w = m.apply_capped(w, n);
    if (++guard > n + 64)
      throw_internal(kStageWords, "fixed point prefix failed to grow");
  }
  return w.subword(0, n);
}

}  // namespace nuforge::words
