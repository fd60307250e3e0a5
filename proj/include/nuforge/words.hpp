#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace nuforge::words {

// A letter is an index into an ordered alphabet; the alphabet order is the
// index order.
using Letter = int;

struct Alphabet {
  std::vector<std::string> labels;

  bool operator==(const Alphabet&) const = default;
  int size() const { return static_cast<int>(labels.size()); }
  const std::string& label(Letter x) const {
    return labels.at(static_cast<std::size_t>(x));
  }

  static Alphabet binary();  // {a, b} with a < b
};

// Finite word over letter indices. Comparison is lexicographic with the
// usual prefix convention (a proper prefix sorts before its extensions).
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  const std::vector<Letter>& letters() const { return letters_; }

  void push_back(Letter x) { letters_.push_back(x); }
  void append(const Word& other) {
    letters_.insert(letters_.end(), other.letters_.begin(),
                    other.letters_.end());
  }

  Word subword(std::size_t pos, std::size_t len) const;
  bool starts_with(const Word& prefix) const;
  bool contains(Letter x) const;
  std::size_t count(Letter x) const;

  std::string render(const Alphabet& alphabet) const;

  auto operator<=>(const Word&) const = default;

  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

 private:
  std::vector<Letter> letters_;
};

// Non-erasing morphism over an ordered alphabet, given by one image per
// letter.
class GeneralMorphism {
 public:
  GeneralMorphism(Alphabet alphabet, std::vector<Word> images);

  const Alphabet& alphabet() const { return alphabet_; }
  int alphabet_size() const { return alphabet_.size(); }
  const Word& image(Letter x) const {
    return images_.at(static_cast<std::size_t>(x));
  }
  const std::vector<Word>& images() const { return images_; }

  Word apply(const Word& w) const;
  // Applies the morphism but stops emitting letters once `cap` have been
  // produced.
  Word apply_capped(const Word& w, std::size_t cap) const;

  std::size_t min_image_length() const;
  std::size_t max_image_length() const;
  bool is_uniform(std::size_t* k = nullptr) const;

  std::string render() const;  // "a->ab; b->ba"

  bool operator==(const GeneralMorphism&) const = default;

 private:
  Alphabet alphabet_;
  std::vector<Word> images_;
};

// outer . inner, i.e. x -> outer(inner(x)). Both must share an alphabet.
GeneralMorphism compose(const GeneralMorphism& outer,
                        const GeneralMorphism& inner);

// Occurrence matrix: entry (i, j) counts letter i in the image of letter j,
// so column sums are image lengths.
struct IntMatrix {
  int q = 0;
  std::vector<long long> entries;  // row-major q*q

  long long at(int i, int j) const { return entries[std::size_t(i) * q + j]; }
  long long& at(int i, int j) { return entries[std::size_t(i) * q + j]; }
  long long trace() const;
  long long det2() const;  // 2x2 only
  IntMatrix times(const IntMatrix& other) const;
  bool operator==(const IntMatrix&) const = default;
};

enum class Verdict {
  Admissible,
  PeriodicFixedPoint,
  NoFixedPoint,
  NotUniformlyRecurrent,
  UnsupportedShape,
};

struct Validity {
  Verdict verdict;
  std::string detail;
  bool admissible() const { return verdict == Verdict::Admissible; }
};

std::string verdict_name(Verdict v);

// Parses "a->ab;b->ba" (';' or ',' separated, whitespace ignored) into a
// binary morphism with alphabet a < b. Both rules are required.
GeneralMorphism parse_morphism(std::string_view text);

IntMatrix matrix(const GeneralMorphism& m);

// True iff some power of the occurrence matrix is entrywise positive.
bool is_primitive(const GeneralMorphism& m);

// Letters x with image starting with x and image != x.
std::vector<Letter> fixed_point_letters(const GeneralMorphism& m);

// Input screening for binary morphisms: rejects morphisms whose fixed
// points are periodic or whose subshift is not uniformly recurrent.
Validity admissibility(const GeneralMorphism& m);

// First n letters of the fixed point starting with x.
Word fixed_point_prefix(const GeneralMorphism& m, Letter x, std::size_t n);

}  // namespace nuforge::words
