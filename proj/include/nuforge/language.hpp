#pragma once

#include <compare>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "nuforge/words.hpp"

namespace nuforge::language {

// Sorted set of the distinct factors of one length.
struct FactorSet {
  std::size_t length = 0;
  std::vector<words::Word> factors;

  bool contains(const words::Word& w) const;
};

// Classifies a subshift element by the position of its start inside the
// image of its ancestor's first letter.
struct TypeTag {
  words::Letter letter = 0;
  int offset = 0;

  auto operator<=>(const TypeTag&) const = default;
};

struct TypingReport {
  int delay = 0;
  std::map<words::Word, TypeTag> typed;  // every factor of length `delay`
  bool separable = false;
  std::vector<TypeTag> type_order;  // block order, present iff separable
};

// Supplies complete factor sets of a subshift at any requested length.
// Results are memoized; shorter lengths derive from longer ones by taking
// windows.
class FactorSource {
 public:
  virtual ~FactorSource() = default;
  const FactorSet& factors(std::size_t n);

 protected:
  virtual FactorSet compute(std::size_t n) = 0;
  std::map<std::size_t, FactorSet> cache_;
};

// Factor sets of the subshift generated by an admissible morphism, built by
// iterating images of shorter factor sets. Handles both the primitive case
// (squaring internally while the shortest image has length 1) and the
// non-primitive shape phi(x) = x w x with the other letter fixed.
class MorphicFactorSource : public FactorSource {
 public:
  explicit MorphicFactorSource(words::GeneralMorphism m);

 protected:
  FactorSet compute(std::size_t n) override;

 private:
  FactorSet closure_len2() const;
  words::GeneralMorphism m_;       // as given
  words::GeneralMorphism worker_;  // squared until min image length >= 2
  bool nonprimitive_shape_ = false;
  words::Letter shape_letter_ = 0;  // x in the non-primitive shape
  std::size_t h_runs_ = 0;          // longest fixed-letter run inside phi(x)
};

// Factor sets of a sliding-window recoding of a parent subshift: length-n
// factors are images of the parent's length-(n + window - 1) factors.
class WindowFactorSource : public FactorSource {
 public:
  WindowFactorSource(FactorSource& parent, std::size_t window,
                     std::function<words::Word(const words::Word&)> lift);

 protected:
  FactorSet compute(std::size_t n) override;

 private:
  FactorSource& parent_;
  std::size_t window_;
  std::function<words::Word(const words::Word&)> lift_;
};

// The set of length-2 factors of the subshift of m (boundary closure).
FactorSet factors_len2(const words::GeneralMorphism& m);

// The exact set of length-L factors of the subshift of m.
FactorSet factors(const words::GeneralMorphism& m, std::size_t L);

// For every length-l factor u, the set of (first ancestor letter, offset)
// pairs over all ways u sits inside an image of an ancestor factor.
std::map<words::Word, std::set<TypeTag>> interpretation_map(
    const words::GeneralMorphism& m, FactorSource& source, std::size_t l);

// Interpretations of one word (its length selects the scan).
std::set<TypeTag> interpretations(const words::Word& u,
                                  const words::GeneralMorphism& m,
                                  FactorSource& source);

// Smallest l such that every length-l factor has exactly one interpretation
// (and, for binary alphabets, contains both letters). Throws a resource-cap
// error when `cap` is exhausted.
int synchronization_delay(const words::GeneralMorphism& m, FactorSource& source,
                          int cap);

// Types all length-D factors and decides separability: sorted
// lexicographically, each type must occupy one contiguous block.
TypingReport typing_and_separability(const words::GeneralMorphism& m,
                                     FactorSource& source, int D);

}  // namespace nuforge::language
