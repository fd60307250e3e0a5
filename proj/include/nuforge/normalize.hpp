#pragma once

#include <vector>

#include "nuforge/words.hpp"

namespace nuforge::normalize {

enum class Orientation { Preserving, Reversing };

// Decides whether the morphism preserves or reverses lexicographic order on
// infinite words. When one image is a prefix of the other, common prefixes
// are rotated to the end until the images are directly comparable.
Orientation orientation(const words::GeneralMorphism& m);

// Returns m unchanged if order-preserving, otherwise m∘m (which is).
words::GeneralMorphism square_if_reversing(const words::GeneralMorphism& m);

// Record of the preparation steps. `prepared` has images ending with
// different letters and satisfies prepared(w) = pi · source(w) for infinite
// words, where `source` is the possibly squared input.
struct NormalizationTrace {
  bool squared = false;
  words::GeneralMorphism source;    // input, squared when order-reversing
  std::vector<words::Word> transfers;  // suffixes moved, in transfer order
  words::Word pi;                   // concatenation, last transfer first
  words::GeneralMorphism prepared;  // psi
};

// Repeatedly moves the maximal common suffix of the two images to the front
// until the images end with different letters.
NormalizationTrace transfer_suffixes(const words::GeneralMorphism& m);

// Full preparation: orientation check, squaring, suffix transfer.
NormalizationTrace prepare(const words::GeneralMorphism& m);

}  // namespace nuforge::normalize
