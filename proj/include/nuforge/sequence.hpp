#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nuforge/extend.hpp"
#include "nuforge/intervals.hpp"
#include "nuforge/normalize.hpp"

namespace nuforge::sequence {

// nu[index] = f_{piece}(nu[parent]).
struct ChainLink {
  std::size_t index = 0;
  std::size_t parent = 0;
  language::TypeTag piece;
};

struct NuSequence {
  words::Letter source = 0;  // fixed point letter of the original morphism
  qfield::FieldDesc theta;
  std::vector<qfield::ExtReal> terms;
  std::vector<ChainLink> links;          // one per resolved index, by index
  std::vector<std::size_t> cycle_anchors;  // indices solved as cycle fixed points
};

// The unique (parent, offset) with n + p = sum of image lengths before
// parent, plus offset. `image_length(letter)` comes from the interval
// morphism.
ChainLink chain_map(const words::Word& u_prefix,
                    const intervals::IntervalMorphism& im, std::size_t p,
                    std::size_t n);

// First N terms of the nu sequence of the fixed point of `original`
// starting with x. The chain relation u = sigma^p(final(u)) over the final
// alphabet drives an index chase; cycles are solved exactly as fixed points
// of composed affine contractions.
NuSequence generate_nu(const words::GeneralMorphism& original,
                       const normalize::NormalizationTrace& trace,
                       const std::optional<extend::Coding>& coding,
                       const intervals::IntervalMorphism& im, words::Letter x,
                       std::size_t N, std::size_t chain_cap = 0);

// Base-k self-similarity: nu[k n + p] = nu[n]/k + C[w[n]][p], available when
// the final morphism is k-uniform and no suffix transfer happened.
struct KRegularRecurrence {
  std::size_t k = 0;
  words::Alphabet alphabet;
  std::vector<std::vector<qfield::QNum>> constants;  // [letter][offset]
};

std::optional<KRegularRecurrence> kregular_recurrence(
    const intervals::IntervalMorphism& im, std::size_t pi_length);

}  // namespace nuforge::sequence
