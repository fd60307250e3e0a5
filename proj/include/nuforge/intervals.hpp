#pragma once

#include <vector>

#include "nuforge/language.hpp"
#include "nuforge/qfield.hpp"
#include "nuforge/words.hpp"

namespace nuforge::intervals {

// One increasing affine branch x -> x/theta + intercept mapping the letter
// interval onto its type's range interval.
struct AffinePiece {
  language::TypeTag type;
  qfield::Interval domain;
  qfield::Interval range;
  qfield::QNum slope;
  qfield::QNum intercept;
};

struct IntervalMorphism {
  qfield::FieldDesc theta;
  words::Alphabet alphabet;
  std::vector<qfield::Interval> letter_intervals;        // by letter
  std::vector<std::vector<AffinePiece>> pieces;          // [letter][offset]
  std::vector<language::TypeTag> type_order;

  const AffinePiece& piece(const language::TypeTag& t) const {
    return pieces[std::size_t(t.letter)][std::size_t(t.offset)];
  }
  std::size_t image_length(words::Letter x) const {
    return pieces[std::size_t(x)].size();
  }
  qfield::QNum theta_value() const;
};

// Letter intervals partition [0,1] in alphabet order by frequency; range
// intervals partition [0,1] in type order with lengths freq/theta. Interior
// cut points carry minus/plus tags, the global endpoints stay neutral.
IntervalMorphism build_interval_morphism(
    const words::GeneralMorphism& m_final,
    const std::vector<qfield::QNum>& freqs, const qfield::FieldDesc& theta,
    const std::vector<language::TypeTag>& type_order);

// Applies one branch. Tagged points keep their tag; a neutral point equal to
// a domain endpoint adopts the tag of the matching range endpoint.
qfield::ExtReal apply_piece(const AffinePiece& piece, const qfield::ExtReal& x);

// The letter whose interval contains x; at a doubled cut point the tag
// picks the side.
words::Letter coding_projection(const qfield::ExtReal& x,
                                const IntervalMorphism& im);

}  // namespace nuforge::intervals
