#include "nuforge/intervals.hpp"

#include <algorithm>
#include <map>

#include "nuforge/errors.hpp"

namespace nuforge::intervals {

using language::TypeTag;
using qfield::ExtReal;
using qfield::FieldDesc;
using qfield::Interval;
using qfield::QNum;
using qfield::Tag;
using words::Letter;

namespace {
constexpr const char* kStage = "intervals";

// Chops [0,1] into consecutive intervals with the given lengths. Interior
// cuts are doubled (minus on the left, plus on the right); 0 and 1 stay
// neutral since only one subshift element attains each.
std::vector<Interval> partition_unit(const std::vector<QNum>& lengths,
                                     const FieldDesc& field) {
  std::vector<Interval> out;
  out.reserve(lengths.size());
  QNum cum = QNum::integer(0, field);
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i].sign() <= 0)
      throw_internal(kStage, "zero-length interval in the unit partition");
    ExtReal lo{cum, i == 0 ? Tag::neutral : Tag::plus};
    cum = cum + lengths[i];
    ExtReal hi{cum, i + 1 == lengths.size() ? Tag::neutral : Tag::minus};
    out.push_back(Interval{std::move(lo), std::move(hi)});
  }
  if (cum != QNum::integer(1, field))
    throw_internal(kStage, "interval lengths do not sum to 1");
  return out;
}
}  // namespace

qfield::QNum IntervalMorphism::theta_value() const {
  return theta.rational ? QNum::rational(theta.rational_theta, theta)
                        : QNum::theta(theta);
}

IntervalMorphism build_interval_morphism(
    const words::GeneralMorphism& m_final,
    const std::vector<qfield::QNum>& freqs, const qfield::FieldDesc& theta,
    const std::vector<language::TypeTag>& type_order) {
  const int q = m_final.alphabet_size();
  if (static_cast<int>(freqs.size()) != q)
    throw_internal(kStage, "frequency vector size mismatch");
  std::size_t total_types = 0;
  for (int x = 0; x < q; ++x) total_types += m_final.image(x).size();
  if (type_order.size() != total_types)
    throw_internal(kStage, "type order does not list every image position");

  IntervalMorphism im;
  im.theta = theta;
  im.alphabet = m_final.alphabet();
  const QNum theta_q = im.theta_value();
  const QNum inv_theta = theta_q.inverse();

  im.letter_intervals = partition_unit(freqs, theta);

  std::vector<QNum> range_lengths;
  range_lengths.reserve(type_order.size());
  for (const TypeTag& t : type_order)
    range_lengths.push_back(freqs[std::size_t(t.letter)] * inv_theta);
  std::vector<Interval> ranges = partition_unit(range_lengths, theta);

  std::vector<std::map<int, AffinePiece>> table(static_cast<std::size_t>(q));
  for (std::size_t i = 0; i < type_order.size(); ++i) {
    const TypeTag& t = type_order[i];
    const Interval& dom = im.letter_intervals[std::size_t(t.letter)];
    const Interval& rng = ranges[i];
    AffinePiece piece{t, dom, rng, inv_theta,
                      rng.lo.value - dom.lo.value * inv_theta};
    // The range sits inside the interval of the letter at this image
    // position, and the slope is exactly the length ratio.
    if (rng.length() * theta_q != dom.length())
      throw_internal(kStage, "range is not domain/theta");
    Letter target = m_final.image(t.letter)[std::size_t(t.offset)];
    const Interval& host = im.letter_intervals[std::size_t(target)];
    if (rng.lo.value < host.lo.value || rng.hi.value > host.hi.value)
      throw_internal(kStage, "range interval escapes its letter interval");
    if (piece.slope * theta_q != QNum::integer(1, theta))
      throw_internal(kStage, "slope is not 1/theta");
    auto [_, inserted] =
        table[std::size_t(t.letter)].emplace(t.offset, std::move(piece));
    if (!inserted) throw_internal(kStage, "duplicate type in type order");
  }
  im.pieces.reserve(static_cast<std::size_t>(q));
  for (int x = 0; x < q; ++x) {
    auto& row = table[std::size_t(x)];
    if (row.size() != m_final.image(x).size())
      throw_internal(kStage, "type order has gaps");
    std::vector<AffinePiece> ordered;
    ordered.reserve(row.size());
    int expect = 0;
    for (auto& [offset, piece] : row) {
      if (offset != expect++)
        throw_internal(kStage, "type offsets are not contiguous");
      ordered.push_back(std::move(piece));
    }
    im.pieces.push_back(std::move(ordered));
  }
  im.type_order = type_order;
  return im;
}

qfield::ExtReal apply_piece(const AffinePiece& piece,
                            const qfield::ExtReal& x) {
  if (!piece.domain.contains_value(x.value))
    throw_internal(kStage, "piece applied outside its domain");
  QNum value = x.value * piece.slope + piece.intercept;
  Tag tag = x.tag;
  if (tag == Tag::neutral) {
    if (x.value == piece.domain.lo.value)
      tag = piece.range.lo.tag;
    else if (x.value == piece.domain.hi.value)
      tag = piece.range.hi.tag;
  }
  return ExtReal{std::move(value), tag};
}

words::Letter coding_projection(const qfield::ExtReal& x,
                                const IntervalMorphism& im) {
  const auto& ivs = im.letter_intervals;
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    int lo_cmp = x.value.cmp(ivs[i].lo.value);
    int hi_cmp = x.value.cmp(ivs[i].hi.value);
    if (lo_cmp < 0 || hi_cmp > 0) continue;
    bool at_left_cut = (lo_cmp == 0 && i > 0);
    bool at_right_cut = (hi_cmp == 0 && i + 1 < ivs.size());
    if (!at_left_cut && !at_right_cut) return static_cast<Letter>(i);
    if (at_right_cut) {
      if (x.tag == Tag::minus) return static_cast<Letter>(i);
      if (x.tag == Tag::plus) continue;  // belongs to the next interval
      throw_internal(kStage, "untagged value at a doubled cut point");
    }
    // at_left_cut: the minus twin was handled with the previous interval.
    if (x.tag == Tag::plus) return static_cast<Letter>(i);
    throw_internal(kStage, "untagged value at a doubled cut point");
  }
  throw_internal(kStage, "value outside [0,1]");
}

}  // namespace nuforge::intervals
