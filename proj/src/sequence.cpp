#include "nuforge/sequence.hpp"

#include <algorithm>
#include <map>

#include "nuforge/errors.hpp"

namespace nuforge::sequence {

using intervals::AffinePiece;
using intervals::IntervalMorphism;
using language::TypeTag;
using qfield::ExtReal;
using qfield::Interval;
using qfield::QNum;
using qfield::Tag;
using words::Letter;
using words::Word;

namespace {
constexpr const char* kStage = "sequence";

// Prefix of the fixed point over the final alphabet, regrown on demand as
// the index chase climbs.
class FinalPrefix {
 public:
  FinalPrefix(const words::GeneralMorphism& original,
              const std::optional<extend::Coding>& coding, Letter x)
      : original_(original), coding_(coding), x_(x) {}

  // u[0..n] valid after ensure(n).
  void ensure(std::size_t n) {
    while (u_.size() <= n) {
      target_ = std::max<std::size_t>(2 * target_, n + 16);
      std::size_t window =
          coding_ ? static_cast<std::size_t>(coding_->window()) : 1;
      Word w = words::fixed_point_prefix(original_, x_, target_ + window + 1);
      u_ = coding_ ? extend::lift_word(w, *coding_) : std::move(w);
    }
  }

  Letter at(std::size_t n) {
    ensure(n);
    return u_[n];
  }

 private:
  const words::GeneralMorphism& original_;
  const std::optional<extend::Coding>& coding_;
  Letter x_;
  std::size_t target_ = 0;
  Word u_;
};

struct PendingLink {
  std::size_t index;
  std::size_t parent;
  TypeTag piece;
};

Interval map_interval(const AffinePiece& piece, const Interval& iv) {
  return Interval{intervals::apply_piece(piece, iv.lo),
                  intervals::apply_piece(piece, iv.hi)};
}

ExtReal solve_cycle(const IntervalMorphism& im,
                    const std::vector<PendingLink>& cycle) {
  // cycle[j] asserts nu[cycle[j].index] = f_{piece_j}(nu[cycle[j+1].index]),
  // wrapping at the end. Compose around the loop starting from the last
  // piece; the composition contracts with ratio theta^-len.
  const QNum one = QNum::integer(1, im.theta);
  QNum slope = one;
  QNum intercept = QNum::integer(0, im.theta);
  Interval range = im.piece(cycle.back().piece).domain;
  for (std::size_t j = cycle.size(); j-- > 0;) {
    const AffinePiece& piece = im.piece(cycle[j].piece);
    slope = piece.slope * slope;
    intercept = piece.slope * intercept + piece.intercept;
    range = map_interval(piece, range);
  }
  if (slope.cmp(one) >= 0)
    throw_internal(kStage, "cycle composition is not a contraction");
  QNum theta_pow = one;
  for (std::size_t j = 0; j < cycle.size(); ++j)
    theta_pow = theta_pow * im.theta_value();
  if (slope * theta_pow != one)
    throw_internal(kStage, "cycle slope is not theta^-len");
  QNum value = intercept / (one - slope);
  if (!range.contains_value(value))
    throw_internal(kStage, "cycle fixed point escapes the composed range");
  Tag tag = Tag::neutral;
  if (value == range.lo.value)
    tag = range.lo.tag;
  else if (value == range.hi.value)
    tag = range.hi.tag;
  return ExtReal{std::move(value), tag};
}

}  // namespace

ChainLink chain_map(const words::Word& u_prefix,
                    const intervals::IntervalMorphism& im, std::size_t p,
                    std::size_t n) {
  const std::size_t pos = n + p;
  std::size_t cum = 0;
  for (std::size_t i = 0; i < u_prefix.size(); ++i) {
    std::size_t len = im.image_length(u_prefix[i]);
    if (pos < cum + len)
      return ChainLink{n, i,
                       TypeTag{u_prefix[i], static_cast<int>(pos - cum)}};
    cum += len;
  }
  throw_input(kStage, "prefix too short for the requested index");
}

NuSequence generate_nu(const words::GeneralMorphism& original,
                       const normalize::NormalizationTrace& trace,
                       const std::optional<extend::Coding>& coding,
                       const intervals::IntervalMorphism& im, words::Letter x,
                       std::size_t N, std::size_t chain_cap) {
  const std::size_t p = trace.pi.size();
  if (chain_cap == 0) chain_cap = 10 * (N + p) + 1000;

  NuSequence seq;
  seq.source = x;
  seq.theta = im.theta;
  if (N == 0) return seq;

  FinalPrefix prefix(original, coding, x);

  // Image-length prefix sums over u, grown alongside the prefix.
  std::vector<std::size_t> cum{0};
  auto link_for = [&](std::size_t n) -> PendingLink {
    std::size_t pos = n + p;
    while (cum.back() <= pos) {
      Letter c = prefix.at(cum.size() - 1);
      cum.push_back(cum.back() + im.image_length(c));
    }
    auto it = std::upper_bound(cum.begin(), cum.end(), pos);
    std::size_t parent = static_cast<std::size_t>(it - cum.begin()) - 1;
    return PendingLink{n, parent,
                       TypeTag{prefix.at(parent),
                               static_cast<int>(pos - cum[parent])}};
  };

  std::map<std::size_t, ExtReal> memo;
  std::map<std::size_t, ChainLink> links;
  std::size_t steps = 0;

  for (std::size_t n = 0; n < N; ++n) {
    if (memo.count(n)) continue;
    std::vector<PendingLink> path;
    std::map<std::size_t, std::size_t> pos_in_path;
    std::size_t cur = n;
    std::size_t resolved_from = 0;  // path index from which values are known
    while (true) {
      if (++steps > chain_cap)
        throw_cap(kStage, "chain length cap exceeded (cap " +
                              std::to_string(chain_cap) + ")");
      auto hit = memo.find(cur);
      if (hit != memo.end()) {
        resolved_from = path.size();
        break;
      }
      auto seen = pos_in_path.find(cur);
      if (seen != pos_in_path.end()) {
        // Cycle: path[seen->second ..] closes on cur.
        std::vector<PendingLink> cycle(path.begin() + seen->second,
                                       path.end());
        ExtReal anchor = solve_cycle(im, cycle);
        memo.emplace(cycle.front().index, std::move(anchor));
        seq.cycle_anchors.push_back(cycle.front().index);
        // Fill the rest of the cycle from the back: each entry's parent is
        // the next entry (or the anchor for the last one).
        for (std::size_t j = cycle.size(); j-- > 1;) {
          const AffinePiece& piece = im.piece(cycle[j].piece);
          memo.emplace(cycle[j].index,
                       intervals::apply_piece(piece, memo.at(cycle[j].parent)));
        }
        for (const PendingLink& pl : cycle)
          links.emplace(pl.index, ChainLink{pl.index, pl.parent, pl.piece});
        resolved_from = seen->second;
        break;
      }
      PendingLink link = link_for(cur);
      pos_in_path.emplace(cur, path.size());
      path.push_back(link);
      cur = link.parent;
    }
    // Back-substitute the unresolved front of the path.
    for (std::size_t j = resolved_from; j-- > 0;) {
      const PendingLink& pl = path[j];
      if (memo.count(pl.index)) continue;
      const AffinePiece& piece = im.piece(pl.piece);
      memo.emplace(pl.index,
                   intervals::apply_piece(piece, memo.at(pl.parent)));
      links.emplace(pl.index, ChainLink{pl.index, pl.parent, pl.piece});
    }
  }

  seq.terms.reserve(N);
  seq.links.reserve(N);
  for (std::size_t n = 0; n < N; ++n) {
    seq.terms.push_back(memo.at(n));
    seq.links.push_back(links.at(n));
  }

  // Aperiodicity: all values distinct, and no value may carry both a tag and
  // the neutral mark within one orbit.
  {
    std::vector<std::size_t> order(seq.terms.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return seq.terms[a].value < seq.terms[b].value;
    });
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
      if (seq.terms[order[i]].value == seq.terms[order[i + 1]].value)
        throw_internal(kStage, "repeated value in a nu sequence");
  }
  bool has_minus = false, has_plus = false;
  for (const ExtReal& t : seq.terms) {
    has_minus |= t.tag == Tag::minus;
    has_plus |= t.tag == Tag::plus;
  }
  if (has_minus && has_plus)
    throw_internal(kStage,
                   "one orbit claims both a maximal and a minimal witness");
  return seq;
}

std::optional<KRegularRecurrence> kregular_recurrence(
    const intervals::IntervalMorphism& im, std::size_t pi_length) {
  if (pi_length != 0) return std::nullopt;
  std::size_t k = im.pieces.front().size();
  if (k < 2) return std::nullopt;
  for (const auto& row : im.pieces)
    if (row.size() != k) return std::nullopt;
  KRegularRecurrence rec;
  rec.k = k;
  rec.alphabet = im.alphabet;
  for (const auto& row : im.pieces) {
    std::vector<QNum> consts;
    consts.reserve(k);
    for (const AffinePiece& piece : row) consts.push_back(piece.intercept);
    rec.constants.push_back(std::move(consts));
  }
  return rec;
}

}  // namespace nuforge::sequence
