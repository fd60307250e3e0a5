#include "nuforge/oracle.hpp"

#include <algorithm>

#include "nuforge/errors.hpp"

namespace nuforge::oracle {

using qfield::ExtReal;
using qfield::QNum;
using words::Word;

namespace {
constexpr const char* kStage = "oracle";
constexpr std::size_t kMaxPrefix = 1u << 24;
}  // namespace

PrefixUniverse::PrefixUniverse(words::GeneralMorphism m, words::Letter x,
                               std::size_t horizon, std::size_t initial_depth)
    : m_(std::move(m)), x_(x), horizon_(horizon), depth_(initial_depth) {
  grow(horizon_ + depth_);
}

void PrefixUniverse::grow(std::size_t len) {
  if (len > kMaxPrefix)
    throw_cap(kStage, "oracle prefix limit reached while separating shifts");
  if (w_.size() >= len) return;
  w_ = words::fixed_point_prefix(m_, x_, len);
}

int PrefixUniverse::shift_compare(std::size_t i, std::size_t j) {
  if (i == j) return 0;
  if (i > horizon_ || j > horizon_)
    throw_input(kStage, "shift index beyond the horizon");
  std::size_t k = 0;
  while (true) {
    while (std::max(i, j) + k >= w_.size()) {
      // Aperiodicity guarantees a first difference; deepen geometrically.
      depth_ *= 2;
      grow(std::max(w_.size() * 2, horizon_ + depth_));
    }
    if (w_[i + k] != w_[j + k]) return w_[i + k] < w_[j + k] ? -1 : 1;
    ++k;
  }
}

mpq_class PrefixUniverse::empirical_nu(std::size_t n, std::size_t T) {
  if (n > horizon_ || T > horizon_)
    throw_input(kStage, "sample beyond the horizon");
  unsigned long below = 0;
  for (std::size_t k = 0; k < T; ++k)
    if (k != n && shift_compare(k, n) < 0) ++below;
  mpq_class out(below, static_cast<unsigned long>(T));
  out.canonicalize();
  return out;
}

mpq_class PrefixUniverse::empirical_frequency(const words::Word& u) const {
  if (u.empty() || u.size() > w_.size())
    throw_input(kStage, "bad factor length for frequency");
  unsigned long hits = 0;
  const std::size_t windows = w_.size() - u.size() + 1;
  for (std::size_t i = 0; i < windows; ++i) {
    bool match = true;
    for (std::size_t j = 0; j < u.size() && match; ++j)
      if (w_[i + j] != u[j]) match = false;
    if (match) ++hits;
  }
  mpq_class out(hits, static_cast<unsigned long>(windows));
  out.canonicalize();
  return out;
}

qfield::QNum discrepancy(const std::vector<qfield::ExtReal>& values) {
  if (values.empty()) throw_input(kStage, "discrepancy of an empty list");
  const qfield::FieldDesc field = values.front().value.field();
  std::vector<const QNum*> sorted;
  sorted.reserve(values.size());
  for (const ExtReal& v : values) sorted.push_back(&v.value);
  std::sort(sorted.begin(), sorted.end(),
            [](const QNum* a, const QNum* b) { return *a < *b; });
  const long n = static_cast<long>(values.size());
  QNum best = QNum::integer(0, field);
  for (long i = 0; i < n; ++i) {
    const QNum& v = *sorted[std::size_t(i)];
    mpq_class lo_frac(i, n), hi_frac(i + 1, n);
    lo_frac.canonicalize();
    hi_frac.canonicalize();
    QNum lower = v - QNum::rational(lo_frac, field);
    if (lower.sign() < 0) lower = -lower;
    QNum upper = QNum::rational(hi_frac, field) - v;
    if (upper.sign() < 0) upper = -upper;
    if (lower > best) best = lower;
    if (upper > best) best = upper;
  }
  return best;
}

}  // namespace nuforge::oracle
