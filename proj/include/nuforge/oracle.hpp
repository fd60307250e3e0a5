#pragma once

#include <gmpxx.h>

#include <cstddef>

#include "nuforge/qfield.hpp"
#include "nuforge/words.hpp"

namespace nuforge::oracle {

// Brute-force ground truth over a long fixed-point prefix: lexicographic
// shift comparison, empirical nu, empirical frequencies. The prefix regrows
// when a comparison needs more depth.
class PrefixUniverse {
 public:
  PrefixUniverse(words::GeneralMorphism m, words::Letter x,
                 std::size_t horizon, std::size_t initial_depth = 64);

  // Lexicographic comparison of sigma^i(prefix) and sigma^j(prefix); equal
  // only when i == j.
  int shift_compare(std::size_t i, std::size_t j);

  // Fraction of shifts k < T with sigma^k(w) < sigma^n(w).
  mpq_class empirical_nu(std::size_t n, std::size_t T);

  // Occurrence count of u divided by the window count.
  mpq_class empirical_frequency(const words::Word& u) const;

  const words::Word& prefix() const { return w_; }
  std::size_t horizon() const { return horizon_; }

 private:
  void grow(std::size_t len);
  words::GeneralMorphism m_;
  words::Letter x_;
  std::size_t horizon_;
  std::size_t depth_;
  words::Word w_;
};

// Exact star discrepancy of the value parts against the uniform measure.
qfield::QNum discrepancy(const std::vector<qfield::ExtReal>& values);

}  // namespace nuforge::oracle
