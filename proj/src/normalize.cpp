#include "nuforge/normalize.hpp"

#include <algorithm>

#include "nuforge/errors.hpp"

namespace nuforge::normalize {

using words::GeneralMorphism;
using words::Letter;
using words::Word;

namespace {
constexpr const char* kStage = "normalize";

std::size_t common_prefix_length(const Word& x, const Word& y) {
  std::size_t n = std::min(x.size(), y.size());
  std::size_t k = 0;
  while (k < n && x[k] == y[k]) ++k;
  return k;
}

std::size_t common_suffix_length(const Word& x, const Word& y) {
  std::size_t n = std::min(x.size(), y.size());
  std::size_t k = 0;
  while (k < n && x[x.size() - 1 - k] == y[y.size() - 1 - k]) ++k;
  return k;
}

Word rotate_front_to_back(const Word& w, std::size_t k) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (std::size_t i = k; i < w.size(); ++i) out.push_back(w[i]);
  for (std::size_t i = 0; i < k; ++i) out.push_back(w[i]);
  return Word(std::move(out));
}
}  // namespace

Orientation orientation(const words::GeneralMorphism& m) {
  if (m.alphabet_size() != 2)
    throw_internal(kStage, "orientation needs a binary morphism");
  Word A = m.image(0);
  Word B = m.image(1);
  const std::size_t cap = A.size() + B.size();
  for (std::size_t iter = 0; iter <= cap; ++iter) {
    std::size_t k = common_prefix_length(A, B);
    if (k < std::min(A.size(), B.size()))
      return A[k] < B[k] ? Orientation::Preserving : Orientation::Reversing;
    if (A.size() == B.size())
      throw_input(kStage, "images coincide; the subshift is periodic");
    // One image is a prefix of the other: rotate the common prefix to the
    // end of both and compare again.
    A = rotate_front_to_back(A, k);
    B = rotate_front_to_back(B, k);
  }
  throw_input(kStage,
              "orientation undecided within the rotation bound; "
              "the input generates a periodic subshift");
}

words::GeneralMorphism square_if_reversing(const words::GeneralMorphism& m) {
  if (orientation(m) == Orientation::Preserving) return m;
  return words::compose(m, m);
}

NormalizationTrace transfer_suffixes(const words::GeneralMorphism& m) {
  if (m.alphabet_size() != 2)
    throw_internal(kStage, "suffix transfer needs a binary morphism");
  Word A = m.image(0);
  Word B = m.image(1);
  const std::size_t longer = std::max(A.size(), B.size());
  const std::size_t shorter = std::min(A.size(), B.size());
  const std::size_t bound = longer / shorter + 1;

  std::vector<Word> transfers;
  while (A.back() == B.back()) {
    if (transfers.size() >= bound)
      throw_input(kStage,
                  "suffix transfer bound exceeded; the images generate a "
                  "periodic subshift");
    std::size_t k = common_suffix_length(A, B);
    Word s = A.subword(A.size() - k, k);
    Word newA = s;
    newA.append(A.subword(0, A.size() - k));
    Word newB = s;
    newB.append(B.subword(0, B.size() - k));
    A = std::move(newA);
    B = std::move(newB);
    transfers.push_back(std::move(s));
  }

  Word pi;
  for (auto it = transfers.rbegin(); it != transfers.rend(); ++it)
    pi.append(*it);

  NormalizationTrace trace{false, m, std::move(transfers), std::move(pi),
                           GeneralMorphism(m.alphabet(), {A, B})};
  return trace;
}

NormalizationTrace prepare(const words::GeneralMorphism& m) {
  bool squared = orientation(m) == Orientation::Reversing;
  GeneralMorphism source = squared ? words::compose(m, m) : m;
  NormalizationTrace trace = transfer_suffixes(source);
  trace.squared = squared;
  return trace;
}

}  // namespace nuforge::normalize
