#include "nuforge/extend.hpp"

#include <algorithm>

#include "nuforge/errors.hpp"

namespace nuforge::extend {

using words::GeneralMorphism;
using words::Letter;
using words::Word;

namespace {
constexpr const char* kStage = "extend";
}

Coding build_coding(const language::FactorSet& facts_d,
                    const words::Alphabet& base) {
  Coding coding;
  coding.ext.D = static_cast<int>(facts_d.length);
  coding.ext.factors = facts_d.factors;  // already sorted

  // Rank within the group sharing a first letter; lexicographic order keeps
  // the groups contiguous, so label order equals letter order.
  std::vector<int> rank(static_cast<std::size_t>(base.size()), 0);
  for (std::size_t i = 0; i < coding.ext.factors.size(); ++i) {
    const Word& f = coding.ext.factors[i];
    Letter first = f.front();
    coding.ext.alphabet.labels.push_back(
        base.label(first) + "_" + std::to_string(++rank[std::size_t(first)]));
    coding.to_letter.emplace(f, static_cast<Letter>(i));
    coding.rho.push_back(first);
  }
  return coding;
}

words::GeneralMorphism build_chi(const words::GeneralMorphism& m,
                                 const Coding& coding) {
  const std::size_t D = static_cast<std::size_t>(coding.ext.D);
  std::vector<Word> images;
  images.reserve(coding.ext.factors.size());
  for (std::size_t i = 0; i < coding.ext.factors.size(); ++i) {
    const Word& u = coding.ext.factors[i];
    const std::size_t out_len = m.image(u.front()).size();
    Word img = m.apply(u);
    if (img.size() < D + out_len - 1)
      throw_internal(kStage,
                     "image too short for the window guarantee; the "
                     "synchronization delay is wrong");
    std::vector<Letter> lifted;
    lifted.reserve(out_len);
    for (std::size_t j = 0; j < out_len; ++j) {
      auto it = coding.to_letter.find(img.subword(j, D));
      if (it == coding.to_letter.end())
        throw_internal(kStage, "image window is not a known factor");
      lifted.push_back(it->second);
    }
    images.push_back(Word(std::move(lifted)));
  }
  return GeneralMorphism(coding.ext.alphabet, std::move(images));
}

words::Word lift_word(const words::Word& w, const Coding& coding) {
  const std::size_t D = static_cast<std::size_t>(coding.ext.D);
  if (w.size() < D) throw_input(kStage, "word shorter than the window");
  std::vector<Letter> out;
  out.reserve(w.size() - D + 1);
  for (std::size_t i = 0; i + D <= w.size(); ++i) {
    auto it = coding.to_letter.find(w.subword(i, D));
    if (it == coding.to_letter.end())
      throw_input(kStage, "window is not a factor of the subshift");
    out.push_back(it->second);
  }
  return Word(std::move(out));
}

ChiDiagnostics verify_chi(const words::GeneralMorphism& m,
                          const words::GeneralMorphism& chi,
                          const Coding& coding) {
  ChiDiagnostics diag;
  auto fail = [&](std::string msg) {
    diag.ok = false;
    diag.issues.push_back(std::move(msg));
  };

  // rho(chi(c)) must equal m(rho(c)) letter by letter.
  for (int c = 0; c < chi.alphabet_size(); ++c) {
    const Word& img = chi.image(c);
    const Word& base_img = m.image(coding.rho[std::size_t(c)]);
    if (img.size() != base_img.size()) {
      fail("image length mismatch at " + coding.ext.alphabet.label(c));
      continue;
    }
    for (std::size_t j = 0; j < img.size(); ++j)
      if (coding.rho[std::size_t(img[j])] != base_img[j]) {
        fail("rho projection mismatch at " + coding.ext.alphabet.label(c));
        break;
      }
  }

  // Distinct images end with distinct letters, and those last letters occur
  // only as the final letter of images equal to theirs.
  std::map<Word, Letter> last_of_image;
  for (int c = 0; c < chi.alphabet_size(); ++c) {
    const Word& img = chi.image(c);
    auto it = last_of_image.find(img);
    if (it == last_of_image.end()) last_of_image.emplace(img, img.back());
  }
  std::map<Letter, const Word*> owner;
  for (const auto& [img, last] : last_of_image) {
    auto [it, inserted] = owner.emplace(last, &img);
    if (!inserted) fail("two distinct images share a last letter");
  }
  for (int c = 0; c < chi.alphabet_size(); ++c) {
    const Word& img = chi.image(c);
    for (std::size_t j = 0; j + 1 < img.size(); ++j)
      if (owner.count(img[j]))
        fail("last letter of an image occurs in the interior of " +
             coding.ext.alphabet.label(c));
    auto it = owner.find(img.back());
    if (it != owner.end() && *(it->second) != img)
      fail("last letter of another image ends " +
           coding.ext.alphabet.label(c));
  }

  // Fixed points correspond one to one under rho.
  std::vector<Letter> base_fixed = words::fixed_point_letters(m);
  std::vector<Letter> chi_fixed = words::fixed_point_letters(chi);
  if (base_fixed.size() != chi_fixed.size()) {
    fail("fixed point counts differ");
  } else {
    std::vector<Letter> projected;
    projected.reserve(chi_fixed.size());
    for (Letter c : chi_fixed) projected.push_back(coding.rho[std::size_t(c)]);
    std::sort(projected.begin(), projected.end());
    if (projected != base_fixed) fail("fixed points do not project onto the base ones");
  }

  return diag;
}

}  // namespace nuforge::extend
