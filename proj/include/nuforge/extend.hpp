#pragma once

#include <map>
#include <string>
#include <vector>

#include "nuforge/language.hpp"
#include "nuforge/words.hpp"

namespace nuforge::extend {

// Alphabet of the length-D factors, ordered lexicographically and labelled
// a_1..a_r, b_1..b_s by first underlying letter.
struct ExtendedAlphabet {
  int D = 0;
  std::vector<words::Word> factors;  // lex order; index = extended letter
  words::Alphabet alphabet;
};

struct Coding {
  ExtendedAlphabet ext;
  std::map<words::Word, words::Letter> to_letter;  // factor -> extended letter
  std::vector<words::Letter> rho;  // extended letter -> first binary letter

  int window() const { return ext.D; }
  const words::Word& factor_of(words::Letter x) const {
    return ext.factors.at(static_cast<std::size_t>(x));
  }
};

Coding build_coding(const language::FactorSet& facts_d,
                    const words::Alphabet& base);

// chi over the extended alphabet: the image of pi(u) is the first
// |m(u[0])| windows of m(u). Image lengths match the base images.
words::GeneralMorphism build_chi(const words::GeneralMorphism& m,
                                 const Coding& coding);

// Sliding-window recoding of a word of length >= D.
words::Word lift_word(const words::Word& w, const Coding& coding);

struct ChiDiagnostics {
  bool ok = true;
  std::vector<std::string> issues;
};

// Consistency checks: rho∘chi = m∘rho, distinct images end with distinct
// letters that occur nowhere else, and fixed points correspond under rho.
ChiDiagnostics verify_chi(const words::GeneralMorphism& m,
                          const words::GeneralMorphism& chi,
                          const Coding& coding);

}  // namespace nuforge::extend
