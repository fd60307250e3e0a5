#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nuforge/words.hpp"

namespace nuforge::testsupport {

inline words::Word bword(std::string_view s) {
  std::vector<words::Letter> out;
  out.reserve(s.size());
  for (char c : s) out.push_back(c == 'a' ? 0 : 1);
  return words::Word(std::move(out));
}

inline std::string brender(const words::Word& w) {
  return w.render(words::Alphabet::binary());
}

}  // namespace nuforge::testsupport
