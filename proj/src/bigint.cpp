#include "atn/bigint.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace atn {

BigInt parse_decimal(std::string_view text) {
  std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (text.size() == start ||
      !std::all_of(text.begin() + start, text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  }
  return BigInt(std::string(text[0] == '+' ? text.substr(1) : text));
}

}  // namespace atn
