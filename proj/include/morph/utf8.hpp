#pragma once

#include <string>
#include <string_view>

namespace morph {

// Decodes UTF-8 into a sequence of Unicode scalar values. Throws
// std::invalid_argument on malformed input (truncated sequences, overlong
// encodings, surrogates, values above U+10FFFF).
std::u32string decode_utf8(std::string_view text);

// Encodes scalar values back to UTF-8. Throws std::invalid_argument on
// surrogates or values above U+10FFFF.
std::string encode_utf8(std::u32string_view text);

inline std::u32string reversed(std::u32string_view s) {
  return std::u32string(s.rbegin(), s.rend());
}

// Reverses the scalar-value sequence of a UTF-8 string.
std::string reversed_utf8(std::string_view s);

}  // namespace morph
