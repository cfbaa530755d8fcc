#pragma once

namespace morph {

// Unicode general category P* (any punctuation).
bool is_punctuation(char32_t cp);

// Unicode White_Space property.
bool is_whitespace(char32_t cp);

}  // namespace morph
