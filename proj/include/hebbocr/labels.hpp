#pragma once

#include <span>
#include <string>
#include <string_view>

namespace hebbocr {

/// The 52 class labels in code-point order: 'A'..'Z' then 'a'..'z'.
std::span<const char> all_labels();

bool is_class_label(char label);

/// Position of a label inside all_labels(), 0..51.
int class_index(char label);

/// Case-safe textual form used in files: 'A' -> "upper_A", 'a' -> "lower_a".
std::string encode_label(char label);

/// Inverse of encode_label. Throws MalformedRecord on anything else.
char decode_label(std::string_view text);

} // namespace hebbocr
