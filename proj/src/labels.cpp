#include "hebbocr/labels.hpp"

#include "hebbocr/error.hpp"

#include <array>

namespace hebbocr {

namespace {

constexpr std::array<char, 52> make_labels() {
    std::array<char, 52> out{};
    for (int i = 0; i < 26; ++i) out[static_cast<std::size_t>(i)] = static_cast<char>('A' + i);
    for (int i = 0; i < 26; ++i) out[static_cast<std::size_t>(26 + i)] = static_cast<char>('a' + i);
    return out;
}

constexpr std::array<char, 52> kLabels = make_labels();

} // namespace

std::span<const char> all_labels() {
    return {kLabels.data(), kLabels.size()};
}

bool is_class_label(char label) {
    return (label >= 'A' && label <= 'Z') || (label >= 'a' && label <= 'z');
}

int class_index(char label) {
    require(is_class_label(label), ErrorCode::UnknownLabel,
            std::string("not a class label: ") + label);
    return label <= 'Z' ? label - 'A' : 26 + (label - 'a');
}

std::string encode_label(char label) {
    require(is_class_label(label), ErrorCode::UnknownLabel,
            std::string("not a class label: ") + label);
    return (label <= 'Z' ? std::string("upper_") : std::string("lower_")) + label;
}

char decode_label(std::string_view text) {
    if (text.size() == 7) {
        const char c = text[6];
        if (text.substr(0, 6) == "upper_" && c >= 'A' && c <= 'Z') return c;
        if (text.substr(0, 6) == "lower_" && c >= 'a' && c <= 'z') return c;
    }
    fail(ErrorCode::MalformedRecord, "bad label token: " + std::string(text));
}

} // namespace hebbocr
