#pragma once

#include "hebbocr/hebbnet.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hebbocr {

/// Structural comparison of two knowledge bases. A shared label whose
/// weight vectors have different lengths is flagged incomparable (empty
/// delta) instead of being given a number.
struct KbDiff {
    std::vector<char> shared_labels;
    std::vector<char> only_left;
    std::vector<char> only_right;
    std::map<char, std::optional<Scalar>> per_label_max_abs_delta;
    bool metadata_equal = false; // grid dims and regime

    bool identical() const;
};

/// FNV-1a 32-bit over raw bytes; the file checksum primitive.
std::uint32_t fnv1a32(std::string_view bytes);

/// Write the textual KB format, neurons sorted by label code point,
/// LF line endings, trailing FNV-1a-32 checksum line. Returns bytes written.
std::size_t save_kb(const KnowledgeBase& kb, std::ostream& sink);

std::string save_kb_string(const KnowledgeBase& kb);

/// Parse and validate a KB file. Verifies the checksum before anything
/// else, then reconstructs every field and re-checks the invariants.
KnowledgeBase load_kb(std::istream& source);

KnowledgeBase load_kb_string(std::string_view text);

KnowledgeBase read_kb_file(const std::filesystem::path& path);
void write_kb_file(const KnowledgeBase& kb, const std::filesystem::path& path);

KbDiff diff_kb(const KnowledgeBase& left, const KnowledgeBase& right);

std::string_view regime_name(Regime regime);
Regime regime_from_name(std::string_view name);

} // namespace hebbocr
