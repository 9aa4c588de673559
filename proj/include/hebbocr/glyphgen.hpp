#pragma once

#include "hebbocr/types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace hebbocr {

struct GlyphTemplate {
    char label = '?';
    BinaryGrid bitmap; // 8x8 built-in templates
};

/// The 52 built-in templates in label code-point order.
std::span<const GlyphTemplate> builtin_templates();

const GlyphTemplate& template_for(char label);

struct DistortionParams {
    double flip_probability = 0.0; // per-cell, in [0,1]
    int max_shift = 0;             // cells
    GridShape canvas{16, 16};
    std::uint64_t seed = 0;
};

/// Template centered on a background canvas; centering ties go top-left.
BinaryGrid render_glyph(const GlyphTemplate& t, GridShape canvas);

/// Deterministic distortion. splitmix64 is seeded with seed ^ stream_index
/// and consumed in a fixed order: row shift, column shift, then one draw per
/// cell in row-major order for the flips. The translation is uniform in
/// [-max_shift, +max_shift] per axis; cells shifted past the canvas edge are
/// dropped.
BinaryGrid distort(const BinaryGrid& g, const DistortionParams& p, std::uint64_t stream_index);

struct ManifestEntry {
    std::string path; // relative to the dataset root, e.g. "train/upper_A_00.pbm"
    char label = '?';
    int set = 0;
    std::uint64_t stream_index = 0;
};

using Manifest = std::vector<ManifestEntry>;

/// Stream index for a given file: set * 52 + class index, with test files
/// offset by 1,000,000 so train and test draws never overlap.
std::uint64_t dataset_stream_index(bool test_split, int set, int class_index);

/// Generate train_sets x 52 + test_sets x 52 plain P1 files under
/// out_dir/train and out_dir/test, plus a manifest.tsv listing them.
/// Refuses to run over an existing manifest unless overwrite is set.
Manifest generate_dataset(int train_sets, int test_sets, const DistortionParams& p,
                          const std::filesystem::path& out_dir, bool overwrite = false);

void write_manifest(const Manifest& manifest, std::ostream& sink);
Manifest load_manifest(std::istream& source);
Manifest read_manifest_file(const std::filesystem::path& path);

inline constexpr const char* kManifestFileName = "manifest.tsv";

} // namespace hebbocr
