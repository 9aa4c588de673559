#include "hebbocr/glyphgen.hpp"

#include "hebbocr/imagegrid.hpp"
#include "hebbocr/labels.hpp"
#include "hebbocr/rng.hpp"

#include "doctest.h"
#include "test_support.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace hebbocr;
namespace fs = std::filesystem;

namespace {

// Local reimplementation of the pinned generator, used as an oracle so the
// production copy cannot drift without a test noticing.
struct OracleSplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

} // namespace

TEST_CASE("the pinned generator matches its published sequence") {
    SplitMix64 zero{0};
    CHECK(zero.next() == 0xe220a8397b1dcdafull);
    CHECK(zero.next() == 0x6e789e6aa1b965f4ull);
    CHECK(zero.next() == 0x06c45d188009454full);

    SplitMix64 fortytwo{42};
    CHECK(fortytwo.next() == 0xbdd732262feb6e95ull);
    CHECK(fortytwo.next() == 0x28efe333b266f103ull);
    CHECK(fortytwo.next() == 0x47526757130f9f52ull);

    // Unit doubles take the top 53 bits, so they are exactly representable.
    SplitMix64 unit{0};
    CHECK(unit.next_unit() == 0.8833108082136426);

    SplitMix64 ranged{7};
    OracleSplitMix64 oracle{7};
    for (int i = 0; i < 20; ++i) {
        const std::int64_t lo = -3, hi = 3;
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        const std::int64_t expected = lo + static_cast<std::int64_t>(oracle.next() % span);
        CHECK(ranged.next_in_range(lo, hi) == expected);
    }
}

TEST_CASE("the 52 built-in templates are sane and pairwise distinct") {
    const std::span<const GlyphTemplate> templates = builtin_templates();
    REQUIRE(templates.size() == 52);

    const std::span<const char> labels = all_labels();
    for (std::size_t i = 0; i < templates.size(); ++i) {
        CHECK(templates[i].label == labels[i]);
        CHECK(templates[i].bitmap.rows() == 8);
        CHECK(templates[i].bitmap.cols() == 8);
        CHECK((templates[i].bitmap.array() == kInk).any());
    }
    for (std::size_t i = 0; i < templates.size(); ++i) {
        for (std::size_t j = i + 1; j < templates.size(); ++j) {
            CHECK_MESSAGE(!grids_equal(templates[i].bitmap, templates[j].bitmap),
                          "duplicate bitmaps: ", templates[i].label, " vs ", templates[j].label);
        }
    }

    CHECK(template_for('Q').label == 'Q');
    CHECK_ERROR_CODE(template_for('?'), UnknownLabel);
}

TEST_CASE("every template extracts to a unique feature vector") {
    // The whole noiseless recall guarantee rests on this: after crop and
    // resample, no two classes may collapse to the same input.
    const ExtractionParams params; // default 16x16, threshold 0.5
    std::vector<std::pair<char, FeatureVector>> features;
    for (const GlyphTemplate& t : builtin_templates()) {
        const BinaryGrid canvas = render_glyph(t, params.grid);
        const BinaryGrid cropped = crop_to_bounding_box(canvas);
        const BinaryGrid resampled = resample_to_grid(cropped, params.grid.rows, params.grid.cols);
        features.emplace_back(t.label, to_feature_vector(resampled, params.grid));
    }
    for (std::size_t i = 0; i < features.size(); ++i) {
        for (std::size_t j = i + 1; j < features.size(); ++j) {
            CHECK_MESSAGE(!vectors_equal(features[i].second, features[j].second),
                          "features collide: ", features[i].first, " vs ", features[j].first);
        }
    }
}

TEST_CASE("render_glyph centers the template on the canvas") {
    const GlyphTemplate& a = template_for('A');
    CHECK(grids_equal(render_glyph(a, GridShape{8, 8}), a.bitmap));

    GlyphTemplate dot;
    dot.label = 'A';
    dot.bitmap = BinaryGrid::Constant(1, 1, kInk);
    const BinaryGrid canvas = render_glyph(dot, GridShape{3, 3});
    CHECK(canvas.rows() == 3);
    CHECK(canvas.cols() == 3);
    for (Eigen::Index r = 0; r < 3; ++r)
        for (Eigen::Index c = 0; c < 3; ++c)
            CHECK(canvas(r, c) == ((r == 1 && c == 1) ? kInk : kBackground));

    // Even leftover space lands the extra row/col on the bottom-right.
    const BinaryGrid biased = render_glyph(dot, GridShape{2, 2});
    CHECK(biased(0, 0) == kInk);

    CHECK_ERROR_CODE(render_glyph(a, GridShape{7, 8}), CanvasTooSmall);
}

TEST_CASE("distort with zero parameters is the identity") {
    const BinaryGrid g = render_glyph(template_for('W'), GridShape{12, 10});
    DistortionParams p;
    p.flip_probability = 0.0;
    p.max_shift = 0;
    p.seed = 99;
    CHECK(grids_equal(distort(g, p, 3), g));
}

TEST_CASE("distort with certain flips complements every cell") {
    const BinaryGrid g = render_glyph(template_for('o'), GridShape{10, 10});
    DistortionParams p;
    p.flip_probability = 1.0;
    p.max_shift = 0;
    const BinaryGrid flipped = distort(g, p, 0);
    for (Eigen::Index r = 0; r < g.rows(); ++r)
        for (Eigen::Index c = 0; c < g.cols(); ++c)
            CHECK(flipped(r, c) == (g(r, c) == kInk ? kBackground : kInk));
}

TEST_CASE("distort is deterministic and stream-sensitive") {
    const BinaryGrid g = render_glyph(template_for('R'), GridShape{16, 16});
    DistortionParams p;
    p.flip_probability = 0.05;
    p.max_shift = 2;
    p.seed = 1234;
    CHECK(grids_equal(distort(g, p, 5), distort(g, p, 5)));
    CHECK_FALSE(grids_equal(distort(g, p, 5), distort(g, p, 6)));
}

TEST_CASE("distort consumes draws in the documented order") {
    // Independent replay: row shift, column shift, then one flip draw per
    // cell in row-major order, from splitmix64 seeded with seed ^ stream.
    const BinaryGrid g = render_glyph(template_for('T'), GridShape{9, 11});
    DistortionParams p;
    p.flip_probability = 0.3;
    p.max_shift = 2;
    p.seed = 0xabcdef12345ull;
    const std::uint64_t stream = 77;

    OracleSplitMix64 rng{p.seed ^ stream};
    const auto span = static_cast<std::uint64_t>(2 * p.max_shift + 1);
    const auto dr = static_cast<std::int64_t>(-p.max_shift) +
                    static_cast<std::int64_t>(rng.next() % span);
    const auto dc = static_cast<std::int64_t>(-p.max_shift) +
                    static_cast<std::int64_t>(rng.next() % span);

    BinaryGrid expected = BinaryGrid::Constant(g.rows(), g.cols(), kBackground);
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.cols(); ++c) {
            const Eigen::Index tr = r + dr;
            const Eigen::Index tc = c + dc;
            if (g(r, c) == kInk && tr >= 0 && tr < g.rows() && tc >= 0 && tc < g.cols()) {
                expected(tr, tc) = kInk;
            }
        }
    }
    for (Eigen::Index r = 0; r < expected.rows(); ++r) {
        for (Eigen::Index c = 0; c < expected.cols(); ++c) {
            const double u =
                static_cast<double>(rng.next() >> 11) * (1.0 / 9007199254740992.0);
            if (u < p.flip_probability) {
                expected(r, c) = expected(r, c) == kInk ? kBackground : kInk;
            }
        }
    }

    CHECK(grids_equal(distort(g, p, stream), expected));
}

TEST_CASE("observed flip fraction stays within three sigma of the probability") {
    const BinaryGrid g = render_glyph(template_for('H'), GridShape{16, 16});
    DistortionParams p;
    p.flip_probability = 0.1;
    p.max_shift = 0;
    p.seed = 2718;

    const int streams = 40;
    const double n = static_cast<double>(g.size()) * streams;
    double flipped = 0;
    for (int s = 0; s < streams; ++s) {
        const BinaryGrid d = distort(g, p, static_cast<std::uint64_t>(s));
        for (Eigen::Index r = 0; r < g.rows(); ++r)
            for (Eigen::Index c = 0; c < g.cols(); ++c)
                if (d(r, c) != g(r, c)) flipped += 1;
    }
    const double mean = n * p.flip_probability;
    const double sigma = std::sqrt(n * p.flip_probability * (1 - p.flip_probability));
    CHECK(std::abs(flipped - mean) <= 3 * sigma);
}

TEST_CASE("stream indices separate train from test and set from set") {
    CHECK(dataset_stream_index(false, 0, 0) == 0);
    CHECK(dataset_stream_index(false, 2, 5) == 109);
    CHECK(dataset_stream_index(true, 0, 0) == 1000000);
    CHECK(dataset_stream_index(true, 1, 51) == 1000103);

    std::set<std::uint64_t> seen;
    for (int set = 0; set < 10; ++set)
        for (int cls = 0; cls < 52; ++cls) {
            CHECK(seen.insert(dataset_stream_index(false, set, cls)).second);
            CHECK(seen.insert(dataset_stream_index(true, set, cls)).second);
        }
}

TEST_CASE("generate_dataset writes the full file tree and manifest") {
    const testsupport::TempDir dir("gen");
    DistortionParams p;
    p.flip_probability = 0.02;
    p.max_shift = 1;
    p.seed = 42;

    const Manifest manifest = generate_dataset(2, 1, p, dir.path());
    CHECK(manifest.size() == 2 * 52 + 52);

    CHECK(fs::exists(dir / "manifest.tsv"));
    CHECK(fs::exists(dir.path() / "train" / "upper_A_00.pbm"));
    CHECK(fs::exists(dir.path() / "train" / "lower_z_01.pbm"));
    CHECK(fs::exists(dir.path() / "test" / "upper_A_00.pbm"));
    CHECK_FALSE(fs::exists(dir.path() / "train" / "upper_A_02.pbm"));

    int train_rows = 0, test_rows = 0;
    for (const ManifestEntry& e : manifest) {
        if (e.path.starts_with("train/")) ++train_rows;
        if (e.path.starts_with("test/")) ++test_rows;
        CHECK(fs::exists(dir.path() / e.path));
    }
    CHECK(train_rows == 104);
    CHECK(test_rows == 52);

    // Every file parses as a P1 image of canvas size.
    const RasterImage img = read_pnm_file(dir.path() / "train" / "upper_Q_00.pbm");
    CHECK(img.width() == 16);
    CHECK(img.height() == 16);

    std::istringstream manifest_text(testsupport::read_text_file(dir / "manifest.tsv"));
    CHECK(load_manifest(manifest_text).size() == manifest.size());
}

TEST_CASE("generate_dataset refuses to clobber an existing manifest") {
    const testsupport::TempDir dir("clobber");
    DistortionParams p;
    const Manifest first = generate_dataset(1, 1, p, dir.path());
    CHECK_ERROR_CODE(generate_dataset(1, 1, p, dir.path()), ManifestExists);
    const Manifest again = generate_dataset(1, 1, p, dir.path(), /*overwrite=*/true);
    CHECK(again.size() == first.size());
}

TEST_CASE("generate_dataset is byte-identical across runs") {
    const testsupport::TempDir a("rep_a");
    const testsupport::TempDir b("rep_b");
    DistortionParams p;
    p.flip_probability = 0.05;
    p.max_shift = 1;
    p.seed = 7;
    generate_dataset(1, 1, p, a.path());
    generate_dataset(1, 1, p, b.path());

    const Manifest manifest = read_manifest_file(a / "manifest.tsv");
    CHECK(testsupport::read_text_file(a / "manifest.tsv") ==
          testsupport::read_text_file(b / "manifest.tsv"));
    for (const ManifestEntry& e : manifest) {
        CHECK(testsupport::read_text_file(a.path() / e.path) ==
              testsupport::read_text_file(b.path() / e.path));
    }
}

TEST_CASE("undistorted datasets reproduce the rendered templates exactly") {
    const testsupport::TempDir dir("exact");
    DistortionParams p;
    p.flip_probability = 0.0;
    p.max_shift = 0;
    p.seed = 31337;
    generate_dataset(1, 1, p, dir.path());

    const ExtractionParams extraction;
    for (const GlyphTemplate& t : builtin_templates()) {
        const fs::path file = dir.path() / "train" / (encode_label(t.label) + "_00.pbm");
        const RasterImage img = read_pnm_file(file);
        const BinaryGrid loaded = binarize(img, 0.5);
        CHECK(grids_equal(loaded, render_glyph(t, p.canvas)));

        // Same equality after the full extraction pipeline.
        const FeatureVector from_file = extract_features(img, extraction);
        const BinaryGrid cropped = crop_to_bounding_box(render_glyph(t, p.canvas));
        const FeatureVector from_template = to_feature_vector(
            resample_to_grid(cropped, extraction.grid.rows, extraction.grid.cols),
            extraction.grid);
        CHECK(vectors_equal(from_file, from_template));
    }
}

TEST_CASE("manifests round-trip through text") {
    Manifest manifest;
    manifest.push_back({"train/upper_A_00.pbm", 'A', 0, 0});
    manifest.push_back({"test/lower_q_03.pbm", 'q', 3, 1000198});

    std::ostringstream sink;
    write_manifest(manifest, sink);
    CHECK(sink.str() == "train/upper_A_00.pbm\tupper_A\t0\t0\n"
                        "test/lower_q_03.pbm\tlower_q\t3\t1000198\n");

    std::istringstream source(sink.str());
    const Manifest back = load_manifest(source);
    REQUIRE(back.size() == 2);
    CHECK(back[0].path == manifest[0].path);
    CHECK(back[0].label == 'A');
    CHECK(back[1].set == 3);
    CHECK(back[1].stream_index == 1000198);

    std::istringstream bad("train/x.pbm\tupper_A\t0\n");
    CHECK_ERROR_CODE(load_manifest(bad), MalformedRecord);
}
