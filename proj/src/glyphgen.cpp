#include "hebbocr/glyphgen.hpp"

#include "hebbocr/error.hpp"
#include "hebbocr/imagegrid.hpp"
#include "hebbocr/labels.hpp"
#include "hebbocr/rng.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hebbocr {

namespace {

void validate_params(const DistortionParams& p) {
    require(p.flip_probability >= 0.0 && p.flip_probability <= 1.0, ErrorCode::InvalidArgument,
            "flip probability outside [0,1]");
    require(p.max_shift >= 0, ErrorCode::InvalidArgument, "negative max shift");
    require(p.canvas.rows >= 1 && p.canvas.cols >= 1, ErrorCode::InvalidArgument,
            "canvas must be at least 1x1");
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) fail(ErrorCode::IoFailure, "write failed: " + path.string());
}

std::string set_tag(int set) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d", set);
    return buf;
}

} // namespace

BinaryGrid render_glyph(const GlyphTemplate& t, GridShape canvas) {
    if (canvas.rows < t.bitmap.rows() || canvas.cols < t.bitmap.cols()) {
        fail(ErrorCode::CanvasTooSmall,
             "canvas " + std::to_string(canvas.rows) + "x" + std::to_string(canvas.cols) +
                 " cannot hold the template");
    }
    BinaryGrid out = BinaryGrid::Constant(canvas.rows, canvas.cols, kBackground);
    const Eigen::Index top = (canvas.rows - t.bitmap.rows()) / 2;
    const Eigen::Index left = (canvas.cols - t.bitmap.cols()) / 2;
    out.block(top, left, t.bitmap.rows(), t.bitmap.cols()) = t.bitmap;
    return out;
}

BinaryGrid distort(const BinaryGrid& g, const DistortionParams& p, std::uint64_t stream_index) {
    validate_params(p);
    SplitMix64 rng(p.seed ^ stream_index);

    const auto dr = rng.next_in_range(-p.max_shift, p.max_shift);
    const auto dc = rng.next_in_range(-p.max_shift, p.max_shift);

    BinaryGrid out = BinaryGrid::Constant(g.rows(), g.cols(), kBackground);
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.cols(); ++c) {
            const Eigen::Index tr = r + dr;
            const Eigen::Index tc = c + dc;
            if (tr >= 0 && tr < g.rows() && tc >= 0 && tc < g.cols()) {
                out(tr, tc) = g(r, c);
            }
        }
    }

    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        for (Eigen::Index c = 0; c < out.cols(); ++c) {
            if (rng.next_unit() < p.flip_probability) {
                out(r, c) = out(r, c) == kInk ? kBackground : kInk;
            }
        }
    }
    return out;
}

std::uint64_t dataset_stream_index(bool test_split, int set, int class_index) {
    const std::uint64_t base = test_split ? 1'000'000ull : 0ull;
    return base + static_cast<std::uint64_t>(set) * 52 + static_cast<std::uint64_t>(class_index);
}

Manifest generate_dataset(int train_sets, int test_sets, const DistortionParams& p,
                          const std::filesystem::path& out_dir, bool overwrite) {
    require(train_sets >= 1 && test_sets >= 1, ErrorCode::InvalidArgument,
            "set counts must be >= 1");
    validate_params(p);

    const std::filesystem::path manifest_path = out_dir / kManifestFileName;
    std::error_code ec;
    if (!overwrite && std::filesystem::exists(manifest_path, ec)) {
        fail(ErrorCode::ManifestExists,
             manifest_path.string() + " already exists; pass the overwrite flag to regenerate");
    }

    std::filesystem::create_directories(out_dir / "train", ec);
    if (ec) fail(ErrorCode::IoFailure, "cannot create " + (out_dir / "train").string());
    std::filesystem::create_directories(out_dir / "test", ec);
    if (ec) fail(ErrorCode::IoFailure, "cannot create " + (out_dir / "test").string());

    Manifest manifest;
    const auto templates = builtin_templates();
    const auto emit_split = [&](bool test_split, int sets) {
        const std::string dir = test_split ? "test" : "train";
        for (int set = 0; set < sets; ++set) {
            for (int ci = 0; ci < static_cast<int>(templates.size()); ++ci) {
                const GlyphTemplate& t = templates[static_cast<std::size_t>(ci)];
                const std::uint64_t stream = dataset_stream_index(test_split, set, ci);
                const BinaryGrid rendered = render_glyph(t, p.canvas);
                const BinaryGrid sample = distort(rendered, p, stream);

                const std::string name = encode_label(t.label) + "_" + set_tag(set) + ".pbm";
                const std::string rel = dir + "/" + name;
                write_text_file(out_dir / dir / name, write_pbm(sample));
                manifest.push_back({rel, t.label, set, stream});
            }
        }
    };
    emit_split(false, train_sets);
    emit_split(true, test_sets);

    std::ostringstream text;
    write_manifest(manifest, text);
    write_text_file(manifest_path, text.str());
    return manifest;
}

void write_manifest(const Manifest& manifest, std::ostream& sink) {
    std::string out;
    for (const ManifestEntry& e : manifest) {
        out += e.path;
        out += '\t';
        out += encode_label(e.label);
        out += '\t';
        out += std::to_string(e.set);
        out += '\t';
        out += std::to_string(e.stream_index);
        out += '\n';
    }
    sink.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!sink) fail(ErrorCode::IoFailure, "manifest write failed");
}

Manifest load_manifest(std::istream& source) {
    Manifest manifest;
    std::string line;
    while (std::getline(source, line)) {
        if (line.empty()) continue;
        std::array<std::string_view, 4> fields;
        std::string_view rest = line;
        for (std::size_t i = 0; i < 4; ++i) {
            const std::size_t tab = rest.find('\t');
            if (i < 3) {
                require(tab != std::string_view::npos, ErrorCode::MalformedRecord,
                        "manifest line with missing fields: " + line);
                fields[i] = rest.substr(0, tab);
                rest = rest.substr(tab + 1);
            } else {
                require(tab == std::string_view::npos, ErrorCode::MalformedRecord,
                        "manifest line with extra fields: " + line);
                fields[i] = rest;
            }
        }
        ManifestEntry e;
        e.path = std::string(fields[0]);
        e.label = decode_label(fields[1]);
        const auto parse_num = [&line](std::string_view token, auto& out) {
            const auto [ptr, ec2] = std::from_chars(token.data(), token.data() + token.size(), out);
            require(ec2 == std::errc{} && ptr == token.data() + token.size(),
                    ErrorCode::MalformedRecord, "bad manifest number in: " + line);
        };
        parse_num(fields[2], e.set);
        parse_num(fields[3], e.stream_index);
        manifest.push_back(std::move(e));
    }
    return manifest;
}

Manifest read_manifest_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoFailure, "cannot open " + path.string());
    return load_manifest(in);
}

} // namespace hebbocr
