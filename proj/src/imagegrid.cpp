#include "hebbocr/imagegrid.hpp"

#include "hebbocr/error.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

namespace hebbocr {

namespace {

// Token scanner over plain PNM text: whitespace separates tokens and a '#'
// starts a comment running to end of line, anywhere between tokens.
class PnmScanner {
public:
    explicit PnmScanner(std::string_view bytes) : bytes_(bytes) {}

    bool skip_separators() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                return true;
            }
        }
        return false;
    }

    // Next whitespace-delimited token, or empty at end of input.
    std::string_view next_token() {
        if (!skip_separators()) return {};
        const std::size_t start = pos_;
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#' || std::isspace(static_cast<unsigned char>(c))) break;
            ++pos_;
        }
        return bytes_.substr(start, pos_ - start);
    }

    // Single P1 digit; bits may be packed without whitespace.
    int next_bit() {
        if (!skip_separators()) return -1;
        const char c = bytes_[pos_];
        if (c != '0' && c != '1') {
            fail(ErrorCode::ValueOutOfRange, std::string("bad P1 bit: ") + c);
        }
        ++pos_;
        return c - '0';
    }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

long parse_unsigned(std::string_view token, ErrorCode on_error, const char* what) {
    if (token.empty()) fail(on_error, std::string("missing ") + what);
    long value = 0;
    for (const char c : token) {
        if (c < '0' || c > '9') fail(on_error, std::string("bad ") + what + ": " + std::string(token));
        value = value * 10 + (c - '0');
        if (value > std::numeric_limits<int>::max()) {
            fail(on_error, std::string(what) + " out of range: " + std::string(token));
        }
    }
    return value;
}

} // namespace

RasterImage parse_pnm(std::string_view bytes) {
    PnmScanner scan(bytes);

    const std::string_view magic = scan.next_token();
    if (magic != "P1" && magic != "P2") {
        fail(ErrorCode::MalformedHeader, "unsupported PNM magic: " + std::string(magic));
    }
    const bool bitmap = magic == "P1";

    const long width = parse_unsigned(scan.next_token(), ErrorCode::MalformedHeader, "width");
    const long height = parse_unsigned(scan.next_token(), ErrorCode::MalformedHeader, "height");
    require(width >= 1 && height >= 1, ErrorCode::MalformedHeader, "non-positive dimensions");

    RasterImage img;
    if (bitmap) {
        img.maxval = 255;
    } else {
        const long maxval = parse_unsigned(scan.next_token(), ErrorCode::MalformedHeader, "maxval");
        require(maxval >= 1 && maxval <= 65535, ErrorCode::MalformedHeader, "maxval outside 1..65535");
        img.maxval = static_cast<int>(maxval);
    }

    img.pixels.resize(height, width);
    for (long r = 0; r < height; ++r) {
        for (long c = 0; c < width; ++c) {
            if (bitmap) {
                const int bit = scan.next_bit();
                if (bit < 0) fail(ErrorCode::TruncatedData, "P1 data ends early");
                // 1 means black: map ink to pixel value 0.
                img.pixels(r, c) = bit == 1 ? 0 : 255;
            } else {
                const std::string_view token = scan.next_token();
                if (token.empty()) fail(ErrorCode::TruncatedData, "P2 data ends early");
                const long value = parse_unsigned(token, ErrorCode::ValueOutOfRange, "pixel");
                if (value > img.maxval) {
                    fail(ErrorCode::ValueOutOfRange,
                         "pixel " + std::string(token) + " exceeds maxval");
                }
                img.pixels(r, c) = static_cast<std::uint16_t>(value);
            }
        }
    }
    return img;
}

RasterImage read_pnm_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoFailure, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pnm(buf.str());
}

std::string write_pbm(const BinaryGrid& grid) {
    std::string out = "P1\n";
    out += std::to_string(grid.cols());
    out += ' ';
    out += std::to_string(grid.rows());
    out += '\n';
    for (Eigen::Index r = 0; r < grid.rows(); ++r) {
        for (Eigen::Index c = 0; c < grid.cols(); ++c) {
            if (c > 0) out += ' ';
            out += grid(r, c) == kInk ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

BinaryGrid binarize(const RasterImage& img, double threshold) {
    require(threshold >= 0.0 && threshold <= 1.0, ErrorCode::InvalidArgument,
            "threshold outside [0,1]");
    const double cutoff = threshold * img.maxval;
    BinaryGrid grid(img.height(), img.width());
    for (Eigen::Index r = 0; r < grid.rows(); ++r) {
        for (Eigen::Index c = 0; c < grid.cols(); ++c) {
            grid(r, c) = img.pixels(r, c) < cutoff ? kInk : kBackground;
        }
    }
    return grid;
}

BinaryGrid crop_to_bounding_box(const BinaryGrid& grid) {
    Eigen::Index top = grid.rows(), bottom = -1, left = grid.cols(), right = -1;
    for (Eigen::Index r = 0; r < grid.rows(); ++r) {
        for (Eigen::Index c = 0; c < grid.cols(); ++c) {
            if (grid(r, c) != kInk) continue;
            top = std::min(top, r);
            bottom = std::max(bottom, r);
            left = std::min(left, c);
            right = std::max(right, c);
        }
    }
    if (bottom < 0) fail(ErrorCode::NoInk, "grid has no ink cells");
    return grid.block(top, left, bottom - top + 1, right - left + 1);
}

BinaryGrid resample_to_grid(const BinaryGrid& grid, int rows, int cols) {
    require(rows >= 1 && cols >= 1, ErrorCode::InvalidArgument, "target grid must be >= 1x1");
    require(grid.rows() >= 1 && grid.cols() >= 1, ErrorCode::InvalidArgument, "empty source grid");

    const auto src_rows = static_cast<std::int64_t>(grid.rows());
    const auto src_cols = static_cast<std::int64_t>(grid.cols());

    BinaryGrid out(rows, cols);
    for (int r = 0; r < rows; ++r) {
        std::int64_t r0 = r * src_rows / rows;
        std::int64_t r1 = (r + 1) * src_rows / rows;
        if (r1 <= r0) r1 = r0 + 1; // widen empty block when upsampling
        for (int c = 0; c < cols; ++c) {
            std::int64_t c0 = c * src_cols / cols;
            std::int64_t c1 = (c + 1) * src_cols / cols;
            if (c1 <= c0) c1 = c0 + 1;
            const auto block = grid.block(r0, c0, r1 - r0, c1 - c0);
            const std::int64_t ink = block.template cast<std::int64_t>().sum();
            const std::int64_t total = block.size();
            out(r, c) = 2 * ink >= total ? kInk : kBackground;
        }
    }
    return out;
}

FeatureVector to_feature_vector(const BinaryGrid& grid, GridShape expected) {
    if (grid.rows() != expected.rows || grid.cols() != expected.cols) {
        fail(ErrorCode::DimensionMismatch,
             "grid is " + std::to_string(grid.rows()) + "x" + std::to_string(grid.cols()) +
                 ", expected " + std::to_string(expected.rows) + "x" + std::to_string(expected.cols));
    }
    FeatureVector values(expected.size());
    Eigen::Index i = 0;
    for (Eigen::Index r = 0; r < grid.rows(); ++r) {
        for (Eigen::Index c = 0; c < grid.cols(); ++c) {
            values(i++) = grid(r, c) == kInk ? 1 : -1;
        }
    }
    return values;
}

BinaryGrid grid_from_feature_vector(const FeatureVector& values, GridShape shape) {
    require(values.size() == shape.size(), ErrorCode::DimensionMismatch,
            "vector length does not match grid shape");
    BinaryGrid grid(shape.rows, shape.cols);
    Eigen::Index i = 0;
    for (int r = 0; r < shape.rows; ++r) {
        for (int c = 0; c < shape.cols; ++c) {
            const Scalar v = values(i++);
            require(v == 1 || v == -1, ErrorCode::ValueOutOfRange, "feature entries must be +1 or -1");
            grid(r, c) = v == 1 ? kInk : kBackground;
        }
    }
    return grid;
}

FeatureVector extract_features(const RasterImage& img, const ExtractionParams& params) {
    const BinaryGrid binarized = binarize(img, params.threshold);
    const BinaryGrid cropped = crop_to_bounding_box(binarized);
    const BinaryGrid resampled = resample_to_grid(cropped, params.grid.rows, params.grid.cols);
    return to_feature_vector(resampled, params.grid);
}

} // namespace hebbocr
