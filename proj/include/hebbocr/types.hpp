#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace hebbocr {

/// All weights, scores and feature entries are exact integers; no floating
/// point enters the training or scoring path.
using Scalar = std::int64_t;

/// Bipolar feature vector: every entry is +1 (ink) or -1 (background).
using FeatureVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Per-neuron weight vector, same length as the feature vector it scores.
using WeightVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Row-major binary raster. Cells hold kInk or kBackground.
using BinaryGrid = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr std::uint8_t kInk = 1;
inline constexpr std::uint8_t kBackground = 0;

/// Row-major grayscale raster, one entry per pixel, values in 0..maxval.
using PixelMatrix = Eigen::Matrix<std::uint16_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct GridShape {
    int rows = 0;
    int cols = 0;

    int size() const noexcept { return rows * cols; }
    bool operator==(const GridShape&) const = default;
};

struct RasterImage {
    int maxval = 255;
    PixelMatrix pixels; // (height, width)

    int width() const noexcept { return static_cast<int>(pixels.cols()); }
    int height() const noexcept { return static_cast<int>(pixels.rows()); }
};

inline bool grids_equal(const BinaryGrid& a, const BinaryGrid& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

inline bool vectors_equal(const FeatureVector& a, const FeatureVector& b) {
    return a.size() == b.size() && (a.array() == b.array()).all();
}

} // namespace hebbocr
