#pragma once

#include "hebbocr/types.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace hebbocr {

/// Parse a plain-text PNM image, magic "P1" (bitmap) or "P2" (graymap).
/// '#' comments are skipped anywhere between tokens. P1 bits need not be
/// whitespace-separated; a '1' bit (black) maps to pixel 0 with maxval 255.
RasterImage parse_pnm(std::string_view bytes);

RasterImage read_pnm_file(const std::filesystem::path& path);

/// Serialize a binary grid as a plain P1 bitmap, ink cells written as 1.
std::string write_pbm(const BinaryGrid& grid);

/// Dark-is-ink thresholding: cell is ink iff pixel < threshold * maxval.
BinaryGrid binarize(const RasterImage& img, double threshold);

/// Minimal sub-rectangle containing every ink cell. Throws NoInk on a
/// blank grid; callers treat that as an unrecognizable sample.
BinaryGrid crop_to_bounding_box(const BinaryGrid& grid);

/// Block-majority resampling to a fixed rows x cols grid. Target cell (r,c)
/// covers source rows [floor(r*R/rows), floor((r+1)*R/rows)) and the matching
/// column range, widened to at least one source cell when upsampling. A cell
/// becomes ink iff ink count >= background count in its block (ties -> ink).
BinaryGrid resample_to_grid(const BinaryGrid& grid, int rows, int cols);

/// Row-major flatten, ink -> +1, background -> -1. The grid must match the
/// expected shape exactly.
FeatureVector to_feature_vector(const BinaryGrid& grid, GridShape expected);

/// Inverse of to_feature_vector for bipolar vectors of length shape.size().
BinaryGrid grid_from_feature_vector(const FeatureVector& values, GridShape shape);

struct ExtractionParams {
    GridShape grid{16, 16};
    double threshold = 0.5;
};

/// Full pipeline: binarize -> crop to bounding box -> resample -> flatten.
/// Throws NoInk for blank images.
FeatureVector extract_features(const RasterImage& img, const ExtractionParams& params);

} // namespace hebbocr
