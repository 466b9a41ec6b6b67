#pragma once

#include "spxkit/types.hpp"

namespace spx {

struct SegmenterConfig {
  int k_desired = 6000;
  double compactness = 10.0;  // m in the joint color-space distance
  int iterations = 10;
  int min_size = 70;
};

/// Axis-aligned rectangular tiling. rows = round(sqrt(k*H/W)),
/// cols = ceil(k/rows), cut points evenly spaced.
LabelMap grid_segment(const MultibandRaster& raster, const SegmenterConfig& cfg);

/// Local k-means in joint color-space. Step S = sqrt(W*H/k),
/// D = sqrt(d_color^2 + (d_xy/S)^2 * m^2), 2S x 2S search window per center.
/// Connectivity is enforced afterwards; fragments below a quarter of the
/// nominal cell area are absorbed into their most similar neighbor.
LabelMap slic_segment(const MultibandRaster& raster, const SegmenterConfig& cfg);

/// Non-iterative growth from grid seeds via a priority queue ordered by the
/// same D as slic_segment; centers update as running means on pop.
/// Connected by construction.
LabelMap snic_segment(const MultibandRaster& raster, const SegmenterConfig& cfg);

/// Priority-queue seed competition where a pixel's cost is the color distance
/// to the conquering region's running mean. No spatial term.
LabelMap seed_competition_segment(const MultibandRaster& raster, const SegmenterConfig& cfg);

/// Splits every label into its 4-connected components, each component getting
/// a fresh label; output normalized.
LabelMap enforce_connectivity(const LabelMap& labels);

/// Greedy loop: the smallest segment under min_size merges into its 4-adjacent
/// neighbor with minimal mean-color distance (ties: longest shared border,
/// then smallest label). Stops when all segments reach min_size or one remains.
LabelMap merge_small_segments(const LabelMap& labels, const MultibandRaster& raster,
                              int min_size);

}  // namespace spx
