#pragma once

#include <string>

#include "spxkit/types.hpp"

namespace spx {

// FEB1 raster file: ASCII line "FEB1 <width> <height> <bands> f32\n" followed
// by raw little-endian float32, row-major within each band, bands sequential.
//
// FEL1 label file: ASCII line "FEL1 <width> <height>\n" followed by raw
// little-endian uint32, row-major. 32-bit ids so k is not capped below the
// thousands of segments a production run uses.

/// Loads FEB1, or binary PGM (P5) / PPM (P6). 8-bit PNM samples are widened
/// to float32 without rescaling (255 stays 255.0).
MultibandRaster load_raster(const std::string& path);
void save_raster(const MultibandRaster& raster, const std::string& path);

/// Loads a FEL1 label map; labels are normalized to {0..k-1}.
LabelMap load_label_map(const std::string& path);
void save_label_map(const LabelMap& map, const std::string& path);

/// Loads a binary PGM whose pixels must be 0 (forest), 255 (deforestation)
/// or 128 (excluded).
GroundTruth load_ground_truth(const std::string& path);
void save_ground_truth(const GroundTruth& gt, const std::string& path);

}  // namespace spx
