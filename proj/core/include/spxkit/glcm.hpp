#pragma once

#include <array>
#include <optional>
#include <vector>

#include "spxkit/types.hpp"

namespace spx {

struct GlcmParams {
  int levels = 32;  // gray levels after quantization of the [0,255] range
};

constexpr int kGlcmDirections = 4;   // 0, 45, 90, 135 degrees at distance 1
constexpr int kHaralickFeatures = 13;
constexpr int kFeatureChannels = 3;
constexpr int kFeatureVectorLength = kHaralickFeatures * kGlcmDirections * kFeatureChannels;

struct FeatureVector {
  std::uint32_t segment_id = 0;
  std::vector<double> values;  // channel-major, direction-minor, 13 features each
  std::optional<GtClass> label;
  // directions with no co-occurring pair inside the segment; their 13
  // features are zero
  std::vector<std::pair<int, int>> empty_directions;  // (channel, direction)
};

/// Haralick features f1..f13 over symmetric, normalized distance-1 GLCMs of a
/// segment's pixels. The raster must already be in [0,255] (see
/// rescale_to_byte_range). Throws SegmentTooSmall for segments under 4 pixels.
FeatureVector glcm_features(const MultibandRaster& raster, const LabelMap& labels,
                            std::uint32_t segment_id, const GlcmParams& params = {});

/// f1..f13 from one normalized GLCM (natural-log entropies).
std::array<double, kHaralickFeatures> haralick_features(const std::vector<double>& glcm,
                                                        int levels);

}  // namespace spx
