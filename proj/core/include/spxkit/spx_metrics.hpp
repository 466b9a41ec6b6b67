#pragma once

#include "spxkit/types.hpp"

namespace spx {

/// Constants of the reconstruction-based homogeneity score. The quantization
/// depth, representative count and Gaussian width are config-exposed and
/// echoed into every report.
struct SirsParams {
  int bins = 8;             // quantization bins per channel
  int representatives = 2;  // colors kept per superpixel
  double sigma = 0.1;       // Gaussian width applied to the MEE
};

/// Fraction of ground-truth boundary pixels with a superpixel boundary pixel
/// within Chebyshev distance r = max(1, round(0.0025 * image diagonal)).
/// Excluded pixels generate no boundaries and cannot match. Returns 1 when
/// the ground truth has no boundary pixels.
double boundary_recall(const LabelMap& labels, const GroundTruth& gt);

/// Sum over superpixels of (valid size - best single-class overlap), divided
/// by the number of valid pixels.
double undersegmentation_error(const LabelMap& labels, const GroundTruth& gt);

/// Reconstructs each superpixel from its most relevant colors, measures the
/// mean exponential reconstruction error and Gaussian-weights it. In (0, 1].
/// The raster is rescaled to [0,255] internally.
double sirs_score(const LabelMap& labels, const MultibandRaster& raster,
                  const SirsParams& params = {});

/// Area-weighted isoperimetric quotient, Q(S) = 4*pi*|S| / P(S)^2 with P the
/// boundary edge count (4-adjacent crossings plus image-frame edges), clamped
/// to <= 1.
double compactness(const LabelMap& labels);

/// Population standard deviation of segment areas.
double regularity(const LabelMap& labels);

struct SpxMetricReport {
  double br = 0.0;
  double ue = 0.0;
  double sirs = 0.0;
  double co = 0.0;
  double reg = 0.0;
  std::uint32_t k_final = 0;
};

SpxMetricReport evaluate_spx(const LabelMap& labels, const GroundTruth& gt,
                             const MultibandRaster& raster, const SirsParams& params = {});

}  // namespace spx
