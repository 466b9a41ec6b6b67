#pragma once

#include <utility>
#include <vector>

#include "spxkit/types.hpp"

namespace spx {

/// Fitted principal-component model over raster bands.
struct PcaModel {
  std::vector<double> mean;                      // per band
  std::vector<std::vector<double>> components;   // n_components rows of length B
  std::vector<double> explained_variance;        // descending eigenvalues
  bool degenerate = false;                       // covariance rank < n_components
};

/// Fits PCA on the band covariance matrix (sample covariance over all pixels,
/// or over non-excluded pixels when a ground truth is given) and projects
/// every pixel. Component signs are fixed so that each component's
/// largest-magnitude coefficient is positive.
///
/// When the covariance rank is below n_components the model is flagged
/// degenerate and the trailing components / projected bands are zero-filled.
std::pair<PcaModel, MultibandRaster> pca_fit_project(const MultibandRaster& raster,
                                                     int n_components = 3,
                                                     const GroundTruth* gt = nullptr);

/// Per band, affine map of [min, max] onto [0, 255]. Constant bands map to 0.
MultibandRaster rescale_to_byte_range(const MultibandRaster& raster);

}  // namespace spx
