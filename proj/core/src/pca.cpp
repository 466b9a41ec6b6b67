#include "spxkit/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spx {

namespace {

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Sizes here are the
// band count (single digits), so convergence cost is irrelevant.
void jacobi_eigen(std::vector<std::vector<double>> a, std::vector<double>& eigenvalues,
                  std::vector<std::vector<double>>& eigenvectors) {
  const int n = static_cast<int>(a.size());
  eigenvectors.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) eigenvectors[i][i] = 1.0;

  for (int sweep = 0; sweep < 128; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int i = 0; i < n; ++i) {
          double aip = a[i][p], aiq = a[i][q];
          a[i][p] = c * aip - s * aiq;
          a[i][q] = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          double api = a[p][i], aqi = a[q][i];
          a[p][i] = c * api - s * aqi;
          a[q][i] = s * api + c * aqi;
        }
        for (int i = 0; i < n; ++i) {
          double vip = eigenvectors[i][p], viq = eigenvectors[i][q];
          eigenvectors[i][p] = c * vip - s * viq;
          eigenvectors[i][q] = s * vip + c * viq;
        }
      }
    }
  }

  eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) eigenvalues[i] = a[i][i];
}

}  // namespace

std::pair<PcaModel, MultibandRaster> pca_fit_project(const MultibandRaster& raster,
                                                     int n_components,
                                                     const GroundTruth* gt) {
  const int bands = raster.bands;
  if (bands < n_components) {
    throw DimensionMismatch("pca: " + std::to_string(bands) + " bands < " +
                            std::to_string(n_components) + " components");
  }
  if (gt) {
    require_same_shape(raster.width, raster.height, gt->width, gt->height, "pca gt");
  }

  const std::size_t plane = raster.plane();
  std::vector<std::size_t> pixels;
  pixels.reserve(plane);
  for (std::size_t i = 0; i < plane; ++i) {
    if (!gt || gt->classes[i] != GtClass::Excluded) pixels.push_back(i);
  }
  if (pixels.size() < static_cast<std::size_t>(n_components) + 1) {
    throw EmptyInput("pca: not enough valid pixels");
  }

  std::vector<double> mean(bands, 0.0);
  for (std::size_t i : pixels) {
    for (int b = 0; b < bands; ++b) mean[b] += raster.data[b * plane + i];
  }
  for (auto& m : mean) m /= static_cast<double>(pixels.size());

  // Sample covariance over the included pixels.
  std::vector<std::vector<double>> cov(bands, std::vector<double>(bands, 0.0));
  for (std::size_t i : pixels) {
    for (int p = 0; p < bands; ++p) {
      double dp = raster.data[p * plane + i] - mean[p];
      for (int q = p; q < bands; ++q) {
        cov[p][q] += dp * (raster.data[q * plane + i] - mean[q]);
      }
    }
  }
  double denom = static_cast<double>(pixels.size()) - 1.0;
  for (int p = 0; p < bands; ++p) {
    for (int q = p; q < bands; ++q) {
      cov[p][q] /= denom;
      cov[q][p] = cov[p][q];
    }
  }

  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;  // column j = eigenvector j
  jacobi_eigen(cov, eigenvalues, eigenvectors);

  std::vector<int> order(bands);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return eigenvalues[a] > eigenvalues[b]; });

  PcaModel model;
  model.mean = mean;
  model.components.assign(n_components, std::vector<double>(bands, 0.0));
  model.explained_variance.assign(n_components, 0.0);

  double ev_max = std::max(eigenvalues[order[0]], 0.0);
  int rank = 0;
  for (int j = 0; j < bands; ++j) {
    if (eigenvalues[order[j]] > std::max(1e-12 * ev_max, 1e-12)) ++rank;
  }
  model.degenerate = rank < n_components;
  int live = std::min(n_components, rank);

  for (int c = 0; c < live; ++c) {
    int j = order[c];
    auto& comp = model.components[c];
    for (int b = 0; b < bands; ++b) comp[b] = eigenvectors[b][j];
    // Sign convention: largest-magnitude coefficient positive.
    int arg = 0;
    for (int b = 1; b < bands; ++b) {
      if (std::abs(comp[b]) > std::abs(comp[arg])) arg = b;
    }
    if (comp[arg] < 0) {
      for (auto& v : comp) v = -v;
    }
    model.explained_variance[c] = std::max(eigenvalues[j], 0.0);
  }

  MultibandRaster out;
  out.width = raster.width;
  out.height = raster.height;
  out.bands = n_components;
  out.data.assign(plane * n_components, 0.0f);
  for (int c = 0; c < live; ++c) {
    const auto& comp = model.components[c];
    for (std::size_t i = 0; i < plane; ++i) {
      double acc = 0.0;
      for (int b = 0; b < bands; ++b) {
        acc += comp[b] * (raster.data[b * plane + i] - mean[b]);
      }
      out.data[c * plane + i] = static_cast<float>(acc);
    }
  }
  return {std::move(model), std::move(out)};
}

MultibandRaster rescale_to_byte_range(const MultibandRaster& raster) {
  MultibandRaster out = raster;
  const std::size_t plane = raster.plane();
  for (int b = 0; b < raster.bands; ++b) {
    auto begin = raster.data.begin() + static_cast<std::ptrdiff_t>(b * plane);
    auto [mn_it, mx_it] = std::minmax_element(begin, begin + static_cast<std::ptrdiff_t>(plane));
    float mn = *mn_it, mx = *mx_it;
    float scale = mx > mn ? 255.0f / (mx - mn) : 0.0f;
    for (std::size_t i = 0; i < plane; ++i) {
      out.data[b * plane + i] = (raster.data[b * plane + i] - mn) * scale;
    }
  }
  return out;
}

}  // namespace spx
