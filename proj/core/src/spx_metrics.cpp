#include "spxkit/spx_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "spxkit/pca.hpp"

namespace spx {

namespace {

constexpr int kDx[4] = {1, -1, 0, 0};
constexpr int kDy[4] = {0, 0, 1, -1};

std::vector<char> label_boundary(const LabelMap& labels) {
  const int w = labels.width, h = labels.height;
  std::vector<char> boundary(labels.size(), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint32_t l = labels.at(x, y);
      for (int d = 0; d < 4; ++d) {
        int nx = x + kDx[d], ny = y + kDy[d];
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        if (labels.at(nx, ny) != l) {
          boundary[static_cast<std::size_t>(y) * w + x] = 1;
          break;
        }
      }
    }
  }
  return boundary;
}

}  // namespace

double boundary_recall(const LabelMap& labels, const GroundTruth& gt) {
  require_same_shape(labels.width, labels.height, gt.width, gt.height, "boundary_recall");
  const int w = gt.width, h = gt.height;
  double diag = std::sqrt(static_cast<double>(w) * w + static_cast<double>(h) * h);
  int r = std::max(1, static_cast<int>(std::floor(0.0025 * diag + 0.5)));

  std::vector<char> spx_boundary = label_boundary(labels);
  // Excluded pixels cannot serve as matches.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (gt.at(x, y) == GtClass::Excluded) spx_boundary[static_cast<std::size_t>(y) * w + x] = 0;
    }
  }

  long total = 0, matched = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      GtClass c = gt.at(x, y);
      if (c == GtClass::Excluded) continue;
      bool is_boundary = false;
      for (int d = 0; d < 4 && !is_boundary; ++d) {
        int nx = x + kDx[d], ny = y + kDy[d];
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        GtClass nc = gt.at(nx, ny);
        is_boundary = nc != GtClass::Excluded && nc != c;
      }
      if (!is_boundary) continue;
      ++total;
      bool hit = false;
      for (int ny = std::max(0, y - r); ny <= std::min(h - 1, y + r) && !hit; ++ny) {
        for (int nx = std::max(0, x - r); nx <= std::min(w - 1, x + r) && !hit; ++nx) {
          hit = spx_boundary[static_cast<std::size_t>(ny) * w + nx] != 0;
        }
      }
      if (hit) ++matched;
    }
  }
  if (total == 0) return 1.0;
  return static_cast<double>(matched) / static_cast<double>(total);
}

double undersegmentation_error(const LabelMap& labels, const GroundTruth& gt) {
  require_same_shape(labels.width, labels.height, gt.width, gt.height,
                     "undersegmentation_error");
  std::vector<long> n_forest(labels.k, 0), n_deforest(labels.k, 0);
  long n_valid = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    switch (gt.classes[i]) {
      case GtClass::Forest: ++n_forest[labels.labels[i]]; ++n_valid; break;
      case GtClass::Deforest: ++n_deforest[labels.labels[i]]; ++n_valid; break;
      case GtClass::Excluded: break;
    }
  }
  if (n_valid == 0) throw EmptyValidArea("undersegmentation_error: all pixels excluded");
  long err = 0;
  for (std::uint32_t s = 0; s < labels.k; ++s) {
    err += n_forest[s] + n_deforest[s] - std::max(n_forest[s], n_deforest[s]);
  }
  return static_cast<double>(err) / static_cast<double>(n_valid);
}

double sirs_score(const LabelMap& labels, const MultibandRaster& raster,
                  const SirsParams& params) {
  require_same_shape(labels.width, labels.height, raster.width, raster.height, "sirs_score");
  if (raster.bands != 3) {
    throw DimensionMismatch("sirs_score: expected 3 bands, got " +
                            std::to_string(raster.bands));
  }
  const MultibandRaster img = rescale_to_byte_range(raster);
  const std::size_t plane = img.plane();
  const int q = params.bins;

  std::vector<std::vector<std::uint32_t>> members(labels.k);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    members[labels.labels[i]].push_back(static_cast<std::uint32_t>(i));
  }

  auto cell_of = [&](std::uint32_t pix) {
    int key = 0;
    for (int b = 0; b < 3; ++b) {
      int bin = std::min(q - 1, static_cast<int>(img.data[b * plane + pix] * q / 256.0f));
      key = key * q + bin;
    }
    return key;
  };

  double err_sum = 0.0;
  const double norm = 255.0 * std::sqrt(3.0);
  const double expm1_e = std::exp(1.0) - 1.0;

  for (std::uint32_t s = 0; s < labels.k; ++s) {
    // Most frequent quantization cells, represented by their member means.
    std::map<int, std::pair<long, std::array<double, 3>>> cells;
    for (std::uint32_t pix : members[s]) {
      auto& [count, sum] = cells[cell_of(pix)];
      if (count == 0) sum = {0.0, 0.0, 0.0};
      ++count;
      for (int b = 0; b < 3; ++b) sum[b] += img.data[b * plane + pix];
    }
    std::vector<std::pair<int, long>> ordered;
    ordered.reserve(cells.size());
    for (auto& [key, cs] : cells) ordered.push_back({key, cs.first});
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    int v = std::min<int>(params.representatives, static_cast<int>(ordered.size()));
    std::vector<std::array<double, 3>> reps(v);
    for (int i = 0; i < v; ++i) {
      auto& [count, sum] = cells[ordered[i].first];
      for (int b = 0; b < 3; ++b) reps[i][b] = sum[b] / count;
    }

    for (std::uint32_t pix : members[s]) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& rep : reps) {
        double d2 = 0.0;
        for (int b = 0; b < 3; ++b) {
          double d = img.data[b * plane + pix] - rep[b];
          d2 += d * d;
        }
        best = std::min(best, d2);
      }
      double e_hat = std::sqrt(best) / norm;
      err_sum += (std::exp(e_hat) - 1.0) / expm1_e;
    }
  }

  double mee = err_sum / static_cast<double>(labels.size());
  return std::exp(-(mee * mee) / (2.0 * params.sigma * params.sigma));
}

double compactness(const LabelMap& labels) {
  const int w = labels.width, h = labels.height;
  std::vector<long> area(labels.k, 0), perimeter(labels.k, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint32_t l = labels.at(x, y);
      ++area[l];
      for (int d = 0; d < 4; ++d) {
        int nx = x + kDx[d], ny = y + kDy[d];
        if (nx < 0 || nx >= w || ny < 0 || ny >= h || labels.at(nx, ny) != l) ++perimeter[l];
      }
    }
  }
  double co = 0.0;
  const double n = static_cast<double>(labels.size());
  for (std::uint32_t s = 0; s < labels.k; ++s) {
    if (area[s] == 0) continue;
    double q = 4.0 * std::numbers::pi * area[s] /
               (static_cast<double>(perimeter[s]) * perimeter[s]);
    co += (area[s] / n) * std::min(q, 1.0);
  }
  return co;
}

double regularity(const LabelMap& labels) {
  std::vector<long> area(labels.k, 0);
  for (auto l : labels.labels) ++area[l];
  double mean = 0.0;
  for (long a : area) mean += a;
  mean /= static_cast<double>(labels.k);
  double var = 0.0;
  for (long a : area) var += (a - mean) * (a - mean);
  var /= static_cast<double>(labels.k);
  return std::sqrt(var);
}

SpxMetricReport evaluate_spx(const LabelMap& labels, const GroundTruth& gt,
                             const MultibandRaster& raster, const SirsParams& params) {
  SpxMetricReport report;
  report.br = boundary_recall(labels, gt);
  report.ue = undersegmentation_error(labels, gt);
  report.sirs = sirs_score(labels, raster, params);
  report.co = compactness(labels);
  report.reg = regularity(labels);
  report.k_final = labels.k;
  return report;
}

}  // namespace spx
