// Brute-force reference implementations, independent of the library code
// paths they check. Kept deliberately naive.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "spxkit/types.hpp"

namespace spxtest {

inline bool gt_boundary_pixel(const spx::GroundTruth& gt, int x, int y) {
  if (gt.at(x, y) == spx::GtClass::Excluded) return false;
  const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
  for (int d = 0; d < 4; ++d) {
    int nx = x + dx[d], ny = y + dy[d];
    if (nx < 0 || nx >= gt.width || ny < 0 || ny >= gt.height) continue;
    if (gt.at(nx, ny) != spx::GtClass::Excluded && gt.at(nx, ny) != gt.at(x, y)) return true;
  }
  return false;
}

inline bool label_boundary_pixel(const spx::LabelMap& labels, int x, int y) {
  const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
  for (int d = 0; d < 4; ++d) {
    int nx = x + dx[d], ny = y + dy[d];
    if (nx < 0 || nx >= labels.width || ny < 0 || ny >= labels.height) continue;
    if (labels.at(nx, ny) != labels.at(x, y)) return true;
  }
  return false;
}

// O(N^2 r^2) double loop over every ground-truth boundary pixel and every
// pixel of its window.
inline double oracle_boundary_recall(const spx::LabelMap& labels, const spx::GroundTruth& gt) {
  double diag = std::sqrt(static_cast<double>(gt.width) * gt.width +
                          static_cast<double>(gt.height) * gt.height);
  int r = std::max(1, static_cast<int>(std::floor(0.0025 * diag + 0.5)));
  long total = 0, matched = 0;
  for (int y = 0; y < gt.height; ++y) {
    for (int x = 0; x < gt.width; ++x) {
      if (!gt_boundary_pixel(gt, x, y)) continue;
      ++total;
      bool hit = false;
      for (int my = 0; my < gt.height; ++my) {
        for (int mx = 0; mx < gt.width; ++mx) {
          if (std::abs(mx - x) > r || std::abs(my - y) > r) continue;
          if (gt.at(mx, my) == spx::GtClass::Excluded) continue;
          if (label_boundary_pixel(labels, mx, my)) hit = true;
        }
      }
      if (hit) ++matched;
    }
  }
  return total == 0 ? 1.0 : static_cast<double>(matched) / total;
}

inline double oracle_undersegmentation_error(const spx::LabelMap& labels,
                                             const spx::GroundTruth& gt) {
  std::map<std::uint32_t, std::map<int, long>> overlap;  // label -> class -> count
  long n_valid = 0;
  for (int y = 0; y < gt.height; ++y) {
    for (int x = 0; x < gt.width; ++x) {
      spx::GtClass c = gt.at(x, y);
      if (c == spx::GtClass::Excluded) continue;
      ++overlap[labels.at(x, y)][static_cast<int>(c)];
      ++n_valid;
    }
  }
  long err = 0;
  for (auto& [label, counts] : overlap) {
    long size = 0, best = 0;
    for (auto& [cls, n] : counts) {
      size += n;
      best = std::max(best, n);
    }
    err += size - best;
  }
  return static_cast<double>(err) / static_cast<double>(n_valid);
}

inline double oracle_compactness(const spx::LabelMap& labels) {
  std::map<std::uint32_t, long> area;
  std::map<std::uint32_t, long> perim;
  const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
  for (int y = 0; y < labels.height; ++y) {
    for (int x = 0; x < labels.width; ++x) {
      std::uint32_t l = labels.at(x, y);
      ++area[l];
      for (int d = 0; d < 4; ++d) {
        int nx = x + dx[d], ny = y + dy[d];
        bool crossing = nx < 0 || nx >= labels.width || ny < 0 || ny >= labels.height ||
                        labels.at(nx, ny) != l;
        if (crossing) ++perim[l];
      }
    }
  }
  double n = static_cast<double>(labels.size());
  double co = 0.0;
  for (auto& [l, a] : area) {
    double q = 4.0 * std::numbers::pi * a / (static_cast<double>(perim[l]) * perim[l]);
    co += (a / n) * std::min(1.0, q);
  }
  return co;
}

inline double oracle_regularity(const spx::LabelMap& labels) {
  std::map<std::uint32_t, long> area;
  for (auto l : labels.labels) ++area[l];
  std::vector<double> sizes;
  for (auto& [l, a] : area) sizes.push_back(static_cast<double>(a));
  double mean = 0.0;
  for (double s : sizes) mean += s;
  mean /= sizes.size();
  double var = 0.0;
  for (double s : sizes) var += (s - mean) * (s - mean);
  return std::sqrt(var / sizes.size());
}

// Per-direction GLCM tally by enumerating ordered pixel pairs, followed by an
// independently coded Haralick evaluation.
struct OracleGlcm {
  std::vector<double> matrix;  // g x g, normalized
  long pairs = 0;
};

inline OracleGlcm oracle_glcm(const spx::MultibandRaster& raster, const spx::LabelMap& labels,
                              std::uint32_t segment, int channel, int ddx, int ddy, int g) {
  OracleGlcm out;
  out.matrix.assign(static_cast<std::size_t>(g) * g, 0.0);
  const std::size_t plane = raster.plane();
  auto level = [&](int x, int y) {
    float v = std::clamp(raster.data[channel * plane + static_cast<std::size_t>(y) * raster.width + x],
                         0.0f, 255.0f);
    return std::min(g - 1, static_cast<int>(v * g / 256.0f));
  };
  for (int y = 0; y < raster.height; ++y) {
    for (int x = 0; x < raster.width; ++x) {
      if (labels.at(x, y) != segment) continue;
      int nx = x + ddx, ny = y + ddy;
      if (nx < 0 || nx >= raster.width || ny < 0 || ny >= raster.height) continue;
      if (labels.at(nx, ny) != segment) continue;
      int a = level(x, y), b = level(nx, ny);
      out.matrix[a * g + b] += 1.0;
      out.matrix[b * g + a] += 1.0;
      ++out.pairs;
    }
  }
  if (out.pairs > 0) {
    for (auto& p : out.matrix) p /= 2.0 * out.pairs;
  }
  return out;
}

inline std::array<double, 13> oracle_haralick(const std::vector<double>& p, int g) {
  auto lg = [](double v) { return v > 0 ? std::log(v) : 0.0; };
  std::vector<double> px(g, 0), py(g, 0), ps(2 * g - 1, 0), pd(g, 0);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      px[i] += p[i * g + j];
      py[j] += p[i * g + j];
      ps[i + j] += p[i * g + j];
      pd[std::abs(i - j)] += p[i * g + j];
    }
  double mx = 0, my = 0;
  for (int i = 0; i < g; ++i) {
    mx += i * px[i];
    my += i * py[i];
  }
  double vx = 0, vy = 0;
  for (int i = 0; i < g; ++i) {
    vx += (i - mx) * (i - mx) * px[i];
    vy += (i - my) * (i - my) * py[i];
  }
  std::array<double, 13> f{};
  double hxy1 = 0, hxy2 = 0;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      double v = p[i * g + j];
      f[0] += v * v;
      f[2] += i * j * v;
      f[3] += (i - mx) * (i - mx) * v;
      f[4] += v / (1 + (i - j) * (i - j));
      f[8] -= v * lg(v);
      double q = px[i] * py[j];
      if (v > 0) hxy1 -= v * lg(q);
      hxy2 -= q * lg(q);
    }
  for (int n = 0; n < g; ++n) f[1] += static_cast<double>(n) * n * pd[n];
  double sigma = std::sqrt(vx * vy);
  f[2] = sigma > 0 ? (f[2] - mx * my) / sigma : 0.0;
  for (int k = 0; k < 2 * g - 1; ++k) f[5] += k * ps[k];
  for (int k = 0; k < 2 * g - 1; ++k) {
    f[6] += (k - f[5]) * (k - f[5]) * ps[k];
    f[7] -= ps[k] * lg(ps[k]);
  }
  double md = 0;
  for (int n = 0; n < g; ++n) md += n * pd[n];
  for (int n = 0; n < g; ++n) {
    f[9] += (n - md) * (n - md) * pd[n];
    f[10] -= pd[n] * lg(pd[n]);
  }
  double hx = 0, hy = 0;
  for (int i = 0; i < g; ++i) {
    hx -= px[i] * lg(px[i]);
    hy -= py[i] * lg(py[i]);
  }
  double hmax = std::max(hx, hy);
  f[11] = hmax > 0 ? (f[8] - hxy1) / hmax : 0.0;
  f[12] = std::sqrt(std::max(0.0, 1.0 - std::exp(-2.0 * (hxy2 - f[8]))));
  return f;
}

}  // namespace spxtest
