#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "spxkit/types.hpp"

namespace spxtest {

inline spx::MultibandRaster make_raster(int w, int h, int b, std::vector<float> data) {
  spx::MultibandRaster r;
  r.width = w;
  r.height = h;
  r.bands = b;
  r.data = std::move(data);
  return r;
}

inline spx::MultibandRaster random_raster(int w, int h, int b, std::uint64_t seed,
                                          float lo = 0.0f, float hi = 255.0f) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(lo, hi);
  spx::MultibandRaster r;
  r.width = w;
  r.height = h;
  r.bands = b;
  r.data.resize(static_cast<std::size_t>(w) * h * b);
  for (auto& v : r.data) v = dist(rng);
  return r;
}

inline spx::LabelMap make_labels(int w, int h, std::vector<std::uint32_t> labels) {
  spx::LabelMap m;
  m.width = w;
  m.height = h;
  m.labels = std::move(labels);
  spx::normalize_labels(m);
  return m;
}

inline spx::LabelMap random_labels(int w, int h, std::uint32_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dist(0, k - 1);
  spx::LabelMap m;
  m.width = w;
  m.height = h;
  m.labels.resize(static_cast<std::size_t>(w) * h);
  for (auto& l : m.labels) l = dist(rng);
  spx::normalize_labels(m);
  return m;
}

inline spx::GroundTruth make_gt(int w, int h, std::vector<spx::GtClass> classes) {
  spx::GroundTruth gt;
  gt.width = w;
  gt.height = h;
  gt.classes = std::move(classes);
  return gt;
}

inline spx::GroundTruth random_gt(int w, int h, std::uint64_t seed, bool with_excluded = true) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(0, with_excluded ? 9 : 1);
  spx::GroundTruth gt;
  gt.width = w;
  gt.height = h;
  gt.classes.resize(static_cast<std::size_t>(w) * h);
  for (auto& c : gt.classes) {
    int v = dist(rng);
    c = v == 9 ? spx::GtClass::Excluded
               : (v % 2 == 0 ? spx::GtClass::Forest : spx::GtClass::Deforest);
  }
  return gt;
}

inline std::vector<long> segment_areas(const spx::LabelMap& labels) {
  std::vector<long> area(labels.k, 0);
  for (auto l : labels.labels) ++area[l];
  return area;
}

/// True when every label forms exactly one 4-connected component and the ids
/// are a normalized {0..k-1} range.
inline bool is_connected_partition(const spx::LabelMap& labels) {
  if (labels.size() == 0 || labels.k == 0) return false;
  std::vector<char> seen_label(labels.k, 0);
  std::vector<char> visited(labels.size(), 0);
  for (int y0 = 0; y0 < labels.height; ++y0) {
    for (int x0 = 0; x0 < labels.width; ++x0) {
      std::size_t start = static_cast<std::size_t>(y0) * labels.width + x0;
      if (visited[start]) continue;
      std::uint32_t l = labels.labels[start];
      if (l >= labels.k) return false;
      if (seen_label[l]) return false;  // second component of the same label
      seen_label[l] = 1;
      std::vector<std::size_t> stack{start};
      visited[start] = 1;
      while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        int x = static_cast<int>(i % labels.width), y = static_cast<int>(i / labels.width);
        const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          int nx = x + dx[d], ny = y + dy[d];
          if (nx < 0 || nx >= labels.width || ny < 0 || ny >= labels.height) continue;
          std::size_t ni = static_cast<std::size_t>(ny) * labels.width + nx;
          if (!visited[ni] && labels.labels[ni] == l) {
            visited[ni] = 1;
            stack.push_back(ni);
          }
        }
      }
    }
  }
  for (char s : seen_label) {
    if (!s) return false;  // label id with no pixels
  }
  return true;
}

}  // namespace spxtest
