#include "spxkit/segmenters.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

namespace spx {

namespace {

constexpr int kDx[4] = {1, -1, 0, 0};
constexpr int kDy[4] = {0, 0, 1, -1};

struct GridShape {
  int rows;
  int cols;
};

GridShape grid_shape(int width, int height, int k_desired) {
  if (k_desired < 1 || static_cast<long long>(k_desired) > 1LL * width * height) {
    throw KTooLarge("k_desired " + std::to_string(k_desired) + " out of range for " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  double ideal = std::sqrt(static_cast<double>(k_desired) * height / width);
  int rows = std::clamp(static_cast<int>(std::floor(ideal + 0.5)), 1, height);
  int cols = std::clamp((k_desired + rows - 1) / rows, 1, width);
  return {rows, cols};
}

struct Seed {
  int x, y;
};

std::vector<Seed> grid_seeds(int width, int height, int k_desired) {
  auto [rows, cols] = grid_shape(width, height, k_desired);
  std::vector<Seed> seeds;
  seeds.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    int y0 = r * height / rows, y1 = (r + 1) * height / rows;
    for (int c = 0; c < cols; ++c) {
      int x0 = c * width / cols, x1 = (c + 1) * width / cols;
      seeds.push_back({(x0 + x1 - 1) / 2, (y0 + y1 - 1) / 2});
    }
  }
  return seeds;
}

double color_dist2(const MultibandRaster& raster, std::size_t plane, std::size_t pix,
                   const std::vector<double>& color) {
  double acc = 0.0;
  for (std::size_t b = 0; b < color.size(); ++b) {
    double d = raster.data[b * plane + pix] - color[b];
    acc += d * d;
  }
  return acc;
}

// Priority-queue growth shared by the SNIC-style and seed-competition
// segmenters. Entries tie-break FIFO (by push sequence) so that equal-cost
// frontiers advance in balanced waves instead of one label flooding the rest.
struct QueueEntry {
  double cost;
  std::uint64_t seq;
  std::uint32_t label;
  std::uint32_t pixel;

  bool operator>(const QueueEntry& other) const {
    return std::tie(cost, seq) > std::tie(other.cost, other.seq);
  }
};

struct RegionMean {
  std::vector<double> color;
  double x = 0.0, y = 0.0;
  double n = 0.0;
};

LabelMap priority_grow(const MultibandRaster& raster, const SegmenterConfig& cfg,
                       bool spatial_term) {
  const int width = raster.width, height = raster.height;
  const std::size_t plane = raster.plane();
  auto seeds = grid_seeds(width, height, cfg.k_desired);
  const double step = std::sqrt(static_cast<double>(width) * height / seeds.size());
  const double spatial_w = cfg.compactness * cfg.compactness / (step * step);

  LabelMap map;
  map.width = width;
  map.height = height;
  map.labels.assign(plane, UINT32_MAX);

  std::vector<RegionMean> regions(seeds.size());
  for (auto& r : regions) r.color.assign(raster.bands, 0.0);

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> queue;
  std::uint64_t seq = 0;
  for (std::uint32_t s = 0; s < seeds.size(); ++s) {
    queue.push({0.0, seq++, s, static_cast<std::uint32_t>(seeds[s].y * width + seeds[s].x)});
  }

  while (!queue.empty()) {
    QueueEntry e = queue.top();
    queue.pop();
    if (map.labels[e.pixel] != UINT32_MAX) continue;
    map.labels[e.pixel] = e.label;

    RegionMean& reg = regions[e.label];
    int px = static_cast<int>(e.pixel % width), py = static_cast<int>(e.pixel / width);
    for (int b = 0; b < raster.bands; ++b) {
      reg.color[b] = (reg.color[b] * reg.n + raster.data[b * plane + e.pixel]) / (reg.n + 1.0);
    }
    reg.x = (reg.x * reg.n + px) / (reg.n + 1.0);
    reg.y = (reg.y * reg.n + py) / (reg.n + 1.0);
    reg.n += 1.0;

    for (int d = 0; d < 4; ++d) {
      int nx = px + kDx[d], ny = py + kDy[d];
      if (nx < 0 || nx >= width || ny < 0 || ny >= height) continue;
      std::uint32_t np = static_cast<std::uint32_t>(ny * width + nx);
      if (map.labels[np] != UINT32_MAX) continue;
      double cost = color_dist2(raster, plane, np, reg.color);
      if (spatial_term) {
        double dx = nx - reg.x, dy = ny - reg.y;
        cost += (dx * dx + dy * dy) * spatial_w;
      }
      queue.push({std::sqrt(cost), seq++, e.label, np});
    }
  }

  map.k = static_cast<std::uint32_t>(seeds.size());
  normalize_labels(map);
  return map;
}

}  // namespace

LabelMap grid_segment(const MultibandRaster& raster, const SegmenterConfig& cfg) {
  const int width = raster.width, height = raster.height;
  auto [rows, cols] = grid_shape(width, height, cfg.k_desired);
  LabelMap map;
  map.width = width;
  map.height = height;
  map.labels.resize(raster.plane());
  for (int y = 0; y < height; ++y) {
    int r = std::min(y * rows / height, rows - 1);
    for (int x = 0; x < width; ++x) {
      int c = std::min(x * cols / width, cols - 1);
      map.at(x, y) = static_cast<std::uint32_t>(r * cols + c);
    }
  }
  map.k = static_cast<std::uint32_t>(rows * cols);
  normalize_labels(map);
  return map;
}

LabelMap slic_segment(const MultibandRaster& raster, const SegmenterConfig& cfg) {
  const int width = raster.width, height = raster.height;
  const std::size_t plane = raster.plane();
  auto seeds = grid_seeds(width, height, cfg.k_desired);
  const std::size_t k = seeds.size();
  const double step = std::sqrt(static_cast<double>(width) * height / k);
  const int window = std::max(1, static_cast<int>(std::lround(step)));
  const double spatial_w = cfg.compactness * cfg.compactness / (step * step);

  std::vector<RegionMean> centers(k);
  for (std::size_t s = 0; s < k; ++s) {
    centers[s].color.resize(raster.bands);
    std::size_t pix = static_cast<std::size_t>(seeds[s].y) * width + seeds[s].x;
    for (int b = 0; b < raster.bands; ++b) centers[s].color[b] = raster.data[b * plane + pix];
    centers[s].x = seeds[s].x;
    centers[s].y = seeds[s].y;
  }

  std::vector<std::uint32_t> assignment(plane, 0);
  std::vector<double> best(plane);

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    std::fill(best.begin(), best.end(), std::numeric_limits<double>::infinity());
    for (std::uint32_t s = 0; s < k; ++s) {
      const RegionMean& c = centers[s];
      int x0 = std::max(0, static_cast<int>(std::floor(c.x)) - window);
      int x1 = std::min(width - 1, static_cast<int>(std::ceil(c.x)) + window);
      int y0 = std::max(0, static_cast<int>(std::floor(c.y)) - window);
      int y1 = std::min(height - 1, static_cast<int>(std::ceil(c.y)) + window);
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          std::size_t pix = static_cast<std::size_t>(y) * width + x;
          double dx = x - c.x, dy = y - c.y;
          double d = color_dist2(raster, plane, pix, c.color) +
                     (dx * dx + dy * dy) * spatial_w;
          if (d < best[pix]) {
            best[pix] = d;
            assignment[pix] = s;
          }
        }
      }
    }
    // Pixels outside every window keep their previous assignment; on the
    // first pass fall back to the nearest seed spatially.
    if (iter == 0) {
      for (std::size_t pix = 0; pix < plane; ++pix) {
        if (std::isinf(best[pix])) {
          int x = static_cast<int>(pix % width), y = static_cast<int>(pix / width);
          double bd = std::numeric_limits<double>::infinity();
          for (std::uint32_t s = 0; s < k; ++s) {
            double dx = x - centers[s].x, dy = y - centers[s].y;
            double d = dx * dx + dy * dy;
            if (d < bd) {
              bd = d;
              assignment[pix] = s;
            }
          }
        }
      }
    }

    std::vector<RegionMean> next(k);
    for (auto& r : next) r.color.assign(raster.bands, 0.0);
    for (std::size_t pix = 0; pix < plane; ++pix) {
      RegionMean& r = next[assignment[pix]];
      for (int b = 0; b < raster.bands; ++b) r.color[b] += raster.data[b * plane + pix];
      r.x += static_cast<double>(pix % width);
      r.y += static_cast<double>(pix / width);
      r.n += 1.0;
    }
    for (std::size_t s = 0; s < k; ++s) {
      if (next[s].n > 0) {
        for (auto& v : next[s].color) v /= next[s].n;
        next[s].x /= next[s].n;
        next[s].y /= next[s].n;
        centers[s] = next[s];
      }
    }
  }

  LabelMap map;
  map.width = width;
  map.height = height;
  map.labels = std::move(assignment);
  map.k = static_cast<std::uint32_t>(k);

  map = enforce_connectivity(map);
  // Absorb splinter fragments below a quarter of the nominal cell area, as
  // the clustering leaves orphans when enforcing connectivity.
  int orphan_floor = std::max(1, static_cast<int>(step * step / 4.0));
  return merge_small_segments(map, raster, orphan_floor);
}

LabelMap snic_segment(const MultibandRaster& raster, const SegmenterConfig& cfg) {
  return priority_grow(raster, cfg, /*spatial_term=*/true);
}

LabelMap seed_competition_segment(const MultibandRaster& raster, const SegmenterConfig& cfg) {
  return priority_grow(raster, cfg, /*spatial_term=*/false);
}

LabelMap enforce_connectivity(const LabelMap& labels) {
  const int width = labels.width, height = labels.height;
  LabelMap out;
  out.width = width;
  out.height = height;
  out.labels.assign(labels.size(), UINT32_MAX);

  std::uint32_t next = 0;
  std::vector<std::uint32_t> stack;
  for (std::size_t start = 0; start < labels.size(); ++start) {
    if (out.labels[start] != UINT32_MAX) continue;
    std::uint32_t source = labels.labels[start];
    out.labels[start] = next;
    stack.push_back(static_cast<std::uint32_t>(start));
    while (!stack.empty()) {
      std::uint32_t pix = stack.back();
      stack.pop_back();
      int x = static_cast<int>(pix % width), y = static_cast<int>(pix / width);
      for (int d = 0; d < 4; ++d) {
        int nx = x + kDx[d], ny = y + kDy[d];
        if (nx < 0 || nx >= width || ny < 0 || ny >= height) continue;
        std::uint32_t np = static_cast<std::uint32_t>(ny) * width + nx;
        if (out.labels[np] == UINT32_MAX && labels.labels[np] == source) {
          out.labels[np] = next;
          stack.push_back(np);
        }
      }
    }
    ++next;
  }
  out.k = next;
  return out;
}

LabelMap merge_small_segments(const LabelMap& labels, const MultibandRaster& raster,
                              int min_size) {
  require_same_shape(labels.width, labels.height, raster.width, raster.height,
                     "merge_small_segments");
  const int width = labels.width, height = labels.height;
  const std::size_t plane = raster.plane();
  const std::uint32_t k = labels.k;
  if (k <= 1) return labels;

  std::vector<long long> size(k, 0);
  std::vector<std::vector<double>> color_sum(k, std::vector<double>(raster.bands, 0.0));
  std::vector<std::map<std::uint32_t, long long>> border(k);

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      std::uint32_t l = labels.at(x, y);
      ++size[l];
      std::size_t pix = static_cast<std::size_t>(y) * width + x;
      for (int b = 0; b < raster.bands; ++b) color_sum[l][b] += raster.data[b * plane + pix];
      if (x + 1 < width) {
        std::uint32_t r = labels.at(x + 1, y);
        if (r != l) {
          ++border[l][r];
          ++border[r][l];
        }
      }
      if (y + 1 < height) {
        std::uint32_t dn = labels.at(x, y + 1);
        if (dn != l) {
          ++border[l][dn];
          ++border[dn][l];
        }
      }
    }
  }

  // Segments collapse via union-find; stats live on the representative.
  std::vector<std::uint32_t> parent(k);
  for (std::uint32_t i = 0; i < k; ++i) parent[i] = i;
  auto find = [&](std::uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };

  std::set<std::pair<long long, std::uint32_t>> pending;  // (size, id), sub-threshold only
  for (std::uint32_t i = 0; i < k; ++i) {
    if (size[i] < min_size) pending.insert({size[i], i});
  }

  std::uint32_t alive = k;
  while (!pending.empty() && alive > 1) {
    auto [sz, id] = *pending.begin();
    pending.erase(pending.begin());
    if (find(id) != id || size[id] != sz) continue;  // stale entry

    std::map<std::uint32_t, long long> neighbors;  // representative -> border length
    for (auto& [nbr_raw, blen] : border[id]) {
      std::uint32_t nbr = find(nbr_raw);
      if (nbr != id) neighbors[nbr] += blen;
    }
    std::uint32_t target = UINT32_MAX;
    double best_dist = std::numeric_limits<double>::infinity();
    long long best_border = -1;
    for (auto& [nbr, blen] : neighbors) {
      double dist = 0.0;
      for (int b = 0; b < raster.bands; ++b) {
        double d = color_sum[id][b] / size[id] - color_sum[nbr][b] / size[nbr];
        dist += d * d;
      }
      if (dist < best_dist ||
          (dist == best_dist && (blen > best_border ||
                                 (blen == best_border && nbr < target)))) {
        best_dist = dist;
        best_border = blen;
        target = nbr;
      }
    }
    if (target == UINT32_MAX) continue;  // isolated (cannot happen on a connected map)

    // Merge id into target.
    pending.erase({size[target], target});
    parent[id] = target;
    size[target] += size[id];
    for (int b = 0; b < raster.bands; ++b) color_sum[target][b] += color_sum[id][b];
    for (auto& [nbr, blen] : neighbors) {
      if (nbr == target) continue;
      border[target][nbr] += blen;
      border[nbr][target] += blen;
    }
    // Rebuild target's adjacency keys onto representatives.
    std::map<std::uint32_t, long long> rebuilt;
    for (auto& [nbr_raw, blen] : border[target]) {
      std::uint32_t nbr = find(nbr_raw);
      if (nbr != target) rebuilt[nbr] += blen;
    }
    border[target] = std::move(rebuilt);
    border[id].clear();
    --alive;
    if (size[target] < min_size) pending.insert({size[target], target});
  }

  LabelMap out;
  out.width = width;
  out.height = height;
  out.labels.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out.labels[i] = find(labels.labels[i]);
  normalize_labels(out);
  return out;
}

}  // namespace spx
