#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spx {

struct MalformedHeader : std::runtime_error { using std::runtime_error::runtime_error; };
struct TruncatedPayload : std::runtime_error { using std::runtime_error::runtime_error; };
struct NonFiniteValue : std::runtime_error { using std::runtime_error::runtime_error; };
struct IllegalPixelValue : std::runtime_error { using std::runtime_error::runtime_error; };
struct IoError : std::runtime_error { using std::runtime_error::runtime_error; };
struct DimensionMismatch : std::runtime_error { using std::runtime_error::runtime_error; };
struct EmptyValidArea : std::runtime_error { using std::runtime_error::runtime_error; };
struct KTooLarge : std::runtime_error { using std::runtime_error::runtime_error; };
struct EmptyInput : std::runtime_error { using std::runtime_error::runtime_error; };
struct MissingSegment : std::runtime_error { using std::runtime_error::runtime_error; };
struct SegmentTooSmall : std::runtime_error { using std::runtime_error::runtime_error; };
struct EmptyTrainingSet : std::runtime_error { using std::runtime_error::runtime_error; };

/// Per-pixel reference class. EXCLUDED marks consolidated (old) deforestation
/// that every metric must ignore.
enum class GtClass : std::uint8_t { Forest = 0, Deforest = 1, Excluded = 2 };

/// W x H x B float image. Row-major within a band, bands stored sequentially.
struct MultibandRaster {
  int width = 0;
  int height = 0;
  int bands = 0;
  std::vector<float> data;

  std::size_t plane() const { return static_cast<std::size_t>(width) * height; }
  std::size_t size() const { return plane() * bands; }
  std::size_t index(int x, int y, int b) const {
    return static_cast<std::size_t>(b) * plane() + static_cast<std::size_t>(y) * width + x;
  }
  float at(int x, int y, int b) const { return data[index(x, y, b)]; }
  float& at(int x, int y, int b) { return data[index(x, y, b)]; }
};

/// Row-major per-pixel segment ids. After normalize_labels(), ids are exactly
/// {0..k-1} in first-occurrence order.
struct LabelMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint32_t> labels;
  std::uint32_t k = 0;

  std::size_t size() const { return static_cast<std::size_t>(width) * height; }
  std::uint32_t at(int x, int y) const {
    return labels[static_cast<std::size_t>(y) * width + x];
  }
  std::uint32_t& at(int x, int y) {
    return labels[static_cast<std::size_t>(y) * width + x];
  }
};

struct GroundTruth {
  int width = 0;
  int height = 0;
  std::vector<GtClass> classes;

  std::size_t size() const { return static_cast<std::size_t>(width) * height; }
  GtClass at(int x, int y) const {
    return classes[static_cast<std::size_t>(y) * width + x];
  }
};

/// Renumbers labels to a contiguous {0..k-1} range, preserving the order in
/// which labels first appear in a row-major scan. Idempotent.
void normalize_labels(LabelMap& map);

inline void require_same_shape(int wa, int ha, int wb, int hb, const std::string& what) {
  if (wa != wb || ha != hb) {
    throw DimensionMismatch(what + ": " + std::to_string(wa) + "x" + std::to_string(ha) +
                            " vs " + std::to_string(wb) + "x" + std::to_string(hb));
  }
}

}  // namespace spx
