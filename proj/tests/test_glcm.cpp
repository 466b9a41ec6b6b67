#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "spxkit/glcm.hpp"

using namespace spx;
using namespace spxtest;

namespace {

constexpr std::array<std::pair<int, int>, 4> kDirs = {{{1, 0}, {1, -1}, {0, -1}, {-1, -1}}};

double feature_at(const FeatureVector& fv, int channel, int direction, int feature) {
  return fv.values[(static_cast<std::size_t>(channel) * kGlcmDirections + direction) *
                       kHaralickFeatures +
                   feature];
}

MultibandRaster gray3(int w, int h, const std::vector<float>& plane) {
  std::vector<float> data;
  for (int c = 0; c < 3; ++c) data.insert(data.end(), plane.begin(), plane.end());
  return make_raster(w, h, 3, data);
}

}  // namespace

TEST_CASE("constant segment: ASM 1, entropy 0, contrast 0 in every direction") {
  auto raster = gray3(4, 4, std::vector<float>(16, 120.0f));
  auto labels = make_labels(4, 4, std::vector<std::uint32_t>(16, 0));
  auto fv = glcm_features(raster, labels, 0);
  CHECK(fv.values.size() == kFeatureVectorLength);
  CHECK(fv.empty_directions.empty());
  for (int c = 0; c < 3; ++c) {
    for (int d = 0; d < 4; ++d) {
      CHECK(feature_at(fv, c, d, 0) == doctest::Approx(1.0));  // ASM
      CHECK(feature_at(fv, c, d, 1) == doctest::Approx(0.0));  // contrast
      CHECK(feature_at(fv, c, d, 8) == doctest::Approx(0.0));  // entropy
    }
  }
}

TEST_CASE("2x2 two-row segment: vertical contrast is (G-1)^2") {
  auto raster = gray3(2, 2, {0.0f, 0.0f, 255.0f, 255.0f});
  auto labels = make_labels(2, 2, {0, 0, 0, 0});
  auto fv = glcm_features(raster, labels, 0);
  // Horizontal pairs join equal levels: contrast 0.
  CHECK(feature_at(fv, 0, 0, 1) == doctest::Approx(0.0));
  // Vertical pairs always cross levels 0 and 31: contrast (32-1)^2.
  CHECK(feature_at(fv, 0, 2, 1) == doctest::Approx(31.0 * 31.0));
  // The two diagonals also only cross: same contrast.
  CHECK(feature_at(fv, 0, 1, 1) == doctest::Approx(31.0 * 31.0));
  CHECK(feature_at(fv, 0, 3, 1) == doctest::Approx(31.0 * 31.0));
}

TEST_CASE("random segments match the pair-enumeration oracle") {
  auto raster = random_raster(8, 8, 3, 314, 0.0f, 255.0f);
  auto labels = random_labels(8, 8, 3, 315);
  GlcmParams params;
  for (std::uint32_t seg = 0; seg < labels.k; ++seg) {
    long pixels = 0;
    for (auto l : labels.labels) pixels += (l == seg);
    if (pixels < 4) continue;
    auto fv = glcm_features(raster, labels, seg, params);
    REQUIRE(fv.values.size() == kFeatureVectorLength);
    for (int c = 0; c < 3; ++c) {
      for (int d = 0; d < 4; ++d) {
        auto o = oracle_glcm(raster, labels, seg, c, kDirs[d].first, kDirs[d].second,
                             params.levels);
        if (o.pairs == 0) {
          bool flagged = false;
          for (auto [fc, fd] : fv.empty_directions) flagged |= (fc == c && fd == d);
          CHECK(flagged);
          for (int f = 0; f < kHaralickFeatures; ++f) CHECK(feature_at(fv, c, d, f) == 0.0);
          continue;
        }
        double sum = 0;
        for (double p : o.matrix) sum += p;
        CHECK(std::abs(sum - 1.0) < 1e-12);
        auto expect = oracle_haralick(o.matrix, params.levels);
        for (int f = 0; f < kHaralickFeatures; ++f) {
          CHECK(std::abs(feature_at(fv, c, d, f) - expect[f]) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("single-row segment flags the pairless directions") {
  auto raster = gray3(6, 3, {0, 50, 100, 150, 200, 250,
                             0, 0, 0, 0, 0, 0,
                             0, 0, 0, 0, 0, 0});
  auto labels = make_labels(6, 3, {0, 0, 0, 0, 0, 0,
                                   1, 1, 1, 1, 1, 1,
                                   1, 1, 1, 1, 1, 1});
  auto fv = glcm_features(raster, labels, 0);
  // Directions 45/90/135 leave the single row: 3 per channel.
  CHECK(fv.empty_directions.size() == 9);
  for (int c = 0; c < 3; ++c) {
    for (int d : {1, 2, 3}) {
      for (int f = 0; f < kHaralickFeatures; ++f) CHECK(feature_at(fv, c, d, f) == 0.0);
    }
    CHECK(feature_at(fv, c, 0, 0) > 0.0);  // horizontal direction has pairs
  }
}

TEST_CASE("segments under 4 pixels are rejected") {
  auto raster = gray3(3, 1, {1, 2, 3});
  auto labels = make_labels(3, 1, {0, 0, 0});
  CHECK_THROWS_AS(glcm_features(raster, labels, 0), SegmentTooSmall);
}

TEST_CASE("contrast is invariant under whole-bin intensity shifts") {
  // Values on exact 8-wide bin boundaries; +64 shifts every level by 8.
  std::vector<float> plane = {0, 8, 16, 24, 32, 40, 48, 56,
                              64, 72, 80, 88, 96, 104, 112, 120};
  auto raster = gray3(4, 4, plane);
  std::vector<float> shifted_plane = plane;
  for (auto& v : shifted_plane) v += 64.0f;
  auto shifted = gray3(4, 4, shifted_plane);
  auto labels = make_labels(4, 4, std::vector<std::uint32_t>(16, 0));
  auto a = glcm_features(raster, labels, 0);
  auto b = glcm_features(shifted, labels, 0);
  for (int c = 0; c < 3; ++c) {
    for (int d = 0; d < 4; ++d) {
      CHECK(feature_at(a, c, d, 1) == doctest::Approx(feature_at(b, c, d, 1)).epsilon(1e-12));
    }
  }
}
