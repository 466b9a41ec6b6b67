#include "spxkit/glcm.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace spx {

namespace {

// Distance-1 offsets for 0, 45, 90, 135 degrees (y grows downwards).
constexpr int kDirDx[kGlcmDirections] = {1, 1, 0, -1};
constexpr int kDirDy[kGlcmDirections] = {0, -1, -1, -1};

double safe_log(double p) { return p > 0.0 ? std::log(p) : 0.0; }

}  // namespace

std::array<double, kHaralickFeatures> haralick_features(const std::vector<double>& glcm,
                                                        int levels) {
  const int g = levels;
  std::vector<double> px(g, 0.0), py(g, 0.0);
  std::vector<double> p_sum(2 * g - 1, 0.0);   // indexed by i+j
  std::vector<double> p_diff(g, 0.0);          // indexed by |i-j|
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      double p = glcm[i * g + j];
      px[i] += p;
      py[j] += p;
      p_sum[i + j] += p;
      p_diff[std::abs(i - j)] += p;
    }
  }

  double mu_x = 0.0, mu_y = 0.0;
  for (int i = 0; i < g; ++i) {
    mu_x += i * px[i];
    mu_y += i * py[i];
  }
  double var_x = 0.0, var_y = 0.0;
  for (int i = 0; i < g; ++i) {
    var_x += (i - mu_x) * (i - mu_x) * px[i];
    var_y += (i - mu_y) * (i - mu_y) * py[i];
  }

  std::array<double, kHaralickFeatures> f{};

  double asm_ = 0.0, contrast = 0.0, corr_num = 0.0, variance = 0.0, idm = 0.0;
  double entropy = 0.0, hxy1 = 0.0, hxy2 = 0.0;
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      double p = glcm[i * g + j];
      asm_ += p * p;
      corr_num += i * j * p;
      variance += (i - mu_x) * (i - mu_x) * p;
      idm += p / (1.0 + (i - j) * (i - j));
      entropy -= p * safe_log(p);
      double pp = px[i] * py[j];
      if (p > 0.0) hxy1 -= p * safe_log(pp);
      hxy2 -= pp * safe_log(pp);
    }
  }
  for (int n = 0; n < g; ++n) contrast += static_cast<double>(n) * n * p_diff[n];

  double sum_avg = 0.0;
  for (int k = 0; k < 2 * g - 1; ++k) sum_avg += k * p_sum[k];
  double sum_var = 0.0, sum_ent = 0.0;
  for (int k = 0; k < 2 * g - 1; ++k) {
    sum_var += (k - sum_avg) * (k - sum_avg) * p_sum[k];
    sum_ent -= p_sum[k] * safe_log(p_sum[k]);
  }

  double diff_avg = 0.0;
  for (int n = 0; n < g; ++n) diff_avg += n * p_diff[n];
  double diff_var = 0.0, diff_ent = 0.0;
  for (int n = 0; n < g; ++n) {
    diff_var += (n - diff_avg) * (n - diff_avg) * p_diff[n];
    diff_ent -= p_diff[n] * safe_log(p_diff[n]);
  }

  double hx = 0.0, hy = 0.0;
  for (int i = 0; i < g; ++i) {
    hx -= px[i] * safe_log(px[i]);
    hy -= py[i] * safe_log(py[i]);
  }

  f[0] = asm_;
  f[1] = contrast;
  double sigma = std::sqrt(var_x * var_y);
  f[2] = sigma > 0.0 ? (corr_num - mu_x * mu_y) / sigma : 0.0;
  f[3] = variance;
  f[4] = idm;
  f[5] = sum_avg;
  f[6] = sum_var;
  f[7] = sum_ent;
  f[8] = entropy;
  f[9] = diff_var;
  f[10] = diff_ent;
  double hmax = std::max(hx, hy);
  f[11] = hmax > 0.0 ? (entropy - hxy1) / hmax : 0.0;
  f[12] = std::sqrt(std::max(0.0, 1.0 - std::exp(-2.0 * (hxy2 - entropy))));
  return f;
}

FeatureVector glcm_features(const MultibandRaster& raster, const LabelMap& labels,
                            std::uint32_t segment_id, const GlcmParams& params) {
  require_same_shape(raster.width, raster.height, labels.width, labels.height, "glcm_features");
  if (raster.bands != kFeatureChannels) {
    throw DimensionMismatch("glcm_features: expected 3 channels, got " +
                            std::to_string(raster.bands));
  }
  const int w = labels.width, h = labels.height, g = params.levels;
  const std::size_t plane = raster.plane();

  std::vector<std::uint32_t> members;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels.labels[i] == segment_id) members.push_back(static_cast<std::uint32_t>(i));
  }
  if (members.size() < 4) {
    throw SegmentTooSmall("glcm_features: segment " + std::to_string(segment_id) + " has " +
                          std::to_string(members.size()) + " pixels");
  }

  FeatureVector fv;
  fv.segment_id = segment_id;
  fv.values.reserve(kFeatureVectorLength);

  std::vector<double> glcm(static_cast<std::size_t>(g) * g);
  for (int c = 0; c < kFeatureChannels; ++c) {
    // Quantize this channel's segment pixels to g levels over [0,255].
    auto level_of = [&](std::uint32_t pix) {
      float v = std::clamp(raster.data[c * plane + pix], 0.0f, 255.0f);
      return std::min(g - 1, static_cast<int>(v * g / 256.0f));
    };
    for (int d = 0; d < kGlcmDirections; ++d) {
      std::fill(glcm.begin(), glcm.end(), 0.0);
      long pairs = 0;
      for (std::uint32_t pix : members) {
        int x = static_cast<int>(pix % w), y = static_cast<int>(pix / w);
        int nx = x + kDirDx[d], ny = y + kDirDy[d];
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        std::uint32_t np = static_cast<std::uint32_t>(ny) * w + nx;
        if (labels.labels[np] != segment_id) continue;
        int a = level_of(pix), b = level_of(np);
        glcm[a * g + b] += 1.0;
        glcm[b * g + a] += 1.0;
        ++pairs;
      }
      if (pairs == 0) {
        fv.empty_directions.push_back({c, d});
        fv.values.insert(fv.values.end(), kHaralickFeatures, 0.0);
        continue;
      }
      double total = 2.0 * pairs;
      for (auto& p : glcm) p /= total;
      auto f = haralick_features(glcm, g);
      fv.values.insert(fv.values.end(), f.begin(), f.end());
    }
  }
  return fv;
}

}  // namespace spx
