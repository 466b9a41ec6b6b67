#include "spxkit/cs_metrics.hpp"

namespace spx {

SegmentRecordSet compute_segment_records(const LabelMap& labels, const GroundTruth& gt) {
  require_same_shape(labels.width, labels.height, gt.width, gt.height,
                     "compute_segment_records");
  std::vector<int> n_forest(labels.k, 0), n_deforest(labels.k, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    switch (gt.classes[i]) {
      case GtClass::Forest: ++n_forest[labels.labels[i]]; break;
      case GtClass::Deforest: ++n_deforest[labels.labels[i]]; break;
      case GtClass::Excluded: break;
    }
  }

  SegmentRecordSet set;
  set.records.reserve(labels.k);
  for (std::uint32_t s = 0; s < labels.k; ++s) {
    int size = n_forest[s] + n_deforest[s];
    if (size == 0) {
      ++set.n_empty;
      continue;
    }
    SegmentRecord rec;
    rec.segment_id = s;
    rec.size = size;
    rec.n_forest = n_forest[s];
    rec.n_deforest = n_deforest[s];
    rec.hor = static_cast<double>(std::max(n_forest[s], n_deforest[s])) / size;
    rec.majority = n_deforest[s] > n_forest[s] ? GtClass::Deforest : GtClass::Forest;
    rec.useful = rec.hor >= kHorThreshold && rec.size >= kMinUsefulSize;
    set.records.push_back(rec);
  }
  return set;
}

CsSummary compute_cs_summary(const std::vector<SegmentRecord>& records) {
  if (records.empty()) throw EmptyInput("compute_cs_summary: no segment records");
  CsSummary s;
  s.n_segments = static_cast<int>(records.size());
  long long useful_deforest = 0, perfect = 0;
  long long minority_pixels = 0, useful_pixels = 0;
  for (const auto& rec : records) {
    if (rec.useful) {
      ++s.n_useful;
      if (rec.majority == GtClass::Deforest) ++useful_deforest;
      minority_pixels += rec.size - std::max(rec.n_forest, rec.n_deforest);
      useful_pixels += rec.size;
    }
    if (rec.hor == 1.0) ++perfect;
  }
  s.us = 100.0 * s.n_useful / s.n_segments;
  s.ds = s.n_useful > 0 ? 100.0 * useful_deforest / s.n_useful : 0.0;
  s.phor = 100.0 * perfect / s.n_segments;
  s.ep = useful_pixels > 0 ? 100.0 * minority_pixels / useful_pixels : 0.0;
  return s;
}

}  // namespace spx
