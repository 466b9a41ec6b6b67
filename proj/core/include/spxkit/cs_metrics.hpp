#pragma once

#include <vector>

#include "spxkit/types.hpp"

namespace spx {

/// Per-segment tally against the ground truth. Sizes count valid
/// (non-excluded) pixels only.
struct SegmentRecord {
  std::uint32_t segment_id = 0;
  int size = 0;
  int n_forest = 0;
  int n_deforest = 0;
  double hor = 1.0;           // max(n_forest, n_deforest) / size
  GtClass majority = GtClass::Forest;
  bool useful = false;        // hor >= 0.7 and size >= 70
};

struct SegmentRecordSet {
  std::vector<SegmentRecord> records;  // one per segment with >= 1 valid pixel
  int n_empty = 0;                     // segments with no valid pixel
};

struct CsSummary {
  double us = 0.0;    // percent useful among all counted segments
  double ds = 0.0;    // percent deforestation-majority among useful segments
  double phor = 0.0;  // percent of segments with hor == 1
  double ep = 0.0;    // percent minority pixels inside useful segments
  int n_segments = 0;
  int n_useful = 0;
};

constexpr double kHorThreshold = 0.7;
constexpr int kMinUsefulSize = 70;

SegmentRecordSet compute_segment_records(const LabelMap& labels, const GroundTruth& gt);

CsSummary compute_cs_summary(const std::vector<SegmentRecord>& records);

}  // namespace spx
