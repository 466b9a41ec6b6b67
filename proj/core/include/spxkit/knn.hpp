#pragma once

#include <vector>

#include "spxkit/glcm.hpp"
#include "spxkit/types.hpp"

namespace spx {

struct KnnResult {
  std::vector<GtClass> predictions;
  double accuracy = 0.0;       // only meaningful when test labels are known
  double f1_forest = 0.0;
  double f1_deforest = 0.0;
  bool scored = false;
  int k_used = 0;
  std::vector<int> dropped_features;  // zero train variance
};

/// Majority vote of the k nearest Euclidean neighbors in z-scored feature
/// space (statistics from the training set). Vote ties go to the class with
/// the smaller mean neighbor distance. k is clamped to the training size.
KnnResult knn_classify(const std::vector<FeatureVector>& train,
                       const std::vector<FeatureVector>& test, int k = 5);

}  // namespace spx
