#include "spxkit/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spx {

KnnResult knn_classify(const std::vector<FeatureVector>& train,
                       const std::vector<FeatureVector>& test, int k) {
  if (train.empty()) throw EmptyTrainingSet("knn_classify: empty training set");
  const std::size_t dims = train.front().values.size();
  for (const auto& fv : train) {
    if (!fv.label) throw EmptyTrainingSet("knn_classify: unlabeled training vector");
    if (fv.values.size() != dims) throw DimensionMismatch("knn_classify: ragged train vectors");
  }
  for (const auto& fv : test) {
    if (fv.values.size() != dims) throw DimensionMismatch("knn_classify: ragged test vectors");
  }

  KnnResult result;
  result.k_used = std::min<int>(k, static_cast<int>(train.size()));

  // z-score statistics from the training set; zero-variance features dropped.
  std::vector<double> mean(dims, 0.0), sd(dims, 0.0);
  for (const auto& fv : train) {
    for (std::size_t d = 0; d < dims; ++d) mean[d] += fv.values[d];
  }
  for (auto& m : mean) m /= static_cast<double>(train.size());
  for (const auto& fv : train) {
    for (std::size_t d = 0; d < dims; ++d) {
      double diff = fv.values[d] - mean[d];
      sd[d] += diff * diff;
    }
  }
  std::vector<std::size_t> kept;
  for (std::size_t d = 0; d < dims; ++d) {
    sd[d] = std::sqrt(sd[d] / static_cast<double>(train.size()));
    if (sd[d] > 0.0) {
      kept.push_back(d);
    } else {
      result.dropped_features.push_back(static_cast<int>(d));
    }
  }

  auto project = [&](const FeatureVector& fv) {
    std::vector<double> z(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
      z[i] = (fv.values[kept[i]] - mean[kept[i]]) / sd[kept[i]];
    }
    return z;
  };

  std::vector<std::vector<double>> train_z;
  train_z.reserve(train.size());
  for (const auto& fv : train) train_z.push_back(project(fv));

  long correct = 0, scored = 0;
  long tp_f = 0, fp_f = 0, fn_f = 0;
  long tp_d = 0, fp_d = 0, fn_d = 0;

  result.predictions.reserve(test.size());
  std::vector<std::pair<double, std::size_t>> dist(train.size());
  for (const auto& fv : test) {
    auto z = project(fv);
    for (std::size_t t = 0; t < train.size(); ++t) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) {
        double d = z[i] - train_z[t][i];
        d2 += d * d;
      }
      dist[t] = {d2, t};
    }
    std::partial_sort(dist.begin(), dist.begin() + result.k_used, dist.end());

    int votes_f = 0, votes_d = 0;
    double sum_f = 0.0, sum_d = 0.0;
    for (int i = 0; i < result.k_used; ++i) {
      const auto& neighbor = train[dist[i].second];
      if (*neighbor.label == GtClass::Forest) {
        ++votes_f;
        sum_f += std::sqrt(dist[i].first);
      } else {
        ++votes_d;
        sum_d += std::sqrt(dist[i].first);
      }
    }
    GtClass pred;
    if (votes_f != votes_d) {
      pred = votes_f > votes_d ? GtClass::Forest : GtClass::Deforest;
    } else {
      pred = sum_f / votes_f <= sum_d / votes_d ? GtClass::Forest : GtClass::Deforest;
    }
    result.predictions.push_back(pred);

    if (fv.label) {
      ++scored;
      if (pred == *fv.label) ++correct;
      if (pred == GtClass::Forest) {
        (*fv.label == GtClass::Forest ? tp_f : fp_f)++;
      } else {
        (*fv.label == GtClass::Deforest ? tp_d : fp_d)++;
      }
      if (*fv.label == GtClass::Forest && pred != GtClass::Forest) ++fn_f;
      if (*fv.label == GtClass::Deforest && pred != GtClass::Deforest) ++fn_d;
    }
  }

  if (scored > 0) {
    result.scored = true;
    result.accuracy = static_cast<double>(correct) / static_cast<double>(scored);
    auto f1 = [](long tp, long fp, long fn) {
      double denom = 2.0 * tp + fp + fn;
      return denom > 0.0 ? 2.0 * tp / denom : 0.0;
    };
    result.f1_forest = f1(tp_f, fp_f, fn_f);
    result.f1_deforest = f1(tp_d, fp_d, fn_d);
  }
  return result;
}

}  // namespace spx
