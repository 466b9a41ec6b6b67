#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spxkit/cs_metrics.hpp"
#include "spxkit/types.hpp"

namespace spx {

enum class VoteAnswer : std::uint8_t { Forest = 0, Deforest = 1, Undefined = 2 };

struct TaskVotes {
  std::string task_id;
  std::uint32_t segment_id = 0;
  int n_forest = 0;
  int n_deforest = 0;
  int n_undefined = 0;

  int total() const { return n_forest + n_deforest + n_undefined; }
};

/// Answer with the strictly largest count; any tie yields Undefined.
VoteAnswer majority_answer(const TaskVotes& task);

std::vector<VoteAnswer> aggregate_votes(const std::vector<TaskVotes>& tasks);

/// Shannon entropy in bits over the nonzero answer proportions; in [0, log2 3].
double task_entropy(const TaskVotes& task);

/// Percent of tasks whose majority answer equals the segment's ground-truth
/// majority class. Undefined majorities count as incorrect.
double campaign_accuracy(const std::vector<TaskVotes>& tasks,
                         const std::vector<VoteAnswer>& majorities,
                         const std::vector<SegmentRecord>& gt_records);

struct SampleSelection {
  std::vector<std::uint32_t> forest_ids;
  std::vector<std::uint32_t> deforest_ids;
};

/// Segments with a Forest/Deforest majority and entropy <= threshold, grouped
/// by class and sorted by ascending entropy then segment id.
SampleSelection select_samples(const std::vector<TaskVotes>& tasks,
                               const std::vector<VoteAnswer>& majorities,
                               double entropy_threshold);

/// Desk-scale vote generator: each of `volunteers` votes the segment's
/// ground-truth majority class, flipped with probability error_rate.
std::vector<TaskVotes> synthesize_votes(const std::vector<SegmentRecord>& records,
                                        int volunteers, double error_rate,
                                        std::uint64_t seed);

}  // namespace spx
