#include "spxkit/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

namespace spx {

VoteAnswer majority_answer(const TaskVotes& task) {
  if (task.total() < 1) throw EmptyInput("majority_answer: task " + task.task_id + " has no votes");
  int best = std::max({task.n_forest, task.n_deforest, task.n_undefined});
  int holders = (task.n_forest == best) + (task.n_deforest == best) + (task.n_undefined == best);
  if (holders > 1) return VoteAnswer::Undefined;
  if (task.n_forest == best) return VoteAnswer::Forest;
  if (task.n_deforest == best) return VoteAnswer::Deforest;
  return VoteAnswer::Undefined;
}

std::vector<VoteAnswer> aggregate_votes(const std::vector<TaskVotes>& tasks) {
  std::vector<VoteAnswer> out;
  out.reserve(tasks.size());
  for (const auto& t : tasks) out.push_back(majority_answer(t));
  return out;
}

double task_entropy(const TaskVotes& task) {
  if (task.total() < 1) throw EmptyInput("task_entropy: task " + task.task_id + " has no votes");
  double total = task.total();
  double h = 0.0;
  for (int n : {task.n_forest, task.n_deforest, task.n_undefined}) {
    if (n > 0) {
      double p = n / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

double campaign_accuracy(const std::vector<TaskVotes>& tasks,
                         const std::vector<VoteAnswer>& majorities,
                         const std::vector<SegmentRecord>& gt_records) {
  if (tasks.empty()) throw EmptyInput("campaign_accuracy: no tasks");
  std::unordered_map<std::uint32_t, GtClass> gt_majority;
  for (const auto& rec : gt_records) gt_majority[rec.segment_id] = rec.majority;

  long correct = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    auto it = gt_majority.find(tasks[i].segment_id);
    if (it == gt_majority.end()) {
      throw MissingSegment("campaign_accuracy: no record for segment " +
                           std::to_string(tasks[i].segment_id));
    }
    bool ok = (majorities[i] == VoteAnswer::Forest && it->second == GtClass::Forest) ||
              (majorities[i] == VoteAnswer::Deforest && it->second == GtClass::Deforest);
    if (ok) ++correct;
  }
  return 100.0 * correct / static_cast<double>(tasks.size());
}

SampleSelection select_samples(const std::vector<TaskVotes>& tasks,
                               const std::vector<VoteAnswer>& majorities,
                               double entropy_threshold) {
  std::vector<std::pair<double, std::uint32_t>> forest, deforest;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (majorities[i] == VoteAnswer::Undefined) continue;
    double h = task_entropy(tasks[i]);
    if (h > entropy_threshold) continue;
    auto& bucket = majorities[i] == VoteAnswer::Forest ? forest : deforest;
    bucket.push_back({h, tasks[i].segment_id});
  }
  std::sort(forest.begin(), forest.end());
  std::sort(deforest.begin(), deforest.end());
  SampleSelection sel;
  for (auto& [h, id] : forest) sel.forest_ids.push_back(id);
  for (auto& [h, id] : deforest) sel.deforest_ids.push_back(id);
  return sel;
}

std::vector<TaskVotes> synthesize_votes(const std::vector<SegmentRecord>& records,
                                        int volunteers, double error_rate,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<TaskVotes> tasks;
  tasks.reserve(records.size());
  for (const auto& rec : records) {
    TaskVotes t;
    t.task_id = "seg-" + std::to_string(rec.segment_id);
    t.segment_id = rec.segment_id;
    for (int v = 0; v < volunteers; ++v) {
      bool flip = unit(rng) < error_rate;
      bool deforest = (rec.majority == GtClass::Deforest) != flip;
      (deforest ? t.n_deforest : t.n_forest)++;
    }
    tasks.push_back(std::move(t));
  }
  return tasks;
}

}  // namespace spx
