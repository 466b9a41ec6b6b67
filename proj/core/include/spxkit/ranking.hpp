#pragma once

#include <array>
#include <string>
#include <vector>

#include "spxkit/types.hpp"

namespace spx {

enum class Direction { HigherBetter, LowerBetter };

// Fixed 10-metric layout of the two-tier ranking. The first six columns feed
// Score_SP, the last four feed Score_CS. DS appears once per tier because the
// tiers score it over different populations.
constexpr int kNumMetrics = 10;
constexpr std::array<const char*, kNumMetrics> kMetricNames = {
    "ds_sp", "br", "ue", "sirs", "co", "reg", "ds_cs", "us", "phor", "ep"};
constexpr std::array<Direction, kNumMetrics> kMetricDirections = {
    Direction::HigherBetter,  // ds_sp
    Direction::HigherBetter,  // br
    Direction::LowerBetter,   // ue
    Direction::HigherBetter,  // sirs
    Direction::HigherBetter,  // co
    Direction::LowerBetter,   // reg
    Direction::HigherBetter,  // ds_cs
    Direction::HigherBetter,  // us
    Direction::HigherBetter,  // phor
    Direction::LowerBetter,   // ep
};

struct RankTable {
  std::vector<std::string> methods;
  std::vector<std::array<double, kNumMetrics>> values;  // optional, empty when ranks given directly
  std::vector<std::array<int, kNumMetrics>> ranks;
  std::vector<double> score_sp;
  std::vector<double> score_cs;
  std::vector<double> final_score;
  std::vector<std::size_t> order;       // method indices sorted best-first
  std::vector<bool> residual_tie;       // true when lexicographic fallback decided the slot
};

/// Competition ("min") ranking: tied values share the smallest rank; the next
/// distinct value ranks 1 + count of strictly better methods.
std::vector<int> rank_metric(const std::vector<double>& values, Direction direction);

/// Builds ranks from raw metric values (one row per method).
RankTable build_rank_table(const std::vector<std::string>& methods,
                           const std::vector<std::array<double, kNumMetrics>>& values);

/// Wraps a pre-computed rank matrix.
RankTable rank_table_from_ranks(const std::vector<std::string>& methods,
                                const std::vector<std::array<int, kNumMetrics>>& ranks);

/// Fills Score_SP (mean of the six superpixel ranks), Score_CS (mean of the
/// four citizen-science ranks) and the final score, then orders methods by
/// ascending final score with the citizen-science DS rank as tiebreak and
/// method name as flagged last resort.
void aggregate_scores(RankTable& table);

/// Writes the aggregated table as CSV and Markdown (SP block, CS block,
/// final score; best method first).
void render_rank_report(const RankTable& table, const std::string& csv_path,
                        const std::string& md_path,
                        const std::vector<std::string>& metadata = {});

}  // namespace spx
