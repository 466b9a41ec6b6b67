#include "spxkit/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "spxkit/csv.hpp"

namespace spx {

std::vector<int> rank_metric(const std::vector<double>& values, Direction direction) {
  if (values.empty()) throw EmptyInput("rank_metric: no values");
  for (double v : values) {
    if (!std::isfinite(v)) throw NonFiniteValue("rank_metric: non-finite value");
  }
  std::vector<int> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    int better = 0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      bool j_better = direction == Direction::HigherBetter ? values[j] > values[i]
                                                           : values[j] < values[i];
      if (j_better) ++better;
    }
    ranks[i] = 1 + better;
  }
  return ranks;
}

RankTable build_rank_table(const std::vector<std::string>& methods,
                           const std::vector<std::array<double, kNumMetrics>>& values) {
  if (methods.empty() || methods.size() != values.size()) {
    throw EmptyInput("build_rank_table: methods/values mismatch or empty");
  }
  RankTable table;
  table.methods = methods;
  table.values = values;
  table.ranks.assign(methods.size(), {});
  for (int m = 0; m < kNumMetrics; ++m) {
    std::vector<double> column(methods.size());
    for (std::size_t i = 0; i < methods.size(); ++i) column[i] = values[i][m];
    auto ranks = rank_metric(column, kMetricDirections[m]);
    for (std::size_t i = 0; i < methods.size(); ++i) table.ranks[i][m] = ranks[i];
  }
  return table;
}

RankTable rank_table_from_ranks(const std::vector<std::string>& methods,
                                const std::vector<std::array<int, kNumMetrics>>& ranks) {
  if (methods.empty() || methods.size() != ranks.size()) {
    throw EmptyInput("rank_table_from_ranks: methods/ranks mismatch or empty");
  }
  RankTable table;
  table.methods = methods;
  table.ranks = ranks;
  return table;
}

void aggregate_scores(RankTable& table) {
  const std::size_t n = table.methods.size();
  table.score_sp.resize(n);
  table.score_cs.resize(n);
  table.final_score.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sp = 0.0, cs = 0.0;
    for (int m = 0; m < 6; ++m) sp += table.ranks[i][m];
    for (int m = 6; m < kNumMetrics; ++m) cs += table.ranks[i][m];
    table.score_sp[i] = sp / 6.0;
    table.score_cs[i] = cs / 4.0;
    table.final_score[i] = (table.score_sp[i] + table.score_cs[i]) / 2.0;
  }

  table.order.resize(n);
  std::iota(table.order.begin(), table.order.end(), std::size_t{0});
  // Ascending final score, DS (citizen-science tier) rank as tiebreak, method
  // name as flagged last resort.
  std::sort(table.order.begin(), table.order.end(), [&](std::size_t a, std::size_t b) {
    if (table.final_score[a] != table.final_score[b]) {
      return table.final_score[a] < table.final_score[b];
    }
    if (table.ranks[a][6] != table.ranks[b][6]) return table.ranks[a][6] < table.ranks[b][6];
    return table.methods[a] < table.methods[b];
  });
  table.residual_tie.assign(n, false);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t a = table.order[i], b = table.order[i + 1];
    if (table.final_score[a] == table.final_score[b] && table.ranks[a][6] == table.ranks[b][6]) {
      table.residual_tie[i] = true;
      table.residual_tie[i + 1] = true;
    }
  }
}

namespace {

std::string fixed3(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << v;
  return os.str();
}

}  // namespace

void render_rank_report(const RankTable& table, const std::string& csv_path,
                        const std::string& md_path,
                        const std::vector<std::string>& metadata) {
  if (table.methods.empty()) throw EmptyInput("render_rank_report: empty table");
  if (table.order.empty()) throw EmptyInput("render_rank_report: aggregate_scores not run");

  std::vector<std::string> header = {"method"};
  for (auto* name : kMetricNames) header.push_back(std::string("rank_") + name);
  header.insert(header.end(), {"score_sp", "score_cs", "final_score", "residual_tie"});

  std::vector<std::vector<std::string>> rows;
  for (std::size_t pos = 0; pos < table.order.size(); ++pos) {
    std::size_t i = table.order[pos];
    std::vector<std::string> row = {table.methods[i]};
    for (int m = 0; m < kNumMetrics; ++m) row.push_back(std::to_string(table.ranks[i][m]));
    row.push_back(fixed3(table.score_sp[i]));
    row.push_back(fixed3(table.score_cs[i]));
    row.push_back(fixed3(table.final_score[i]));
    row.push_back(table.residual_tie[pos] ? "yes" : "no");
    rows.push_back(std::move(row));
  }
  write_csv(csv_path, metadata, header, rows);

  std::ofstream md(md_path);
  if (!md) throw IoError("cannot open " + md_path + " for writing");
  md << "| Method | DS | BR | UE | SIRS | CO | Reg | Score SP |"
        " DS | US | PHoR | EP | Score CS | Final Score |\n";
  md << "|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (std::size_t pos = 0; pos < table.order.size(); ++pos) {
    std::size_t i = table.order[pos];
    md << "| " << table.methods[i];
    for (int m = 0; m < 6; ++m) md << " | " << table.ranks[i][m];
    md << " | " << fixed3(table.score_sp[i]);
    for (int m = 6; m < kNumMetrics; ++m) md << " | " << table.ranks[i][m];
    md << " | " << fixed3(table.score_cs[i]);
    md << " | " << fixed3(table.final_score[i]) << " |\n";
  }
  if (!md) throw IoError("short write to " + md_path);
}

}  // namespace spx
