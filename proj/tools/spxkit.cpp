// spxkit command-line front end: segmentation, evaluation, ranking, feature
// extraction, classification and campaign simulation over FEB1/FEL1/PGM files.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "spxkit/campaign.hpp"
#include "spxkit/cs_metrics.hpp"
#include "spxkit/csv.hpp"
#include "spxkit/glcm.hpp"
#include "spxkit/io.hpp"
#include "spxkit/knn.hpp"
#include "spxkit/pca.hpp"
#include "spxkit/ranking.hpp"
#include "spxkit/segmenters.hpp"
#include "spxkit/spx_metrics.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

int default_jobs() {
  if (const char* env = std::getenv("SPXKIT_JOBS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

// Index-striped worker pool; result ordering is by input index regardless of
// scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::string> make_metadata(const std::string& command, const std::string& config) {
  std::ostringstream hash;
  hash << std::hex << fnv1a(command + "|" + config);
  return {std::string("spxkit ") + kVersion, "command: " + command, "config: " + config,
          "config-hash: " + hash.str()};
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

// JSON config file supplies defaults; command-line flags override. The file
// maps subcommand name -> { option name (no dashes) -> value }.
struct ConfigDefaults {
  json root = json::object();

  template <typename T>
  T get(const std::string& command, const std::string& key, T fallback) const {
    auto cit = root.find(command);
    if (cit == root.end()) return fallback;
    auto kit = cit->find(key);
    if (kit == cit->end()) return fallback;
    return kit->get<T>();
  }
};

ConfigDefaults load_config_defaults(int argc, char** argv) {
  ConfigDefaults cfg;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      std::ifstream in(argv[i + 1]);
      if (!in) throw spx::IoError(std::string("cannot open config ") + argv[i + 1]);
      in >> cfg.root;
      break;
    }
  }
  return cfg;
}

std::string answer_name(spx::VoteAnswer a) {
  switch (a) {
    case spx::VoteAnswer::Forest: return "forest";
    case spx::VoteAnswer::Deforest: return "deforest";
    default: return "undefined";
  }
}

spx::GtClass parse_class(const std::string& s) {
  if (s == "forest") return spx::GtClass::Forest;
  if (s == "deforest") return spx::GtClass::Deforest;
  throw spx::IllegalPixelValue("unknown class label '" + s + "'");
}

// ---------------------------------------------------------------------------
// pca

struct PcaArgs {
  std::string in, out, gt;
  int components = 3;
  bool rescale = false;
};

int run_pca(const PcaArgs& a) {
  spx::MultibandRaster raster = spx::load_raster(a.in);
  std::optional<spx::GroundTruth> gt;
  if (!a.gt.empty()) gt = spx::load_ground_truth(a.gt);
  auto [model, projected] = spx::pca_fit_project(raster, a.components, gt ? &*gt : nullptr);
  if (model.degenerate) {
    std::cerr << "warning: degenerate covariance, trailing components zero-filled\n";
  }
  if (a.rescale) projected = spx::rescale_to_byte_range(projected);
  spx::save_raster(projected, a.out);
  std::cout << "explained variance:";
  for (double v : model.explained_variance) std::cout << " " << spx::format_double(v);
  std::cout << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// segment / import

struct SegmentArgs {
  std::string algo = "slic";
  std::string in, out;
  spx::SegmenterConfig cfg;
  bool no_merge = false;
};

int run_segment(const SegmentArgs& a) {
  spx::MultibandRaster raster = spx::load_raster(a.in);
  spx::LabelMap labels;
  if (a.algo == "grid") {
    labels = spx::grid_segment(raster, a.cfg);
  } else if (a.algo == "slic") {
    labels = spx::slic_segment(raster, a.cfg);
  } else if (a.algo == "snic") {
    labels = spx::snic_segment(raster, a.cfg);
  } else if (a.algo == "seedcomp") {
    labels = spx::seed_competition_segment(raster, a.cfg);
  } else {
    throw CLI::ValidationError("--algo must be one of grid|slic|snic|seedcomp");
  }
  if (!a.no_merge && a.cfg.min_size > 1) {
    labels = spx::merge_small_segments(labels, raster, a.cfg.min_size);
  }
  spx::save_label_map(labels, a.out);
  std::cout << "k_final: " << labels.k << "\n";
  return 0;
}

struct ImportArgs {
  std::string labels, raster, out;
  int min_size = 70;
  bool no_merge = false;
};

int run_import(const ImportArgs& a) {
  spx::LabelMap labels = spx::load_label_map(a.labels);
  spx::MultibandRaster raster = spx::load_raster(a.raster);
  labels = spx::enforce_connectivity(labels);
  if (!a.no_merge && a.min_size > 1) {
    labels = spx::merge_small_segments(labels, raster, a.min_size);
  }
  spx::save_label_map(labels, a.out);
  std::cout << "k_final: " << labels.k << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// eval-spx / eval-cs

struct EvalArgs {
  std::vector<std::string> labels;
  std::vector<std::string> gts;
  std::vector<std::string> rasters;
  std::vector<std::string> images;
  std::string method = "unknown";
  std::string out;
  std::string records_out;  // eval-cs only
  spx::SirsParams sirs;
  int jobs = default_jobs();
};

// Reuses a single --gt/--raster across a batch when only one was given.
template <typename T>
const std::string& pick(const std::vector<T>& v, std::size_t i) {
  return v.size() == 1 ? v[0] : v[i];
}

void check_batch(const EvalArgs& a, bool need_raster) {
  auto bad = [&](const std::vector<std::string>& v) {
    return v.size() != 1 && v.size() != a.labels.size();
  };
  if (a.labels.empty() || bad(a.gts) || (need_raster && bad(a.rasters))) {
    throw CLI::ValidationError("--labels/--gt/--raster counts must match (or be 1)");
  }
}

int run_eval_spx(EvalArgs& a, const std::string& config) {
  check_batch(a, true);
  std::vector<std::vector<std::string>> rows(a.labels.size());
  parallel_for(a.labels.size(), a.jobs, [&](std::size_t i) {
    spx::LabelMap labels = spx::load_label_map(a.labels[i]);
    spx::GroundTruth gt = spx::load_ground_truth(pick(a.gts, i));
    spx::MultibandRaster raster = spx::load_raster(pick(a.rasters, i));
    spx::SpxMetricReport r = spx::evaluate_spx(labels, gt, raster, a.sirs);
    std::string image = a.images.empty() ? stem_of(a.labels[i]) : pick(a.images, i);
    rows[i] = {a.method,
               image,
               spx::format_double(r.br),
               spx::format_double(r.ue),
               spx::format_double(r.sirs),
               spx::format_double(r.co),
               spx::format_double(r.reg),
               std::to_string(r.k_final)};
  });
  spx::write_csv(a.out, make_metadata("eval-spx", config),
                 {"method", "image", "br", "ue", "sirs", "co", "reg", "k_final"}, rows);
  return 0;
}

int run_eval_cs(EvalArgs& a, const std::string& config) {
  check_batch(a, false);
  std::vector<std::vector<std::string>> rows(a.labels.size());
  std::vector<std::vector<std::vector<std::string>>> record_rows(a.labels.size());
  parallel_for(a.labels.size(), a.jobs, [&](std::size_t i) {
    spx::LabelMap labels = spx::load_label_map(a.labels[i]);
    spx::GroundTruth gt = spx::load_ground_truth(pick(a.gts, i));
    auto records = spx::compute_segment_records(labels, gt);
    spx::CsSummary s = spx::compute_cs_summary(records.records);
    std::string image = a.images.empty() ? stem_of(a.labels[i]) : pick(a.images, i);
    rows[i] = {a.method,
               image,
               spx::format_double(s.us),
               spx::format_double(s.ds),
               spx::format_double(s.phor),
               spx::format_double(s.ep),
               std::to_string(s.n_segments),
               std::to_string(s.n_useful)};
    if (!a.records_out.empty()) {
      for (const auto& rec : records.records) {
        record_rows[i].push_back({image, std::to_string(rec.segment_id),
                                  std::to_string(rec.size), std::to_string(rec.n_forest),
                                  std::to_string(rec.n_deforest), spx::format_double(rec.hor),
                                  rec.majority == spx::GtClass::Deforest ? "deforest" : "forest",
                                  rec.useful ? "1" : "0"});
      }
    }
  });
  spx::write_csv(a.out, make_metadata("eval-cs", config),
                 {"method", "image", "us", "ds", "phor", "ep", "n_segments", "n_useful"}, rows);
  if (!a.records_out.empty()) {
    std::vector<std::vector<std::string>> flat;
    for (auto& chunk : record_rows) {
      for (auto& row : chunk) flat.push_back(std::move(row));
    }
    spx::write_csv(a.records_out, make_metadata("eval-cs", config),
                   {"image", "segment_id", "size", "n_forest", "n_deforest", "hor", "majority",
                    "useful"},
                   flat);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// rank / report

struct RankArgs {
  std::vector<std::string> spx_csvs;
  std::vector<std::string> cs_csvs;
  std::string ranks_csv;
  std::string out_dir;
};

// method -> metric column -> mean over images
std::map<std::string, std::array<double, spx::kNumMetrics>> average_metric_values(
    const std::vector<std::string>& spx_csvs, const std::vector<std::string>& cs_csvs) {
  struct Acc {
    std::array<double, spx::kNumMetrics> sum{};
    std::array<long, spx::kNumMetrics> n{};
  };
  std::map<std::string, Acc> acc;

  auto ingest = [&](const std::string& path, const std::vector<std::pair<std::string, int>>& map) {
    spx::CsvTable t = spx::read_csv(path);
    int method_col = t.column("method");
    if (method_col < 0) throw spx::MalformedHeader(path + ": missing 'method' column");
    for (const auto& row : t.rows) {
      Acc& a = acc[row[method_col]];
      for (const auto& [name, metric] : map) {
        int col = t.column(name);
        if (col < 0) continue;  // ds is optional in spx CSVs
        a.sum[metric] += std::stod(row[col]);
        a.n[metric] += 1;
      }
    }
  };

  for (const auto& path : spx_csvs) {
    ingest(path, {{"ds", 0}, {"br", 1}, {"ue", 2}, {"sirs", 3}, {"co", 4}, {"reg", 5}});
  }
  for (const auto& path : cs_csvs) {
    ingest(path, {{"ds", 6}, {"us", 7}, {"phor", 8}, {"ep", 9}});
  }

  std::map<std::string, std::array<double, spx::kNumMetrics>> means;
  for (auto& [method, a] : acc) {
    auto& row = means[method];
    for (int m = 0; m < spx::kNumMetrics; ++m) {
      if (a.n[m] == 0 && m == 0 && a.n[6] > 0) {
        // No DS column in the superpixel CSVs: the superpixel tier scores the
        // citizen-science DS values.
        row[m] = a.sum[6] / a.n[6];
      } else if (a.n[m] == 0) {
        throw spx::EmptyInput("method " + method + " missing metric " +
                              spx::kMetricNames[m]);
      } else {
        row[m] = a.sum[m] / a.n[m];
      }
    }
  }
  return means;
}

int run_rank(const RankArgs& a, const std::string& config) {
  spx::RankTable table;
  if (!a.ranks_csv.empty()) {
    spx::CsvTable t = spx::read_csv(a.ranks_csv);
    int method_col = t.column("method");
    if (method_col < 0) throw spx::MalformedHeader(a.ranks_csv + ": missing 'method' column");
    std::vector<std::string> methods;
    std::vector<std::array<int, spx::kNumMetrics>> ranks;
    for (const auto& row : t.rows) {
      methods.push_back(row[method_col]);
      std::array<int, spx::kNumMetrics> r{};
      for (int m = 0; m < spx::kNumMetrics; ++m) {
        int col = t.column(spx::kMetricNames[m]);
        if (col < 0) throw spx::MalformedHeader(a.ranks_csv + ": missing column " +
                                                spx::kMetricNames[m]);
        r[m] = std::stoi(row[col]);
      }
      ranks.push_back(r);
    }
    table = spx::rank_table_from_ranks(methods, ranks);
  } else {
    auto means = average_metric_values(a.spx_csvs, a.cs_csvs);
    std::vector<std::string> methods;
    std::vector<std::array<double, spx::kNumMetrics>> values;
    for (auto& [method, row] : means) {
      methods.push_back(method);
      values.push_back(row);
    }
    table = spx::build_rank_table(methods, values);
  }
  spx::aggregate_scores(table);
  fs::create_directories(a.out_dir);
  spx::render_rank_report(table, (fs::path(a.out_dir) / "rank_table.csv").string(),
                          (fs::path(a.out_dir) / "rank_table.md").string(),
                          make_metadata("rank", config));
  std::cout << "best method: " << table.methods[table.order[0]] << "\n";
  return 0;
}

struct ReportArgs {
  std::vector<std::string> spx_csvs;
  std::vector<std::string> cs_csvs;
  std::string out;
};

int run_report(const ReportArgs& a) {
  auto means = average_metric_values(a.spx_csvs, a.cs_csvs);
  std::ofstream md(a.out);
  if (!md) throw spx::IoError("cannot open " + a.out + " for writing");
  md << "# Method summary (mean over images)\n\n";
  md << "| Method | BR | UE | SIRS | CO | Reg | US | DS | PHoR | EP |\n";
  md << "|---|---|---|---|---|---|---|---|---|---|\n";
  for (auto& [method, row] : means) {
    md << "| " << method;
    for (int m : {1, 2, 3, 4, 5, 7, 6, 8, 9}) md << " | " << spx::format_double(row[m]);
    md << " |\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// features / classify

struct FeatureArgs {
  std::string raster, labels, gt, out;
  spx::GlcmParams glcm;
  int jobs = default_jobs();
};

int run_features(const FeatureArgs& a, const std::string& config) {
  spx::MultibandRaster raster = spx::rescale_to_byte_range(spx::load_raster(a.raster));
  spx::LabelMap labels = spx::load_label_map(a.labels);
  std::optional<spx::GroundTruth> gt;
  std::vector<spx::SegmentRecord> records;
  if (!a.gt.empty()) {
    gt = spx::load_ground_truth(a.gt);
    records = spx::compute_segment_records(labels, *gt).records;
  }
  std::map<std::uint32_t, spx::GtClass> majority;
  for (const auto& rec : records) majority[rec.segment_id] = rec.majority;

  std::vector<std::vector<std::string>> rows(labels.k);
  std::atomic<long> skipped{0};
  parallel_for(labels.k, a.jobs, [&](std::size_t s) {
    auto id = static_cast<std::uint32_t>(s);
    spx::FeatureVector fv;
    try {
      fv = spx::glcm_features(raster, labels, id, a.glcm);
    } catch (const spx::SegmentTooSmall&) {
      ++skipped;
      return;
    }
    std::vector<std::string> row = {std::to_string(id)};
    for (double v : fv.values) row.push_back(spx::format_double(v));
    if (gt) {
      auto it = majority.find(id);
      row.push_back(it == majority.end()
                        ? "excluded"
                        : (it->second == spx::GtClass::Deforest ? "deforest" : "forest"));
    }
    rows[s] = std::move(row);
  });

  std::vector<std::string> header = {"segment_id"};
  for (int i = 0; i < spx::kFeatureVectorLength; ++i) header.push_back("f" + std::to_string(i));
  if (gt) header.push_back("label");
  std::vector<std::vector<std::string>> kept;
  for (auto& row : rows) {
    if (!row.empty()) kept.push_back(std::move(row));
  }
  spx::write_csv(a.out, make_metadata("features", config), header, kept);
  if (skipped > 0) std::cerr << "skipped " << skipped << " segments under 4 pixels\n";
  return 0;
}

std::vector<spx::FeatureVector> load_feature_csv(const std::string& path, bool require_label) {
  spx::CsvTable t = spx::read_csv(path);
  int id_col = t.column("segment_id");
  int label_col = t.column("label");
  if (id_col < 0) throw spx::MalformedHeader(path + ": missing 'segment_id'");
  if (require_label && label_col < 0) throw spx::MalformedHeader(path + ": missing 'label'");
  std::vector<spx::FeatureVector> out;
  for (const auto& row : t.rows) {
    spx::FeatureVector fv;
    fv.segment_id = static_cast<std::uint32_t>(std::stoul(row[id_col]));
    for (int i = 0; i < spx::kFeatureVectorLength; ++i) {
      int col = t.column("f" + std::to_string(i));
      if (col < 0) throw spx::MalformedHeader(path + ": missing feature column f" +
                                              std::to_string(i));
      fv.values.push_back(std::stod(row[col]));
    }
    if (label_col >= 0 && row[label_col] != "excluded") {
      fv.label = parse_class(row[label_col]);
    }
    out.push_back(std::move(fv));
  }
  return out;
}

struct ClassifyArgs {
  std::string train, test, out;
  int k = 5;
};

int run_classify(const ClassifyArgs& a, const std::string& config) {
  auto train = load_feature_csv(a.train, /*require_label=*/true);
  auto test = load_feature_csv(a.test, /*require_label=*/false);
  spx::KnnResult result = spx::knn_classify(train, test, a.k);
  if (result.k_used != a.k) {
    std::cerr << "warning: k clamped to training size " << result.k_used << "\n";
  }
  if (!result.dropped_features.empty()) {
    std::cerr << "warning: dropped " << result.dropped_features.size()
              << " zero-variance features\n";
  }

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < test.size(); ++i) {
    rows.push_back({std::to_string(test[i].segment_id),
                    result.predictions[i] == spx::GtClass::Deforest ? "deforest" : "forest",
                    test[i].label
                        ? (*test[i].label == spx::GtClass::Deforest ? "deforest" : "forest")
                        : ""});
  }
  spx::write_csv(a.out, make_metadata("classify", config),
                 {"segment_id", "predicted", "actual"}, rows);
  if (result.scored) {
    std::cout << "accuracy: " << spx::format_double(result.accuracy)
              << " f1_forest: " << spx::format_double(result.f1_forest)
              << " f1_deforest: " << spx::format_double(result.f1_deforest) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate-campaign

struct CampaignArgs {
  std::string votes_csv, records_csv, out_dir;
  bool synthesize = false;
  int volunteers = 11;
  double error_rate = 0.1;
  std::uint64_t seed = 1;
  double entropy_max = 0.9;
};

std::vector<spx::SegmentRecord> load_records_csv(const std::string& path) {
  spx::CsvTable t = spx::read_csv(path);
  int id = t.column("segment_id"), size = t.column("size"), nf = t.column("n_forest"),
      nd = t.column("n_deforest");
  if (id < 0 || size < 0 || nf < 0 || nd < 0) {
    throw spx::MalformedHeader(path + ": need segment_id,size,n_forest,n_deforest columns");
  }
  std::vector<spx::SegmentRecord> records;
  for (const auto& row : t.rows) {
    spx::SegmentRecord rec;
    rec.segment_id = static_cast<std::uint32_t>(std::stoul(row[id]));
    rec.size = std::stoi(row[size]);
    rec.n_forest = std::stoi(row[nf]);
    rec.n_deforest = std::stoi(row[nd]);
    rec.hor = rec.size > 0 ? static_cast<double>(std::max(rec.n_forest, rec.n_deforest)) / rec.size
                           : 1.0;
    rec.majority = rec.n_deforest > rec.n_forest ? spx::GtClass::Deforest : spx::GtClass::Forest;
    rec.useful = rec.hor >= spx::kHorThreshold && rec.size >= spx::kMinUsefulSize;
    records.push_back(rec);
  }
  return records;
}

int run_campaign(const CampaignArgs& a, const std::string& config) {
  std::vector<spx::SegmentRecord> records = load_records_csv(a.records_csv);

  std::vector<spx::TaskVotes> tasks;
  if (a.synthesize) {
    tasks = spx::synthesize_votes(records, a.volunteers, a.error_rate, a.seed);
  } else {
    if (a.votes_csv.empty()) {
      throw CLI::ValidationError("need --votes or --synthesize");
    }
    spx::CsvTable t = spx::read_csv(a.votes_csv);
    int tid = t.column("task_id"), sid = t.column("segment_id"), nf = t.column("n_forest"),
        nd = t.column("n_deforest"), nu = t.column("n_undefined");
    if (tid < 0 || sid < 0 || nf < 0 || nd < 0 || nu < 0) {
      throw spx::MalformedHeader(a.votes_csv + ": bad votes header");
    }
    for (const auto& row : t.rows) {
      tasks.push_back({row[tid], static_cast<std::uint32_t>(std::stoul(row[sid])),
                       std::stoi(row[nf]), std::stoi(row[nd]), std::stoi(row[nu])});
    }
  }

  auto majorities = spx::aggregate_votes(tasks);
  double accuracy = spx::campaign_accuracy(tasks, majorities, records);
  auto selection = spx::select_samples(tasks, majorities, a.entropy_max);

  fs::create_directories(a.out_dir);
  auto meta = make_metadata("simulate-campaign", config);

  std::vector<std::vector<std::string>> vote_rows;
  for (const auto& t : tasks) {
    vote_rows.push_back({t.task_id, std::to_string(t.segment_id), std::to_string(t.n_forest),
                         std::to_string(t.n_deforest), std::to_string(t.n_undefined)});
  }
  spx::write_csv((fs::path(a.out_dir) / "votes.csv").string(), meta,
                 {"task_id", "segment_id", "n_forest", "n_deforest", "n_undefined"}, vote_rows);

  std::vector<std::vector<std::string>> maj_rows;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    maj_rows.push_back({tasks[i].task_id, std::to_string(tasks[i].segment_id),
                        answer_name(majorities[i]),
                        spx::format_double(spx::task_entropy(tasks[i]))});
  }
  spx::write_csv((fs::path(a.out_dir) / "majorities.csv").string(), meta,
                 {"task_id", "segment_id", "majority", "entropy"}, maj_rows);

  std::vector<std::vector<std::string>> sel_rows;
  for (auto id : selection.forest_ids) sel_rows.push_back({std::to_string(id), "forest"});
  for (auto id : selection.deforest_ids) sel_rows.push_back({std::to_string(id), "deforest"});
  spx::write_csv((fs::path(a.out_dir) / "selected.csv").string(), meta,
                 {"segment_id", "class"}, sel_rows);

  std::cout << "campaign accuracy: " << spx::format_double(accuracy) << "%\n"
            << "selected: " << selection.forest_ids.size() << " forest, "
            << selection.deforest_ids.size() << " deforest\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"superpixel segmentation and citizen-science evaluation toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file with per-subcommand defaults");

  ConfigDefaults cfg;
  try {
    cfg = load_config_defaults(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  PcaArgs pca;
  pca.components = cfg.get("pca", "components", 3);
  auto* pca_cmd = app.add_subcommand("pca", "project a raster onto its principal components");
  pca_cmd->add_option("--in", pca.in)->required();
  pca_cmd->add_option("--out", pca.out)->required();
  pca_cmd->add_option("--components", pca.components);
  pca_cmd->add_option("--gt", pca.gt, "ground truth; excluded pixels omitted from the fit");
  pca_cmd->add_flag("--rescale", pca.rescale, "rescale output bands to [0,255]");

  SegmentArgs seg;
  seg.cfg.k_desired = cfg.get("segment", "k", 6000);
  seg.cfg.compactness = cfg.get("segment", "m", 10.0);
  seg.cfg.iterations = cfg.get("segment", "iters", 10);
  seg.cfg.min_size = cfg.get("segment", "min-size", 70);
  auto* seg_cmd = app.add_subcommand("segment", "run a native segmenter");
  seg_cmd->add_option("--algo", seg.algo)->check(CLI::IsMember({"grid", "slic", "snic", "seedcomp"}));
  seg_cmd->add_option("--k", seg.cfg.k_desired);
  seg_cmd->add_option("--m", seg.cfg.compactness);
  seg_cmd->add_option("--iters", seg.cfg.iterations);
  seg_cmd->add_option("--min-size", seg.cfg.min_size);
  seg_cmd->add_flag("--no-merge", seg.no_merge, "skip the small-segment merge");
  seg_cmd->add_option("--in", seg.in)->required();
  seg_cmd->add_option("--out", seg.out)->required();

  ImportArgs imp;
  auto* imp_cmd = app.add_subcommand("import", "post-process an external label map");
  imp_cmd->add_option("--labels", imp.labels)->required();
  imp_cmd->add_option("--raster", imp.raster)->required();
  imp_cmd->add_option("--min-size", imp.min_size);
  imp_cmd->add_flag("--no-merge", imp.no_merge);
  imp_cmd->add_option("--out", imp.out)->required();

  EvalArgs espx;
  auto* espx_cmd = app.add_subcommand("eval-spx", "classical superpixel measures");
  espx_cmd->add_option("--labels", espx.labels)->required();
  espx_cmd->add_option("--gt", espx.gts)->required();
  espx_cmd->add_option("--raster", espx.rasters)->required();
  espx_cmd->add_option("--image", espx.images);
  espx_cmd->add_option("--method", espx.method);
  espx_cmd->add_option("--out", espx.out)->required();
  espx_cmd->add_option("--sirs-bins", espx.sirs.bins);
  espx_cmd->add_option("--sirs-reps", espx.sirs.representatives);
  espx_cmd->add_option("--sirs-sigma", espx.sirs.sigma);
  espx_cmd->add_option("--jobs", espx.jobs);

  EvalArgs ecs;
  auto* ecs_cmd = app.add_subcommand("eval-cs", "citizen-science suitability measures");
  ecs_cmd->add_option("--labels", ecs.labels)->required();
  ecs_cmd->add_option("--gt", ecs.gts)->required();
  ecs_cmd->add_option("--image", ecs.images);
  ecs_cmd->add_option("--method", ecs.method);
  ecs_cmd->add_option("--out", ecs.out)->required();
  ecs_cmd->add_option("--records-out", ecs.records_out, "per-segment record CSV");
  ecs_cmd->add_option("--jobs", ecs.jobs);

  RankArgs rank;
  auto* rank_cmd = app.add_subcommand("rank", "two-tier method ranking");
  rank_cmd->add_option("--spx", rank.spx_csvs);
  rank_cmd->add_option("--cs", rank.cs_csvs);
  rank_cmd->add_option("--ranks", rank.ranks_csv, "pre-computed rank matrix CSV");
  rank_cmd->add_option("--out", rank.out_dir)->required();

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Markdown summary of metric CSVs");
  report_cmd->add_option("--spx", report.spx_csvs);
  report_cmd->add_option("--cs", report.cs_csvs);
  report_cmd->add_option("--out", report.out)->required();

  FeatureArgs feat;
  feat.glcm.levels = cfg.get("features", "glcm-levels", 32);
  auto* feat_cmd = app.add_subcommand("features", "per-segment GLCM texture features");
  feat_cmd->add_option("--raster", feat.raster)->required();
  feat_cmd->add_option("--labels", feat.labels)->required();
  feat_cmd->add_option("--gt", feat.gt);
  feat_cmd->add_option("--glcm-levels", feat.glcm.levels);
  feat_cmd->add_option("--out", feat.out)->required();
  feat_cmd->add_option("--jobs", feat.jobs);

  ClassifyArgs cls;
  cls.k = cfg.get("classify", "k", 5);
  auto* cls_cmd = app.add_subcommand("classify", "kNN forest/deforestation classifier");
  cls_cmd->add_option("--train", cls.train)->required();
  cls_cmd->add_option("--test", cls.test)->required();
  cls_cmd->add_option("--k", cls.k);
  cls_cmd->add_option("--out", cls.out)->required();

  CampaignArgs camp;
  camp.entropy_max = cfg.get("simulate-campaign", "entropy-max", 0.9);
  auto* camp_cmd = app.add_subcommand("simulate-campaign", "aggregate votes, select samples");
  camp_cmd->add_option("--votes", camp.votes_csv);
  camp_cmd->add_option("--records", camp.records_csv)->required();
  camp_cmd->add_option("--entropy-max", camp.entropy_max);
  camp_cmd->add_flag("--synthesize", camp.synthesize, "generate votes from the records");
  camp_cmd->add_option("--volunteers", camp.volunteers);
  camp_cmd->add_option("--error-rate", camp.error_rate);
  camp_cmd->add_option("--seed", camp.seed);
  camp_cmd->add_option("--out", camp.out_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  // Canonical config string for metadata headers: the raw arguments.
  std::string config;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) config += " ";
    config += argv[i];
  }

  try {
    if (pca_cmd->parsed()) return run_pca(pca);
    if (seg_cmd->parsed()) return run_segment(seg);
    if (imp_cmd->parsed()) return run_import(imp);
    if (espx_cmd->parsed()) return run_eval_spx(espx, config);
    if (ecs_cmd->parsed()) return run_eval_cs(ecs, config);
    if (rank_cmd->parsed()) return run_rank(rank, config);
    if (report_cmd->parsed()) return run_report(report);
    if (feat_cmd->parsed()) return run_features(feat, config);
    if (cls_cmd->parsed()) return run_classify(cls, config);
    if (camp_cmd->parsed()) return run_campaign(camp, config);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
