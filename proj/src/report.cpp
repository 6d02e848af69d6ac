#include "wpe/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "wpe/errors.hpp"

namespace wpe {

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string stats_csv_header() { return "name,V,E,mean_k,H,C"; }

std::string stats_csv_row(std::string_view name, const GraphStats& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu,%zu,%.6f,%.6f,%.6f", s.node_count, s.link_count, s.mean_degree,
                s.degree_heterogeneity, s.clustering);
  return csv_escape(name) + "," + buf;
}

nlohmann::json to_json(const GraphStats& s) {
  return {{"V", s.node_count},
          {"E", s.link_count},
          {"mean_k", s.mean_degree},
          {"H", s.degree_heterogeneity},
          {"C", s.clustering}};
}

nlohmann::json to_json(const IndexSpec& spec) {
  return {{"family", std::string(to_string(spec.family))},
          {"alpha", spec.alpha},
          {"l", spec.path_limit},
          {"epsilon", spec.epsilon},
          {"direction", spec.direction() == ScoreDirection::lower_is_likelier ? "lower-is-likelier"
                                                                             : "higher-is-likelier"}};
}

std::string experiment_csv_header() { return "dataset,index,alpha,l,runs,mean_auc,mean_precision"; }

std::string experiment_csv_row(const ExperimentResult& r) {
  const std::string l = is_entropy_family(r.spec.family) ? std::to_string(r.spec.path_limit) : "";
  return csv_escape(r.dataset) + "," + std::string(to_string(r.spec.family)) + "," + format_number(r.spec.alpha) +
         "," + l + "," + std::to_string(r.runs.size()) + "," + format_number(r.mean_auc) + "," +
         format_number(r.mean_precision);
}

nlohmann::json to_json(const ExperimentResult& r) {
  nlohmann::json runs = nlohmann::json::array();
  for (const RunRecord& run : r.runs)
    runs.push_back({{"seed", run.seed},
                    {"auc", run.auc},
                    {"precision", run.precision},
                    {"auc_mode", run.auc_mode == AucMode::exact ? "exact" : "sampled"}});
  return {{"dataset", r.dataset},   {"index", to_json(r.spec)},         {"runs", r.runs.size()},
          {"mean_auc", r.mean_auc}, {"mean_precision", r.mean_precision}, {"per_run", std::move(runs)}};
}

std::string sweep_csv_rows(const SweepResult& s) {
  std::string out;
  for (const ExperimentResult& point : s.points) out += experiment_csv_row(point) + "\n";
  return out;
}

nlohmann::json to_json(const SweepResult& s) {
  nlohmann::json points = nlohmann::json::array();
  for (const ExperimentResult& p : s.points) points.push_back(to_json(p));
  nlohmann::json index = to_json(s.spec);
  index.erase("alpha");
  return {{"dataset", s.dataset},
          {"index", std::move(index)},
          {"best_auc_alpha", s.best_auc_alpha},
          {"best_precision_alpha", s.best_precision_alpha},
          {"points", std::move(points)}};
}

std::string score_table_csv(const WeightedGraph& g, const ScoreTable& t, std::size_t limit) {
  std::string out = "node_a_label,node_b_label,score\n";
  const auto pairs = t.pairs();
  const auto scores = t.scores();
  for (std::size_t pos : t.top(limit)) {
    out += csv_escape(g.label(pairs[pos].a)) + "," + csv_escape(g.label(pairs[pos].b)) + "," +
           format_number(scores[pos]) + "\n";
  }
  return out;
}

nlohmann::json score_table_json(const WeightedGraph& g, const ScoreTable& t, std::size_t limit) {
  nlohmann::json rows = nlohmann::json::array();
  const auto pairs = t.pairs();
  const auto scores = t.scores();
  for (std::size_t pos : t.top(limit)) {
    // JSON has no infinity; sentinels are written as strings.
    nlohmann::json score = std::isfinite(scores[pos]) ? nlohmann::json(scores[pos])
                                                      : nlohmann::json(format_number(scores[pos]));
    rows.push_back({{"a", g.label(pairs[pos].a)}, {"b", g.label(pairs[pos].b)}, {"score", std::move(score)}});
  }
  return {{"index", to_json(t.spec())}, {"candidates", t.size()}, {"predictions", std::move(rows)}};
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

}  // namespace wpe
