#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "wpe/eval.hpp"
#include "wpe/graph.hpp"
#include "wpe/indices.hpp"

namespace wpe {

/// Shortest round-trip decimal form; "inf"/"-inf" for the sentinels.
std::string format_number(double value);
std::string csv_escape(std::string_view field);

std::string stats_csv_header();
/// name,V,E,mean_k,H,C
std::string stats_csv_row(std::string_view name, const GraphStats& s);
nlohmann::json to_json(const GraphStats& s);

nlohmann::json to_json(const IndexSpec& spec);

std::string experiment_csv_header();
/// dataset,index,alpha,l,runs,mean_auc,mean_precision
std::string experiment_csv_row(const ExperimentResult& r);
nlohmann::json to_json(const ExperimentResult& r);

/// One row per alpha: dataset,index,alpha,l,runs,mean_auc,mean_precision.
std::string sweep_csv_rows(const SweepResult& s);
nlohmann::json to_json(const SweepResult& s);

/// node_a_label,node_b_label,score for the `limit` likeliest pairs, in rank order.
std::string score_table_csv(const WeightedGraph& g, const ScoreTable& t, std::size_t limit);
nlohmann::json score_table_json(const WeightedGraph& g, const ScoreTable& t, std::size_t limit);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace wpe
