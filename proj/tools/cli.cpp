#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wpe/edge_io.hpp"
#include "wpe/errors.hpp"
#include "wpe/eval.hpp"
#include "wpe/graph.hpp"
#include "wpe/indices.hpp"
#include "wpe/report.hpp"

namespace wpe::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = WPE_VERSION;

template <class T>
void read_if(const json& j, const char* key, T& field) {
  if (j.contains(key)) j.at(key).get_to(field);
}

}  // namespace

void RunConfig::validate() const {
  static const std::vector<std::string> commands{"stats", "eval", "sweep", "score"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end())
    throw ConfigError("unknown command '" + command + "'");
  if (dataset.empty() && (command != "stats" || manifest.empty()))
    throw ConfigError("--dataset is required");
  parse_edge_format(format);
  if (merge != "sum" && merge != "max") throw ConfigError("--merge must be sum or max");
  if (out_format != "csv" && out_format != "json") throw ConfigError("--out-format must be csv or json");
  if (auc != "auto" && auc != "exact" && auc != "sampled") throw ConfigError("--auc must be auto, exact or sampled");
  if (command == "stats") return;

  if (indices.empty()) throw ConfigError("--index is required");
  if (command == "score" && indices.size() != 1) throw ConfigError("score takes exactly one --index");
  for (const std::string& name : indices) {
    IndexSpec spec{parse_index_family(name), alpha, l, epsilon};
    spec.validate();
  }
  if (command == "sweep") alpha_grid(alpha_min, alpha_max, alpha_step);
  if (command == "eval" || command == "sweep") {
    ExperimentOptions options;
    options.runs = runs;
    options.probe_fraction = probe_frac;
    options.top_l = top_l;
    options.auc_samples = auc_samples;
    options.validate();
    if (!(exact_auc_limit >= 0.0)) throw ConfigError("--exact-auc-limit must be non-negative");
  }
}

json RunConfig::to_json() const {
  return {{"command", command},
          {"dataset", dataset},
          {"manifest", manifest},
          {"format", format},
          {"merge", merge},
          {"keep_lcc", keep_lcc},
          {"drop_self_loops", drop_self_loops},
          {"index", indices},
          {"alpha", alpha},
          {"alpha_min", alpha_min},
          {"alpha_max", alpha_max},
          {"alpha_step", alpha_step},
          {"l", l},
          {"epsilon", epsilon},
          {"runs", runs},
          {"seed", seed},
          {"probe_frac", probe_frac},
          {"top_l", top_l},
          {"auc", auc},
          {"auc_samples", auc_samples},
          {"exact_auc_limit", exact_auc_limit},
          {"top_k", top_k},
          {"out_format", out_format}};
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  try {
    read_if(j, "command", c.command);
    read_if(j, "dataset", c.dataset);
    read_if(j, "manifest", c.manifest);
    read_if(j, "format", c.format);
    read_if(j, "merge", c.merge);
    read_if(j, "keep_lcc", c.keep_lcc);
    read_if(j, "drop_self_loops", c.drop_self_loops);
    read_if(j, "index", c.indices);
    read_if(j, "alpha", c.alpha);
    read_if(j, "alpha_min", c.alpha_min);
    read_if(j, "alpha_max", c.alpha_max);
    read_if(j, "alpha_step", c.alpha_step);
    read_if(j, "l", c.l);
    read_if(j, "epsilon", c.epsilon);
    read_if(j, "runs", c.runs);
    read_if(j, "seed", c.seed);
    read_if(j, "probe_frac", c.probe_frac);
    read_if(j, "top_l", c.top_l);
    read_if(j, "auc", c.auc);
    read_if(j, "auc_samples", c.auc_samples);
    read_if(j, "exact_auc_limit", c.exact_auc_limit);
    read_if(j, "top_k", c.top_k);
    read_if(j, "out_format", c.out_format);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid embedded config: ") + e.what());
  }
  return c;
}

namespace {

// ---------------------------------------------------------------------------
// Datasets

struct Dataset {
  std::string name;
  fs::path path;
  EdgeFormat format = EdgeFormat::edge_list;
  PreprocessOptions options;
};

MergeRule parse_merge(const std::string& s) { return s == "max" ? MergeRule::max : MergeRule::sum; }

std::vector<Dataset> read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open manifest '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest is not valid JSON: ") + e.what(), 0, path.string());
  }
  std::vector<Dataset> out;
  try {
    for (const json& entry : j.at("datasets")) {
      Dataset d;
      d.name = entry.at("name").get<std::string>();
      d.path = entry.at("path").get<std::string>();
      if (d.path.is_relative()) d.path = path.parent_path() / d.path;
      d.format = parse_edge_format(entry.value("format", std::string("edgelist")));
      d.options.merge = parse_merge(entry.value("merge", std::string("sum")));
      d.options.keep_lcc = entry.value("keep_lcc", true);
      d.options.drop_self_loops = entry.value("drop_self_loops", true);
      out.push_back(std::move(d));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed manifest entry: ") + e.what(), 0, path.string());
  }
  return out;
}

std::vector<Dataset> resolve_datasets(const RunConfig& c) {
  std::vector<Dataset> manifest;
  if (!c.manifest.empty()) manifest = read_manifest(c.manifest);
  if (c.dataset.empty()) return manifest;
  for (const Dataset& d : manifest)
    if (d.name == c.dataset) return {d};
  Dataset d;
  d.path = c.dataset;
  d.name = d.path.stem().string();
  d.format = parse_edge_format(c.format);
  d.options.merge = parse_merge(c.merge);
  d.options.keep_lcc = c.keep_lcc;
  d.options.drop_self_loops = c.drop_self_loops;
  return {d};
}

WeightedGraph load(const Dataset& d) {
  const auto records = load_edge_file(d.path, d.format);
  return preprocess(records, d.options);
}

ExperimentOptions experiment_options(const RunConfig& c) {
  ExperimentOptions o;
  o.runs = c.runs;
  o.base_seed = c.seed;
  o.probe_fraction = c.probe_frac;
  o.top_l = c.top_l;
  o.auc = c.auc == "exact" ? AucChoice::exact : c.auc == "sampled" ? AucChoice::sampled : AucChoice::automatic;
  o.auc_samples = c.auc_samples;
  o.exact_auc_limit = c.exact_auc_limit;
  o.threads = c.threads;
  return o;
}

IndexSpec index_spec(const RunConfig& c, const std::string& name) {
  return IndexSpec{parse_index_family(name), c.alpha, c.l, c.epsilon};
}

// ---------------------------------------------------------------------------
// Output

std::string csv_preamble(const RunConfig& c) {
  return std::string("# wpe ") + kVersion + "\n# config: " + c.to_json().dump() + "\n";
}

json json_document(const RunConfig& c, json result) {
  return {{"version", kVersion}, {"config", c.to_json()}, {"result", std::move(result)}};
}

void emit(const RunConfig& c, const std::string& content, std::ostream& out) {
  if (c.out.empty()) {
    out << content;
    return;
  }
  try {
    write_file_atomic(c.out, content);
  } catch (const std::runtime_error& e) {
    throw ParseError(e.what());
  }
}

// ---------------------------------------------------------------------------
// Commands

void cmd_stats(const RunConfig& c, std::ostream& out) {
  std::string csv = csv_preamble(c) + stats_csv_header() + "\n";
  json rows = json::array();
  for (const Dataset& d : resolve_datasets(c)) {
    const GraphStats s = stats(load(d));
    csv += stats_csv_row(d.name, s) + "\n";
    json row = to_json(s);
    row["name"] = d.name;
    rows.push_back(std::move(row));
  }
  emit(c, c.out_format == "json" ? json_document(c, std::move(rows)).dump(2) + "\n" : csv, out);
}

void cmd_eval(const RunConfig& c, std::ostream& out) {
  const Dataset d = resolve_datasets(c).front();
  const WeightedGraph g = load(d);
  std::string csv = csv_preamble(c) + experiment_csv_header() + "\n";
  json results = json::array();
  for (const std::string& name : c.indices) {
    const ExperimentResult r = run_experiment(g, index_spec(c, name), experiment_options(c), d.name);
    csv += experiment_csv_row(r) + "\n";
    results.push_back(to_json(r));
  }
  emit(c, c.out_format == "json" ? json_document(c, std::move(results)).dump(2) + "\n" : csv, out);
}

void cmd_sweep(const RunConfig& c, std::ostream& out) {
  const Dataset d = resolve_datasets(c).front();
  const WeightedGraph g = load(d);
  const auto grid = alpha_grid(c.alpha_min, c.alpha_max, c.alpha_step);
  std::string best;
  std::string rows;
  json results = json::array();
  for (const std::string& name : c.indices) {
    const SweepResult s = sweep_alpha(g, index_spec(c, name), grid, experiment_options(c), d.name);
    best += "# best " + s.spec.name() + ": auc_alpha=" + format_number(s.best_auc_alpha) +
            " precision_alpha=" + format_number(s.best_precision_alpha) + "\n";
    rows += sweep_csv_rows(s);
    results.push_back(to_json(s));
  }
  const std::string csv = csv_preamble(c) + best + experiment_csv_header() + "\n" + rows;
  emit(c, c.out_format == "json" ? json_document(c, std::move(results)).dump(2) + "\n" : csv, out);
}

void cmd_score(const RunConfig& c, std::ostream& out) {
  const Dataset d = resolve_datasets(c).front();
  const WeightedGraph g = load(d);
  const ScoreTable table = score_all_pairs(g, index_spec(c, c.indices.front()));
  if (c.out_format == "json") {
    json result = score_table_json(g, table, c.top_k);
    result["dataset"] = d.name;
    emit(c, json_document(c, std::move(result)).dump(2) + "\n", out);
  } else {
    emit(c, csv_preamble(c) + score_table_csv(g, table, c.top_k), out);
  }
}

RunConfig load_replay(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open replay file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const std::string marker = "# config: ";
  try {
    if (const auto pos = text.find(marker); text.rfind("# wpe", 0) == 0 && pos != std::string::npos) {
      const auto end = text.find('\n', pos);
      return RunConfig::from_json(json::parse(text.substr(pos + marker.size(), end - pos - marker.size())));
    }
    return RunConfig::from_json(json::parse(text).at("config"));
  } catch (const json::exception& e) {
    throw ConfigError("no embedded config in '" + path.string() + "': " + e.what());
  }
}

std::string env_name(const std::string& flag) {
  std::string out = "WPE_";
  for (char ch : flag.substr(2)) out += ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted path entropy link prediction benchmarks"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunConfig config;
  std::string replay;

  auto opt = [](CLI::App* sub, const std::string& flag, auto& field, const std::string& help) {
    return sub->add_option(flag, field, help)->envname(env_name(flag));
  };
  auto add_common = [&](CLI::App* sub) {
    opt(sub, "--dataset", config.dataset, "Edge-list path, or a dataset name from --manifest");
    opt(sub, "--manifest", config.manifest, "JSON manifest of named datasets");
    opt(sub, "--format", config.format, "Input format: edgelist or pajek");
    opt(sub, "--merge", config.merge, "Weight merge rule for duplicate/antiparallel links: sum or max");
    opt(sub, "--keep-lcc", config.keep_lcc, "Keep only the largest connected component");
    opt(sub, "--drop-self-loops", config.drop_self_loops, "Drop self-loops instead of failing");
    opt(sub, "--out", config.out, "Output file (stdout when omitted)");
    opt(sub, "--out-format", config.out_format, "Output format: csv or json");
    sub->add_option("--replay", replay, "Re-run the config embedded in a previous output file");
  };
  auto add_index = [&](CLI::App* sub) {
    opt(sub, "--index", config.indices, "Index family: CN AA LP WCN WAA WLP PE WPE")->delimiter(',');
    opt(sub, "--alpha", config.alpha, "Weight exponent for WCN/WAA/WLP/WPE");
    opt(sub, "--l", config.l, "Longest path length for PE/WPE: 2 or 3");
    opt(sub, "--epsilon", config.epsilon, "Length-3 path factor for LP/WLP");
  };
  auto add_experiment = [&](CLI::App* sub) {
    opt(sub, "--runs", config.runs, "Independent random splits");
    opt(sub, "--seed", config.seed, "Base seed; run r uses seed + r");
    opt(sub, "--probe-frac", config.probe_frac, "Fraction of links held out as probe set");
    opt(sub, "--top-l", config.top_l, "L for Precision@L");
    opt(sub, "--auc", config.auc, "AUC mode: auto, exact or sampled");
    opt(sub, "--auc-samples", config.auc_samples, "Comparisons drawn in sampled AUC mode");
    opt(sub, "--exact-auc-limit", config.exact_auc_limit, "auto mode: largest comparison count computed exactly");
    opt(sub, "--threads", config.threads, "Worker threads (0 = all cores)");
  };

  auto* stats_cmd = app.add_subcommand("stats", "Topological statistics: name,V,E,mean_k,H,C");
  add_common(stats_cmd);
  auto* eval_cmd = app.add_subcommand("eval", "Average AUC and Precision over random splits");
  add_common(eval_cmd);
  add_index(eval_cmd);
  add_experiment(eval_cmd);
  auto* sweep_cmd = app.add_subcommand("sweep", "Metrics over an alpha grid (plot data)");
  add_common(sweep_cmd);
  add_index(sweep_cmd);
  add_experiment(sweep_cmd);
  opt(sweep_cmd, "--alpha-min", config.alpha_min, "First alpha of the grid");
  opt(sweep_cmd, "--alpha-max", config.alpha_max, "Last alpha of the grid");
  opt(sweep_cmd, "--alpha-step", config.alpha_step, "Grid spacing");
  auto* score_cmd = app.add_subcommand("score", "Rank unlinked pairs of the full graph");
  add_common(score_cmd);
  add_index(score_cmd);
  opt(score_cmd, "--top-k", config.top_k, "Number of predictions to emit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    config.command = app.get_subcommands().front()->get_name();
    if (!replay.empty()) {
      const std::string out_path = config.out;
      const std::string command = config.command;
      config = load_replay(replay);
      if (config.command != command)
        throw ConfigError("replay file was produced by '" + config.command + "', not '" + command + "'");
      config.out = out_path;
    }
    config.validate();
    if (config.command == "stats") cmd_stats(config, out);
    else if (config.command == "eval") cmd_eval(config, out);
    else if (config.command == "sweep") cmd_sweep(config, out);
    else cmd_score(config, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const EmptyGraphError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kComputeError;
  }
  return kOk;
}

}  // namespace wpe::cli
