#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "wpe");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = wpe::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kLes = (fs::path(WPE_TEST_DATA) / "lesmis.txt").string();

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "wpe_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write(const std::string& name, const std::string& content) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << content;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Non-comment lines of a CSV document.
std::vector<std::string> rows(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& row) {
  std::vector<std::string> out;
  std::istringstream in(row);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

const std::string kToy = "1 2 1\n2 3 2\n3 4 1\n4 5 2\n1 3 3\n2 4 1\n";

}  // namespace

TEST_CASE("stats row and provenance header") {
  const Outcome r = run({"stats", "--dataset", kLes});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# wpe " WPE_VERSION "\n# config: {", 0) == 0);
  const auto lines = rows(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "name,V,E,mean_k,H,C");
  CHECK(lines[1] == "lesmis,77,254,6.597403,1.827252,0.573137");
  CHECK(run({"stats", "--dataset", kLes}).out == r.out);

  const Outcome j = run({"stats", "--dataset", kLes, "--out-format", "json"});
  REQUIRE(j.code == 0);
  const json doc = json::parse(j.out);
  CHECK(doc.at("version") == WPE_VERSION);
  CHECK(doc.at("config").at("command") == "stats");
  CHECK(doc.at("result")[0].at("E") == 254);
}

TEST_CASE("stats over a manifest") {
  write("toy.txt", kToy);
  write("toy.net", "*Vertices 3\n1 \"a\"\n2 \"b\"\n3 \"c\"\n*Edges\n1 2 1\n2 3 1\n1 3 1\n");
  const fs::path manifest = write("manifest.json", R"({"datasets": [
    {"name": "toy", "path": "toy.txt"},
    {"name": "tri", "path": "toy.net", "format": "pajek"}]})");
  const Outcome all = run({"stats", "--manifest", manifest.string()});
  REQUIRE(all.code == 0);
  const auto lines = rows(all.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[1].rfind("toy,5,6,2.400000,", 0) == 0);
  CHECK(lines[2] == "tri,3,3,2.000000,1.000000,1.000000");
  const Outcome one = run({"stats", "--manifest", manifest.string(), "--dataset", "tri"});
  REQUIRE(one.code == 0);
  CHECK(rows(one.out).size() == 2);
}

TEST_CASE("input errors map to the parse exit code") {
  const fs::path empty = write("empty.txt", "");
  const Outcome r = run({"stats", "--dataset", empty.string()});
  CHECK(r.code == wpe::cli::kParseError);
  CHECK_FALSE(r.err.empty());
  CHECK(r.out.empty());

  const fs::path bad = write("bad.txt", "1 2 1\n2 3 x\n");
  const Outcome b = run({"stats", "--dataset", bad.string()});
  CHECK(b.code == wpe::cli::kParseError);
  CHECK(b.err.find("bad.txt") != std::string::npos);
  CHECK(b.err.find('2') != std::string::npos);

  CHECK(run({"stats", "--dataset", (scratch_dir() / "missing.txt").string()}).code == wpe::cli::kParseError);
  CHECK(run({"stats", "--dataset", write("neg.txt", "1 2 -1\n").string()}).code == wpe::cli::kParseError);
}

TEST_CASE("config errors map to the config exit code") {
  using wpe::cli::kConfigError;
  CHECK(run({}).code == kConfigError);
  CHECK(run({"frobnicate"}).code == kConfigError);
  CHECK(run({"eval"}).code == kConfigError);
  CHECK(run({"eval", "--dataset", kLes, "--index", "XYZ"}).code == kConfigError);
  CHECK(run({"eval", "--dataset", kLes, "--l", "4"}).code == kConfigError);
  CHECK(run({"eval", "--dataset", kLes, "--runs", "0"}).code == kConfigError);
  CHECK(run({"eval", "--dataset", kLes, "--probe-frac", "1.5"}).code == kConfigError);
  CHECK(run({"eval", "--dataset", kLes, "--auc", "fast"}).code == kConfigError);
  CHECK(run({"eval", "--dataset", kLes, "--runs", "many"}).code == kConfigError);
  CHECK(run({"stats", "--dataset", kLes, "--format", "graphml"}).code == kConfigError);
  CHECK(run({"stats", "--dataset", kLes, "--merge", "mean"}).code == kConfigError);
  CHECK(run({"stats", "--dataset", kLes, "--out-format", "xml"}).code == kConfigError);
  CHECK(run({"sweep", "--dataset", kLes, "--alpha-min", "1", "--alpha-max", "0"}).code == kConfigError);
  CHECK(run({"score", "--dataset", kLes, "--index", "CN,AA"}).code == kConfigError);
}

TEST_CASE("computation errors map to their own exit code") {
  // Too few candidates for Precision@100.
  const fs::path small = write("small.txt", "1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 8\n8 9\n9 10\n10 11\n11 12\n12 1\n");
  const Outcome r = run({"eval", "--dataset", small.string(), "--runs", "1"});
  CHECK(r.code == wpe::cli::kComputeError);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("eval output is reproducible and WPE at alpha 0 matches PE") {
  const fs::path a = scratch_dir() / "eval_a.csv", b = scratch_dir() / "eval_b.csv";
  const std::vector<std::string> base{"eval", "--dataset", kLes, "--seed", "7"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
  };
  REQUIRE(run(with({"--runs", "1", "--out", a.string()})).code == 0);
  REQUIRE(run(with({"--runs", "1", "--out", b.string()})).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(fs::exists(fs::path(a.string() + ".tmp")));

  const Outcome both = run(with({"--runs", "3", "--index", "WPE,PE", "--alpha", "0"}));
  REQUIRE(both.code == 0);
  const auto lines = rows(both.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "dataset,index,alpha,l,runs,mean_auc,mean_precision");
  const auto wpe = fields(lines[1]), pe = fields(lines[2]);
  CHECK(wpe[1] == "WPE");
  CHECK(pe[1] == "PE");
  CHECK(wpe[3] == "2");
  CHECK(wpe[4] == "3");
  CHECK(wpe[5] == pe[5]);
  CHECK(wpe[6] == pe[6]);

  const Outcome j = run(with({"--runs", "1", "--index", "WPE,PE", "--out-format", "json"}));
  REQUIRE(j.code == 0);
  const json doc = json::parse(j.out);
  CHECK(doc.at("config").at("seed") == 7);
  CHECK(doc.at("result")[0].at("per_run")[0].at("seed") == 7);
  CHECK(doc.at("result")[0].at("per_run") == doc.at("result")[1].at("per_run"));
}

TEST_CASE("thread count does not change output") {
  const std::vector<std::string> args{"eval", "--dataset", kLes, "--runs", "4", "--index", "WAA", "--alpha", "0.5"};
  auto one = args, four = args;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});
  CHECK(run(one).out == run(four).out);
}

TEST_CASE("a one-point sweep gives the eval row") {
  const Outcome sweep = run({"sweep", "--dataset", kLes, "--runs", "2", "--seed", "3", "--alpha-min", "0.3",
                             "--alpha-max", "0.3", "--index", "WPE"});
  const Outcome eval = run({"eval", "--dataset", kLes, "--runs", "2", "--seed", "3", "--alpha", "0.3", "--index", "WPE"});
  REQUIRE(sweep.code == 0);
  REQUIRE(eval.code == 0);
  CHECK(rows(sweep.out) == rows(eval.out));
  CHECK(sweep.out.find("# best WPE(l=2): auc_alpha=0.3 precision_alpha=0.3\n") != std::string::npos);
}

TEST_CASE("sweep rows follow the grid") {
  const Outcome r = run({"sweep", "--dataset", kLes, "--runs", "1", "--alpha-min", "-1", "--alpha-max", "1",
                         "--alpha-step", "0.5", "--index", "WCN,WPE", "--l", "3"});
  REQUIRE(r.code == 0);
  const auto lines = rows(r.out);
  REQUIRE(lines.size() == 11);
  CHECK(fields(lines[1])[1] == "WCN");
  CHECK(fields(lines[1])[2] == "-1");
  CHECK(fields(lines[1])[3] == "");
  CHECK(fields(lines[5])[2] == "1");
  CHECK(fields(lines[6])[1] == "WPE");
  CHECK(fields(lines[6])[3] == "3");
}

TEST_CASE("score emits ranked predictions with labels") {
  const fs::path toy = write("score_toy.txt", kToy);
  const Outcome all = run({"score", "--dataset", toy.string(), "--index", "WPE", "--alpha", "0.5", "--l", "3",
                           "--top-k", "50"});
  REQUIRE(all.code == 0);
  const auto lines = rows(all.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "node_a_label,node_b_label,score");
  CHECK(lines[1].rfind("2,5,", 0) == 0);
  CHECK(lines[2].rfind("3,5,", 0) == 0);
  CHECK(lines[3].rfind("1,4,", 0) == 0);
  CHECK(lines[4].rfind("1,5,", 0) == 0);
  double previous = -1e300;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const double s = std::stod(fields(lines[i])[2]);
    CHECK(s >= previous);
    previous = s;
  }

  const Outcome cn = run({"score", "--dataset", toy.string(), "--index", "CN", "--top-k", "1"});
  REQUIRE(cn.code == 0);
  CHECK(rows(cn.out) == std::vector<std::string>{"node_a_label,node_b_label,score", "1,4,2"});

  const Outcome none = run({"score", "--dataset", toy.string(), "--index", "CN", "--top-k", "0"});
  CHECK(none.code == 0);
  CHECK(rows(none.out).size() == 1);

  const Outcome j = run({"score", "--dataset", toy.string(), "--index", "CN", "--out-format", "json"});
  REQUIRE(j.code == 0);
  const json doc = json::parse(j.out);
  CHECK(doc.at("result").at("candidates") == 4);
  CHECK(doc.at("result").at("predictions")[0].at("a") == "1");
}

TEST_CASE("environment variables override defaults") {
  ::setenv("WPE_RUNS", "2", 1);
  ::setenv("WPE_INDEX", "CN", 1);
  const Outcome r = run({"eval", "--dataset", kLes, "--out-format", "json"});
  const Outcome flag = run({"eval", "--dataset", kLes, "--out-format", "json", "--runs", "1"});
  ::unsetenv("WPE_RUNS");
  ::unsetenv("WPE_INDEX");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("config").at("runs") == 2);
  CHECK(doc.at("config").at("index") == json::array({"CN"}));
  CHECK(json::parse(flag.out).at("config").at("runs") == 1);
}

TEST_CASE("replaying an embedded config reproduces the file") {
  for (const char* format : {"csv", "json"}) {
    CAPTURE(format);
    const fs::path first = scratch_dir() / (std::string("replay_a.") + format);
    const fs::path second = scratch_dir() / (std::string("replay_b.") + format);
    REQUIRE(run({"eval", "--dataset", kLes, "--runs", "2", "--seed", "5", "--index", "WLP,AA", "--alpha", "-0.4",
                 "--out-format", format, "--out", first.string()})
                .code == 0);
    REQUIRE(run({"eval", "--replay", first.string(), "--out", second.string()}).code == 0);
    CHECK(slurp(first) == slurp(second));
    CHECK(run({"score", "--replay", first.string()}).code == wpe::cli::kConfigError);
  }
  CHECK(run({"eval", "--replay", write("junk.csv", "hello\n").string()}).code == wpe::cli::kConfigError);
}

TEST_CASE("unwritable output path") {
  const Outcome r = run({"stats", "--dataset", kLes, "--out", (scratch_dir() / "no" / "such" / "dir.csv").string()});
  CHECK(r.code != 0);
  CHECK_FALSE(r.err.empty());
}
