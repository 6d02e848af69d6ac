#include "wpe/edge_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "wpe/errors.hpp"

namespace wpe {

EdgeFormat parse_edge_format(std::string_view name) {
  if (name == "edgelist" || name == "edge_list" || name == "whitespace") return EdgeFormat::edge_list;
  if (name == "pajek" || name == "net") return EdgeFormat::pajek;
  throw ConfigError("unknown edge format '" + std::string(name) + "' (expected edgelist or pajek)");
}

std::string_view to_string(EdgeFormat format) {
  return format == EdgeFormat::pajek ? "pajek" : "edgelist";
}

namespace {

// Splits on whitespace; a double-quoted token may contain spaces.
std::vector<std::string> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    if (line[i] == '"') {
      const std::size_t end = line.find('"', i + 1);
      if (end == std::string_view::npos) throw ParseError("unterminated quoted label", line_no);
      out.emplace_back(line.substr(i + 1, end - i - 1));
      i = end + 1;
    } else {
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      out.emplace_back(line.substr(start, i - start));
    }
  }
  return out;
}

double parse_weight(const std::string& token, std::size_t line_no) {
  double w = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, w);
  if (ec != std::errc() || ptr != last) throw ParseError("non-numeric weight '" + token + "'", line_no);
  if (!std::isfinite(w) || w <= 0.0)
    throw ParseError("weight must be finite and strictly positive, got '" + token + "'", line_no);
  return w;
}

bool is_blank_or_comment(std::string_view line, std::string_view comment_chars) {
  const auto pos = line.find_first_not_of(" \t\r\n");
  return pos == std::string_view::npos || comment_chars.find(line[pos]) != std::string_view::npos;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<RawRecord> read_whitespace(std::istream& in) {
  std::vector<RawRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line, "#%")) continue;
    const auto tokens = tokenize(line, line_no);
    if (tokens.size() != 2 && tokens.size() != 3)
      throw ParseError("expected 'u v [w]', got " + std::to_string(tokens.size()) + " tokens", line_no);
    RawRecord r{tokens[0], tokens[1], 1.0, line_no};
    if (tokens.size() == 3) r.weight = parse_weight(tokens[2], line_no);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RawRecord> read_pajek(std::istream& in) {
  enum class Section { none, vertices, links, link_lists };
  Section section = Section::none;
  std::unordered_map<std::string, std::string> vertex_label;
  auto resolve = [&](const std::string& id) {
    const auto it = vertex_label.find(id);
    return it == vertex_label.end() ? id : it->second;
  };

  std::vector<RawRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line, "%")) continue;
    const auto tokens = tokenize(line, line_no);
    if (tokens[0].front() == '*') {
      const std::string head = lower(tokens[0]);
      if (head == "*vertices") section = Section::vertices;
      else if (head == "*edges" || head == "*arcs") section = Section::links;
      else if (head == "*edgeslist" || head == "*arcslist") section = Section::link_lists;
      else if (head == "*network") section = Section::none;
      else throw ParseError("unsupported Pajek section '" + tokens[0] + "'", line_no);
      continue;
    }
    switch (section) {
      case Section::none:
        throw ParseError("data record outside of a Pajek section", line_no);
      case Section::vertices:
        // Keep the declared label, otherwise the vertex number itself.
        if (tokens.size() >= 2) {
          if (!vertex_label.emplace(tokens[0], tokens[1]).second)
            throw ParseError("duplicate vertex id '" + tokens[0] + "'", line_no);
        }
        break;
      case Section::links: {
        if (tokens.size() != 2 && tokens.size() != 3)
          throw ParseError("expected 'u v [w]', got " + std::to_string(tokens.size()) + " tokens", line_no);
        RawRecord r{resolve(tokens[0]), resolve(tokens[1]), 1.0, line_no};
        if (tokens.size() == 3) r.weight = parse_weight(tokens[2], line_no);
        out.push_back(std::move(r));
        break;
      }
      case Section::link_lists:
        if (tokens.size() < 2) throw ParseError("adjacency list line without neighbours", line_no);
        for (std::size_t i = 1; i < tokens.size(); ++i)
          out.push_back({resolve(tokens[0]), resolve(tokens[i]), 1.0, line_no});
        break;
    }
  }
  return out;
}

}  // namespace

std::vector<RawRecord> load_edge_list(std::istream& in, EdgeFormat format) {
  auto records = format == EdgeFormat::pajek ? read_pajek(in) : read_whitespace(in);
  if (in.bad()) throw ParseError("I/O error while reading edge list");
  if (records.empty()) throw EmptyGraphError("input contains no link records");
  return records;
}

std::vector<RawRecord> load_edge_file(const std::filesystem::path& path, EdgeFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return load_edge_list(in, format);
  } catch (const ParseError& e) {
    throw e.in_source(path.string());
  } catch (const EmptyGraphError& e) {
    throw EmptyGraphError(path.string() + ": " + e.what());
  }
}

}  // namespace wpe
