// Apache License, Version 2.0, refer to LICENSE.txt

#include "graphcount/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace graphcount::io {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

int parse_count(const std::string& cell, int line_no) {
  int value = 0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (cell.empty() || ec != std::errc() || ptr != end) {
    throw FormatError("line " + std::to_string(line_no) + ": '" + cell + "' is not an integer");
  }
  if (value < 0) throw FormatError("line " + std::to_string(line_no) + ": negative count");
  return value;
}

}  // namespace

UndirectedGraph parse_graph_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("graph JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw FormatError("graph JSON needs a \"vertices\" array");
  }
  std::vector<std::string> labels;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw FormatError("vertex labels must be strings");
    labels.push_back(v.get<std::string>());
  }
  if (labels.empty()) throw FormatError("graph needs at least one vertex");
  UndirectedGraph g;
  try {
    g = UndirectedGraph(labels);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  const json edges = doc.value("edges", json::array());
  if (!edges.is_array()) throw FormatError("\"edges\" must be an array");
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw FormatError("each edge must be a pair of labels");
    }
    const std::string a = e[0].get<std::string>();
    const std::string b = e[1].get<std::string>();
    int ia = 0;
    int ib = 0;
    try {
      ia = g.index_of(a);
      ib = g.index_of(b);
    } catch (const std::invalid_argument&) {
      throw FormatError("edge [" + a + ", " + b + "] uses an unknown vertex label");
    }
    if (ia == ib) throw FormatError("self-loop on vertex " + a);
    if (g.has_edge(ia, ib)) throw FormatError("duplicate edge [" + a + ", " + b + "]");
    g.add_edge(ia, ib);
  }
  return g;
}

std::string graph_to_json(const UndirectedGraph& g) {
  json doc;
  doc["vertices"] = g.labels();
  doc["edges"] = json::array();
  for (auto [a, b] : g.edges()) doc["edges"].push_back({g.label(a), g.label(b)});
  return doc.dump(2) + "\n";
}

UndirectedGraph read_graph(const std::string& path) { return parse_graph_json(read_file(path)); }

void write_graph(const std::string& path, const UndirectedGraph& g) { write_file(path, graph_to_json(g)); }

CountTable parse_csv(std::istream& in) {
  CountTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw FormatError("CSV is empty");
  table.labels = split_row(trim(line));
  std::set<std::string> unique(table.labels.begin(), table.labels.end());
  if (unique.size() != table.labels.size() || unique.count("")) {
    throw FormatError("CSV header labels must be unique and non-empty");
  }
  std::vector<std::vector<int>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_row(trim(line));
    if (cells.size() != table.labels.size()) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(table.labels.size()) +
                        " cells");
    }
    std::vector<int> row;
    for (const auto& c : cells) row.push_back(parse_count(c, line_no));
    rows.push_back(std::move(row));
  }
  table.rows.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(table.labels.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      table.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return table;
}

CountTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path);
  return parse_csv(in);
}

void write_csv(std::ostream& out, const std::vector<std::string>& labels, const Observations& rows) {
  for (std::size_t j = 0; j < labels.size(); ++j) out << (j ? "," : "") << labels[j];
  out << "\n";
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) out << (j ? "," : "") << rows(i, j);
    out << "\n";
  }
}

Observations align_columns(const CountTable& table, const std::vector<std::string>& labels) {
  if (table.labels.size() != labels.size()) throw FormatError("CSV columns do not match the graph vertices");
  Observations out(table.rows.rows(), static_cast<Eigen::Index>(labels.size()));
  for (std::size_t j = 0; j < labels.size(); ++j) {
    std::size_t src = 0;
    while (src < table.labels.size() && table.labels[src] != labels[j]) ++src;
    if (src == table.labels.size()) throw FormatError("CSV has no column for vertex " + labels[j]);
    out.col(static_cast<Eigen::Index>(j)) = table.rows.col(static_cast<Eigen::Index>(src));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw FileError("cannot read " + path);
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write " + path);
  out << content;
  if (!out) throw FileError("cannot write " + path);
}

}  // namespace graphcount::io
