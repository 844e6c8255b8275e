// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef GRAPHCOUNT_IO_HPP
#define GRAPHCOUNT_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphcount/bayes.hpp"
#include "graphcount/graph.hpp"

namespace graphcount::io {

/// Malformed content (bad JSON, unknown labels, non-integer cells, ...).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The file could not be opened, read or written.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"vertices": [labels], "edges": [[label, label], ...]}. Duplicate edges,
/// self-loops and unknown labels are rejected.
UndirectedGraph parse_graph_json(const std::string& text);
std::string graph_to_json(const UndirectedGraph& g);
UndirectedGraph read_graph(const std::string& path);
void write_graph(const std::string& path, const UndirectedGraph& g);

struct CountTable {
  std::vector<std::string> labels;
  Observations rows;
};

/// Header row of vertex labels, then one row of non-negative integers per observation.
CountTable parse_csv(std::istream& in);
CountTable read_csv(const std::string& path);
void write_csv(std::ostream& out, const std::vector<std::string>& labels, const Observations& rows);

/// Reorders the columns of `table` to match `labels`; throws FormatError if the label sets differ.
Observations align_columns(const CountTable& table, const std::vector<std::string>& labels);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace graphcount::io

#endif  // GRAPHCOUNT_IO_HPP
