#pragma once

// Parsing of command-line values and JSON/CSV serialization of results.

#include <map>
#include <json.hpp>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dpplab/dpp.hpp"
#include "dpplab/ust.hpp"

namespace dpplab {

using Json = nlohmann::ordered_json;

/// "1,2.5,3" -> {1, 2.5, 3}. Empty string gives an empty list.
std::vector<double> parse_reals(const std::string& text);
std::vector<int> parse_ints(const std::string& text);
/// Rows separated by ';', entries by ','.
RMatrix parse_matrix(const std::string& text);
/// "1-2,2-3" -> oriented edges (1->2), (2->3).
std::vector<OrientedEdge> parse_edges(const std::string& text);

/// key=value lines; '#' starts a comment; blank lines ignored.
std::map<std::string, std::string> read_config(const std::string& path);

/// "1-3-4" style label of a subset.
std::string subset_label(const GroundSpace& space, const Configuration& c);

Json to_json(const ExactLaw& law, const GroundSpace& space);

std::string rational_string(const Rational& r);

/// Minimal CSV table.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool empty() const { return header.empty(); }
};

void write_csv(std::ostream& os, const Table& table);
Table law_table(const ExactLaw& law, const GroundSpace& space);

/// Shortest round-trip decimal form of a double.
std::string format_real(double x);

}  // namespace dpplab
