#include "dpplab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace dpplab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  return out;
}

double to_real(const std::string& s) {
  // Also accepts a fraction "a/b".
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const double den = to_real(s.substr(slash + 1));
    if (den == 0.0) throw ArgumentError("zero denominator: '" + s + "'");
    return to_real(s.substr(0, slash)) / den;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ArgumentError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ArgumentError("not a number: '" + s + "'");
  return v;
}

int to_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ArgumentError("not an integer: '" + s + "'");
  return v;
}

}  // namespace

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) out.push_back(to_real(item));
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) out.push_back(to_int(item));
  return out;
}

RMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  for (const auto& row : split(text, ';')) {
    if (!row.empty()) rows.push_back(parse_reals(row));
  }
  if (rows.empty()) throw ArgumentError("empty matrix");
  RMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw ArgumentError("matrix rows differ in length");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<OrientedEdge> parse_edges(const std::string& text) {
  std::vector<OrientedEdge> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, '-');
    if (parts.size() != 2) throw ArgumentError("edge must look like u-v: '" + item + "'");
    out.push_back({to_int(parts[0]), to_int(parts[1])});
  }
  return out;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError(path + ":" + std::to_string(number) + ": expected key=value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::string subset_label(const GroundSpace& space, const Configuration& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += '-';
    s += space.label(c[i]);
  }
  return s;
}

Json to_json(const ExactLaw& law, const GroundSpace& space) {
  Json j;
  j["support_size"] = law.support_size;
  Json entries = Json::array();
  for (const auto& [subset, p] : law.probabilities) {
    entries.push_back({{"subset", subset_label(space, subset)}, {"probability", p}});
  }
  j["probabilities"] = std::move(entries);
  return j;
}

std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

void write_csv(std::ostream& os, const Table& table) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << quote(cells[i]);
    os << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

Table law_table(const ExactLaw& law, const GroundSpace& space) {
  Table t;
  t.header = {"subset", "probability"};
  for (const auto& [subset, p] : law.probabilities) t.rows.push_back({subset_label(space, subset), format_real(p)});
  return t;
}

std::string format_real(double x) {
  return Json(x).dump();
}

}  // namespace dpplab
