#include "scenopt/scenario_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "scenopt/config.hpp"
#include "scenopt/error.hpp"

namespace scenopt {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream s(line);
  while (std::getline(s, cur, sep)) parts.push_back(cur);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

// Data rows of a columnar file after checking the header.
std::vector<std::vector<std::string>> read_rows(std::istream& in, const std::string& header) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool seen_header = false;
  std::size_t line_no = 0;
  const std::size_t width = split(header, ',').size();
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      if (line != header) {
        throw ConfigError("line " + std::to_string(line_no) + ": expected header '" + header +
                          "', got '" + line + "'");
      }
      seen_header = true;
      continue;
    }
    auto parts = split(line, ',');
    if (parts.size() != width) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(width) + " fields, got " + std::to_string(parts.size()));
    }
    const auto index = parse_int(parts[0], "index on line " + std::to_string(line_no));
    if (index != static_cast<std::int64_t>(rows.size() + 1)) {
      throw ConfigError("line " + std::to_string(line_no) + ": indices must run 1, 2, ...");
    }
    rows.push_back(std::move(parts));
  }
  if (!seen_header) throw ConfigError("missing header '" + header + "'");
  return rows;
}

std::string join_indices(const InvariantSet& invariant) {
  std::string s;
  for (std::size_t k = 0; k < invariant.indices.size(); ++k) {
    if (k) s += ';';
    s += std::to_string(invariant.indices[k] + 1);
  }
  return s;
}

}  // namespace

void write_cover_scenarios(std::ostream& out, const CoverScenarios& set) {
  out << "# scenopt cover-scenarios v1\nindex,eta,radius\n";
  for (std::size_t i = 0; i < set.size(); ++i) {
    out << i + 1 << ',' << format_double(set.observation(i)) << ','
        << format_double(set.radius(i)) << '\n';
  }
}

CoverScenarios read_cover_scenarios(std::istream& in) {
  std::vector<double> eta, radii;
  for (const auto& row : read_rows(in, "index,eta,radius")) {
    eta.push_back(parse_double(row[1], "eta"));
    radii.push_back(parse_double(row[2], "radius"));
  }
  return CoverScenarios(std::move(eta), std::move(radii));
}

void write_control_scenarios(std::ostream& out, const ControlScenarios& set) {
  out << "# scenopt control-scenarios v1\nindex,a11,a12,a21,a22,radius\n";
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Mat2& a = set.observation(i);
    out << i + 1 << ',' << format_double(a(0, 0)) << ',' << format_double(a(0, 1)) << ','
        << format_double(a(1, 0)) << ',' << format_double(a(1, 1)) << ','
        << format_double(set.radius(i)) << '\n';
  }
}

ControlScenarios read_control_scenarios(std::istream& in) {
  std::vector<Mat2> mats;
  std::vector<double> radii;
  for (const auto& row : read_rows(in, "index,a11,a12,a21,a22,radius")) {
    Mat2 a;
    a << parse_double(row[1], "a11"), parse_double(row[2], "a12"), parse_double(row[3], "a21"),
        parse_double(row[4], "a22");
    mats.push_back(a);
    radii.push_back(parse_double(row[5], "radius"));
  }
  return ControlScenarios(std::move(mats), std::move(radii));
}

void write_cover_solution(std::ostream& out, const CoverSolution& sol,
                          const InvariantSet& invariant) {
  out << "# scenopt cover-solution v1\nfield,value\n"
      << "center," << format_double(sol.center) << '\n'
      << "half_width," << format_double(sol.half_width) << '\n'
      << "binding_low," << sol.binding_low + 1 << '\n'
      << "binding_high," << sol.binding_high + 1 << '\n'
      << "invariant_k," << invariant.cardinality() << '\n'
      << "invariant," << join_indices(invariant) << '\n';
}

void write_control_solution(std::ostream& out, const ControlSolution& sol,
                            const InvariantSet& invariant) {
  std::string inputs;
  for (std::size_t t = 0; t < sol.inputs.size(); ++t) {
    if (t) inputs += ';';
    inputs += format_double(sol.inputs[t]);
  }
  out << "# scenopt control-solution v1\nfield,value\n"
      << "objective," << format_double(sol.objective) << '\n'
      << "inputs," << inputs << '\n'
      << "invariant_k," << invariant.cardinality() << '\n'
      << "invariant," << join_indices(invariant) << '\n';
}

std::vector<std::pair<std::string, std::string>> read_solution_fields(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> fields;
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      if (line != "field,value") throw ConfigError("missing header 'field,value'");
      seen_header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("malformed solution line '" + line + "'");
    fields.emplace_back(line.substr(0, comma), line.substr(comma + 1));
  }
  return fields;
}

}  // namespace scenopt
