#include <cmath>
#include <cstdio>
#include <string>

#include "eqgirth/cli.hpp"

namespace eqgirth::cli {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep integral-valued reals recognizable as reals.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void write(const nlohmann::ordered_json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, val] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += nlohmann::ordered_json(key).dump();
        out += indent < 0 ? ":" : ": ";
        write(val, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& val : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write(val, indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    case nlohmann::ordered_json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

bool Report::all_pass() const {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

nlohmann::ordered_json report_to_json(const Report& report) {
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const auto& r : report.results) {
    results.push_back({{"name", r.name},
                       {"value", r.value},
                       {"expected", r.expected},
                       {"relation", r.relation},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass},
                       {"paper_ref", r.paper_ref}});
  }
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["subcommand"] = report.subcommand;
  j["config"] = report.config;
  j["results"] = std::move(results);
  j["details"] = report.details;
  j["pass"] = report.all_pass();
  j["wall_time_ms"] = report.wall_time_ms;
  return j;
}

std::string dump_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace eqgirth::cli
