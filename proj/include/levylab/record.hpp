#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/core.h>
#include <json.hpp>

#include "levylab/concentration.hpp"
#include "levylab/core.hpp"

namespace levylab::record {

using Json = nlohmann::ordered_json;

enum class Format { csv, json };

inline Format parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw invalid_spec_error(fmt::format("unknown output format '{}'", s));
}

/// {"experiment", "version", "seed"} followed by whatever the caller adds.
inline Json make(std::string_view experiment, std::uint64_t seed) {
  Json j;
  j["experiment"] = experiment;
  j["version"] = version;
  j["seed"] = seed;
  return j;
}

/// 17 significant digits, '.' decimal point, independent of the C locale.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

namespace detail {

inline void dump_json(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(k).dump();
        out += ':';
        dump_json(v, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_json(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_number(x) : "null";
      break;
    }
    default: out += j.dump();
  }
}

inline std::string scalar_to_csv(const Json& v) {
  switch (v.type()) {
    case Json::value_t::null: return "";
    case Json::value_t::string: {
      const auto s = v.get<std::string>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) {
        if (c == '"') q += '"';
        q += c;
      }
      return q + '"';
    }
    case Json::value_t::boolean: return v.get<bool>() ? "true" : "false";
    case Json::value_t::number_float: return format_number(v.get<double>());
    default: return v.dump();
  }
}

inline void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    std::string joined;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) joined += ';';
      joined += j[i].is_structured() ? j[i].dump() : scalar_to_csv(j[i]);
    }
    out.emplace_back(prefix, joined);
  } else {
    out.emplace_back(prefix, scalar_to_csv(j));
  }
}

}  // namespace detail

/// Compact JSON with every float printed to 17 significant digits.
inline std::string to_json(const Json& j) {
  std::string out;
  detail::dump_json(j, out);
  return out;
}

/// One JSON object per line.
inline std::string to_json_lines(const std::vector<Json>& records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json(r);
    out += '\n';
  }
  return out;
}

/// CSV with the union of (dotted) keys as header, in order of first appearance.
inline std::string to_csv(const std::vector<Json>& records) {
  std::vector<std::string> columns;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<std::pair<std::string, std::string>>> rows;
  for (const auto& r : records) {
    auto& row = rows.emplace_back();
    detail::flatten(r, "", row);
    for (const auto& [k, v] : row) {
      if (index.emplace(k, columns.size()).second) columns.push_back(k);
    }
  }
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    std::vector<std::string> cells(columns.size());
    for (const auto& [k, v] : row) cells[index.at(k)] = v;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out += ',';
      out += cells[c];
    }
    out += '\n';
  }
  return out;
}

inline std::string render(const std::vector<Json>& records, Format f) {
  return f == Format::csv ? to_csv(records) : to_json_lines(records);
}

/// Writes to a sibling temporary file, then renames over `path`.
inline void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw io_error(fmt::format("cannot open {} for writing", tmp.string()));
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw io_error(fmt::format("write to {} failed", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw io_error(fmt::format("cannot move {} to {}: {}", tmp.string(), path.string(), ec.message()));
}

// ---------------------------------------------------------------------------
// Concentration reports

inline std::vector<Json> concentration_records(const concentration::ConcentrationReport& report) {
  std::vector<Json> out;
  for (const auto& e : report.entries) {
    Json j;
    j["family"] = report.family_label;
    j["n"] = e.n;
    j["epsilon"] = e.epsilon;
    j["exact"] = e.exact_mass ? Json(*e.exact_mass) : Json(nullptr);
    j["mc"] = e.mc_mass;
    j["halfwidth"] = e.mc_halfwidth;
    j["trials"] = e.trials;
    j["seed"] = report.seed;
    j["version"] = version;
    out.push_back(std::move(j));
  }
  return out;
}

inline constexpr std::string_view plot_header = "n,epsilon,exact,mc,halfwidth,trials";

inline std::string plot_data_csv(const concentration::ConcentrationReport& report) {
  if (report.entries.empty()) throw insufficient_data_error("emit_plot_data: empty report");
  std::string out(plot_header);
  out += '\n';
  for (const auto& e : report.entries) {
    out += fmt::format("{},{},{},{},{},{}\n", e.n, format_number(e.epsilon),
                       e.exact_mass ? format_number(*e.exact_mass) : std::string{}, format_number(e.mc_mass),
                       format_number(e.mc_halfwidth), e.trials);
  }
  return out;
}

/// (n, eps, exact, mc, halfwidth, trials) rows for external plotting.
inline void emit_plot_data(const concentration::ConcentrationReport& report, const std::filesystem::path& path) {
  write_atomic(path, plot_data_csv(report));
}

namespace detail {

template <class T>
T parse_field(std::string_view s, int line) {
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw io_error(fmt::format("plot data line {}: cannot parse '{}'", line, s));
  }
  return v;
}

}  // namespace detail

/// Inverse of plot_data_csv; family label and seed are not part of the file.
inline concentration::ConcentrationReport parse_plot_data(std::string_view text) {
  concentration::ConcentrationReport report;
  std::istringstream is{std::string(text)};
  std::string line;
  if (!std::getline(is, line) || line != plot_header) throw io_error("plot data: missing or unexpected header");
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest = line;
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1)) {
      f.push_back(rest.substr(0, pos));
    }
    f.push_back(rest);
    if (f.size() != 6) throw io_error(fmt::format("plot data line {}: expected 6 fields", lineno));
    concentration::ConcentrationEntry e;
    e.n = detail::parse_field<int>(f[0], lineno);
    e.epsilon = detail::parse_field<double>(f[1], lineno);
    if (!f[2].empty()) e.exact_mass = detail::parse_field<double>(f[2], lineno);
    e.mc_mass = detail::parse_field<double>(f[3], lineno);
    e.mc_halfwidth = detail::parse_field<double>(f[4], lineno);
    e.trials = detail::parse_field<std::int64_t>(f[5], lineno);
    report.entries.push_back(e);
  }
  return report;
}

inline concentration::ConcentrationReport read_plot_data(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_plot_data(ss.str());
}

}  // namespace levylab::record
