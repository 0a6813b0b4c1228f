#include "nearsq/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "nearsq/error.hpp"

namespace nearsq {

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "table") return OutputFormat::Table;
  fail(ErrorKind::InvalidArgument, "unknown output format '" + name + "'");
}

std::string cell(const Json& value) {
  if (value.is_null()) return "";
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_number_unsigned()) return std::to_string(value.get<std::uint64_t>());
  if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
  if (value.is_number_float()) return fmt12(value.get<double>());
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

namespace {

void flatten_into(const Json& doc, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const Json& v = it.value();
    if (v.is_object()) {
      flatten_into(v, key, out);
    } else if (v.is_array()) {
      if (std::any_of(v.begin(), v.end(), [](const Json& e) { return e.is_structured(); })) continue;
      std::string joined;
      for (std::size_t i = 0; i < v.size(); ++i) joined += (i ? ";" : "") + cell(v[i]);
      out.emplace_back(key, joined);
    } else {
      out.emplace_back(key, cell(v));
    }
  }
}

std::vector<std::vector<std::pair<std::string, std::string>>> rows_of(const Json& doc) {
  std::vector<std::vector<std::pair<std::string, std::string>>> rows;
  if (doc.is_array()) {
    for (const auto& e : doc) rows.push_back(flatten(e));
  } else {
    rows.push_back(flatten(doc));
  }
  return rows;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> flatten(const Json& doc) {
  std::vector<std::pair<std::string, std::string>> out;
  if (doc.is_object()) flatten_into(doc, "", out);
  else out.emplace_back("value", cell(doc));
  return out;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") == std::string::npos) {
      line += c;
    } else {
      line += '"';
      for (char ch : c) {
        if (ch == '"') line += '"';
        line += ch;
      }
      line += '"';
    }
  }
  return line;
}

void write_csv(std::ostream& out, const Json& doc) {
  const auto rows = rows_of(doc);
  if (rows.empty()) return;
  std::vector<std::string> header;
  for (const auto& [k, v] : rows.front()) header.push_back(k);
  out << csv_row(header) << '\n';
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    for (const auto& [k, v] : row) cells.push_back(v);
    out << csv_row(cells) << '\n';
  }
}

void write_table(std::ostream& out, const Json& doc) {
  const auto rows = rows_of(doc);
  if (rows.empty()) return;
  if (rows.size() == 1) {
    std::size_t width = 0;
    for (const auto& [k, v] : rows.front()) width = std::max(width, k.size());
    for (const auto& [k, v] : rows.front()) out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
    return;
  }
  const std::size_t ncol = rows.front().size();
  std::vector<std::size_t> width(ncol, 0);
  for (std::size_t c = 0; c < ncol; ++c) width[c] = rows.front()[c].first.size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < ncol && c < row.size(); ++c) width[c] = std::max(width[c], row[c].second.size());
  auto line = [&](auto get) {
    for (std::size_t c = 0; c < ncol; ++c) {
      const std::string s = get(c);
      out << s << (c + 1 < ncol ? std::string(width[c] - s.size() + 2, ' ') : "");
    }
    out << '\n';
  };
  line([&](std::size_t c) { return rows.front()[c].first; });
  for (const auto& row : rows) line([&](std::size_t c) { return c < row.size() ? row[c].second : std::string(); });
}

void write_report(std::ostream& out, const Json& doc, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: out << doc.dump(2) << '\n'; break;
    case OutputFormat::Csv: write_csv(out, doc); break;
    case OutputFormat::Table: write_table(out, doc); break;
  }
}

Json to_json(const BoundCheckRecord& record) {
  Json j;
  j["lemma"] = to_string(record.lemma);
  Json params = Json::object();
  for (const auto& [k, v] : record.params) params[k] = num(v);
  j["params"] = params;
  j["measured"] = num(record.measured);
  j["bound"] = num(record.bound);
  j["ratio"] = num(record.ratio);
  return j;
}

}  // namespace nearsq
