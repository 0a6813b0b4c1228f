#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "nearsq/expsum.hpp"

namespace nearsq {

using Json = nlohmann::ordered_json;

// Reports carry 12 significant digits so that regression diffs are stable
// without being sensitive to the last few ulps.
double round12(double x);
std::string fmt12(double x);

// A rounded JSON number; non-finite values become null.
Json num(double x);

enum class OutputFormat { Json, Csv, Table };

OutputFormat parse_format(const std::string& name);

// Scalar rendering used by CSV and table output.
std::string cell(const Json& value);

// Flatten nested objects into dotted keys; arrays of scalars are joined
// with ';', arrays of objects are dropped.
std::vector<std::pair<std::string, std::string>> flatten(const Json& doc);

// CSV with a header row and LF line endings. An array of objects becomes one
// row per element; a single object becomes one row.
void write_csv(std::ostream& out, const Json& doc);
std::string csv_row(const std::vector<std::string>& cells);

// Aligned plain-text rendering.
void write_table(std::ostream& out, const Json& doc);

void write_report(std::ostream& out, const Json& doc, OutputFormat format);

Json to_json(const BoundCheckRecord& record);

}  // namespace nearsq
