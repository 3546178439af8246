#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qsearch {

// One experiment's outcome. Serialized as one CSV row (13 columns, schema
// below) and one JSON object.
struct ExperimentRecord {
  std::string problem_id;
  std::string parameters;    // canonical "key=value;key=value" string
  std::string formula_name;  // which step-count formula the driver predicts
  double coupling_predicted = 0.0;
  double coupling_measured = 0.0;
  std::int64_t eta_predicted = 0;
  std::int64_t eta_best = 0;
  double success_at_predicted = 0.0;
  double success_at_best = 0.0;
  std::int64_t primitive_ops = 0;
  double primitive_step_bound = 0.0;  // the formula's value at these sizes
  std::int64_t classical_baseline = 0;
  std::int64_t wall_time_ms = 0;
};

// Fixed CSV schema, version-stamped in a leading comment line. Reals carry
// 17 significant digits, '.' decimal separator, LF line endings. Rows are
// sorted by (problem_id, parameters). Byte-identical for identical records.
extern const char* const kCsvSchemaComment;  // "# schema qsearch-report-v1"
extern const char* const kCsvHeader;

std::string format_real(double v);  // %.17g

std::string to_csv_row(const ExperimentRecord& r);
std::string to_csv(std::vector<ExperimentRecord> records);  // sorted, full file

std::string to_json(const ExperimentRecord& r);               // single object
std::string to_json(std::vector<ExperimentRecord> records);   // sorted array

ExperimentRecord record_from_json(const std::string& text);

// Writes the sorted CSV (<stem>.csv) and JSON (<stem>.json) files under dir.
// Returns the two paths written. Throws std::runtime_error naming the path on
// I/O failure.
std::vector<std::string> write_report(const std::vector<ExperimentRecord>& records,
                                      const std::string& dir,
                                      const std::string& stem = "report");

}  // namespace qsearch
