#include "qsearch/record.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace qsearch {

const char* const kCsvSchemaComment = "# schema qsearch-report-v1";
const char* const kCsvHeader =
    "problem_id,parameters,formula_name,coupling_predicted,coupling_measured,"
    "eta_predicted,eta_best,success_at_predicted,success_at_best,"
    "primitive_ops,primitive_step_bound,classical_baseline,wall_time_ms";

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void sort_records(std::vector<ExperimentRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const ExperimentRecord& a, const ExperimentRecord& b) {
                     if (a.problem_id != b.problem_id) return a.problem_id < b.problem_id;
                     return a.parameters < b.parameters;
                   });
}

nlohmann::ordered_json json_of(const ExperimentRecord& r) {
  nlohmann::ordered_json j;
  j["problem_id"] = r.problem_id;
  j["parameters"] = r.parameters;
  j["formula_name"] = r.formula_name;
  j["coupling_predicted"] = r.coupling_predicted;
  j["coupling_measured"] = r.coupling_measured;
  j["eta_predicted"] = r.eta_predicted;
  j["eta_best"] = r.eta_best;
  j["success_at_predicted"] = r.success_at_predicted;
  j["success_at_best"] = r.success_at_best;
  j["primitive_ops"] = r.primitive_ops;
  j["primitive_step_bound"] = r.primitive_step_bound;
  j["classical_baseline"] = r.classical_baseline;
  j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

}  // namespace

std::string to_csv_row(const ExperimentRecord& r) {
  std::string row;
  row += r.problem_id;
  row += ',' + r.parameters;
  row += ',' + r.formula_name;
  row += ',' + format_real(r.coupling_predicted);
  row += ',' + format_real(r.coupling_measured);
  row += ',' + std::to_string(r.eta_predicted);
  row += ',' + std::to_string(r.eta_best);
  row += ',' + format_real(r.success_at_predicted);
  row += ',' + format_real(r.success_at_best);
  row += ',' + std::to_string(r.primitive_ops);
  row += ',' + format_real(r.primitive_step_bound);
  row += ',' + std::to_string(r.classical_baseline);
  row += ',' + std::to_string(r.wall_time_ms);
  return row;
}

std::string to_csv(std::vector<ExperimentRecord> records) {
  sort_records(records);
  std::string out = std::string(kCsvSchemaComment) + '\n' + kCsvHeader + '\n';
  for (const auto& r : records) out += to_csv_row(r) + '\n';
  return out;
}

std::string to_json(const ExperimentRecord& r) { return json_of(r).dump(2) + "\n"; }

std::string to_json(std::vector<ExperimentRecord> records) {
  sort_records(records);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) arr.push_back(json_of(r));
  return arr.dump(2) + "\n";
}

ExperimentRecord record_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ExperimentRecord r;
  r.problem_id = j.at("problem_id").get<std::string>();
  r.parameters = j.at("parameters").get<std::string>();
  r.formula_name = j.at("formula_name").get<std::string>();
  r.coupling_predicted = j.at("coupling_predicted").get<double>();
  r.coupling_measured = j.at("coupling_measured").get<double>();
  r.eta_predicted = j.at("eta_predicted").get<std::int64_t>();
  r.eta_best = j.at("eta_best").get<std::int64_t>();
  r.success_at_predicted = j.at("success_at_predicted").get<double>();
  r.success_at_best = j.at("success_at_best").get<double>();
  r.primitive_ops = j.at("primitive_ops").get<std::int64_t>();
  r.primitive_step_bound = j.at("primitive_step_bound").get<double>();
  r.classical_baseline = j.at("classical_baseline").get<std::int64_t>();
  r.wall_time_ms = j.at("wall_time_ms").get<std::int64_t>();
  return r;
}

std::vector<std::string> write_report(const std::vector<ExperimentRecord>& records,
                                      const std::string& dir, const std::string& stem) {
  if (records.empty()) throw std::runtime_error("write_report needs at least one record");
  std::filesystem::create_directories(dir);
  const std::string csv_path = (std::filesystem::path(dir) / (stem + ".csv")).string();
  const std::string json_path = (std::filesystem::path(dir) / (stem + ".json")).string();
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + csv_path);
    out << to_csv(records);
    if (!out.flush()) throw std::runtime_error("write failed: " + csv_path);
  }
  {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + json_path);
    out << to_json(records);
    if (!out.flush()) throw std::runtime_error("write failed: " + json_path);
  }
  return {csv_path, json_path};
}

}  // namespace qsearch
