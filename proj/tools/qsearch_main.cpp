// qsearch: amplitude-amplification experiment harness.
//
// Subcommands: run, sweep, verify, report. Exit codes: 0 success, 1 internal
// failure or failed self-check, 2 validation error, 3 refusal (variants with
// no known construction).

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qsearch/amplify.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/problems.hpp"
#include "qsearch/program.hpp"
#include "qsearch/record.hpp"
#include "qsearch/verify.hpp"

namespace fs = std::filesystem;
using namespace qsearch;

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("QSEARCH_OUT");
  return env && *env ? env : ".";
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string join(const std::vector<std::string>& items, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

BasisIndex parse_u64(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size())
    throw ArgumentError(what + ": '" + s + "' is not a non-negative integer");
  return static_cast<BasisIndex>(v);
}

std::vector<BasisIndex> parse_index_list(const std::vector<std::string>& items,
                                         const std::string& what) {
  std::vector<BasisIndex> out;
  for (const std::string& item : items)
    for (const std::string& piece : split(item, ','))
      if (!piece.empty()) out.push_back(parse_u64(piece, what));
  if (out.empty()) throw ArgumentError(what + ": empty list");
  return out;
}

// Everything both `run` and `sweep` accept. Lists arrive as comma-separated
// values; scalar presence is tracked with std::optional.
struct ProblemArgs {
  std::string problem;
  int n = -1;
  int k = -1;
  int nx = -1;
  int ny = -1;
  int d = -1;
  int axis_qubits = -1;
  std::optional<std::uint64_t> r;
  std::optional<std::uint64_t> source;
  std::optional<std::uint64_t> t1;
  std::optional<std::uint64_t> t2;
  std::vector<std::string> target;   // scalar or list depending on problem
  std::vector<std::string> sources;
  std::vector<std::string> targets;
  std::vector<std::string> g;
  std::vector<std::string> levels;
  std::string program_path;
  std::string out_dir = default_out_dir();
  std::uint64_t seed = 20260816;
  std::string config_path;
};

void add_problem_options(CLI::App* cmd, ProblemArgs& a) {
  cmd->add_option("problem", a.problem,
                  "one of: exhaustive, nearby, multi-target, multi-source, "
                  "symmetric, composite, twodim, rect, multidim, twodim-multi")
      ->required();
  cmd->add_option("--n", a.n, "qubit count of the search register");
  cmd->add_option("--k", a.k, "Hamming distance from the reference word");
  cmd->add_option("--nx", a.nx, "x-register qubit count");
  cmd->add_option("--ny", a.ny, "y-register qubit count");
  cmd->add_option("--d", a.d, "number of axes");
  cmd->add_option("--axis-qubits", a.axis_qubits, "qubits per axis");
  cmd->add_option("--r", a.r, "reference word");
  cmd->add_option("--source", a.source, "source basis state");
  cmd->add_option("--t1", a.t1, "target x coordinate");
  cmd->add_option("--t2", a.t2, "target y coordinate");
  cmd->add_option("--target", a.target,
                  "target basis state (multidim: one coordinate per axis)")
      ->delimiter(',');
  cmd->add_option("--sources", a.sources, "source basis states")
      ->delimiter(',');
  cmd->add_option("--targets", a.targets,
                  "target basis states (twodim-multi: x:y pairs)")
      ->delimiter(',');
  cmd->add_option("--g", a.g, "marked x values of the helper predicate")
      ->delimiter(',');
  cmd->add_option("--levels", a.levels,
                  "multidim level sets, '/' between levels, ',' within")
      ->delimiter(',');
  cmd->add_option("--program", a.program_path,
                  "path to a program text file defining U");
  cmd->add_option("--out", a.out_dir, "output directory")
      ->capture_default_str();
  cmd->add_option("--seed", a.seed, "seed for randomized self-checks")
      ->capture_default_str();
  cmd->add_option("--config", a.config_path,
                  "flat key=value config file; command-line flags win");
}

// Applies config-file pairs to the options the command line left unset.
// Lines are `key=value`; blank lines and '#' comments are skipped.
void apply_config(CLI::App* cmd, ProblemArgs& a, std::int64_t* eta_max) {
  if (a.config_path.empty()) return;
  std::ifstream in(a.config_path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open config file: " + a.config_path);

  const auto trim = [](std::string s) {
    const auto from = s.find_first_not_of(" \t\r");
    const auto to = s.find_last_not_of(" \t\r");
    return from == std::string::npos ? std::string()
                                     : s.substr(from, to - from + 1);
  };
  const auto flag_given = [&](const char* name) {
    return cmd->count(name) > 0;
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ArgumentError(a.config_path + ":" + std::to_string(line_no) +
                          ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    const auto set_int = [&](int& slot, const char* flag) {
      if (!flag_given(flag))
        slot = static_cast<int>(parse_u64(value, flag));
    };
    const auto set_scalar = [&](std::optional<std::uint64_t>& slot,
                                const char* flag) {
      if (!flag_given(flag)) slot = parse_u64(value, flag);
    };
    const auto set_list = [&](std::vector<std::string>& slot,
                              const char* flag) {
      if (!flag_given(flag)) slot = {value};
    };

    if (key == "problem") {
      if (!flag_given("problem")) a.problem = value;
    } else if (key == "n") {
      set_int(a.n, "--n");
    } else if (key == "k") {
      set_int(a.k, "--k");
    } else if (key == "nx") {
      set_int(a.nx, "--nx");
    } else if (key == "ny") {
      set_int(a.ny, "--ny");
    } else if (key == "d") {
      set_int(a.d, "--d");
    } else if (key == "axis-qubits" || key == "axis_qubits") {
      set_int(a.axis_qubits, "--axis-qubits");
    } else if (key == "r") {
      set_scalar(a.r, "--r");
    } else if (key == "source") {
      set_scalar(a.source, "--source");
    } else if (key == "t1") {
      set_scalar(a.t1, "--t1");
    } else if (key == "t2") {
      set_scalar(a.t2, "--t2");
    } else if (key == "target") {
      set_list(a.target, "--target");
    } else if (key == "sources") {
      set_list(a.sources, "--sources");
    } else if (key == "targets") {
      set_list(a.targets, "--targets");
    } else if (key == "g") {
      set_list(a.g, "--g");
    } else if (key == "levels") {
      set_list(a.levels, "--levels");
    } else if (key == "program") {
      if (!flag_given("--program")) a.program_path = value;
    } else if (key == "out") {
      if (!flag_given("--out")) a.out_dir = value;
    } else if (key == "seed") {
      if (!flag_given("--seed")) a.seed = parse_u64(value, "--seed");
    } else if (key == "eta-max" || key == "eta_max") {
      if (eta_max == nullptr)
        throw ArgumentError("eta-max only applies to the sweep subcommand");
      if (!flag_given("--eta-max"))
        *eta_max = static_cast<std::int64_t>(parse_u64(value, "--eta-max"));
    } else {
      throw ArgumentError(a.config_path + ":" + std::to_string(line_no) +
                          ": unknown key '" + key + "'");
    }
  }
}

int require_n(int v, const char* flag) {
  if (v < 1)
    throw ArgumentError(std::string("missing or invalid ") + flag +
                        " (need an integer >= 1)");
  return v;
}

std::uint64_t require_scalar(const std::optional<std::uint64_t>& v,
                             const char* flag) {
  if (!v) throw ArgumentError(std::string("missing ") + flag);
  return *v;
}

std::uint64_t scalar_target(const ProblemArgs& a) {
  if (a.target.empty()) throw ArgumentError("missing --target");
  const std::vector<BasisIndex> v = parse_index_list(a.target, "--target");
  if (v.size() != 1)
    throw ArgumentError("--target expects a single basis state here");
  return v.front();
}

UnitaryProgram load_program(const std::string& path) {
  if (path.empty())
    throw ArgumentError("this problem needs --program FILE (program text)");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open program file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_program(buf.str());
}

ProblemInstance make_instance(const ProblemArgs& a) {
  const std::string& p = a.problem;
  if (p == "exhaustive") {
    Exhaustive inst;
    inst.n = require_n(a.n, "--n");
    inst.t = scalar_target(a);
    inst.s = a.source.value_or(0);
    return inst;
  }
  if (p == "nearby") {
    Nearby inst;
    inst.n = require_n(a.n, "--n");
    inst.k = require_n(a.k, "--k");
    inst.r = require_scalar(a.r, "--r");
    inst.t = scalar_target(a);
    return inst;
  }
  if (p == "multi-target") {
    MultiTarget inst;
    inst.n = require_n(a.n, "--n");
    inst.targets = BasisSet(parse_index_list(a.targets, "--targets"));
    return inst;
  }
  if (p == "multi-source") {
    MultiSource inst;
    inst.n = require_n(a.n, "--n");
    inst.k = require_n(a.k, "--k");
    inst.sources = BasisSet(parse_index_list(a.sources, "--sources"));
    inst.t = scalar_target(a);
    return inst;
  }
  if (p == "symmetric") {
    SymmetricMulti inst{load_program(a.program_path),
                        BasisSet(parse_index_list(a.sources, "--sources")),
                        BasisSet(parse_index_list(a.targets, "--targets"))};
    return inst;
  }
  if (p == "composite") {
    CompositeV inst{require_n(a.n, "--n"),
                    BasisSet(parse_index_list(a.sources, "--sources")),
                    scalar_target(a), load_program(a.program_path)};
    if (inst.u.n_qubits() != inst.n)
      throw ArgumentError("--n disagrees with the program's qubit count");
    return inst;
  }
  if (p == "twodim" || p == "rect") {
    const int nx = require_n(a.nx, "--nx");
    const int ny = require_n(a.ny, "--ny");
    BasisSet g(parse_index_list(a.g, "--g"));
    const std::uint64_t t1 = require_scalar(a.t1, "--t1");
    const std::uint64_t t2 = require_scalar(a.t2, "--t2");
    if (p == "twodim") return TwoDim{nx, ny, std::move(g), t1, t2};
    return Rectangular{nx, ny, std::move(g), t1, t2};
  }
  if (p == "multidim") {
    MultiDim inst;
    inst.d = require_n(a.d, "--d");
    inst.axis_qubits = require_n(a.axis_qubits, "--axis-qubits");
    if (a.levels.empty()) throw ArgumentError("missing --levels");
    for (const std::string& level : split(join(a.levels), '/')) {
      std::vector<BasisIndex> members;
      for (const std::string& piece : split(level, ','))
        if (!piece.empty()) members.push_back(parse_u64(piece, "--levels"));
      inst.levels.push_back(BasisSet(std::move(members)));
    }
    inst.target = parse_index_list(a.target, "--target");
    return inst;
  }
  if (p == "twodim-multi") {
    TwoDimMultiTarget inst;
    inst.nx = require_n(a.nx, "--nx");
    inst.ny = require_n(a.ny, "--ny");
    inst.g = BasisSet(parse_index_list(a.g, "--g"));
    if (a.targets.empty()) throw ArgumentError("missing --targets");
    for (const std::string& item : a.targets)
      for (const std::string& piece : split(item, ',')) {
        if (piece.empty()) continue;
        const std::vector<std::string> xy = split(piece, ':');
        if (xy.size() != 2)
          throw ArgumentError("--targets expects x:y pairs, got '" + piece +
                              "'");
        inst.targets.emplace_back(parse_u64(xy[0], "--targets x"),
                                  parse_u64(xy[1], "--targets y"));
      }
    return inst;
  }
  throw ArgumentError(
      "unknown problem '" + p +
      "'; expected one of: exhaustive, nearby, multi-target, multi-source, "
      "symmetric, composite, twodim, rect, multidim, twodim-multi");
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("short write to " + path.string());
}

// Appends one row to the shared summary CSV, creating it with its header
// first. Appends are line-buffered single writes.
void append_summary(const fs::path& dir, const ExperimentRecord& rec) {
  const fs::path path = dir / "summary.csv";
  const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  std::string chunk;
  if (fresh) chunk = std::string(kCsvSchemaComment) + '\n' + kCsvHeader + '\n';
  chunk += to_csv_row(rec) + '\n';
  out << chunk;
}

int do_run(const ProblemArgs& a) {
  const ProblemInstance inst = make_instance(a);
  const ExperimentRecord rec = solve(inst);

  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);
  const fs::path json_path =
      dir / (rec.problem_id + "-" + hex16(fnv1a(rec.parameters)) + ".json");
  write_file(json_path, to_json(rec) + "\n");
  append_summary(dir, rec);

  std::cout << rec.problem_id << ": coupling_measured "
            << format_real(rec.coupling_measured) << ", eta_predicted "
            << rec.eta_predicted << ", eta_best " << rec.eta_best
            << ", success_at_best " << format_real(rec.success_at_best)
            << "\nrecord: " << json_path.string() << "\n";
  return 0;
}

int do_sweep(const ProblemArgs& a, std::int64_t eta_max_flag) {
  const ProblemInstance inst = make_instance(a);
  const BuiltProblem bp = build_problem(inst);
  const CouplingReport report = coupling_report(bp.spec);
  const IterationPlan plan = iteration_count(report.value);

  const std::int64_t eta_max =
      eta_max_flag >= 0 ? eta_max_flag : 2 * plan.eta;
  if (eta_max > 4 * plan.eta)
    throw ArgumentError("sweep range " + std::to_string(eta_max) +
                        " exceeds 4 x predicted eta (" +
                        std::to_string(4 * plan.eta) + ")");

  std::string csv = "# schema qsearch-sweep-v1\n";
  csv += "eta,success_measured,success_analytic_2x2\n";
  std::int64_t peak_eta = 0;
  double peak = -1.0;
  for (std::int64_t eta = 0; eta <= eta_max; ++eta) {
    const double measured = run_amplification(bp.spec, eta).success;
    const double analytic = predicted_success(report.complex_value, eta);
    csv += std::to_string(eta) + ',' + format_real(measured) + ',' +
           format_real(analytic) + '\n';
    if (measured > peak + 1e-12) {
      peak = measured;
      peak_eta = eta;
    }
  }

  fs::create_directories(a.out_dir);
  const fs::path path =
      fs::path(a.out_dir) /
      ("sweep-" + bp.problem_id + "-" + hex16(fnv1a(bp.parameters)) + ".csv");
  write_file(path, csv);
  std::cout << bp.problem_id << ": swept eta 0.." << eta_max << ", peak at eta "
            << peak_eta << " with success " << format_real(peak)
            << "\nsweep: " << path.string() << "\n";
  return 0;
}

int do_verify(std::uint64_t seed) {
  const std::vector<VerifyCheck> checks = run_verify(seed);
  std::size_t passed = 0;
  for (const VerifyCheck& c : checks) {
    if (c.pass) {
      ++passed;
      std::cout << "[" << c.module << "] " << c.name << ": PASS\n";
    } else {
      std::cout << "[" << c.module << "] " << c.name << ": FAIL — " << c.detail
                << "\n";
    }
  }
  std::cout << "passed " << passed << "/" << checks.size() << " checks\n";
  return passed == checks.size() ? 0 : 1;
}

int do_report(const std::string& in_dir, const std::string& out_dir) {
  std::vector<fs::path> files;
  if (!fs::is_directory(in_dir))
    throw ArgumentError("report input is not a directory: " + in_dir);
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    if (!entry.is_regular_file()) continue;
    const fs::path& path = entry.path();
    if (path.extension() != ".json") continue;
    if (path.filename() == "report.json") continue;
    files.push_back(path);
  }
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw ArgumentError("no record JSON files found under " + in_dir);

  std::vector<ExperimentRecord> records;
  for (const fs::path& path : files) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      records.push_back(record_from_json(buf.str()));
    } catch (const std::exception& e) {
      throw ArgumentError("bad record file " + path.string() + ": " +
                          e.what());
    }
  }

  fs::create_directories(out_dir);
  const std::vector<std::string> written = write_report(records, out_dir);
  for (const std::string& path : written) std::cout << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"amplitude-amplification experiment harness"};
  app.require_subcommand(1);

  ProblemArgs run_args;
  CLI::App* run_cmd = app.add_subcommand("run", "execute one problem instance");
  add_problem_options(run_cmd, run_args);

  ProblemArgs sweep_args;
  std::int64_t eta_max = -1;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "success probability across eta values");
  add_problem_options(sweep_cmd, sweep_args);
  sweep_cmd->add_option("--eta-max", eta_max,
                        "sweep 0..eta-max (default 2x predicted eta, capped "
                        "at 4x)");

  std::uint64_t verify_seed = 20260816;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the built-in self-checks");
  verify_cmd->add_option("--seed", verify_seed, "self-check seed")
      ->capture_default_str();

  std::string report_in;
  std::string report_out = default_out_dir();
  CLI::App* report_cmd = app.add_subcommand(
      "report", "collect record JSON files into report.csv/report.json");
  report_cmd->add_option("--in", report_in, "directory of record JSON files");
  report_cmd->add_option("--out", report_out, "output directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) {
      apply_config(run_cmd, run_args, nullptr);
      return do_run(run_args);
    }
    if (sweep_cmd->parsed()) {
      apply_config(sweep_cmd, sweep_args, &eta_max);
      return do_sweep(sweep_args, eta_max);
    }
    if (verify_cmd->parsed()) return do_verify(verify_seed);
    if (report_cmd->parsed())
      return do_report(report_in.empty() ? report_out : report_in, report_out);
    return 2;
  } catch (const RefusalError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
