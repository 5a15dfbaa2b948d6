#include "polycap/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "polycap/acceptance.hpp"
#include "polycap/approx.hpp"
#include "polycap/bounds.hpp"
#include "polycap/capacity.hpp"
#include "polycap/errors.hpp"
#include "polycap/exact_oracles.hpp"
#include "polycap/hyperbolicity.hpp"
#include "polycap/io.hpp"
#include "polycap/parallel.hpp"

#ifndef POLYCAP_VERSION
#define POLYCAP_VERSION "0.0.0"
#endif

namespace polycap::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kCapacityVarCap = 64;
constexpr int kApproxKCap = 16;
constexpr int kHyperbolicDegreeCap = 40;
constexpr std::uint64_t kDefaultSuiteSeed = 20240601;

struct CommandName {
  Command command;
  const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::capacity, "capacity"}, {Command::permanent, "permanent"},
    {Command::mixed_disc, "mixed-disc"}, {Command::bound, "bound"},
    {Command::approx, "approx"},     {Command::check_hyperbolic, "check-hyperbolic"},
    {Command::scale, "scale"},       {Command::suite, "suite"},
};

// Float fields are decimal strings in exact mode so no digits are lost
// to a JSON reader's double parsing.
class Emitter {
 public:
  explicit Emitter(ScalarMode mode) : exact_(mode == ScalarMode::exact) {}

  Json num(double v) const {
    if (exact_ || !std::isfinite(v)) return to_decimal_string(v);
    return v;
  }
  Json vec(const std::vector<double>& v) const {
    Json a = Json::array();
    for (double x : v) a.push_back(num(x));
    return a;
  }
  Json mat(const RealMatrix& m) const {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(num(m(i, j)));
      rows.push_back(std::move(row));
    }
    return rows;
  }
  Json rational(const Rational& r) const {
    return Json{{"exact", polycap::to_string(r)}, {"decimal", to_decimal_string(r.get_d())}};
  }

 private:
  bool exact_;
};

Ordering parse_ordering(const std::string& text, int n) {
  if (text == "as-given") return Ordering::as_given();
  if (text == "greedy") return Ordering::greedy();
  std::vector<int> perm;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      perm.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("ordering must be as-given, greedy or a comma-separated permutation, got '" + text + "'");
    }
  }
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
    if (sorted[i] != i || static_cast<int>(sorted.size()) != n) {
      throw InputError("ordering '" + text + "' is not a permutation of 0.." + std::to_string(n - 1));
    }
  }
  return Ordering::explicit_order(std::move(perm));
}

Json capacity_json(const CapacityResult& r, const Emitter& e) {
  return Json{{"value", e.num(r.value)},
              {"minimizer", e.vec(r.minimizer)},
              {"iterations", r.iterations},
              {"gradient_norm", e.num(r.gradient_norm)},
              {"status", polycap::to_string(r.status)}};
}

Json diagnostic_json(const DiagnosticReport& r, const Emitter& e) {
  return Json{{"check", r.check},
              {"passed", r.passed},
              {"trials", r.trials},
              {"worst_margin", e.num(r.worst_margin)},
              {"witness", e.vec(r.witness)}};
}

CapacityOptions capacity_options(const RunConfig& c) {
  CapacityOptions o;
  o.tol = c.tol;
  o.max_iter = c.max_iter.value_or(o.max_iter);
  return o;
}

void require_input(const RunConfig& c) {
  if (c.input_path.empty()) throw InputError(to_string(c.command) + " needs --input");
}

Json run_capacity(const RunConfig& c, const Polynomial& poly, const Emitter& e) {
  if (n_vars(poly) > kCapacityVarCap) {
    throw ResourceError("capacity refused: n = " + std::to_string(n_vars(poly)) + " exceeds cap " +
                        std::to_string(kCapacityVarCap));
  }
  PolynomialOracle p(poly);
  Json result = capacity_json(capacity_minimize(p, capacity_options(c)), e);
  result["oracle_calls"] = p.call_count();
  return result;
}

Json run_permanent(const RunConfig& c, const RationalMatrix& a, const Emitter& e) {
  Json result{{"n", a.rows()}, {"method", "ryser"}};
  if (c.mode == ScalarMode::exact) {
    result["permanent"] = e.rational(permanent_ryser(a));
  } else {
    result["permanent"] = e.num(permanent_ryser(to_real(a)));
  }
  return result;
}

Json run_mixed_disc(const RunConfig& c, const Polynomial& poly, const Emitter& e) {
  const auto* det = std::get_if<DeterminantalPolynomial>(&poly);
  if (!det) throw InputError("mixed-disc needs a determinantal input");
  Json result{{"n", det->n_vars()}, {"method", "polarization"}};
  if (c.mode == ScalarMode::exact) {
    result["mixed_discriminant"] = e.rational(mixed_discriminant<Rational>(det->matrices()));
  } else {
    result["mixed_discriminant"] = e.num(mixed_discriminant<double>(det->real_matrices()));
  }
  return result;
}

Json run_bound(const RunConfig& c, const Polynomial& poly, const Emitter& e) {
  BoundOptions options;
  options.ordering = parse_ordering(c.ordering, n_vars(poly));
  options.capacity = capacity_options(c);
  const BoundReport r = bound_report(poly, options);
  Json result{{"n", r.n},
              {"capacity", e.num(r.capacity)},
              {"lower_bound_vdw", e.num(r.lower_bound_vdw)},
              {"lower_bound_rank", e.num(r.lower_bound_rank)}};
  result["lower_bound_uniform_rank"] = r.lower_bound_uniform_rank ? e.num(*r.lower_bound_uniform_rank) : Json();
  if (r.exact_value_rational) {
    result["exact_value"] = e.rational(*r.exact_value_rational);
  } else if (r.exact_value) {
    result["exact_value"] = e.num(*r.exact_value);
  } else {
    result["exact_value"] = nullptr;
  }
  result["vdw_equality"] = r.vdw_equality();
  result["rank_equality"] = r.rank_equality();
  result["ranks"] = r.ranks;
  result["G"] = r.g;
  result["ordering_used"] = r.ordering_used;
  result["ordering_kind"] = r.ordering_kind;
  Json provenance = Json::object();
  for (const auto& [key, value] : r.provenance) provenance[key] = value;
  result["provenance"] = std::move(provenance);
  return result;
}

Json run_approx(const RunConfig& c, const Polynomial& poly, const Emitter& e) {
  const int n = n_vars(poly);
  const int k = c.k.value_or(0);
  if (k < 0 || (k > 0 && k >= n)) throw InputError("--k must satisfy 0 <= k < n = " + std::to_string(n));
  if (k > kApproxKCap) {
    throw ResourceError("approx refused: k = " + std::to_string(k) + " needs 2^k evaluations per call; cap is " +
                        std::to_string(kApproxKCap));
  }
  if (n > kCapacityVarCap) throw ResourceError("approx refused: n exceeds cap " + std::to_string(kCapacityVarCap));
  PolynomialOracle p(poly);
  const ApproxResult r = improved_estimate(p, k, capacity_options(c));
  Json result{{"estimate", e.num(r.estimate)},
              {"guarantee_factor", e.num(r.guarantee_factor)},
              {"oracle_calls", r.oracle_calls},
              {"k", r.k_used},
              {"capacity", capacity_json(r.capacity_result, e)}};
  if (k > 0) {
    const PkOracle pk(p, k);
    result["base_calls_per_evaluation"] = pk.base_calls_per_evaluation();
    result["extrapolation_condition"] = e.num(pk.extrapolation_condition());
  }
  try {
    const Rational exact = mixed_partial(poly);
    result["exact_mixed_partial"] = e.rational(exact);
    result["ratio"] = exact > 0 ? e.num(r.estimate / exact.get_d()) : Json();
  } catch (const ResourceError&) {
    result["exact_mixed_partial"] = nullptr;
  }
  return result;
}

Json run_check_hyperbolic(const RunConfig& c, const Polynomial& poly, const Emitter& e) {
  if (degree(poly) > kHyperbolicDegreeCap) {
    throw ResourceError("check-hyperbolic refused: degree exceeds cap " + std::to_string(kHyperbolicDegreeCap));
  }
  if (c.trials < 1 || c.samples < 1) throw InputError("--trials and --samples must be positive");
  PolynomialOracle p(poly);
  const DiagnosticReport roots = real_rootedness_check(p, std::vector<double>(p.n_vars(), 1.0), c.trials, c.seed);
  const DiagnosticReport plane = half_plane_sample_check(p, c.samples, c.seed + 1);
  Json result;
  result["passed"] = roots.passed && plane.passed;
  result["diagnostics"] = Json::array({diagnostic_json(roots, e), diagnostic_json(plane, e)});
  result["oracle_calls"] = p.call_count();
  return result;
}

Json run_scale(const RunConfig& c, const RationalMatrix& a, const Emitter& e) {
  const ScalingResult r = sinkhorn_scale(to_real(a), c.tol, c.max_iter.value_or(kSinkhornMaxIter));
  return Json{{"capacity", e.num(r.capacity)},
              {"row_scalers", e.vec(r.row_scalers)},
              {"col_scalers", e.vec(r.col_scalers)},
              {"scaled_matrix", e.mat(r.scaled_matrix)},
              {"iterations", r.iterations},
              {"max_deviation", e.num(r.max_deviation)},
              {"status", r.status == ScalingStatus::converged ? "converged" : "iteration-cap"}};
}

Json run_suite(const RunConfig& c, bool& all_passed) {
  if (c.suite_name != "acceptance") throw InputError("unknown suite '" + c.suite_name + "' (available: acceptance)");
  const auto results = run_acceptance(c.seed == 0 ? kDefaultSuiteSeed : c.seed);
  all_passed = true;
  Json criteria = Json::array();
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    Json item{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
    if (!c.no_meta) item["seconds"] = r.seconds;
    criteria.push_back(std::move(item));
  }
  return Json{{"suite", c.suite_name}, {"passed", all_passed}, {"criteria", std::move(criteria)}};
}

void write_text(const Json& value, const std::string& prefix, std::ostream& out) {
  if (value.is_object()) {
    for (const auto& [key, child] : value.items()) write_text(child, prefix.empty() ? key : prefix + "." + key, out);
  } else if (value.is_array() && !value.empty() && value.front().is_object()) {
    for (std::size_t i = 0; i < value.size(); ++i) write_text(value[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

std::string to_string(Command command) {
  for (const auto& c : kCommands) {
    if (c.command == command) return c.name;
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (const auto& c : kCommands) {
    if (name == c.name) return c.command;
  }
  throw InputError("unknown command '" + name + "'");
}

Json to_json(const RunConfig& c) {
  Json j;
  j["command"] = to_string(c.command);
  j["input"] = c.input_path;
  j["mode"] = c.mode == ScalarMode::exact ? "exact" : "float";
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter ? Json(*c.max_iter) : Json();
  j["seed"] = c.seed;
  j["k"] = c.k ? Json(*c.k) : Json();
  j["ordering"] = c.ordering;
  j["output"] = c.output == OutputFormat::json ? "json" : "text";
  j["trials"] = c.trials;
  j["samples"] = c.samples;
  j["suite"] = c.suite_name;
  j["no_meta"] = c.no_meta;
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  try {
    RunConfig c;
    c.command = parse_command(j.at("command").get<std::string>());
    c.input_path = j.at("input").get<std::string>();
    const std::string mode = j.at("mode").get<std::string>();
    if (mode != "exact" && mode != "float") throw InputError("mode must be exact or float");
    c.mode = mode == "exact" ? ScalarMode::exact : ScalarMode::floating;
    c.tol = j.at("tol").get<double>();
    if (!j.at("max_iter").is_null()) c.max_iter = j.at("max_iter").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("k").is_null()) c.k = j.at("k").get<int>();
    c.ordering = j.at("ordering").get<std::string>();
    const std::string output = j.at("output").get<std::string>();
    if (output != "json" && output != "text") throw InputError("output must be json or text");
    c.output = output == "json" ? OutputFormat::json : OutputFormat::text;
    c.trials = j.at("trials").get<int>();
    c.samples = j.at("samples").get<int>();
    c.suite_name = j.at("suite").get<std::string>();
    c.no_meta = j.at("no_meta").get<bool>();
    return c;
  } catch (const Json::exception& e) {
    throw InputError(std::string("invalid run configuration: ") + e.what());
  }
}

void validate(const RunConfig& c) {
  if (!(c.tol > 0.0)) throw InputError("--tol must be > 0");
  if (c.max_iter && *c.max_iter < 1) throw InputError("--max-iter must be >= 1");
  if (c.k && *c.k < 0) throw InputError("--k must be >= 0");
  if (c.threads < 0) throw InputError("--threads must be >= 0");
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                                    int& exit_code) {
  CLI::App app{"Capacity of homogeneous polynomials, permanent and mixed-discriminant bounds", "polycap"};
  app.set_version_flag("--version", POLYCAP_VERSION);
  RunConfig c;
  std::string command, mode = "exact", output = "json";
  int k = -1, max_iter = 0;
  std::vector<std::string> names;
  for (const auto& entry : kCommands) names.emplace_back(entry.name);
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(names));
  app.add_option("-i,--input", c.input_path, "Polynomial or matrix JSON file");
  app.add_option("--mode", mode, "Scalar mode")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", c.tol, "Convergence tolerance");
  app.add_option("--max-iter", max_iter, "Iteration cap");
  app.add_option("--seed", c.seed, "Random seed for sampling diagnostics");
  app.add_option("--k", k, "Partial-derivative depth for approx");
  app.add_option("--ordering", c.ordering, "as-given, greedy or a comma-separated permutation");
  app.add_option("--output", output, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--trials", c.trials, "Real-rootedness trial points");
  app.add_option("--samples", c.samples, "Half-plane samples");
  app.add_option("--name", c.suite_name, "Suite name");
  app.add_option("--threads", c.threads, "Worker threads (default: POLYCAP_THREADS or 1)");
  app.add_flag("--no-meta", c.no_meta, "Omit timestamps and timings from the report");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    exit_code = code == 0 ? 0 : 2;
    return std::nullopt;
  }
  c.command = parse_command(command);
  c.mode = mode == "exact" ? ScalarMode::exact : ScalarMode::floating;
  c.output = output == "json" ? OutputFormat::json : OutputFormat::text;
  if (app.count("--k")) c.k = k;
  if (app.count("--max-iter")) c.max_iter = max_iter;
  exit_code = 0;
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  try {
    validate(c);
    if (c.threads > 0) set_worker_count(c.threads);
    const Emitter e(c.mode);
    Json report;
    report["schema"] = "polycap/1";
    report["command"] = to_string(c.command);
    report["inputs"] = to_json(c);
    bool suite_passed = true;
    Json result;
    switch (c.command) {
      case Command::permanent:
      case Command::scale: {
        require_input(c);
        const RationalMatrix a = io::read_matrix(c.input_path);
        report["matrix"] = io::to_json(a);
        result = c.command == Command::permanent ? run_permanent(c, a, e) : run_scale(c, a, e);
        break;
      }
      case Command::suite:
        result = run_suite(c, suite_passed);
        break;
      default: {
        require_input(c);
        const Polynomial poly = io::read_polynomial(c.input_path, c.mode);
        report["polynomial"] = io::to_json(poly);
        if (c.k && *c.k >= n_vars(poly)) throw InputError("--k must be < n = " + std::to_string(n_vars(poly)));
        switch (c.command) {
          case Command::capacity: result = run_capacity(c, poly, e); break;
          case Command::mixed_disc: result = run_mixed_disc(c, poly, e); break;
          case Command::bound: result = run_bound(c, poly, e); break;
          case Command::approx: result = run_approx(c, poly, e); break;
          case Command::check_hyperbolic: result = run_check_hyperbolic(c, poly, e); break;
          default: break;
        }
      }
    }
    report["result"] = std::move(result);
    if (!c.no_meta) {
      report["meta"] = Json{
          {"version", POLYCAP_VERSION},
          {"generated_at", utc_timestamp()},
          {"elapsed_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()},
          {"threads", worker_count()}};
    }
    if (c.output == OutputFormat::json) {
      out << report.dump(2) << "\n";
    } else if (c.command == Command::suite) {
      for (const auto& item : report["result"]["criteria"]) {
        out << (item["passed"].get<bool>() ? "[PASS] " : "[FAIL] ") << item["id"].get<int>() << " "
            << item["name"].get<std::string>() << ": " << item["detail"].get<std::string>() << "\n";
      }
      out << "suite " << (suite_passed ? "passed" : "failed") << "\n";
    } else {
      write_text(report["result"], "", out);
    }
    return suite_passed ? 0 : 1;
  } catch (const InputError& ex) {
    err << "polycap: input error: " << ex.what() << "\n";
    return 2;
  } catch (const ResourceError& ex) {
    err << "polycap: refused: " << ex.what() << "\n";
    return 3;
  } catch (const CheckFailure& ex) {
    err << "polycap: check failed: " << ex.what() << "\n";
    return 1;
  } catch (const std::exception& ex) {
    err << "polycap: error: " << ex.what() << "\n";
    return 1;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  int code = 0;
  std::optional<RunConfig> config;
  try {
    config = parse_args(argc, argv, out, err, code);
  } catch (const InputError& ex) {
    err << "polycap: input error: " << ex.what() << "\n";
    return 2;
  }
  if (!config) return code;
  return run(*config, out, err);
}

}  // namespace polycap::cli
