// dqc: batch driver for distributed counting experiments.
//
//   dqc count          --marked 38,8,16 --n 6 --k 1 --reps 100
//   dqc inner-product  --x-file x.txt --y-file y.txt --k 1
//   dqc hamming        --x 0110... --y 1010...
//   dqc compare-miqae  --amplitude 0.015625 --eps-sweep 0.005,0.002,0.001
//   dqc bench          --n 6 --k 1
//   dqc prop-check     [--inject-fault]
//
// Exit status: 0 ok, 1 some estimation run failed (or a property suite failed), 2 usage or domain error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dqc/applications.hpp"
#include "dqc/coordinator.hpp"
#include "dqc/diqc.hpp"
#include "dqc/io.hpp"
#include "dqc/metrics.hpp"
#include "dqc/miqae.hpp"
#include "dqc/property_checks.hpp"
#include "dqc/summary.hpp"

namespace fs = std::filesystem;
using namespace dqc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitEstimationFailure = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::uint64_t seed = 1;
  std::uint64_t reps = 1;
  std::string backend = "analytic";
  std::string out = ".";
  std::uint64_t batch = 1;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Base seed; repetition r uses seed + r * 2^k (node j adds j)");
  sub->add_option("--reps", c.reps, "Repetitions")->check(CLI::PositiveNumber);
  sub->add_option("--backend", c.backend, "analytic | statevector")->check(CLI::IsMember({"analytic", "statevector"}));
  sub->add_option("--out", c.out, "Output directory");
  sub->add_option("--batch", c.batch, "Shots per batch N_0")->check(CLI::PositiveNumber);
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream f(fs::path(dir) / name, std::ios::binary);
  if (!f) throw std::domain_error("cannot write " + (fs::path(dir) / name).string());
  return f;
}

void write_json(const std::string& dir, const std::string& name, const Json& j) {
  auto f = open_out(dir, name);
  f << j.dump(2) << '\n';
}

double mean(double sum, std::uint64_t n) { return n ? sum / static_cast<double>(n) : 0.0; }

// ---- count ----------------------------------------------------------------------

struct CountArgs {
  Common common;
  std::optional<unsigned> n;
  std::string marked_list;
  std::string marked_file;
  std::string marked_format = "integers";
  unsigned k = 1;
  double epsilon = 0.002;
  double alpha = 0.1;
  std::optional<double> epsilon_node;
  std::optional<double> alpha_node;
  std::string scheme = "prefix";
  std::string mode = "concurrent";
  bool trace = false;
};

OracleSpec load_oracle(const CountArgs& a) {
  MarkedSet set;
  if (!a.marked_file.empty()) {
    set = load_marked_file(a.marked_file, parse_marked_format(a.marked_format));
  } else if (!a.marked_list.empty()) {
    set.marked = parse_index_list(a.marked_list);
  } else {
    throw std::domain_error("give --marked or --marked-file");
  }
  unsigned n = 0;
  if (a.n) {
    n = *a.n;
  } else if (set.bit_width > 0) {
    n = set.bit_width;
  } else {
    Index top = 0;
    for (Index x : set.marked) top = std::max(top, x);
    while (n < kMaxIndexQubits && (Index{1} << n) <= top) ++n;
    n = std::max(n, a.k + 1);
  }
  return make_oracle(n, set.marked);
}

int cmd_count(const CountArgs& a) {
  const OracleSpec oracle = load_oracle(a);
  DistributedConfig cfg;
  cfg.k = a.k;
  cfg.epsilon = a.epsilon_node ? std::ldexp(*a.epsilon_node, static_cast<int>(a.k)) : a.epsilon;
  cfg.alpha = a.alpha_node ? std::ldexp(*a.alpha_node, static_cast<int>(a.k)) : a.alpha;
  cfg.scheme = parse_scheme(a.scheme);
  cfg.shots_per_batch = a.common.batch;
  cfg.backend = parse_backend(a.common.backend);
  cfg.mode = a.mode == "sequential" ? ExecutionMode::sequential : ExecutionMode::concurrent;
  cfg.validate(oracle.n());

  const auto subs = decompose(oracle, cfg.k, cfg.scheme);
  const std::size_t nodes = subs.size();
  struct NodeStats {
    double estimate = 0, calls = 0, physical = 0, max_K = 0, max_k = 0, shots = 0;
    std::uint64_t exact = 0, successes = 0;
  };
  std::vector<NodeStats> stats(nodes);
  std::uint64_t exact_runs = 0, failed_runs = 0, within_bound = 0;

  auto runs_csv = open_out(a.common.out, "count_runs.csv");
  runs_csv << "rep,seed[base],node,t_true[elements],t_prime[elements],count_estimate[elements],"
              "amplitude_estimate[probability],count_low[elements],count_high[elements],"
              "oracle_calls_paper[Q applications],oracle_calls_physical[A and A^dagger applications],"
              "total_shots[shots],max_K[odd amplification],max_k[Q power],rounds[count],status\n";
  std::ofstream trace_csv;
  if (a.trace) {
    trace_csv = open_out(a.common.out, "count_trace.csv");
    trace_csv << kNodeTraceHeader << '\n';
  }

  const std::uint64_t stride = std::uint64_t{1} << cfg.k;
  for (std::uint64_t rep = 0; rep < a.common.reps; ++rep) {
    cfg.base_seed = a.common.seed + rep * stride;
    const auto agg = run_distributed(oracle, cfg);
    exact_runs += agg.t_prime == static_cast<std::int64_t>(oracle.count());
    failed_runs += agg.status != RunStatus::success;
    within_bound += std::abs(static_cast<double>(agg.t_prime) - static_cast<double>(oracle.count())) <= agg.error_bound;
    for (std::size_t j = 0; j < nodes; ++j) {
      const auto& r = agg.nodes[j].result;
      const auto t_true = static_cast<std::int64_t>(subs[j].count());
      auto& s = stats[j];
      s.estimate += r.count_estimate;
      s.calls += static_cast<double>(r.counters.oracle_calls_paper);
      s.physical += static_cast<double>(r.counters.oracle_calls_physical);
      s.max_K += static_cast<double>(r.counters.max_K);
      s.max_k += static_cast<double>(r.counters.max_power());
      s.shots += static_cast<double>(r.counters.total_shots);
      s.successes += r.status == RunStatus::success && r.t_prime == t_true;
      runs_csv << rep << ',' << cfg.base_seed << ',' << j << ',' << t_true << ',' << r.t_prime << ','
               << format_number(r.count_estimate) << ',' << format_number(r.amplitude_estimate) << ','
               << format_number(r.scaled_low) << ',' << format_number(r.scaled_high) << ','
               << r.counters.oracle_calls_paper << ',' << r.counters.oracle_calls_physical << ','
               << r.counters.total_shots << ',' << r.counters.max_K << ',' << r.counters.max_power() << ','
               << agg.nodes[j].rounds.size() << ',' << to_string(r.status) << '\n';
      if (a.trace) write_node_trace(trace_csv, rep, j, agg.nodes[j].rounds);
    }
  }

  const std::uint64_t reps = a.common.reps;
  Json per_node = Json::array();
  for (std::size_t j = 0; j < nodes; ++j) {
    const auto& s = stats[j];
    per_node.push_back({{"node", j},
                        {"t_true", subs[j].count()},
                        {"qubits", subs[j].m + 2},
                        {"mean_count_estimate", mean(s.estimate, reps)},
                        {"successes", s.successes},
                        {"mean_oracle_calls_paper", mean(s.calls, reps)},
                        {"mean_oracle_calls_physical", mean(s.physical, reps)},
                        {"mean_max_K", mean(s.max_K, reps)},
                        {"mean_max_k", mean(s.max_k, reps)},
                        {"mean_total_shots", mean(s.shots, reps)}});
  }
  const Json summary = {
      {"command", "count"},
      {"config",
       {{"n", oracle.n()},
        {"k", cfg.k},
        {"t_true", oracle.count()},
        {"epsilon", cfg.epsilon},
        {"alpha", cfg.alpha},
        {"epsilon_node", cfg.epsilon_node()},
        {"alpha_node", cfg.alpha_node()},
        {"shots_per_batch", cfg.shots_per_batch},
        {"scheme", to_string(cfg.scheme)},
        {"backend", to_string(cfg.backend)},
        {"seed", a.common.seed},
        {"reps", reps}}},
      {"error_bound", aggregate_error_bound(oracle.n(), cfg.k, cfg.epsilon)},
      {"confidence", 1.0 - 4.0 / 3.0 * cfg.alpha},
      {"query_bound_per_node", query_bound(cfg.epsilon_node(), cfg.alpha_node())},
      {"exact_runs", exact_runs},
      {"within_bound_runs", within_bound},
      {"failed_runs", failed_runs},
      {"nodes", per_node}};
  write_json(a.common.out, "count_summary.json", summary);

  std::cout << "count: n=" << oracle.n() << " k=" << cfg.k << " t=" << oracle.count() << " reps=" << reps
            << " exact=" << exact_runs << " failed=" << failed_runs << '\n';
  for (const auto& node : per_node) {
    std::cout << "  node " << node["node"] << ": mean estimate " << format_number(node["mean_count_estimate"].get<double>())
              << ", successes " << node["successes"] << ", mean calls "
              << format_number(node["mean_oracle_calls_paper"].get<double>()) << ", mean max k "
              << format_number(node["mean_max_k"].get<double>()) << '\n';
  }
  return failed_runs ? kExitEstimationFailure : kExitOk;
}

// ---- inner-product / hamming -----------------------------------------------------

struct VectorArgs {
  Common common;
  std::string x, y, x_file, y_file;
  unsigned k = 1;
  double epsilon = 0.01;
  double alpha = 0.05;
  std::string mode = "concurrent";
};

BitString vector_input(const std::string& inline_bits, const std::string& file, const char* which) {
  if (!file.empty()) return load_bit_vector(file);
  if (!inline_bits.empty()) return parse_bit_vector(inline_bits);
  throw std::domain_error(std::string("give --") + which + " or --" + which + "-file");
}

int cmd_vectors(Problem problem, const VectorArgs& a) {
  const BitString x = vector_input(a.x, a.x_file, "x");
  const BitString y = vector_input(a.y, a.y_file, "y");
  ApplicationConfig cfg;
  cfg.k = a.k;
  cfg.epsilon = a.epsilon;
  cfg.alpha = a.alpha;
  cfg.shots_per_batch = a.common.batch;
  cfg.backend = parse_backend(a.common.backend);
  cfg.mode = a.mode == "sequential" ? ExecutionMode::sequential : ExecutionMode::concurrent;
  const double exact = problem == Problem::inner_product ? exact_inner_product(x, y) : exact_hamming_fraction(x, y);

  const std::string stem = problem == Problem::inner_product ? "inner_product" : "hamming";
  auto csv = open_out(a.common.out, stem + "_runs.csv");
  csv << "rep,seed[base],estimate[fraction of 2^n],exact[fraction of 2^n],abs_error[fraction of 2^n],"
         "error_bound[fraction of 2^n],within_bound,A_invocations[applications],total_qubits[qubits sent],"
         "bound_qubits[qubits sent],status\n";
  std::uint64_t within = 0, failed = 0, ledger_ok = 0;
  double est_sum = 0.0;
  Json first;
  const std::uint64_t stride = std::uint64_t{1} << a.k;
  for (std::uint64_t rep = 0; rep < a.common.reps; ++rep) {
    cfg.seed = a.common.seed + rep * stride;
    const auto r = problem == Problem::inner_product ? estimate_inner_product(x, y, cfg) : estimate_hamming(x, y, cfg);
    const double err = std::abs(r.estimate - exact);
    within += err <= r.error_bound;
    failed += r.status != RunStatus::success;
    ledger_ok += static_cast<double>(r.ledger.total_qubits) <= r.communication_bound;
    est_sum += r.estimate;
    if (rep == 0) first = to_json(r);
    csv << rep << ',' << cfg.seed << ',' << format_number(r.estimate) << ',' << format_number(exact) << ','
        << format_number(err) << ',' << format_number(r.error_bound) << ',' << (err <= r.error_bound ? 1 : 0) << ','
        << r.ledger.A_invocations << ',' << r.ledger.total_qubits << ',' << format_number(r.communication_bound) << ','
        << to_string(r.status) << '\n';
  }
  const Json summary = {{"command", to_string(problem)},
                        {"config",
                         {{"length", x.size()},
                          {"k", a.k},
                          {"epsilon", a.epsilon},
                          {"alpha", a.alpha},
                          {"shots_per_batch", a.common.batch},
                          {"backend", a.common.backend},
                          {"seed", a.common.seed},
                          {"reps", a.common.reps}}},
                        {"exact", exact},
                        {"mean_estimate", mean(est_sum, a.common.reps)},
                        {"within_bound_runs", within},
                        {"ledger_within_bound_runs", ledger_ok},
                        {"failed_runs", failed},
                        {"first_run", first}};
  write_json(a.common.out, stem + "_summary.json", summary);
  std::cout << to_string(problem) << ": exact " << format_number(exact) << ", mean estimate "
            << format_number(mean(est_sum, a.common.reps)) << ", within bound " << within << "/" << a.common.reps << '\n';
  return failed ? kExitEstimationFailure : kExitOk;
}

// ---- compare-miqae ----------------------------------------------------------------

struct CompareArgs {
  Common common;
  double amplitude = 1.0 / 64.0;
  double alpha = 0.05;
  std::string eps_sweep = "0.005,0.002,0.001";
};

struct SweepRow {
  std::uint64_t runs = 0, successes = 0, failed_status = 0;
  double max_K_success = 0, max_k_success = 0, max_K_all = 0, calls = 0;
};

Json row_json(double eps, const char* algo, const SweepRow& r) {
  return {{"epsilon", eps},
          {"algorithm", algo},
          {"runs", r.runs},
          {"successes", r.successes},
          {"failed_status", r.failed_status},
          {"mean_max_K_success", mean(r.max_K_success, r.successes)},
          {"mean_max_k_success", mean(r.max_k_success, r.successes)},
          {"mean_max_K", mean(r.max_K_all, r.runs)},
          {"mean_oracle_calls_paper", mean(r.calls, r.runs)}};
}

int cmd_compare(const CompareArgs& a) {
  const auto sweep = parse_double_list(a.eps_sweep);
  if (sweep.empty()) throw CLI::ValidationError("--eps-sweep", "empty sweep");
  if (!(a.amplitude >= 0.0 && a.amplitude <= 1.0)) throw std::domain_error("amplitude must lie in [0, 1]");
  for (double e : sweep) {
    if (!(e > 0.0 && e < 0.5)) throw std::domain_error("sweep epsilon must lie in (0, 0.5)");
  }
  auto csv = open_out(a.common.out, "compare_miqae.csv");
  csv << "epsilon[amplitude half-width],algorithm,runs[count],successes[count],failed_status[count],"
         "mean_max_K_success[odd amplification],mean_max_k_success[Q power],mean_max_K[odd amplification],"
         "mean_oracle_calls_paper[Q applications]\n";
  Json rows = Json::array();
  for (double eps : sweep) {
    SweepRow mi, di;
    for (std::uint64_t rep = 0; rep < a.common.reps; ++rep) {
      const std::uint64_t seed = a.common.seed + rep;
      {
        AnalyticSampler s(a.amplitude);
        const auto r = run_miqae({eps, a.alpha, a.common.batch}, s, seed);
        const bool ok = r.status == RunStatus::success && r.interval.low <= a.amplitude && a.amplitude <= r.interval.high;
        ++mi.runs;
        mi.successes += ok;
        mi.failed_status += r.status != RunStatus::success;
        mi.max_K_all += static_cast<double>(r.counters.max_K);
        mi.calls += static_cast<double>(r.counters.oracle_calls_paper);
        if (ok) {
          mi.max_K_success += static_cast<double>(r.counters.max_K);
          mi.max_k_success += static_cast<double>(r.counters.max_power());
        }
      }
      {
        AnalyticSampler s(a.amplitude);
        DiqcConfig cfg;
        cfg.epsilon_node = eps;
        cfg.alpha_node = a.alpha;
        cfg.shots_per_batch = a.common.batch;
        const auto r = run_node(cfg, s, 6, seed).result;
        const bool ok = r.status == RunStatus::success && r.interval.low <= a.amplitude && a.amplitude <= r.interval.high;
        ++di.runs;
        di.successes += ok;
        di.failed_status += r.status != RunStatus::success;
        di.max_K_all += static_cast<double>(r.counters.max_K);
        di.calls += static_cast<double>(r.counters.oracle_calls_paper);
        if (ok) {
          di.max_K_success += static_cast<double>(r.counters.max_K);
          di.max_k_success += static_cast<double>(r.counters.max_power());
        }
      }
    }
    for (const auto& [name, row] : {std::pair{"miqae", mi}, std::pair{"diqc", di}}) {
      const Json j = row_json(eps, name, row);
      rows.push_back(j);
      csv << format_number(eps) << ',' << name << ',' << row.runs << ',' << row.successes << ',' << row.failed_status
          << ',' << format_number(j["mean_max_K_success"].get<double>()) << ','
          << format_number(j["mean_max_k_success"].get<double>()) << ',' << format_number(j["mean_max_K"].get<double>())
          << ',' << format_number(j["mean_oracle_calls_paper"].get<double>()) << '\n';
      std::cout << "eps " << format_number(eps) << " " << name << ": successes " << row.successes << "/" << row.runs
                << ", mean max K (successful) " << format_number(j["mean_max_K_success"].get<double>()) << '\n';
    }
  }
  write_json(a.common.out, "compare_miqae.json",
             {{"command", "compare-miqae"},
              {"config",
               {{"amplitude", a.amplitude}, {"alpha", a.alpha}, {"seed", a.common.seed}, {"reps", a.common.reps}}},
              {"rows", rows}});
  return kExitOk;
}

// ---- bench --------------------------------------------------------------------------

struct BenchArgs {
  Common common;
  unsigned n = 6;
  unsigned k = 1;
  double epsilon_node = 0.001;
  double alpha_node = 0.05;
};

int cmd_bench(const BenchArgs& a) {
  if (a.n < 4 || a.k < 1 || a.k >= a.n) throw std::domain_error("bench needs n >= 4 and 1 <= k < n");
  const auto rows = resource_comparison(a.n, a.k);
  auto csv = open_out(a.common.out, "bench_table.csv");
  csv << "context,qubits[qubits],gate_count[gates],max_Q_depth[Q applications],query_bound[Q applications]\n";
  Json jrows = Json::array();
  for (const auto& r : rows) {
    jrows.push_back(to_json(r));
    csv << '"' << r.context << "\"," << r.qubits << ',' << r.gate_count.str() << ',' << format_number(r.max_Q_depth)
        << ',' << format_number(r.query_bound) << '\n';
  }
  const auto ip = inner_product_comparison(a.n, a.k);
  const auto hd = hamming_comparison(a.n, a.k);
  const Json summary = {
      {"command", "bench"},
      {"config", {{"n", a.n}, {"k", a.k}, {"epsilon_node", a.epsilon_node}, {"alpha_node", a.alpha_node}}},
      {"counting_comparison", jrows},
      {"counting_inequality_holds", node_beats_phase_counting(a.n, a.k)},
      {"node",
       {{"K_max", k_max_cap(a.epsilon_node)},
        {"shot_constant", shot_constant()},
        {"query_bound", query_bound(a.epsilon_node, a.alpha_node)},
        {"gates_Q_j", gates_Qj(a.n, a.k).str()},
        {"gates_controlled_Q", gates_controlled_Q(a.n).str()}}},
      {"applications",
       {{"inner_product",
         {{"qubits_per_A", qubits_per_application(Problem::inner_product, a.n, a.k)},
          {"communication_bound", communication_bound(Problem::inner_product, a.n, a.k, a.epsilon_node, a.alpha_node)},
          {"qubit_reduction_vs_reference", ip.qubit_reduction},
          {"depth_reduction_in_Qj", ip.depth_reduction_in_Qj}}},
        {"hamming",
         {{"qubits_per_A", qubits_per_application(Problem::hamming, a.n, a.k)},
          {"communication_bound", communication_bound(Problem::hamming, a.n, a.k, a.epsilon_node, a.alpha_node)},
          {"qubit_reduction_vs_reference", hd.qubit_reduction},
          {"depth_reduction_in_Qj", hd.depth_reduction_in_Qj}}}}}};
  write_json(a.common.out, "bench.json", summary);
  for (const auto& r : rows) {
    std::cout << r.context << ": qubits " << r.qubits << ", gates " << r.gate_count.str() << ", max depth "
              << format_number(r.max_Q_depth) << '\n';
  }
  return kExitOk;
}

// ---- prop-check ----------------------------------------------------------------------

struct PropArgs {
  Common common;
  bool inject_fault = false;
};

int cmd_prop(const PropArgs& a) {
  const auto reports = run_all_checks(a.inject_fault);
  Json suites = Json::array();
  bool all = true;
  for (const auto& r : reports) {
    suites.push_back(to_json(r));
    all = all && r.passed;
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases, " << r.failures
              << " failures)\n";
  }
  write_json(a.common.out, "prop_check.json",
             {{"command", "prop-check"}, {"inject_fault", a.inject_fault}, {"passed", all}, {"suites", suites}});
  return all ? kExitOk : kExitEstimationFailure;
}

// ---- config file ------------------------------------------------------------------------

std::string json_token(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : ",") + json_token(e);
    return s;
  }
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

// Splices the keys of a flat JSON object in front of the subcommand's own
// arguments; options keep their last value, so command-line flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args, const std::vector<std::string>& commands) {
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open config file: " + path);
  const Json cfg = Json::parse(in);
  if (!cfg.is_object()) throw std::domain_error("config file must hold a JSON object");
  std::vector<std::string> injected;
  for (const auto& [key, value] : cfg.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back("--" + key);
    } else {
      injected.push_back("--" + key);
      injected.push_back(json_token(value));
    }
  }
  auto it = std::find_if(rest.begin(), rest.end(),
                         [&](const std::string& s) { return std::find(commands.begin(), commands.end(), s) != commands.end(); });
  if (it == rest.end()) throw std::domain_error("config file given without a subcommand");
  rest.insert(it + 1, injected.begin(), injected.end());
  return rest;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed quantum counting: simulation and experiment driver", "dqc"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file of option values; command-line flags override it");

  CountArgs count;
  auto* c = app.add_subcommand("count", "Count marked elements over 2^k nodes");
  add_common(c, count.common);
  c->add_option("--n", count.n, "Index qubits (default: from the input)");
  c->add_option("--marked", count.marked_list, "Marked elements, e.g. 38,8,16");
  c->add_option("--marked-file", count.marked_file, "File with one marked element per line");
  c->add_option("--marked-format", count.marked_format, "integers | bits")->check(CLI::IsMember({"integers", "bits"}));
  c->add_option("--k", count.k, "Node exponent: 2^k nodes");
  c->add_option("--epsilon", count.epsilon, "Global epsilon (node value is epsilon / 2^k)");
  c->add_option("--alpha", count.alpha, "Global alpha (node value is alpha / 2^k)");
  c->add_option("--epsilon-node", count.epsilon_node, "Per-node epsilon; overrides --epsilon");
  c->add_option("--alpha-node", count.alpha_node, "Per-node alpha; overrides --alpha");
  c->add_option("--scheme", count.scheme, "prefix | stride")->check(CLI::IsMember({"prefix", "stride"}));
  c->add_option("--mode", count.mode, "concurrent | sequential")->check(CLI::IsMember({"concurrent", "sequential"}));
  c->add_flag("--trace", count.trace, "Write per-round trace CSV");

  VectorArgs ip, hd;
  auto setup_vectors = [&](CLI::App* sub, VectorArgs& v) {
    add_common(sub, v.common);
    sub->add_option("--x", v.x, "Alice's bits as a 0/1 string");
    sub->add_option("--y", v.y, "Bob's bits as a 0/1 string");
    sub->add_option("--x-file", v.x_file, "File holding Alice's 0/1 string");
    sub->add_option("--y-file", v.y_file, "File holding Bob's 0/1 string");
    sub->add_option("--k", v.k, "Node exponent");
    sub->add_option("--epsilon", v.epsilon, "Global epsilon");
    sub->add_option("--alpha", v.alpha, "Global alpha");
    sub->add_option("--mode", v.mode, "concurrent | sequential")->check(CLI::IsMember({"concurrent", "sequential"}));
  };
  auto* ipc = app.add_subcommand("inner-product", "Estimate (1/2^n) sum x_i y_i");
  setup_vectors(ipc, ip);
  auto* hdc = app.add_subcommand("hamming", "Estimate the Hamming distance divided by 2^n");
  setup_vectors(hdc, hd);

  CompareArgs cmp;
  cmp.common.reps = 100;
  auto* cm = app.add_subcommand("compare-miqae", "Single-node comparison against MIQAE over an epsilon sweep");
  add_common(cm, cmp.common);
  cm->add_option("--amplitude", cmp.amplitude, "True amplitude a");
  cm->add_option("--alpha", cmp.alpha, "Significance level");
  cm->add_option("--eps-sweep", cmp.eps_sweep, "Comma-separated epsilon values");

  BenchArgs bench;
  auto* bc = app.add_subcommand("bench", "Closed-form resource comparison");
  add_common(bc, bench.common);
  bc->add_option("--n", bench.n, "Index qubits");
  bc->add_option("--k", bench.k, "Node exponent");
  bc->add_option("--epsilon-node", bench.epsilon_node, "Per-node epsilon for query and communication bounds");
  bc->add_option("--alpha-node", bench.alpha_node, "Per-node alpha");

  PropArgs prop;
  auto* pc = app.add_subcommand("prop-check", "Run the property suites");
  add_common(pc, prop.common);
  pc->add_flag("--inject-fault", prop.inject_fault, "Perturb every suite so it must fail");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(args, {"count", "inner-product", "hamming", "compare-miqae", "bench", "prop-check"});
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (c->parsed()) return cmd_count(count);
    if (ipc->parsed()) return cmd_vectors(Problem::inner_product, ip);
    if (hdc->parsed()) return cmd_vectors(Problem::hamming, hd);
    if (cm->parsed()) return cmd_compare(cmp);
    if (bc->parsed()) return cmd_bench(bench);
    if (pc->parsed()) return cmd_prop(prop);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
