// qcsim command-line front end.
//
// Exit codes: 0 success, 2 usage/configuration, 3 capacity, 4 QASM parse,
// 1 anything else.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcsim/qcsim.hpp"

using json = nlohmann::json;
using namespace qcsim;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitParse = 4;

struct CircuitArgs {
  std::string input;
  std::string family;
  int n = 0;
  std::optional<std::uint64_t> seed;
  std::optional<int> p;
  std::optional<double> k;
  std::optional<int> m;
  std::optional<int> l;
  std::optional<int> t;
  std::optional<std::string> secret;
};

void add_circuit_options(CLI::App* cmd, CircuitArgs& a, bool allow_file) {
  if (allow_file) cmd->add_option("input", a.input, "OpenQASM 2.0 file (instead of --family/--n)");
  cmd->add_option("--family", a.family, "qaoa|random|qpe|qft|vqe|hamiltonian|hiddenshift|bv");
  cmd->add_option("--n", a.n, "qubit count");
  cmd->add_option("--seed", a.seed, "generator seed");
  cmd->add_option("--p", a.p, "QAOA layers");
  cmd->add_option("--k", a.k, "two-qubit / one-bit fraction");
  cmd->add_option("--m", a.m, "secret weight M");
  cmd->add_option("--l", a.l, "VQE layers");
  cmd->add_option("--t", a.t, "Hamiltonian steps");
  cmd->add_option("--secret", a.secret, "explicit secret bitstring");
}

GeneratorSpec spec_from(const CircuitArgs& a) {
  if (a.family.empty()) throw ConfigError("either an input file or --family is required");
  const auto fam = parse_family(a.family);
  if (!fam) throw ConfigError("unknown family '" + a.family + "'");
  GeneratorSpec s;
  s.family = *fam;
  s.n = a.n;
  s.p_layers = a.p;
  s.k = a.k;
  s.m = a.m;
  s.l_layers = a.l;
  s.t_steps = a.t;
  s.seed = a.seed;
  s.secret = a.secret;
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); });
}

/// Circuit from a file or a generator; nullopt for an empty file.
std::optional<Circuit> load_circuit(const CircuitArgs& a) {
  if (!a.input.empty()) {
    const auto text = read_file(a.input);
    if (blank(text)) return std::nullopt;
    return parse_qasm(text);
  }
  try {
    return generate(spec_from(a));
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json metrics_json(const MetricsReport& r) {
  json j;
  j["num_qubits"] = r.num_qubits;
  j["n_gates"] = r.n_gates;
  j["n_two_qubit"] = r.n_two_qubit;
  j["depth"] = r.depth;
  j["program_communication"] = opt_json(r.program_communication);
  j["critical_depth"] = opt_json(r.critical_depth);
  j["entanglement_ratio"] = opt_json(r.entanglement_ratio);
  j["parallelism"] = opt_json(r.parallelism);
  j["entanglement_variance"] = opt_json(r.entanglement_variance);
  j["effective_entanglement_ratio"] = opt_json(r.effective_entanglement_ratio);
  j["absent"] = r.absent_reasons;
  return j;
}

MetricsReport empty_report() {
  MetricsReport r;
  for (const char* key : {"program_communication", "critical_depth", "entanglement_ratio", "parallelism",
                          "entanglement_variance"})
    r.absent_reasons[key] = "empty input";
  return r;
}

json recommendation_json(const Recommendation& rec) {
  return {{"backend", backend_name(rec.backend)},
          {"distributed_benefit", benefit_name(rec.distributed_benefit)},
          {"pathfinding_class", pathfinding_class_name(rec.pathfinding_class)},
          {"rationale", rec.rationale},
          {"metrics", metrics_json(rec.metrics)}};
}

json bench_json(const std::vector<BenchRecord>& rows) {
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"circuit", r.circuit},
                   {"family", r.family},
                   {"n", r.n},
                   {"backend", r.backend},
                   {"precision", r.precision},
                   {"pathfind_samples", r.pathfind_samples},
                   {"pathfind_time_s", r.pathfind_time_s},
                   {"contract_or_run_time_s", r.contract_or_run_time_s},
                   {"total_time_s", r.total_time_s},
                   {"mem_bytes_est", r.mem_bytes_est},
                   {"peak_intermediate_elements", r.peak_intermediate_elements},
                   {"seed", r.seed},
                   {"rep", r.rep}});
  return arr;
}

json stats_json(const TimingStats& s) { return {{"count", s.count}, {"mean", s.mean}, {"p90", s.p90}}; }

/// Writes to --out when given, else stdout.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + out_path + "'");
  out << text;
}

Precision parse_precision(const std::string& s) {
  if (s == "single") return Precision::Single;
  if (s == "double") return Precision::Double;
  throw ConfigError("precision must be single or double");
}

json distribution_json(const OutputDistribution& d, std::size_t max_entries) {
  std::vector<std::pair<double, std::size_t>> nz;
  for (std::size_t i = 0; i < d.probs.size(); ++i)
    if (d.probs[i] > 1e-12) nz.emplace_back(d.probs[i], i);
  std::stable_sort(nz.begin(), nz.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  if (nz.size() > max_entries) nz.resize(max_entries);
  json j = json::object();
  for (const auto& [p, i] : nz) j[to_bitstring(i, d.num_qubits)] = p;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum circuit benchmark generator, simulator and backend advisor"};
  app.require_subcommand(1);

  CircuitArgs gen_args;
  std::string out_path;
  auto* gen = app.add_subcommand("generate", "write a benchmark circuit as OpenQASM 2.0");
  add_circuit_options(gen, gen_args, false);
  gen->add_option("--out", out_path, "output file (default stdout)");

  CircuitArgs met_args;
  int avg_seeds = 1;
  bool want_json = false;
  auto* met = app.add_subcommand("metrics", "topological metrics as JSON");
  add_circuit_options(met, met_args, true);
  met->add_option("--avg-seeds", avg_seeds, "average over this many consecutive seeds")->check(CLI::PositiveNumber);
  met->add_flag("--json", want_json, "JSON output (default)");

  CircuitArgs sim_args;
  std::string backend = "sv", precision = "single";
  int sim_samples = 8, reps = kDefaultMeasured, warmups = kDefaultWarmups;
  std::size_t max_entries = 64;
  std::string bench_out;
  auto* sim = app.add_subcommand("simulate", "run a backend and report the output distribution");
  add_circuit_options(sim, sim_args, true);
  sim->add_option("--backend", backend, "sv|tn|auto")->check(CLI::IsMember({"sv", "tn", "auto"}));
  sim->add_option("--precision", precision, "single|double")->check(CLI::IsMember({"single", "double"}));
  sim->add_option("--samples", sim_samples, "pathfinding samples")->check(CLI::PositiveNumber);
  sim->add_option("--reps", reps, "measured repetitions")->check(CLI::PositiveNumber);
  sim->add_option("--warmups", warmups, "warmup runs")->check(CLI::NonNegativeNumber);
  sim->add_option("--max-entries", max_entries, "largest distribution entries to print");
  sim->add_option("--out", bench_out, "bench records CSV");
  sim->add_flag("--json", want_json, "bench records as JSON in the report");

  CircuitArgs ps_args;
  std::vector<int> ps_samples{1, 2, 4, 8, 16, 32, 64};
  int ps_reps = kDefaultMeasured;
  std::string ps_out;
  auto* ps = app.add_subcommand("pathstudy", "pathfinding budget vs contraction time");
  add_circuit_options(ps, ps_args, true);
  ps->add_option("--samples", ps_samples, "comma-separated sample budgets")->delimiter(',');
  ps->add_option("--reps", ps_reps, "contraction repetitions")->check(CLI::PositiveNumber);
  ps->add_option("--out", ps_out, "CSV output file");
  ps->add_flag("--json", want_json, "JSON instead of CSV");

  CircuitArgs sc_args;
  std::vector<int> sc_workers{1, 2, 4};
  std::optional<std::uint64_t> sc_slices;
  int sc_reps = kDefaultScalingReps, sc_samples = 8;
  std::string sc_out;
  auto* sc = app.add_subcommand("scaling", "strong scaling of sliced contraction");
  add_circuit_options(sc, sc_args, false);
  sc->add_option("--workers", sc_workers, "comma-separated worker counts")->delimiter(',');
  sc->add_option("--slices", sc_slices, "slice count (default 4 x workers)");
  sc->add_option("--reps", sc_reps, "measured repetitions")->check(CLI::PositiveNumber);
  sc->add_option("--samples", sc_samples, "pathfinding samples")->check(CLI::PositiveNumber);
  sc->add_option("--out", sc_out, "CSV output file");
  sc->add_flag("--json", want_json, "JSON instead of CSV");

  std::string mem_range = "1:24";
  std::string mem_out;
  auto* mem = app.add_subcommand("memory", "state-vector and tensor-network memory estimates");
  mem->add_option("--n", mem_range, "qubit range lo:hi or a single n");
  mem->add_option("--out", mem_out, "CSV output file");
  mem->add_flag("--json", want_json, "JSON instead of CSV");

  CircuitArgs adv_args;
  auto* adv = app.add_subcommand("advise", "backend recommendation as JSON");
  add_circuit_options(adv, adv_args, true);
  adv->add_flag("--json", want_json, "JSON output (default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) {
      const Circuit c = *load_circuit(gen_args);
      if (auto it = c.params().find("warning"); it != c.params().end()) std::cerr << "warning: " << it->second << '\n';
      emit(out_path, emit_qasm(c));
    } else if (*met) {
      if (avg_seeds > 1) {
        if (met_args.family.empty()) throw ConfigError("--avg-seeds needs --family");
        std::map<std::string, std::pair<double, int>> acc;
        const std::uint64_t base = met_args.seed.value_or(0);
        for (int i = 0; i < avg_seeds; ++i) {
          auto a = met_args;
          a.seed = base + static_cast<std::uint64_t>(i);
          const auto r = compute_all(*load_circuit(a));
          auto add = [&](const char* key, const std::optional<double>& v) {
            if (v) {
              acc[key].first += *v;
              ++acc[key].second;
            }
          };
          add("program_communication", r.program_communication);
          add("critical_depth", r.critical_depth);
          add("entanglement_ratio", r.entanglement_ratio);
          add("parallelism", r.parallelism);
          add("entanglement_variance", r.entanglement_variance);
          add("effective_entanglement_ratio", r.effective_entanglement_ratio);
        }
        json j;
        j["family"] = met_args.family;
        j["num_qubits"] = met_args.n;
        j["seeds"] = avg_seeds;
        for (const char* key : {"program_communication", "critical_depth", "entanglement_ratio", "parallelism",
                                "entanglement_variance", "effective_entanglement_ratio"}) {
          auto it = acc.find(key);
          j[key] = it == acc.end() ? json(nullptr) : json(it->second.first / it->second.second);
        }
        std::cout << j.dump(2) << '\n';
      } else {
        const auto c = load_circuit(met_args);
        std::cout << metrics_json(c ? compute_all(*c) : empty_report()).dump(2) << '\n';
      }
    } else if (*sim) {
      const auto loaded = load_circuit(sim_args);
      if (!loaded) throw ConfigError("input file is empty");
      const Circuit& c = *loaded;
      const Precision prec = parse_precision(precision);
      std::string engine = backend;
      json report;
      if (engine == "auto") {
        const auto rec = advise_circuit(c);
        report["advice"] = recommendation_json(rec);
        engine = rec.backend == Backend::TensorNet ? "tn" : "sv";
      }
      BenchOptions opt;
      opt.precision = prec;
      opt.pathfinder.num_samples = sim_samples;
      opt.pathfinder.seed = sim_args.seed.value_or(0);
      opt.warmups = warmups;
      opt.measured = reps;
      opt.seed = sim_args.seed.value_or(0);
      opt.family = sim_args.family;
      report["circuit"] = c.name();
      report["n"] = c.num_qubits();
      report["backend"] = engine;
      std::vector<BenchRecord> rows;
      if (engine == "sv") {
        const auto dist = simulate_distribution(c, prec);
        report["distribution"] = distribution_json(dist, max_entries);
        rows = bench_statevector(c, opt);
      } else {
        if (c.num_qubits() <= kDefaultReconstructGuard) {
          report["distribution"] = distribution_json(reconstruct_distribution(c, opt.pathfinder), max_entries);
        } else {
          const auto a = amplitude(c, std::string(static_cast<std::size_t>(c.num_qubits()), '0'), opt.pathfinder);
          report["amplitude_zero"] = {a.real(), a.imag()};
        }
        rows = bench_tensornet(c, opt);
      }
      std::vector<double> totals;
      for (const auto& r : rows) totals.push_back(r.total_time_s);
      report["timing"] = stats_json(summarize(totals));
      if (want_json) report["records"] = bench_json(rows);
      if (!bench_out.empty()) {
        std::ostringstream csv;
        write_bench_csv(csv, rows);
        emit(bench_out, csv.str());
      }
      std::cout << report.dump(2) << '\n';
    } else if (*ps) {
      const auto loaded = load_circuit(ps_args);
      if (!loaded) throw ConfigError("input file is empty");
      for (int s : ps_samples)
        if (s < 1) throw ConfigError("sample budgets must be >= 1");
      const auto study = path_study(*loaded, ps_samples, ps_reps, ps_args.seed.value_or(0));
      std::ostringstream os;
      if (want_json) {
        json rows = json::array();
        for (const auto& r : study.rows)
          rows.push_back({{"samples", r.samples},
                          {"pathfind_time_s", r.pathfind_time_s},
                          {"best_flops", r.best_flops},
                          {"peak_elements", r.peak_elements},
                          {"contract", stats_json(r.contract)}});
        json j{{"circuit", loaded->name()},
               {"n", loaded->num_qubits()},
               {"rows", rows},
               {"observed_class", pathfinding_class_name(study.observed)},
               {"predicted_class", pathfinding_class_name(study.predicted)},
               {"contract_time_spread", study.contract_time_spread},
               {"flops_gain", study.flops_gain}};
        os << j.dump(2) << '\n';
      } else {
        write_path_study_csv(os, *loaded, study);
      }
      emit(ps_out, os.str());
    } else if (*sc) {
      PathfinderConfig cfg;
      cfg.num_samples = sc_samples;
      cfg.seed = sc_args.seed.value_or(0);
      GeneratorSpec spec;
      try {
        spec = spec_from(sc_args);
        (void)generate(spec);
      } catch (const ParameterError& e) {
        throw ConfigError(e.what());
      }
      const auto rows = strong_scaling_experiment(spec, sc_workers, cfg, sc_reps, sc_slices);
      std::ostringstream os;
      if (want_json) {
        json arr = json::array();
        for (const auto& r : rows)
          arr.push_back({{"circuit", r.circuit_name},
                         {"n", r.n},
                         {"workers", r.workers},
                         {"slices", r.slices},
                         {"rep", r.rep},
                         {"wall_time_s", r.wall_time_s},
                         {"flops_est", r.flops_est()},
                         {"imbalance", r.imbalance()},
                         {"result_re", r.result.real()},
                         {"result_im", r.result.imag()}});
        os << arr.dump(2) << '\n';
      } else {
        write_scaling_csv(os, rows);
      }
      emit(sc_out, os.str());
    } else if (*mem) {
      int lo = 0, hi = 0;
      const auto colon = mem_range.find(':');
      try {
        lo = std::stoi(mem_range.substr(0, colon));
        hi = colon == std::string::npos ? lo : std::stoi(mem_range.substr(colon + 1));
      } catch (const std::exception&) {
        throw ConfigError("--n must be lo:hi or a single integer");
      }
      const auto rows = memory_sweep(lo, hi);
      std::ostringstream os;
      if (want_json) {
        json arr = json::array();
        for (const auto& r : rows)
          arr.push_back({{"kind", r.family},
                         {"n", r.n},
                         {"num_tensors", r.num_tensors},
                         {"bytes_single", r.bytes_single},
                         {"bytes_double", r.bytes_double}});
        os << arr.dump(2) << '\n';
      } else {
        write_memory_csv(os, rows);
      }
      emit(mem_out, os.str());
    } else if (*adv) {
      const auto c = load_circuit(adv_args);
      const auto rec = c ? advise_circuit(*c) : recommend(empty_report(), 0);
      std::cout << recommendation_json(rec).dump(2) << '\n';
    }
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
