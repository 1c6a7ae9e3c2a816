// Command-line front end: simulate walks, certify variant equivalence,
// compile walk circuits, run them on the statevector simulator, export
// OpenQASM, compare encodings, and print resource tables.
//
// Exit codes: 0 success, 1 failed numerical check, 2 usage/input error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwalk/qwalk.hpp"

namespace {

using namespace qwalk;

constexpr double kCheckTolerance = 1e-10;

// Accepts plain decimals and exact pi fractions: "pi", "-pi", "pi/4",
// "3*pi/7", "0.25*pi", "1.0471975511965976".
double parse_angle(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return c == ' ' || c == '\t'; }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty angle");
  const auto pos = s.find("pi");
  if (pos == std::string::npos) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad angle: " + s);
    return v;
  }
  const std::string pre = s.substr(0, pos);
  const std::string post = s.substr(pos + 2);
  double mult = 1.0;
  if (pre == "-") {
    mult = -1.0;
  } else if (!pre.empty() && pre != "+") {
    if (pre.back() != '*') throw std::invalid_argument("bad angle: " + s);
    std::size_t used = 0;
    mult = std::stod(pre, &used);
    if (used != pre.size() - 1) throw std::invalid_argument("bad angle: " + s);
  }
  double div = 1.0;
  if (!post.empty()) {
    if (post.front() != '/') throw std::invalid_argument("bad angle: " + s);
    std::size_t used = 0;
    div = std::stod(post.substr(1), &used);
    if (used != post.size() - 1) throw std::invalid_argument("bad angle: " + s);
    if (div == 0.0) throw std::invalid_argument("division by zero in angle");
  }
  return mult * std::numbers::pi / div;
}

std::vector<double> parse_angle_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_angle(item));
  if (out.empty()) throw std::invalid_argument("empty angle list");
  return out;
}

std::string fmt(double v) { return qwalk::detail::format_double(v); }

WalkVariant parse_walk_variant(const std::string& s) {
  if (s == "sqw") return WalkVariant::SQW;
  if (s == "dqw") return WalkVariant::DQW;
  if (s == "ssqw") return WalkVariant::SSQW;
  throw std::invalid_argument("unknown walk: " + s);
}

CoinConvention parse_convention(const std::string& s) {
  if (s == "phase") return CoinConvention::Phase;
  if (s == "real") return CoinConvention::Real;
  throw std::invalid_argument("unknown coin convention: " + s);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open for writing: " + path);
  f << text;
  if (!f) throw std::invalid_argument("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit(const std::optional<std::string>& out_path, const std::string& text) {
  if (out_path) write_text(*out_path, text);
  else std::cout << text;
}

// ---------------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string walk = "sqw";
  int steps = 0;
  std::string theta;
  std::optional<std::string> theta2;
  std::string delta = "0";
  std::string eta = "0";
  std::string coin = "phase";
  long long x0 = 0;
  bool trajectory = false;
  std::string format = "csv";
  std::optional<std::string> out;
};

int run_simulate(const SimulateArgs& a) {
  WalkSpec spec;
  spec.variant = parse_walk_variant(a.walk);
  spec.theta = parse_angle(a.theta);
  if (a.theta2) spec.theta2 = parse_angle(*a.theta2);
  spec.convention = parse_convention(a.coin);
  spec.initial = {parse_angle(a.delta), parse_angle(a.eta)};
  spec.initial_position = a.x0;
  spec.steps = a.steps;

  struct Row {
    int step;
    DistributionEntry e;
  };
  std::vector<Row> rows;
  WalkState st = make_initial(spec);
  auto take = [&rows](const WalkState& s) {
    for (const DistributionEntry& e : distribution(s).entries)
      rows.push_back({s.t, e});
  };
  if (a.trajectory) take(st);
  for (int k = 1; k <= spec.steps; ++k) {
    st = step(st, spec);
    if (a.trajectory || k == spec.steps) take(st);
  }
  if (spec.steps == 0 && !a.trajectory) take(st);

  if (a.format == "csv") {
    std::string text = "step,x,p_up,p_down,p\n";
    for (const Row& r : rows) {
      text += std::to_string(r.step) + "," + std::to_string(r.e.x) + "," +
              fmt(r.e.p_up) + "," + fmt(r.e.p_down) + "," + fmt(r.e.p) + "\n";
    }
    emit(a.out, text);
  } else if (a.format == "json") {
    nlohmann::json jr = nlohmann::json::array();
    for (const Row& r : rows) {
      jr.push_back({{"step", r.step},
                    {"x", r.e.x},
                    {"p_up", r.e.p_up},
                    {"p_down", r.e.p_down},
                    {"p", r.e.p}});
    }
    const Moments m = moments(distribution(st));
    nlohmann::json j{{"walk", a.walk},
                     {"steps", spec.steps},
                     {"theta", spec.theta},
                     {"rows", jr},
                     {"moments",
                      {{"mean", m.mean}, {"variance", m.variance}, {"argmax", m.argmax}}}};
    emit(a.out, j.dump() + "\n");
  } else {
    throw std::invalid_argument("unknown format: " + a.format);
  }
  return 0;
}

// ------------------------------------------------------------------- equivalence

int run_equivalence(int steps, const std::string& theta, const std::string& delta,
                    const std::string& eta, const std::string& coin) {
  const EquivalenceReport r =
      certify_equivalence(parse_angle(theta), steps,
                          {parse_angle(delta), parse_angle(eta)},
                          parse_convention(coin));
  std::cout << "ssqw_vs_sqw," << fmt(r.ssqw_vs_sqw) << "\n";
  std::cout << "dqw_vs_sqw," << fmt(r.dqw_vs_sqw) << "\n";
  std::cout << "ssqw_vs_dqw," << fmt(r.ssqw_vs_dqw) << "\n";
  const bool ok = r.passed(kCheckTolerance);
  std::cerr << "worst deviation " << fmt(r.worst()) << " vs tolerance "
            << fmt(kCheckTolerance) << ": " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

// ----------------------------------------------------------------- circuit synth

struct SynthArgs {
  std::string walk = "sqw";
  std::string enc = "table1";
  int steps = 0;
  std::optional<std::string> theta;
  std::optional<std::string> thetas;
  std::string coin = "phase";
  bool fixed_initial = false;
  long long x0 = 0;
  bool parity_tracking = false;
  std::string policy = "minimal";
  std::optional<std::string> out;
  std::optional<std::string> qasm;
  bool print_metrics = false;
};

std::vector<double> synth_thetas(const SynthArgs& a) {
  if (a.thetas) {
    std::vector<double> t = parse_angle_list(*a.thetas);
    if (static_cast<int>(t.size()) != a.steps)
      throw std::invalid_argument("need one angle per step in --thetas");
    return t;
  }
  if (!a.theta) throw std::invalid_argument("need --theta or --thetas");
  return std::vector<double>(static_cast<std::size_t>(a.steps), parse_angle(*a.theta));
}

ControlPolicy parse_policy(const std::string& s) {
  if (s == "minimal") return ControlPolicy::Minimal;
  if (s == "full") return ControlPolicy::FullComplement;
  throw std::invalid_argument("unknown control policy: " + s);
}

Circuit synth_circuit(const SynthArgs& a) {
  SynthesisPlan plan;
  plan.walk = parse_circuit_walk(a.walk);
  plan.encoding = plan.walk == CircuitWalk::DqwAncilla ? EncodingName::Hamming
                                                       : parse_encoding_name(a.enc);
  if (plan.walk == CircuitWalk::DqwAncilla && a.enc != "hamming" && a.enc != "table1")
    throw std::invalid_argument("dqw-ancilla runs on the hamming encoding");
  plan.steps = a.steps;
  plan.convention = parse_convention(a.coin);
  plan.fixed_initial = a.fixed_initial;
  plan.x0 = a.x0;
  plan.parity_tracking = a.parity_tracking;
  plan.policy = parse_policy(a.policy);
  return synthesize_walk(plan, synth_thetas(a));
}

int run_synth(const SynthArgs& a) {
  const Circuit c = synth_circuit(a);
  const std::string json = circuit_to_json(c).dump() + "\n";
  if (a.qasm) write_text(*a.qasm, export_qasm(c));
  if (a.out || !a.qasm) emit(a.out, json);
  if (a.print_metrics) {
    const Metrics m = metrics(c);
    std::cerr << "gates total=" << m.total << " x=" << m.x << " coin=" << m.coin
              << " cx=" << m.cx << " ccx=" << m.ccx << " mcx=" << m.mcx
              << " cswap=" << m.cswap << " swap=" << m.swap << " depth=" << m.depth
              << " max_control_order=" << m.max_control_order << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------- circuit run

struct RunArgs {
  std::string circuit_path;
  std::string enc = "table1";
  std::optional<std::string> initial;
  std::optional<long long> x0;
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 1;
  bool trace_ancillas = false;
};

int run_circuit(const RunArgs& a) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(a.circuit_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaViolation(std::string("invalid circuit JSON: ") + e.what());
  }
  const Circuit c = circuit_from_json(j);
  const Encoding& enc = encoding(parse_encoding_name(a.enc));

  QState s(c.width);
  if (a.initial) {
    const Bits b = Bits::from_string(*a.initial);
    if (b.width != c.width)
      throw std::invalid_argument("--initial width must equal the circuit width");
    s = QState::from_basis(c.width, b.value);
  } else if (a.x0) {
    const Bits pos = enc.encode(*a.x0);
    std::uint64_t idx = 0;
    for (int i = 0; i < pos.width; ++i) {
      if (pos.bit(i))
        idx |= std::uint64_t{1} << (c.width - 1 - c.position[static_cast<std::size_t>(i)]);
    }
    s = QState::from_basis(c.width, idx);
  }
  s = run(std::move(s), c);

  if (a.shots) {
    std::string text = "ket,count\n";
    for (const auto& [index, count] : sample(s, *a.shots, a.seed))
      text += ket_string(s.n, index) + "," + std::to_string(count) + "\n";
    std::cout << text;
  } else {
    const Distribution d = position_distribution(s, enc, c.coin, c.position);
    std::string text = "x,p_up,p_down,p\n";
    for (const DistributionEntry& e : d.entries)
      text += std::to_string(e.x) + "," + fmt(e.p_up) + "," + fmt(e.p_down) + "," +
              fmt(e.p) + "\n";
    std::cout << text;
  }
  if (a.trace_ancillas) {
    if (c.ancilla.empty()) {
      std::cerr << "no ancillas declared\n";
    } else {
      std::vector<int> traced;
      for (int q = 0; q < c.width; ++q)
        if (std::find(c.ancilla.begin(), c.ancilla.end(), q) == c.ancilla.end())
          traced.push_back(q);
      const ReducedState r = trace_out(s, traced);
      std::cerr << "ancilla zero-probability " << fmt(r.probs[0]) << ", purity "
                << fmt(r.purity) << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------- circuit export

int run_export(const std::string& circuit_path, const std::optional<std::string>& out) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(circuit_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaViolation(std::string("invalid circuit JSON: ") + e.what());
  }
  emit(out, export_qasm(circuit_from_json(j)));
  return 0;
}

// --------------------------------------------------------------- circuit compare

int run_compare(const SynthArgs& a) {
  SynthesisPlan plan;
  plan.walk = parse_circuit_walk(a.walk);
  plan.encoding = plan.walk == CircuitWalk::DqwAncilla ? EncodingName::Hamming
                                                       : parse_encoding_name(a.enc);
  plan.steps = a.steps;
  plan.convention = parse_convention(a.coin);
  plan.fixed_initial = a.fixed_initial;
  plan.x0 = a.x0;
  plan.parity_tracking = a.parity_tracking;
  plan.policy = parse_policy(a.policy);
  const CircuitWalkCheck r = check_plan_against_walk(plan, synth_thetas(a));
  std::cout << "total_variation," << fmt(r.total_variation) << "\n";
  std::cout << "ancilla_weight," << fmt(r.ancilla_weight) << "\n";
  std::cout << "norm_error," << fmt(r.norm_error) << "\n";
  const bool ok = r.total_variation < kCheckTolerance &&
                  r.ancilla_weight < kCheckTolerance && r.norm_error < kCheckTolerance;
  std::cerr << (ok ? "PASS" : "FAIL") << " vs tolerance " << fmt(kCheckTolerance)
            << "\n";
  return ok ? 0 : 1;
}

int run_compare_encodings(const std::string& walk, int steps, const std::string& theta,
                          const std::string& encs_csv, bool fixed_initial,
                          const std::string& coin) {
  std::vector<EncodingName> encs;
  std::stringstream ss(encs_csv);
  std::string item;
  while (std::getline(ss, item, ',')) encs.push_back(parse_encoding_name(item));
  if (encs.empty()) throw std::invalid_argument("empty encoding list");
  const auto rows =
      compare_encodings(parse_circuit_walk(walk), steps, parse_angle(theta), encs,
                        fixed_initial, parse_convention(coin));
  std::cout << "encoding,route,x,coin,cx,ccx,mcx,cswap,swap,total,depth,"
               "max_control_order,ancillas,error\n";
  for (const CompareRow& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::cout << to_string(r.encoding) << ","
              << (r.ancilla_route ? "ancilla" : "permutation") << ",";
    if (r.error.empty()) {
      const Metrics& m = r.metrics;
      std::cout << m.x << "," << m.coin << "," << m.cx << "," << m.ccx << "," << m.mcx
                << "," << m.cswap << "," << m.swap << "," << m.total << "," << m.depth
                << "," << m.max_control_order << "," << r.ancillas << ",\n";
    } else {
      std::cout << ",,,,,,,,,,," << err << "\n";
    }
  }
  return 0;
}

// --------------------------------------------------------------------- resources

int run_resources(const std::string& walk, std::optional<int> qubits,
                  std::optional<int> steps) {
  if (qubits.has_value() == steps.has_value())
    throw std::invalid_argument("give exactly one of --qubits and --steps");
  const CircuitWalk w = parse_circuit_walk(walk);
  const ResourceEstimate r = qubits ? estimate_resources_for_qubits(w, *qubits)
                                    : estimate_resources_for_steps(w, *steps);
  std::cout << "walk,qubits,max_steps,max_control_order,ancillas\n";
  std::cout << to_string(r.walk) << "," << r.qubits << "," << r.max_steps << ","
            << r.max_control_order << "," << r.ancillas << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete-time quantum walks: simulation, equivalence, circuits"};
  app.require_subcommand(1);

  // simulate
  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "evolve a walk and print its distribution");
  c_sim->add_option("--walk", sim.walk, "sqw | dqw | ssqw")->required();
  c_sim->add_option("--steps", sim.steps, "number of steps")
      ->required()
      ->check(CLI::NonNegativeNumber);
  c_sim->add_option("--theta", sim.theta, "coin angle (decimals or pi fractions)")
      ->required();
  std::string sim_theta2;
  auto* o_theta2 = c_sim->add_option("--theta2", sim_theta2, "second split-step angle");
  c_sim->add_option("--delta", sim.delta, "initial coin mixing angle");
  c_sim->add_option("--eta", sim.eta, "initial coin relative phase");
  c_sim->add_option("--coin", sim.coin, "phase | real");
  c_sim->add_option("--x0", sim.x0, "start position");
  c_sim->add_flag("--trajectory", sim.trajectory, "emit every step, not only the last");
  c_sim->add_option("--format", sim.format, "csv | json");
  std::string sim_out;
  auto* o_sim_out = c_sim->add_option("--out", sim_out, "write to a file instead of stdout");

  // equivalence
  int eq_steps = 0;
  std::string eq_theta, eq_delta = "0", eq_eta = "0", eq_coin = "phase";
  auto* c_eq = app.add_subcommand(
      "equivalence", "certify that the three variants simulate each other");
  c_eq->add_option("--steps", eq_steps, "split-step count (others run twice as long)")
      ->required()
      ->check(CLI::NonNegativeNumber);
  c_eq->add_option("--theta", eq_theta, "coin angle")->required();
  c_eq->add_option("--delta", eq_delta, "initial coin mixing angle");
  c_eq->add_option("--eta", eq_eta, "initial coin relative phase");
  c_eq->add_option("--coin", eq_coin, "phase | real");

  // circuit group
  auto* c_circ = app.add_subcommand("circuit", "compile, run, export, compare");
  c_circ->require_subcommand(1);

  SynthArgs synth;
  auto* c_synth = c_circ->add_subcommand("synth", "compile a walk to gates (JSON)");
  std::string synth_theta, synth_thetas_csv, synth_out, synth_qasm;
  c_synth->add_option("--walk", synth.walk, "sqw | dqw | dqw-ancilla")->required();
  c_synth->add_option("--encoding", synth.enc, "table1 | table2 | naive | hamming");
  c_synth->add_option("--steps", synth.steps, "number of steps")
      ->required()
      ->check(CLI::NonNegativeNumber);
  auto* o_thetaA = c_synth->add_option("--theta", synth_theta, "coin angle, all steps");
  auto* o_thetaL = c_synth->add_option("--thetas", synth_thetas_csv,
                                       "comma-separated per-step angles");
  c_synth->add_option("--coin", synth.coin, "phase | real");
  c_synth->add_flag("--fixed-initial", synth.fixed_initial,
                    "specialize to runs started at --x0");
  c_synth->add_option("--x0", synth.x0, "start position the circuit is specialized to");
  c_synth->add_flag("--parity-tracking", synth.parity_tracking,
                    "fold per-step marker flips into one final x");
  c_synth->add_option("--policy", synth.policy, "minimal | full (control sets)");
  auto* o_synth_out = c_synth->add_option("--out", synth_out, "write JSON here");
  auto* o_synth_qasm = c_synth->add_option("--qasm", synth_qasm, "also write OpenQASM here");
  c_synth->add_flag("--metrics", synth.print_metrics, "print gate metrics to stderr");

  RunArgs runa;
  auto* c_run = c_circ->add_subcommand("run", "execute a circuit JSON on the simulator");
  std::string run_initial;
  long long run_x0 = 0;
  std::uint64_t run_shots = 0;
  c_run->add_option("--circuit", runa.circuit_path, "circuit JSON file")->required();
  c_run->add_option("--encoding", runa.enc, "encoding for position readout");
  auto* o_run_init = c_run->add_option("--initial", run_initial,
                                       "initial basis ket as a bit string");
  auto* o_run_x0 = c_run->add_option("--x0", run_x0, "start position (coin up)");
  auto* o_run_shots = c_run->add_option("--shots", run_shots, "sample counts instead");
  c_run->add_option("--seed", runa.seed, "sampling seed");
  c_run->add_flag("--trace-ancillas", runa.trace_ancillas,
                  "report the reduced ancilla state on stderr");

  std::string export_circuit, export_out;
  auto* c_export = c_circ->add_subcommand("export", "emit OpenQASM 2.0 for a circuit JSON");
  c_export->add_option("--circuit", export_circuit, "circuit JSON file")->required();
  auto* o_export_out = c_export->add_option("--out", export_out, "write here");

  SynthArgs cmp;
  auto* c_cmp = c_circ->add_subcommand(
      "compare", "synthesize, simulate, and check against the walk");
  std::string cmp_theta, cmp_thetas_csv;
  c_cmp->add_option("--walk", cmp.walk, "sqw | dqw | dqw-ancilla")->required();
  c_cmp->add_option("--encoding", cmp.enc, "table1 | table2 | naive | hamming");
  c_cmp->add_option("--steps", cmp.steps, "number of steps")
      ->required()
      ->check(CLI::NonNegativeNumber);
  auto* o_cthetaA = c_cmp->add_option("--theta", cmp_theta, "coin angle, all steps");
  auto* o_cthetaL = c_cmp->add_option("--thetas", cmp_thetas_csv, "per-step angles");
  c_cmp->add_option("--coin", cmp.coin, "phase | real");
  c_cmp->add_flag("--fixed-initial", cmp.fixed_initial, "specialize to --x0");
  c_cmp->add_option("--x0", cmp.x0, "start position");
  c_cmp->add_flag("--parity-tracking", cmp.parity_tracking, "track the marker classically");
  c_cmp->add_option("--policy", cmp.policy, "minimal | full");

  std::string cmpe_walk = "dqw", cmpe_theta = "pi/4", cmpe_encs = "table1,table2,naive";
  std::string cmpe_coin = "phase";
  int cmpe_steps = 0;
  bool cmpe_fixed = false;
  auto* c_cmpe = c_circ->add_subcommand("compare-encodings",
                                        "tabulate gate metrics across encodings");
  c_cmpe->add_option("--walk", cmpe_walk, "sqw | dqw | dqw-ancilla")->required();
  c_cmpe->add_option("--steps", cmpe_steps, "number of steps")
      ->required()
      ->check(CLI::NonNegativeNumber);
  c_cmpe->add_option("--theta", cmpe_theta, "coin angle")->required();
  c_cmpe->add_option("--encodings", cmpe_encs, "comma-separated encodings");
  c_cmpe->add_flag("--fixed-initial", cmpe_fixed, "specialize to runs from 0");
  c_cmpe->add_option("--coin", cmpe_coin, "phase | real");

  // resources
  std::string res_walk = "sqw";
  int res_qubits = 0, res_steps = 0;
  auto* c_res = app.add_subcommand("resources", "capacity and control-order table");
  c_res->add_option("--walk", res_walk, "sqw | dqw | dqw-ancilla")->required();
  auto* o_res_q = c_res->add_option("--qubits", res_qubits, "register size");
  auto* o_res_s = c_res->add_option("--steps", res_steps, "walk length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_sim->parsed()) {
      if (o_theta2->count()) sim.theta2 = sim_theta2;
      if (o_sim_out->count()) sim.out = sim_out;
      return run_simulate(sim);
    }
    if (c_eq->parsed())
      return run_equivalence(eq_steps, eq_theta, eq_delta, eq_eta, eq_coin);
    if (c_circ->parsed()) {
      if (c_synth->parsed()) {
        if (o_thetaA->count()) synth.theta = synth_theta;
        if (o_thetaL->count()) synth.thetas = synth_thetas_csv;
        if (o_synth_out->count()) synth.out = synth_out;
        if (o_synth_qasm->count()) synth.qasm = synth_qasm;
        return run_synth(synth);
      }
      if (c_run->parsed()) {
        if (o_run_init->count()) runa.initial = run_initial;
        if (o_run_x0->count()) runa.x0 = run_x0;
        if (o_run_shots->count()) runa.shots = run_shots;
        return run_circuit(runa);
      }
      if (c_export->parsed()) {
        std::optional<std::string> out;
        if (o_export_out->count()) out = export_out;
        return run_export(export_circuit, out);
      }
      if (c_cmp->parsed()) {
        if (o_cthetaA->count()) cmp.theta = cmp_theta;
        if (o_cthetaL->count()) cmp.thetas = cmp_thetas_csv;
        return run_compare(cmp);
      }
      if (c_cmpe->parsed())
        return run_compare_encodings(cmpe_walk, cmpe_steps, cmpe_theta, cmpe_encs,
                                     cmpe_fixed, cmpe_coin);
    }
    if (c_res->parsed()) {
      std::optional<int> q, s;
      if (o_res_q->count()) q = res_qubits;
      if (o_res_s->count()) s = res_steps;
      return run_resources(res_walk, q, s);
    }
    throw std::invalid_argument("no subcommand");
  } catch (const UnmappedBitString& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
