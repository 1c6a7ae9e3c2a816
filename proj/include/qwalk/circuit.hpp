#pragma once
// Gate-level intermediate representation for walk circuits: X-family gates
// with polarity-aware controls, single-qubit coin rotations, swaps and a
// controlled swap; JSON round-trip, metrics, and OpenQASM 2.0 export.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "walk.hpp"  // CoinConvention

namespace qwalk {

struct SchemaViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class GateKind { X, Coin, CX, CCX, MCX, CSwap, Swap };

struct Control {
  int qubit = 0;
  int polarity = 1;  // 1: fires on |1>, 0: fires on |0>

  friend bool operator==(const Control& a, const Control& b) {
    return a.qubit == b.qubit && a.polarity == b.polarity;
  }
};

struct Gate {
  GateKind kind = GateKind::X;
  std::vector<Control> controls;
  std::vector<int> targets;
  double theta = 0.0;                                // Coin only
  CoinConvention conv = CoinConvention::Phase;       // Coin only

  // 0 for uncontrolled gates; the number of controls otherwise.
  int control_order() const { return static_cast<int>(controls.size()); }

  friend bool operator==(const Gate& a, const Gate& b) {
    return a.kind == b.kind && a.controls == b.controls && a.targets == b.targets &&
           a.theta == b.theta && a.conv == b.conv;
  }
};

inline Gate x_gate(int target) {
  Gate g;
  g.kind = GateKind::X;
  g.targets = {target};
  return g;
}

inline Gate coin_gate(int target, double theta, CoinConvention conv) {
  Gate g;
  g.kind = GateKind::Coin;
  g.targets = {target};
  g.theta = theta;
  g.conv = conv;
  return g;
}

// Picks X / CX / CCX / MCX by the number of controls.
inline Gate controlled_x(std::vector<Control> controls, int target) {
  Gate g;
  switch (controls.size()) {
    case 0: g.kind = GateKind::X; break;
    case 1: g.kind = GateKind::CX; break;
    case 2: g.kind = GateKind::CCX; break;
    default: g.kind = GateKind::MCX; break;
  }
  g.controls = std::move(controls);
  g.targets = {target};
  return g;
}

inline Gate swap_gate(int a, int b) {
  Gate g;
  g.kind = GateKind::Swap;
  g.targets = {a, b};
  return g;
}

inline Gate cswap_gate(Control control, int a, int b) {
  Gate g;
  g.kind = GateKind::CSwap;
  g.controls = {control};
  g.targets = {a, b};
  return g;
}

struct Circuit {
  int width = 0;
  int coin = 0;                 // coin qubit index
  std::vector<int> position;    // position qubits, most significant first
  std::vector<int> ancilla;     // work qubits expected to return to |0>
  std::vector<Gate> gates;

  void validate() const;
};

namespace detail {

inline void check_gate(const Gate& g, int width) {
  auto check_q = [width](int q, const char* what) {
    if (q < 0 || q >= width)
      throw SchemaViolation(std::string(what) + " qubit out of range");
  };
  std::set<int> seen;
  for (const Control& c : g.controls) {
    check_q(c.qubit, "control");
    if (c.polarity != 0 && c.polarity != 1)
      throw SchemaViolation("control polarity must be 0 or 1");
    if (!seen.insert(c.qubit).second)
      throw SchemaViolation("duplicate control qubit");
  }
  for (int t : g.targets) {
    check_q(t, "target");
    if (!seen.insert(t).second)
      throw SchemaViolation("target collides with another wire of the gate");
  }
  const std::size_t n_targets = g.targets.size();
  const std::size_t n_controls = g.controls.size();
  switch (g.kind) {
    case GateKind::X:
      if (n_targets != 1 || n_controls != 0)
        throw SchemaViolation("x takes one target and no controls");
      break;
    case GateKind::Coin:
      if (n_targets != 1 || n_controls != 0)
        throw SchemaViolation("coin takes one target and no controls");
      break;
    case GateKind::CX:
      if (n_targets != 1 || n_controls != 1)
        throw SchemaViolation("cx takes one control and one target");
      break;
    case GateKind::CCX:
      if (n_targets != 1 || n_controls != 2)
        throw SchemaViolation("ccx takes two controls and one target");
      break;
    case GateKind::MCX:
      if (n_targets != 1)
        throw SchemaViolation("mcx takes one target");
      break;
    case GateKind::CSwap:
      if (n_targets != 2 || n_controls != 1)
        throw SchemaViolation("cswap takes one control and two targets");
      break;
    case GateKind::Swap:
      if (n_targets != 2 || n_controls != 0)
        throw SchemaViolation("swap takes two targets and no controls");
      break;
  }
}

}  // namespace detail

inline void Circuit::validate() const {
  if (width < 1) throw SchemaViolation("width must be positive");
  auto check_q = [this](int q, const char* what) {
    if (q < 0 || q >= width)
      throw SchemaViolation(std::string(what) + " qubit out of range");
  };
  std::set<int> roles;
  check_q(coin, "coin");
  roles.insert(coin);
  for (int q : position) {
    check_q(q, "position");
    if (!roles.insert(q).second) throw SchemaViolation("position qubit reused");
  }
  for (int q : ancilla) {
    check_q(q, "ancilla");
    if (!roles.insert(q).second) throw SchemaViolation("ancilla qubit reused");
  }
  for (const Gate& g : gates) detail::check_gate(g, width);
}

struct Metrics {
  int x = 0;
  int coin = 0;
  int cx = 0;
  int ccx = 0;
  int mcx = 0;
  int cswap = 0;
  int swap = 0;
  int total = 0;
  int depth = 0;
  int max_control_order = 0;
};

inline Metrics metrics(const Circuit& c) {
  Metrics m;
  std::vector<int> height(static_cast<std::size_t>(c.width), 0);
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::X: ++m.x; break;
      case GateKind::Coin: ++m.coin; break;
      case GateKind::CX: ++m.cx; break;
      case GateKind::CCX: ++m.ccx; break;
      case GateKind::MCX: ++m.mcx; break;
      case GateKind::CSwap: ++m.cswap; break;
      case GateKind::Swap: ++m.swap; break;
    }
    ++m.total;
    m.max_control_order = std::max(m.max_control_order, g.control_order());
    int h = 0;
    for (const Control& ct : g.controls) h = std::max(h, height[static_cast<std::size_t>(ct.qubit)]);
    for (int t : g.targets) h = std::max(h, height[static_cast<std::size_t>(t)]);
    ++h;
    for (const Control& ct : g.controls) height[static_cast<std::size_t>(ct.qubit)] = h;
    for (int t : g.targets) height[static_cast<std::size_t>(t)] = h;
    m.depth = std::max(m.depth, h);
  }
  return m;
}

// ---------------------------------------------------------------------------
// JSON round-trip

namespace detail {

inline const char* kind_tag(GateKind k) {
  switch (k) {
    case GateKind::X: return "x";
    case GateKind::Coin: return "coin";
    case GateKind::CX: return "cx";
    case GateKind::CCX: return "ccx";
    case GateKind::MCX: return "mcx";
    case GateKind::CSwap: return "cswap";
    case GateKind::Swap: return "swap";
  }
  throw std::logic_error("unknown gate kind");
}

inline GateKind parse_kind(const std::string& s) {
  if (s == "x") return GateKind::X;
  if (s == "coin") return GateKind::Coin;
  if (s == "cx") return GateKind::CX;
  if (s == "ccx") return GateKind::CCX;
  if (s == "mcx") return GateKind::MCX;
  if (s == "cswap") return GateKind::CSwap;
  if (s == "swap") return GateKind::Swap;
  throw SchemaViolation("unknown gate tag: " + s);
}

}  // namespace detail

inline nlohmann::json circuit_to_json(const Circuit& c) {
  nlohmann::json gates = nlohmann::json::array();
  for (const Gate& g : c.gates) {
    nlohmann::json jg;
    jg["g"] = detail::kind_tag(g.kind);
    if (g.kind == GateKind::Coin) {
      jg["theta"] = g.theta;
      jg["conv"] = g.conv == CoinConvention::Phase ? "phase" : "real";
    }
    if (!g.controls.empty()) {
      nlohmann::json jc = nlohmann::json::array();
      for (const Control& ct : g.controls)
        jc.push_back({{"q", ct.qubit}, {"pol", ct.polarity}});
      jg["c"] = jc;
    }
    jg["t"] = g.targets;
    gates.push_back(jg);
  }
  return nlohmann::json{{"width", c.width},
                        {"coin", c.coin},
                        {"position", c.position},
                        {"ancilla", c.ancilla},
                        {"gates", gates}};
}

namespace detail {

inline int require_int(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw SchemaViolation(std::string("missing or non-integer field: ") + key);
  return j[key].get<int>();
}

inline std::vector<int> require_int_array(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw SchemaViolation(std::string("missing or non-array field: ") + key);
  std::vector<int> out;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer())
      throw SchemaViolation(std::string("non-integer entry in ") + key);
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace detail

inline Circuit circuit_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaViolation("circuit must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "width" && key != "coin" && key != "position" && key != "ancilla" &&
        key != "gates")
      throw SchemaViolation("unknown circuit field: " + key);
  }
  Circuit c;
  c.width = detail::require_int(j, "width");
  c.coin = detail::require_int(j, "coin");
  c.position = detail::require_int_array(j, "position");
  c.ancilla = j.contains("ancilla") ? detail::require_int_array(j, "ancilla")
                                    : std::vector<int>{};
  if (!j.contains("gates") || !j["gates"].is_array())
    throw SchemaViolation("missing or non-array field: gates");
  for (const auto& jg : j["gates"]) {
    if (!jg.is_object()) throw SchemaViolation("gate must be a JSON object");
    for (const auto& [key, _] : jg.items()) {
      if (key != "g" && key != "theta" && key != "conv" && key != "c" && key != "t")
        throw SchemaViolation("unknown gate field: " + key);
    }
    if (!jg.contains("g") || !jg["g"].is_string())
      throw SchemaViolation("gate needs a string tag g");
    Gate g;
    g.kind = detail::parse_kind(jg["g"].get<std::string>());
    if (g.kind == GateKind::Coin) {
      if (!jg.contains("theta") || !jg["theta"].is_number())
        throw SchemaViolation("coin gate needs a numeric theta");
      g.theta = jg["theta"].get<double>();
      if (!jg.contains("conv") || !jg["conv"].is_string())
        throw SchemaViolation("coin gate needs conv");
      const std::string conv = jg["conv"].get<std::string>();
      if (conv == "phase") g.conv = CoinConvention::Phase;
      else if (conv == "real") g.conv = CoinConvention::Real;
      else throw SchemaViolation("conv must be phase or real");
    } else if (jg.contains("theta") || jg.contains("conv")) {
      throw SchemaViolation("theta/conv are only valid on coin gates");
    }
    if (jg.contains("c")) {
      if (!jg["c"].is_array()) throw SchemaViolation("c must be an array");
      for (const auto& jc : jg["c"]) {
        if (!jc.is_object()) throw SchemaViolation("control must be an object");
        Control ct;
        ct.qubit = detail::require_int(jc, "q");
        ct.polarity = detail::require_int(jc, "pol");
        g.controls.push_back(ct);
      }
    }
    g.targets = detail::require_int_array(jg, "t");
    detail::check_gate(g, c.width);
    c.gates.push_back(g);
  }
  c.validate();
  return c;
}

// ---------------------------------------------------------------------------
// OpenQASM 2.0 export

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

// Deterministic OpenQASM 2.0 text. Coin rotations are emitted as declared
// u3-based gates; controls with polarity 0 are conjugated by x; mcx with
// three or more controls becomes an opaque declaration; swap and cswap are
// expanded into cx/ccx so only stock qelib1 gates are referenced.
inline std::string export_qasm(const Circuit& c) {
  bool used_phase = false;
  bool used_real = false;
  std::set<int> mcx_orders;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::Coin) {
      (g.conv == CoinConvention::Phase ? used_phase : used_real) = true;
    }
    if (g.kind == GateKind::X || g.kind == GateKind::CX || g.kind == GateKind::CCX ||
        g.kind == GateKind::MCX) {
      if (g.controls.size() >= 3) mcx_orders.insert(static_cast<int>(g.controls.size()));
    }
  }

  std::string out;
  out += "OPENQASM 2.0;\n";
  out += "include \"qelib1.inc\";\n";
  if (used_phase)
    out += "gate coin_phase(theta) q { u3(2*theta,-pi/2,pi/2) q; }\n";
  if (used_real)
    out += "gate coin_real(theta) q { u3(2*theta,0,pi) q; }\n";
  for (int k : mcx_orders) {
    out += "opaque mcx_" + std::to_string(k);
    for (int i = 0; i < k; ++i) out += (i == 0 ? " c0" : ",c" + std::to_string(i));
    out += ",t;\n";
  }
  out += "qreg q[" + std::to_string(c.width) + "];\n";

  auto wire = [](int q) { return "q[" + std::to_string(q) + "]"; };
  auto flip_negative_controls = [&](const Gate& g) {
    std::string s;
    for (const Control& ct : g.controls)
      if (ct.polarity == 0) s += "x " + wire(ct.qubit) + ";\n";
    return s;
  };

  for (const Gate& g : c.gates) {
    out += flip_negative_controls(g);
    switch (g.kind) {
      case GateKind::Coin:
        out += (g.conv == CoinConvention::Phase ? "coin_phase(" : "coin_real(");
        out += detail::format_double(g.theta) + ") " + wire(g.targets[0]) + ";\n";
        break;
      case GateKind::X:
      case GateKind::CX:
      case GateKind::CCX:
      case GateKind::MCX: {
        const std::size_t k = g.controls.size();
        if (k == 0) {
          out += "x " + wire(g.targets[0]) + ";\n";
        } else if (k == 1) {
          out += "cx " + wire(g.controls[0].qubit) + "," + wire(g.targets[0]) + ";\n";
        } else if (k == 2) {
          out += "ccx " + wire(g.controls[0].qubit) + "," + wire(g.controls[1].qubit) +
                 "," + wire(g.targets[0]) + ";\n";
        } else {
          out += "mcx_" + std::to_string(k);
          for (std::size_t i = 0; i < k; ++i)
            out += (i == 0 ? " " : ",") + wire(g.controls[i].qubit);
          out += "," + wire(g.targets[0]) + ";\n";
        }
        break;
      }
      case GateKind::Swap:
        out += "cx " + wire(g.targets[0]) + "," + wire(g.targets[1]) + ";\n";
        out += "cx " + wire(g.targets[1]) + "," + wire(g.targets[0]) + ";\n";
        out += "cx " + wire(g.targets[0]) + "," + wire(g.targets[1]) + ";\n";
        break;
      case GateKind::CSwap:
        out += "cx " + wire(g.targets[1]) + "," + wire(g.targets[0]) + ";\n";
        out += "ccx " + wire(g.controls[0].qubit) + "," + wire(g.targets[0]) + "," +
               wire(g.targets[1]) + ";\n";
        out += "cx " + wire(g.targets[1]) + "," + wire(g.targets[0]) + ";\n";
        break;
    }
    out += flip_negative_controls(g);
  }
  return out;
}

}  // namespace qwalk
