// Circuit IR: builders, validation, metrics, JSON round-trip, QASM export.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "qwalk/circuit.hpp"

using qwalk::cd;
using qwalk::Circuit;
using qwalk::CoinConvention;
using qwalk::Control;
using qwalk::Gate;
using qwalk::GateKind;
using qwalk::SchemaViolation;

namespace {

Circuit sample_circuit() {
  Circuit c;
  c.width = 4;
  c.coin = 0;
  c.position = {1, 2, 3};
  c.gates = {
      qwalk::coin_gate(0, 0.5, CoinConvention::Phase),
      qwalk::coin_gate(1, 0.25, CoinConvention::Real),
      qwalk::controlled_x({{0, 1}, {1, 0}}, 2),
      qwalk::swap_gate(1, 2),
      qwalk::cswap_gate({3, 1}, 1, 2),
      qwalk::x_gate(1),
      qwalk::controlled_x({{0, 1}, {1, 0}, {2, 1}}, 3),
  };
  return c;
}

const char* kGoldenQasm =
    "OPENQASM 2.0;\n"
    "include \"qelib1.inc\";\n"
    "gate coin_phase(theta) q { u3(2*theta,-pi/2,pi/2) q; }\n"
    "gate coin_real(theta) q { u3(2*theta,0,pi) q; }\n"
    "opaque mcx_3 c0,c1,c2,t;\n"
    "qreg q[4];\n"
    "coin_phase(0.5) q[0];\n"
    "coin_real(0.25) q[1];\n"
    "x q[1];\n"
    "ccx q[0],q[1],q[2];\n"
    "x q[1];\n"
    "cx q[1],q[2];\n"
    "cx q[2],q[1];\n"
    "cx q[1],q[2];\n"
    "cx q[2],q[1];\n"
    "ccx q[3],q[1],q[2];\n"
    "cx q[2],q[1];\n"
    "x q[1];\n"
    "x q[1];\n"
    "mcx_3 q[0],q[1],q[2],q[3];\n"
    "x q[1];\n";

// qelib1-style u3: [[cos(t/2), -e^{il} sin(t/2)], [e^{ip} sin(t/2), e^{i(p+l)} cos(t/2)]]
struct Mat2 {
  cd a, b, c, d;
};

Mat2 u3(double theta, double phi, double lambda) {
  const double ch = std::cos(theta / 2), sh = std::sin(theta / 2);
  return {cd{ch, 0.0}, -std::exp(cd{0.0, lambda}) * sh,
          std::exp(cd{0.0, phi}) * sh, std::exp(cd{0.0, phi + lambda}) * ch};
}

}  // namespace

TEST_CASE("builders pick the gate kind from the control count", "[circuit]") {
  CHECK(qwalk::controlled_x({}, 2).kind == GateKind::X);
  CHECK(qwalk::controlled_x({{0, 1}}, 2).kind == GateKind::CX);
  CHECK(qwalk::controlled_x({{0, 1}, {1, 1}}, 2).kind == GateKind::CCX);
  CHECK(qwalk::controlled_x({{0, 1}, {1, 1}, {3, 0}}, 2).kind == GateKind::MCX);
  CHECK(qwalk::controlled_x({{0, 1}, {1, 1}, {3, 0}}, 2).control_order() == 3);
  CHECK(qwalk::x_gate(1).control_order() == 0);
  CHECK(qwalk::coin_gate(0, 1.0, CoinConvention::Real).theta == 1.0);
}

TEST_CASE("validation catches malformed circuits", "[circuit]") {
  Circuit c = sample_circuit();
  CHECK_NOTHROW(c.validate());

  Circuit bad = c;
  bad.width = 0;
  CHECK_THROWS_AS(bad.validate(), SchemaViolation);

  bad = c;
  bad.coin = 4;
  CHECK_THROWS_AS(bad.validate(), SchemaViolation);

  bad = c;
  bad.position = {1, 1};
  CHECK_THROWS_AS(bad.validate(), SchemaViolation);

  bad = c;
  bad.ancilla = {0};  // collides with the coin wire
  CHECK_THROWS_AS(bad.validate(), SchemaViolation);

  bad = c;
  bad.gates.push_back(qwalk::controlled_x({{1, 1}}, 1));  // control == target
  CHECK_THROWS_AS(bad.validate(), SchemaViolation);

  bad = c;
  bad.gates.push_back(qwalk::x_gate(7));
  CHECK_THROWS_AS(bad.validate(), SchemaViolation);

  bad = c;
  bad.gates.push_back(qwalk::controlled_x({{0, 1}, {0, 0}}, 2));  // duplicate
  CHECK_THROWS_AS(bad.validate(), SchemaViolation);

  bad = c;
  Gate g = qwalk::x_gate(1);
  g.controls = {{0, 1}};  // x must not carry controls
  bad.gates.push_back(g);
  CHECK_THROWS_AS(bad.validate(), SchemaViolation);

  bad = c;
  g = qwalk::swap_gate(1, 2);
  g.targets = {1};
  bad.gates.push_back(g);
  CHECK_THROWS_AS(bad.validate(), SchemaViolation);

  bad = c;
  g = qwalk::controlled_x({{0, 2}}, 1);  // polarity out of range
  bad.gates.push_back(g);
  CHECK_THROWS_AS(bad.validate(), SchemaViolation);
}

TEST_CASE("gate census, depth and control order", "[circuit]") {
  const auto m = qwalk::metrics(sample_circuit());
  CHECK(m.x == 1);
  CHECK(m.coin == 2);
  CHECK(m.cx == 0);
  CHECK(m.ccx == 1);
  CHECK(m.mcx == 1);
  CHECK(m.cswap == 1);
  CHECK(m.swap == 1);
  CHECK(m.total == 7);
  CHECK(m.depth == 6);
  CHECK(m.max_control_order == 3);

  CHECK(qwalk::metrics(Circuit{1, 0, {}, {}, {}}).depth == 0);
}

TEST_CASE("json round trip", "[circuit]") {
  const Circuit c = sample_circuit();
  const auto j = qwalk::circuit_to_json(c);
  const Circuit back = qwalk::circuit_from_json(j);

  CHECK(back.width == c.width);
  CHECK(back.coin == c.coin);
  CHECK(back.position == c.position);
  CHECK(back.ancilla == c.ancilla);
  REQUIRE(back.gates.size() == c.gates.size());
  for (std::size_t i = 0; i < c.gates.size(); ++i) CHECK(back.gates[i] == c.gates[i]);

  CHECK(qwalk::circuit_to_json(back).dump() == j.dump());  // stable bytes
}

TEST_CASE("json schema violations", "[circuit]") {
  const auto base = qwalk::circuit_to_json(sample_circuit());

  auto j = base;
  j["extra"] = 1;
  CHECK_THROWS_AS(qwalk::circuit_from_json(j), SchemaViolation);

  j = base;
  j["gates"][0].erase("theta");  // coin without an angle
  CHECK_THROWS_AS(qwalk::circuit_from_json(j), SchemaViolation);

  j = base;
  j["gates"][0]["conv"] = "weird";
  CHECK_THROWS_AS(qwalk::circuit_from_json(j), SchemaViolation);

  j = base;
  j["gates"][5]["theta"] = 0.1;  // angle on a plain x gate
  CHECK_THROWS_AS(qwalk::circuit_from_json(j), SchemaViolation);

  j = base;
  j["gates"][2]["g"] = "nope";
  CHECK_THROWS_AS(qwalk::circuit_from_json(j), SchemaViolation);

  j = base;
  j["gates"][2]["c"][0]["q"] = 9;
  CHECK_THROWS_AS(qwalk::circuit_from_json(j), SchemaViolation);

  j = base;
  j["gates"][2]["surplus"] = true;
  CHECK_THROWS_AS(qwalk::circuit_from_json(j), SchemaViolation);

  j = base;
  j.erase("width");
  CHECK_THROWS_AS(qwalk::circuit_from_json(j), SchemaViolation);

  CHECK_THROWS_AS(qwalk::circuit_from_json(nlohmann::json::array()),
                  SchemaViolation);
}

TEST_CASE("qasm export is frozen and deterministic", "[circuit]") {
  const Circuit c = sample_circuit();
  const std::string qasm = qwalk::export_qasm(c);
  CHECK(qasm == kGoldenQasm);

  // Export after a JSON round trip is byte-identical.
  const Circuit back = qwalk::circuit_from_json(qwalk::circuit_to_json(c));
  CHECK(qwalk::export_qasm(back) == qasm);
}

TEST_CASE("declared qasm coin gates match the coin kernels", "[circuit]") {
  for (const double theta : {0.3, 1.1}) {
    const auto phase = qwalk::coin_matrix(theta, CoinConvention::Phase);
    const Mat2 up = u3(2 * theta, -std::numbers::pi / 2, std::numbers::pi / 2);
    CHECK(std::abs(up.a - phase.m00) < 1e-14);
    CHECK(std::abs(up.b - phase.m01) < 1e-14);
    CHECK(std::abs(up.c - phase.m10) < 1e-14);
    CHECK(std::abs(up.d - phase.m11) < 1e-14);

    const auto real = qwalk::coin_matrix(theta, CoinConvention::Real);
    const Mat2 ur = u3(2 * theta, 0.0, std::numbers::pi);
    CHECK(std::abs(ur.a - real.m00) < 1e-14);
    CHECK(std::abs(ur.b - real.m01) < 1e-14);
    CHECK(std::abs(ur.c - real.m10) < 1e-14);
    CHECK(std::abs(ur.d - real.m11) < 1e-14);
  }
}
