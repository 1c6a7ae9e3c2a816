// End-to-end tests of the command-line tool: output formats, exit codes,
// determinism, and the wiring between subcommands and the library.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_file(const std::string& stem) {
  static int seq = 0;
  return fs::temp_directory_path() /
         ("qwalk_cli_" + std::to_string(::getpid()) + "_" + std::to_string(seq++) +
          "_" + stem);
}

CliResult run_cli(const std::string& args) {
  const fs::path outp = temp_file("stdout.txt");
  const fs::path errp = temp_file("stderr.txt");
  const std::string cmd = std::string(QWALK_CLI_PATH) + " " + args + " > " +
                          outp.string() + " 2> " + errp.string();
  const int rc = std::system(cmd.c_str());
  CliResult r;
  if (rc != -1 && WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
  r.out = slurp(outp);
  r.err = slurp(errp);
  fs::remove(outp);
  fs::remove(errp);
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

struct ProbRow {
  double p_up = 0.0;
  double p_down = 0.0;
  double p = 0.0;
};

// Parses "...,x,p_up,p_down,p" rows keyed by x, taking the last four fields.
std::map<long long, ProbRow> prob_rows(const std::vector<std::string>& lines) {
  std::map<long long, ProbRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields_of(lines[i]);
    REQUIRE(f.size() >= 4);
    const std::size_t n = f.size();
    ProbRow r;
    r.p_up = std::stod(f[n - 3]);
    r.p_down = std::stod(f[n - 2]);
    r.p = std::stod(f[n - 1]);
    rows[std::stoll(f[n - 4])] = r;
  }
  return rows;
}

}  // namespace

TEST_CASE("simulate prints the final-step distribution as csv") {
  const CliResult r = run_cli("simulate --walk sqw --steps 2 --theta pi/4");
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 6);  // header + the five sites of the support window
  CHECK(lines[0] == "step,x,p_up,p_down,p");
  for (std::size_t i = 1; i < lines.size(); ++i)
    CHECK(fields_of(lines[i])[0] == "2");

  const auto rows = prob_rows(lines);
  REQUIRE(rows.size() == 5);
  const double tol = 1e-12;
  CHECK(rows.at(-2).p_up == Catch::Approx(0.25).margin(tol));
  CHECK(rows.at(-2).p_down == Catch::Approx(0.0).margin(tol));
  CHECK(rows.at(-1).p == Catch::Approx(0.0).margin(tol));
  CHECK(rows.at(0).p_up == Catch::Approx(0.25).margin(tol));
  CHECK(rows.at(0).p_down == Catch::Approx(0.25).margin(tol));
  CHECK(rows.at(1).p == Catch::Approx(0.0).margin(tol));
  CHECK(rows.at(2).p_up == Catch::Approx(0.0).margin(tol));
  CHECK(rows.at(2).p_down == Catch::Approx(0.25).margin(tol));
  double total = 0.0;
  for (const auto& [x, row] : rows) total += row.p;
  CHECK(total == Catch::Approx(1.0).margin(tol));
}

TEST_CASE("simulate parses pi fractions and scaled forms identically") {
  // 0.25*pi and pi/4 are both exact power-of-two scalings of the same double,
  // so the two runs must agree to the last printed digit.
  const CliResult a = run_cli("simulate --walk ssqw --steps 5 --theta pi/4 --theta2 pi/3");
  const CliResult b =
      run_cli("simulate --walk ssqw --steps 5 --theta 0.25*pi --theta2 pi/3");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);

  const CliResult bad = run_cli("simulate --walk sqw --steps 1 --theta pie");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("error") != std::string::npos);
}

TEST_CASE("simulate rejects negative step counts") {
  const CliResult r = run_cli("simulate --walk sqw --steps -1 --theta pi/4");
  CHECK(r.code == 2);
  CHECK(!r.err.empty());
}

TEST_CASE("simulate emits json rows and moments") {
  const CliResult r = run_cli(
      "simulate --walk ssqw --steps 3 --theta pi/8 --theta2 pi/3 --format json");
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("walk") == "ssqw");
  CHECK(j.at("steps") == 3);
  REQUIRE(j.at("rows").is_array());
  REQUIRE(j.at("rows").size() == 7);  // x in [-3, 3]
  double total = 0.0;
  for (const auto& row : j.at("rows")) {
    CHECK(row.at("step") == 3);
    total += row.at("p").get<double>();
  }
  CHECK(total == Catch::Approx(1.0).margin(1e-12));
  CHECK(j.at("moments").contains("mean"));
  CHECK(j.at("moments").contains("variance"));
  CHECK(j.at("moments").contains("argmax"));
}

TEST_CASE("equivalence reports three deviations and passes") {
  const CliResult r =
      run_cli("equivalence --steps 12 --theta pi/5 --delta 0.3 --eta 1.1");
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 3);
  const std::vector<std::string> names = {"ssqw_vs_sqw", "dqw_vs_sqw", "ssqw_vs_dqw"};
  for (int i = 0; i < 3; ++i) {
    const auto f = fields_of(lines[static_cast<std::size_t>(i)]);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == names[static_cast<std::size_t>(i)]);
    CHECK(std::stod(f[1]) < 1e-10);
  }
  CHECK(r.err.find("PASS") != std::string::npos);
}

TEST_CASE("circuit synth, run, and compare agree with the walk") {
  const fs::path circ = temp_file("sqw2.json");
  const CliResult s = run_cli(
      "circuit synth --walk sqw --encoding table1 --steps 2 --theta pi/4 --out " +
      circ.string());
  REQUIRE(s.code == 0);
  CHECK(s.out.empty());

  const CliResult r = run_cli("circuit run --circuit " + circ.string() + " --x0 0");
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] == "x,p_up,p_down,p");
  const auto rows = prob_rows(lines);
  const double tol = 1e-10;
  for (const auto& [x, row] : rows) {
    if (row.p < 1e-12) continue;
    CHECK((x == -2 || x == 0 || x == 2));
  }
  REQUIRE(rows.count(-2) == 1);
  REQUIRE(rows.count(0) == 1);
  REQUIRE(rows.count(2) == 1);
  CHECK(rows.at(-2).p_up == Catch::Approx(0.25).margin(tol));
  CHECK(rows.at(-2).p_down == Catch::Approx(0.0).margin(tol));
  CHECK(rows.at(0).p_up == Catch::Approx(0.25).margin(tol));
  CHECK(rows.at(0).p_down == Catch::Approx(0.25).margin(tol));
  CHECK(rows.at(2).p_down == Catch::Approx(0.25).margin(tol));

  const CliResult c =
      run_cli("circuit compare --walk sqw --encoding table1 --steps 2 --theta pi/4");
  REQUIRE(c.code == 0);
  const auto clines = lines_of(c.out);
  REQUIRE(clines.size() == 3);
  CHECK(clines[0].rfind("total_variation,", 0) == 0);
  CHECK(clines[1].rfind("ancilla_weight,", 0) == 0);
  CHECK(clines[2].rfind("norm_error,", 0) == 0);
  for (const auto& line : clines) CHECK(std::stod(fields_of(line)[1]) < 1e-10);
  CHECK(c.err.find("PASS") != std::string::npos);

  fs::remove(circ);
}

TEST_CASE("circuit run samples deterministically for a fixed seed") {
  const fs::path circ = temp_file("sample.json");
  REQUIRE(run_cli("circuit synth --walk sqw --encoding table1 --steps 2 --theta pi/4"
                  " --out " +
                  circ.string())
              .code == 0);
  const std::string cmd =
      "circuit run --circuit " + circ.string() + " --x0 0 --shots 200 --seed 7";
  const CliResult a = run_cli(cmd);
  const CliResult b = run_cli(cmd);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto lines = lines_of(a.out);
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] == "ket,count");
  std::uint64_t total = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields_of(lines[i]);
    REQUIRE(f.size() == 2);
    CHECK(f[0].size() == 5);
    CHECK(f[0].find_first_not_of("01") == std::string::npos);
    total += std::stoull(f[1]);
  }
  CHECK(total == 200);
  fs::remove(circ);
}

TEST_CASE("circuit run flags probability on unmapped bit patterns") {
  const fs::path circ = temp_file("idle.json");
  REQUIRE(run_cli("circuit synth --walk sqw --encoding table1 --steps 0 --theta pi/4"
                  " --out " +
                  circ.string())
              .code == 0);
  // 1000 is the one four-bit pattern the position table leaves unmapped.
  const CliResult r =
      run_cli("circuit run --circuit " + circ.string() + " --initial 01000");
  CHECK(r.code == 1);
  CHECK(r.err.find("error") != std::string::npos);

  const CliResult wide =
      run_cli("circuit run --circuit " + circ.string() + " --initial 010");
  CHECK(wide.code == 2);
  CHECK(wide.err.find("width") != std::string::npos);
  fs::remove(circ);
}

TEST_CASE("circuit export emits stable qasm") {
  const fs::path circ = temp_file("export.json");
  REQUIRE(run_cli("circuit synth --walk dqw --encoding table2 --steps 2 --theta pi/3"
                  " --out " +
                  circ.string())
              .code == 0);
  const CliResult a = run_cli("circuit export --circuit " + circ.string());
  const CliResult b = run_cli("circuit export --circuit " + circ.string());
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("OPENQASM 2.0;", 0) == 0);
  CHECK(a.out.find("include \"qelib1.inc\";") != std::string::npos);
  CHECK(a.out.find("qreg q[5];") != std::string::npos);

  const fs::path qasm = temp_file("export.qasm");
  const CliResult c =
      run_cli("circuit export --circuit " + circ.string() + " --out " + qasm.string());
  REQUIRE(c.code == 0);
  CHECK(c.out.empty());
  CHECK(slurp(qasm) == a.out);
  fs::remove(circ);
  fs::remove(qasm);
}

TEST_CASE("missing circuit files are input errors") {
  const CliResult r = run_cli("circuit run --circuit /nonexistent/c.json --x0 0");
  CHECK(r.code == 2);
  CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("synth writes qasm next to json and honours quiet stdout") {
  const fs::path js = temp_file("both.json");
  const fs::path qs = temp_file("both.qasm");
  const CliResult r = run_cli(
      "circuit synth --walk dqw --encoding table1 --steps 1 --theta pi/3 --out " +
      js.string() + " --qasm " + qs.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(!slurp(js).empty());
  CHECK(slurp(qs).rfind("OPENQASM 2.0;", 0) == 0);

  const fs::path qs2 = temp_file("only.qasm");
  const CliResult q = run_cli(
      "circuit synth --walk dqw --encoding table1 --steps 1 --theta pi/3 --qasm " +
      qs2.string());
  REQUIRE(q.code == 0);
  CHECK(q.out.empty());  // qasm-only synth keeps stdout clean
  fs::remove(js);
  fs::remove(qs);
  fs::remove(qs2);
}

TEST_CASE("synth validates the ancilla walk's encoding and angle counts") {
  CHECK(run_cli("circuit synth --walk dqw-ancilla --encoding naive --steps 2"
                " --theta pi/4")
            .code == 2);

  const CliResult ok =
      run_cli("circuit synth --walk dqw-ancilla --encoding hamming --steps 3"
              " --theta pi/4");
  REQUIRE(ok.code == 0);
  // coin + the four-bit position register + one interference ancilla
  const nlohmann::json j = nlohmann::json::parse(ok.out);
  CHECK(j.at("width") == 6);
  REQUIRE(j.at("ancilla").is_array());
  REQUIRE(j.at("ancilla").size() == 1);
  CHECK(j.at("ancilla")[0] == 5);

  CHECK(run_cli("circuit synth --walk dqw-ancilla --steps 3 --thetas pi/8,pi/4")
            .code == 2);
  CHECK(run_cli("circuit synth --walk dqw-ancilla --steps 2 --thetas pi/8,pi/4")
            .code == 0);
}

TEST_CASE("compare covers the ancilla walk") {
  const CliResult r = run_cli("circuit compare --walk dqw-ancilla --steps 3"
                              " --theta 0.9");
  REQUIRE(r.code == 0);
  CHECK(r.err.find("PASS") != std::string::npos);
}

TEST_CASE("compare-encodings tabulates each requested encoding once") {
  const CliResult r =
      run_cli("circuit compare-encodings --walk dqw --steps 3 --theta pi/4"
              " --encodings table1,table2,naive,hamming");
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] ==
        "encoding,route,x,coin,cx,ccx,mcx,cswap,swap,total,depth,"
        "max_control_order,ancillas,error");
  std::map<std::string, std::vector<std::string>> by_name;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields_of(lines[i]);
    REQUIRE(f.size() == 14);
    CHECK(f[13].empty());  // every encoding compiled cleanly
    by_name[f[0]] = f;
  }
  REQUIRE(by_name.size() == 4);
  CHECK(by_name.at("table1")[1] == "permutation");
  CHECK(by_name.at("table2")[1] == "permutation");
  CHECK(by_name.at("naive")[1] == "permutation");
  CHECK(by_name.at("hamming")[1] == "ancilla");
  CHECK(by_name.at("hamming")[12] == "1");  // one ancilla at three steps
  CHECK(by_name.at("table1")[12] == "0");

  const CliResult bad = run_cli(
      "circuit compare-encodings --walk sqw --steps 3 --theta pi/4"
      " --encodings table1,hamming");
  REQUIRE(bad.code == 0);
  const auto blines = lines_of(bad.out);
  REQUIRE(blines.size() == 3);
  const auto last = fields_of(blines[2]);  // failed rows sort to the end
  REQUIRE(last.size() == 14);
  CHECK(last[0] == "hamming");
  CHECK(!last[13].empty());
}

TEST_CASE("resources prints capacity rows") {
  const CliResult a = run_cli("resources --walk sqw --qubits 5");
  REQUIRE(a.code == 0);
  CHECK(a.out ==
        "walk,qubits,max_steps,max_control_order,ancillas\n"
        "sqw,5,7,3,0\n");

  const CliResult b = run_cli("resources --walk dqw --steps 7");
  REQUIRE(b.code == 0);
  CHECK(b.out ==
        "walk,qubits,max_steps,max_control_order,ancillas\n"
        "dqw,4,7,3,0\n");

  const CliResult c = run_cli("resources --walk dqw-ancilla --qubits 5");
  REQUIRE(c.code == 0);
  CHECK(c.out ==
        "walk,qubits,max_steps,max_control_order,ancillas\n"
        "dqw-ancilla,5,3,1,1\n");

  CHECK(run_cli("resources --walk sqw").code == 2);
  CHECK(run_cli("resources --walk sqw --qubits 3 --steps 3").code == 2);
}

TEST_CASE("usage errors exit with code two and help with zero") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("circuit").code == 2);
  CHECK(run_cli("simulate --walk sqw --steps 2 --theta pi/4 --bogus 1").code == 2);
  CHECK(run_cli("frobnicate").code == 2);

  const CliResult help = run_cli("--help");
  CHECK(help.code == 0);
  CHECK(!help.out.empty());
}
