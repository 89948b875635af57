#include <doctest.h>

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "cli_harness.hpp"
#include "mke/io.hpp"
#include "mke/qubit.hpp"
#include "testers.hpp"

using cli_harness::run;
using cli_harness::strip_wall_time;
using cli_harness::TempDir;
using json = nlohmann::json;

TEST_CASE("qubit estimate reproduces the bias-z measure-x closed form") {
  const auto res = run("--json qubit estimate --prior-bloch 0,0,1 --dir 1,0,0 --mean 0.6");
  CHECK(res.exit_code == 0);
  const json rep = json::parse(res.stdout_text);
  CHECK(rep["status"] == "ok");
  CHECK(rep["posterior_bloch"][0].get<double>() == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(rep["posterior_bloch"][1].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep["posterior_bloch"][2].get<double>() == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("oscillator mean reports the closed form with its numerical cross-check") {
  const auto res = run("--json oscillator mean --alpha 2 --nbar 1");
  CHECK(res.exit_code == 0);
  const json rep = json::parse(res.stdout_text);
  CHECK(rep["beta"][0].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep["lambda"].get<double>() == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(rep["numeric_fidelity"].get<double>() >= 1.0 - 1e-8);
}

TEST_CASE("infeasible mean exits with code 2 and a structured error") {
  TempDir dir("mke_cli");
  mke::io::write_state_file(dir.file("mixed2.json"),
                            mke::ComplexMatrix(0.5 * mke::ComplexMatrix::Identity(2, 2)));
  mke::io::write_state_file(dir.file("sz.json"), testers::pauli(3));
  const auto res = run("--json estimate mean --prior " + dir.file("mixed2.json") +
                       " --observable " + dir.file("sz.json") + " --mean 1.5");
  CHECK(res.exit_code == 2);
  const json rep = json::parse(res.stdout_text);
  CHECK(rep["status"] == "error");
  CHECK(rep["error"]["type"] == "InfeasibleMean");
}

TEST_CASE("parse and validation failures exit with code 3") {
  CHECK(run("estimate mean --prior /nonexistent.json --observable /x.json --mean 0")
            .exit_code == 3);
  CHECK(run("qubit estimate --prior-bloch 0,0 --dir 1,0,0 --mean 0.2").exit_code == 3);
  CHECK(run("estimate bogus").exit_code == 3);
  TempDir dir("mke_cli3");
  // non-Hermitian observable file
  mke::ComplexMatrix bad(2, 2);
  bad << 0.0, 1.0, 0.0, 0.0;
  mke::io::write_state_file(dir.file("bad.json"), bad);
  mke::io::write_state_file(dir.file("mixed2.json"),
                            mke::ComplexMatrix(0.5 * mke::ComplexMatrix::Identity(2, 2)));
  CHECK(run("estimate mean --prior " + dir.file("mixed2.json") + " --observable " +
            dir.file("bad.json") + " --mean 0.1")
            .exit_code == 3);
}

TEST_CASE("solver non-convergence exits with code 4") {
  TempDir dir("mke_cli4");
  mke::io::write_state_file(dir.file("mixed2.json"),
                            mke::ComplexMatrix(0.5 * mke::ComplexMatrix::Identity(2, 2)));
  mke::io::write_state_file(dir.file("sx.json"), testers::pauli(1));
  mke::io::write_state_file(dir.file("sz.json"), testers::pauli(3));
  std::ofstream c(dir.file("constraints.json"));
  c << R"({"constraints": [{"observable": "sx.json", "mean": 0.3},)"
    << R"({"observable": "sz.json", "mean": 0.4}]})";
  c.close();
  const auto res = run("--json estimate multi --prior " + dir.file("mixed2.json") +
                       " --constraints " + dir.file("constraints.json") +
                       " --tol 1e-3 --max-iter 1");
  CHECK(res.exit_code == 4);
  const json rep = json::parse(res.stdout_text);
  CHECK(rep["error"]["type"] == "NonConvergence");
}

TEST_CASE("degenerate data paths exit with code 2") {
  TempDir dir("mke_cli2");
  // single direction for the multi-direction weak-Hamiltonian solve
  CHECK(run("qubit hamiltonian --prior-bloch 0,0,1 --dir 0,0,1 --mean 0.5").exit_code ==
        2);
}

TEST_CASE("reports are byte-identical across repeated runs") {
  TempDir dir("mke_cli_rep");
  mke::io::write_probabilities(dir.file("p.json"), {0.25, 0.25, 0.25, 0.25});
  for (const std::string cmd :
       {std::string("qubit estimate --prior-bloch 0,0,1 --dir 1,0,0 --mean 0.6"),
        std::string("--json simulate sample --probs ") + dir.file("p.json") +
            " --shots 1000 --seed 7"}) {
    const auto a = run(cmd);
    const auto b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(strip_wall_time(a.stdout_text) == strip_wall_time(b.stdout_text));
    CHECK(!strip_wall_time(a.stdout_text).empty());
  }
}

TEST_CASE("simulate evolve round trip through a state file") {
  TempDir dir("mke_cli_ev");
  mke::io::write_state_file(dir.file("up.json"),
                            mke::bloch_to_density({{0.0, 0.0, 1.0}}).matrix());
  mke::ComplexMatrix gen = 0.01 * testers::pauli(2);
  mke::io::write_state_file(dir.file("h.json"), gen);
  const auto res = run("simulate evolve --state " + dir.file("up.json") +
                       " --hamiltonian " + dir.file("h.json") + " --time 1.0 --out " +
                       dir.file("evolved.json"));
  CHECK(res.exit_code == 0);
  const auto evolved = mke::io::read_state_file(dir.file("evolved.json"));
  CHECK(std::abs(2.0 * evolved.matrix(1, 0).real() - 0.02) <= 1e-3);
}

TEST_CASE("entropy commands encode infinity as a string in JSON") {
  TempDir dir("mke_cli_ent");
  mke::io::write_probabilities(dir.file("a.json"), {1.0, 0.0});
  mke::io::write_probabilities(dir.file("b.json"), {0.0, 1.0});
  const auto res =
      run("--json entropy kl --a " + dir.file("a.json") + " --b " + dir.file("b.json"));
  CHECK(res.exit_code == 0);
  const json rep = json::parse(res.stdout_text);
  CHECK(rep["kl_divergence"] == "inf");
}
