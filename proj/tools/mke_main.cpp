#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mke/classical.hpp"
#include "mke/entropy.hpp"
#include "mke/estimate.hpp"
#include "mke/io.hpp"
#include "mke/oscillator.hpp"
#include "mke/qubit.hpp"
#include "mke/simulate.hpp"

using json = nlohmann::ordered_json;
using namespace mke;

namespace {

// ---------------------------------------------------------------------------
// report plumbing

json encode_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json encode_complex(const Complex& c) {
  return json::array({encode_double(c.real()), encode_double(c.imag())});
}

json encode_matrix(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(encode_complex(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json encode_vector(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(encode_double(x));
  return out;
}

class Digest {
public:
  void add_bytes(const std::string& bytes) {
    for (unsigned char c : bytes) {
      hash_ ^= c;
      hash_ *= 1099511628211ULL;
    }
  }
  void add_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return;  // unreadable files fail later with a proper error
    std::ostringstream ss;
    ss << in.rdbuf();
    add_bytes(ss.str());
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(hash_));
    return buf;
  }

private:
  std::uint64_t hash_ = 1469598103934665603ULL;  // FNV-1a offset basis
};

struct Report {
  json fields = json::object();
  Digest digest;

  void set(const std::string& key, json value) { fields[key] = std::move(value); }
  void set_double(const std::string& key, double v) { fields[key] = encode_double(v); }
};

void render_text(std::ostream& os, const json& fields) {
  for (const auto& [key, value] : fields.items()) {
    const bool matrix_like = value.is_array() && !value.empty() &&
                             value.front().is_array() && !value.front().empty() &&
                             value.front().front().is_array();
    const bool object_list =
        value.is_array() && !value.empty() && value.front().is_object();
    if (matrix_like || object_list) {
      os << key << ":\n";
      for (const auto& row : value) os << "  " << row.dump() << "\n";
    } else if (value.is_object()) {
      os << key << ":\n";
      for (const auto& [k2, v2] : value.items()) os << "  " << k2 << ": " << v2.dump() << "\n";
    } else {
      os << key << ": " << value.dump() << "\n";
    }
  }
}

// ---------------------------------------------------------------------------
// input helpers

DensityMatrix load_density(const std::string& path, Report& rep) {
  rep.digest.add_file(path);
  return DensityMatrix(io::read_state_file(path).matrix);
}

Observable load_observable(const std::string& path, Report& rep) {
  rep.digest.add_file(path);
  return Observable(io::read_state_file(path).matrix);
}

std::vector<double> load_probs(const std::string& path, Report& rep) {
  rep.digest.add_file(path);
  return io::read_probabilities(path);
}

std::array<double, 3> parse_triple(const std::string& text, const std::string& what) {
  std::array<double, 3> out{};
  std::stringstream ss(text);
  std::string part;
  int i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= 3) throw ParseError(what + ": expected three comma-separated numbers");
    try {
      out[static_cast<std::size_t>(i++)] = std::stod(part);
    } catch (const std::exception&) {
      throw ParseError(what + ": cannot parse '" + part + "'");
    }
  }
  if (i != 3) throw ParseError(what + ": expected three comma-separated numbers");
  return out;
}

Complex parse_complex_arg(const std::string& text, const std::string& what) {
  std::stringstream ss(text);
  std::string part;
  std::vector<double> parts;
  while (std::getline(ss, part, ',')) {
    try {
      parts.push_back(std::stod(part));
    } catch (const std::exception&) {
      throw ParseError(what + ": cannot parse '" + part + "'");
    }
  }
  if (parts.size() == 1) return {parts[0], 0.0};
  if (parts.size() == 2) return {parts[0], parts[1]};
  throw ParseError(what + ": expected RE or RE,IM");
}

void put_estimation_result(Report& rep, const EstimationResult& res) {
  rep.set("posterior", encode_matrix(res.posterior.matrix()));
  rep.set("lambda", encode_vector(res.lambdas));
  rep.set_double("partition", res.partition);
  rep.set_double("relative_entropy", res.relative_entropy);
  rep.set_double("residual", res.residual);
  rep.set("iterations", res.iterations);
}

// ---------------------------------------------------------------------------

struct CliOptions {
  bool as_json = false;

  // estimate
  std::string prior_file, observable_file, constraints_file, probs_file, basis_file;
  double mean = 0.0;
  double tol = 1e-9;
  int max_iter = 200;

  // qubit
  std::string prior_bloch;
  std::vector<std::string> dirs;
  std::vector<double> means;
  double time = 1.0;
  bool time_given = false;

  // oscillator
  std::string alpha_text;
  double nbar = 0.0;
  int cutoff = 32;
  std::string method = "mke";

  // simulate
  std::string state_file, hamiltonian_file, out_file;
  std::int64_t shots = 1000;
  std::uint64_t seed = 0;

  // entropy
  std::string a_file, b_file;
};

int dispatch(const std::string& command, const CliOptions& opt, Report& rep) {
  if (command == "estimate mean") {
    const DensityMatrix prior = load_density(opt.prior_file, rep);
    const Observable obs = load_observable(opt.observable_file, rep);
    put_estimation_result(rep, mke_single_mean(prior, {obs, opt.mean}, opt.tol));
  } else if (command == "estimate multi") {
    const DensityMatrix prior = load_density(opt.prior_file, rep);
    rep.digest.add_file(opt.constraints_file);
    std::vector<MeanConstraint> constraints;
    for (const auto& entry : io::read_constraints_file(opt.constraints_file)) {
      constraints.push_back({load_observable(entry.observable_path, rep), entry.mean});
    }
    put_estimation_result(rep,
                          mke_multi_mean(prior, constraints, opt.tol, opt.max_iter));
  } else if (command == "estimate dist") {
    const DensityMatrix prior = load_density(opt.prior_file, rep);
    const auto probs = load_probs(opt.probs_file, rep);
    ComplexMatrix basis;
    if (opt.basis_file.empty()) {
      basis = ComplexMatrix::Identity(prior.dim(), prior.dim());
    } else {
      rep.digest.add_file(opt.basis_file);
      basis = io::read_basis_file(opt.basis_file);
    }
    put_estimation_result(
        rep, mke_from_distribution(prior, {basis, ClassicalDistribution(probs)}));
  } else if (command == "qubit estimate") {
    const BlochVector tau{parse_triple(opt.prior_bloch, "--prior-bloch")};
    const SpinDirection dir(parse_triple(opt.dirs.at(0), "--dir"));
    const BlochVector v = qubit_mke_mean(tau, dir, opt.means.at(0));
    rep.set_double("lambda", qubit_lambda(tau, dir, opt.means.at(0)));
    rep.set("posterior_bloch", encode_vector({v.v[0], v.v[1], v.v[2]}));
    rep.set("posterior", encode_matrix(bloch_to_density(v).matrix()));
  } else if (command == "qubit hamiltonian") {
    const BlochVector tau{parse_triple(opt.prior_bloch, "--prior-bloch")};
    if (opt.dirs.size() != opt.means.size()) {
      throw ParseError("qubit hamiltonian: each --dir needs a matching --mean");
    }
    if (opt.dirs.empty()) {
      throw ParseError("qubit hamiltonian: at least one --dir/--mean pair required");
    }
    if (opt.dirs.size() == 1) {
      const auto est = qubit_weak_hamiltonian_single(
          tau, SpinDirection(parse_triple(opt.dirs[0], "--dir")), opt.means[0]);
      rep.set("h_effective",
              encode_vector({est.h_eff[0], est.h_eff[1], est.h_eff[2]}));
      rep.set("direction",
              encode_vector({est.direction[0], est.direction[1], est.direction[2]}));
      rep.set("note", "h_effective is the product (Bloch Hamiltonian vector) x time");
    } else {
      std::vector<std::pair<SpinDirection, double>> data;
      for (std::size_t i = 0; i < opt.dirs.size(); ++i) {
        data.emplace_back(SpinDirection(parse_triple(opt.dirs[i], "--dir")),
                          opt.means[i]);
      }
      const auto h = qubit_weak_hamiltonian_multi(tau, data,
                                                  opt.time_given ? opt.time : 1.0);
      rep.set(opt.time_given ? "h" : "h_effective",
              encode_vector({h[0], h[1], h[2]}));
    }
    rep.set("h0_identity_component", "indeterminate");
  } else if (command == "oscillator mean") {
    const Complex alpha = parse_complex_arg(opt.alpha_text, "--alpha");
    const auto closed = coherent_mke_mean({alpha}, opt.nbar);
    rep.set("beta", encode_complex(closed.beta));
    rep.set_double("lambda", closed.lambda);
    rep.set_double("partition", closed.partition);
    // numerical cross-check in the truncated space
    const auto numeric = fock_mke_mean({alpha}, opt.nbar, FockCutoff(opt.cutoff), opt.tol);
    const DensityMatrix target = coherent_density({closed.beta}, FockCutoff(opt.cutoff));
    const double fidelity =
        (target.matrix() * numeric.posterior.matrix()).trace().real();
    rep.set_double("numeric_lambda", numeric.lambdas[0]);
    rep.set_double("numeric_fidelity", fidelity);
    rep.set_double("numeric_residual", numeric.residual);
    rep.set("cutoff", opt.cutoff);
  } else if (command == "oscillator displacement") {
    const Complex alpha = parse_complex_arg(opt.alpha_text, "--alpha");
    if (alpha.imag() != 0.0) {
      throw ParseError("oscillator displacement: alpha must be real");
    }
    const auto probs = load_probs(opt.probs_file, rep);
    const int cutoff = opt.cutoff == 32 && !probs.empty()
                           ? static_cast<int>(probs.size())
                           : opt.cutoff;
    const PhotonDistribution p(probs);
    const DisplacementEstimate est =
        opt.method == "direct"
            ? estimate_displacement_direct(alpha.real(), p, FockCutoff(cutoff))
            : estimate_displacement_mke(alpha.real(), p, FockCutoff(cutoff));
    rep.set_double("beta", est.beta);
    rep.set_double("spread", est.spread);
    rep.set("n_determinations", est.determinations.size());
    json dets = json::array();
    for (const auto& d : est.determinations) {
      dets.push_back(json{{"n", d.n}, {"m", d.m}, {"beta", encode_double(d.beta_nm)}});
    }
    rep.set("determinations", std::move(dets));
  } else if (command == "oscillator hamiltonian") {
    const DensityMatrix prior = load_density(opt.prior_file, rep);
    const auto probs = load_probs(opt.probs_file, rep);
    const int cutoff = opt.cutoff == 32 && !probs.empty()
                           ? static_cast<int>(probs.size())
                           : opt.cutoff;
    const auto h = estimate_weak_hamiltonian_fock(prior, PhotonDistribution(probs),
                                                  opt.time, FockCutoff(cutoff));
    rep.set("hamiltonian", encode_matrix(h.matrix()));
  } else if (command == "simulate mean") {
    const DensityMatrix state = load_density(opt.state_file, rep);
    const Observable obs = load_observable(opt.observable_file, rep);
    rep.set_double("mean", exact_mean(state, obs));
  } else if (command == "simulate dist") {
    const DensityMatrix state = load_density(opt.state_file, rep);
    ComplexMatrix basis;
    if (opt.basis_file.empty()) {
      basis = ComplexMatrix::Identity(state.dim(), state.dim());
    } else {
      rep.digest.add_file(opt.basis_file);
      basis = io::read_basis_file(opt.basis_file);
    }
    rep.set("probabilities",
            encode_vector(exact_distribution(state, basis).values()));
  } else if (command == "simulate sample") {
    ClassicalDistribution p({1.0});
    if (!opt.probs_file.empty()) {
      p = ClassicalDistribution(load_probs(opt.probs_file, rep));
    } else if (!opt.state_file.empty()) {
      const DensityMatrix state = load_density(opt.state_file, rep);
      ComplexMatrix basis;
      if (opt.basis_file.empty()) {
        basis = ComplexMatrix::Identity(state.dim(), state.dim());
      } else {
        rep.digest.add_file(opt.basis_file);
        basis = io::read_basis_file(opt.basis_file);
      }
      p = exact_distribution(state, basis);
    } else {
      throw ParseError("simulate sample: provide --probs or --state");
    }
    const ShotSample s = sample_outcomes(p, opt.shots, opt.seed);
    rep.set("counts", s.counts);
    rep.set("shots", s.shots);
    rep.set("seed", s.seed);
  } else if (command == "simulate evolve") {
    const DensityMatrix state = load_density(opt.state_file, rep);
    rep.digest.add_file(opt.hamiltonian_file);
    const HermitianOperator h(io::read_state_file(opt.hamiltonian_file).matrix);
    const DensityMatrix evolved = evolve_unitary(state, h, opt.time);
    rep.set("evolved", encode_matrix(evolved.matrix()));
    if (!opt.out_file.empty()) {
      io::write_state_file(opt.out_file, evolved.matrix());
      rep.set("written", opt.out_file);
    }
  } else if (command == "entropy kl") {
    const ClassicalDistribution a(load_probs(opt.a_file, rep));
    const ClassicalDistribution b(load_probs(opt.b_file, rep));
    rep.set_double("kl_divergence", kl_divergence(a, b));
  } else if (command == "entropy quantum") {
    const DensityMatrix a = load_density(opt.a_file, rep);
    const DensityMatrix b = load_density(opt.b_file, rep);
    rep.set_double("quantum_kullback", quantum_kullback(a, b));
  } else {
    throw ParseError("unknown command " + command);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const auto t0 = std::chrono::steady_clock::now();

  CLI::App app{"minimum Kullback entropy estimation for quantum states and weak processes"};
  app.require_subcommand(1);
  CliOptions opt;
  app.add_flag("--json", opt.as_json, "emit the report as a JSON document");

  std::string command;
  auto leaf = [&command](CLI::App* sub, const std::string& name) {
    sub->callback([&command, name] { command = name; });
    return sub;
  };

  // estimate
  auto* estimate = app.add_subcommand("estimate", "estimate a state from measured data");
  estimate->require_subcommand(1);
  auto* est_mean = leaf(estimate->add_subcommand("mean", "single mean-value constraint"),
                        "estimate mean");
  est_mean->add_option("--prior", opt.prior_file)->required();
  est_mean->add_option("--observable", opt.observable_file)->required();
  est_mean->add_option("--mean", opt.mean)->required();
  est_mean->add_option("--tol", opt.tol);
  auto* est_multi = leaf(estimate->add_subcommand("multi", "several mean-value constraints"),
                         "estimate multi");
  est_multi->add_option("--prior", opt.prior_file)->required();
  est_multi->add_option("--constraints", opt.constraints_file)->required();
  est_multi->add_option("--tol", opt.tol);
  est_multi->add_option("--max-iter", opt.max_iter);
  auto* est_dist = leaf(estimate->add_subcommand("dist", "complete measured distribution"),
                        "estimate dist");
  est_dist->add_option("--prior", opt.prior_file)->required();
  est_dist->add_option("--probs", opt.probs_file)->required();
  est_dist->add_option("--basis", opt.basis_file);

  // qubit
  auto* qubit = app.add_subcommand("qubit", "closed-form qubit estimation");
  qubit->require_subcommand(1);
  auto* q_est = leaf(qubit->add_subcommand("estimate", "Bloch vector from one spin mean"),
                     "qubit estimate");
  q_est->add_option("--prior-bloch", opt.prior_bloch)->required();
  q_est->add_option("--dir", opt.dirs)->required();
  q_est->add_option("--mean", opt.means)->required();
  auto* q_ham = leaf(qubit->add_subcommand("hamiltonian", "weak Hamiltonian from spin means"),
                     "qubit hamiltonian");
  q_ham->add_option("--prior-bloch", opt.prior_bloch)->required();
  q_ham->add_option("--dir", opt.dirs)->required();
  q_ham->add_option("--mean", opt.means)->required();
  q_ham->add_option("--time", opt.time)->each([&opt](const std::string&) {
    opt.time_given = true;
  });

  // oscillator
  auto* osc = app.add_subcommand("oscillator", "truncated Fock-space estimation");
  osc->require_subcommand(1);
  auto* o_mean = leaf(osc->add_subcommand("mean", "coherent prior, mean photon number"),
                      "oscillator mean");
  o_mean->add_option("--alpha", opt.alpha_text)->required();
  o_mean->add_option("--nbar", opt.nbar)->required();
  o_mean->add_option("--cutoff", opt.cutoff);
  o_mean->add_option("--tol", opt.tol);
  auto* o_disp = leaf(osc->add_subcommand("displacement", "displacement from photon statistics"),
                      "oscillator displacement");
  o_disp->add_option("--alpha", opt.alpha_text)->required();
  o_disp->add_option("--probs", opt.probs_file)->required();
  o_disp->add_option("--method", opt.method)
      ->check(CLI::IsMember({"mke", "direct"}));
  o_disp->add_option("--cutoff", opt.cutoff);
  auto* o_ham = leaf(osc->add_subcommand("hamiltonian", "weak Hamiltonian from photon statistics"),
                     "oscillator hamiltonian");
  o_ham->add_option("--prior", opt.prior_file)->required();
  o_ham->add_option("--probs", opt.probs_file)->required();
  o_ham->add_option("--time", opt.time)->required();
  o_ham->add_option("--cutoff", opt.cutoff);

  // simulate
  auto* sim = app.add_subcommand("simulate", "ground-truth measurement data");
  sim->require_subcommand(1);
  auto* s_mean = leaf(sim->add_subcommand("mean", "exact expectation value"), "simulate mean");
  s_mean->add_option("--state", opt.state_file)->required();
  s_mean->add_option("--observable", opt.observable_file)->required();
  auto* s_dist = leaf(sim->add_subcommand("dist", "exact outcome distribution"), "simulate dist");
  s_dist->add_option("--state", opt.state_file)->required();
  s_dist->add_option("--basis", opt.basis_file);
  auto* s_sample = leaf(sim->add_subcommand("sample", "finite-shot counts"), "simulate sample");
  s_sample->add_option("--probs", opt.probs_file);
  s_sample->add_option("--state", opt.state_file);
  s_sample->add_option("--basis", opt.basis_file);
  s_sample->add_option("--shots", opt.shots)->required();
  s_sample->add_option("--seed", opt.seed)->required();
  auto* s_evolve = leaf(sim->add_subcommand("evolve", "unitary evolution"), "simulate evolve");
  s_evolve->add_option("--state", opt.state_file)->required();
  s_evolve->add_option("--hamiltonian", opt.hamiltonian_file)->required();
  s_evolve->add_option("--time", opt.time)->required();
  s_evolve->add_option("--out", opt.out_file);

  // entropy
  auto* ent = app.add_subcommand("entropy", "divergence values");
  ent->require_subcommand(1);
  auto* e_kl = leaf(ent->add_subcommand("kl", "classical Kullback-Leibler divergence"),
                    "entropy kl");
  e_kl->add_option("--a", opt.a_file)->required();
  e_kl->add_option("--b", opt.b_file)->required();
  auto* e_q = leaf(ent->add_subcommand("quantum", "quantum Kullback entropy"),
                   "entropy quantum");
  e_q->add_option("--a", opt.a_file)->required();
  e_q->add_option("--b", opt.b_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << e.what() << "\n";
    return 3;
  }

  std::string echo;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) echo += " ";
    echo += argv[i];
  }

  Report rep;
  rep.digest.add_bytes(echo);
  rep.set("command", echo);

  json output;
  int code = 0;
  try {
    dispatch(command, opt, rep);
    output = json::object();
    output["command"] = echo;
    output["inputs_digest"] = rep.digest.hex();
    output["status"] = "ok";
    for (auto& [k, v] : rep.fields.items()) {
      if (k != "command") output[k] = v;
    }
  } catch (const Error& e) {
    output = json::object();
    output["command"] = echo;
    output["inputs_digest"] = rep.digest.hex();
    output["status"] = "error";
    output["error"] = json{{"type", e.name()}, {"message", e.what()}};
    std::cerr << e.name() << ": " << e.what() << "\n";
    code = e.exit_code();
  } catch (const std::exception& e) {
    output = json::object();
    output["command"] = echo;
    output["inputs_digest"] = rep.digest.hex();
    output["status"] = "error";
    output["error"] = json{{"type", "ValidationError"}, {"message", e.what()}};
    std::cerr << "error: " << e.what() << "\n";
    code = 3;
  }

  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  output["wall_time_ms"] = ms;

  if (opt.as_json) {
    std::cout << output.dump(2) << "\n";
  } else {
    render_text(std::cout, output);
  }
  return code;
}
