#include "mke/io.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace mke::io {

using nlohmann::json;

namespace {

json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void store(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot write " + path);
  }
  out << doc.dump(2) << "\n";
}

Complex parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(where + ": complex entries must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

StateFile read_state_file(const std::string& path) {
  const json doc = load(path);
  if (!doc.contains("dim") || !doc.contains("matrix")) {
    throw ParseError(path + ": expected fields 'dim' and 'matrix'");
  }
  const auto dim = doc["dim"].get<Eigen::Index>();
  if (dim < 1) {
    throw ParseError(path + ": dim must be positive");
  }
  const json& rows = doc["matrix"];
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) {
    throw ParseError(path + ": matrix must hold dim rows");
  }
  StateFile out;
  out.matrix.resize(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      throw ParseError(path + ": matrix row " + std::to_string(r) +
                       " must hold dim entries");
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      out.matrix(r, c) = parse_complex(row[static_cast<std::size_t>(c)],
                                       path + " matrix(" + std::to_string(r) + "," +
                                           std::to_string(c) + ")");
    }
  }
  if (doc.contains("label")) out.label = doc["label"].get<std::string>();
  if (doc.contains("basis")) out.basis = doc["basis"].get<std::string>();
  return out;
}

void write_state_file(const std::string& path, const ComplexMatrix& matrix,
                      const std::optional<std::string>& label,
                      const std::optional<std::string>& basis) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      row.push_back({matrix(r, c).real(), matrix(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  json doc{{"dim", matrix.rows()}, {"matrix", std::move(rows)}};
  if (label) doc["label"] = *label;
  if (basis) doc["basis"] = *basis;
  store(path, doc);
}

std::vector<double> read_probabilities(const std::string& path) {
  const json doc = load(path);
  if (!doc.contains("probabilities") || !doc["probabilities"].is_array()) {
    throw ParseError(path + ": expected field 'probabilities' (array)");
  }
  std::vector<double> p;
  for (const json& v : doc["probabilities"]) {
    if (!v.is_number()) {
      throw ParseError(path + ": probabilities must be numbers");
    }
    p.push_back(v.get<double>());
  }
  return p;
}

void write_probabilities(const std::string& path, const std::vector<double>& p) {
  store(path, json{{"probabilities", p}});
}

ComplexMatrix read_basis_file(const std::string& path) {
  const json doc = load(path);
  if (!doc.contains("dim") || !doc.contains("vectors")) {
    throw ParseError(path + ": expected fields 'dim' and 'vectors'");
  }
  const auto dim = doc["dim"].get<Eigen::Index>();
  const json& vecs = doc["vectors"];
  if (!vecs.is_array() || static_cast<Eigen::Index>(vecs.size()) != dim) {
    throw ParseError(path + ": vectors must hold dim basis kets");
  }
  ComplexMatrix basis(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const json& v = vecs[static_cast<std::size_t>(k)];
    if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != dim) {
      throw ParseError(path + ": basis vector " + std::to_string(k) +
                       " must hold dim entries");
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
      basis(i, k) = parse_complex(v[static_cast<std::size_t>(i)],
                                  path + " vector " + std::to_string(k));
    }
  }
  return basis;
}

std::vector<ConstraintEntry> read_constraints_file(const std::string& path) {
  const json doc = load(path);
  if (!doc.contains("constraints") || !doc["constraints"].is_array()) {
    throw ParseError(path + ": expected field 'constraints' (array)");
  }
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  std::vector<ConstraintEntry> out;
  for (const json& c : doc["constraints"]) {
    if (!c.contains("observable") || !c.contains("mean")) {
      throw ParseError(path + ": each constraint needs 'observable' and 'mean'");
    }
    std::filesystem::path obs(c["observable"].get<std::string>());
    if (obs.is_relative()) obs = base / obs;
    out.push_back({obs.string(), c["mean"].get<double>()});
  }
  return out;
}

}  // namespace mke::io
