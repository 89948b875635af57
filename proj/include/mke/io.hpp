#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mke/linalg.hpp"

namespace mke::io {

/// On-disk matrix file: dim, row-major complex entries as [re, im] pairs,
/// optional label/basis metadata. Holds density matrices and observables
/// alike; validation against either contract happens at the point of use.
struct StateFile {
  ComplexMatrix matrix;
  std::optional<std::string> label;
  std::optional<std::string> basis;
};

StateFile read_state_file(const std::string& path);
void write_state_file(const std::string& path, const ComplexMatrix& matrix,
                      const std::optional<std::string>& label = std::nullopt,
                      const std::optional<std::string>& basis = std::nullopt);

/// {"probabilities": [...]}
std::vector<double> read_probabilities(const std::string& path);
void write_probabilities(const std::string& path, const std::vector<double>& p);

/// {"dim": n, "vectors": [ [[re,im], ...], ... ]}; vectors become the columns
/// of the returned matrix.
ComplexMatrix read_basis_file(const std::string& path);

struct ConstraintEntry {
  std::string observable_path;  // resolved against the constraints file location
  double mean;
};

/// {"constraints": [{"observable": "file.json", "mean": x}, ...]}
std::vector<ConstraintEntry> read_constraints_file(const std::string& path);

}  // namespace mke::io
