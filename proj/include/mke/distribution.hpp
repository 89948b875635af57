#pragma once

#include <vector>

#include "mke/errors.hpp"

namespace mke {

/// Discrete probability distribution: entries >= 0, sum == 1 within 1e-10.
/// Entries within -1e-10 of zero are clipped to exactly zero at construction.
class ClassicalDistribution {
public:
  explicit ClassicalDistribution(std::vector<double> p);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t k) const { return p_[k]; }
  const std::vector<double>& values() const { return p_; }

private:
  std::vector<double> p_;
};

/// Photon-number distribution over the Fock window |0>..|D-1>. Unlike
/// ClassicalDistribution, the sum may fall short of one by the (unobserved)
/// truncation tail: entries >= 0 and sum in (0, 1 + 1e-10]. Operations that
/// build a trace-one state out of it require deficit() <= 1e-10.
class PhotonDistribution {
public:
  explicit PhotonDistribution(std::vector<double> p);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t k) const { return p_[k]; }
  const std::vector<double>& values() const { return p_; }

  /// Probability mass missing from the window (0 for a full distribution).
  double deficit() const { return deficit_; }

  /// The same values as a fully normalized distribution; throws
  /// InvalidDistribution if the window carries a deficit beyond 1e-10.
  ClassicalDistribution as_distribution() const;

private:
  std::vector<double> p_;
  double deficit_ = 0.0;
};

}  // namespace mke
