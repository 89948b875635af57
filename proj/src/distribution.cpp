#include "mke/distribution.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace mke {

namespace {

void clip_and_check_entries(std::vector<double>& p, const char* who) {
  if (p.empty()) {
    throw InvalidDistribution(std::string(who) + ": empty");
  }
  for (double& v : p) {
    if (!std::isfinite(v)) {
      throw InvalidDistribution(std::string(who) + ": non-finite entry");
    }
    if (v < 0.0) {
      if (v < -1e-10) {
        throw InvalidDistribution(std::string(who) + ": negative entry " +
                                  std::to_string(v));
      }
      v = 0.0;
    }
  }
}

}  // namespace

ClassicalDistribution::ClassicalDistribution(std::vector<double> p) : p_(std::move(p)) {
  clip_and_check_entries(p_, "ClassicalDistribution");
  const double sum = std::accumulate(p_.begin(), p_.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-10) {
    throw InvalidDistribution("ClassicalDistribution: sum " + std::to_string(sum) +
                              " differs from 1 beyond 1e-10");
  }
}

PhotonDistribution::PhotonDistribution(std::vector<double> p) : p_(std::move(p)) {
  clip_and_check_entries(p_, "PhotonDistribution");
  const double sum = std::accumulate(p_.begin(), p_.end(), 0.0);
  if (sum <= 0.0 || sum > 1.0 + 1e-10) {
    throw InvalidDistribution("PhotonDistribution: window mass " +
                              std::to_string(sum) + " outside (0, 1]");
  }
  deficit_ = std::max(0.0, 1.0 - sum);
}

ClassicalDistribution PhotonDistribution::as_distribution() const {
  if (deficit_ > 1e-10) {
    throw InvalidDistribution(
        "PhotonDistribution: window is missing mass " + std::to_string(deficit_) +
        "; a fully normalized distribution is required here");
  }
  return ClassicalDistribution(p_);
}

}  // namespace mke
