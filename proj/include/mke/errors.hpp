#pragma once

#include <stdexcept>
#include <string>

namespace mke {

// Broad failure classes; the CLI maps them to process exit codes.
enum class ErrorClass {
  infeasible = 2,   // infeasible or degenerate constraint/data
  validation = 3,   // input parse or validation failure
  non_convergence = 4,
};

class Error : public std::runtime_error {
public:
  Error(std::string name, ErrorClass cls, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)), class_(cls) {}

  const std::string& name() const noexcept { return name_; }
  ErrorClass error_class() const noexcept { return class_; }
  int exit_code() const noexcept { return static_cast<int>(class_); }

private:
  std::string name_;
  ErrorClass class_;
};

struct DimMismatch : Error {
  explicit DimMismatch(const std::string& what)
      : Error("DimMismatch", ErrorClass::validation, what) {}
};

struct NonHermitianInput : Error {
  explicit NonHermitianInput(const std::string& what)
      : Error("NonHermitianInput", ErrorClass::validation, what) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& what)
      : Error("DomainError", ErrorClass::validation, what) {}
};

struct InvalidDistribution : Error {
  explicit InvalidDistribution(const std::string& what)
      : Error("InvalidDistribution", ErrorClass::validation, what) {}
};

struct InvalidState : Error {
  explicit InvalidState(const std::string& what)
      : Error("InvalidState", ErrorClass::validation, what) {}
};

struct IncompleteBasis : Error {
  explicit IncompleteBasis(const std::string& what)
      : Error("IncompleteBasis", ErrorClass::validation, what) {}
};

struct CutoffTooSmall : Error {
  CutoffTooSmall(const std::string& what, double tail)
      : Error("CutoffTooSmall", ErrorClass::validation, what), tail_mass(tail) {}
  double tail_mass;
};

struct ParseError : Error {
  explicit ParseError(const std::string& what)
      : Error("ParseError", ErrorClass::validation, what) {}
};

struct InfeasibleMean : Error {
  explicit InfeasibleMean(const std::string& what)
      : Error("InfeasibleMean", ErrorClass::infeasible, what) {}
};

struct InvalidMean : Error {
  explicit InvalidMean(const std::string& what)
      : Error("InvalidMean", ErrorClass::infeasible, what) {}
};

struct DegenerateObservable : Error {
  explicit DegenerateObservable(const std::string& what)
      : Error("DegenerateObservable", ErrorClass::infeasible, what) {}
};

struct DegenerateSupport : Error {
  explicit DegenerateSupport(const std::string& what)
      : Error("DegenerateSupport", ErrorClass::infeasible, what) {}
};

struct InfeasibleConstraints : Error {
  explicit InfeasibleConstraints(const std::string& what)
      : Error("InfeasibleConstraints", ErrorClass::infeasible, what) {}
};

struct UnsupportedOutcome : Error {
  UnsupportedOutcome(const std::string& what, int k)
      : Error("UnsupportedOutcome", ErrorClass::infeasible, what), outcome(k) {}
  int outcome;
};

struct SurfaceNotReached : Error {
  explicit SurfaceNotReached(const std::string& what)
      : Error("SurfaceNotReached", ErrorClass::infeasible, what) {}
};

struct NoInformation : Error {
  explicit NoInformation(const std::string& what)
      : Error("NoInformation", ErrorClass::infeasible, what) {}
};

struct RankDeficient : Error {
  explicit RankDeficient(const std::string& what)
      : Error("RankDeficient", ErrorClass::infeasible, what) {}
};

struct NoRoot : Error {
  NoRoot(const std::string& what, int n_, int m_)
      : Error("NoRoot", ErrorClass::infeasible, what), n(n_), m(m_) {}
  int n;
  int m;
};

struct InsufficientData : Error {
  explicit InsufficientData(const std::string& what)
      : Error("InsufficientData", ErrorClass::infeasible, what) {}
};

struct DegeneratePrior : Error {
  explicit DegeneratePrior(const std::string& what)
      : Error("DegeneratePrior", ErrorClass::infeasible, what) {}
};

struct NoSupport : Error {
  explicit NoSupport(const std::string& what)
      : Error("NoSupport", ErrorClass::infeasible, what) {}
};

struct NonConvergence : Error {
  NonConvergence(const std::string& what, double res, int iters)
      : Error("NonConvergence", ErrorClass::non_convergence, what),
        residual(res), iterations(iters) {}
  double residual;
  int iterations;
};

}  // namespace mke
