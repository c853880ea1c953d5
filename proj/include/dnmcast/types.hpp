#ifndef DNMCAST_TYPES_HPP
#define DNMCAST_TYPES_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dnmcast {

// Tolerance used throughout for "sums to one" checks on distributions.
inline constexpr double kDistributionSumTol = 1e-9;

// A discrete variable: a name plus an ordered list of at least two state
// labels.  State order is meaningful; tables and emitted output follow it.
struct Variable {
  std::string name;
  std::vector<std::string> states;

  int cardinality() const { return static_cast<int>(states.size()); }

  // Index of a state label, or -1 when the label is unknown.
  int state_index(const std::string& label) const {
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (states[i] == label) return static_cast<int>(i);
    }
    return -1;
  }
};

// A probability vector over one variable's states.  Entries are
// nonnegative and sum to one within kDistributionSumTol.
struct Distribution {
  std::vector<double> p;

  Distribution() = default;
  explicit Distribution(std::vector<double> probs) : p(std::move(probs)) {}

  int size() const { return static_cast<int>(p.size()); }
  double operator[](int i) const { return p[static_cast<std::size_t>(i)]; }

  bool valid(double tol = kDistributionSumTol) const {
    double sum = 0.0;
    for (double v : p) {
      if (!(v >= 0.0)) return false;
      sum += v;
    }
    return p.size() >= 1 && sum > 1.0 - tol && sum < 1.0 + tol;
  }
};

// One structural problem found during validation: where it was found and
// what is wrong.  Violations are data, not exceptions; a report collects
// them so callers can print every problem at once.
struct Violation {
  std::string where;
  std::string what;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string where, std::string what) {
    violations.push_back({std::move(where), std::move(what)});
  }
};

// Base class for engine errors that represent a domain problem (bad
// evidence, degenerate mixture, ...) rather than a programming error.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a model fails validation; carries the full report.
class ValidationError : public DomainError {
 public:
  explicit ValidationError(ValidationReport report)
      : DomainError(format(report)), report_(std::move(report)) {}

  const ValidationReport& report() const { return report_; }

 private:
  static std::string format(const ValidationReport& report) {
    std::string msg = "model validation failed:";
    for (const auto& v : report.violations) {
      msg += "\n  " + v.where + ": " + v.what;
    }
    return msg;
  }

  ValidationReport report_;
};

// Evidence with probability zero under the model.
class InconsistentEvidenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Multiplicative mixture whose unnormalized entries are all zero.
class DegenerateMixtureError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An estimation window that is not fully observed.
class IncompleteWindowError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Autocorrelation of a zero-variance series.
class UndefinedAcfError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Re-observation of a (time, variable) pair with a different value.
class ObservationConflictError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An initial-slice provision that requires an observation which is absent.
class ProvisionError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace dnmcast

#endif  // DNMCAST_TYPES_HPP
