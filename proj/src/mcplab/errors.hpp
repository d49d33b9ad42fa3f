#pragma once

#include <stdexcept>
#include <string>

namespace mcplab {

/// Precondition violation on user-facing input (bad n, eps, ranges, shapes).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A user-supplied model failed eager validation. `check()` names the
/// invariant that failed.
class ModelError : public std::runtime_error {
 public:
  ModelError(std::string check, const std::string& detail)
      : std::runtime_error(check + ": " + detail), check_(std::move(check)) {}
  const std::string& check() const noexcept { return check_; }

 private:
  std::string check_;
};

/// A closed form was evaluated at a pole. `factor()` names the vanishing term.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(std::string factor, double t)
      : std::runtime_error("singular factor " + factor + " at t=" + std::to_string(t)),
        factor_(std::move(factor)),
        t_(t) {}
  const std::string& factor() const noexcept { return factor_; }
  double t() const noexcept { return t_; }

 private:
  std::string factor_;
  double t_;
};

/// Parameters outside the regime where a formula is claimed (e.g. |c| >= pi).
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The adapted frame needs a nonzero horizontal velocity.
class DegenerateDirectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double last_good_time)
      : std::runtime_error(what + " (last good t=" + std::to_string(last_good_time) + ")"),
        last_good_time_(last_good_time) {}
  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

}  // namespace mcplab
