#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include "asoc/linalg.hpp"

namespace asoc {

/// Raised when an objective returns a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Axis-aligned feasible region, lower[k] < upper[k] for every k.
class BoxDomain {
 public:
  BoxDomain(Vector lower, Vector upper);

  static BoxDomain cube(std::size_t n, double lower, double upper);

  std::size_t dimension() const { return static_cast<std::size_t>(lower_.size()); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  Vector width() const { return upper_ - lower_; }

  bool contains(const Vector& x) const;
  /// Coordinatewise clip into [lower, upper].
  Vector clamp(const Vector& x) const;
  Vector sample_uniform(Rng& rng) const;

 private:
  Vector lower_;
  Vector upper_;
};

/// Black-box objective: point evaluation is the only access the optimizers
/// get. Values must be finite everywhere in the domain.
class Objective {
 public:
  using Function = std::function<double(const Vector&)>;

  Objective(std::string name, BoxDomain domain, Function fn);

  /// Evaluates fn(x); throws EvaluationError naming x if the value is not finite.
  double evaluate(const Vector& x) const;

  const std::string& name() const { return name_; }
  const BoxDomain& domain() const { return domain_; }
  std::size_t dimension() const { return domain_.dimension(); }

 private:
  std::string name_;
  BoxDomain domain_;
  Function fn_;
};

std::string format_point(const Vector& x);

}  // namespace asoc
