#include "asoc/problem.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace asoc {

BoxDomain::BoxDomain(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) throw std::invalid_argument("BoxDomain: bound dimensions differ");
  if (lower_.size() == 0) throw std::invalid_argument("BoxDomain: zero-dimensional domain");
  if (!lower_.allFinite() || !upper_.allFinite()) throw std::invalid_argument("BoxDomain: bounds must be finite");
  for (Eigen::Index k = 0; k < lower_.size(); ++k) {
    if (!(lower_(k) < upper_(k))) {
      throw std::invalid_argument("BoxDomain: lower bound not below upper bound at coordinate " +
                                  std::to_string(k));
    }
  }
}

BoxDomain BoxDomain::cube(std::size_t n, double lower, double upper) {
  const auto dim = static_cast<Eigen::Index>(n);
  return BoxDomain(Vector::Constant(dim, lower), Vector::Constant(dim, upper));
}

bool BoxDomain::contains(const Vector& x) const {
  if (x.size() != lower_.size()) return false;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (!(x(k) >= lower_(k) && x(k) <= upper_(k))) return false;
  }
  return true;
}

Vector BoxDomain::clamp(const Vector& x) const {
  if (x.size() != lower_.size()) throw std::invalid_argument("BoxDomain::clamp: dimension mismatch");
  return x.cwiseMax(lower_).cwiseMin(upper_);
}

Vector BoxDomain::sample_uniform(Rng& rng) const {
  Vector x(lower_.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = rng.uniform(lower_(k), upper_(k));
  return x;
}

Objective::Objective(std::string name, BoxDomain domain, Function fn)
    : name_(std::move(name)), domain_(std::move(domain)), fn_(std::move(fn)) {
  if (!fn_) throw std::invalid_argument("Objective: empty evaluation function");
}

double Objective::evaluate(const Vector& x) const {
  if (x.size() != domain_.lower().size()) {
    throw std::invalid_argument("Objective " + name_ + ": expected dimension " + std::to_string(dimension()) +
                                ", got " + std::to_string(x.size()));
  }
  const double value = fn_(x);
  if (!std::isfinite(value)) {
    throw EvaluationError("objective " + name_ + " returned non-finite value at " + format_point(x));
  }
  return value;
}

std::string format_point(const Vector& x) {
  std::ostringstream os;
  os << std::setprecision(17) << '(';
  for (Eigen::Index k = 0; k < x.size(); ++k) os << (k ? ", " : "") << x(k);
  os << ')';
  return os.str();
}

}  // namespace asoc
