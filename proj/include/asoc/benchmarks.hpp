#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asoc/problem.hpp"

namespace asoc::bench {

struct KnownMinimum {
  Vector point;
  double value = 0.0;
  double tolerance = 1e-9;  // |f(point) - value| bound; looser where the published optimum is rounded
};

/// One test function: evaluator, standard box and known minima, instantiated
/// at a concrete dimension.
class BenchmarkFunction {
 public:
  using Formula = std::function<double(const Vector&)>;

  BenchmarkFunction(std::string name, std::string title, std::size_t index, bool parametric, BoxDomain domain,
                    Formula formula, std::vector<KnownMinimum> minima);

  /// Lower-case identifier used for selection ("goldstein-price").
  const std::string& name() const { return name_; }
  /// Display name ("Goldstein-Price", "Sphere (n=10)").
  std::string title() const;
  /// 1-based position in the catalog.
  std::size_t index() const { return index_; }
  bool parametric() const { return parametric_; }
  std::size_t dimension() const { return domain_.dimension(); }
  const BoxDomain& domain() const { return domain_; }
  const std::vector<KnownMinimum>& minima() const { return minima_; }
  double minimum_value() const { return minima_.front().value; }

  /// Checked evaluation: rejects wrong dimension and points outside the box.
  double evaluate(const Vector& x) const;

  /// Unchecked black-box view for the optimizers (they clamp into the box).
  Objective objective() const;

 private:
  std::string name_;
  std::string title_;
  std::size_t index_;
  bool parametric_;
  BoxDomain domain_;
  Formula formula_;
  std::vector<KnownMinimum> minima_;
};

inline constexpr std::size_t catalog_size = 18;

/// Catalog names in index order (1-based index = position + 1).
const std::vector<std::string>& function_names();

/// Instance by 1-based index. `dimension` applies to the parametric
/// functions (Sphere, Rosenbrock, Styblinski-Tang); the rest are 2-D and
/// reject any other value. Without an override the reproduction defaults
/// are used: Sphere 10, Rosenbrock 3, Styblinski-Tang 2.
BenchmarkFunction make_function(std::size_t index, std::optional<std::size_t> dimension = std::nullopt);

/// Case-insensitive lookup; accepts the catalog name or a loose form with
/// spaces/punctuation removed ("levi", "bukin6", "schaffer4", "styblinskitang").
std::optional<std::size_t> find_index(const std::string& name);

BenchmarkFunction make_function(const std::string& name, std::optional<std::size_t> dimension = std::nullopt);

std::size_t default_dimension(std::size_t index);

/// All 18 functions at their default dimensions.
std::vector<BenchmarkFunction> catalog();

}  // namespace asoc::bench
