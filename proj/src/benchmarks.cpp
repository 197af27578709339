#include "asoc/benchmarks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace asoc::bench {

namespace {

using std::numbers::e;
using std::numbers::pi;

double sq(double v) { return v * v; }

double ackley(const Vector& v) {
  const double x = v(0), y = v(1);
  return -20.0 * std::exp(-0.2 * std::sqrt(0.5 * (x * x + y * y))) -
         std::exp(0.5 * (std::cos(2.0 * pi * x) + std::cos(2.0 * pi * y))) + e + 20.0;
}

double sphere(const Vector& v) { return v.squaredNorm(); }

double rosenbrock(const Vector& v) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i + 1 < v.size(); ++i) sum += 100.0 * sq(v(i + 1) - v(i) * v(i)) + sq(v(i) - 1.0);
  return sum;
}

double beale(const Vector& v) {
  const double x = v(0), y = v(1);
  return sq(1.5 - x + x * y) + sq(2.25 - x + x * y * y) + sq(2.625 - x + x * y * y * y);
}

double goldstein_price(const Vector& v) {
  const double x = v(0), y = v(1);
  const double a = 1.0 + sq(x + y + 1.0) * (19.0 - 14.0 * x + 3.0 * x * x - 14.0 * y + 6.0 * x * y + 3.0 * y * y);
  const double b =
      30.0 + sq(2.0 * x - 3.0 * y) * (18.0 - 32.0 * x + 12.0 * x * x + 48.0 * y - 36.0 * x * y + 27.0 * y * y);
  return a * b;
}

double booth(const Vector& v) {
  const double x = v(0), y = v(1);
  return sq(x + 2.0 * y - 7.0) + sq(2.0 * x + y - 5.0);
}

double bukin6(const Vector& v) {
  const double x = v(0), y = v(1);
  return 100.0 * std::sqrt(std::abs(y - 0.01 * x * x)) + 0.01 * std::abs(x + 10.0);
}

double matyas(const Vector& v) {
  const double x = v(0), y = v(1);
  return 0.26 * (x * x + y * y) - 0.48 * x * y;
}

double levi13(const Vector& v) {
  const double x = v(0), y = v(1);
  return sq(std::sin(3.0 * pi * x)) + sq(x - 1.0) * (1.0 + sq(std::sin(3.0 * pi * y))) +
         sq(y - 1.0) * (1.0 + sq(std::sin(2.0 * pi * y)));
}

double three_hump_camel(const Vector& v) {
  const double x = v(0), y = v(1);
  const double x2 = x * x;
  return 2.0 * x2 - 1.05 * x2 * x2 + x2 * x2 * x2 / 6.0 + x * y + y * y;
}

double easom(const Vector& v) {
  const double x = v(0), y = v(1);
  return -std::cos(x) * std::cos(y) * std::exp(-(sq(x - pi) + sq(y - pi)));
}

double cross_in_tray(const Vector& v) {
  const double x = v(0), y = v(1);
  const double inner = std::abs(100.0 - std::sqrt(x * x + y * y) / pi);
  return -0.0001 * std::pow(std::abs(std::sin(x) * std::sin(y) * std::exp(inner)) + 1.0, 0.1);
}

double eggholder(const Vector& v) {
  const double x = v(0), y = v(1);
  return -(y + 47.0) * std::sin(std::sqrt(std::abs(x / 2.0 + y + 47.0))) -
         x * std::sin(std::sqrt(std::abs(x - (y + 47.0))));
}

double holder_table(const Vector& v) {
  const double x = v(0), y = v(1);
  return -std::abs(std::sin(x) * std::cos(y) * std::exp(std::abs(1.0 - std::sqrt(x * x + y * y) / pi)));
}

double mccormick(const Vector& v) {
  const double x = v(0), y = v(1);
  return std::sin(x + y) + sq(x - y) - 1.5 * x + 2.5 * y + 1.0;
}

double schaffer2(const Vector& v) {
  const double x = v(0), y = v(1);
  return 0.5 + (sq(std::sin(x * x - y * y)) - 0.5) / sq(1.0 + 0.001 * (x * x + y * y));
}

double schaffer4(const Vector& v) {
  const double x = v(0), y = v(1);
  return 0.5 + (sq(std::cos(std::sin(std::abs(x * x - y * y)))) - 0.5) / sq(1.0 + 0.001 * (x * x + y * y));
}

double styblinski_tang(const Vector& v) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double x = v(i);
    sum += x * x * x * x - 16.0 * x * x + 5.0 * x;
  }
  return sum / 2.0;
}

// Exact per-coordinate minimum of Styblinski-Tang (at x = -2.903534018...).
constexpr double styblinski_tang_per_dim = -39.16616570377142;

struct Entry {
  const char* name;
  const char* title;
  bool parametric;
  std::size_t default_dim;
};

constexpr Entry entries[catalog_size] = {
    {"ackley", "Ackley", false, 2},
    {"sphere", "Sphere", true, 10},
    {"rosenbrock", "Rosenbrock", true, 3},
    {"beale", "Beale", false, 2},
    {"goldstein-price", "Goldstein-Price", false, 2},
    {"booth", "Booth", false, 2},
    {"bukin-n6", "Bukin N.6", false, 2},
    {"matyas", "Matyas", false, 2},
    {"levi-n13", "Levi N.13", false, 2},
    {"three-hump-camel", "Three-hump camel", false, 2},
    {"easom", "Easom", false, 2},
    {"cross-in-tray", "Cross-in-tray", false, 2},
    {"eggholder", "Eggholder", false, 2},
    {"holder-table", "Holder table", false, 2},
    {"mccormick", "McCormick", false, 2},
    {"schaffer-n2", "Schaffer N.2", false, 2},
    {"schaffer-n4", "Schaffer N.4", false, 2},
    {"styblinski-tang", "Styblinski-Tang", true, 2},
};

Vector v2(double x, double y) { return Vector{{x, y}}; }

std::vector<KnownMinimum> four_way(double x, double y, double value, double tol) {
  return {{v2(x, -y), value, tol}, {v2(x, y), value, tol}, {v2(-x, y), value, tol}, {v2(-x, -y), value, tol}};
}

std::string loose(const std::string& s) {
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c)) out.push_back(static_cast<char>(std::tolower(c)));
  }
  // "levin13" -> "levi13", "bukinn6" -> "bukin6", "schaffern2" -> "schaffer2"
  for (const char* key : {"levin", "bukinn", "schaffern"}) {
    const std::string k(key);
    if (out.rfind(k, 0) == 0 && out.size() > k.size() && std::isdigit(static_cast<unsigned char>(out[k.size()]))) {
      out.erase(k.size() - 1, 1);
    }
  }
  return out;
}

}  // namespace

BenchmarkFunction::BenchmarkFunction(std::string name, std::string title, std::size_t index, bool parametric,
                                     BoxDomain domain, Formula formula, std::vector<KnownMinimum> minima)
    : name_(std::move(name)),
      title_(std::move(title)),
      index_(index),
      parametric_(parametric),
      domain_(std::move(domain)),
      formula_(std::move(formula)),
      minima_(std::move(minima)) {}

std::string BenchmarkFunction::title() const {
  if (!parametric_) return title_;
  return title_ + " (n=" + std::to_string(dimension()) + ")";
}

double BenchmarkFunction::evaluate(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension()) {
    throw std::invalid_argument(name_ + ": expected dimension " + std::to_string(dimension()) + ", got " +
                                std::to_string(x.size()));
  }
  if (!domain_.contains(x)) throw std::invalid_argument(name_ + ": point " + format_point(x) + " outside domain");
  return formula_(x);
}

Objective BenchmarkFunction::objective() const { return Objective(name_, domain_, formula_); }

const std::vector<std::string>& function_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : entries) out.emplace_back(entry.name);
    return out;
  }();
  return names;
}

std::size_t default_dimension(std::size_t index) {
  if (index < 1 || index > catalog_size) throw std::out_of_range("benchmark index out of range");
  return entries[index - 1].default_dim;
}

std::optional<std::size_t> find_index(const std::string& name) {
  const std::string key = loose(name);
  if (key.empty()) return std::nullopt;
  for (std::size_t i = 0; i < catalog_size; ++i) {
    if (loose(entries[i].name) == key || loose(entries[i].title) == key) return i + 1;
  }
  return std::nullopt;
}

BenchmarkFunction make_function(const std::string& name, std::optional<std::size_t> dimension) {
  const auto index = find_index(name);
  if (!index) throw std::invalid_argument("unknown benchmark function: " + name);
  return make_function(*index, dimension);
}

BenchmarkFunction make_function(std::size_t index, std::optional<std::size_t> dimension) {
  if (index < 1 || index > catalog_size) {
    throw std::out_of_range("benchmark index " + std::to_string(index) + " outside 1.." +
                            std::to_string(catalog_size));
  }
  const Entry& entry = entries[index - 1];
  const std::size_t n = dimension.value_or(entry.default_dim);
  if (entry.parametric) {
    const std::size_t min_dim = index == 3 ? 2 : 1;  // Rosenbrock needs a coupled pair
    if (n < min_dim) throw std::invalid_argument(std::string(entry.name) + ": dimension too small");
  } else if (n != 2) {
    throw std::invalid_argument(std::string(entry.name) + " is defined for dimension 2 only");
  }
  const auto dim = static_cast<Eigen::Index>(n);

  auto make = [&](BoxDomain domain, BenchmarkFunction::Formula f, std::vector<KnownMinimum> minima) {
    return BenchmarkFunction(entry.name, entry.title, index, entry.parametric, std::move(domain), std::move(f),
                             std::move(minima));
  };
  auto square = [](double lo, double hi) { return BoxDomain::cube(2, lo, hi); };

  switch (index) {
    case 1: return make(square(-5, 5), ackley, {{v2(0, 0), 0.0}});
    case 2: return make(BoxDomain::cube(n, -5.12, 5.12), sphere, {{Vector::Zero(dim), 0.0}});
    case 3: return make(BoxDomain::cube(n, -2.048, 2.048), rosenbrock, {{Vector::Ones(dim), 0.0}});
    case 4: return make(square(-4.5, 4.5), beale, {{v2(3, 0.5), 0.0}});
    case 5: return make(square(-2, 2), goldstein_price, {{v2(0, -1), 3.0}});
    case 6: return make(square(-10, 10), booth, {{v2(1, 3), 0.0}});
    case 7: return make(BoxDomain(v2(-15, -3), v2(-5, 3)), bukin6, {{v2(-10, 1), 0.0}});
    case 8: return make(square(-10, 10), matyas, {{v2(0, 0), 0.0}});
    case 9: return make(square(-10, 10), levi13, {{v2(1, 1), 0.0}});
    case 10: return make(square(-5, 5), three_hump_camel, {{v2(0, 0), 0.0}});
    case 11: return make(square(-100, 100), easom, {{v2(pi, pi), -1.0}});
    case 12: return make(square(-10, 10), cross_in_tray, four_way(1.34941, 1.34941, -2.06261187, 1e-6));
    case 13: return make(square(-512, 512), eggholder, {{v2(512, 404.2319), -959.6406627, 1e-6}});
    case 14: return make(square(-10, 10), holder_table, four_way(8.05502, 9.66459, -19.2085026, 1e-6));
    case 15:
      return make(BoxDomain(v2(-1.5, -3), v2(4, 4)), mccormick, {{v2(-0.54719, -1.54719), -1.9133, 1e-3}});
    case 16: return make(square(-100, 100), schaffer2, {{v2(0, 0), 0.0}});
    case 17:
      return make(square(-100, 100), schaffer4,
                  {{v2(0, 1.25313), 0.292579, 1e-6},
                   {v2(0, -1.25313), 0.292579, 1e-6},
                   {v2(1.25313, 0), 0.292579, 1e-6},
                   {v2(-1.25313, 0), 0.292579, 1e-6}});
    case 18:
      return make(BoxDomain::cube(n, -5, 5), styblinski_tang,
                  {{Vector::Constant(dim, -2.903534), styblinski_tang_per_dim * static_cast<double>(n), 1e-9}});
    default: break;
  }
  throw std::logic_error("unreachable benchmark index");
}

std::vector<BenchmarkFunction> catalog() {
  std::vector<BenchmarkFunction> out;
  out.reserve(catalog_size);
  for (std::size_t i = 1; i <= catalog_size; ++i) out.push_back(make_function(i));
  return out;
}

}  // namespace asoc::bench
