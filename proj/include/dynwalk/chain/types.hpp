#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dynwalk {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using Vertex = int;
using Time = std::int64_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

namespace tol {
inline constexpr double probability = 1e-12;
inline constexpr double reversibility = 1e-10;
inline constexpr double eigenvalue = 1e-9;
inline constexpr double stationarity = 1e-10;
inline constexpr double hitting_residual = 1e-8;
}  // namespace tol

// Size budgets for the dense O(n^3) routines.
namespace budget {
inline constexpr int eigen_max_n = 2048;
inline constexpr int conductance_max_n = 22;
inline constexpr int hitting_max_n = 4096;
}  // namespace budget

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a type invariant or an operation precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The chain is not irreducible where irreducibility is required.
class NotIrreducible : public Error {
 public:
  using Error::Error;
};

/// A schedule was queried past its stored horizon.
class HorizonExceeded : public Error {
 public:
  using Error::Error;
};

/// A dense or enumerative routine was asked to work beyond its size budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

namespace detail {

template <typename... Args>
std::string concat(Args&&... args) {
  std::ostringstream oss;
  (oss << ... << std::forward<Args>(args));
  return oss.str();
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidInput(what);
}

inline void check_square(const Matrix& m, const char* name) {
  if (m.rows() != m.cols())
    throw InvalidInput(concat(name, ": matrix must be square, got ", m.rows(), "x", m.cols()));
  if (m.rows() < 1) throw InvalidInput(concat(name, ": matrix must have n >= 1"));
}

inline void check_entries(const Matrix& m, const char* name) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double x = m(i, j);
      if (std::isnan(x)) throw InvalidInput(concat(name, ": NaN entry at (", i, ",", j, ")"));
      if (x < 0.0) throw InvalidInput(concat(name, ": negative entry ", x, " at (", i, ",", j, ")"));
      if (x > 1.0 + tol::probability)
        throw InvalidInput(concat(name, ": entry ", x, " > 1 at (", i, ",", j, ")"));
    }
}

}  // namespace detail

/// A probability distribution over the vertex set.
class ProbabilityVector {
 public:
  ProbabilityVector() = default;

  explicit ProbabilityVector(Vector values, bool require_positive = false) : p_(std::move(values)) {
    detail::require(p_.size() >= 1, "probability vector: empty");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < p_.size(); ++i) {
      const double x = p_(i);
      if (std::isnan(x) || x < 0.0)
        throw InvalidInput(detail::concat("probability vector: invalid entry ", x, " at ", i));
      if (require_positive && x <= 0.0)
        throw InvalidInput(detail::concat("probability vector: entry ", i, " must be > 0"));
      sum += x;
    }
    if (std::abs(sum - 1.0) > tol::probability * std::max<double>(1.0, static_cast<double>(p_.size())))
      throw InvalidInput(detail::concat("probability vector: entries sum to ", sum, ", expected 1"));
  }

  static ProbabilityVector uniform(int n) {
    detail::require(n >= 1, "uniform distribution needs n >= 1");
    return ProbabilityVector(Vector::Constant(n, 1.0 / n));
  }

  static ProbabilityVector point_mass(int n, Vertex v) {
    detail::require(v >= 0 && v < n, "point mass: vertex out of range");
    Vector x = Vector::Zero(n);
    x(v) = 1.0;
    return ProbabilityVector(std::move(x));
  }

  /// Normalizes nonnegative weights; used for degree-proportional distributions.
  static ProbabilityVector from_weights(const Vector& w) {
    detail::require(w.size() >= 1 && w.minCoeff() >= 0.0 && w.sum() > 0.0,
                    "weights must be nonnegative with positive sum");
    return ProbabilityVector(w / w.sum());
  }

  [[nodiscard]] const Vector& values() const noexcept { return p_; }
  [[nodiscard]] int size() const noexcept { return static_cast<int>(p_.size()); }
  [[nodiscard]] double operator[](Vertex v) const { return p_(v); }
  [[nodiscard]] double min() const { return p_.minCoeff(); }
  [[nodiscard]] bool positive() const { return p_.size() > 0 && p_.minCoeff() > 0.0; }

  friend bool operator==(const ProbabilityVector& a, const ProbabilityVector& b) {
    return a.p_.size() == b.p_.size() && a.p_ == b.p_;
  }

 private:
  Vector p_;
};

/// Dense row-stochastic matrix: one step of a chain.
class StochasticMatrix {
 public:
  StochasticMatrix() = default;

  explicit StochasticMatrix(Matrix m) : m_(std::move(m)) {
    detail::check_square(m_, "stochastic matrix");
    detail::check_entries(m_, "stochastic matrix");
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
      const double s = m_.row(i).sum();
      if (std::abs(s - 1.0) > tol::probability)
        throw InvalidInput(detail::concat("stochastic matrix: row ", i, " sums to ", s));
    }
  }

  static StochasticMatrix identity(int n) { return StochasticMatrix(Matrix::Identity(n, n)); }

  [[nodiscard]] const Matrix& matrix() const noexcept { return m_; }
  [[nodiscard]] int size() const noexcept { return static_cast<int>(m_.rows()); }
  [[nodiscard]] double operator()(Vertex u, Vertex v) const { return m_(u, v); }

  [[nodiscard]] bool is_lazy() const {
    for (Eigen::Index i = 0; i < m_.rows(); ++i)
      if (m_(i, i) < 0.5 - tol::probability) return false;
    return true;
  }

  friend bool operator==(const StochasticMatrix& a, const StochasticMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  Matrix m_;
};

/// Row sums at most one; produced by killing a vertex.
class SubstochasticMatrix {
 public:
  SubstochasticMatrix() = default;

  explicit SubstochasticMatrix(Matrix m) : m_(std::move(m)) {
    detail::check_square(m_, "substochastic matrix");
    detail::check_entries(m_, "substochastic matrix");
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
      const double s = m_.row(i).sum();
      if (s > 1.0 + tol::probability)
        throw InvalidInput(detail::concat("substochastic matrix: row ", i, " sums to ", s));
    }
  }

  [[nodiscard]] const Matrix& matrix() const noexcept { return m_; }
  [[nodiscard]] int size() const noexcept { return static_cast<int>(m_.rows()); }
  [[nodiscard]] double operator()(Vertex u, Vertex v) const { return m_(u, v); }

 private:
  Matrix m_;
};

struct Diagnostics {
  bool stochastic = false;
  bool lazy = false;
  bool irreducible = false;
};

/// True when the support digraph of `m` is strongly connected.
inline bool support_strongly_connected(const Matrix& m) {
  const auto n = m.rows();
  if (n <= 1) return true;
  auto reach = [&](bool transpose) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Eigen::Index> stack{0};
    seen[0] = 1;
    Eigen::Index count = 1;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (Eigen::Index v = 0; v < n; ++v) {
        const double w = transpose ? m(v, u) : m(u, v);
        if (w > 0.0 && !seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  return reach(false) && reach(true);
}

/// Checks a raw matrix. Throws on NaN, negative entries or rows that do not sum to one.
inline Diagnostics validate(const Matrix& m, double tolerance = tol::probability) {
  detail::check_square(m, "validate");
  detail::check_entries(m, "validate");
  Diagnostics d;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double s = m.row(i).sum();
    if (std::abs(s - 1.0) > tolerance)
      throw InvalidInput(detail::concat("validate: row ", i, " sums to ", s));
  }
  d.stochastic = true;
  d.lazy = true;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if (m(i, i) < 0.5 - tolerance) d.lazy = false;
  d.irreducible = support_strongly_connected(m);
  return d;
}

inline Diagnostics validate(const StochasticMatrix& p, double tolerance = tol::probability) {
  return validate(p.matrix(), tolerance);
}

inline void require_irreducible(const StochasticMatrix& p, const char* op) {
  if (!support_strongly_connected(p.matrix()))
    throw NotIrreducible(detail::concat(op, ": transition matrix is not irreducible"));
}

inline void require_vertex(int n, Vertex v, const char* op) {
  if (v < 0 || v >= n) throw InvalidInput(detail::concat(op, ": vertex ", v, " out of range [0,", n, ")"));
}

}  // namespace dynwalk
