#pragma once

// Truncated multivariate Taylor polynomials ("jets").
//
// A Jet stores the Taylor coefficients c_a = (d^a u)(p) / a! of a smooth
// function u around a base point p, for every multi-index |a| <= order.
// Arithmetic on jets is exact polynomial arithmetic truncated at the order,
// so every partial derivative of a composite expression comes out exact up to
// rounding.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace solitonlab {

class JetSpace {
 public:
  struct Term {
    std::uint32_t a, b, out;
  };

  /// Shared, immutable space for (nvars, order). Thread safe.
  static const JetSpace& get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  std::size_t size() const { return degree_.size(); }
  /// Number of monomials of total degree <= d.
  std::size_t size_upto(int d) const { return offsets_[static_cast<std::size_t>(d) + 1]; }
  int degree(std::size_t idx) const { return degree_[idx]; }
  std::span<const int> exponent(std::size_t idx) const;
  std::size_t index(std::span<const int> alpha) const;
  /// Index of monomial idx multiplied by x_var, or npos when that exceeds the order.
  std::size_t raised(std::size_t idx, int var) const { return raised_[idx * nvars_ + var]; }
  /// Product terms whose output degree is <= d.
  std::span<const Term> products(int d) const;
  /// a! for the monomial at idx.
  double factorial(std::size_t idx) const { return factorial_[idx]; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  JetSpace(int nvars, int order);

 private:
  int nvars_;
  int order_;
  std::vector<int> exponents_;
  std::vector<int> degree_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> raised_;
  std::vector<Term> products_;
  std::vector<std::size_t> product_counts_;
  std::vector<double> factorial_;
  std::vector<std::int64_t> lookup_;
};

class Jet {
 public:
  Jet() = default;
  /// Constant germ.
  Jet(const JetSpace& space, double value);
  /// The coordinate function x_var around the base value.
  static Jet variable(const JetSpace& space, int var, double value);

  bool valid() const { return space_ != nullptr; }
  const JetSpace& space() const { return *space_; }
  int order() const { return order_; }
  int nvars() const { return space_->nvars(); }

  double value() const { return c_[0]; }
  double coefficient(std::size_t idx) const { return c_[idx]; }
  std::span<const double> coefficients() const { return c_; }
  /// Partial derivative d^alpha at the base point.
  double derivative(std::span<const int> alpha) const;
  /// Mixed partial over the listed variables, e.g. {0, 0, 1} = d0 d0 d1.
  double partial(std::initializer_list<int> vars) const;

  /// Germ of the partial derivative in x_var; one order lower.
  Jet d(int var) const;
  Jet truncated(int order) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator+=(double s);
  Jet& operator-=(double s);
  Jet& operator*=(double s);
  Jet& operator/=(double s);

  friend Jet operator*(const Jet& a, const Jet& b);

  /// phi(u) given taylor[k] = phi^(k)(u0) / k!, k = 0..order.
  friend Jet compose(const Jet& u, std::span<const double> taylor);

 private:
  Jet(const JetSpace& space, int order) : space_(&space), order_(order), c_(space.size(), 0.0) {}

  const JetSpace* space_ = nullptr;
  int order_ = 0;
  std::vector<double> c_;
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator+(Jet a, double s) { return a += s; }
inline Jet operator+(double s, Jet a) { return a += s; }
inline Jet operator-(Jet a, double s) { return a -= s; }
inline Jet operator-(double s, const Jet& a) { return (-a) += s; }
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }
inline Jet operator/(Jet a, double s) { return a /= s; }

Jet reciprocal(const Jet& u);
Jet operator/(const Jet& a, const Jet& b);
Jet operator/(double s, const Jet& b);
Jet exp(const Jet& u);
Jet log(const Jet& u);
Jet sqrt(const Jet& u);
Jet pow(const Jet& u, double p);
Jet sin(const Jet& u);
Jet cos(const Jet& u);
Jet sinh(const Jet& u);
Jet cosh(const Jet& u);
Jet square(const Jet& u);

}  // namespace solitonlab
