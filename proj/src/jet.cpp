#include "solitonlab/jet.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "solitonlab/error.hpp"

namespace solitonlab {

namespace {

void enumerate_degree(int nvars, int degree, int var, std::vector<int>& current,
                      std::vector<int>& out) {
  if (var == nvars - 1) {
    current[var] = degree;
    out.insert(out.end(), current.begin(), current.end());
    return;
  }
  for (int k = degree; k >= 0; --k) {
    current[var] = k;
    enumerate_degree(nvars, degree - k, var + 1, current, out);
  }
  current[var] = 0;
}

}  // namespace

JetSpace::JetSpace(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 1 || order < 0) throw InvalidArgument("jet space needs nvars >= 1 and order >= 0");
  offsets_.push_back(0);
  std::vector<int> current(static_cast<std::size_t>(nvars), 0);
  for (int d = 0; d <= order; ++d) {
    enumerate_degree(nvars, d, 0, current, exponents_);
    offsets_.push_back(exponents_.size() / static_cast<std::size_t>(nvars));
  }
  const std::size_t count = offsets_.back();
  degree_.resize(count);
  factorial_.resize(count);
  for (int d = 0; d <= order; ++d) {
    for (std::size_t i = offsets_[d]; i < offsets_[d + 1]; ++i) degree_[i] = d;
  }

  std::int64_t table = 1;
  for (int v = 0; v < nvars; ++v) table *= (order + 1);
  lookup_.assign(static_cast<std::size_t>(table), -1);
  auto code = [&](std::span<const int> a) {
    std::int64_t c = 0;
    for (int v = nvars - 1; v >= 0; --v) c = c * (order + 1) + a[v];
    return c;
  };
  for (std::size_t i = 0; i < count; ++i) {
    auto a = exponent(i);
    lookup_[static_cast<std::size_t>(code(a))] = static_cast<std::int64_t>(i);
    double fact = 1.0;
    for (int v = 0; v < nvars; ++v) fact *= std::tgamma(a[v] + 1.0);
    factorial_[i] = fact;
  }

  raised_.assign(count * static_cast<std::size_t>(nvars), npos);
  std::vector<int> tmp(static_cast<std::size_t>(nvars));
  for (std::size_t i = 0; i < count; ++i) {
    if (degree_[i] == order) continue;
    auto a = exponent(i);
    for (int v = 0; v < nvars; ++v) {
      std::copy(a.begin(), a.end(), tmp.begin());
      tmp[v] += 1;
      raised_[i * nvars + v] = index(tmp);
    }
  }

  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      if (degree_[i] + degree_[j] > order) continue;
      auto a = exponent(i);
      auto b = exponent(j);
      for (int v = 0; v < nvars; ++v) tmp[v] = a[v] + b[v];
      products_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                           static_cast<std::uint32_t>(index(tmp))});
    }
  }
  std::stable_sort(products_.begin(), products_.end(), [&](const Term& x, const Term& y) {
    return degree_[x.out] < degree_[y.out];
  });
  product_counts_.assign(static_cast<std::size_t>(order) + 1, 0);
  for (const auto& t : products_) {
    for (int d = degree_[t.out]; d <= order; ++d) ++product_counts_[d];
  }
}

const JetSpace& JetSpace::get(int nvars, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<JetSpace>> registry;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = registry[{nvars, order}];
  if (!slot) slot = std::make_unique<JetSpace>(nvars, order);
  return *slot;
}

std::span<const int> JetSpace::exponent(std::size_t idx) const {
  return {exponents_.data() + idx * static_cast<std::size_t>(nvars_),
          static_cast<std::size_t>(nvars_)};
}

std::size_t JetSpace::index(std::span<const int> alpha) const {
  std::int64_t c = 0;
  int total = 0;
  for (int v = nvars_ - 1; v >= 0; --v) {
    if (alpha[v] < 0) throw InvalidArgument("negative multi-index");
    total += alpha[v];
    c = c * (order_ + 1) + alpha[v];
  }
  if (total > order_) return npos;
  return static_cast<std::size_t>(lookup_[static_cast<std::size_t>(c)]);
}

std::span<const JetSpace::Term> JetSpace::products(int d) const {
  return {products_.data(), product_counts_[static_cast<std::size_t>(d)]};
}

Jet::Jet(const JetSpace& space, double value) : Jet(space, space.order()) { c_[0] = value; }

Jet Jet::variable(const JetSpace& space, int var, double value) {
  Jet j(space, value);
  if (space.order() >= 1) {
    std::vector<int> a(static_cast<std::size_t>(space.nvars()), 0);
    a[var] = 1;
    j.c_[space.index(a)] = 1.0;
  }
  return j;
}

double Jet::derivative(std::span<const int> alpha) const {
  int total = 0;
  for (int a : alpha) total += a;
  if (total > order_) {
    throw DerivativeOrderError("jet of order " + std::to_string(order_) +
                               " cannot supply a derivative of order " + std::to_string(total));
  }
  const std::size_t idx = space_->index(alpha);
  return c_[idx] * space_->factorial(idx);
}

double Jet::partial(std::initializer_list<int> vars) const {
  std::vector<int> a(static_cast<std::size_t>(nvars()), 0);
  for (int v : vars) a[v] += 1;
  return derivative(a);
}

Jet Jet::d(int var) const {
  if (order_ < 1) throw DerivativeOrderError("cannot differentiate a jet of order 0");
  Jet out(*space_, order_ - 1);
  const std::size_t n = space_->size_upto(order_ - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t up = space_->raised(i, var);
    const int power = space_->exponent(up)[var];
    out.c_[i] = power * c_[up];
  }
  return out;
}

Jet Jet::truncated(int order) const {
  Jet out = *this;
  if (order >= order_) return out;
  out.order_ = order;
  std::fill(out.c_.begin() + static_cast<std::ptrdiff_t>(space_->size_upto(order)), out.c_.end(),
            0.0);
  return out;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& v : out.c_) v = -v;
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  assert(space_ == o.space_);
  if (o.order_ < order_) *this = truncated(o.order_);
  const std::size_t n = space_->size_upto(order_);
  for (std::size_t i = 0; i < n; ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  assert(space_ == o.space_);
  if (o.order_ < order_) *this = truncated(o.order_);
  const std::size_t n = space_->size_upto(order_);
  for (std::size_t i = 0; i < n; ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }

Jet& Jet::operator+=(double s) {
  c_[0] += s;
  return *this;
}

Jet& Jet::operator-=(double s) {
  c_[0] -= s;
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Jet& Jet::operator/=(double s) {
  for (double& v : c_) v /= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  assert(a.space_ == b.space_);
  Jet out(*a.space_, std::min(a.order_, b.order_));
  const double* x = a.c_.data();
  const double* y = b.c_.data();
  double* z = out.c_.data();
  for (const auto& t : a.space_->products(out.order_)) z[t.out] += x[t.a] * y[t.b];
  return out;
}

Jet compose(const Jet& u, std::span<const double> taylor) {
  const int m = u.order_;
  if (static_cast<int>(taylor.size()) < m + 1) {
    throw DerivativeOrderError("composition needs " + std::to_string(m + 1) + " Taylor terms");
  }
  Jet delta = u;
  delta.c_[0] = 0.0;
  Jet out(*u.space_, m);
  out.c_[0] = taylor[m];
  for (int k = m - 1; k >= 0; --k) {
    out = out * delta;
    out.c_[0] += taylor[k];
  }
  return out;
}

namespace {

template <class F>
Jet apply(const Jet& u, F&& coeff) {
  std::vector<double> t(static_cast<std::size_t>(u.order()) + 1);
  for (int k = 0; k <= u.order(); ++k) t[k] = coeff(k);
  return compose(u, t);
}

double inv_factorial(int k) { return 1.0 / std::tgamma(k + 1.0); }

}  // namespace

Jet reciprocal(const Jet& u) {
  const double u0 = u.value();
  if (u0 == 0.0) throw InvalidArgument("jet reciprocal of zero");
  return apply(u, [&](int k) { return ((k % 2) ? -1.0 : 1.0) / std::pow(u0, k + 1); });
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
Jet operator/(double s, const Jet& b) { return s * reciprocal(b); }

Jet exp(const Jet& u) {
  const double e = std::exp(u.value());
  return apply(u, [&](int k) { return e * inv_factorial(k); });
}

Jet log(const Jet& u) {
  const double u0 = u.value();
  if (u0 <= 0.0) throw InvalidArgument("jet log of non-positive value");
  return apply(u, [&](int k) {
    if (k == 0) return std::log(u0);
    return ((k % 2) ? 1.0 : -1.0) / (k * std::pow(u0, k));
  });
}

Jet pow(const Jet& u, double p) {
  const double u0 = u.value();
  return apply(u, [&](int k) {
    double binom = 1.0;
    for (int i = 0; i < k; ++i) binom *= (p - i) / (i + 1);
    return binom * std::pow(u0, p - k);
  });
}

Jet sqrt(const Jet& u) {
  if (u.value() <= 0.0) throw InvalidArgument("jet sqrt of non-positive value");
  return pow(u, 0.5);
}

Jet sin(const Jet& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  const double cyc[4] = {s, c, -s, -c};
  return apply(u, [&](int k) { return cyc[k % 4] * inv_factorial(k); });
}

Jet cos(const Jet& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  const double cyc[4] = {c, -s, -c, s};
  return apply(u, [&](int k) { return cyc[k % 4] * inv_factorial(k); });
}

Jet sinh(const Jet& u) {
  const double s = std::sinh(u.value()), c = std::cosh(u.value());
  return apply(u, [&](int k) { return ((k % 2) ? c : s) * inv_factorial(k); });
}

Jet cosh(const Jet& u) {
  const double s = std::sinh(u.value()), c = std::cosh(u.value());
  return apply(u, [&](int k) { return ((k % 2) ? s : c) * inv_factorial(k); });
}

Jet square(const Jet& u) { return u * u; }

}  // namespace solitonlab
