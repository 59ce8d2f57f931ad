#include "bochnerlab/jet.hpp"

#include <algorithm>
#include <cmath>

namespace bochnerlab::jets {

Jet Jet::variable(int dim, int order, int var, double value) {
  if (var < 0 || var >= dim) throw std::invalid_argument("variable index out of range");
  Jet j(dim, order);
  j.c_[0] = value;
  if (order >= 1) j.c_[j.table().bump(0, var)] = 1.0;
  return j;
}

double Jet::partial(std::span<const int> alpha) const {
  int pos = table().position(alpha);
  if (pos < 0) throw std::invalid_argument("partial exceeds jet order");
  return c_[pos] * table().factorial(pos);
}

double Jet::d1(int i) const {
  int a[24] = {};
  ++a[i];
  return partial(std::span<const int>(a, dim_));
}

double Jet::d2(int i, int j) const {
  int a[24] = {};
  ++a[i];
  ++a[j];
  return partial(std::span<const int>(a, dim_));
}

double Jet::d3(int i, int j, int k) const {
  int a[24] = {};
  ++a[i];
  ++a[j];
  ++a[k];
  return partial(std::span<const int>(a, dim_));
}

Jet Jet::derivative(int var) const {
  if (order_ == 0) throw std::invalid_argument("cannot differentiate an order-0 jet");
  if (var < 0 || var >= dim_) throw std::invalid_argument("variable index out of range");
  Jet out(dim_, order_ - 1);
  const auto& tab = table();
  const int n = static_cast<int>(out.c_.size());
  for (int p = 0; p < n; ++p) {
    // positions of the lower-order table coincide with the leading block here
    int q = tab.bump(p, var);
    out.c_[p] = c_[q] * (tab.exponents(p)[var] + 1);
  }
  return out;
}

Jet Jet::truncated(int new_order) const {
  if (new_order >= order_) return *this;
  Jet out(dim_, new_order);
  std::copy_n(c_.begin(), out.c_.size(), out.c_.begin());
  return out;
}

void Jet::check_compatible(const Jet& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("jet dimension mismatch");
}

Jet& Jet::operator+=(const Jet& o) {
  check_compatible(o);
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_compatible(o);
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& x : out.c_) x = -x;
  return out;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_compatible(b);
  const int order = std::min(a.order_, b.order_);
  Jet out(a.dim_, order);
  // positions in the min-order table index the leading block of both operands
  for (const auto& e : out.table().products())
    out.c_[e.out] += a.c_[e.lhs] * b.c_[e.rhs];
  return out;
}

double max_abs_coefficient(const Jet& j) {
  double m = 0.0;
  for (double c : j.coefficients()) m = std::max(m, std::abs(c));
  return m;
}

namespace {

// composes f(u) from the derivatives f^(k)(u.value()), k = 0..order
Jet compose(const Jet& u, std::span<const double> deriv) {
  Jet w = u;
  w.coefficient(0) = 0.0;
  Jet out = Jet::constant(u.dim(), u.order(), deriv[0]);
  Jet wp = Jet::constant(u.dim(), u.order(), 1.0);
  double fact = 1.0;
  for (int k = 1; k <= u.order(); ++k) {
    wp = wp * w;
    fact *= k;
    out += wp * (deriv[k] / fact);
  }
  return out;
}

}  // namespace

Jet sin(const Jet& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  const double d[5] = {s, c, -s, -c, s};
  return compose(u, {d, static_cast<std::size_t>(u.order()) + 1});
}

Jet cos(const Jet& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  const double d[5] = {c, -s, -c, s, c};
  return compose(u, {d, static_cast<std::size_t>(u.order()) + 1});
}

Jet exp(const Jet& u) {
  const double e = std::exp(u.value());
  const double d[5] = {e, e, e, e, e};
  return compose(u, {d, static_cast<std::size_t>(u.order()) + 1});
}

Jet sqrt(const Jet& u) {
  const double x = u.value();
  if (!(x > 0.0)) throw JetDomainError("sqrt of a non-positive value");
  const double r = std::sqrt(x);
  // k-th derivative of x^(1/2): (1/2)(1/2 - 1)...(1/2 - k + 1) x^(1/2 - k)
  double d[5];
  d[0] = r;
  double power = r;
  double mult = 1.0;
  for (int k = 1; k <= 4; ++k) {
    mult *= 0.5 - (k - 1);
    power /= x;
    d[k] = mult * power;
  }
  return compose(u, {d, static_cast<std::size_t>(u.order()) + 1});
}

Jet recip(const Jet& u) {
  const double x = u.value();
  if (x == 0.0) throw JetDomainError("division by a zero value");
  double d[5];
  double p = 1.0 / x;
  double sign = 1.0, fact = 1.0;
  for (int k = 0; k <= 4; ++k) {
    d[k] = sign * fact * p;
    p /= x;
    sign = -sign;
    fact *= k + 1;
  }
  return compose(u, {d, static_cast<std::size_t>(u.order()) + 1});
}

Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }

Jet operator/(double s, const Jet& a) { return recip(a) * s; }

Jet pow(const Jet& u, int k) {
  if (k < 0) return recip(pow(u, -k));
  Jet acc = Jet::constant(u.dim(), u.order(), 1.0);
  Jet base = u;
  int e = k;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

}  // namespace bochnerlab::jets
