#pragma once

#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "bochnerlab/multiindex.hpp"

namespace bochnerlab::jets {

// thrown when a jet operation leaves the domain of the underlying function
struct JetDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Truncated Taylor expansion of a scalar function of `dim` variables around a
// base point, kept to total degree `order`.  Coefficients are stored in the
// Taylor normalization: c[alpha] = partial_alpha f / alpha!, so products are
// plain convolutions over the multi-index table.
class Jet {
public:
  Jet() : dim_(0), order_(0) {}
  Jet(int dim, int order)
      : dim_(dim), order_(order), c_(MultiIndexTable::get(dim, order).size(), 0.0) {}

  static Jet constant(int dim, int order, double value) {
    Jet j(dim, order);
    j.c_[0] = value;
    return j;
  }

  // the jet of the coordinate function x_var (0-based) at the base point
  static Jet variable(int dim, int order, int var, double value);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const MultiIndexTable& table() const { return MultiIndexTable::get(dim_, order_); }

  double value() const { return c_[0]; }

  // raw Taylor coefficient at a table position
  double coefficient(int pos) const { return c_[pos]; }
  double& coefficient(int pos) { return c_[pos]; }
  std::span<const double> coefficients() const { return c_; }

  // partial derivative for an exponent tuple, e.g. {1,2,0} = d^3/dx1 dx2^2
  double partial(std::span<const int> alpha) const;
  double partial(std::initializer_list<int> alpha) const {
    return partial(std::span<const int>(alpha.begin(), alpha.size()));
  }

  // first, second and third partials by direction index
  double d1(int i) const;
  double d2(int i, int j) const;
  double d3(int i, int j, int k) const;

  // jet of the partial derivative with respect to x_var; one order lower
  Jet derivative(int var) const;

  Jet truncated(int new_order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double s) { c_[0] += s; return *this; }
  Jet& operator-=(double s) { c_[0] -= s; return *this; }
  Jet& operator*=(double s);
  Jet& operator/=(double s) { return *this *= 1.0 / s; }
  Jet operator-() const;

  friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
  friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
  friend Jet operator+(Jet a, double s) { a += s; return a; }
  friend Jet operator+(double s, Jet a) { a += s; return a; }
  friend Jet operator-(Jet a, double s) { a -= s; return a; }
  friend Jet operator-(double s, const Jet& a) { Jet r = -a; r += s; return r; }
  friend Jet operator*(Jet a, double s) { a *= s; return a; }
  friend Jet operator*(double s, Jet a) { a *= s; return a; }
  friend Jet operator/(Jet a, double s) { a /= s; return a; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator/(double s, const Jet& a);

private:
  void check_compatible(const Jet& o) const;

  int dim_;
  int order_;
  std::vector<double> c_;
};

// largest absolute Taylor coefficient, a cheap zero test
double max_abs_coefficient(const Jet& j);

Jet sin(const Jet& u);
Jet cos(const Jet& u);
Jet exp(const Jet& u);
Jet sqrt(const Jet& u);
Jet recip(const Jet& u);
Jet pow(const Jet& u, int k);

}  // namespace bochnerlab::jets
