#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace bochnerlab::tensor {

enum class Variance : std::uint8_t { Co, Contra };

// Dense tensor of doubles at a single point, degree 0..5, with a variance
// flag per slot.  Storage is row-major in the slot order.
class PointTensor {
public:
  PointTensor() : dim_(0) {}
  PointTensor(int dim, std::vector<Variance> variance);

  static PointTensor scalar(int dim, double v);

  int dim() const { return dim_; }
  int degree() const { return static_cast<int>(variance_.size()); }
  const std::vector<Variance>& variance() const { return variance_; }

  double& at(std::span<const int> idx) { return data_[flat(idx)]; }
  double at(std::span<const int> idx) const { return data_[flat(idx)]; }

  template <class... I>
  double& operator()(I... i) {
    const int idx[] = {static_cast<int>(i)...};
    return at(std::span<const int>(idx, sizeof...(I)));
  }
  template <class... I>
  double operator()(I... i) const {
    const int idx[] = {static_cast<int>(i)...};
    return at(std::span<const int>(idx, sizeof...(I)));
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  PointTensor& operator+=(const PointTensor& o);
  PointTensor& operator-=(const PointTensor& o);
  PointTensor& operator*=(double s);
  friend PointTensor operator+(PointTensor a, const PointTensor& b) { a += b; return a; }
  friend PointTensor operator-(PointTensor a, const PointTensor& b) { a -= b; return a; }
  friend PointTensor operator*(PointTensor a, double s) { a *= s; return a; }
  friend PointTensor operator*(double s, PointTensor a) { a *= s; return a; }

private:
  std::size_t flat(std::span<const int> idx) const;
  void check_same_shape(const PointTensor& o) const;

  int dim_;
  std::vector<Variance> variance_;
  std::vector<double> data_;
};

// largest absolute component
double max_norm(const PointTensor& t);

// Contracts two slots.  A covariant-contravariant pair is traced directly.
// For two covariant slots pass the inverse metric as `weights`; for two
// contravariant slots pass the metric.
PointTensor contract(const PointTensor& t, int slot_a, int slot_b,
                     const PointTensor* weights = nullptr);

// converts one slot between variances with the given metric or inverse metric
PointTensor raise_slot(const PointTensor& t, int slot, const PointTensor& g_inv);
PointTensor lower_slot(const PointTensor& t, int slot, const PointTensor& g);

// complex vector in the complexified tangent space at the point
struct ComplexVector {
  std::vector<std::complex<double>> v;

  int dim() const { return static_cast<int>(v.size()); }
  std::complex<double> operator[](int i) const { return v[i]; }
  std::complex<double>& operator[](int i) { return v[i]; }
};

ComplexVector conj(const ComplexVector& z);

// applies a (1,0)-contravariant-first endomorphism (slot0 contra, slot1 co)
// to a complex vector by linearity
ComplexVector apply_endo(const PointTensor& j, const ComplexVector& x);
std::vector<double> apply_endo(const PointTensor& j, std::span<const double> x);

// fully covariant tensor evaluated on one complex vector per slot
std::complex<double> complex_eval(const PointTensor& t,
                                  std::span<const ComplexVector> args);

// residuals of the common index symmetries, as largest absolute violation
double defect_sym_pair(const PointTensor& t, int slot_a, int slot_b);
double defect_skew_pair(const PointTensor& t, int slot_a, int slot_b);
// pair-exchange symmetry of a degree-4 tensor: T(x,y,z,u) = T(z,u,x,y)
double defect_pair_exchange(const PointTensor& t);
// first Bianchi symmetry of a degree-4 tensor: cyclic sum over slots 0,1,2
double defect_cyclic_012(const PointTensor& t);
// invariance under J applied to both slots of a degree-2 tensor
double defect_hybrid(const PointTensor& t, const PointTensor& j);
// invariance under J applied to slots 2 and 3 of a degree-4 tensor
double defect_hybrid_34(const PointTensor& t, const PointTensor& j);

}  // namespace bochnerlab::tensor
