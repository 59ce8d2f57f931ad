#include "bochnerlab/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace bochnerlab::tensor {

namespace {

std::size_t pow_size(int dim, int degree) {
  std::size_t s = 1;
  for (int k = 0; k < degree; ++k) s *= dim;
  return s;
}

// iterates all index tuples of a given degree
struct Odometer {
  explicit Odometer(int dim, int degree) : dim(dim), idx(degree, 0) {}

  bool next() {
    for (int k = static_cast<int>(idx.size()) - 1; k >= 0; --k) {
      if (++idx[k] < dim) return true;
      idx[k] = 0;
    }
    return false;
  }

  int dim;
  std::vector<int> idx;
};

}  // namespace

PointTensor::PointTensor(int dim, std::vector<Variance> variance)
    : dim_(dim), variance_(std::move(variance)) {
  if (dim < 1) throw std::invalid_argument("tensor dimension must be positive");
  if (variance_.size() > 5) throw std::invalid_argument("tensor degree must be 0..5");
  data_.assign(pow_size(dim_, degree()), 0.0);
}

PointTensor PointTensor::scalar(int dim, double v) {
  PointTensor t(dim, {});
  t.data_[0] = v;
  return t;
}

std::size_t PointTensor::flat(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != degree())
    throw std::invalid_argument("tensor index arity mismatch");
  std::size_t f = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw std::out_of_range("tensor index out of range");
    f = f * dim_ + i;
  }
  return f;
}

void PointTensor::check_same_shape(const PointTensor& o) const {
  if (dim_ != o.dim_ || variance_ != o.variance_)
    throw std::invalid_argument("tensor shape mismatch");
}

PointTensor& PointTensor::operator+=(const PointTensor& o) {
  check_same_shape(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

PointTensor& PointTensor::operator-=(const PointTensor& o) {
  check_same_shape(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

PointTensor& PointTensor::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

double max_norm(const PointTensor& t) {
  double m = 0.0;
  for (double x : t.data()) m = std::max(m, std::abs(x));
  return m;
}

PointTensor contract(const PointTensor& t, int slot_a, int slot_b,
                     const PointTensor* weights) {
  const int deg = t.degree();
  if (slot_a == slot_b || slot_a < 0 || slot_b < 0 || slot_a >= deg || slot_b >= deg)
    throw std::invalid_argument("invalid contraction slots");
  if (slot_a > slot_b) std::swap(slot_a, slot_b);

  const bool mixed = t.variance()[slot_a] != t.variance()[slot_b];
  if (!mixed) {
    if (!weights)
      throw std::invalid_argument(
          "contracting two slots of equal variance requires a metric");
    if (weights->degree() != 2 || weights->dim() != t.dim())
      throw std::invalid_argument("contraction weights must be a degree-2 tensor");
  }

  std::vector<Variance> out_var;
  for (int s = 0; s < deg; ++s)
    if (s != slot_a && s != slot_b) out_var.push_back(t.variance()[s]);
  PointTensor out(t.dim(), out_var);

  const int d = t.dim();
  std::vector<int> full(deg, 0);
  if (out.degree() == 0) {
    double acc = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double w = mixed ? (i == j ? 1.0 : 0.0) : (*weights)(i, j);
        if (w == 0.0) continue;
        full[slot_a] = i;
        full[slot_b] = j;
        acc += w * t.at(full);
      }
    out.data()[0] = acc;
    return out;
  }

  Odometer od(d, out.degree());
  do {
    int k = 0;
    for (int s = 0; s < deg; ++s)
      if (s != slot_a && s != slot_b) full[s] = od.idx[k++];
    double acc = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double w = mixed ? (i == j ? 1.0 : 0.0) : (*weights)(i, j);
        if (w == 0.0) continue;
        full[slot_a] = i;
        full[slot_b] = j;
        acc += w * t.at(full);
      }
    out.at(od.idx) = acc;
  } while (od.next());
  return out;
}

namespace {

PointTensor convert_slot(const PointTensor& t, int slot, const PointTensor& w,
                         Variance from, Variance to) {
  if (slot < 0 || slot >= t.degree()) throw std::invalid_argument("slot out of range");
  if (t.variance()[slot] != from)
    throw std::invalid_argument("slot already has the requested variance");
  if (w.degree() != 2 || w.dim() != t.dim())
    throw std::invalid_argument("metric must be a degree-2 tensor");

  std::vector<Variance> out_var = t.variance();
  out_var[slot] = to;
  PointTensor out(t.dim(), out_var);
  const int d = t.dim();
  Odometer od(d, t.degree());
  std::vector<int> src = od.idx;
  do {
    double acc = 0.0;
    src = od.idx;
    for (int m = 0; m < d; ++m) {
      src[slot] = m;
      acc += w(od.idx[slot], m) * t.at(src);
    }
    out.at(od.idx) = acc;
  } while (od.next());
  return out;
}

}  // namespace

PointTensor raise_slot(const PointTensor& t, int slot, const PointTensor& g_inv) {
  return convert_slot(t, slot, g_inv, Variance::Co, Variance::Contra);
}

PointTensor lower_slot(const PointTensor& t, int slot, const PointTensor& g) {
  return convert_slot(t, slot, g, Variance::Contra, Variance::Co);
}

ComplexVector conj(const ComplexVector& z) {
  ComplexVector out = z;
  for (auto& c : out.v) c = std::conj(c);
  return out;
}

ComplexVector apply_endo(const PointTensor& j, const ComplexVector& x) {
  if (j.degree() != 2 || j.variance()[0] != Variance::Contra ||
      j.variance()[1] != Variance::Co)
    throw std::invalid_argument("endomorphism must have one contra and one co slot");
  if (j.dim() != x.dim()) throw std::invalid_argument("dimension mismatch");
  ComplexVector out;
  out.v.assign(x.dim(), 0.0);
  for (int i = 0; i < j.dim(); ++i)
    for (int m = 0; m < j.dim(); ++m) out.v[i] += j(i, m) * x.v[m];
  return out;
}

std::vector<double> apply_endo(const PointTensor& j, std::span<const double> x) {
  ComplexVector z;
  z.v.assign(x.begin(), x.end());
  ComplexVector w = apply_endo(j, z);
  std::vector<double> out(w.v.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = w.v[i].real();
  return out;
}

std::complex<double> complex_eval(const PointTensor& t,
                                  std::span<const ComplexVector> args) {
  if (static_cast<int>(args.size()) != t.degree())
    throw std::invalid_argument("complex_eval arity mismatch");
  for (const auto& v : t.variance())
    if (v != Variance::Co)
      throw std::invalid_argument("complex_eval requires a fully covariant tensor");
  for (const auto& a : args)
    if (a.dim() != t.dim()) throw std::invalid_argument("argument dimension mismatch");

  if (t.degree() == 0) return t.data()[0];
  std::complex<double> acc = 0.0;
  Odometer od(t.dim(), t.degree());
  do {
    std::complex<double> prod = t.at(od.idx);
    if (prod == 0.0) continue;
    for (int s = 0; s < t.degree(); ++s) prod *= args[s][od.idx[s]];
    acc += prod;
  } while (od.next());
  return acc;
}

namespace {

template <class F>
double max_defect(const PointTensor& t, F item) {
  double m = 0.0;
  Odometer od(t.dim(), t.degree());
  do m = std::max(m, std::abs(item(od.idx)));
  while (od.next());
  return m;
}

}  // namespace

double defect_sym_pair(const PointTensor& t, int slot_a, int slot_b) {
  return max_defect(t, [&](std::vector<int> idx) {
    double a = t.at(idx);
    std::swap(idx[slot_a], idx[slot_b]);
    return a - t.at(idx);
  });
}

double defect_skew_pair(const PointTensor& t, int slot_a, int slot_b) {
  return max_defect(t, [&](std::vector<int> idx) {
    double a = t.at(idx);
    std::swap(idx[slot_a], idx[slot_b]);
    return a + t.at(idx);
  });
}

double defect_pair_exchange(const PointTensor& t) {
  if (t.degree() != 4) throw std::invalid_argument("pair exchange needs degree 4");
  return max_defect(t, [&](std::vector<int> idx) {
    return t.at(idx) - t(idx[2], idx[3], idx[0], idx[1]);
  });
}

double defect_cyclic_012(const PointTensor& t) {
  if (t.degree() != 4) throw std::invalid_argument("cyclic symmetry needs degree 4");
  return max_defect(t, [&](const std::vector<int>& i) {
    return t(i[0], i[1], i[2], i[3]) + t(i[1], i[2], i[0], i[3]) +
           t(i[2], i[0], i[1], i[3]);
  });
}

double defect_hybrid(const PointTensor& t, const PointTensor& j) {
  if (t.degree() != 2) throw std::invalid_argument("hybrid defect needs degree 2");
  const int d = t.dim();
  double m = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double jj = 0.0;
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) jj += j(p, a) * j(q, b) * t(p, q);
      m = std::max(m, std::abs(jj - t(a, b)));
    }
  return m;
}

double defect_hybrid_34(const PointTensor& t, const PointTensor& j) {
  if (t.degree() != 4) throw std::invalid_argument("hybrid-34 defect needs degree 4");
  const int d = t.dim();
  double m = 0.0;
  Odometer od(d, 4);
  do {
    const auto& i = od.idx;
    double jj = 0.0;
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) jj += j(p, i[2]) * j(q, i[3]) * t(i[0], i[1], p, q);
    m = std::max(m, std::abs(jj - t.at(i)));
  } while (od.next());
  return m;
}

}  // namespace bochnerlab::tensor
