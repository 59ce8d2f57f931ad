#include "bochnerlab/multiindex.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace bochnerlab::jets {

namespace {

// packs an exponent tuple into a base-5 integer key (each exponent <= 4)
std::uint64_t pack_key(std::span<const std::uint8_t> alpha) {
  std::uint64_t key = 0;
  for (auto a : alpha) key = key * 5 + a;
  return key;
}

void enumerate(int dim, int degree, std::vector<std::uint8_t>& scratch,
               std::vector<std::uint8_t>& out) {
  const int slot = static_cast<int>(scratch.size());
  if (slot == dim - 1) {
    scratch.push_back(static_cast<std::uint8_t>(degree));
    out.insert(out.end(), scratch.begin(), scratch.end());
    scratch.pop_back();
    return;
  }
  for (int a = degree; a >= 0; --a) {
    scratch.push_back(static_cast<std::uint8_t>(a));
    enumerate(dim, degree - a, scratch, out);
    scratch.pop_back();
  }
}

}  // namespace

MultiIndexTable::MultiIndexTable(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1 || dim > 24) throw std::invalid_argument("jet dimension out of range");
  if (order < 0 || order > 4) throw std::invalid_argument("jet order out of range");

  prefix_.assign(order + 1, 0);
  std::vector<std::uint8_t> scratch;
  for (int k = 0; k <= order; ++k) {
    enumerate(dim, k, scratch, exps_);
    prefix_[k] = static_cast<int>(exps_.size() / dim_);
    while (grades_.size() < exps_.size() / dim_)
      grades_.push_back(static_cast<std::uint8_t>(k));
  }

  std::map<std::uint64_t, int> lookup;
  const int n = size();
  for (int p = 0; p < n; ++p) lookup[pack_key(exponents(p))] = p;

  bump_.assign(static_cast<std::size_t>(n) * dim_, -1);
  factorial_.assign(n, 1.0);
  for (int p = 0; p < n; ++p) {
    auto alpha = exponents(p);
    double f = 1.0;
    for (int v = 0; v < dim_; ++v)
      for (int a = 2; a <= alpha[v]; ++a) f *= a;
    factorial_[p] = f;
    if (grades_[p] < order_) {
      std::vector<std::uint8_t> up(alpha.begin(), alpha.end());
      for (int v = 0; v < dim_; ++v) {
        ++up[v];
        bump_[static_cast<std::size_t>(p) * dim_ + v] = lookup.at(pack_key(up));
        --up[v];
      }
    }
  }

  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (grades_[p] + grades_[q] > order_) continue;
      auto a = exponents(p);
      auto b = exponents(q);
      std::vector<std::uint8_t> sum(dim_);
      for (int v = 0; v < dim_; ++v) sum[v] = static_cast<std::uint8_t>(a[v] + b[v]);
      products_.push_back({p, q, lookup.at(pack_key(sum))});
    }
  }
}

int MultiIndexTable::position(std::span<const int> alpha) const {
  if (static_cast<int>(alpha.size()) != dim_) return -1;
  int total = 0;
  for (int a : alpha) {
    if (a < 0) return -1;
    total += a;
  }
  if (total > order_) return -1;
  // walk down by bumping from the origin; positions are few, this is cold code
  int pos = 0;
  for (int v = 0; v < dim_; ++v)
    for (int k = 0; k < alpha[v]; ++k) pos = bump_[static_cast<std::size_t>(pos) * dim_ + v];
  return pos;
}

const MultiIndexTable& MultiIndexTable::get(int dim, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, MultiIndexTable*> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(dim, order);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, new MultiIndexTable(dim, order)).first;
  return *it->second;
}

}  // namespace bochnerlab::jets
