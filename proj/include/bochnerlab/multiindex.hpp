#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bochnerlab::jets {

// Bookkeeping for the coefficient layout of truncated Taylor expansions.
//
// A multi-index alpha = (a1,...,ad) stands for the monomial x1^a1 ... xd^ad.
// Coefficient arrays are laid out in graded order: total degree ascending,
// and within one degree the exponent tuples sorted lexicographically with the
// exponent of x1 most significant and larger exponents first.  The layout for
// order k is therefore a prefix of the layout for order k+1, so truncating a
// jet is a plain copy of the leading block.
//
// Tables are built once per (dim, order) pair and cached for the process
// lifetime.  Supported range: 1 <= dim <= 24, 0 <= order <= 4.
class MultiIndexTable {
public:
  static const MultiIndexTable& get(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }

  // number of multi-indices with |alpha| <= order
  int size() const { return static_cast<int>(grades_.size()); }

  // number of multi-indices with |alpha| <= grade
  int size_through(int grade) const { return prefix_[grade]; }

  // exponent tuple of the multi-index at a given position
  std::span<const std::uint8_t> exponents(int pos) const {
    return {exps_.data() + static_cast<std::size_t>(pos) * dim_,
            static_cast<std::size_t>(dim_)};
  }

  int grade(int pos) const { return grades_[pos]; }

  // position of an exponent tuple, -1 if it exceeds the order
  int position(std::span<const int> alpha) const;

  // position of alpha(pos) + e_var, -1 if degree would exceed the order
  int bump(int pos, int var) const { return bump_[pos * dim_ + var]; }

  // alpha! = a1! a2! ... ad!
  double factorial(int pos) const { return factorial_[pos]; }

  struct ProductEntry {
    std::int32_t lhs, rhs, out;
  };

  // every ordered pair of positions whose grades sum to <= order, with the
  // position of the product monomial
  std::span<const ProductEntry> products() const { return products_; }

private:
  MultiIndexTable(int dim, int order);

  int dim_;
  int order_;
  std::vector<std::uint8_t> exps_;
  std::vector<std::uint8_t> grades_;
  std::vector<int> prefix_;
  std::vector<std::int32_t> bump_;
  std::vector<double> factorial_;
  std::vector<ProductEntry> products_;
};

}  // namespace bochnerlab::jets
