#pragma once

#include <functional>
#include <vector>

#include "slopegap/series.hpp"

namespace slopegap {

class SeriesMatrix {
 public:
  SeriesMatrix() = default;
  SeriesMatrix(int rows, int cols, const LaurentSeries& fill);

  static SeriesMatrix zero(const RingShape& shape, int precision, int rows, int cols);
  static SeriesMatrix identity(const RingShape& shape, int precision, int d);
  static SeriesMatrix diagonal(const std::vector<LaurentSeries>& entries);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  LaurentSeries& operator()(int i, int j) { return data_[index(i, j)]; }
  const LaurentSeries& operator()(int i, int j) const { return data_[index(i, j)]; }
  const std::vector<LaurentSeries>& entries() const noexcept { return data_; }

  const RingShape& shape() const { return data_.front().shape(); }
  // Smallest entry precision.
  int precision() const;
  // Smallest entry valuation bound: the matrix is 0 mod p^result.
  int valuation_bound() const;
  bool is_zero() const;

  SeriesMatrix block(int r0, int c0, int rows, int cols) const;
  void set_block(int r0, int c0, const SeriesMatrix& b);
  SeriesMatrix transform(const std::function<LaurentSeries(const LaurentSeries&)>& fn) const;

  SeriesMatrix operator-() const;
  friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
  friend SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b);
  friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
  SeriesMatrix scale(const PadicScalar& c) const;
  SeriesMatrix scale(const LaurentSeries& c) const;
  SeriesMatrix scale_by_p_power(int k) const;
  SeriesMatrix with_precision(int precision) const;

  bool operator==(const SeriesMatrix&) const = default;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * cols_ + j); }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<LaurentSeries> data_;
};

SeriesMatrix frobenius_power(int f, const SeriesMatrix& a);
SeriesMatrix theta(int i, const SeriesMatrix& a);
SeriesMatrix commutator(const SeriesMatrix& a, const SeriesMatrix& b);
LaurentSeries trace(const SeriesMatrix& a);

LaurentSeries determinant(const SeriesMatrix& a);
SeriesMatrix adjugate(const SeriesMatrix& a);
// Throws Error(NotInvertible) unless the determinant is p^g times a unit.
SeriesMatrix inverse(const SeriesMatrix& a);

// k-th multiplicative compound (matrix of k x k minors, subsets in lexicographic order).
SeriesMatrix exterior_power(const SeriesMatrix& a, int k);
// k-th additive compound: the derivation induced on the k-th exterior power.
SeriesMatrix exterior_derivation(const SeriesMatrix& g, int k);

std::vector<std::vector<int>> subsets(int d, int k);

// Determinant by cofactor expansion along rows, memoized over column subsets.
// T needs +, -, * and copy; `zero` and `one` seed the recursion.
template <class T>
T laplace_determinant(const std::vector<std::vector<T>>& m, const T& zero, const T& one) {
  const int d = static_cast<int>(m.size());
  if (d == 0) return one;
  std::vector<std::vector<T>> memo(static_cast<std::size_t>(d + 1));
  std::vector<std::vector<char>> known(static_cast<std::size_t>(d + 1));
  const std::size_t masks = std::size_t{1} << d;
  std::function<T(int, std::size_t)> rec = [&](int row, std::size_t mask) -> T {
    if (row == d) return one;
    auto& seen = known[static_cast<std::size_t>(row)];
    auto& cache = memo[static_cast<std::size_t>(row)];
    if (seen.empty()) {
      seen.assign(masks, 0);
      cache.assign(masks, zero);
    }
    if (seen[mask]) return cache[mask];
    T acc = zero;
    int sign_index = 0;
    for (int c = 0; c < d; ++c) {
      if (mask & (std::size_t{1} << c)) continue;
      T term = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] * rec(row + 1, mask | (std::size_t{1} << c));
      acc = (sign_index % 2 == 0) ? acc + term : acc - term;
      ++sign_index;
    }
    seen[mask] = 1;
    cache[mask] = acc;
    return acc;
  };
  return rec(0, 0);
}

}  // namespace slopegap
