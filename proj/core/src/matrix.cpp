#include "slopegap/matrix.hpp"

#include <algorithm>
#include <cassert>

#include "slopegap/error.hpp"
#include "slopegap/polyannulus.hpp"

namespace slopegap {

SeriesMatrix::SeriesMatrix(int rows, int cols, const LaurentSeries& fill)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {}

SeriesMatrix SeriesMatrix::zero(const RingShape& shape, int precision, int rows, int cols) {
  return SeriesMatrix(rows, cols, LaurentSeries(shape, precision));
}

SeriesMatrix SeriesMatrix::identity(const RingShape& shape, int precision, int d) {
  SeriesMatrix m = zero(shape, precision, d, d);
  for (int i = 0; i < d; ++i) m(i, i) = LaurentSeries::integer(shape, precision, 1);
  return m;
}

SeriesMatrix SeriesMatrix::diagonal(const std::vector<LaurentSeries>& entries) {
  const int d = static_cast<int>(entries.size());
  int precision = entries.front().precision();
  for (const auto& e : entries) precision = std::min(precision, e.precision());
  SeriesMatrix m = zero(entries.front().shape(), precision, d, d);
  for (int i = 0; i < d; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return m;
}

int SeriesMatrix::precision() const {
  int n = data_.front().precision();
  for (const auto& e : data_) n = std::min(n, e.precision());
  return n;
}

int SeriesMatrix::valuation_bound() const {
  int v = data_.front().valuation_bound();
  for (const auto& e : data_) v = std::min(v, e.valuation_bound());
  return v;
}

bool SeriesMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const LaurentSeries& e) { return e.is_zero(); });
}

SeriesMatrix SeriesMatrix::block(int r0, int c0, int rows, int cols) const {
  SeriesMatrix b(rows, cols, (*this)(r0, c0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void SeriesMatrix::set_block(int r0, int c0, const SeriesMatrix& b) {
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

SeriesMatrix SeriesMatrix::transform(const std::function<LaurentSeries(const LaurentSeries&)>& fn) const {
  SeriesMatrix out = *this;
  for (auto& e : out.data_) e = fn(e);
  return out;
}

SeriesMatrix SeriesMatrix::operator-() const {
  return transform([](const LaurentSeries& e) { return -e; });
}

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
  assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
  SeriesMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) { return a + (-b); }

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
  assert(a.cols_ == b.rows_);
  SeriesMatrix out(a.rows_, b.cols_, LaurentSeries());
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) {
      LaurentSeries acc = a(i, 0) * b(0, j);
      for (int k = 1; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

SeriesMatrix SeriesMatrix::scale(const PadicScalar& c) const {
  return transform([&](const LaurentSeries& e) { return e.scale(c); });
}

SeriesMatrix SeriesMatrix::scale(const LaurentSeries& c) const {
  return transform([&](const LaurentSeries& e) { return e * c; });
}

SeriesMatrix SeriesMatrix::scale_by_p_power(int k) const {
  return transform([k](const LaurentSeries& e) { return e.scale_by_p_power(k); });
}

SeriesMatrix SeriesMatrix::with_precision(int precision) const {
  return transform([precision](const LaurentSeries& e) { return e.with_precision(precision); });
}

SeriesMatrix frobenius_power(int f, const SeriesMatrix& a) {
  return a.transform([f](const LaurentSeries& e) { return frobenius_power(f, e); });
}

SeriesMatrix theta(int i, const SeriesMatrix& a) {
  return a.transform([i](const LaurentSeries& e) { return theta(i, e); });
}

SeriesMatrix commutator(const SeriesMatrix& a, const SeriesMatrix& b) { return a * b - b * a; }

LaurentSeries trace(const SeriesMatrix& a) {
  LaurentSeries t = a(0, 0);
  for (int i = 1; i < a.rows(); ++i) t += a(i, i);
  return t;
}

namespace {

std::vector<std::vector<LaurentSeries>> rows_of(const SeriesMatrix& a, const std::vector<int>& r,
                                                const std::vector<int>& c) {
  std::vector<std::vector<LaurentSeries>> m(r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (int j : c) m[i].push_back(a(r[i], j));
  return m;
}

std::vector<int> all_but(int d, int skip) {
  std::vector<int> v;
  for (int i = 0; i < d; ++i)
    if (i != skip) v.push_back(i);
  return v;
}

LaurentSeries minor(const SeriesMatrix& a, const std::vector<int>& r, const std::vector<int>& c) {
  const LaurentSeries& any = a(0, 0);
  int precision = a.precision();
  return laplace_determinant(rows_of(a, r, c), LaurentSeries(any.shape(), precision),
                             LaurentSeries::integer(any.shape(), precision, 1));
}

}  // namespace

std::vector<std::vector<int>> subsets(int d, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < d; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

LaurentSeries determinant(const SeriesMatrix& a) {
  assert(a.square());
  return minor(a, all_but(a.rows(), -1), all_but(a.cols(), -1));
}

SeriesMatrix adjugate(const SeriesMatrix& a) {
  const int d = a.rows();
  SeriesMatrix out = a;
  if (d == 1) {
    out(0, 0) = LaurentSeries::integer(a.shape(), a.precision(), 1);
    return out;
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      LaurentSeries m = minor(a, all_but(d, j), all_but(d, i));
      out(i, j) = (i + j) % 2 == 0 ? m : -m;
    }
  return out;
}

SeriesMatrix inverse(const SeriesMatrix& a) {
  const LaurentSeries det = determinant(a);
  if (det.is_zero()) throw Error(ErrorKind::NotInvertible, "determinant vanishes at precision");
  LaurentSeries inv_det;
  try {
    inv_det = invert(det);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotAUnit) throw;
    throw Error(ErrorKind::NotInvertible, "determinant is not a unit: " + e.detail());
  }
  return adjugate(a).scale(inv_det);
}

SeriesMatrix exterior_power(const SeriesMatrix& a, int k) {
  const auto sets = subsets(a.rows(), k);
  const int n = static_cast<int>(sets.size());
  SeriesMatrix out(n, n, a(0, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = minor(a, sets[static_cast<std::size_t>(i)], sets[static_cast<std::size_t>(j)]);
  return out;
}

SeriesMatrix exterior_derivation(const SeriesMatrix& g, int k) {
  const int d = g.rows();
  const auto sets = subsets(d, k);
  const int n = static_cast<int>(sets.size());
  SeriesMatrix out = SeriesMatrix::zero(g.shape(), g.precision(), n, n);
  for (int col = 0; col < n; ++col) {
    const auto& J = sets[static_cast<std::size_t>(col)];
    for (int t = 0; t < k; ++t) {
      for (int r = 0; r < d; ++r) {
        std::vector<int> I = J;
        I[static_cast<std::size_t>(t)] = r;
        std::vector<int> sorted = I;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
        int inversions = 0;
        for (int x = 0; x < k; ++x)
          for (int y = x + 1; y < k; ++y)
            if (I[static_cast<std::size_t>(x)] > I[static_cast<std::size_t>(y)]) ++inversions;
        const int row = static_cast<int>(std::find(sets.begin(), sets.end(), sorted) - sets.begin());
        const LaurentSeries& entry = g(r, J[static_cast<std::size_t>(t)]);
        out(row, col) += inversions % 2 == 0 ? entry : -entry;
      }
    }
  }
  return out;
}

}  // namespace slopegap
