#pragma once

// Sparse exact matrices over the cyclotomic field, plus the small dense
// elimination routines (solve, inverse, rank, kernel) used on single blocks.

#include "wqh/cyclotomic.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace wqh {

class Mat {
 public:
  Mat() = default;
  Mat(long rows, long cols) : rows_(rows), cols_(cols), r_(static_cast<std::size_t>(rows)) {}

  static Mat identity(long n) {
    Mat m(n, n);
    for (long i = 0; i < n; ++i) m.r_[static_cast<std::size_t>(i)].push_back({i, Cyc::one()});
    return m;
  }
  static Mat diag(const std::vector<Cyc>& d) {
    Mat m(static_cast<long>(d.size()), static_cast<long>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
      if (!d[i].is_zero()) m.r_[i].push_back({static_cast<long>(i), d[i]});
    return m;
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  bool is_zero() const {
    for (const auto& row : r_)
      if (!row.empty()) return false;
    return true;
  }
  long nnz() const {
    long n = 0;
    for (const auto& row : r_) n += static_cast<long>(row.size());
    return n;
  }

  const std::vector<std::pair<long, Cyc>>& row(long i) const { return r_[static_cast<std::size_t>(i)]; }

  Cyc get(long i, long j) const {
    const auto& row = r_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const auto& e, long c) { return e.first < c; });
    if (it != row.end() && it->first == j) return it->second;
    return Cyc::zero();
  }

  void set(long i, long j, Cyc v) {
    auto& row = r_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const auto& e, long c) { return e.first < c; });
    if (it != row.end() && it->first == j) {
      if (v.is_zero()) row.erase(it);
      else it->second = std::move(v);
    } else if (!v.is_zero()) {
      row.insert(it, {j, std::move(v)});
    }
  }

  void add_to(long i, long j, const Cyc& v) {
    if (v.is_zero()) return;
    auto& row = r_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const auto& e, long c) { return e.first < c; });
    if (it != row.end() && it->first == j) {
      it->second += v;
      if (it->second.is_zero()) row.erase(it);
    } else {
      row.insert(it, {j, v});
    }
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    Mat c = a;
    for (long i = 0; i < b.rows_; ++i)
      for (const auto& [j, v] : b.r_[static_cast<std::size_t>(i)]) c.add_to(i, j, v);
    return c;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    Mat c = a;
    for (long i = 0; i < b.rows_; ++i)
      for (const auto& [j, v] : b.r_[static_cast<std::size_t>(i)]) c.add_to(i, j, -v);
    return c;
  }
  Mat operator-() const {
    Mat c = *this;
    for (auto& row : c.r_)
      for (auto& e : row) e.second = -e.second;
    return c;
  }
  Mat scaled(const Cyc& s) const {
    if (s.is_zero()) return Mat(rows_, cols_);
    Mat c = *this;
    for (auto& row : c.r_)
      for (auto& e : row) e.second *= s;
    return c;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat c(a.rows_, b.cols_);
    std::vector<Cyc> scratch(static_cast<std::size_t>(b.cols_));
    std::vector<long> touched;
    for (long i = 0; i < a.rows_; ++i) {
      touched.clear();
      for (const auto& [k, av] : a.r_[static_cast<std::size_t>(i)]) {
        for (const auto& [j, bv] : b.r_[static_cast<std::size_t>(k)]) {
          if (scratch[static_cast<std::size_t>(j)].is_zero()) touched.push_back(j);
          scratch[static_cast<std::size_t>(j)] += av * bv;
        }
      }
      std::sort(touched.begin(), touched.end());
      auto& out = c.r_[static_cast<std::size_t>(i)];
      for (long j : touched) {
        if (!scratch[static_cast<std::size_t>(j)].is_zero())
          out.push_back({j, std::move(scratch[static_cast<std::size_t>(j)])});
        scratch[static_cast<std::size_t>(j)] = Cyc::zero();
      }
    }
    return c;
  }

  Mat kron(const Mat& b) const {
    Mat c(rows_ * b.rows_, cols_ * b.cols_);
    for (long i = 0; i < rows_; ++i) {
      for (const auto& [j, av] : r_[static_cast<std::size_t>(i)]) {
        for (long k = 0; k < b.rows_; ++k) {
          auto& out = c.r_[static_cast<std::size_t>(i * b.rows_ + k)];
          for (const auto& [l, bv] : b.r_[static_cast<std::size_t>(k)])
            out.push_back({j * b.cols_ + l, av * bv});
        }
      }
    }
    for (auto& row : c.r_)
      std::sort(row.begin(), row.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
    return c;
  }

  Mat transpose() const {
    Mat c(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
      for (const auto& [j, v] : r_[static_cast<std::size_t>(i)])
        c.r_[static_cast<std::size_t>(j)].push_back({i, v});
    return c;
  }
  Mat conj() const {
    Mat c = *this;
    for (auto& row : c.r_)
      for (auto& e : row) e.second = e.second.conj();
    return c;
  }
  Mat dagger() const { return transpose().conj(); }

  Cyc trace() const {
    Cyc t;
    for (long i = 0; i < std::min(rows_, cols_); ++i) t += get(i, i);
    return t;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (long i = 0; i < a.rows_; ++i) {
      const auto& ra = a.r_[static_cast<std::size_t>(i)];
      const auto& rb = b.r_[static_cast<std::size_t>(i)];
      if (ra.size() != rb.size()) return false;
      for (std::size_t k = 0; k < ra.size(); ++k)
        if (ra[k].first != rb[k].first || ra[k].second != rb[k].second) return false;
    }
    return true;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  // permutes both indices: out(perm_row[i], perm_col[j]) = in(i, j)
  Mat reindexed(const std::vector<long>& perm_row, const std::vector<long>& perm_col) const {
    Mat c(rows_, cols_);
    for (long i = 0; i < rows_; ++i)
      for (const auto& [j, v] : r_[static_cast<std::size_t>(i)])
        c.set(perm_row[static_cast<std::size_t>(i)], perm_col[static_cast<std::size_t>(j)], v);
    return c;
  }

 private:
  long rows_ = 0, cols_ = 0;
  std::vector<std::vector<std::pair<long, Cyc>>> r_;
};

namespace lin {

using Dense = std::vector<std::vector<Cyc>>;

inline Dense to_dense(const Mat& m) {
  Dense d(static_cast<std::size_t>(m.rows()),
          std::vector<Cyc>(static_cast<std::size_t>(m.cols())));
  for (long i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
  return d;
}

inline Mat from_dense(const Dense& d, long cols) {
  Mat m(static_cast<long>(d.size()), cols);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d[i].size(); ++j)
      if (!d[i][j].is_zero()) m.set(static_cast<long>(i), static_cast<long>(j), d[i][j]);
  return m;
}

// Row reduction; returns pivot columns. `aug` rides along with the row ops.
inline std::vector<long> rref(Dense& a, Dense* aug = nullptr) {
  std::vector<long> pivots;
  std::size_t rows = a.size();
  if (rows == 0) return pivots;
  std::size_t cols = a[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pr = rows;
    for (std::size_t r = row; r < rows; ++r)
      if (!a[r][col].is_zero()) { pr = r; break; }
    if (pr == rows) continue;
    std::swap(a[pr], a[row]);
    if (aug) std::swap((*aug)[pr], (*aug)[row]);
    Cyc inv = a[row][col].inverse();
    for (auto& v : a[row]) v *= inv;
    if (aug)
      for (auto& v : (*aug)[row]) v *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      Cyc f = a[r][col];
      for (std::size_t j = 0; j < cols; ++j)
        if (!a[row][j].is_zero()) a[r][j] -= f * a[row][j];
      if (aug)
        for (std::size_t j = 0; j < (*aug)[r].size(); ++j)
          if (!(*aug)[row][j].is_zero()) (*aug)[r][j] -= f * (*aug)[row][j];
    }
    pivots.push_back(static_cast<long>(col));
    ++row;
  }
  return pivots;
}

inline long rank(const Mat& m) {
  Dense d = to_dense(m);
  return static_cast<long>(rref(d).size());
}

// Solves A X = B exactly; returns nullopt when inconsistent. Free variables
// are set to zero (deterministic minimal-support solution).
inline std::optional<Mat> solve(const Mat& A, const Mat& B) {
  Dense a = to_dense(A), b = to_dense(B);
  std::vector<long> piv = rref(a, &b);
  // consistency: zero rows of a must have zero rows of b
  for (std::size_t r = piv.size(); r < a.size(); ++r)
    for (const auto& v : b[r])
      if (!v.is_zero()) return std::nullopt;
  Mat x(A.cols(), B.cols());
  for (std::size_t k = 0; k < piv.size(); ++k)
    for (long j = 0; j < B.cols(); ++j)
      if (!b[k][static_cast<std::size_t>(j)].is_zero())
        x.set(piv[k], j, b[k][static_cast<std::size_t>(j)]);
  return x;
}

inline std::optional<Mat> inverse(const Mat& A) {
  if (A.rows() != A.cols()) return std::nullopt;
  auto x = solve(A, Mat::identity(A.rows()));
  if (!x) return std::nullopt;
  if (static_cast<long>(rank(A)) != A.rows()) return std::nullopt;
  return x;
}

// Basis of the column space as matrix columns (deterministic: original
// columns at the rref pivot positions).
inline Mat column_basis(const Mat& m) {
  Dense d = to_dense(m);
  std::vector<long> piv = rref(d);
  Mat b(m.rows(), static_cast<long>(piv.size()));
  for (std::size_t k = 0; k < piv.size(); ++k)
    for (long i = 0; i < m.rows(); ++i) {
      Cyc v = m.get(i, piv[k]);
      if (!v.is_zero()) b.set(i, static_cast<long>(k), v);
    }
  return b;
}

// Basis of the right kernel as matrix columns.
inline Mat kernel_basis(const Mat& m) {
  Dense d = to_dense(m);
  std::vector<long> piv = rref(d);
  std::vector<bool> is_piv(static_cast<std::size_t>(m.cols()), false);
  for (long p : piv) is_piv[static_cast<std::size_t>(p)] = true;
  std::vector<long> free_cols;
  for (long j = 0; j < m.cols(); ++j)
    if (!is_piv[static_cast<std::size_t>(j)]) free_cols.push_back(j);
  Mat k(m.cols(), static_cast<long>(free_cols.size()));
  for (std::size_t fc = 0; fc < free_cols.size(); ++fc) {
    k.set(free_cols[fc], static_cast<long>(fc), Cyc::one());
    for (std::size_t pr = 0; pr < piv.size(); ++pr) {
      const Cyc& v = d[pr][static_cast<std::size_t>(free_cols[fc])];
      if (!v.is_zero()) k.set(piv[pr], static_cast<long>(fc), -v);
    }
  }
  return k;
}

// Characteristic polynomial coefficients c_0..c_n (monic, c_n = 1) via the
// Faddeev-LeVerrier recursion; exact, division only by integers.
inline std::vector<Cyc> char_poly(const Mat& A) {
  long n = A.rows();
  std::vector<Cyc> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = Cyc::one();
  Mat Mk(n, n);  // M_0 = 0
  for (long k = 1; k <= n; ++k) {
    Mk = A * Mk;
    Cyc ck = c[static_cast<std::size_t>(n - k + 1)];
    if (!ck.is_zero())
      for (long i = 0; i < n; ++i) Mk.add_to(i, i, ck);
    Cyc tr = (A * Mk).trace();
    c[static_cast<std::size_t>(n - k)] = tr * Cyc::from_rat(Rat(-1, k));
  }
  return c;
}

inline double approx_abs(const Cyc& v) { return std::abs(v.embed().z); }

// largest entry by embedded magnitude; returns (i, j, magnitude)
inline std::tuple<long, long, double> max_entry(const Mat& m) {
  long bi = -1, bj = -1;
  double best = -1.0;
  for (long i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) {
      double a = approx_abs(v);
      if (a > best) { best = a; bi = i; bj = j; }
    }
  return {bi, bj, best < 0 ? 0.0 : best};
}

}  // namespace lin
}  // namespace wqh
