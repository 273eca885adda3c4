#pragma once

// Multi-matrix block algebras A = ⊕_r M_{n_r} over the cyclotomic field and
// elements of A^{⊗k} for k ≤ 4, stored per block tuple. Absent tuples are
// exact zeros. Matrices are sparse internally; the external serialization is
// dense row-major per tuple.

#include "wqh/matrix.hpp"

#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace wqh {

struct BlockShape {
  std::vector<long> dims;
  std::vector<std::string> labels;

  int nblocks() const { return static_cast<int>(dims.size()); }
  int index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return static_cast<int>(i);
    throw std::invalid_argument("unknown block label: " + label);
  }
  bool operator==(const BlockShape& o) const { return dims == o.dims && labels == o.labels; }
};

using ShapePtr = std::shared_ptr<const BlockShape>;

using BlockTuple = std::vector<int>;

// mixed-radix index <-> digit conversions within one block tuple
inline void digits_of(const BlockShape& s, const BlockTuple& t, long idx,
                      std::vector<long>& out) {
  out.resize(t.size());
  for (std::size_t k = t.size(); k-- > 0;) {
    long d = s.dims[static_cast<std::size_t>(t[k])];
    out[k] = idx % d;
    idx /= d;
  }
}

inline long index_of_digits(const BlockShape& s, const BlockTuple& t,
                            const std::vector<long>& dig) {
  long idx = 0;
  for (std::size_t k = 0; k < t.size(); ++k)
    idx = idx * s.dims[static_cast<std::size_t>(t[k])] + dig[k];
  return idx;
}

// Optional Hermitian structure: positive diagonal form per block. The adjoint
// of a 1-leg element a is form^{-1} a^dagger form; plain conjugate transpose
// is the form = identity case.
using BlockForms = std::vector<std::vector<Cyc>>;

class AlgTensor {
 public:
  AlgTensor() = default;
  AlgTensor(ShapePtr shape, int legs) : shape_(std::move(shape)), legs_(legs) {
    if (legs < 1 || legs > 4) throw std::invalid_argument("legs must be 1..4");
  }

  static AlgTensor unit(const ShapePtr& shape, int legs) {
    AlgTensor t(shape, legs);
    int nb = shape->nblocks();
    BlockTuple tup(static_cast<std::size_t>(legs), 0);
    for (;;) {
      t.blocks_[tup] = Mat::identity(t.tuple_dim(tup));
      int k = legs - 1;
      while (k >= 0 && ++tup[static_cast<std::size_t>(k)] == nb) tup[static_cast<std::size_t>(k--)] = 0;
      if (k < 0) break;
    }
    return t;
  }

  const ShapePtr& shape() const { return shape_; }
  int legs() const { return legs_; }

  long tuple_dim(const BlockTuple& t) const {
    long d = 1;
    for (int r : t) d *= shape_->dims[static_cast<std::size_t>(r)];
    return d;
  }

  const std::map<BlockTuple, Mat>& blocks() const { return blocks_; }
  const Mat* find(const BlockTuple& t) const {
    auto it = blocks_.find(t);
    return it == blocks_.end() ? nullptr : &it->second;
  }
  Mat& block(const BlockTuple& t) {
    auto it = blocks_.find(t);
    if (it != blocks_.end()) return it->second;
    long d = tuple_dim(t);
    return blocks_.emplace(t, Mat(d, d)).first->second;
  }
  void set_block(const BlockTuple& t, Mat m) {
    if (m.is_zero()) blocks_.erase(t);
    else blocks_[t] = std::move(m);
  }
  void add_to(const BlockTuple& t, long i, long j, const Cyc& v) {
    if (!v.is_zero()) block(t).add_to(i, j, v);
  }
  Cyc get(const BlockTuple& t, long i, long j) const {
    const Mat* m = find(t);
    return m ? m->get(i, j) : Cyc::zero();
  }
  void prune() {
    for (auto it = blocks_.begin(); it != blocks_.end();)
      it = it->second.is_zero() ? blocks_.erase(it) : std::next(it);
  }
  bool is_zero() const {
    for (const auto& [t, m] : blocks_)
      if (!m.is_zero()) return false;
    return true;
  }

  friend AlgTensor operator+(const AlgTensor& a, const AlgTensor& b) {
    a.require_compatible(b);
    AlgTensor c = a;
    for (const auto& [t, m] : b.blocks_) {
      auto it = c.blocks_.find(t);
      if (it == c.blocks_.end()) c.blocks_[t] = m;
      else {
        it->second = it->second + m;
        if (it->second.is_zero()) c.blocks_.erase(it);
      }
    }
    return c;
  }
  friend AlgTensor operator-(const AlgTensor& a, const AlgTensor& b) { return a + (-b); }
  AlgTensor operator-() const {
    AlgTensor c = *this;
    for (auto& [t, m] : c.blocks_) m = -m;
    return c;
  }
  AlgTensor scaled(const Cyc& s) const {
    AlgTensor c(shape_, legs_);
    if (s.is_zero()) return c;
    for (const auto& [t, m] : blocks_) c.blocks_[t] = m.scaled(s);
    return c;
  }

  friend AlgTensor operator*(const AlgTensor& a, const AlgTensor& b) {
    a.require_compatible(b);
    AlgTensor c(a.shape_, a.legs_);
    for (const auto& [t, ma] : a.blocks_) {
      const Mat* mb = b.find(t);
      if (!mb) continue;
      Mat p = ma * *mb;
      if (!p.is_zero()) c.blocks_[t] = std::move(p);
    }
    return c;
  }

  friend bool operator==(const AlgTensor& a, const AlgTensor& b) {
    if (a.legs_ != b.legs_ || !(*a.shape_ == *b.shape_)) return false;
    auto ia = a.blocks_.begin();
    auto ib = b.blocks_.begin();
    while (ia != a.blocks_.end() || ib != b.blocks_.end()) {
      if (ia != a.blocks_.end() && ia->second.is_zero()) { ++ia; continue; }
      if (ib != b.blocks_.end() && ib->second.is_zero()) { ++ib; continue; }
      if (ia == a.blocks_.end() || ib == b.blocks_.end()) return false;
      if (ia->first != ib->first || ia->second != ib->second) return false;
      ++ia;
      ++ib;
    }
    return true;
  }
  friend bool operator!=(const AlgTensor& a, const AlgTensor& b) { return !(a == b); }

  AlgTensor outer(const AlgTensor& b) const {
    if (!(*shape_ == *b.shape_)) throw std::invalid_argument("outer: shape mismatch");
    if (legs_ + b.legs_ > 4) throw std::invalid_argument("outer: more than four legs");
    AlgTensor c(shape_, legs_ + b.legs_);
    for (const auto& [ta, ma] : blocks_) {
      for (const auto& [tb, mb] : b.blocks_) {
        BlockTuple t = ta;
        t.insert(t.end(), tb.begin(), tb.end());
        Mat p = ma.kron(mb);
        if (!p.is_zero()) c.blocks_[t] = std::move(p);
      }
    }
    return c;
  }

  // dest[k] is the slot (0-based) that receives the k-th tensor factor;
  // e.g. R with dest {1,0} gives R_21, Phi with dest {2,0,1} gives Phi_312.
  AlgTensor permuted(const std::vector<int>& dest) const {
    if (static_cast<int>(dest.size()) != legs_) throw std::invalid_argument("bad permutation size");
    AlgTensor c(shape_, legs_);
    for (const auto& [t, m] : blocks_) {
      BlockTuple nt(t.size());
      for (std::size_t k = 0; k < t.size(); ++k) nt[static_cast<std::size_t>(dest[k])] = t[k];
      // index remap via digit permutation
      std::vector<long> olddims(t.size()), newdims(t.size());
      for (std::size_t k = 0; k < t.size(); ++k) olddims[k] = shape_->dims[static_cast<std::size_t>(t[k])];
      for (std::size_t k = 0; k < nt.size(); ++k) newdims[k] = shape_->dims[static_cast<std::size_t>(nt[k])];
      long dim = tuple_dim(t);
      std::vector<long> remap(static_cast<std::size_t>(dim));
      std::vector<long> digits(t.size());
      for (long idx = 0; idx < dim; ++idx) {
        long rem = idx;
        for (std::size_t k = t.size(); k-- > 0;) {
          digits[k] = rem % olddims[k];
          rem /= olddims[k];
        }
        long nidx = 0;
        for (std::size_t k = 0; k < nt.size(); ++k) {
          // digit landing in new slot k came from old leg with dest == k
          long dsrc = 0;
          for (std::size_t s = 0; s < t.size(); ++s)
            if (dest[s] == static_cast<int>(k)) { dsrc = digits[s]; break; }
          nidx = nidx * newdims[k] + dsrc;
        }
        remap[static_cast<std::size_t>(idx)] = nidx;
      }
      Mat nm = m.reindexed(remap, remap);
      if (!nm.is_zero()) c.blocks_[nt] = std::move(nm);
    }
    return c;
  }

  // adjoint; with forms it is the form-twisted conjugate transpose
  AlgTensor adjoint(const BlockForms* forms = nullptr) const {
    AlgTensor c(shape_, legs_);
    for (const auto& [t, m] : blocks_) {
      Mat d = m.dagger();
      if (forms) {
        long dim = tuple_dim(t);
        std::vector<Cyc> lam(static_cast<std::size_t>(dim));
        std::vector<long> dims(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) dims[k] = shape_->dims[static_cast<std::size_t>(t[k])];
        for (long idx = 0; idx < dim; ++idx) {
          long rem = idx;
          Cyc v = Cyc::one();
          for (std::size_t k = t.size(); k-- > 0;) {
            long dg = rem % dims[k];
            rem /= dims[k];
            v *= (*forms)[static_cast<std::size_t>(t[k])][static_cast<std::size_t>(dg)];
          }
          lam[static_cast<std::size_t>(idx)] = v;
        }
        Mat out(d.rows(), d.cols());
        for (long i = 0; i < d.rows(); ++i) {
          Cyc li = lam[static_cast<std::size_t>(i)].inverse();
          for (const auto& [j, v] : d.row(i))
            out.set(i, j, li * v * lam[static_cast<std::size_t>(j)]);
        }
        d = std::move(out);
      }
      if (!d.is_zero()) c.blocks_[t] = std::move(d);
    }
    return c;
  }

  Cyc max_residual_witness(std::string* where) const {
    double best = -1.0;
    Cyc val;
    for (const auto& [t, m] : blocks_) {
      auto [i, j, mag] = lin::max_entry(m);
      if (mag > best) {
        best = mag;
        val = m.get(i, j);
        if (where) {
          std::string s = "(";
          for (std::size_t k = 0; k < t.size(); ++k)
            s += (k ? "," : "") + shape_->labels[static_cast<std::size_t>(t[k])];
          s += ") entry [" + std::to_string(i) + "," + std::to_string(j) + "]";
          *where = s;
        }
      }
    }
    return val;
  }

 private:
  void require_compatible(const AlgTensor& o) const {
    if (legs_ != o.legs_ || !(*shape_ == *o.shape_))
      throw std::invalid_argument("tensor shape/leg mismatch");
  }

  ShapePtr shape_;
  int legs_ = 0;
  std::map<BlockTuple, Mat> blocks_;
};

// ---------------------------------------------------------------------------
// partial inverse: tinv with tinv·t = p and q = t·tinv idempotent

struct PartialInverse {
  AlgTensor tinv;
  AlgTensor range_q;
};

// Per block tuple: B a column basis of im(p); t must be injective there.
// S is the deterministic left inverse of t·B from row reduction; then
// tinv = B·S and q = (t·B)·S.
inline PartialInverse partial_inverse(const AlgTensor& t, const AlgTensor& p) {
  if (t.legs() != p.legs() || !(*t.shape() == *p.shape()))
    throw std::invalid_argument("partial_inverse: shape mismatch");
  if (!(p * p == p)) throw std::invalid_argument("partial_inverse: p not idempotent");
  if (!(t * p == t)) throw std::invalid_argument("partial_inverse: t != t·p");
  AlgTensor tinv(t.shape(), t.legs());
  AlgTensor q(t.shape(), t.legs());
  for (const auto& [tup, pm] : p.blocks()) {
    if (pm.is_zero()) continue;
    Mat B = lin::column_basis(pm);
    const Mat* tm = t.find(tup);
    if (!tm) {
      if (B.cols() > 0) throw std::domain_error("not partially invertible");
      continue;
    }
    Mat TB = *tm * B;
    long r = B.cols();
    if (lin::rank(TB) != r) throw std::domain_error("not partially invertible");
    // row-reduce TB with an identity rider: M·TB = [I_r; 0], S = top rows of M
    lin::Dense a = lin::to_dense(TB);
    lin::Dense rider = lin::to_dense(Mat::identity(TB.rows()));
    lin::rref(a, &rider);
    Mat S(r, TB.rows());
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < TB.rows(); ++j)
        if (!rider[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero())
          S.set(i, j, rider[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    Mat x = B * S;
    Mat qq = TB * S;
    if (!x.is_zero()) tinv.set_block(tup, std::move(x));
    if (!qq.is_zero()) q.set_block(tup, std::move(qq));
  }
  // blocks where t lives but p is zero contribute nothing
  return {std::move(tinv), std::move(q)};
}

// ---------------------------------------------------------------------------
// coproduct table on matrix units

struct CoproductMap {
  struct Entry2 {
    int r1, r2;
    long row1, col1, row2, col2;
    Cyc v;
  };

  ShapePtr shape;
  // table[r][i * n_r + j] lists the expansion of Δ(e^r_{ij})
  std::vector<std::vector<std::vector<Entry2>>> table;

  void init(const ShapePtr& s) {
    shape = s;
    table.assign(static_cast<std::size_t>(s->nblocks()), {});
    for (int r = 0; r < s->nblocks(); ++r) {
      long n = s->dims[static_cast<std::size_t>(r)];
      table[static_cast<std::size_t>(r)].assign(static_cast<std::size_t>(n * n), {});
    }
  }

  void add_entry(int r, long i, long j, int r1, long a, long b, int r2, long c, long d, Cyc v) {
    if (v.is_zero()) return;
    long n = shape->dims[static_cast<std::size_t>(r)];
    table[static_cast<std::size_t>(r)][static_cast<std::size_t>(i * n + j)].push_back(
        {r1, r2, a, b, c, d, std::move(v)});
  }

  AlgTensor delta_unit(int r, long i, long j) const {
    AlgTensor out(shape, 2);
    long n = shape->dims[static_cast<std::size_t>(r)];
    for (const auto& e : table[static_cast<std::size_t>(r)][static_cast<std::size_t>(i * n + j)]) {
      long d2 = shape->dims[static_cast<std::size_t>(e.r2)];
      out.block({e.r1, e.r2}).add_to(e.row1 * d2 + e.row2, e.col1 * d2 + e.col2, e.v);
    }
    out.prune();
    return out;
  }

  AlgTensor of(const AlgTensor& a) const {
    if (a.legs() != 1) throw std::invalid_argument("coproduct of a 1-leg element only");
    AlgTensor out(shape, 2);
    for (const auto& [tup, m] : a.blocks()) {
      int r = tup[0];
      long n = shape->dims[static_cast<std::size_t>(r)];
      for (long i = 0; i < m.rows(); ++i)
        for (const auto& [j, v] : m.row(i))
          for (const auto& e : table[static_cast<std::size_t>(r)][static_cast<std::size_t>(i * n + j)]) {
            long d2 = shape->dims[static_cast<std::size_t>(e.r2)];
            out.block({e.r1, e.r2}).add_to(e.row1 * d2 + e.row2, e.col1 * d2 + e.col2, v * e.v);
          }
    }
    out.prune();
    return out;
  }

  AlgTensor delta_of_identity() const {
    AlgTensor id = AlgTensor::unit(shape, 1);
    return of(id);
  }
};

// applies Δ to one leg of a k-leg tensor, producing k+1 legs
inline AlgTensor coproduct_slot(const CoproductMap& delta, const AlgTensor& a, int slot) {
  if (a.legs() >= 4) throw std::invalid_argument("coproduct_slot: leg overflow");
  if (slot < 0 || slot >= a.legs()) throw std::invalid_argument("coproduct_slot: bad slot");
  const ShapePtr& sh = a.shape();
  AlgTensor out(sh, a.legs() + 1);
  std::vector<long> olddims(static_cast<std::size_t>(a.legs()));
  for (const auto& [tup, m] : a.blocks()) {
    for (std::size_t k = 0; k < tup.size(); ++k)
      olddims[k] = sh->dims[static_cast<std::size_t>(tup[k])];
    long nslot = olddims[static_cast<std::size_t>(slot)];
    for (long I = 0; I < m.rows(); ++I) {
      // decompose row index into digits
      std::vector<long> rdig(tup.size());
      long rem = I;
      for (std::size_t k = tup.size(); k-- > 0;) { rdig[k] = rem % olddims[k]; rem /= olddims[k]; }
      for (const auto& [J, v] : m.row(I)) {
        std::vector<long> cdig(tup.size());
        long crem = J;
        for (std::size_t k = tup.size(); k-- > 0;) { cdig[k] = crem % olddims[k]; crem /= olddims[k]; }
        long ur = rdig[static_cast<std::size_t>(slot)], uc = cdig[static_cast<std::size_t>(slot)];
        const auto& lst =
            delta.table[static_cast<std::size_t>(tup[static_cast<std::size_t>(slot)])]
                       [static_cast<std::size_t>(ur * nslot + uc)];
        for (const auto& e : lst) {
          BlockTuple nt;
          nt.reserve(tup.size() + 1);
          std::vector<long> nrd, ncd, nd;
          for (std::size_t k = 0; k < tup.size(); ++k) {
            if (static_cast<int>(k) == slot) {
              nt.push_back(e.r1);
              nt.push_back(e.r2);
              nrd.push_back(e.row1);
              nrd.push_back(e.row2);
              ncd.push_back(e.col1);
              ncd.push_back(e.col2);
              nd.push_back(sh->dims[static_cast<std::size_t>(e.r1)]);
              nd.push_back(sh->dims[static_cast<std::size_t>(e.r2)]);
            } else {
              nt.push_back(tup[k]);
              nrd.push_back(rdig[k]);
              ncd.push_back(cdig[k]);
              nd.push_back(olddims[k]);
            }
          }
          long NI = 0, NJ = 0;
          for (std::size_t k = 0; k < nd.size(); ++k) {
            NI = NI * nd[k] + nrd[k];
            NJ = NJ * nd[k] + ncd[k];
          }
          out.block(nt).add_to(NI, NJ, v * e.v);
        }
      }
    }
  }
  out.prune();
  return out;
}

// applies ε (projection onto the 1-dimensional counit block) to one leg
inline AlgTensor apply_counit(const AlgTensor& a, int slot, int counit_block) {
  if (a.legs() < 2) throw std::invalid_argument("apply_counit needs at least 2 legs");
  const ShapePtr& sh = a.shape();
  if (sh->dims[static_cast<std::size_t>(counit_block)] != 1)
    throw std::invalid_argument("counit block must be one-dimensional");
  AlgTensor out(sh, a.legs() - 1);
  for (const auto& [tup, m] : a.blocks()) {
    if (tup[static_cast<std::size_t>(slot)] != counit_block) continue;
    BlockTuple nt;
    for (std::size_t k = 0; k < tup.size(); ++k)
      if (static_cast<int>(k) != slot) nt.push_back(tup[k]);
    // the slot digit is always 0 in a 1-dim block, index map is the identity
    // after removing a radix-1 digit
    out.block(nt) = out.block(nt) + m;
  }
  out.prune();
  return out;
}

}  // namespace wqh
