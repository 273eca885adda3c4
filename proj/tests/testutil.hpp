#pragma once
// Shared helpers for the unit tests: seeded random scalars and tensors.

#include <wqh/blockalg.hpp>

#include <random>

namespace wqh::testutil {

inline Cyc random_cyc(std::mt19937& rng, bool allow_zero = true) {
  static const long orders[] = {1, 2, 3, 4, 6, 8};
  std::uniform_int_distribution<int> pick_order(0, 5);
  std::uniform_int_distribution<int> nterm(allow_zero ? 0 : 1, 2);
  std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
  long m = orders[pick_order(rng)];
  Cyc v = Cyc::zero();
  int terms = nterm(rng);
  for (int t = 0; t < terms; ++t) {
    std::uniform_int_distribution<long> expo(0, m - 1);
    v += Cyc::root(m, expo(rng)) * Cyc::from_rat(rat_frac(num(rng), den(rng)));
  }
  if (!allow_zero && v.is_zero()) v = Cyc::one();
  return v;
}

inline ShapePtr shape_abc() {
  auto s = std::make_shared<BlockShape>();
  s->labels = {"A", "B", "C"};
  s->dims = {2, 1, 3};
  return s;
}

inline AlgTensor random_tensor(const ShapePtr& shape, int legs, std::mt19937& rng,
                               int fill_percent = 40) {
  AlgTensor t(shape, legs);
  std::uniform_int_distribution<int> coin(0, 99);
  int nb = shape->nblocks();
  BlockTuple tup(static_cast<size_t>(legs), 0);
  for (;;) {
    long d = t.tuple_dim(tup);
    for (long i = 0; i < d; ++i)
      for (long j = 0; j < d; ++j)
        if (coin(rng) < fill_percent) t.add_to(tup, i, j, random_cyc(rng));
    int k = legs - 1;
    while (k >= 0 && ++tup[static_cast<size_t>(k)] == nb)
      tup[static_cast<size_t>(k--)] = 0;
    if (k < 0) break;
  }
  t.prune();
  return t;
}

// random invertible 1-leg element: unit diagonal plus strictly upper entries
inline AlgTensor random_invertible(const ShapePtr& shape, std::mt19937& rng) {
  AlgTensor t(shape, 1);
  for (int r = 0; r < shape->nblocks(); ++r) {
    long n = shape->dims[static_cast<size_t>(r)];
    for (long i = 0; i < n; ++i) {
      t.add_to({r}, i, i, random_cyc(rng, false));
      for (long j = i + 1; j < n; ++j) t.add_to({r}, i, j, random_cyc(rng));
    }
  }
  return t;
}

}  // namespace wqh::testutil
