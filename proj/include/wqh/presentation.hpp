#pragma once
// Presentation data model for discrete weak quasi-Hopf algebras, plus a
// line-based text format for moving presentations between tools.

#include <wqh/blockalg.hpp>
#include <wqh/report.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wqh {

// A linear map A -> A stored by its values on matrix units.
// Used for antipodes; nothing here assumes (anti)multiplicativity.
struct UnitMapTable {
  ShapePtr shape;
  struct Entry1 {
    int r;
    long row, col;
    Cyc v;
  };
  // table[r][i*n_r + j] lists the value on e^r_{ij}.
  std::vector<std::vector<std::vector<Entry1>>> table;

  void init(ShapePtr s) {
    shape = std::move(s);
    table.assign(shape->nblocks(), {});
    for (int r = 0; r < shape->nblocks(); ++r) {
      long n = shape->dims[r];
      table[r].assign(static_cast<size_t>(n * n), {});
    }
  }

  void add_entry(int r, long i, long j, int r1, long a, long b, const Cyc& v) {
    table[r][static_cast<size_t>(i * shape->dims[r] + j)].push_back(
        Entry1{r1, a, b, v});
  }

  // Identity map on every block.
  static UnitMapTable identity(ShapePtr s) {
    UnitMapTable m;
    m.init(std::move(s));
    for (int r = 0; r < m.shape->nblocks(); ++r)
      for (long i = 0; i < m.shape->dims[r]; ++i)
        for (long j = 0; j < m.shape->dims[r]; ++j)
          m.add_entry(r, i, j, r, i, j, Cyc::one());
    return m;
  }

  AlgTensor of_unit(int r, long i, long j) const {
    AlgTensor out(shape, 1);
    for (const Entry1& e : table[r][static_cast<size_t>(i * shape->dims[r] + j)])
      out.add_to({e.r}, e.row, e.col, e.v);
    out.prune();
    return out;
  }

  AlgTensor of(const AlgTensor& a) const {
    if (a.legs() != 1) throw std::invalid_argument("UnitMapTable::of: need 1 leg");
    AlgTensor out(shape, 1);
    for (const auto& [t, m] : a.blocks()) {
      int r = t[0];
      for (long i = 0; i < m.rows(); ++i)
        for (const auto& [j, v] : m.row(i))
          for (const Entry1& e :
               table[r][static_cast<size_t>(i * shape->dims[r] + j)])
            out.add_to({e.r}, e.row, e.col, e.v * v);
    }
    out.prune();
    return out;
  }

  // Apply the map to one tensor factor of a k-leg tensor.
  AlgTensor on_leg(const AlgTensor& a, int slot) const {
    if (slot < 0 || slot >= a.legs())
      throw std::invalid_argument("UnitMapTable::on_leg: bad slot");
    AlgTensor out(shape, a.legs());
    std::vector<long> rd(static_cast<size_t>(a.legs())),
        cd(static_cast<size_t>(a.legs()));
    for (const auto& [t, m] : a.blocks()) {
      for (long row = 0; row < m.rows(); ++row) {
        for (const auto& [col, v] : m.row(row)) {
          digits_of(*shape, t, row, rd);
          digits_of(*shape, t, col, cd);
          for (const Entry1& e :
               table[t[static_cast<size_t>(slot)]]
                    [static_cast<size_t>(rd[static_cast<size_t>(slot)] *
                                             shape->dims[t[static_cast<size_t>(slot)]] +
                                         cd[static_cast<size_t>(slot)])]) {
            BlockTuple t2 = t;
            t2[static_cast<size_t>(slot)] = e.r;
            std::vector<long> rd2 = rd, cd2 = cd;
            rd2[static_cast<size_t>(slot)] = e.row;
            cd2[static_cast<size_t>(slot)] = e.col;
            out.add_to(t2, index_of_digits(*shape, t2, rd2),
                       index_of_digits(*shape, t2, cd2), e.v * v);
          }
        }
      }
    }
    out.prune();
    return out;
  }

  // this ∘ inner, as a table.
  UnitMapTable compose(const UnitMapTable& inner) const {
    UnitMapTable out;
    out.init(shape);
    for (int r = 0; r < shape->nblocks(); ++r)
      for (long i = 0; i < shape->dims[r]; ++i)
        for (long j = 0; j < shape->dims[r]; ++j) {
          AlgTensor img = of(inner.of_unit(r, i, j));
          for (const auto& [t, m] : img.blocks())
            for (long a = 0; a < m.rows(); ++a)
              for (const auto& [b, v] : m.row(a))
                if (!v.is_zero()) out.add_entry(r, i, j, t[0], a, b, v);
        }
    return out;
  }

  // Inverse as a linear map, when it exists.  Fast path: the map sends each
  // block into a single block (the generic shape of an anti-automorphism of a
  // multi-matrix algebra); otherwise a global dense solve.
  std::optional<UnitMapTable> inverse() const;

  bool is_identity() const {
    for (int r = 0; r < shape->nblocks(); ++r)
      for (long i = 0; i < shape->dims[r]; ++i)
        for (long j = 0; j < shape->dims[r]; ++j) {
          AlgTensor img = of_unit(r, i, j);
          AlgTensor want(shape, 1);
          want.add_to({r}, i, j, Cyc::one());
          if (!(img == want)) return false;
        }
    return true;
  }
};

namespace detail_umt {

// Global basis enumeration of the underlying multi-matrix algebra.
inline long basis_dim(const BlockShape& s) {
  long d = 0;
  for (long n : s.dims) d += n * n;
  return d;
}

inline long basis_index(const BlockShape& s, int r, long i, long j) {
  long off = 0;
  for (int k = 0; k < r; ++k) off += s.dims[k] * s.dims[k];
  return off + i * s.dims[r] + j;
}

}  // namespace detail_umt

inline std::optional<UnitMapTable> UnitMapTable::inverse() const {
  const BlockShape& s = *shape;
  long D = detail_umt::basis_dim(s);
  // Matrix of the map in the global matrix-unit basis, column per input unit.
  lin::Dense M(static_cast<size_t>(D),
               std::vector<Cyc>(static_cast<size_t>(D), Cyc::zero()));
  for (int r = 0; r < s.nblocks(); ++r)
    for (long i = 0; i < s.dims[r]; ++i)
      for (long j = 0; j < s.dims[r]; ++j) {
        long col = detail_umt::basis_index(s, r, i, j);
        for (const Entry1& e :
             table[r][static_cast<size_t>(i * s.dims[r] + j)]) {
          long row = detail_umt::basis_index(s, e.r, e.row, e.col);
          M[static_cast<size_t>(row)][static_cast<size_t>(col)] =
              M[static_cast<size_t>(row)][static_cast<size_t>(col)] + e.v;
        }
      }
  Mat Mm = lin::from_dense(M, D);
  auto inv = lin::inverse(Mm);
  if (!inv) return std::nullopt;
  UnitMapTable out;
  out.init(shape);
  // Column `col` of the inverse expands the preimage of one matrix unit.
  for (int r = 0; r < s.nblocks(); ++r)
    for (long i = 0; i < s.dims[r]; ++i)
      for (long j = 0; j < s.dims[r]; ++j) {
        long col = detail_umt::basis_index(s, r, i, j);
        for (int r1 = 0; r1 < s.nblocks(); ++r1)
          for (long a = 0; a < s.dims[r1]; ++a)
            for (long b = 0; b < s.dims[r1]; ++b) {
              Cyc v = inv->get(detail_umt::basis_index(s, r1, a, b), col);
              if (!v.is_zero()) out.add_entry(r, i, j, r1, a, b, v);
            }
      }
  return out;
}

struct Antipode {
  UnitMapTable s;
  AlgTensor alpha, beta;  // 1-leg elements
};

struct Twist {
  AlgTensor t, tinv;  // 2-leg; tinv·t = Δ(I)
};

struct WqhPresentation {
  ShapePtr shape;
  int counit_block = -1;
  CoproductMap delta;
  AlgTensor phi, phi_inv;  // 3-leg
  std::optional<Antipode> antipode;
  bool star = false;
  // Diagonal entries of the invariant form per block; adjoints are taken
  // relative to this form when present.
  std::optional<BlockForms> forms;
  // Declared generating block for restricted positivity scans.
  std::optional<int> generator_block;

  AlgTensor unit(int legs = 1) const { return AlgTensor::unit(shape, legs); }

  AlgTensor matrix_unit(int r, long i, long j) const {
    AlgTensor e(shape, 1);
    e.add_to({r}, i, j, Cyc::one());
    return e;
  }

  Cyc counit_of(const AlgTensor& a) const {
    if (a.legs() != 1) throw std::invalid_argument("counit_of: need 1 leg");
    const Mat* m = a.find({counit_block});
    if (!m) return Cyc::zero();
    return m->get(0, 0);
  }

  AlgTensor delta_I() const { return delta.delta_of_identity(); }

  AlgTensor adjoint(const AlgTensor& a) const {
    return a.adjoint(forms ? &*forms : nullptr);
  }

  AlgTensor s_of(const AlgTensor& a) const {
    if (!antipode) throw std::logic_error("no antipode");
    return antipode->s.of(a);
  }

  AlgTensor s_on_leg(const AlgTensor& a, int slot) const {
    if (!antipode) throw std::logic_error("no antipode");
    return antipode->s.on_leg(a, slot);
  }
};

// Optional quasitriangular data carried next to a presentation.
struct QuasiTriData {
  AlgTensor r, rinv;                        // 2-leg
  std::optional<AlgTensor> ribbon_v;        // central, v = ribbon element
  std::optional<AlgTensor> ribbon_sqrt_w;   // central, w² = v
  std::optional<AlgTensor> omega;           // 2-leg involutive structure
  std::optional<AlgTensor> omega_inv;
};

struct PresentationFile {
  WqhPresentation w;
  std::optional<QuasiTriData> qt;
};

// ---------------------------------------------------------------------------
// Text format.
//
//   wqhpres 1
//   [SHAPE]
//   block <label> <dim>        (one per block, in presentation order)
//   counit <label>
//   star on                    (optional)
//   generator <label>          (optional)
//   [FORM]                     (optional; TAB-separated: label then entries)
//   [DELTA]
//   unit <label> <i> <j>
//   <l1>TAB<r1>TAB<c1>TAB<l2>TAB<r2>TAB<c2>TAB<scalar>
//   [PHI] / [PHIINV] / [ALPHA] / [BETA] / [R] / [RINV] / [V] / [W] /
//   [OMEGA] / [OMEGAINV]       (tensor sections)
//   tuple <label> ... <label>
//   dense row-major rows, cells TAB-separated
//   [ANTIPODE]
//   unit <label> <i> <j>
//   <l>TAB<r>TAB<c>TAB<scalar>
//
// Tensor blocks are serialized in lexicographic order of their label tuples;
// zero blocks are omitted.  '#' starts a comment line.
// ---------------------------------------------------------------------------

namespace presio {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

inline std::vector<std::string> split_tab(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

inline long to_long(const std::string& s) {
  size_t used = 0;
  long v = std::stol(s, &used);
  if (used != s.size()) throw std::runtime_error("bad integer: " + s);
  return v;
}

// Label-lexicographic comparison of block tuples.
struct TupleLabelLess {
  const BlockShape* s;
  bool operator()(const BlockTuple& a, const BlockTuple& b) const {
    for (size_t k = 0; k < a.size(); ++k) {
      const std::string& la = s->labels[static_cast<size_t>(a[k])];
      const std::string& lb = s->labels[static_cast<size_t>(b[k])];
      if (la != lb) return la < lb;
    }
    return false;
  }
};

inline void write_tensor_section(std::ostream& os, const std::string& name,
                                 const AlgTensor& t) {
  os << "[" << name << "]\n";
  const BlockShape& s = *t.shape();
  std::vector<BlockTuple> keys;
  for (const auto& [k, m] : t.blocks())
    if (!m.is_zero()) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), TupleLabelLess{&s});
  for (const BlockTuple& k : keys) {
    os << "tuple";
    for (int r : k) os << " " << s.labels[static_cast<size_t>(r)];
    os << "\n";
    const Mat& m = *t.find(k);
    long d = t.tuple_dim(k);
    for (long i = 0; i < d; ++i) {
      for (long j = 0; j < d; ++j) {
        if (j) os << "\t";
        os << m.get(i, j).str();
      }
      os << "\n";
    }
  }
}

inline void write_unit_map(std::ostream& os, const BlockShape& s,
                           const UnitMapTable& t) {
  for (int r = 0; r < s.nblocks(); ++r)
    for (long i = 0; i < s.dims[r]; ++i)
      for (long j = 0; j < s.dims[r]; ++j) {
        os << "unit " << s.labels[static_cast<size_t>(r)] << " " << i << " "
           << j << "\n";
        auto entries = t.table[r][static_cast<size_t>(i * s.dims[r] + j)];
        std::sort(entries.begin(), entries.end(),
                  [&](const UnitMapTable::Entry1& a,
                      const UnitMapTable::Entry1& b) {
                    const std::string &la = s.labels[static_cast<size_t>(a.r)],
                                      &lb = s.labels[static_cast<size_t>(b.r)];
                    return std::tie(la, a.row, a.col) <
                           std::tie(lb, b.row, b.col);
                  });
        for (const auto& e : entries)
          os << s.labels[static_cast<size_t>(e.r)] << "\t" << e.row << "\t"
             << e.col << "\t" << e.v.str() << "\n";
      }
}

}  // namespace presio

inline void save_presentation(std::ostream& os, const PresentationFile& pf) {
  const WqhPresentation& w = pf.w;
  const BlockShape& s = *w.shape;
  os << "wqhpres 1\n[SHAPE]\n";
  for (int r = 0; r < s.nblocks(); ++r)
    os << "block " << s.labels[static_cast<size_t>(r)] << " " << s.dims[r]
       << "\n";
  os << "counit " << s.labels[static_cast<size_t>(w.counit_block)] << "\n";
  if (w.star) os << "star on\n";
  if (w.generator_block)
    os << "generator " << s.labels[static_cast<size_t>(*w.generator_block)]
       << "\n";
  if (w.forms) {
    os << "[FORM]\n";
    for (int r = 0; r < s.nblocks(); ++r) {
      os << s.labels[static_cast<size_t>(r)];
      for (const Cyc& v : (*w.forms)[static_cast<size_t>(r)])
        os << "\t" << v.str();
      os << "\n";
    }
  }
  os << "[DELTA]\n";
  for (int r = 0; r < s.nblocks(); ++r)
    for (long i = 0; i < s.dims[r]; ++i)
      for (long j = 0; j < s.dims[r]; ++j) {
        os << "unit " << s.labels[static_cast<size_t>(r)] << " " << i << " "
           << j << "\n";
        auto entries =
            w.delta.table[r][static_cast<size_t>(i * s.dims[r] + j)];
        std::sort(entries.begin(), entries.end(),
                  [&](const CoproductMap::Entry2& a,
                      const CoproductMap::Entry2& b) {
                    const std::string &l1a = s.labels[static_cast<size_t>(a.r1)],
                                      &l1b = s.labels[static_cast<size_t>(b.r1)];
                    const std::string &l2a = s.labels[static_cast<size_t>(a.r2)],
                                      &l2b = s.labels[static_cast<size_t>(b.r2)];
                    return std::tie(l1a, a.row1, a.col1, l2a, a.row2, a.col2) <
                           std::tie(l1b, b.row1, b.col1, l2b, b.row2, b.col2);
                  });
        for (const auto& e : entries)
          os << s.labels[static_cast<size_t>(e.r1)] << "\t" << e.row1 << "\t"
             << e.col1 << "\t" << s.labels[static_cast<size_t>(e.r2)] << "\t"
             << e.row2 << "\t" << e.col2 << "\t" << e.v.str() << "\n";
      }
  presio::write_tensor_section(os, "PHI", w.phi);
  presio::write_tensor_section(os, "PHIINV", w.phi_inv);
  if (w.antipode) {
    os << "[ANTIPODE]\n";
    presio::write_unit_map(os, s, w.antipode->s);
    presio::write_tensor_section(os, "ALPHA", w.antipode->alpha);
    presio::write_tensor_section(os, "BETA", w.antipode->beta);
  }
  if (pf.qt) {
    presio::write_tensor_section(os, "R", pf.qt->r);
    presio::write_tensor_section(os, "RINV", pf.qt->rinv);
    if (pf.qt->ribbon_v) presio::write_tensor_section(os, "V", *pf.qt->ribbon_v);
    if (pf.qt->ribbon_sqrt_w)
      presio::write_tensor_section(os, "W", *pf.qt->ribbon_sqrt_w);
    if (pf.qt->omega) presio::write_tensor_section(os, "OMEGA", *pf.qt->omega);
    if (pf.qt->omega_inv)
      presio::write_tensor_section(os, "OMEGAINV", *pf.qt->omega_inv);
  }
}

inline void save_presentation(const std::string& path,
                              const PresentationFile& pf) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  save_presentation(os, pf);
}

inline PresentationFile load_presentation(std::istream& is) {
  using presio::split_tab;
  using presio::split_ws;
  using presio::to_long;

  std::vector<std::string> lines;
  {
    std::string line;
    while (std::getline(is, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }
  size_t pos = 0;
  auto peek = [&]() -> const std::string* {
    while (pos < lines.size()) {
      const std::string& l = lines[pos];
      bool blank = l.find_first_not_of(" \t") == std::string::npos;
      if (blank || l[0] == '#') {
        ++pos;
        continue;
      }
      return &l;
    }
    return nullptr;
  };
  auto next = [&]() -> const std::string* {
    const std::string* l = peek();
    if (l) ++pos;
    return l;
  };

  const std::string* l = next();
  if (!l || split_ws(*l) != std::vector<std::string>{"wqhpres", "1"})
    throw std::runtime_error("presentation file: missing 'wqhpres 1' header");

  // Shape section first.
  l = next();
  if (!l || *l != "[SHAPE]")
    throw std::runtime_error("presentation file: expected [SHAPE]");
  auto shape = std::make_shared<BlockShape>();
  std::string counit_label, generator_label;
  bool star = false;
  while ((l = peek()) && (*l)[0] != '[') {
    ++pos;
    auto toks = split_ws(*l);
    if (toks.size() == 3 && toks[0] == "block") {
      shape->labels.push_back(toks[1]);
      shape->dims.push_back(to_long(toks[2]));
    } else if (toks.size() == 2 && toks[0] == "counit") {
      counit_label = toks[1];
    } else if (toks.size() == 2 && toks[0] == "star") {
      star = (toks[1] == "on");
    } else if (toks.size() == 2 && toks[0] == "generator") {
      generator_label = toks[1];
    } else {
      throw std::runtime_error("presentation file: bad shape line: " + *l);
    }
  }
  if (shape->nblocks() == 0)
    throw std::runtime_error("presentation file: empty shape");
  if (counit_label.empty())
    throw std::runtime_error("presentation file: no counit block");

  WqhPresentation w;
  w.shape = shape;
  w.star = star;
  w.counit_block = shape->index_of(counit_label);
  if (shape->dims[w.counit_block] != 1)
    throw std::runtime_error("presentation file: counit block must be 1-dim");
  if (!generator_label.empty()) w.generator_block = shape->index_of(generator_label);
  w.delta.init(shape);
  w.phi = AlgTensor(shape, 3);
  w.phi_inv = AlgTensor(shape, 3);

  auto block_of = [&](const std::string& lab) { return shape->index_of(lab); };

  std::optional<UnitMapTable> s_table;
  std::optional<AlgTensor> alpha, beta, qr, qrinv, qv, qw, qomega, qomega_inv;

  auto read_tensor = [&](int legs) {
    AlgTensor t(shape, legs);
    const std::string* ln;
    while ((ln = peek()) && (*ln)[0] != '[') {
      auto toks = split_ws(*ln);
      if (toks.empty() || toks[0] != "tuple")
        throw std::runtime_error("presentation file: expected tuple line: " +
                                    *ln);
      ++pos;
      if (static_cast<int>(toks.size()) != legs + 1)
        throw std::runtime_error("presentation file: tuple arity mismatch");
      BlockTuple key;
      for (int k = 1; k <= legs; ++k) key.push_back(block_of(toks[static_cast<size_t>(k)]));
      long d = t.tuple_dim(key);
      Mat m(d, d);
      for (long i = 0; i < d; ++i) {
        const std::string* row = next();
        if (!row)
          throw std::runtime_error("presentation file: truncated tensor block");
        auto cells = split_tab(*row);
        if (static_cast<long>(cells.size()) != d)
          throw std::runtime_error("presentation file: tensor row width");
        for (long j = 0; j < d; ++j) {
          Cyc v = Cyc::parse(cells[static_cast<size_t>(j)]);
          if (!v.is_zero()) m.set(i, j, v);
        }
      }
      t.set_block(key, m);
    }
    t.prune();
    return t;
  };

  while ((l = next())) {
    const std::string sec = *l;
    if (sec == "[FORM]") {
      BlockForms f(static_cast<size_t>(shape->nblocks()));
      const std::string* ln;
      while ((ln = peek()) && (*ln)[0] != '[') {
        ++pos;
        auto cells = split_tab(*ln);
        int r = block_of(cells[0]);
        if (static_cast<long>(cells.size()) != shape->dims[r] + 1)
          throw std::runtime_error("presentation file: form row width");
        for (long i = 0; i < shape->dims[r]; ++i)
          f[static_cast<size_t>(r)].push_back(
              Cyc::parse(cells[static_cast<size_t>(i + 1)]));
      }
      w.forms = std::move(f);
    } else if (sec == "[DELTA]" || sec == "[ANTIPODE]") {
      bool is_delta = (sec == "[DELTA]");
      if (!is_delta) {
        s_table.emplace();
        s_table->init(shape);
      }
      int cur_r = -1;
      long cur_i = 0, cur_j = 0;
      const std::string* ln;
      while ((ln = peek()) && (*ln)[0] != '[') {
        ++pos;
        if (ln->rfind("unit ", 0) == 0) {
          auto toks = split_ws(*ln);
          if (toks.size() != 4)
            throw std::runtime_error("presentation file: bad unit line");
          cur_r = block_of(toks[1]);
          cur_i = to_long(toks[2]);
          cur_j = to_long(toks[3]);
          continue;
        }
        if (cur_r < 0)
          throw std::runtime_error("presentation file: entry before unit line");
        auto cells = split_tab(*ln);
        if (is_delta) {
          if (cells.size() != 7)
            throw std::runtime_error("presentation file: delta entry width");
          w.delta.add_entry(cur_r, cur_i, cur_j, block_of(cells[0]),
                            to_long(cells[1]), to_long(cells[2]),
                            block_of(cells[3]), to_long(cells[4]),
                            to_long(cells[5]), Cyc::parse(cells[6]));
        } else {
          if (cells.size() != 4)
            throw std::runtime_error("presentation file: antipode entry width");
          s_table->add_entry(cur_r, cur_i, cur_j, block_of(cells[0]),
                             to_long(cells[1]), to_long(cells[2]),
                             Cyc::parse(cells[3]));
        }
      }
    } else if (sec == "[PHI]") {
      w.phi = read_tensor(3);
    } else if (sec == "[PHIINV]") {
      w.phi_inv = read_tensor(3);
    } else if (sec == "[ALPHA]") {
      alpha = read_tensor(1);
    } else if (sec == "[BETA]") {
      beta = read_tensor(1);
    } else if (sec == "[R]") {
      qr = read_tensor(2);
    } else if (sec == "[RINV]") {
      qrinv = read_tensor(2);
    } else if (sec == "[V]") {
      qv = read_tensor(1);
    } else if (sec == "[W]") {
      qw = read_tensor(1);
    } else if (sec == "[OMEGA]") {
      qomega = read_tensor(2);
    } else if (sec == "[OMEGAINV]") {
      qomega_inv = read_tensor(2);
    } else {
      throw std::runtime_error("presentation file: unknown section " + sec);
    }
  }

  if (s_table) {
    if (!alpha || !beta)
      throw std::runtime_error(
          "presentation file: antipode requires ALPHA and BETA");
    w.antipode = Antipode{std::move(*s_table), std::move(*alpha),
                          std::move(*beta)};
  }

  PresentationFile pf;
  pf.w = std::move(w);
  if (qr) {
    if (!qrinv)
      throw std::runtime_error("presentation file: R requires RINV");
    QuasiTriData qt;
    qt.r = std::move(*qr);
    qt.rinv = std::move(*qrinv);
    qt.ribbon_v = std::move(qv);
    qt.ribbon_sqrt_w = std::move(qw);
    qt.omega = std::move(qomega);
    qt.omega_inv = std::move(qomega_inv);
    pf.qt = std::move(qt);
  }
  return pf;
}

inline PresentationFile load_presentation(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return load_presentation(is);
}

}  // namespace wqh
