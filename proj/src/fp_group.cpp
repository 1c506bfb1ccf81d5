#include "nil2/fp_group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace nil2 {

namespace {

u64 pow_u64_checked(u32 p, u32 exp) {
  u64 r = 1;
  for (u32 i = 0; i < exp; ++i) {
    if (r > UINT64_MAX / p) throw cap_exceeded("order does not fit in 64 bits");
    r *= p;
  }
  return r;
}

bool fits_cap(u32 p, u32 exp, u64 cap) {
  u64 r = 1;
  for (u32 i = 0; i < exp; ++i) {
    if (r > cap / p) return false;
    r *= p;
  }
  return r <= cap;
}

// iterate canonical residues of L: entries at pivot columns run below the
// pivot, all other coordinates run over the full ring
template <class CB>
bool residue_boxes(const zmod::Lattice& L, const CB& cb) {
  std::vector<u32> limit(L.dim, L.q);
  for (std::size_t i = 0; i < L.rows.size(); ++i) limit[L.pivcol[i]] = L.pivval[i];
  Vec v(L.dim, 0);
  while (true) {
    if (!cb(v)) return false;
    std::size_t i = 0;
    for (; i < L.dim; ++i) {
      if (++v[i] < limit[i]) break;
      v[i] = 0;
    }
    if (i == L.dim) return true;
  }
}

}  // namespace

FreeElement product_by_exponents(const FreeCtx& f,
                                 const std::vector<FreeElement>& gens,
                                 const Vec& m) {
  FreeElement r = f.identity();
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (m[i]) r = f.mul(r, f.pow(gens[i], m[i]));
  return r;
}

Span make_span(const FreeCtx& f, const std::vector<FreeElement>& gens,
               const std::vector<Vec>& extra_central) {
  const Variety& v = f.v;
  std::vector<Vec> arows;
  arows.reserve(gens.size());
  for (const auto& g : gens) arows.push_back(g.a);
  zmod::Tracked t = zmod::howell_tracked(v.p, v.q_gen, f.k, arows);

  Span s;
  s.abelian = t.lat;
  for (std::size_t i = 0; i < t.lat.rows.size(); ++i) {
    FreeElement w = product_by_exponents(f, gens, t.trans[i]);
    if (w.a != t.lat.rows[i])
      throw check_failed("span: transform does not reproduce basis row");
    s.lifts.push_back(w.c);
  }

  std::vector<Vec> cgens = extra_central;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      cgens.push_back(f.bracket_c(gens[i].a, gens[j].a));
  for (const auto& m : t.row_kernel.rows) {
    FreeElement w = product_by_exponents(f, gens, m);
    bool azero = std::all_of(w.a.begin(), w.a.end(), [](u32 x) { return x == 0; });
    if (!azero) throw check_failed("span: kernel combination has nonzero abelian part");
    cgens.push_back(w.c);
  }
  s.central = zmod::howell(v.p, v.q_comm, f.pairs(), cgens);
  return s;
}

FreeElement span_canon(const FreeCtx& f, const Span& s, const FreeElement& g) {
  Vec coeffs;
  Vec abar = s.abelian.residue(g.a, &coeffs);
  FreeElement pcorr = f.identity();
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i])
      pcorr = f.mul(pcorr, f.pow(FreeElement{s.abelian.rows[i], s.lifts[i]},
                                 coeffs[i]));
  FreeElement e = f.mul(g, f.inv(pcorr));
  if (e.a != abar) throw check_failed("span_canon: residue mismatch");
  return {abar, s.central.residue(e.c)};
}

bool span_contains(const FreeCtx& f, const Span& s, const FreeElement& g) {
  return f.is_identity(span_canon(f, s, g));
}

u32 span_order_exp(const Span& s) {
  return s.abelian.order_exp() + s.central.order_exp();
}

FreeElement span_lift(const FreeCtx& f, const Span& s, const Vec& a) {
  Vec coeffs;
  Vec abar = s.abelian.residue(a, &coeffs);
  if (!std::all_of(abar.begin(), abar.end(), [](u32 x) { return x == 0; }))
    throw std::invalid_argument("span_lift: vector not in abelian lattice");
  FreeElement p = f.identity();
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i])
      p = f.mul(p, f.pow(FreeElement{s.abelian.rows[i], s.lifts[i]}, coeffs[i]));
  return p;
}

bool span_equal(const FreeCtx& f, const Span& a, const Span& b) {
  if (!(a.abelian == b.abelian) || !(a.central == b.central)) return false;
  for (std::size_t i = 0; i < a.lifts.size(); ++i) {
    Vec d(a.lifts[i].size());
    for (std::size_t t = 0; t < d.size(); ++t)
      d[t] = (a.lifts[i][t] + f.v.q_comm - b.lifts[i][t]) % f.v.q_comm;
    if (!a.central.member(d)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// FpGroup

GroupPtr FpGroup::build(Presentation pres) {
  auto g = std::make_shared<FpGroup>();
  g->pres = pres;
  g->f = FreeCtx(pres.v, pres.rank());
  std::vector<Elt> gens;
  for (std::size_t i = 0; i < g->f.k; ++i) gens.push_back(g->f.gen(i));
  for (const auto& w : pres.relators)
    g->relator_elts.push_back(eval_word(g->f, w, gens));

  std::vector<Vec> extra;
  for (const auto& rho : g->relator_elts)
    for (std::size_t s = 0; s < g->f.k; ++s)
      extra.push_back(g->f.bracket_c(rho.a, g->f.gen(s).a));
  g->nspan = make_span(g->f, g->relator_elts, extra);
  g->order_exp = g->f.order_exp() - span_order_exp(g->nspan);
  return g;
}

u32 FpGroup::elt_order_exp(const Elt& x) const {
  Elt y = x;
  u32 e = 0;
  while (!is_identity(y)) {
    y = pow(y, f.v.p);
    ++e;
    if (e > f.v.n + 2) throw check_failed("element order exceeds variety exponent");
  }
  return e;
}

Elt FpGroup::eval(const Word& w) const {
  std::vector<Elt> env;
  for (std::size_t i = 0; i < f.k; ++i) env.push_back(gen(i));
  return eval_word(*this, w, env);
}

Elt FpGroup::eval(const Word& w, const std::vector<Elt>& env) const {
  return eval_word(*this, w, env);
}

u64 FpGroup::order_u64() const { return pow_u64_checked(f.v.p, order_exp); }

std::size_t EltHash::operator()(const Elt& e) const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&](u32 x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  for (u32 x : e.a) mix(x);
  mix(0xffffffffu);
  for (u32 x : e.c) mix(x);
  return h;
}

// ---------------------------------------------------------------------------
// Subgroups

bool Subgroup::contains(const Elt& g) const {
  return span_contains(G->f, span, g);
}

Subgroup subgroup(GroupPtr G, std::vector<Elt> gens) {
  Subgroup h;
  h.G = G;
  for (auto& g : gens) g = G->reduce(g);
  h.gens = gens;
  std::vector<FreeElement> sgens = gens;
  const Span& n = G->nspan;
  for (std::size_t i = 0; i < n.abelian.rows.size(); ++i)
    sgens.push_back(FreeElement{n.abelian.rows[i], n.lifts[i]});
  h.span = make_span(G->f, sgens, n.central.rows);
  h.order_exp = span_order_exp(h.span) - span_order_exp(n);
  return h;
}

Subgroup trivial_subgroup(GroupPtr G) { return subgroup(G, {}); }

Subgroup full_subgroup(GroupPtr G) {
  std::vector<Elt> gens;
  for (std::size_t i = 0; i < G->rank(); ++i) gens.push_back(G->gen(i));
  return subgroup(G, gens);
}

Subgroup derived_subgroup(GroupPtr G) {
  std::vector<Elt> gens;
  for (std::size_t t = 0; t < G->f.pairs(); ++t) {
    Vec c(G->f.pairs(), 0);
    c[t] = 1 % G->f.v.q_comm;
    gens.push_back(G->reduce(FreeElement{Vec(G->rank(), 0), c}));
  }
  return subgroup(G, gens);
}

Subgroup center(GroupPtr G) {
  const FreeCtx& f = G->f;
  const Variety& v = f.v;
  std::size_t k = f.k, pr = f.pairs();
  // a is central iff the bracket row L(a, e_s) lies in W for every generator;
  // the map a -> (L(a, e_0), ..., L(a, e_{k-1})) is linear over Z/q_comm
  zmod::Mat m(v.q_comm, k, k * pr);
  for (std::size_t r = 0; r < k; ++r) {
    Vec er(k, 0);
    er[r] = 1;
    for (std::size_t s = 0; s < k; ++s) {
      Vec es(k, 0);
      es[s] = 1;
      Vec br = f.bracket_c(er, es);
      for (std::size_t t = 0; t < pr; ++t) m.at(r, s * pr + t) = br[t];
    }
  }
  std::vector<Vec> wrows;
  for (std::size_t s = 0; s < k; ++s)
    for (const auto& w : G->nspan.central.rows) {
      Vec row(k * pr, 0);
      for (std::size_t t = 0; t < pr; ++t) row[s * pr + t] = w[t];
      wrows.push_back(std::move(row));
    }
  zmod::Lattice target = zmod::howell(v.p, v.q_comm, k * pr, wrows);
  zmod::Lattice za = zmod::kernel(v.p, v.q_gen, m, target);

  std::vector<Elt> gens;
  for (const auto& row : za.rows)
    gens.push_back(G->reduce(FreeElement{row, Vec(pr, 0)}));
  for (std::size_t t = 0; t < pr; ++t) {
    Vec c(pr, 0);
    c[t] = 1 % v.q_comm;
    gens.push_back(G->reduce(FreeElement{Vec(k, 0), c}));
  }
  return subgroup(G, gens);
}

Subgroup power_subgroup(GroupPtr G, u32 q) {
  const Variety& v = G->f.v;
  u32 t = q;
  while (t > 1 && t % v.p == 0) t /= v.p;
  if (t != 1) throw std::invalid_argument("power_subgroup: q must be a power of p");
  std::vector<Elt> gens;
  for (std::size_t s = 0; s < G->rank(); ++s)
    gens.push_back(G->reduce(G->f.pow(G->f.gen(s), q)));
  Subgroup der = derived_subgroup(G);
  gens.insert(gens.end(), der.gens.begin(), der.gens.end());
  return subgroup(G, gens);
}

bool sub_subset(const Subgroup& a, const Subgroup& b) {
  for (const auto& g : a.gens)
    if (!b.contains(g)) return false;
  return true;
}

bool sub_equal(const Subgroup& a, const Subgroup& b) {
  return a.order_exp == b.order_exp && sub_subset(a, b) && sub_subset(b, a);
}

std::vector<Elt> enumerate_group(const FpGroup& G, u64 cap) {
  if (!fits_cap(G.f.v.p, G.order_exp, cap))
    throw cap_exceeded("group too large to enumerate");
  std::vector<Elt> out;
  out.reserve(G.order_u64());
  residue_boxes(G.nspan.abelian, [&](const Vec& a) {
    residue_boxes(G.nspan.central, [&](const Vec& c) {
      out.push_back(Elt{a, c});
      return true;
    });
    return true;
  });
  return out;
}

std::vector<Elt> enumerate_subgroup(const Subgroup& H, u64 cap) {
  const FpGroup& G = *H.G;
  const FreeCtx& f = G.f;
  if (!fits_cap(f.v.p, H.order_exp, cap))
    throw cap_exceeded("subgroup too large to enumerate");

  // BFS over the abelian quotient: walk residues mod the relator lattice by
  // adding the subgroup's basis rows, carrying a witness element (with its
  // central lift) along each edge.  Visits |H^{ab-image}| states only.
  std::map<Vec, Elt> classes;
  {
    Elt id = G.identity();
    classes.emplace(id.a, id);
    std::vector<Vec> frontier{id.a};
    while (!frontier.empty()) {
      std::vector<Vec> next;
      for (const auto& abar : frontier) {
        const Elt& witness = classes.at(abar);
        for (std::size_t i = 0; i < H.span.abelian.rows.size(); ++i) {
          FreeElement step{H.span.abelian.rows[i], H.span.lifts[i]};
          Elt moved = G.reduce(f.mul(witness, step));
          if (classes.emplace(moved.a, moved).second) next.push_back(moved.a);
        }
      }
      frontier = std::move(next);
    }
  }

  // same walk for the central fibre over each class
  std::vector<Elt> out;
  for (const auto& [abar, e] : classes) {
    std::set<Vec> seen{e.c};
    std::vector<Vec> frontier{e.c};
    out.push_back(e);
    while (!frontier.empty()) {
      std::vector<Vec> next;
      for (const auto& cbar : frontier) {
        for (const auto& w : H.span.central.rows) {
          Vec cc(f.pairs());
          for (std::size_t t = 0; t < cc.size(); ++t)
            cc[t] = static_cast<u32>((cbar[t] + w[t]) % f.v.q_comm);
          Vec res = G.nspan.central.residue(cc);
          if (seen.insert(res).second) {
            out.push_back(Elt{abar, res});
            next.push_back(res);
          }
        }
      }
      frontier = std::move(next);
    }
  }
  return out;
}

Subgroup omega_subgroup(const Subgroup& inside, u32 i, u64 cap) {
  const FpGroup& G = *inside.G;
  u64 q = 1;
  for (u32 t = 0; t < i; ++t) q *= G.f.v.p;
  std::vector<Elt> torsion;
  for (const auto& g : enumerate_subgroup(inside, cap))
    if (G.is_identity(G.pow(g, static_cast<int64_t>(q)))) torsion.push_back(g);
  return subgroup(inside.G, torsion);
}

// ---------------------------------------------------------------------------
// Abelianization via integer Smith normal form (small matrices)

namespace {

struct Snf {
  std::vector<int64_t> diag;
  std::vector<std::vector<int64_t>> q;  // column transform, cols x cols
};

Snf snf(std::vector<std::vector<int64_t>> m, std::size_t rows, std::size_t cols) {
  Snf out;
  out.q.assign(cols, std::vector<int64_t>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) out.q[i][i] = 1;

  auto swap_rows = [&](std::size_t a, std::size_t b) { std::swap(m[a], m[b]); };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < rows; ++r) std::swap(m[r][a], m[r][b]);
    for (std::size_t r = 0; r < cols; ++r) std::swap(out.q[r][a], out.q[r][b]);
  };
  auto addmul_row = [&](std::size_t dst, std::size_t src, int64_t f) {
    for (std::size_t c = 0; c < cols; ++c) m[dst][c] += f * m[src][c];
  };
  auto addmul_col = [&](std::size_t dst, std::size_t src, int64_t f) {
    for (std::size_t r = 0; r < rows; ++r) m[r][dst] += f * m[r][src];
    for (std::size_t r = 0; r < cols; ++r) out.q[r][dst] += f * out.q[r][src];
  };

  std::size_t t = 0;
  std::size_t lim = std::min(rows, cols);
  for (; t < lim; ++t) {
    while (true) {
      std::size_t pi = rows, pj = cols;
      int64_t best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (best == 0 || std::abs(m[i][j]) < best)) {
            best = std::abs(m[i][j]);
            pi = i;
            pj = j;
          }
      if (best == 0) goto done;
      if (pi != t) swap_rows(pi, t);
      if (pj != t) swap_cols(pj, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (m[i][t] != 0) {
          int64_t f = m[i][t] / m[t][t];
          addmul_row(i, t, -f);
          if (m[i][t] != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (m[t][j] != 0) {
          int64_t f = m[t][j] / m[t][t];
          addmul_col(j, t, -f);
          if (m[t][j] != 0) clean = false;
        }
      if (!clean) continue;
      // ensure the pivot divides every remaining entry
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols && divides; ++j)
          if (m[i][j] % m[t][t] != 0) {
            addmul_row(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
  }
done:
  out.diag.assign(cols, 0);
  for (std::size_t i = 0; i < lim; ++i)
    out.diag[i] = m[i][i] < 0 ? -m[i][i] : m[i][i];
  return out;
}

}  // namespace

u32 CyclicDecomp::order_exp() const {
  u32 s = 0;
  for (u32 e : exps) s += e;
  return s;
}

AbelianizationResult abelianization(GroupPtr G) {
  const Variety& v = G->f.v;
  std::size_t k = G->rank();
  std::vector<std::vector<int64_t>> m;
  for (const auto& row : G->nspan.abelian.rows)
    m.emplace_back(row.begin(), row.end());
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<int64_t> r(k, 0);
    r[i] = v.q_gen;
    m.push_back(std::move(r));
  }
  Snf s = snf(m, m.size(), k);

  AbelianizationResult out;
  out.decomp.p = v.p;
  for (int64_t d : s.diag)
    if (d > 1)
      out.decomp.exps.push_back(
          zmod::valuation(v.p, v.q_gen, static_cast<u32>(d % v.q_gen == 0 ? 0 : d)));
  std::sort(out.decomp.exps.rbegin(), out.decomp.exps.rend());

  // target group: one generator per diagonal factor, all commuting
  Presentation pres;
  pres.v = v;
  for (std::size_t i = 0; i < k; ++i) pres.names.push_back("t" + std::to_string(i));
  for (std::size_t i = 0; i < k; ++i)
    pres.relators.push_back(Word::power(Word::make_gen(i), s.diag[i]));
  for (std::size_t j = 1; j < k; ++j)
    for (std::size_t i = 0; i < j; ++i)
      pres.relators.push_back(Word::bracket(Word::make_gen(j), Word::make_gen(i)));
  out.A = FpGroup::build(pres);

  if (out.A->order_exp != out.decomp.order_exp())
    throw check_failed("abelianization: order mismatch");
  if (out.A->order_exp + G->nspan.abelian.order_exp() !=
      static_cast<u32>(k) * zmod::valuation(v.p, v.q_gen, 0))
    throw check_failed("abelianization: SNF does not match lattice index");

  std::vector<Elt> images;
  for (std::size_t gidx = 0; gidx < k; ++gidx) {
    Vec a(k, 0);
    for (std::size_t j = 0; j < k; ++j) {
      int64_t val = s.q[gidx][j] % v.q_gen;
      if (val < 0) val += v.q_gen;
      a[j] = static_cast<u32>(val);
    }
    images.push_back(out.A->reduce(FreeElement{a, Vec(out.A->f.pairs(), 0)}));
  }
  out.proj = hom(G, out.A, images);
  return out;
}

bool lattice_quotient_cyclic_or_trivial(u32 p, const zmod::Lattice& h,
                                        const zmod::Lattice& k) {
  // H/K is a finite abelian p-group; it is cyclic or trivial iff
  // |H/(K + pH)| <= p
  std::vector<Vec> rows = k.rows;
  for (const auto& r : h.rows) {
    Vec pr(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      pr[i] = static_cast<u32>((static_cast<u64>(r[i]) * p) % h.q);
    rows.push_back(std::move(pr));
  }
  zmod::Lattice kph = zmod::howell(h.p, h.q, h.dim, rows);
  return h.order_exp() - kph.order_exp() <= 1;
}

// ---------------------------------------------------------------------------
// Morphisms

Elt Morphism::apply(const Elt& g) const {
  const FpGroup& c = *cod;
  Elt r = c.identity();
  for (std::size_t i = 0; i < images.size(); ++i)
    if (g.a[i]) r = c.mul(r, c.pow(images[i], g.a[i]));
  for (std::size_t j = 1; j < dom->f.k; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      u32 e = g.c[pair_index(j, i)];
      if (e) r = c.mul(r, c.pow(c.comm(images[j], images[i]), e));
    }
  return r;
}

Morphism hom(GroupPtr dom, GroupPtr cod, std::vector<Elt> images) {
  if (images.size() != dom->rank())
    throw std::invalid_argument("hom: need one image per generator");
  if (dom->f.v.p != cod->f.v.p)
    throw std::invalid_argument("hom: groups must share the prime");
  for (auto& e : images) e = cod->reduce(e);
  if (!(dom->f.v == cod->f.v)) {
    // the domain variety's implicit relators x^q and [x,y]^qc must also die
    for (std::size_t i = 0; i < images.size(); ++i)
      if (!cod->is_identity(cod->pow(images[i], dom->f.v.q_gen)))
        throw not_homomorphism("not a homomorphism: generator image violates "
                               "the domain exponent");
    for (std::size_t j = 1; j < images.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (!cod->is_identity(
                cod->pow(cod->comm(images[j], images[i]), dom->f.v.q_comm)))
          throw not_homomorphism("not a homomorphism: commutator image "
                                 "violates the domain exponent");
  }
  for (std::size_t r = 0; r < dom->pres.relators.size(); ++r) {
    Elt img = eval_word(*cod, dom->pres.relators[r], images);
    if (!cod->is_identity(img))
      throw not_homomorphism(
          "not a homomorphism: relator " +
              dom->pres.relators[r].print(dom->pres.names) +
              " does not map to the identity",
          dom->pres.relators[r].print(dom->pres.names));
  }
  return Morphism{dom, cod, std::move(images)};
}

Subgroup image_subgroup(const Morphism& m) { return subgroup(m.cod, m.images); }

bool is_injective(const Morphism& m) {
  return image_subgroup(m).order_exp == m.dom->order_exp;
}

Subgroup kernel_subgroup(const Morphism& m) {
  const FpGroup& d = *m.dom;
  const FpGroup& c = *m.cod;
  if (!(d.f.v == c.f.v))
    throw std::invalid_argument("kernel_subgroup: same variety required");
  const Variety& v = d.f.v;
  std::size_t kd = d.f.k, prd = d.f.pairs(), prc = c.f.pairs();

  // images of the domain's bracket basis
  zmod::Mat bmat(v.q_comm, prd, prc);
  for (std::size_t j = 1; j < kd; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      Elt br = c.comm(m.images[j], m.images[i]);
      for (std::size_t t = 0; t < prc; ++t) bmat.at(pair_index(j, i), t) = br.c[t];
    }
  zmod::Lattice nw = zmod::kernel(v.p, v.q_comm, bmat, c.nspan.central);

  // abelian stage
  zmod::Mat amat(v.q_gen, kd, c.f.k);
  for (std::size_t i = 0; i < kd; ++i)
    for (std::size_t j = 0; j < c.f.k; ++j) amat.at(i, j) = m.images[i].a[j];
  zmod::Lattice k1 = zmod::kernel(v.p, v.q_gen, amat, c.nspan.abelian);

  // central defect of the k1 basis combinations, modulo bracket images + W
  zmod::Mat cmat(v.q_comm, k1.rows.size(), prc);
  for (std::size_t l = 0; l < k1.rows.size(); ++l) {
    Elt pm = c.reduce(product_by_exponents(c.f, m.images, k1.rows[l]));
    for (u32 x : pm.a)
      if (x) throw check_failed("kernel: stage-1 combination has abelian residue");
    for (std::size_t t = 0; t < prc; ++t) cmat.at(l, t) = pm.c[t];
  }
  std::vector<Vec> brows;
  for (std::size_t r = 0; r < prd; ++r) brows.push_back(bmat.row(r));
  zmod::Lattice lb =
      zmod::lattice_sum(zmod::howell(v.p, v.q_comm, prc, brows), c.nspan.central);
  zmod::Lattice gamma = zmod::kernel(v.p, v.q_gen, cmat, lb);

  std::vector<Vec> kurows;
  for (const auto& g : gamma.rows) {
    Vec row(kd, 0);
    for (std::size_t l = 0; l < k1.rows.size(); ++l)
      for (std::size_t j = 0; j < kd; ++j)
        row[j] = static_cast<u32>(
            (row[j] + static_cast<u64>(g[l]) * k1.rows[l][j]) % v.q_gen);
    kurows.push_back(std::move(row));
  }
  zmod::Lattice ku = zmod::howell(v.p, v.q_gen, kd, kurows);

  std::vector<Elt> gens;
  for (const auto& u : ku.rows) {
    Elt pu = c.reduce(product_by_exponents(c.f, m.images, u));
    Vec neg(prc);
    for (std::size_t t = 0; t < prc; ++t)
      neg[t] = (v.q_comm - pu.c[t]) % v.q_comm;
    auto sol = zmod::solve(v.p, bmat, c.nspan.central, neg);
    if (!sol) throw check_failed("kernel: lift equation insoluble");
    gens.push_back(d.reduce(FreeElement{u, sol->particular}));
  }
  for (const auto& w : nw.rows)
    gens.push_back(d.reduce(FreeElement{Vec(kd, 0), w}));

  Subgroup ker = subgroup(m.dom, gens);
  for (const auto& g : ker.gens)
    if (!c.is_identity(m.apply(g)))
      throw check_failed("kernel: generator does not map to the identity");
  if (ker.order_exp + image_subgroup(m).order_exp != d.order_exp)
    throw check_failed("kernel: order does not complement the image");
  return ker;
}

QuotientResult quotient(GroupPtr G, const std::vector<Word>& extra) {
  Presentation pres = G->pres;
  pres.relators.insert(pres.relators.end(), extra.begin(), extra.end());
  GroupPtr q = FpGroup::build(std::move(pres));
  std::vector<Elt> images;
  for (std::size_t i = 0; i < q->rank(); ++i) images.push_back(q->gen(i));
  return QuotientResult{q, hom(G, q, images)};
}

// ---------------------------------------------------------------------------

Word element_to_word(const FreeCtx& f, const FreeElement& e) {
  std::vector<Word> parts;
  for (std::size_t i = 0; i < f.k; ++i)
    if (e.a[i]) parts.push_back(Word::power(Word::make_gen(i), e.a[i]));
  for (std::size_t j = 1; j < f.k; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      u32 c = e.c[pair_index(j, i)];
      if (c)
        parts.push_back(
            Word::power(Word::bracket(Word::make_gen(j), Word::make_gen(i)), c));
    }
  if (parts.empty()) return Word::power(Word::make_gen(0), 0);
  return Word::concat(std::move(parts));
}

SubgroupPresentation subgroup_to_fpgroup(const Subgroup& h,
                                         std::vector<std::string> names) {
  const FpGroup& k = *h.G;
  const Variety& v = k.f.v;
  std::size_t kd = h.gens.size();
  if (kd == 0) {
    Presentation pres;
    pres.v = v;
    pres.names = {"s0"};
    pres.relators = {Word::make_gen(0)};
    GroupPtr t = FpGroup::build(pres);
    return {t, hom(t, h.G, {k.identity()})};
  }
  if (names.empty())
    for (std::size_t i = 0; i < kd; ++i) names.push_back("s" + std::to_string(i));

  // kernel of the free map F(kd) -> K, gens -> h.gens, as explicit relators
  Presentation freep;
  freep.v = v;
  freep.names = names;
  GroupPtr fd = FpGroup::build(freep);
  Morphism phi{fd, h.G, h.gens};
  Subgroup ker = kernel_subgroup(phi);

  Presentation pres;
  pres.v = v;
  pres.names = names;
  for (std::size_t i = 0; i < ker.span.abelian.rows.size(); ++i)
    pres.relators.push_back(element_to_word(
        fd->f, FreeElement{ker.span.abelian.rows[i], ker.span.lifts[i]}));
  for (const auto& w : ker.span.central.rows)
    pres.relators.push_back(
        element_to_word(fd->f, FreeElement{Vec(kd, 0), w}));

  GroupPtr hp = FpGroup::build(pres);
  Morphism iso = hom(hp, h.G, h.gens);
  if (hp->order_exp != h.order_exp)
    throw check_failed("subgroup presentation: order mismatch");
  return {hp, iso};
}

EmbedResult embed_in_variety(GroupPtr G, u32 m) {
  const Variety& v = G->f.v;
  if (m < v.n) throw std::invalid_argument("embed_in_variety: target exponent too small");
  Variety w = Variety::make(v.p, m);
  Presentation pres;
  pres.v = w;
  pres.names = G->pres.names;
  pres.relators = G->pres.relators;
  for (std::size_t s = 0; s < G->rank(); ++s)
    pres.relators.push_back(Word::power(Word::make_gen(s), v.q_gen));
  for (std::size_t j = 1; j < G->rank(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      pres.relators.push_back(Word::power(
          Word::bracket(Word::make_gen(j), Word::make_gen(i)), v.q_comm));
  GroupPtr kg = FpGroup::build(std::move(pres));
  if (kg->order_exp != G->order_exp)
    throw check_failed("embed_in_variety: order changed");
  std::vector<Elt> images;
  for (std::size_t i = 0; i < kg->rank(); ++i) images.push_back(kg->gen(i));
  Morphism emb = hom(G, kg, images);
  if (!is_injective(emb)) throw check_failed("embed_in_variety: not injective");
  return {kg, emb};
}

}  // namespace nil2
