#include "nil2/classify.hpp"

#include <algorithm>

#include "nil2/enumerate.hpp"

namespace nil2 {

std::vector<Vec> abelian_class_reps(const FpGroup& G, u64 cap) {
  return zmod::residue_reps(G.nspan.abelian, cap);
}

namespace {

void require_odd(const Variety& v, const char* who) {
  if (v.p == 2)
    throw std::invalid_argument(std::string(who) + ": odd prime required");
}

u32 p_power(u32 p, u32 e) {
  u32 r = 1;
  for (u32 i = 0; i < e; ++i) r *= p;
  return r;
}

Vec add_mod(const Vec& a, const Vec& b, u32 q) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % q;
  return r;
}

Vec scale_mod(const Vec& a, u64 s, u32 q) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = static_cast<u32>((a[i] * (s % q)) % q);
  return r;
}

// per power-index data reused across class pairs
struct PowerData {
  u32 qi = 1;
  zmod::Lattice power_image;           // q_i * full + U, in G/G'
  zmod::Lattice power_image_doubled;   // block sum for the paired congruences
  std::unique_ptr<zmod::Solver> solver;  // q_i * y ≡ t (mod U)
};

PowerData make_power_data(const FpGroup& G, u32 qi) {
  const Variety& v = G.f.v;
  std::size_t k = G.rank();
  PowerData pd;
  pd.qi = qi;
  std::vector<Vec> rows = G.nspan.abelian.rows;
  for (std::size_t s = 0; s < k; ++s) {
    Vec r(k, 0);
    r[s] = qi % v.q_gen;
    rows.push_back(std::move(r));
  }
  pd.power_image = zmod::howell(v.p, v.q_gen, k, rows);
  std::vector<Vec> drows;
  for (const auto& r : pd.power_image.rows) {
    Vec left(2 * k, 0), right(2 * k, 0);
    for (std::size_t t = 0; t < k; ++t) {
      left[t] = r[t];
      right[k + t] = r[t];
    }
    drows.push_back(std::move(left));
    drows.push_back(std::move(right));
  }
  pd.power_image_doubled = zmod::howell(v.p, v.q_gen, 2 * k, drows);
  zmod::Mat qi_mat(v.q_gen, k, k);
  for (std::size_t s = 0; s < k; ++s) qi_mat.at(s, s) = qi % v.q_gen;
  pd.solver = std::make_unique<zmod::Solver>(v.p, qi_mat, G.nspan.abelian);
  return pd;
}

// Decides whether integers a, b, c and elements g1, g2 exist with
//   g1^{q_i} ≡ x^a y^b,  g2^{q_i} ≡ x^{b+j} y^c  (mod G'),
// and, when need_violation is set, additionally [g1,x][g2,y] ≠ e.  The
// solvable triples form an affine lattice and the achievable bracket values
// an affine lattice in the central coordinates, so the decision reduces to
// membership of an offset and finitely many generators.
std::optional<ConditionWitness> paired_congruence_check(
    const FpGroup& G, const PowerData& pd, const Vec& xb, const Vec& yb,
    u32 jshift, bool need_violation, char label) {
  const FreeCtx& f = G.f;
  const Variety& v = f.v;
  std::size_t k = f.k;
  const zmod::Lattice& w = G.nspan.central;

  zmod::Mat m3(v.q_gen, 3, 2 * k);
  for (std::size_t t = 0; t < k; ++t) {
    m3.at(0, t) = xb[t];
    m3.at(1, t) = yb[t];
    m3.at(1, k + t) = xb[t];
    m3.at(2, k + t) = yb[t];
  }
  Vec target(2 * k, 0);
  for (std::size_t t = 0; t < k; ++t) {
    u32 jx = static_cast<u32>((static_cast<u64>(jshift % v.q_gen) * xb[t]) % v.q_gen);
    target[k + t] = (v.q_gen - jx) % v.q_gen;
  }
  auto sol = zmod::solve(v.p, m3, pd.power_image_doubled, target);
  if (!sol) return std::nullopt;

  auto targets = [&](const Vec& abc) {
    Vec t1 = add_mod(scale_mod(xb, abc[0], v.q_gen), scale_mod(yb, abc[1], v.q_gen),
                     v.q_gen);
    Vec t2 = add_mod(scale_mod(xb, abc[1] + jshift, v.q_gen),
                     scale_mod(yb, abc[2], v.q_gen), v.q_gen);
    return std::make_pair(t1, t2);
  };
  auto witness_for = [&](const Vec& abc, const Vec& y1, const Vec& y2) {
    ConditionWitness cw;
    cw.condition = label;
    cw.a = abc[0];
    cw.b = abc[1];
    cw.c = abc[2];
    cw.j = jshift;
    cw.g1 = G.reduce(FreeElement{y1, Vec(f.pairs(), 0)});
    cw.g2 = G.reduce(FreeElement{y2, Vec(f.pairs(), 0)});
    return cw;
  };
  auto solutions = [&](const Vec& abc) {
    auto [t1, t2] = targets(abc);
    auto y1 = pd.solver->particular(t1);
    auto y2 = pd.solver->particular(t2);
    if (!y1 || !y2) throw check_failed("paired congruences: solver disagreed");
    return std::make_pair(*y1, *y2);
  };

  if (!need_violation) {
    auto [y1, y2] = solutions(sol->particular);
    return witness_for(sol->particular, y1, y2);
  }

  auto bracket_class = [&](const Vec& y1, const Vec& y2) {
    return add_mod(f.bracket_c(y1, xb), f.bracket_c(y2, yb), v.q_comm);
  };
  auto [y10, y20] = solutions(sol->particular);
  if (!w.member(bracket_class(y10, y20)))
    return witness_for(sol->particular, y10, y20);
  // perturb the g's inside their solution cosets
  for (const auto& kb : pd.solver->kernel().rows) {
    if (!w.member(f.bracket_c(kb, xb)))
      return witness_for(sol->particular, add_mod(y10, kb, v.q_gen), y20);
    if (!w.member(f.bracket_c(kb, yb)))
      return witness_for(sol->particular, y10, add_mod(y20, kb, v.q_gen));
  }
  // walk the affine lattice of solvable (a,b,c) triples
  for (const auto& d : sol->homogeneous.rows) {
    Vec abc = add_mod(sol->particular, d, v.q_gen);
    auto [y1, y2] = solutions(abc);
    if (!w.member(bracket_class(y1, y2))) return witness_for(abc, y1, y2);
  }
  return std::nullopt;
}

PairReport evaluate_pair(const FpGroup& G, const PowerData& pd, const Vec& xb,
                         const Vec& yb, u32 i, VarietyKind kind,
                         bool full_report) {
  const Variety& v = G.f.v;
  const zmod::Lattice& w = G.nspan.central;
  PairReport pr;
  pr.xbar = xb;
  pr.ybar = yb;
  pr.i = i;
  bool done = false;
  auto push = [&](std::optional<ConditionWitness> cw) {
    if (cw && (!done || full_report)) pr.satisfied.push_back(*cw);
    if (cw) done = true;
    return done && !full_report;
  };
  // (a): roots of x and y cannot coexist in any extension
  if (!push(paired_congruence_check(G, pd, xb, yb, 0, true, 'a')) ||
      full_report) {
    if (kind == VarietyKind::Bpn) {
      // (b): the commutator survives the forced p^{2i}-th power
      u32 alpha = v.n > 2 * i ? v.n - 2 * i : 0;
      Vec bc = scale_mod(G.f.bracket_c(xb, yb), p_power(v.p, alpha), v.q_comm);
      if (!w.member(bc)) {
        ConditionWitness cw;
        cw.condition = 'b';
        cw.alpha = alpha;
        push(cw);
      }
      // (c): exponent-p^n arithmetic forbids the root pair
      if ((!done || full_report) && 2 * i > v.n) {
        u32 step = p_power(v.p, v.n - i);
        for (u32 j = step; j <= pd.qi && (!done || full_report); j += step)
          push(paired_congruence_check(G, pd, xb, yb, j, true, 'c'));
      }
    }
    // (d): the shifted congruences are solvable, trapping the bracket in G
    if (!done || full_report)
      push(paired_congruence_check(G, pd, xb, yb, 1, false, 'd'));
  }
  return pr;
}

}  // namespace

PairReport classify_class_pair(GroupPtr Gp, const Vec& xbar, const Vec& ybar,
                               u32 i, VarietyKind kind, bool full_report) {
  const FpGroup& G = *Gp;
  require_odd(G.f.v, "classify_class_pair");
  PowerData pd = make_power_data(G, p_power(G.f.v.p, i));
  return evaluate_pair(G, pd, G.nspan.abelian.residue(xbar),
                       G.nspan.abelian.residue(ybar), i, kind, full_report);
}

std::vector<ConditionWitness> sample_congruence_witnesses(GroupPtr Gp,
                                                          const Vec& xbar,
                                                          const Vec& ybar, u32 i,
                                                          u32 jshift) {
  const FpGroup& G = *Gp;
  const Variety& v = G.f.v;
  std::size_t k = G.rank();
  PowerData pd = make_power_data(G, p_power(v.p, i));
  Vec xb = G.nspan.abelian.residue(xbar), yb = G.nspan.abelian.residue(ybar);

  zmod::Mat m3(v.q_gen, 3, 2 * k);
  for (std::size_t t = 0; t < k; ++t) {
    m3.at(0, t) = xb[t];
    m3.at(1, t) = yb[t];
    m3.at(1, k + t) = xb[t];
    m3.at(2, k + t) = yb[t];
  }
  Vec target(2 * k, 0);
  for (std::size_t t = 0; t < k; ++t) {
    u32 jx = static_cast<u32>((static_cast<u64>(jshift % v.q_gen) * xb[t]) % v.q_gen);
    target[k + t] = (v.q_gen - jx) % v.q_gen;
  }
  auto sol = zmod::solve(v.p, m3, pd.power_image_doubled, target);
  std::vector<ConditionWitness> out;
  if (!sol) return out;
  auto emit = [&](const Vec& abc) {
    Vec t1 = add_mod(scale_mod(xb, abc[0], v.q_gen),
                     scale_mod(yb, abc[1], v.q_gen), v.q_gen);
    Vec t2 = add_mod(scale_mod(xb, abc[1] + jshift, v.q_gen),
                     scale_mod(yb, abc[2], v.q_gen), v.q_gen);
    auto y1 = pd.solver->particular(t1);
    auto y2 = pd.solver->particular(t2);
    if (!y1 || !y2) throw check_failed("sample witnesses: solver disagreed");
    ConditionWitness cw;
    cw.condition = jshift == 0 ? 'a' : 'd';
    cw.a = abc[0];
    cw.b = abc[1];
    cw.c = abc[2];
    cw.j = jshift;
    cw.g1 = G.reduce(FreeElement{*y1, Vec(G.f.pairs(), 0)});
    cw.g2 = G.reduce(FreeElement{*y2, Vec(G.f.pairs(), 0)});
    out.push_back(std::move(cw));
  };
  emit(sol->particular);
  for (const auto& d : sol->homogeneous.rows)
    emit(add_mod(sol->particular, d, v.q_gen));
  return out;
}

ClosureReport is_absolutely_closed(GroupPtr Gp, VarietyKind kind,
                                   bool full_report, u64 cap) {
  const FpGroup& G = *Gp;
  const Variety& v = G.f.v;
  require_odd(v, "is_absolutely_closed");
  ClosureReport rep;
  rep.kind = kind;
  rep.closed = true;

  u32 imax = kind == VarietyKind::Bpn ? v.n - 1 : v.n;
  if (imax == 0) return rep;  // exponent p: the condition set is vacuous

  auto classes = abelian_class_reps(G, cap);
  std::vector<PowerData> per;
  for (u32 i = 1; i <= imax; ++i)
    per.push_back(make_power_data(G, p_power(v.p, i)));

  for (const auto& xb : classes) {
    for (const auto& yb : classes) {
      for (u32 i = 1; i <= imax; ++i) {
        PairReport pr = evaluate_pair(G, per[i - 1], xb, yb, i, kind, full_report);
        if (pr.none()) {
          rep.closed = false;
          if (!rep.first_failure) rep.first_failure = rep.pairs.size();
        }
        rep.pairs.push_back(std::move(pr));
      }
    }
  }
  return rep;
}

DominionResult dominion(GroupPtr K, const Subgroup& G) {
  const FpGroup& kg = *K;
  const Variety& v = kg.f.v;
  require_odd(v, "dominion");
  if (G.G.get() != K.get())
    throw std::invalid_argument("dominion: subgroup must live in the ambient group");

  DominionResult res;
  std::vector<Elt> gens = G.gens;
  std::size_t k = kg.rank();
  for (u32 i = 1; i < v.n; ++i) {
    u32 qi = p_power(v.p, i);
    zmod::Mat qi_mat(v.q_gen, k, k);
    for (std::size_t s = 0; s < k; ++s) qi_mat.at(s, s) = qi % v.q_gen;
    zmod::Lattice si = zmod::kernel(v.p, v.q_gen, qi_mat, G.span.abelian);
    for (std::size_t a = 0; a < si.rows.size(); ++a)
      for (std::size_t b = a + 1; b < si.rows.size(); ++b) {
        Vec c = scale_mod(kg.f.bracket_c(si.rows[a], si.rows[b]), qi, v.q_comm);
        Elt val = kg.reduce(FreeElement{Vec(k, 0), c});
        if (kg.is_identity(val)) continue;
        gens.push_back(val);
        if (!G.contains(val))
          res.certificates.push_back({si.rows[a], si.rows[b], qi, val});
      }
  }
  res.d = subgroup(K, gens);
  return res;
}

Subgroup dominion_oracle(GroupPtr K, const Subgroup& G, u64 cap) {
  auto sp = subgroup_to_fpgroup(G);
  Amalgam am = special_amalgam(sp.iso);
  CoproductResult cop = amalgamated_coproduct(am);
  Subgroup img_right = image_subgroup(cop.into_right);
  std::vector<Elt> inside;
  for (const auto& e : enumerate_group(*K, cap))
    if (img_right.contains(cop.into_left.apply(e))) inside.push_back(e);
  return subgroup(K, inside);
}

BaseReport is_amalgamation_base(GroupPtr Gp, u64 cap) {
  const FpGroup& G = *Gp;
  const Variety& v = G.f.v;
  require_odd(v, "is_amalgamation_base");
  BaseReport rep;

  Subgroup z = center(Gp);
  Subgroup d = derived_subgroup(Gp);
  rep.center_is_derived = sub_equal(z, d);
  if (!rep.center_is_derived) {
    for (const auto& g : z.gens) {
      bool azero = std::all_of(g.a.begin(), g.a.end(), [](u32 x) { return x == 0; });
      if (!azero) {
        rep.central_non_commutator = g;
        break;
      }
    }
    if (!rep.central_non_commutator)
      throw check_failed("base: center exceeds derived only centrally");
    rep.is_base = false;
    return rep;
  }

  rep.is_base = true;
  auto classes = abelian_class_reps(G, cap);
  const zmod::Lattice& w = G.nspan.central;
  for (u32 i = 1; i < v.n; ++i) {
    PowerData pd = make_power_data(G, p_power(v.p, i));
    for (const auto& gb : classes) {
      BaseElementReport item;
      item.gbar = gb;
      item.i = i;
      if (pd.power_image.member(gb)) {
        item.in_power_subgroup = true;
      } else {
        // c runs over positive integers; modulo q_gen that is 1..q_gen, with
        // c = q_gen covering the classes congruent to zero
        for (u32 c = 1; c <= v.q_gen && !item.c; ++c) {
          Vec t = scale_mod(gb, c, v.q_gen);
          auto y0 = pd.solver->particular(t);
          if (!y0) continue;
          if (!w.member(G.f.bracket_c(*y0, gb))) {
            item.c = c;
            item.y = G.reduce(FreeElement{*y0, Vec(G.f.pairs(), 0)});
            break;
          }
          for (const auto& kb : pd.solver->kernel().rows)
            if (!w.member(G.f.bracket_c(kb, gb))) {
              item.c = c;
              item.y = G.reduce(
                  FreeElement{add_mod(*y0, kb, v.q_gen), Vec(G.f.pairs(), 0)});
              break;
            }
        }
        if (!item.ok()) {
          rep.is_base = false;
          if (!rep.first_failure) rep.first_failure = rep.items.size();
        }
      }
      rep.items.push_back(std::move(item));
    }
  }
  return rep;
}

bool has_root_extension(GroupPtr Gp, const RootQuery& query, bool allow_large) {
  const FpGroup& G = *Gp;
  const Variety& v = G.f.v;
  std::size_t m = query.g.size();
  if (m != query.n.size() || m == 0)
    throw std::invalid_argument("root query: need matching g and n tuples");
  if (m > 2 && !allow_large)
    throw std::invalid_argument("root query: m > 2 requires an explicit override");
  for (u32 nv : query.n) {
    u32 t = nv;
    while (t > 1 && t % v.p == 0) t /= v.p;
    if (t != 1) throw std::invalid_argument("root query: degrees must be powers of p");
  }

  std::vector<Vec> gbar(m);
  for (std::size_t i = 0; i < m; ++i)
    gbar[i] = G.nspan.abelian.residue(query.g[i].a);
  std::vector<PowerData> pd;
  for (std::size_t i = 0; i < m; ++i)
    pd.push_back(make_power_data(G, query.n[i] % v.q_gen == 0
                                        ? v.q_gen
                                        : query.n[i]));
  const zmod::Lattice& w = G.nspan.central;

  // arrays {c_ij} with n_i c_ij = n_j c_ji: diagonal free, each i < j pair
  // parametrized by one residue t via c_ij = (n_j/gcd) t, c_ji = (n_i/gcd) t
  std::size_t npairs = m * (m - 1) / 2;
  std::size_t nfree = m + npairs;
  std::vector<u32> digits(nfree, 0);
  std::vector<std::vector<u32>> cmat(m, std::vector<u32>(m, 0));
  while (true) {
    for (std::size_t i = 0; i < m; ++i) cmat[i][i] = digits[i];
    std::size_t idx = m;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j, ++idx) {
        u32 ni = query.n[i], nj = query.n[j];
        u32 g = std::min(ni, nj);  // gcd of two p-powers
        u64 t = digits[idx];
        cmat[i][j] = static_cast<u32>((t * (nj / g)) % v.q_gen);
        cmat[j][i] = static_cast<u32>((t * (ni / g)) % v.q_gen);
      }

    // y_j^{n_j} ≡ Π_i g_i^{c_ij} (mod G'): check all solution tuples satisfy
    // Π_j [y_j, g_j] = e
    std::vector<Vec> y0(m);
    bool solvable = true;
    for (std::size_t j = 0; j < m && solvable; ++j) {
      Vec t(G.rank(), 0);
      for (std::size_t i = 0; i < m; ++i)
        t = add_mod(t, scale_mod(gbar[i], cmat[i][j], v.q_gen), v.q_gen);
      auto sol = pd[j].solver->particular(t);
      if (!sol)
        solvable = false;
      else
        y0[j] = *sol;
    }
    if (solvable) {
      Vec off(G.f.pairs(), 0);
      for (std::size_t j = 0; j < m; ++j)
        off = add_mod(off, G.f.bracket_c(y0[j], gbar[j]), v.q_comm);
      if (!w.member(off)) return false;
      for (std::size_t j = 0; j < m; ++j)
        for (const auto& kb : pd[j].solver->kernel().rows)
          if (!w.member(G.f.bracket_c(kb, gbar[j]))) return false;
    }

    std::size_t i = 0;
    for (; i < nfree; ++i) {
      if (++digits[i] < v.q_gen) break;
      digits[i] = 0;
    }
    if (i == nfree) break;
  }
  return true;
}

bool keylemma_check(GroupPtr Kp, const Elt& x, const Elt& y, const Elt& r,
                    const Elt& s, u32 i, int64_t j, int64_t a, int64_t b,
                    int64_t c, const Elt& g1, const Elt& g2) {
  const FpGroup& K = *Kp;
  u32 qi = p_power(K.f.v.p, i);
  Subgroup der = derived_subgroup(Kp);
  auto congruent_mod_derived = [&](const Elt& u, const Elt& w) {
    return der.contains(K.mul(u, K.inv(w)));
  };
  if (!congruent_mod_derived(x, K.pow(r, qi)) ||
      !congruent_mod_derived(y, K.pow(s, qi)))
    throw std::invalid_argument("keylemma: x, y are not the stated q-th powers");
  Elt t1 = K.mul(K.pow(x, a), K.pow(y, b));
  Elt t2 = K.mul(K.pow(x, b + j), K.pow(y, c));
  if (!congruent_mod_derived(K.pow(g1, qi), t1) ||
      !congruent_mod_derived(K.pow(g2, qi), t2))
    throw std::invalid_argument("keylemma: witness congruences fail");
  Elt lhs = K.pow(K.comm(r, s), j * static_cast<int64_t>(qi));
  Elt rhs = K.mul(K.comm(g1, x), K.comm(g2, y));
  return lhs == rhs;
}

EvenReport even_amalgam_condition(GroupPtr Gp, u64 cap) {
  const FpGroup& G = *Gp;
  const Variety& v = G.f.v;
  if (v.p != 2 || v.n < 2)
    throw std::invalid_argument("even checker: needs p = 2 and exponent >= 4");
  u32 nn = v.n - 1;  // the group has exponent 2^(nn+1)
  EvenReport rep;

  Subgroup z = center(Gp);
  Subgroup om = omega_subgroup(z, nn, cap);
  Subgroup pw = power_subgroup(Gp, p_power(2, nn));
  rep.omega_order_exp = om.order_exp;
  rep.power_order_exp = pw.order_exp;
  rep.omega_equals_power = sub_equal(om, pw);
  if (!rep.omega_equals_power) {
    rep.ok = false;
    return rep;
  }

  rep.ok = true;
  auto classes = abelian_class_reps(G, cap);
  for (u32 i = 1; i + 1 <= nn && rep.ok; ++i) {
    Subgroup pwi = power_subgroup(Gp, p_power(2, i));
    for (const auto& xb : classes) {
      Elt x = G.reduce(FreeElement{xb, Vec(G.f.pairs(), 0)});
      bool a_cond = !pwi.span.abelian.member(xb);
      bool b_cond = !z.contains(G.pow(x, p_power(2, nn - i)));
      bool c_cond = !G.is_identity(G.pow(x, p_power(2, nn)));
      bool d_cond = !has_root_extension(Gp, RootQuery{{x}, {p_power(2, i)}});
      if (!(a_cond || b_cond || c_cond || d_cond)) {
        rep.ok = false;
        rep.failing_class = xb;
        rep.failing_i = i;
        break;
      }
    }
  }
  return rep;
}

bool even_weak_base_condition(GroupPtr Gp, u64 cap) {
  const FpGroup& G = *Gp;
  const Variety& v = G.f.v;
  if (v.p != 2 || v.n < 2)
    throw std::invalid_argument("even checker: needs p = 2 and exponent >= 4");
  u32 nn = v.n - 1;
  if (!sub_equal(center(Gp), derived_subgroup(Gp))) return false;
  auto classes = abelian_class_reps(G, cap);
  for (u32 i = 1; i <= nn; ++i) {
    Subgroup pwi = power_subgroup(Gp, p_power(2, i));
    for (const auto& gb : classes) {
      if (pwi.span.abelian.member(gb)) continue;
      Elt g = G.reduce(FreeElement{gb, Vec(G.f.pairs(), 0)});
      if (has_root_extension(Gp, RootQuery{{g}, {p_power(2, i)}})) return false;
    }
  }
  return true;
}

ChainResult dominion_closure_chain(GroupPtr K, const Subgroup& G,
                                   VarietyKind kind, u64 cap) {
  ChainResult cr;
  cr.dom = dominion(K, G);
  auto sp = subgroup_to_fpgroup(cr.dom.d);
  cr.d_presented = sp.H;
  cr.d_report = is_absolutely_closed(sp.H, kind, false, cap);
  return cr;
}

}  // namespace nil2
