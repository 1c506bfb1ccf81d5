#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nil2/enumerate.hpp"
#include "nil2/products.hpp"

using namespace nil2;

namespace {

Word gen(std::size_t i) { return Word::make_gen(i); }
Word pw(Word w, int64_t e) { return Word::power(std::move(w), e); }
Word br(Word a, Word b) { return Word::bracket(std::move(a), std::move(b)); }

GroupPtr cyclic(u32 p, u32 n, u32 ordexp) {
  u32 q = 1;
  for (u32 i = 0; i < ordexp; ++i) q *= p;
  return FpGroup::build(
      Presentation{Variety::make(p, n), {"x"}, {pw(gen(0), q)}});
}

GroupPtr relfree(std::size_t k, u32 p, u32 n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) names.push_back(std::string(1, char('a' + i)));
  return FpGroup::build(Presentation{Variety::make(p, n), std::move(names), {}});
}

GroupPtr trivial_group(u32 p, u32 n) {
  return FpGroup::build(Presentation{Variety::make(p, n), {"e"}, {gen(0)}});
}

}  // namespace

TEST_CASE("tensor decomposition: pinned examples") {
  CyclicDecomp z3{3, {1}}, z9z9{3, {2, 2}}, triv{3, {}};
  CHECK(tensor_decomp(z3, z3) == CyclicDecomp{3, {1}});
  CHECK(tensor_decomp(z9z9, z9z9) == CyclicDecomp{3, {2, 2, 2, 2}});
  CHECK(tensor_decomp(z9z9, z9z9).order_exp() == 8);  // order 9^4
  CHECK(tensor_decomp(z3, triv) == triv);
}

TEST_CASE("coproduct: pinned orders") {
  auto z3 = cyclic(3, 1, 1);
  auto c = coproduct(z3, z3);
  CHECK(c.M->order_u64() == 27);
  CHECK(is_injective(c.into_left));

  auto f1 = relfree(1, 3, 2);
  auto c2 = coproduct(f1, f1);
  CHECK(c2.M->order_u64() == 729);  // F(1,3,2) ∐ F(1,3,2) = F(2,3,2)

  auto t = trivial_group(3, 2);
  auto f = relfree(2, 3, 2);
  auto c3 = coproduct(f, t);
  CHECK(c3.M->order_exp == f->order_exp);  // A ∐ trivial ≅ A
}

TEST_CASE("MacHenry order identity on assorted pairs") {
  auto z3 = cyclic(3, 1, 1);
  auto z9 = cyclic(3, 2, 2);
  auto h = FpGroup::build(Presentation{
      Variety::make(3, 1), {"x", "y"}, {pw(gen(0), 3), pw(gen(1), 3), pw(br(gen(0), gen(1)), 3)}});
  auto f22 = relfree(2, 3, 2);
  // coproduct() itself asserts |A ∐ C| = |A||C||A^ab ⊗ C^ab|; exercise pairs
  for (auto& [a, b] : std::vector<std::pair<GroupPtr, GroupPtr>>{
           {z3, z3}, {z9, z9}, {h, z3}, {h, h}, {f22, z9}, {f22, f22}}) {
    auto c = coproduct(a, b);
    CHECK(c.M->order_exp ==
          a->order_exp + b->order_exp + c.tensor.order_exp());
  }
}

TEST_CASE("amalgamated coproduct: degenerate cases") {
  auto f = relfree(2, 3, 2);
  std::vector<Elt> gens{f->gen(0), f->gen(1)};
  auto idm = hom(f, f, gens);

  // amalgamating a full side: (A, C; A) with Φ_A = id collapses onto C
  auto z9 = cyclic(3, 2, 2);
  auto phi_c = hom(z9, relfree(1, 3, 2), {relfree(1, 3, 2)->gen(0)});
  // build with matching core: B = Z/9, A = Z/9 (identity), C = F(1,3,2)
  auto idb = hom(z9, z9, {z9->gen(0)});
  auto am = make_amalgam(idb, hom(z9, relfree(1, 3, 2), {relfree(1, 3, 2)->gen(0)}));
  auto cop = amalgamated_coproduct(am);
  CHECK(cop.M->order_exp == 2);  // ≅ C = F(1,3,2) = Z/9

  // special amalgam (A, A; A) collapses onto A
  auto sp = special_amalgam(idm);
  auto cop2 = amalgamated_coproduct(sp);
  CHECK(cop2.M->order_exp == f->order_exp);
}

TEST_CASE("special amalgams are always weakly embeddable (samples)") {
  auto f = relfree(2, 3, 2);
  auto h = subgroup(f, {f->pow(f->gen(0), 3), f->pow(f->gen(1), 3)});
  auto hp = subgroup_to_fpgroup(h);
  auto am = special_amalgam(hp.iso);
  auto w = is_weakly_embeddable(am, 1u << 20);
  CHECK(w.ok);

  auto z3 = cyclic(3, 2, 1);  // Z/3 inside the exponent-9 variety
  auto am2 = special_amalgam(hom(z3, f, {f->pow(f->gen(0), 3)}));
  CHECK(is_weakly_embeddable(am2, 1u << 20).ok);
}

TEST_CASE("amalgam over the trivial core is strongly embeddable") {
  auto t = trivial_group(3, 1);
  auto h = FpGroup::build(Presentation{
      Variety::make(3, 1), {"x", "y"}, {pw(gen(0), 3), pw(gen(1), 3), pw(br(gen(0), gen(1)), 3)}});
  auto z3 = cyclic(3, 1, 1);
  auto am = make_amalgam(hom(t, h, {h->identity()}), hom(t, z3, {z3->identity()}));
  auto s = is_strongly_embeddable(am, 1u << 20);
  CHECK(s.ok);
  CHECK(maier_strong_check(am, 1u << 20));
}

TEST_CASE("maier agrees with the coproduct decision on mixed amalgams") {
  auto f = relfree(2, 3, 2);
  auto z9 = cyclic(3, 2, 2);
  // core Z/9 embedded as <a> on one side and as the free rank-1 group on the other
  auto am = make_amalgam(hom(z9, f, {f->gen(0)}),
                         hom(z9, relfree(1, 3, 2), {relfree(1, 3, 2)->gen(0)}));
  auto s = is_strongly_embeddable(am, 1u << 20);
  CHECK(maier_strong_check(am, 1u << 20) == s.ok);

  auto am2 = make_amalgam(hom(z9, f, {f->gen(0)}), hom(z9, f, {f->gen(1)}));
  auto s2 = is_strongly_embeddable(am2, 1u << 20);
  CHECK(maier_strong_check(am2, 1u << 20) == s2.ok);
}

TEST_CASE("strong implies weak on sampled amalgams") {
  auto f = relfree(2, 3, 2);
  auto z9 = cyclic(3, 2, 2);
  auto z3 = cyclic(3, 2, 1);
  std::vector<Amalgam> ams;
  ams.push_back(special_amalgam(hom(z3, f, {f->pow(f->gen(0), 3)})));
  ams.push_back(make_amalgam(hom(z9, f, {f->gen(0)}), hom(z9, f, {f->gen(1)})));
  for (const auto& am : ams) {
    auto s = is_strongly_embeddable(am, 1u << 20);
    if (s.ok) CHECK(is_weakly_embeddable(am, 1u << 20).ok);
  }
}

TEST_CASE("coproduct of exponent-p^n groups has exponent p^n") {
  auto f = relfree(2, 3, 2);
  auto z9 = cyclic(3, 2, 2);
  auto c = coproduct(f, z9);
  for (const auto& e : enumerate_group(*c.M, 1u << 20))
    CHECK(c.M->is_identity(c.M->pow(e, 9)));
}
