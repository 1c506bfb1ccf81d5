#include "nil2/report.hpp"

namespace nil2 {

std::string order_string(const FpGroup& g) {
  std::string s = std::to_string(g.f.v.p) + "^" + std::to_string(g.order_exp);
  if (g.order_exp < 40) {
    u64 v = 1;
    for (u32 i = 0; i < g.order_exp; ++i) v *= g.f.v.p;
    s += " = " + std::to_string(v);
  }
  return s;
}

Json elt_json(const FpGroup& g, const Elt& e) {
  return Json{{"a", e.a}, {"c", e.c},
              {"word", element_to_word(g.f, e).print(g.pres.names)}};
}

Json presentation_json(const NamedPresentation& np, const FpGroup& g) {
  return Json{{"name", np.name},
              {"presentation", print_presentation(np)},
              {"p", g.f.v.p},
              {"n", g.f.v.n},
              {"order", order_string(g)}};
}

Json closure_report_json(const FpGroup& g, const ClosureReport& rep,
                         bool include_pairs) {
  Json out;
  out["closed"] = rep.closed;
  out["variety"] = rep.kind == VarietyKind::Bpn ? "bpn" : "n2";
  out["pairs_checked"] = rep.pairs.size();
  std::size_t failing = 0;
  for (const auto& pr : rep.pairs) failing += pr.none() ? 1 : 0;
  out["pairs_failing"] = failing;
  auto pair_json = [&](const PairReport& pr) {
    Json pj{{"xbar", pr.xbar}, {"ybar", pr.ybar}, {"i", pr.i}};
    Json conds = Json::array();
    for (const auto& cw : pr.satisfied) {
      Json cj{{"condition", std::string(1, cw.condition)},
              {"a", cw.a},
              {"b", cw.b},
              {"c", cw.c},
              {"j", cw.j},
              {"alpha", cw.alpha}};
      if (cw.g1) cj["g1"] = elt_json(g, *cw.g1);
      if (cw.g2) cj["g2"] = elt_json(g, *cw.g2);
      conds.push_back(std::move(cj));
    }
    pj["satisfied"] = std::move(conds);
    return pj;
  };
  if (rep.first_failure)
    out["first_failure"] = pair_json(rep.pairs[*rep.first_failure]);
  if (include_pairs) {
    Json rows = Json::array();
    for (const auto& pr : rep.pairs) rows.push_back(pair_json(pr));
    out["pairs"] = std::move(rows);
  }
  return out;
}

Json base_report_json(const FpGroup& g, const BaseReport& rep) {
  Json out;
  out["is_base"] = rep.is_base;
  out["center_is_derived"] = rep.center_is_derived;
  if (rep.central_non_commutator)
    out["central_non_commutator"] = elt_json(g, *rep.central_non_commutator);
  if (rep.first_failure) {
    const auto& item = rep.items[*rep.first_failure];
    out["first_failure"] = Json{{"gbar", item.gbar}, {"i", item.i}};
  }
  out["items_checked"] = rep.items.size();
  return out;
}

Json dominion_json(const FpGroup&, const DominionResult& dr) {
  Json out;
  out["dominion_order"] = order_string(*dr.d.G) + " subgroup of exponent " +
                          std::to_string(dr.d.order_exp);
  out["order_exp"] = dr.d.order_exp;
  Json certs = Json::array();
  for (const auto& c : dr.certificates)
    certs.push_back(Json{{"rbar", c.rbar},
                         {"sbar", c.sbar},
                         {"q", c.q},
                         {"value", elt_json(*dr.d.G, c.value)}});
  out["certificates"] = std::move(certs);
  return out;
}

Json embed_check_json(const EmbedCheck& chk) {
  Json out;
  out["embeddable"] = chk.ok;
  if (!chk.ok) {
    out["reason"] = chk.reason;
    out["side"] = chk.side;
    Json w = Json::array();
    for (const auto& e : chk.witness) w.push_back(Json{{"a", e.a}, {"c", e.c}});
    out["witness"] = std::move(w);
  }
  if (chk.cop.M) out["coproduct_order_exp"] = chk.cop.M->order_exp;
  return out;
}

Json witness_json(const WitnessExtension& w) {
  Json out;
  out["xbar"] = w.xbar;
  out["ybar"] = w.ybar;
  out["i"] = w.i;
  out["ambient_exponent_index"] = w.ambient_exponent_index;
  out["overgroup_order_exp"] = w.K->order_exp;
  out["d"] = elt_json(*w.K, w.d);
  Json trace;
  trace["K0"] = Json{{"order_exp", w.trace.k0->order_exp}};
  trace["K1"] = Json{{"order_exp", w.trace.k1->order_exp}};
  trace["K2"] = Json{{"order_exp", w.trace.k2->order_exp}};
  trace["K3"] = Json{{"order_exp", w.trace.k3->order_exp}};
  trace["K4"] = Json{{"order_exp", w.K->order_exp}};
  trace["r"] = Json{{"a", w.trace.r.a}, {"c", w.trace.r.c}};
  trace["s"] = Json{{"a", w.trace.s.a}, {"c", w.trace.s.c}};
  trace["t"] = Json{{"a", w.trace.t.a}, {"c", w.trace.t.c}};
  trace["v"] = Json{{"a", w.trace.v.a}, {"c", w.trace.v.c}};
  for (auto [nm, e] : {std::pair<const char*, const Elt*>{"q1", &w.trace.q1},
                       {"q2", &w.trace.q2},
                       {"q3", &w.trace.q3},
                       {"q4", &w.trace.q4},
                       {"rt", &w.trace.rt},
                       {"sv", &w.trace.sv}})
    trace[nm] = Json{{"a", e->a}, {"c", e->c}};
  out["trace"] = std::move(trace);
  return out;
}

Json even_report_json(const EvenReport& rep) {
  Json out;
  out["ok"] = rep.ok;
  out["omega_equals_power"] = rep.omega_equals_power;
  out["omega_order_exp"] = rep.omega_order_exp;
  out["power_order_exp"] = rep.power_order_exp;
  if (rep.failing_class) out["failing_class"] = *rep.failing_class;
  if (rep.failing_i) out["failing_i"] = *rep.failing_i;
  return out;
}

ReportBuilder::ReportBuilder(std::string command, u64 cap, u32 seed) {
  j_["command"] = std::move(command);
  j_["version"] = kToolVersion;
  j_["seed"] = seed;
  j_["cap"] = Json{{"limit", cap}, {"exceeded", false}, {"skipped", Json::array()}};
  j_["inputs"] = Json::array();
  j_["verdicts"] = Json::array();
  j_["certificates"] = Json::array();
}

void ReportBuilder::add_input(const NamedPresentation& np, const FpGroup& g) {
  j_["inputs"].push_back(presentation_json(np, g));
}

void ReportBuilder::add_verdict(const std::string& name, bool value,
                                std::string detail) {
  Json v{{"name", name}, {"value", value}};
  if (!detail.empty()) v["detail"] = std::move(detail);
  j_["verdicts"].push_back(std::move(v));
}

void ReportBuilder::add_verdict(const std::string& name, const std::string& value,
                                std::string detail) {
  Json v{{"name", name}, {"value", value}};
  if (!detail.empty()) v["detail"] = std::move(detail);
  j_["verdicts"].push_back(std::move(v));
}

void ReportBuilder::add_certificate(Json c) {
  j_["certificates"].push_back(std::move(c));
}

void ReportBuilder::set_trace(Json t) { j_["trace"] = std::move(t); }

void ReportBuilder::note_skipped(const std::string& what) {
  j_["cap"]["skipped"].push_back(what);
  j_["cap"]["exceeded"] = true;
}

Json ReportBuilder::finish(double total_ms) {
  j_["timings"] = Json{{"total_ms", total_ms}};
  return j_;
}

}  // namespace nil2
