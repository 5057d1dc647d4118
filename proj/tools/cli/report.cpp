#include "cli/report.hpp"

#include <cmath>

namespace uareg::cli {

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

namespace {

template <class T>
Json optional_number(const std::optional<T>& v) {
  return v ? Json(number(static_cast<double>(*v))) : Json(nullptr);
}

Json vector_json(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

}  // namespace

Json to_json(const AhlforsReport& r) {
  Json j;
  j["upsilon"] = number(r.upsilon);
  j["r_cutoff"] = number(r.r_cutoff);
  j["c_upper"] = number(r.c_upper);
  j["c_strong"] = optional_number(r.c_strong);
  j["ceiling"] = number(r.ceiling);
  j["small_scale_blowup"] = r.small_scale_blowup;
  Json worst = Json::array();
  for (const auto& w : r.worst_pairs)
    worst.push_back({{"node", w.node}, {"radius", number(w.radius)}, {"ratio", number(w.ratio)}});
  j["worst_pairs"] = worst;
  j["passed"] = r.passed;
  return j;
}

Json to_json(const RieszBoundReport& r) {
  Json j;
  j["kind"] = std::string(bound_kind_name(r.kind));
  j["s"] = number(r.s);
  j["measured_sup"] = number(r.measured_sup);
  j["bound_value"] = optional_number(r.bound_value);
  j["passed"] = r.passed;
  Json scales = Json::array();
  for (const auto& s : r.ratio_by_scale)
    scales.push_back({{"scale", number(s.scale)}, {"ratio", number(s.ratio)}});
  j["ratio_by_scale"] = scales;
  return j;
}

Json to_json(const KernelClass& k) {
  Json j;
  j["s1"] = number(k.s1);
  j["s2"] = number(k.s2);
  j["s3"] = number(k.s3);
  j["upsilon"] = number(k.upsilon);
  j["log_flag"] = k.log_flag;
  j["eps_slack"] = k.eps_slack;
  j["epsilon"] = number(k.epsilon);
  j["text"] = format_class(k);
  return j;
}

Json to_json(const GeneralComposition& g) {
  Json j;
  j["case"] = g.case_label;
  j["case_index"] = g.case_index;
  j["sign_first"] = g.sign_first;
  j["sign_second"] = g.sign_second;
  j["eps_in_first"] = g.eps_in_first;
  j["eps_in_second"] = g.eps_in_second;
  j["class"] = to_json(g.cls);
  return j;
}

Json to_json(const SolveReport& r, bool include_mu) {
  Json j;
  j["method"] = std::string(solve_method_name(r.method));
  j["residual_inf"] = number(r.residual_inf);
  j["neumann_terms"] = r.neumann_terms ? Json(*r.neumann_terms) : Json(nullptr);
  j["condition_estimate"] = optional_number(r.condition_estimate);
  j["refinement_steps"] = r.refinement_steps;
  j["mu_sup"] = number(r.mu.size() ? r.mu.cwiseAbs().maxCoeff() : 0.0);
  if (include_mu) {
    Json mu = Json::array();
    for (Eigen::Index i = 0; i < r.mu.size(); ++i) mu.push_back(number(r.mu(i)));
    j["mu"] = mu;
  }
  return j;
}

Json to_json(const BootstrapCheck& b) {
  return Json{{"r", b.r},
              {"deviation", number(b.deviation)},
              {"relative", number(b.relative)},
              {"budget", number(b.budget)},
              {"within_budget", b.within_budget}};
}

Json to_json(const HolderEstimate& h) {
  Json j;
  j["modulus"] = h.modulus;
  j["min_dist"] = number(h.min_dist);
  j["seminorm"] = number(h.seminorm);
  j["argmax"] = {h.argmax.first, h.argmax.second};
  j["admitted_pairs"] = h.admitted_pairs;
  Json bins = Json::array();
  for (const auto& b : h.by_scale)
    bins.push_back({{"lo", number(b.lo)}, {"hi", number(b.hi)}, {"sup", number(b.sup)},
                    {"pairs", b.pairs}});
  j["by_scale"] = bins;
  return j;
}

Json to_json(const RestrictedBoundCheck& c) {
  return Json{{"a", number(c.a)},
              {"lhs", number(c.lhs)},
              {"rhs", number(c.rhs)},
              {"slack", number(c.slack)},
              {"passed", c.passed}};
}

Json to_json(const ModulusCheck& c) {
  Json j;
  j["zero_at_origin"] = c.zero_at_origin;
  j["positive"] = c.positive;
  j["nondecreasing"] = c.nondecreasing;
  j["sup_ratio"] = number(c.sup_ratio);
  j["bounded_ratio"] = c.bounded_ratio;
  Json by_a = Json::array();
  for (const auto& [a, r] : c.ratio_by_a) by_a.push_back({{"a", number(a)}, {"ratio", number(r)}});
  j["ratio_by_a"] = by_a;
  j["passed"] = c.passed;
  return j;
}

Json to_json(const SeminormReport& r) {
  Json j;
  j["s1"] = number(r.s1);
  j["s2"] = number(r.s2);
  j["s3"] = number(r.s3);
  j["potential_norm"] = number(r.potential_norm);
  j["smoothness_seminorm"] = optional_number(r.smoothness_seminorm);
  j["admissible_triples"] = r.admissible_triple_count;
  j["class_norm"] = number(r.class_norm());
  j["containment_holds"] = r.containment_holds;
  return j;
}

Json to_json(const ContinuityReport& r) {
  Json j;
  j["lambda"] = number(r.lambda);
  j["max_jump_ratio"] = number(r.max_jump_ratio);
  Json meshes = Json::array();
  for (const auto& m : r.meshes)
    meshes.push_back({{"label", m.label},
                      {"n", m.n},
                      {"mesh", number(m.mesh)},
                      {"solution_jump", number(m.solution_jump)},
                      {"datum_jump", number(m.datum_jump)},
                      {"residual_inf", number(m.residual_inf)}});
  j["meshes"] = meshes;
  j["jump_ratios"] = vector_json(r.jump_ratios);
  j["datum_jump_ratios"] = vector_json(r.datum_jump_ratios);
  j["datum_discontinuous"] = r.datum_discontinuous;
  j["passed"] = r.passed;
  return j;
}

Json to_json(const RegularityExperimentReport& r) {
  Json j;
  Json params;
  params["s1"] = number(r.params.s1);
  params["s2"] = number(r.params.s2);
  params["s3"] = number(r.params.s3);
  params["upsilon"] = number(r.params.upsilon);
  params["theta"] = number(r.params.theta);
  params["beta"] = optional_number(r.params.beta);
  params["strong_regular"] = r.params.strong_regular;
  j["params"] = params;
  j["class_modulus"] = r.class_modulus;
  j["predicted_modulus"] = r.predicted_modulus;
  j["lambda"] = number(r.lambda);
  j["growth_limit"] = number(r.growth_limit);
  Json meshes = Json::array();
  for (const auto& m : r.meshes) {
    Json e;
    e["label"] = m.label;
    e["n"] = m.n;
    e["mesh"] = number(m.mesh);
    e["min_dist"] = number(m.min_dist);
    e["seminorm"] = number(m.seminorm);
    e["argmax"] = {m.argmax.first, m.argmax.second};
    e["datum_seminorm"] = number(m.datum_seminorm);
    e["solution_sup"] = number(m.solution_sup);
    e["residual_inf"] = number(m.residual_inf);
    e["class_norm"] = number(m.class_norm);
    e["hypothesis_seminorm"] = optional_number(m.hypothesis_seminorm);
    meshes.push_back(e);
  }
  j["meshes"] = meshes;
  j["growth_ratios"] = vector_json(r.growth_ratios);
  j["class_norm_ratios"] = vector_json(r.class_norm_ratios);
  j["hypothesis_growth"] = vector_json(r.hypothesis_growth);
  j["passed"] = r.passed;
  return j;
}

}  // namespace uareg::cli
