#include "riemsimplex/report_json.hpp"

#include <sstream>

namespace riemsimplex {

using nlohmann::json;

json to_json(const Hypothesis& h) {
  return {{"name", h.name},         {"description", h.description}, {"relation", h.relation},
          {"required", h.required}, {"actual", h.actual},           {"pass", h.pass},
          {"margin", h.margin()}};
}

json to_json(const CertificateReport& r) {
  json hs = json::array();
  for (const auto& h : r.hypotheses) hs.push_back(to_json(h));
  return {{"name", r.name},
          {"reference_vertex", r.reference_vertex},
          {"verdict", to_string(r.verdict)},
          {"margin", r.margin},
          {"hypotheses", hs}};
}

json to_json(const OracleResult& r) {
  return {{"min_thickness", r.min_thickness},
          {"nondegenerate", r.nondegenerate},
          {"orientation_consistent", r.orientation_consistent},
          {"orientation_checked", r.orientation_checked},
          {"evaluated", r.evaluated}};
}

json to_json(const KarcherResult& r) {
  return {{"iterations", r.iterations}, {"residual", r.residual}};
}

json to_json(const FullStarReport& r) {
  return {{"thickness_ok", r.thickness_ok},
          {"min_thickness", r.min_thickness},
          {"embedded", r.embedded},
          {"embedding_check", r.sampled ? "sampled" : "exact"},
          {"center_interior", r.center_interior},
          {"orientation_consistent", r.orientation_consistent},
          {"simplex_count", r.simplex_count}};
}

json to_json(const VertexCheck& v) {
  return {{"vertex", v.vertex},
          {"star_radius", v.star_radius},
          {"star_in_ball", v.star_in_ball},
          {"star_full", v.star_full},
          {"min_lift_thickness", v.min_lift_thickness},
          {"full_star", to_json(v.full_star)}};
}

json to_json(const TriangulationReport& r) {
  double max_radius = 0.0, min_thickness = 1.0;
  int in_ball = 0, full = 0;
  json failing = json::array();
  for (const auto& v : r.vertices) {
    max_radius = std::max(max_radius, v.star_radius);
    min_thickness = std::min(min_thickness, v.min_lift_thickness);
    in_ball += v.star_in_ball ? 1 : 0;
    full += v.star_full ? 1 : 0;
    if (!v.star_in_ball || !v.star_full) failing.push_back(to_json(v));
  }
  json checklist = json::array();
  for (const auto& c : r.checklist)
    checklist.push_back({{"name", c.name}, {"relation", c.relation}, {"measured", c.measured},
                         {"required", c.required}, {"pass", c.pass}});
  const json cover = {{"samples", r.cover.samples},
                      {"sampled_max_gap", r.cover.sampled_max_gap},
                      {"covered", r.cover.covered},
                      {"applicable", r.cover.applicable},
                      {"method", "sampled"}};
  return {{"t0", r.t0},
          {"variant", to_string(r.variant)},
          {"h", r.h},
          {"dimension", r.dimension},
          {"complex_is_manifold", r.complex_is_manifold},
          {"condition1",
           {{"holds", r.condition1},
            {"stars_in_ball", r.condition1_stars},
            {"stars_in_ball_count", in_ball},
            {"max_star_radius", max_radius},
            {"cover", cover}}},
          {"condition2",
           {{"holds", r.condition2}, {"full_star_count", full}, {"min_lift_thickness", min_thickness}}},
          {"vertex_count", static_cast<int>(r.vertices.size())},
          {"failing_vertices", failing},
          {"checklist", checklist},
          {"verdict", r.verdict},
          {"failures", r.failures}};
}

json to_json(const PwfReport& r) {
  return {{"all_realizable", r.all_realizable}, {"min_thickness", r.min_thickness}, {"threshold", r.threshold},
          {"max_star_radius", r.max_star_radius}, {"h", r.h},                   {"hypothesis_met", r.hypothesis_met},
          {"bound_ok", r.bound_ok},             {"simplex_count", r.simplex_count}};
}

json to_json(const DistortionReport& r) {
  return {{"h", r.h},
          {"bound", r.bound},
          {"measured_max", r.measured_max},
          {"measured_abs_max", r.measured_abs_max},
          {"pairs", r.pairs},
          {"skipped", r.skipped},
          {"pair_scope", "same-simplex"},
          {"hypothesis_met", r.hypothesis_met},
          {"holds", r.holds}};
}

json to_json(const EmbeddingSuiteReport& r) {
  return {{"samples", r.samples},
          {"rho", r.rho},
          {"transition_bound", r.transition_bound},
          {"max_differential_deviation", r.max_differential_deviation},
          {"transition_violations", r.transition_violations},
          {"bilipschitz_worst_margin", r.bilipschitz_worst_margin},
          {"bilipschitz_violations", r.bilipschitz_violations},
          {"displacement_worst_margin", r.displacement_worst_margin},
          {"displacement_violations", r.displacement_violations},
          {"inverse_worst_margin", r.inverse_worst_margin},
          {"inverse_violations", r.inverse_violations},
          {"ok", r.ok()}};
}

namespace {

std::string num(double x) { return json(x).dump(); }

}  // namespace

std::string triangulation_csv(const TriangulationReport& r) {
  std::ostringstream os;
  os << "vertex,star_radius,star_in_ball,star_full,min_lift_thickness,embedded,center_interior,"
        "orientation_consistent\n";
  for (const auto& v : r.vertices)
    os << v.vertex << ',' << num(v.star_radius) << ',' << v.star_in_ball << ',' << v.star_full << ','
       << num(v.min_lift_thickness) << ',' << v.full_star.embedded << ',' << v.full_star.center_interior << ','
       << v.full_star.orientation_consistent << '\n';
  return os.str();
}

std::string distortion_csv(const DistortionReport& r) {
  std::ostringstream os;
  os << "simplex,d_flat,d_manifold,ratio\n";
  for (const auto& p : r.samples)
    os << p.simplex << ',' << num(p.d_flat) << ',' << num(p.d_manifold) << ',' << num(p.ratio) << '\n';
  return os.str();
}

std::set<std::string> key_paths(const json& j) {
  std::set<std::string> out;
  auto walk = [&](auto&& self, const json& node, const std::string& prefix) -> void {
    if (node.is_object() && !node.empty()) {
      for (auto it = node.begin(); it != node.end(); ++it)
        self(self, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
      return;
    }
    if (node.is_array()) {
      bool objects = false;
      for (const auto& e : node)
        if (e.is_object()) objects = true;
      if (objects) {
        for (const auto& e : node)
          if (e.is_object()) self(self, e, prefix + "[]");
        return;
      }
    }
    out.insert(prefix);
  };
  walk(walk, j, "");
  return out;
}

const json& report_schema() {
  static const json schema = [] {
    json s;
    const json manifold = {
        {"manifold.kind", "model space: euclidean, sphere, hyperbolic or torus"},
        {"manifold.dim", "intrinsic dimension n"},
        {"manifold.radius", "sphere radius; curvature 1/radius^2"},
        {"manifold.scale", "hyperbolic scale; curvature -1/scale^2"},
        {"manifold.periods", "torus side lengths"},
    };
    const json hypotheses = {
        {"certificates[].name", "certificate family"},
        {"certificates[].reference_vertex", "vertex used as lift centre, -1 when not applicable"},
        {"certificates[].verdict", "Certified when every hypothesis passes"},
        {"certificates[].margin", "slack of the main quality threshold"},
        {"certificates[].hypotheses[].name", "hypothesis identifier"},
        {"certificates[].hypotheses[].description", "hypothesis in words"},
        {"certificates[].hypotheses[].relation", "comparison that must hold between actual and required"},
        {"certificates[].hypotheses[].required", "threshold value"},
        {"certificates[].hypotheses[].actual", "measured value"},
        {"certificates[].hypotheses[].pass", "hypothesis holds"},
        {"certificates[].hypotheses[].margin", "signed slack, positive when passing"},
    };
    json certify = {
        {"command", "subcommand name"},
        {"oracle_samples", "random weights evaluated by the nondegeneracy oracle per simplex"},
        {"seed", "oracle seed"},
        {"verdict", "Certified when every simplex has a certificate"},
        {"simplices[].index", "position in the mesh simplex list"},
        {"simplices[].vertices", "mesh vertex ids"},
        {"simplices[].certified", "some certificate establishes nondegeneracy"},
        {"simplices[].error", "reason the simplex could not be evaluated"},
        {"simplices[].oracle.min_thickness", "smallest lifted thickness over oracle samples"},
        {"simplices[].oracle.nondegenerate", "oracle found no degenerate lift"},
        {"simplices[].oracle.orientation_consistent", "lift orientation never flips"},
        {"simplices[].oracle.orientation_checked", "orientation test applies (full-dimensional simplex)"},
        {"simplices[].oracle.evaluated", "weights evaluated"},
    };
    for (auto it = manifold.begin(); it != manifold.end(); ++it) certify[it.key()] = it.value();
    for (auto it = hypotheses.begin(); it != hypotheses.end(); ++it)
      certify["simplices[]." + it.key()] = it.value();
    s["certify"] = certify;

    json tri = {
        {"command", "subcommand name"},
        {"seed", "seed for cover sampling"},
        {"simplex_count", "maximal simplices in the mesh"},
        {"report.t0", "quality parameter: required lifted thickness"},
        {"report.variant", "scale variant: main, pwf or intrinsic"},
        {"report.h", "sampling scale for the variant"},
        {"report.dimension", "manifold dimension"},
        {"report.complex_is_manifold", "complex is a closed manifold complex of the manifold's dimension"},
        {"report.condition1.holds", "condition 1: stars inside h-balls and the balls cover the manifold"},
        {"report.condition1.stars_in_ball", "every star's vertices lie within distance h of its centre"},
        {"report.condition1.stars_in_ball_count", "stars satisfying the ball containment"},
        {"report.condition1.max_star_radius", "largest distance from a vertex to its star"},
        {"report.condition1.cover.samples", "uniform samples used for the cover test"},
        {"report.condition1.cover.sampled_max_gap", "largest observed distance from a sample to the nearest vertex"},
        {"report.condition1.cover.covered", "every sample within h of a vertex"},
        {"report.condition1.cover.applicable", "cover test runs only on compact model spaces"},
        {"report.condition1.cover.method", "always sampled; no finite certificate of covering"},
        {"report.condition2.holds", "condition 2: every lifted star is a full star with thickness at least t0"},
        {"report.condition2.full_star_count", "stars passing the full-star check"},
        {"report.condition2.min_lift_thickness", "smallest thickness among lifted star simplices"},
        {"report.vertex_count", "vertices checked"},
        {"report.failing_vertices[].vertex", "vertex id"},
        {"report.failing_vertices[].star_radius", "distance to the farthest star vertex"},
        {"report.failing_vertices[].star_in_ball", "star within distance h"},
        {"report.failing_vertices[].star_full", "lifted star is a full star at t0"},
        {"report.failing_vertices[].min_lift_thickness", "smallest lifted thickness in the star"},
        {"report.failing_vertices[].full_star.thickness_ok", "lifted simplices at least t0 thick"},
        {"report.failing_vertices[].full_star.min_thickness", "smallest lifted thickness"},
        {"report.failing_vertices[].full_star.embedded", "lifted simplices meet only in shared faces"},
        {"report.failing_vertices[].full_star.embedding_check", "exact (linear feasibility) or sampled"},
        {"report.failing_vertices[].full_star.center_interior", "centre lies in the interior of the star"},
        {"report.failing_vertices[].full_star.orientation_consistent", "all lifted simplices share an orientation"},
        {"report.failing_vertices[].full_star.simplex_count", "simplices in the star"},
        {"report.checklist[].name", "hypothesis of the generic triangulation criterion"},
        {"report.checklist[].relation", "comparison between measured and required"},
        {"report.checklist[].measured", "measured or evaluated value"},
        {"report.checklist[].required", "threshold"},
        {"report.checklist[].pass", "hypothesis holds"},
        {"report.verdict", "conjunction of the manifold-complex check and conditions 1 and 2"},
        {"report.failures", "human-readable failure details"},
    };
    for (auto it = manifold.begin(); it != manifold.end(); ++it) tri[it.key()] = it.value();
    s["triangulate-check"] = tri;

    json dist = {
        {"command", "subcommand name"},
        {"seed", "pair sampling seed"},
        {"t0", "quality parameter"},
        {"pairs_requested", "pairs drawn"},
        {"verdict", "distortion bound holds on every sampled pair"},
        {"pwf.all_realizable", "every simplex realizable from geodesic edge lengths"},
        {"pwf.min_thickness", "smallest thickness of the realized flat simplices"},
        {"pwf.threshold", "thickness the piecewise-flat metric must exceed: 3 t0 / (4 sqrt n)"},
        {"pwf.max_star_radius", "largest distance from a vertex to its star"},
        {"pwf.h", "piecewise-flat scale"},
        {"pwf.hypothesis_met", "stars lie within the piecewise-flat scale"},
        {"pwf.bound_ok", "realized thickness exceeds the threshold"},
        {"pwf.simplex_count", "simplices realized"},
        {"distortion.h", "piecewise-flat scale used in the bound"},
        {"distortion.bound", "relative distortion bound 50 Lambda h^2 / t0^2"},
        {"distortion.measured_max", "largest |d_M - d_flat| / d_flat over sampled pairs"},
        {"distortion.measured_abs_max", "largest |d_M - d_flat| over sampled pairs"},
        {"distortion.pairs", "pairs measured"},
        {"distortion.skipped", "pairs skipped for zero flat distance"},
        {"distortion.pair_scope", "pairs share a simplex"},
        {"distortion.hypothesis_met", "stars lie within the piecewise-flat scale"},
        {"distortion.holds", "measured distortion within the bound (flat spaces: 1e-9 absolute)"},
    };
    for (auto it = manifold.begin(); it != manifold.end(); ++it) dist[it.key()] = it.value();
    s["distort-report"] = dist;

    json karcher = {
        {"command", "subcommand name"},
        {"seed", "weight sampling seed"},
        {"verdict", "every solve converged"},
        {"results[].simplex", "mesh simplex index"},
        {"results[].weights", "barycentric weights"},
        {"results[].point", "Karcher mean in mesh coordinates"},
        {"results[].iterations", "fixed-point iterations used"},
        {"results[].residual", "norm of the weighted log sum at the mean"},
        {"results[].error", "reason the solve failed"},
    };
    for (auto it = manifold.begin(); it != manifold.end(); ++it) karcher[it.key()] = it.value();
    s["karcher"] = karcher;

    json mesh = {
        {"vertices", "physical coordinates"},
        {"simplices", "vertex index tuples"},
        {"metadata.name", "mesh name"},
        {"metadata.seed", "perturbation seed"},
    };
    for (auto it = manifold.begin(); it != manifold.end(); ++it) mesh[it.key()] = it.value();
    s["generate"] = mesh;

    s["property-suite"] = {
        {"command", "subcommand name"},
        {"seed", "base seed"},
        {"verdict", "every property passed"},
        {"properties[].id", "property identifier"},
        {"properties[].name", "inequality or identity checked"},
        {"properties[].trials", "random instances"},
        {"properties[].violations", "instances violating the property"},
        {"properties[].worst_margin", "smallest slack observed, negative on violation"},
        {"properties[].pass", "no violations"},
        {"properties[].details", "property-specific quantities; empty when there are none"},
        {"properties[].details[].name", "property-specific quantity"},
        {"properties[].details[].value", "its value"},
    };
    return s;
  }();
  return schema;
}

}  // namespace riemsimplex
