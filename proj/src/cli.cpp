#include "riemsimplex/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "riemsimplex/certificates.hpp"
#include "riemsimplex/error.hpp"
#include "riemsimplex/generators.hpp"
#include "riemsimplex/mesh_io.hpp"
#include "riemsimplex/property_suite.hpp"
#include "riemsimplex/report_json.hpp"
#include "riemsimplex/triangulation.hpp"

namespace riemsimplex {

namespace {

using nlohmann::json;

struct Common {
  std::string mesh;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 1;
  int samples = -1;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RIEMSIMPLEX_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadParams, "RIEMSIMPLEX_SEED is not an unsigned integer");
    }
  }
  return 1;
}

json manifold_json(const ManifoldDescriptor& d) {
  json m{{"kind", d.kind}, {"dim", d.dim}};
  if (d.kind == "sphere") m["radius"] = d.radius;
  if (d.kind == "hyperbolic") m["scale"] = d.scale;
  if (d.kind == "torus") m["periods"] = d.periods;
  return m;
}

void emit(const std::string& text, const Common& c, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::BadParams, "cannot write '" + c.out + "'");
  f << text;
}

std::vector<Vec> simplex_points(const std::vector<Vec>& points, const Simplex& s) {
  std::vector<Vec> v;
  for (int i : s) v.push_back(points[static_cast<std::size_t>(i)]);
  return v;
}

}  // namespace

CommandResult certify_command(const MeshDocument& doc, int oracle_samples, std::uint64_t seed) {
  const ModelManifold m = make_manifold(doc.manifold);
  const auto points = model_points(doc);
  json simplices = json::array();
  bool all = !doc.simplices.empty();
  for (std::size_t i = 0; i < doc.simplices.size(); ++i) {
    json entry{{"index", i}, {"vertices", doc.simplices[i]}};
    try {
      const RiemannianSimplex s(m, simplex_points(points, doc.simplices[i]));
      const auto reports = certify_all(s);
      json certs = json::array();
      for (const auto& r : reports) certs.push_back(to_json(r));
      entry["certificates"] = certs;
      entry["certified"] = any_certified(reports);
      if (oracle_samples > 0) {
        OracleOptions oo;
        oo.samples = oracle_samples;
        oo.seed = seed;
        entry["oracle"] = to_json(nondegeneracy_oracle(s, oo));
      }
    } catch (const Error& e) {
      entry["certified"] = false;
      entry["error"] = e.what();
    }
    all = all && entry["certified"].get<bool>();
    simplices.push_back(entry);
  }
  const json report{{"command", "certify"},
                    {"manifold", manifold_json(doc.manifold)},
                    {"oracle_samples", oracle_samples},
                    {"seed", seed},
                    {"simplices", simplices},
                    {"verdict", all ? "Certified" : "Inconclusive"}};
  return {all ? 0 : 1, canonical_json(report)};
}

CommandResult triangulate_command(const MeshDocument& doc, double t0, const std::string& variant,
                                  int cover_samples, std::uint64_t seed, const std::string& format) {
  const ModelManifold m = make_manifold(doc.manifold);
  TriangulationOptions o;
  o.t0 = t0;
  o.variant = parse_variant(variant);
  o.seed = seed;
  o.cover_samples = cover_samples;
  const TriangulationReport r = check_triangulation(m, model_points(doc), complex_of(doc), o);
  const int code = r.verdict ? 0 : 1;
  if (format == "csv") return {code, triangulation_csv(r)};
  const json report{{"command", "triangulate-check"},
                    {"manifold", manifold_json(doc.manifold)},
                    {"seed", seed},
                    {"simplex_count", doc.simplices.size()},
                    {"report", to_json(r)}};
  return {code, canonical_json(report)};
}

CommandResult distort_command(const MeshDocument& doc, double t0, int pairs, std::uint64_t seed,
                              const std::string& format) {
  const ModelManifold m = make_manifold(doc.manifold);
  const auto points = model_points(doc);
  const AbstractComplex a = complex_of(doc);
  const PwfReport pwf = pwf_metric(m, points, a, t0);
  const DistortionReport d = distortion_report(m, points, a, t0, pairs, seed);
  const int code = d.holds ? 0 : 1;
  if (format == "csv") return {code, distortion_csv(d)};
  const json report{{"command", "distort-report"},
                    {"manifold", manifold_json(doc.manifold)},
                    {"seed", seed},
                    {"t0", t0},
                    {"pairs_requested", pairs},
                    {"pwf", to_json(pwf)},
                    {"distortion", to_json(d)},
                    {"verdict", d.holds}};
  return {code, canonical_json(report)};
}

CommandResult karcher_command(const MeshDocument& doc, const std::vector<double>& weights, int extra,
                              std::uint64_t seed) {
  const ModelManifold m = make_manifold(doc.manifold);
  const auto points = model_points(doc);
  const double scale = physical_scale(doc.manifold);
  Rng rng(seed);
  json results = json::array();
  bool all = true;
  for (std::size_t i = 0; i < doc.simplices.size(); ++i) {
    const int k = static_cast<int>(doc.simplices[i].size());
    std::vector<Vec> ws;
    if (!weights.empty()) {
      if (static_cast<int>(weights.size()) != k) continue;
      ws.push_back(Eigen::Map<const Vec>(weights.data(), k));
    } else {
      ws.push_back(Vec::Constant(k, 1.0 / k));
    }
    for (int s = 0; s < extra; ++s) ws.push_back(random_weights(k, rng));
    for (const auto& w : ws) {
      json entry{{"simplex", i}, {"weights", std::vector<double>(w.data(), w.data() + w.size())}};
      try {
        const RiemannianSimplex s(m, simplex_points(points, doc.simplices[i]));
        const KarcherResult r = s.solve(w);
        const Vec p = r.point * scale;
        entry["point"] = std::vector<double>(p.data(), p.data() + p.size());
        entry["iterations"] = r.iterations;
        entry["residual"] = r.residual;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::BadParams || e.code() == ErrorCode::DimensionMismatch) throw;
        entry["error"] = e.what();
        all = false;
      }
      results.push_back(entry);
    }
  }
  if (results.empty()) throw Error(ErrorCode::BadParams, "no simplex matches the weight count");
  const json report{{"command", "karcher"},
                    {"manifold", manifold_json(doc.manifold)},
                    {"seed", seed},
                    {"results", results},
                    {"verdict", all}};
  return {all ? 0 : 1, canonical_json(report)};
}

CommandResult generate_command(const std::string& kind, int level, int n, std::vector<double> periods,
                               double radius, double perturb, std::uint64_t seed) {
  GeneratedMesh mesh;
  if (kind == "icosahedron") mesh = icosahedron_sphere(level, radius);
  else if (kind == "octahedron") mesh = octahedron_sphere(level, radius);
  else if (kind == "torus") mesh = grid_torus(n, std::move(periods));
  else throw Error(ErrorCode::BadParams, "unknown mesh kind '" + kind + "'");
  if (perturb > 0.0) mesh = perturbed(mesh, perturb, seed);
  MeshDocument doc = mesh_document(mesh);
  if (perturb > 0.0) doc.metadata.seed = seed;
  return {0, serialize_mesh(doc)};
}

CommandResult property_suite_command(int samples, int oracle_samples, std::uint64_t seed, const std::string& format) {
  PropertySuiteOptions o;
  o.seed = seed;
  o.samples = samples;
  o.oracle_samples = oracle_samples;
  const auto results = run_property_suite(o);
  bool all = true;
  for (const auto& r : results) all = all && r.pass();
  if (format == "csv") {
    std::ostringstream os;
    os << "id,trials,violations,worst_margin,pass\n";
    for (const auto& r : results)
      os << r.id << ',' << r.trials << ',' << r.violations << ',' << json(r.worst_margin).dump() << ','
         << r.pass() << '\n';
    return {all ? 0 : 1, os.str()};
  }
  {
    json props = json::array();
    for (const auto& r : results) {
      json details = json::array();
      for (const auto& [k, v] : r.details) details.push_back({{"name", k}, {"value", v}});
      props.push_back({{"id", r.id},
                       {"name", r.name},
                       {"trials", r.trials},
                       {"violations", r.violations},
                       {"worst_margin", r.worst_margin},
                       {"pass", r.pass()},
                       {"details", details}});
    }
    const json report{{"command", "property-suite"}, {"seed", seed}, {"properties", props}, {"verdict", all}};
    return {all ? 0 : 1, canonical_json(report)};
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Riemannian simplex certificates and triangulation checks", "riemsimplex"};
  app.require_subcommand(1);
  Common c;
  double t0 = 0.0;
  std::string variant = "main";
  std::vector<double> weights;
  std::string kind = "icosahedron";
  int level = 0, grid_n = 12, oracle_samples = 500;
  std::vector<double> periods{1.0, 1.0};
  double radius = 1.0, perturb = 0.0;

  auto common = [&](CLI::App* sub, bool mesh, bool csv) {
    if (mesh) sub->add_option("--mesh", c.mesh, "mesh JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", c.seed, "random seed (falls back to RIEMSIMPLEX_SEED)");
    sub->add_option("--out", c.out, "write the report here instead of stdout");
    auto* f = sub->add_option("--format", c.format, "report format");
    f->check(csv ? CLI::IsMember({"json", "csv"}) : CLI::IsMember({"json"}));
  };

  auto* certify = app.add_subcommand("certify", "certify nondegeneracy of every mesh simplex");
  common(certify, true, false);
  certify->add_option("--samples", c.samples, "oracle samples per simplex (default 500)");

  auto* tri = app.add_subcommand("triangulate-check", "check the triangulation criteria on a mesh");
  common(tri, true, true);
  tri->add_option("--t0", t0, "quality parameter")->required()->check(CLI::PositiveNumber);
  tri->add_option("--variant", variant, "scale variant")->check(CLI::IsMember({"main", "pwf", "intrinsic"}));
  tri->add_option("--samples", c.samples, "cover samples (default 100000)");

  auto* karcher = app.add_subcommand("karcher", "Karcher means on mesh simplices");
  common(karcher, true, false);
  karcher->add_option("--weights", weights, "barycentric weights")->delimiter(',');
  karcher->add_option("--samples", c.samples, "extra random weights per simplex");

  auto* gen = app.add_subcommand("generate", "generate a test mesh");
  common(gen, false, false);
  gen->add_option("--kind", kind, "mesh family")->check(CLI::IsMember({"icosahedron", "octahedron", "torus"}));
  gen->add_option("--level", level, "subdivision level");
  gen->add_option("--n", grid_n, "torus grid points per axis");
  gen->add_option("--periods", periods, "torus periods")->delimiter(',');
  gen->add_option("--radius", radius, "sphere radius");
  gen->add_option("--perturb", perturb, "perturbation magnitude");

  auto* dist = app.add_subcommand("distort-report", "metric distortion on same-simplex pairs");
  common(dist, true, true);
  dist->add_option("--t0", t0, "quality parameter")->required()->check(CLI::PositiveNumber);
  dist->add_option("--samples", c.samples, "pairs (default 10000)");

  auto* props = app.add_subcommand("property-suite", "randomized checks of the inequalities");
  common(props, false, true);
  props->add_option("--samples", c.samples, "trials per property (default: per-property counts)");
  props->add_option("--oracle-samples", oracle_samples, "oracle samples in the certificate check");

  auto* schema = app.add_subcommand("schema", "print the documented report key paths");
  common(schema, false, false);

  try {
    c.seed = default_seed();
    // CLI11 consumes the argument list from the back.
    std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rev.begin(), rev.end());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    CommandResult r{2, ""};
    auto mesh = [&] { return parse_mesh_file(c.mesh); };
    if (*certify) r = certify_command(mesh(), c.samples < 0 ? 500 : c.samples, c.seed);
    else if (*tri) r = triangulate_command(mesh(), t0, variant, c.samples < 0 ? 100000 : c.samples, c.seed, c.format);
    else if (*karcher) r = karcher_command(mesh(), weights, c.samples < 0 ? 0 : c.samples, c.seed);
    else if (*gen) r = generate_command(kind, level, grid_n, periods, radius, perturb, c.seed);
    else if (*dist) r = distort_command(mesh(), t0, c.samples < 0 ? 10000 : c.samples, c.seed, c.format);
    else if (*props) r = property_suite_command(c.samples < 0 ? 0 : c.samples, oracle_samples, c.seed, c.format);
    else if (*schema) r = {0, canonical_json(report_schema())};
    emit(r.text, c, out);
    return r.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace riemsimplex
