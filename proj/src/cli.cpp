#include "bochnerlab/cli.hpp"

#include <chrono>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bochnerlab/bochner.hpp"
#include "bochnerlab/cframe.hpp"
#include "bochnerlab/classify.hpp"
#include "bochnerlab/proofcheck.hpp"

namespace bochnerlab::cli {
namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

ordered_json cx_json(std::complex<double> c) {
  return ordered_json::array({c.real(), c.imag()});
}

std::string matrix_path(const char* key, int i, int j) {
  std::ostringstream os;
  os << key << "[" << i << "][" << j << "]";
  return os.str();
}

std::vector<std::vector<expr::Expression>> parse_matrix(const nlohmann::json& arr,
                                                        const char* key, int dim) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != dim)
    throw CliError(std::string("config: ") + key + " must be a " +
                   std::to_string(dim) + "x" + std::to_string(dim) +
                   " array of expression strings");
  std::vector<std::vector<expr::Expression>> out(dim,
                                                 std::vector<expr::Expression>(dim));
  for (int i = 0; i < dim; ++i) {
    const auto& row = arr[i];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw CliError(std::string("config: ") + key + "[" + std::to_string(i) +
                     "] must have " + std::to_string(dim) + " entries");
    for (int j = 0; j < dim; ++j) {
      if (!row[j].is_string())
        throw CliError("config: " + matrix_path(key, i, j) +
                       " must be an expression string");
      try {
        out[i][j] = expr::Expression::parse(row[j].get<std::string>(), dim);
      } catch (const std::exception& e) {
        throw CliError("config: " + matrix_path(key, i, j) + ": " + e.what());
      }
    }
  }
  return out;
}

std::vector<double> parse_point_csv(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto a = tok.find_first_not_of(" \t");
    const auto b = tok.find_last_not_of(" \t");
    if (a == std::string::npos)
      throw CliError("--point: empty coordinate in \"" + text + "\"");
    tok = tok.substr(a, b - a + 1);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw CliError("--point: cannot parse \"" + tok + "\" as a number");
    }
  }
  if (out.empty()) throw CliError("--point: empty coordinate list");
  return out;
}

// everything a chart mode needs before analysis starts
struct ChartContext {
  manifold::ChartManifold m;
  std::vector<double> point;
  std::vector<std::string> warnings;
};

ChartContext resolve_chart(const RunConfig& cfg) {
  ChartContext ctx;
  if (!cfg.zoo.empty() && !cfg.config_path.empty())
    throw CliError("give either --zoo or --config, not both");
  if (cfg.zoo.empty() && cfg.config_path.empty())
    throw CliError(cfg.mode + " needs --zoo or --config");
  if (!cfg.zoo.empty()) {
    manifold::ZooParams params;
    params.n = cfg.n;
    ctx.m = manifold::make_zoo(cfg.zoo, params);
  } else {
    ctx.m = load_manifold(cfg.config_path, &ctx.warnings);
  }
  if (cfg.point.empty()) {
    ctx.point = ctx.m.default_point;
  } else {
    if (static_cast<int>(cfg.point.size()) != ctx.m.dim)
      throw CliError("--point needs " + std::to_string(ctx.m.dim) +
                     " coordinates, got " + std::to_string(cfg.point.size()));
    ctx.point = cfg.point;
  }
  if (!ctx.m.domain.empty()) {
    for (int a = 0; a < ctx.m.dim; ++a)
      if (ctx.point[a] < ctx.m.domain[a].first ||
          ctx.point[a] > ctx.m.domain[a].second)
        throw CliError("point leaves the chart domain in coordinate x" +
                       std::to_string(a + 1));
  }
  return ctx;
}

ordered_json input_echo(const RunConfig& cfg) {
  ordered_json in;
  in["mode"] = cfg.mode;
  in["zoo"] = cfg.zoo.empty() ? ordered_json() : ordered_json(cfg.zoo);
  in["config"] = cfg.config_path.empty() ? ordered_json() : ordered_json(cfg.config_path);
  in["n"] = cfg.n;
  in["point"] = cfg.point;
  in["tol"] = cfg.tol;
  in["seeds"] = cfg.seeds;
  in["seed"] = cfg.seed;
  in["radius"] = cfg.radius;
  in["grid"] = cfg.grid;
  return in;
}

ordered_json diag_json(const manifold::StructureDiagnostics& d) {
  ordered_json j;
  j["dim"] = d.dim;
  j["metric_symmetry"] = d.metric_symmetry;
  j["metric_min_eigenvalue"] = d.metric_min_eigenvalue;
  j["j_squared"] = d.j_squared;
  j["compatibility"] = d.compatibility;
  j["has_j"] = d.has_j;
  j["passed"] = d.passed;
  return j;
}

// pointwise state shared by analyze, proofcheck and scan
struct Analysis {
  manifold::CurvaturePackage pkg;
  std::optional<bochner::BochnerPackage> bp;
  std::optional<cframe::AdaptedFrame> frame;
  std::optional<verify::Classification> cls;
  std::vector<std::string> warnings;
};

Analysis analyze_chart(const manifold::ChartManifold& m,
                       std::span<const double> point, double tol) {
  Analysis a{manifold::curvature_package(m, point)};
  if (!a.pkg.j) {
    a.warnings.push_back(
        "chart carries no almost complex structure; the rigidity test is skipped");
    return a;
  }
  a.bp = bochner::bochner_package(a.pkg);
  a.cls = verify::classify(a.pkg, tol);
  try {
    auto base = cframe::adapted_frame(a.pkg.g, *a.pkg.j);
    // the gate only guards against grossly non-hybrid data, so it stays loose
    auto fr = cframe::diagonalize_q(a.bp->q, a.pkg.g, *a.pkg.j, base,
                                    std::max(tol, 1e-6));
    cframe::complexify(fr);
    a.frame = std::move(fr);
  } catch (const cframe::FrameError& e) {
    a.warnings.push_back(std::string("frame: ") + e.what());
  }
  return a;
}

ordered_json curvature_json(const Analysis& a) {
  ordered_json c;
  c["riemann_norm"] = tensor::max_norm(a.pkg.riemann);
  c["ricci_norm"] = tensor::max_norm(a.pkg.ricci);
  c["scalar"] = a.pkg.scalar;
  c["nabla_riemann_norm"] = tensor::max_norm(a.pkg.nabla_riemann);
  c["second_bianchi_defect"] = manifold::second_bianchi_defect(a.pkg);
  return c;
}

ordered_json bochner_json(const Analysis& a, double tol) {
  if (!a.bp) return ordered_json();
  ordered_json b;
  b["b_norm"] = a.bp->b_norm;
  b["riemann_norm"] = a.bp->riemann_norm;
  b["relative"] = a.bp->b_norm / (1.0 + a.bp->riemann_norm);
  ordered_json r;
  r["hybrid_ricci"] = a.bp->residuals.hybrid_ricci;
  r["trace_identity"] = a.bp->residuals.trace_identity;
  r["ah1"] = a.bp->residuals.ah1;
  r["q_hybrid"] = a.bp->residuals.q_hybrid;
  r["q_symmetric"] = a.bp->residuals.q_symmetric;
  r["tolerance"] = tol;
  b["residuals"] = r;
  return b;
}

ordered_json frame_json(const Analysis& a) {
  if (!a.frame) return ordered_json();
  ordered_json f;
  f["mu"] = a.frame->mu;
  f["mu_cluster"] = a.frame->mu_cluster;
  f["gram_defect"] = cframe::frame_gram_defect(*a.frame, a.pkg.g);
  f["j_defect"] = cframe::frame_j_defect(*a.frame, *a.pkg.j);
  f["q_defect"] = cframe::frame_q_defect(*a.frame, a.bp->q);
  return f;
}

// worst closed-form value of every step over all ordered index triples
ordered_json proof_json_chart(const Analysis& a, double tol,
                              std::vector<std::string>& warnings) {
  if (!a.frame) return ordered_json();
  const int n = a.pkg.n;
  if (n < 3) {
    warnings.push_back("proof steps need n >= 3; chart has n = " +
                       std::to_string(n));
    return ordered_json();
  }
  ordered_json steps = ordered_json::array();
  int triples = 0;
  for (auto step : proof::all_steps()) {
    double worst = -1.0;
    std::array<int, 3> at{0, 1, 2};
    bool usable = true;
    triples = 0;
    for (int x = 0; x < n && usable; ++x)
      for (int y = 0; y < n && usable; ++y)
        for (int z = 0; z < n && usable; ++z) {
          if (x == y || x == z || y == z) continue;
          ++triples;
          try {
            double v = proof::proof_step_residual(step, *a.frame, a.pkg, x, y, z);
            if (v > worst) {
              worst = v;
              at = {x, y, z};
            }
          } catch (const std::invalid_argument& e) {
            warnings.push_back(std::string("proof step ") + proof::step_name(step) +
                               ": " + e.what());
            usable = false;
          }
        }
    if (!usable) continue;
    ordered_json s;
    s["step"] = proof::step_name(step);
    s["max_abs"] = worst;
    s["argmax"] = ordered_json::array({at[0], at[1], at[2]});
    steps.push_back(std::move(s));
  }
  ordered_json p;
  p["tolerance"] = tol;
  p["triples"] = triples;
  p["steps"] = std::move(steps);
  return p;
}

ordered_json verdict_json(const Analysis& a) {
  ordered_json v;
  std::vector<std::string> warnings = a.warnings;
  if (!a.cls) {
    v["classification"] = "not-applicable";
    v["exit_code"] = 0;
    v["warnings"] = warnings;
    return v;
  }
  v["classification"] = a.cls->verdict;
  v["bochner0"] = a.cls->bochner0;
  v["kahler"] = a.cls->kahler;
  v["flat"] = a.cls->flat;
  v["b_norm"] = a.cls->b_norm;
  v["r_norm"] = a.cls->r_norm;
  v["nabla_j_norm"] = a.cls->nabla_j_norm;
  v["tolerance"] = a.cls->tol;
  v["exit_code"] = a.cls->verdict == "violation-candidate" ? 2 : 0;
  warnings.insert(warnings.end(), a.cls->warnings.begin(), a.cls->warnings.end());
  v["warnings"] = warnings;
  return v;
}

ordered_json oracle_proof_json(const proof::OracleReport& rep) {
  ordered_json steps = ordered_json::array();
  for (const auto& sc : rep.steps) {
    ordered_json s;
    s["step"] = sc.step;
    s["constant"] = cx_json(sc.constant);
    s["aux"] = ordered_json::array({cx_json(sc.aux[0]), cx_json(sc.aux[1])});
    s["worst_rel"] = sc.worst_rel;
    s["draws"] = sc.draws;
    s["uninformative"] = sc.uninformative;
    steps.push_back(std::move(s));
  }
  ordered_json p;
  p["n"] = rep.n;
  p["seeds"] = rep.seeds;
  p["worst_rel"] = rep.worst_rel;
  p["tolerance"] = 1e-9;
  p["passed"] = rep.passed;
  p["steps"] = std::move(steps);
  return p;
}

}  // namespace

manifold::ChartManifold load_manifold(const std::string& path,
                                      std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw CliError("config: cannot open " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw CliError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw CliError("config: top level must be an object");

  if (doc.contains("zoo")) {
    for (const auto& item : doc.items())
      if (item.key() != "zoo" && item.key() != "params")
        throw CliError("config: unknown key \"" + item.key() + "\" beside zoo");
    if (!doc["zoo"].is_string()) throw CliError("config: zoo must be a string");
    manifold::ZooParams params;
    if (doc.contains("params")) {
      const auto& p = doc["params"];
      if (!p.is_object()) throw CliError("config: params must be an object");
      for (const auto& item : p.items()) {
        const std::string& key = item.key();
        try {
          if (key == "n")
            params.n = item.value().get<int>();
          else if (key == "dim")
            params.dim = item.value().get<int>();
          else if (key == "radius")
            params.radius = item.value().get<double>();
          else
            throw CliError("config: params." + key + " is not a known parameter");
        } catch (const nlohmann::json::exception& e) {
          throw CliError("config: params." + key + ": " + e.what());
        }
      }
    }
    return manifold::make_zoo(doc["zoo"].get<std::string>(), params);
  }

  for (const auto& item : doc.items()) {
    const std::string& key = item.key();
    if (key != "dim" && key != "metric" && key != "J" && key != "name" &&
        key != "point")
      throw CliError("config: unknown key \"" + key + "\"");
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    throw CliError("config: dim must be an integer");
  const int dim = doc["dim"].get<int>();
  if (dim <= 0) throw CliError("config: dim must be positive");
  if (dim % 2 != 0) throw CliError("config: dim must be even");
  if (!doc.contains("metric")) throw CliError("config: metric is required");

  manifold::ChartManifold m;
  if (doc.contains("name") && !doc["name"].is_string())
    throw CliError("config: name must be a string");
  m.name = doc.contains("name") ? doc["name"].get<std::string>()
                                : std::string("config");
  m.dim = dim;
  m.metric = parse_matrix(doc["metric"], "metric", dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const auto upper = doc["metric"][i][j].get<std::string>();
      const auto lower = doc["metric"][j][i].get<std::string>();
      if (upper != lower) {
        if (warnings)
          warnings->push_back("config: " + matrix_path("metric", j, i) +
                              " differs from " + matrix_path("metric", i, j) +
                              "; the upper triangle entry is used");
        m.metric[j][i] = m.metric[i][j];
      }
    }
  if (doc.contains("J")) m.j = parse_matrix(doc["J"], "J", dim);
  if (doc.contains("point")) {
    if (!doc["point"].is_array() || static_cast<int>(doc["point"].size()) != dim)
      throw CliError("config: point must list " + std::to_string(dim) +
                     " coordinates");
    try {
      m.default_point = doc["point"].get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw CliError(std::string("config: point: ") + e.what());
    }
  } else {
    m.default_point.assign(dim, 0.0);
  }
  return m;
}

std::string run(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  ordered_json structure;
  structure["tool"] = kToolName;
  structure["version"] = kToolVersion;
  structure["input"] = input_echo(cfg);
  structure["chart"] = ordered_json();
  structure["dim"] = ordered_json();
  structure["point"] = ordered_json();
  structure["diagnostics"] = ordered_json();
  structure["warnings"] = ordered_json::array();

  ordered_json curvature, bochner, frame, proofj, verdict, timings;

  const bool oracle_mode =
      cfg.mode == "synthetic" ||
      (cfg.mode == "proofcheck" && cfg.zoo.empty() && cfg.config_path.empty());

  if (oracle_mode) {
    if (cfg.seeds < 1) throw CliError("--seeds must be at least 1");
    if (cfg.n < 3) throw CliError("the synthetic checks need --n >= 3");
    const auto t1 = Clock::now();
    auto rep = proof::run_synthetic_oracle(cfg.seeds, cfg.n, cfg.seed);
    timings["oracle_ms"] = ms_since(t1);
    proofj = oracle_proof_json(rep);
    verdict["classification"] = rep.passed ? "consistent" : "violation-candidate";
    verdict["exit_code"] = rep.passed ? 0 : 2;
    verdict["warnings"] = ordered_json::array();
  } else if (cfg.mode == "analyze" || cfg.mode == "proofcheck" ||
             cfg.mode == "scan") {
    auto ctx = resolve_chart(cfg);
    structure["chart"] = ctx.m.name;
    structure["dim"] = ctx.m.dim;
    structure["point"] = ctx.point;
    auto diags = manifold::validate(ctx.m, ctx.point, cfg.tol);
    structure["diagnostics"] = diag_json(diags);
    if (!diags.passed)
      ctx.warnings.push_back("structure validation failed at the point");
    structure["warnings"] = ctx.warnings;

    const auto t1 = Clock::now();
    Analysis a = analyze_chart(ctx.m, ctx.point, cfg.tol);
    timings["package_ms"] = ms_since(t1);

    curvature = curvature_json(a);
    bochner = bochner_json(a, cfg.tol);
    frame = frame_json(a);
    if (cfg.mode != "scan") proofj = proof_json_chart(a, cfg.tol, a.warnings);
    if (cfg.mode == "scan") {
      const auto t2 = Clock::now();
      auto rep = verify::neighborhood_scan(ctx.m, ctx.point, cfg.radius, cfg.grid);
      timings["scan_ms"] = ms_since(t2);
      ordered_json s;
      s["radius"] = cfg.radius;
      s["grid"] = cfg.grid;
      s["requested"] = rep.requested;
      s["sampled"] = rep.sampled;
      s["clipped"] = rep.clipped;
      s["max_riemann_norm"] = rep.max_r_norm;
      s["worst_point"] = rep.worst_point;
      curvature["scan"] = std::move(s);
    }
    verdict = verdict_json(a);
  } else {
    throw CliError("unknown mode \"" + cfg.mode + "\"");
  }

  timings["total_ms"] = ms_since(t0);

  ordered_json report;
  report["structure"] = std::move(structure);
  report["curvature"] = std::move(curvature);
  report["bochner"] = std::move(bochner);
  report["frame"] = std::move(frame);
  report["proof"] = std::move(proofj);
  report["verdict"] = std::move(verdict);
  report["timings"] = std::move(timings);
  return report.dump(2) + "\n";
}

int exit_code_for(const std::string& report_json) {
  try {
    auto rep = nlohmann::json::parse(report_json);
    return rep.at("verdict").value("exit_code", 0);
  } catch (const nlohmann::json::exception&) {
    return 1;
  }
}

std::string summary_text(const std::string& report_json) {
  nlohmann::json rep;
  try {
    rep = nlohmann::json::parse(report_json);
  } catch (const nlohmann::json::exception&) {
    return "summary unavailable: report is not valid JSON\n";
  }
  std::ostringstream os;
  const auto& st = rep["structure"];
  os << st.value("tool", "?") << " " << st.value("version", "?") << "  mode="
     << st["input"].value("mode", "?");
  if (st.contains("chart") && st["chart"].is_string())
    os << "  chart=" << st["chart"].get<std::string>() << "  dim="
       << st.value("dim", 0);
  os << "\n";
  if (rep["curvature"].is_object()) {
    const auto& c = rep["curvature"];
    os << "curvature: |R| = " << c.value("riemann_norm", 0.0)
       << "  tau = " << c.value("scalar", 0.0) << "\n";
    if (c.contains("scan")) {
      const auto& s = c["scan"];
      os << "scan: max |R| = " << s.value("max_riemann_norm", 0.0) << " over "
         << s.value("sampled", 0) << " nodes (" << s.value("clipped", 0)
         << " clipped)\n";
    }
  }
  if (rep["bochner"].is_object())
    os << "bochner: |B| = " << rep["bochner"].value("b_norm", 0.0)
       << "  relative = " << rep["bochner"].value("relative", 0.0) << "\n";
  if (rep["proof"].is_object() && rep["proof"].contains("passed"))
    os << "oracle: n = " << rep["proof"].value("n", 0) << "  seeds = "
       << rep["proof"].value("seeds", 0) << "  worst_rel = "
       << rep["proof"].value("worst_rel", 0.0)
       << (rep["proof"].value("passed", false) ? "  passed" : "  FAILED") << "\n";
  const auto& v = rep["verdict"];
  os << "verdict: " << v.value("classification", "?") << " (exit "
     << v.value("exit_code", 0) << ")\n";
  for (const auto& w : v.value("warnings", std::vector<std::string>{}))
    os << "warning: " << w << "\n";
  return os.str();
}

int main_entry(int argc, const char* const* argv) {
  RunConfig cfg;
  std::string point_csv;

  CLI::App app{"curvature laboratory for almost Hermitian charts"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  auto add_chart_opts = [&](CLI::App* sc) {
    auto* z = sc->add_option("--zoo", cfg.zoo, "zoo chart name");
    auto* c = sc->add_option("--config", cfg.config_path, "manifold config JSON");
    z->excludes(c);
    c->excludes(z);
    sc->add_option("--n", cfg.n, "complex dimension for zoo charts");
    sc->add_option("--point", point_csv, "comma separated chart coordinates");
    sc->add_option("--tol", cfg.tol, "residual tolerance")->capture_default_str();
    sc->add_option("--out", cfg.out_path, "write the JSON report here");
  };

  auto* analyze = app.add_subcommand("analyze", "full pointwise analysis");
  add_chart_opts(analyze);

  auto* proofcheck = app.add_subcommand(
      "proofcheck", "identity residuals per reduction step; runs the synthetic "
                    "oracle when no chart is given");
  add_chart_opts(proofcheck);
  proofcheck->add_option("--seeds", cfg.seeds, "synthetic draw count")->capture_default_str();
  proofcheck->add_option("--seed", cfg.seed, "base random seed")->capture_default_str();

  auto* scan = app.add_subcommand("scan",
                                  "curvature maximum over a grid around the point");
  add_chart_opts(scan);
  scan->add_option("--radius", cfg.radius, "half width of the scan cube")->capture_default_str();
  scan->add_option("--grid", cfg.grid, "grid nodes per axis")->capture_default_str();

  auto* synthetic =
      app.add_subcommand("synthetic", "synthetic oracle over admissible draws");
  synthetic->add_option("--n", cfg.n, "complex dimension of the draws")->capture_default_str();
  synthetic->add_option("--seeds", cfg.seeds, "number of draws")->capture_default_str();
  synthetic->add_option("--seed", cfg.seed, "base random seed")->capture_default_str();
  synthetic->add_option("--out", cfg.out_path, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  cfg.mode = app.get_subcommands().front()->get_name();
  try {
    if (!point_csv.empty()) cfg.point = parse_point_csv(point_csv);
    const std::string report = run(cfg);
    const int code = exit_code_for(report);
    if (!cfg.out_path.empty()) {
      std::ofstream out(cfg.out_path);
      if (!out) throw CliError("cannot write " + cfg.out_path);
      out << report;
      std::cout << summary_text(report);
    } else {
      std::cout << report;
      std::cerr << summary_text(report);
    }
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bochnerlab::cli
