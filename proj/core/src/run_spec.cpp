#include "polygame/run_spec.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "polygame/counting.hpp"
#include "polygame/errors.hpp"
#include "polygame/mwu.hpp"
#include "polygame/omd.hpp"

namespace polygame {
namespace {

using nlohmann::ordered_json;

ordered_json parse_json(const std::string& text, const char* what) {
  ordered_json j = ordered_json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    throw ConfigError(std::string(what) + ": malformed JSON");
  }
  return j;
}

Graph graph_from_json(const ordered_json& j, const char* where) {
  if (!j.contains("edges") || !j["edges"].is_array()) {
    throw ConfigError(std::string(where) + ": missing \"edges\" array");
  }
  std::vector<std::pair<int, int>> edges;
  int max_vertex = -1;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw ConfigError(std::string(where) + ": each edge must be [u, v]");
    }
    const int u = e[0].get<int>();
    const int v = e[1].get<int>();
    edges.emplace_back(u, v);
    max_vertex = std::max({max_vertex, u, v});
  }
  const int n = j.contains("n") ? j["n"].get<int>() : max_vertex + 1;
  return Graph(n, edges);
}

SubmodularOracle oracle_from_json(const ordered_json& j) {
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError("oracle: missing \"kind\"");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "uniform") {
    if (!j.contains("m") || !j.contains("k")) {
      throw ConfigError("oracle(uniform): needs \"m\" and \"k\"");
    }
    return SubmodularOracle::uniform(j["m"].get<int>(), j["k"].get<int>());
  }
  if (kind == "cardinality") {
    if (!j.contains("g") || !j["g"].is_array()) {
      throw ConfigError("oracle(cardinality): needs the profile array \"g\"");
    }
    Vec g = j["g"].get<Vec>();
    if (g.size() < 2) throw ConfigError("oracle(cardinality): profile needs g(0)..g(m), m >= 1");
    const int m = static_cast<int>(g.size()) - 1;
    return SubmodularOracle::cardinality(GroundSet(m), std::move(g));
  }
  if (kind == "graphic") {
    return SubmodularOracle::graphic(graph_from_json(j, "oracle(graphic)"));
  }
  if (kind == "partition") {
    if (!j.contains("m") || !j.contains("blocks") || !j.contains("capacities")) {
      throw ConfigError("oracle(partition): needs \"m\", \"blocks\", \"capacities\"");
    }
    return SubmodularOracle::partition(GroundSet(j["m"].get<int>()),
                                       j["blocks"].get<std::vector<std::vector<int>>>(),
                                       j["capacities"].get<std::vector<int>>());
  }
  if (kind == "explicit") {
    if (!j.contains("m") || !j.contains("values") || !j["values"].is_array()) {
      throw ConfigError("oracle(explicit): needs \"m\" and \"values\" (all 2^m subset values)");
    }
    return SubmodularOracle::explicit_table(GroundSet(j["m"].get<int>()), j["values"].get<Vec>());
  }
  throw ConfigError("oracle: unknown kind \"" + kind + "\"");
}

StrategyPolytope polytope_from_json(const ordered_json& j, const char* name) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError(std::string(name) + ": polytope needs a string \"kind\"");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "vertices") {
    if (!j.contains("vertices") || !j["vertices"].is_array()) {
      throw ConfigError(std::string(name) + "(vertices): missing \"vertices\" array");
    }
    return StrategyPolytope::explicit_vertices(j["vertices"].get<std::vector<Vec>>());
  }
  if (kind == "matroid") {
    if (!j.contains("oracle")) {
      throw ConfigError(std::string(name) + "(matroid): missing \"oracle\"");
    }
    return StrategyPolytope::matroid_bases(oracle_from_json(j["oracle"]));
  }
  if (kind == "spanning-trees") {
    return StrategyPolytope::spanning_trees(graph_from_json(j, name));
  }
  throw ConfigError(std::string(name) + ": unknown polytope kind \"" + kind + "\"");
}

LossMatrix loss_from_json(const ordered_json& j, int rows, int cols) {
  if (j.is_object() && j.contains("identity")) {
    return LossMatrix::identity(j["identity"].get<int>());
  }
  if (j.is_object() && j.contains("diagonal")) {
    return LossMatrix::diagonal(j["diagonal"].get<Vec>());
  }
  if (j.is_array()) {
    const auto data = j.get<std::vector<Vec>>();
    if (data.empty()) throw ConfigError("L: empty matrix");
    Vec flat;
    for (const Vec& row : data) {
      if (row.size() != data.front().size()) throw ConfigError("L: ragged matrix");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return LossMatrix(static_cast<int>(data.size()), static_cast<int>(data.front().size()),
                      std::move(flat));
  }
  (void)rows;
  (void)cols;
  throw ConfigError("L: expected a matrix, {\"identity\": m}, or {\"diagonal\": [...]}");
}

ordered_json vec_json(const Vec& v) { return ordered_json(v); }

}  // namespace

Game load_game_json(const std::string& json_text) {
  const ordered_json j = parse_json(json_text, "game");
  if (!j.contains("P") || !j.contains("Q") || !j.contains("L")) {
    throw ConfigError("game: needs \"P\", \"Q\" and \"L\"");
  }
  StrategyPolytope P = polytope_from_json(j["P"], "P");
  StrategyPolytope Q = polytope_from_json(j["Q"], "Q");
  LossMatrix L = loss_from_json(j["L"], P.dim(), Q.dim());
  return Game(std::move(P), std::move(Q), std::move(L));
}

Game load_game_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("game file not readable: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_game_json(ss.str());
}

std::string to_json_string(const EquilibriumCertificate& cert) {
  ordered_json j;
  j["solver"] = cert.solver;
  j["value"] = cert.value;
  j["primal"] = cert.primal;
  j["dual"] = cert.dual;
  j["gap"] = cert.gap;
  if (cert.gap_bound.has_value()) {
    j["gap_bound"] = *cert.gap_bound;
  } else {
    j["gap_bound"] = nullptr;
  }
  j["rounds"] = cert.rounds;
  j["epsilon"] = cert.epsilon;
  j["regret"] = cert.regret;
  j["regret_bound"] = cert.regret_bound;
  j["loss_shift"] = cert.loss_shift;
  j["approx_marginal"] = cert.approx_marginal;
  j["approx_response"] = cert.approx_response;
  j["x"] = vec_json(cert.x);
  j["y"] = vec_json(cert.y);
  return j.dump(2) + "\n";
}

EquilibriumCertificate certificate_from_json(const std::string& json_text) {
  const ordered_json j = parse_json(json_text, "certificate");
  EquilibriumCertificate cert;
  cert.solver = j.value("solver", std::string());
  cert.value = j.value("value", 0.0);
  cert.primal = j.value("primal", 0.0);
  cert.dual = j.value("dual", 0.0);
  cert.gap = j.value("gap", 0.0);
  if (j.contains("gap_bound") && j["gap_bound"].is_number()) {
    cert.gap_bound = j["gap_bound"].get<double>();
  }
  cert.rounds = j.value("rounds", 0);
  cert.epsilon = j.value("epsilon", 0.0);
  cert.regret = j.value("regret", 0.0);
  cert.regret_bound = j.value("regret_bound", 0.0);
  cert.loss_shift = j.value("loss_shift", 0.0);
  cert.approx_marginal = j.value("approx_marginal", 0.0);
  cert.approx_response = j.value("approx_response", 0.0);
  cert.x = j.value("x", Vec{});
  cert.y = j.value("y", Vec{});
  return cert;
}

std::string to_json_string(const ProjectionResult& result) {
  ordered_json j;
  j["point"] = vec_json(result.point);
  j["partition"] = result.partition;
  j["levels"] = vec_json(result.levels);
  ordered_json steps = ordered_json::array();
  for (const ProjectionTraceStep& s : result.trace) {
    ordered_json step;
    step["iteration"] = s.iteration;
    step["fixed"] = s.fixed;
    step["level"] = s.level;
    step["inner_steps"] = s.inner_steps;
    steps.push_back(std::move(step));
  }
  j["trace"] = std::move(steps);
  j["inner_steps"] = result.inner_steps;
  return j.dump(2) + "\n";
}

std::string to_json_string(const SneVerdict& verdict) {
  ordered_json j;
  j["is_sne"] = verdict.is_sne;
  j["blocks"] = verdict.blocks;
  j["levels"] = vec_json(verdict.levels);
  j["equal_base_cost"] = verdict.equal_base_cost;
  j["bases_meet_blocks"] = verdict.bases_meet_blocks;
  j["mass_matches_rank"] = verdict.mass_matches_rank;
  j["circuits_within_blocks"] = verdict.circuits_within_blocks;
  j["base_cost_min"] = verdict.base_cost_min;
  j["base_cost_max"] = verdict.base_cost_max;
  if (verdict.witness_base.has_value()) {
    j["witness_base"] = mask_to_indices(*verdict.witness_base);
  } else {
    j["witness_base"] = nullptr;
  }
  if (verdict.witness_circuit.has_value()) {
    j["witness_circuit"] = mask_to_indices(*verdict.witness_circuit);
  } else {
    j["witness_circuit"] = nullptr;
  }
  j["witness_block"] = verdict.witness_block;
  return j.dump(2) + "\n";
}

namespace {

void write_text_file(const std::string& dir, const std::string& name, const std::string& text) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path p = fs::path(dir) / name;
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write artifact: " + p.string());
  out << text;
}

CountingOracle counting_oracle_for(const StrategyPolytope& P) {
  switch (P.kind()) {
    case StrategyPolytope::Kind::SpanningTrees:
      return CountingOracle::matrix_tree(P.graph());
    case StrategyPolytope::Kind::MatroidBases:
      if (P.oracle().kind() == SubmodularOracle::Kind::Uniform) {
        return CountingOracle::k_subsets(P.dim(), P.oracle().uniform_k());
      }
      return CountingOracle::enumeration(P.vertices());
    case StrategyPolytope::Kind::ExplicitVertices:
      return CountingOracle::enumeration(P.vertices());
  }
  throw ConfigError("mwu solver: unsupported polytope kind");
}

std::string summary_line(const RunSpec& spec, const RunOutcome& o) {
  std::ostringstream os;
  os << "solver=" << spec.solver;
  if (spec.solver == "omd") os << " map=" << spec.map;
  os << " rounds=" << o.rounds << " value=" << o.value << " gap=" << o.gap
     << " exit=" << o.exit_code;
  return os.str();
}

}  // namespace

RunOutcome run_spec(const RunSpec& spec) {
  RunOutcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Game game = load_game_file(spec.game_path);

    if (spec.solver == "omd") {
      OmdConfig cfg;
      if (spec.map == "euclidean") {
        cfg.map = MirrorMap::euclidean();
      } else if (spec.map == "entropy") {
        cfg.map = MirrorMap::entropy();
      } else {
        throw ConfigError("unknown mirror map \"" + spec.map + "\"");
      }
      cfg.epsilon = spec.epsilon;
      cfg.rounds = spec.rounds;
      const OmdResult r = solve_nash_omd(game, cfg);
      out.certificate_json = to_json_string(r.certificate);
      out.trace_csv = r.trace.to_csv();
      out.value = r.certificate.value;
      out.gap = r.certificate.gap;
      out.rounds = r.certificate.rounds;
      out.exit_code = (out.gap <= spec.epsilon) ? 0 : 2;
    } else if (spec.solver == "mwu") {
      const CountingOracle oracle = counting_oracle_for(game.P);
      MwuConfig cfg;
      cfg.epsilon = spec.epsilon;
      cfg.rounds = spec.rounds;
      cfg.seed = spec.seed;
      cfg.approx_marginal = spec.approx_marginal;
      cfg.approx_response = spec.approx_response;
      const MwuResult r = solve_nash_mwu(game, oracle, cfg);
      out.certificate_json = to_json_string(r.certificate);
      out.trace_csv = r.trace.to_csv();
      out.value = r.certificate.value;
      out.gap = r.certificate.gap;
      out.rounds = r.certificate.rounds;
      out.exit_code = (out.gap <= spec.epsilon) ? 0 : 2;
    } else if (spec.solver == "sne") {
      if (!game.P.is_base_polytope()) {
        throw ConfigError("sne solver requires a matroid-backed row polytope");
      }
      SneVerdict verdict;
      const std::optional<Vec> x = solve_sne_diagonal(game.P.oracle(), game.L, &verdict);
      ordered_json report;
      report["found"] = x.has_value();
      if (x.has_value()) {
        report["x"] = *x;
        EquilibriumCertificate cert = certify(game, *x, *x, 1e-6);
        cert.solver = "sne";
        cert.epsilon = spec.epsilon;
        out.certificate_json = to_json_string(cert);
        out.value = cert.value;
        out.gap = cert.gap;
      }
      report["verdict"] = ordered_json::parse(to_json_string(verdict));
      out.extra_json = report.dump(2) + "\n";
      out.exit_code = 0;  // a "no SNE exists" proof is also a successful report
    } else if (spec.solver == "lp") {
      const GameValue gv = lp_value_by_enumeration(game);
      EquilibriumCertificate cert = certify(game, gv.x, gv.y, 1e-7);
      cert.solver = "lp";
      cert.epsilon = spec.epsilon;
      out.certificate_json = to_json_string(cert);
      out.value = gv.value;
      out.gap = gv.gap;
      out.exit_code = 0;
    } else {
      throw ConfigError("unknown solver \"" + spec.solver + "\" (use omd|mwu|sne|lp)");
    }

    if (!spec.out_dir.empty()) {
      if (!out.certificate_json.empty()) {
        write_text_file(spec.out_dir, "certificate.json", out.certificate_json);
      }
      if (!out.trace_csv.empty()) write_text_file(spec.out_dir, "trace.csv", out.trace_csv);
      if (!out.extra_json.empty()) write_text_file(spec.out_dir, "report.json", out.extra_json);
    }
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.message = e.what();
    const auto end = std::chrono::steady_clock::now();
    out.wall_ms = std::chrono::duration<double, std::milli>(end - start).count();
    return out;
  }
  const auto end = std::chrono::steady_clock::now();
  out.wall_ms = std::chrono::duration<double, std::milli>(end - start).count();
  out.message = summary_line(spec, out);
  return out;
}

int compare_specs(const std::vector<RunSpec>& specs, std::ostream& os) {
  if (specs.size() < 2) {
    os << "compare: need at least two run specs\n";
    return 1;
  }
  // All specs must target the same game (byte-identical description).
  std::string first_game;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    std::ifstream in(specs[i].game_path, std::ios::binary);
    if (!in) {
      os << "compare: game file not readable: " << specs[i].game_path << "\n";
      return 1;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (i == 0) {
      first_game = ss.str();
    } else if (ss.str() != first_game) {
      os << "compare: specs reference different games\n";
      return 1;
    }
  }

  os << "solver,map,rounds,wall_ms,value,gap,exit\n";
  char buf[64];
  int worst = 0;
  for (const RunSpec& spec : specs) {
    const RunOutcome o = run_spec(spec);
    worst = std::max(worst, o.exit_code == 1 ? 1 : 0);
    os << spec.solver << ',' << (spec.solver == "omd" ? spec.map : "") << ',' << o.rounds << ',';
    std::snprintf(buf, sizeof(buf), "%.3f", o.wall_ms);
    os << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", o.value);
    os << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", o.gap);
    os << buf << ',' << o.exit_code << '\n';
  }
  return worst;
}

}  // namespace polygame
