#include "hqvp/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hqvp/errors.hpp"
#include "hqvp/scenarios.hpp"

namespace hqvp {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

Vec2 read_vec(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_fail(std::string(what) + " must be [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json write_vec(Vec2 v) { return json::array({v.x, v.y}); }

Sym2 read_operator(const json& j) {
  if (j.contains("P")) {
    const json& m = j["P"];
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 ||
        m[1].size() != 2) {
      parse_fail("P must be [[a, b], [b, c]]");
    }
    return symmetrize(m[0][0].get<double>(), m[0][1].get<double>(), m[1][0].get<double>(), m[1][1].get<double>());
  }
  if (j.contains("eigenvalues")) {
    const Vec2 e = read_vec(j["eigenvalues"], "eigenvalues");
    return rotated_operator(e.x, e.y, j.value("rotation_deg", 0.0));
  }
  parse_fail("agent needs P or eigenvalues");
}

json write_operator(Sym2 P) { return json::array({json::array({P.a, P.b}), json::array({P.b, P.c})}); }

ProximityMetric read_agent(const json& j) {
  if (!j.is_object() || !j.contains("position")) parse_fail("agent needs a position");
  return {read_operator(j), j.value("mu", 0.0), read_vec(j["position"], "position")};
}

json write_agent(const ProximityMetric& m) {
  return {{"position", write_vec(m.position())}, {"P", write_operator(m.P())}, {"mu", m.mu()}};
}

ConvexDomain read_domain(const json& j) {
  if (j.contains("rectangle")) {
    const json& r = j["rectangle"];
    if (!r.is_array() || r.size() != 4) parse_fail("rectangle must be [xmin, ymin, xmax, ymax]");
    return ConvexDomain::rectangle(r[0].get<double>(), r[1].get<double>(), r[2].get<double>(), r[3].get<double>());
  }
  if (j.contains("polygon")) {
    std::vector<Vec2> pts;
    for (const json& v : j["polygon"]) pts.push_back(read_vec(v, "polygon vertex"));
    return ConvexDomain(std::move(pts));
  }
  parse_fail("domain needs rectangle or polygon");
}

json write_domain(const ConvexDomain& d) {
  json poly = json::array();
  for (const Vec2& v : d.vertices()) poly.push_back(write_vec(v));
  return {{"polygon", poly}};
}

json write_run(const RunParams& run) {
  return {{"theta_count", run.theta_count}, {"phi_count", run.phi_count}, {"grid", run.grid}};
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
  try {
    if (!doc.is_object()) parse_fail("scenario must be a JSON object");
    if (!doc.contains("domain") || !doc.contains("agents")) parse_fail("scenario needs domain and agents");
    ConvexDomain domain = read_domain(doc["domain"]);
    std::vector<ProximityMetric> real;
    for (const json& a : doc["agents"]) real.push_back(read_agent(a));
    if (real.empty()) parse_fail("scenario needs at least one agent");

    ZerothSpec spec;
    std::vector<ProximityMetric> all;
    const json z = doc.value("zeroth", json{{"mode", "auto"}, {"kappa", 0.5}});
    const std::string mode = z.value("mode", "explicit");
    if (mode == "auto") {
      spec.automatic = true;
      double lambda0 = 0.0;
      if (z.contains("lambda0")) {
        spec.lambda0 = z["lambda0"].get<double>();
        lambda0 = *spec.lambda0;
      } else {
        spec.kappa = z.value("kappa", 0.5);
        lambda0 = *spec.kappa * min_operator_eigenvalue(real);
      }
      all.push_back(auto_zeroth(real, lambda0));
    } else if (mode == "explicit") {
      all.push_back(read_agent(z));
    } else {
      parse_fail("zeroth mode must be auto or explicit");
    }
    all.insert(all.end(), real.begin(), real.end());

    RunParams run;
    if (doc.contains("run")) {
      const json& r = doc["run"];
      run.theta_count = r.value("theta_count", run.theta_count);
      run.phi_count = r.value("phi_count", run.phi_count);
      run.grid = r.value("grid", run.grid);
    }
    std::optional<std::uint64_t> seed;
    if (doc.contains("seed")) seed = doc["seed"].get<std::uint64_t>();
    return ScenarioFile{doc.value("name", std::string{}), seed, spec, run, Scenario(std::move(domain), std::move(all))};
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const ScenarioFile& file) {
  json doc;
  doc["name"] = file.name;
  if (file.seed) doc["seed"] = *file.seed;
  doc["domain"] = write_domain(file.scenario.domain());
  json z = write_agent(file.scenario.zeroth());
  z["mode"] = "explicit";
  doc["zeroth"] = z;
  json agents = json::array();
  for (std::size_t i = 1; i <= file.scenario.size(); ++i) agents.push_back(write_agent(file.scenario.agent(i)));
  doc["agents"] = agents;
  doc["run"] = write_run(file.run);
  return doc.dump(2) + "\n";
}

std::string serialize_rotated_scenario(const std::string& name, std::optional<std::uint64_t> seed,
                                       const ConvexDomain& domain, const std::vector<RotatedAgent>& agents,
                                       double lambda0, const RunParams& run) {
  json doc;
  doc["name"] = name;
  if (seed) doc["seed"] = *seed;
  doc["domain"] = write_domain(domain);
  doc["zeroth"] = {{"mode", "auto"}, {"lambda0", lambda0}};
  json list = json::array();
  for (const auto& a : agents) {
    list.push_back({{"position", write_vec(a.position)},
                    {"eigenvalues", json::array({a.e1, a.e2})},
                    {"rotation_deg", a.rotation_deg},
                    {"mu", a.mu}});
  }
  doc["agents"] = list;
  doc["run"] = write_run(run);
  return doc.dump(2) + "\n";
}

std::string cells_to_json(const std::vector<Cell>& cells, std::optional<double> hole_area) {
  json doc;
  json list = json::array();
  for (const Cell& c : cells) {
    json slices = json::array();
    for (const auto& s : c.slices()) {
      json segs = json::array();
      for (const auto& seg : s.segments) {
        segs.push_back(json::array({write_vec(c.point(s, seg.from)), write_vec(c.point(s, seg.to))}));
      }
      json boundary = json::array();
      for (const auto& b : s.boundary) boundary.push_back(write_vec(c.point(s, b.rho)));
      slices.push_back({{"theta", s.theta}, {"segments", segs}, {"boundary", boundary}});
    }
    list.push_back({{"agent", c.agent()}, {"area", c.area()}, {"components", c.components()}, {"slices", slices}});
  }
  doc["cells"] = list;
  if (hole_area) doc["hole_area"] = *hole_area;
  return doc.dump() + "\n";
}

std::string topology_to_json(const std::vector<TopologyReport>& reports) {
  json list = json::array();
  for (const auto& r : reports) {
    json curve = json::array();
    for (const Vec2& p : r.enclosure.curve_absolute()) curve.push_back(write_vec(p));
    json entry{{"agent", r.agent},
               {"delta_bar", r.enclosure.delta_bar},
               {"eta_lower", r.enclosure.eta_lower},
               {"region_area", r.enclosure.region_area()},
               {"superset", r.superset},
               {"enclosed", r.enclosed},
               {"curve", curve}};
    if (r.true_neighbors) entry["true_neighbors"] = *r.true_neighbors;
    list.push_back(entry);
  }
  return json{{"topology", list}}.dump() + "\n";
}

std::string complexity_to_json(const DistributedRun& run, const std::vector<AgentComplexity>& report) {
  json list = json::array();
  for (std::size_t k = 0; k < report.size(); ++k) {
    const auto& c = report[k];
    list.push_back({{"agent", c.agent},
                    {"radius", run.agents[k].radius},
                    {"heard", c.heard},
                    {"used", run.agents[k].used},
                    {"zeta", c.zeta},
                    {"bootstrap_messages", c.bootstrap_messages},
                    {"discovery_messages", c.discovery_messages},
                    {"max_ray_messages", c.max_ray_messages},
                    {"mean_ray_messages", c.mean_ray_messages},
                    {"max_sort_size", c.max_sort_size},
                    {"within_bound", c.within_bound}});
  }
  json doc{{"mu0", run.bootstrap.mu0},
           {"lambda0", run.bootstrap.lambda0},
           {"flood_rounds", run.bootstrap.flood_rounds},
           {"average_rounds", run.bootstrap.average_rounds},
           {"ledger_entries", run.ledger.size()},
           {"agents", list}};
  return doc.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

}  // namespace hqvp
