// hqvp: command-line front end for partitions, topology reports, the
// distributed simulation, the grid oracle and SVG rendering.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hqvp/cell.hpp"
#include "hqvp/distsim.hpp"
#include "hqvp/errors.hpp"
#include "hqvp/io.hpp"
#include "hqvp/oracle.hpp"
#include "hqvp/scenarios.hpp"
#include "hqvp/svg.hpp"
#include "hqvp/topology.hpp"
#include "hqvp/verify.hpp"

namespace fs = std::filesystem;
using namespace hqvp;

namespace {

struct Options {
  std::string scenario;
  std::size_t theta = 360;
  std::size_t phi = 720;
  std::size_t grid = 400;
  std::uint64_t seed = kFleetSeed;
  std::string out = ".";
  double kappa = 0.0;
  std::string radius = "auto";
  std::string zeroth = "file";
  std::vector<std::size_t> highlight;
  bool contours = false;
};

std::string out_path(const Options& o, const std::string& name) {
  fs::create_directories(o.out);
  return (fs::path(o.out) / name).string();
}

ScenarioFile load(const Options& o, const CLI::App& cmd) {
  ScenarioFile f = load_scenario(o.scenario);
  if (cmd.count("--theta")) f.run.theta_count = o.theta;
  if (cmd.count("--phi")) f.run.phi_count = o.phi;
  if (cmd.count("--grid")) f.run.grid = o.grid;
  return f;
}

int cmd_partition(const Options& o, const CLI::App& cmd) {
  const ScenarioFile f = load(o, cmd);
  const auto cells = compute_cells(f.scenario, f.run.theta_count);
  const HoleMask hole = coverage_hole(f.scenario, cells, f.run.grid);
  write_text_file(out_path(o, "cells.json"), cells_to_json(cells, hole.area()));
  std::printf("agent  area       components\n");
  for (const Cell& c : cells) std::printf("%5zu  %9.5f  %d\n", c.agent(), c.area(), c.components());
  std::printf("hole area %.5f (grid %zu)\n", hole.area(), f.run.grid);
  return 0;
}

int cmd_topology(const Options& o, const CLI::App& cmd) {
  const ScenarioFile f = load(o, cmd);
  const OwnerGrid oracle = rasterize(f.scenario, f.run.grid);
  std::vector<TopologyReport> reports;
  std::printf("agent  delta_bar   eta_lower  |superset| |enclosed| |neighbors|\n");
  for (std::size_t i = 1; i <= f.scenario.size(); ++i) {
    reports.push_back(topology_report(f.scenario, i, f.run.phi_count, &oracle));
    const auto& r = reports.back();
    std::printf("%5zu  %9.5f  %9.5f  %10zu %10zu %11zu\n", i, r.enclosure.delta_bar, r.enclosure.eta_lower,
                r.superset.size(), r.enclosed.size(), r.true_neighbors->size());
  }
  write_text_file(out_path(o, "topology.json"), topology_to_json(reports));
  return 0;
}

int cmd_distributed(const Options& o, const CLI::App& cmd) {
  const ScenarioFile f = load(o, cmd);
  DistributedConfig cfg;
  cfg.theta_count = f.run.theta_count;
  cfg.phi_count = f.run.phi_count;
  if (o.radius == "auto") {
    cfg.radius_mode = RadiusMode::Auto;
  } else if (o.radius == "inf") {
    cfg.radius_mode = RadiusMode::Infinite;
  } else {
    cfg.radius_mode = RadiusMode::Fixed;
    cfg.radius = std::stod(o.radius);
  }
  // Bootstrapping rebuilds agent 0 from the real agents, which only matches
  // files whose agent 0 is automatic.
  const bool bootstrap = o.zeroth == "bootstrap" || (o.zeroth == "file" && f.zeroth.automatic);
  cfg.zeroth = bootstrap ? ZerothSource::Bootstrap : ZerothSource::Scenario;
  if (cmd.count("--kappa")) {
    cfg.kappa = o.kappa;
  } else if (f.zeroth.kappa) {
    cfg.kappa = *f.zeroth.kappa;
  } else {
    std::vector<ProximityMetric> real(f.scenario.agents().begin() + 1, f.scenario.agents().end());
    cfg.kappa = lambda_min(f.scenario.zeroth().P()) / min_operator_eigenvalue(real);
  }
  const DistributedRun run = run_distributed_partition(f.scenario, cfg);
  const auto report = message_complexity_report(run);
  {
    std::ofstream ledger(out_path(o, "ledger.csv"));
    write_ledger_csv(run.ledger, ledger);
  }
  write_text_file(out_path(o, "distributed_cells.json"), cells_to_json(run.cells));
  write_text_file(out_path(o, "complexity.json"), complexity_to_json(run, report));
  std::printf("mu0 %.6g lambda0 %.6g flood rounds %zu averaging rounds %zu messages %zu\n", run.bootstrap.mu0,
              run.bootstrap.lambda0, run.bootstrap.flood_rounds, run.bootstrap.average_rounds, run.ledger.size());
  std::printf("agent  radius     heard  used  zeta   max/ray  bound\n");
  for (std::size_t k = 0; k < report.size(); ++k) {
    const auto& c = report[k];
    std::printf("%5zu  %9.5f  %5zu  %4zu  %5.3f  %7zu  %s\n", c.agent, run.agents[k].radius, c.heard,
                run.agents[k].used.size(), c.zeta, c.max_ray_messages, c.within_bound ? "ok" : "EXCEEDED");
  }
  return 0;
}

int cmd_oracle(const Options& o, const CLI::App& cmd) {
  const ScenarioFile f = load(o, cmd);
  const OwnerGrid grid = rasterize(f.scenario, f.run.grid);
  {
    std::ofstream pgm(out_path(o, "owner.pgm"));
    write_pgm(grid, pgm);
    std::ofstream csv(out_path(o, "owner.csv"));
    write_csv(grid, csv);
  }
  const auto adj = adjacency(grid);
  std::printf("agent  area       components  neighbors\n");
  for (std::size_t i = 0; i <= f.scenario.size(); ++i) {
    std::printf("%5zu  %9.5f  %10d  ", i, area(grid, i), component_count(grid, i));
    for (std::size_t l : adj[i]) std::printf("%zu ", l);
    std::printf("\n");
  }
  return 0;
}

int cmd_verify(const Options& o, const CLI::App& cmd) {
  const ScenarioFile f = load(o, cmd);
  bool ok = true;
  for (const auto& r : verify_scenario(f)) {
    std::printf("[%s] %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    ok = ok && r.passed;
  }
  if (!ok) throw Error(ErrorCode::VerificationFailure, "one or more invariants failed");
  return 0;
}

int cmd_render(const Options& o, const CLI::App& cmd) {
  const ScenarioFile f = load(o, cmd);
  const auto cells = compute_cells(f.scenario, f.run.theta_count);
  std::vector<NeighborEnclosure> enclosures;
  for (std::size_t i = 1; i <= f.scenario.size(); ++i) {
    if (o.highlight.empty() || std::find(o.highlight.begin(), o.highlight.end(), i) != o.highlight.end()) {
      enclosures.push_back(enclosure_curve(f.scenario, i, f.run.phi_count));
    }
  }
  RenderOptions ro;
  ro.highlight = o.highlight;
  ro.draw_contours = o.contours;
  const std::string path = out_path(o, fs::path(o.scenario).stem().string() + ".svg");
  write_text_file(path, render_svg(f.scenario, cells, enclosures, ro));
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

std::vector<RotatedAgent> fleet_rotated(std::uint64_t seed) {
  std::vector<RotatedAgent> out;
  const auto agents = fleet_agents(seed);
  for (std::size_t k = 0; k < agents.size(); ++k) {
    out.push_back({agents[k].position(), 8.0, 3.0, 15.0 * static_cast<double>(k + 1), 0.0});
  }
  return out;
}

int cmd_emit(const Options& o) {
  const auto domain = ConvexDomain::rectangle(-4.0, -4.0, 4.0, 4.0);
  for (double lambda0 : {1.7, 2.9}) {
    const std::string name = lambda0 < 2.0 ? "sec6_lambda17" : "sec6_lambda29";
    const std::string text = serialize_rotated_scenario(name, o.seed, domain, fleet_rotated(o.seed), lambda0, RunParams{});
    parse_scenario(text);  // refuse to ship a file that does not validate
    write_text_file(out_path(o, name + ".json"), text);
  }
  // The far component of agent 1 meets the long edge at a grazing angle and
  // needs quarter-degree rays to be resolved to grid precision.
  RunParams split_run;
  split_run.theta_count = 1440;
  const Scenario split = split_cell_scenario();
  write_text_file(out_path(o, "split_cell.json"), serialize_scenario({"split_cell", std::nullopt, {}, split_run, split}));
  std::printf("wrote built-in scenarios to %s (seed %llu)\n", o.out.c_str(), static_cast<unsigned long long>(o.seed));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heterogeneous quadratic Voronoi partitions"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c, bool needs_file) {
    if (needs_file) c->add_option("scenario", o.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    c->add_option("--theta", o.theta, "Rays per cell (default 360)");
    c->add_option("--phi", o.phi, "Enclosure curve samples (default 720)");
    c->add_option("--grid", o.grid, "Oracle grid resolution G (default 400)");
    c->add_option("--seed", o.seed, "Seed for generated positions");
    c->add_option("--out", o.out, "Output directory");
    c->add_option("--kappa", o.kappa, "lambda0 shrink factor in (0, 1)");
    c->add_option("--radius", o.radius, "Communication radius: auto, inf or a value");
  };

  auto* partition = app.add_subcommand("partition", "Centralized cells and coverage hole");
  auto* distributed = app.add_subcommand("distributed", "Message-passing run with ledger");
  auto* topology = app.add_subcommand("topology", "Neighbor supersets, enclosures and radius bounds");
  auto* oracle = app.add_subcommand("oracle", "Brute-force owner grid");
  auto* verify = app.add_subcommand("verify", "Run every cross-check; non-zero exit on failure");
  auto* render = app.add_subcommand("render", "SVG of cells, E_i and enclosure curves");
  auto* emit = app.add_subcommand("emit-builtins", "Write the built-in scenario files");
  for (auto* c : {partition, distributed, topology, oracle, verify, render}) common(c, true);
  common(emit, false);
  distributed
      ->add_option("--zeroth", o.zeroth,
                   "bootstrap (flood and average), scenario (agent 0 as given), or file (bootstrap when the "
                   "file's agent 0 is automatic)")
      ->check(CLI::IsMember({"bootstrap", "scenario", "file"}));
  render->add_option("--agents", o.highlight, "Agents whose E_i and enclosure are drawn");
  render->add_flag("--contours", o.contours, "Draw iso-lines of each agent's metric");

  CLI11_PARSE(app, argc, argv);

  try {
    if (partition->parsed()) return cmd_partition(o, *partition);
    if (distributed->parsed()) return cmd_distributed(o, *distributed);
    if (topology->parsed()) return cmd_topology(o, *topology);
    if (oracle->parsed()) return cmd_oracle(o, *oracle);
    if (verify->parsed()) return cmd_verify(o, *verify);
    if (render->parsed()) return cmd_render(o, *render);
    if (emit->parsed()) return cmd_emit(o);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == ErrorCode::VerificationFailure ? 3 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
