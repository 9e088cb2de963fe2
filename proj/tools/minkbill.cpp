// minkbill: exact shortest closed billiard trajectories in convex polytopes
// under polyhedral (possibly asymmetric) gauge norms.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "minkbill/body_io.hpp"
#include "minkbill/error.hpp"
#include "minkbill/oracle.hpp"
#include "minkbill/render.hpp"
#include "minkbill/simplex_form.hpp"
#include "minkbill/solver.hpp"
#include "minkbill/suites.hpp"

namespace {

using namespace minkbill;

constexpr const char* kVersion = "minkbill 0.1.0";

std::string fnv1a64_hex(const std::string& bytes) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Reporter {
  std::string command;
  std::string format = "text";
  std::string out_path;
  Json inputs = Json::array();
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void add_input(const std::string& path, const std::string& content) {
    inputs.push_back({{"path", path}, {"hash", fnv1a64_hex(content)}});
  }

  // Structured mode prints the full report; the payload alone is what must be
  // byte-identical across reruns, so timing sits outside it.
  void finish(const Json& payload, const std::string& text_summary) {
    if (format == "structured") {
      Json report;
      report["command"] = command;
      report["inputs"] = inputs;
      report["payload"] = payload;
      report["version"] = kVersion;
      report["timing_ms"] =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
              .count();
      std::cout << report.dump(2) << "\n";
    } else {
      std::cout << text_summary;
    }
  }
};

Body load_body_arg(Reporter& rep, const std::string& path, BodyRole role) {
  std::string content = read_text_file(path);
  rep.add_input(path, content);
  Json j;
  try {
    j = Json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    fail_input("JSON parse error in " + path + ": " + e.what());
  }
  return body_from_json(j, role);
}

void maybe_write(const Reporter& rep, const std::string& content) {
  if (!rep.out_path.empty()) write_text_file(rep.out_path, content);
}

int cmd_xi(Reporter& rep, const std::string& k_path, const std::string& t_arg, int max_m,
           int threads) {
  Body k = load_body_arg(rep, k_path, BodyRole::table);
  Body t = (t_arg == "polar:K") ? polar_dual(k) : load_body_arg(rep, t_arg, BodyRole::norm_body);
  SolverOptions opts;
  opts.max_m = max_m;
  opts.threads = threads;
  auto sol = shortest_trajectory(k, t, opts);
  Json payload = solution_to_json(sol);
  maybe_write(rep, payload.dump(2) + "\n");
  std::string text = "xi = " + rat_to_string(sol.xi) + " (" + rat_to_decimal(sol.xi) + ")\n";
  text += "bounces = " + std::to_string(sol.bounce_count) +
          (sol.bounce_count == 2 ? " (two-periodic)\n" : "\n");
  text += "trajectory:\n";
  for (size_t i = 0; i < sol.trajectory.points.size(); ++i) {
    text += "  q" + std::to_string(i) + " = (";
    for (size_t c = 0; c < sol.trajectory.points[i].size(); ++c) {
      if (c) text += ", ";
      text += rat_to_string(sol.trajectory.points[i][c]);
    }
    text += ")  |edge| = " + rat_to_string(sol.segment_lengths[i]) + "\n";
  }
  text += "pattern slots:";
  for (const auto& slot : sol.pattern.slots) {
    text += " {";
    for (size_t j = 0; j < slot.size(); ++j) text += (j ? "," : "") + std::to_string(slot[j]);
    text += "}";
  }
  text += "\ncertificate lambda (point,facet):";
  for (const auto& [key, v] : sol.fit.lambda)
    text += " (" + std::to_string(key.first) + "," + std::to_string(key.second) + ")=" +
            rat_to_string(v);
  text += "\n";
  rep.finish(payload, text);
  return 0;
}

int cmd_fit(Reporter& rep, const std::string& body_path, const std::string& points_path) {
  Body k = load_body_arg(rep, body_path, BodyRole::table);
  std::string content = read_text_file(points_path);
  rep.add_input(points_path, content);
  Json pj;
  try {
    pj = Json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    fail_input("JSON parse error in " + points_path + ": " + e.what());
  }
  std::vector<Vec> pts;
  for (const auto& q : pj) pts.push_back(point_from_json(q));
  auto fit = smallest_fitting_ratio(pts, k);
  Json payload;
  payload["alpha"] = rat_to_string(fit.alpha);
  payload["alpha_decimal"] = rat_to_decimal(fit.alpha);
  payload["translate"] = point_to_json(fit.translate);
  Json tdec = Json::array();
  for (const auto& c : fit.translate) tdec.push_back(rat_to_decimal(c));
  payload["translate_decimal"] = std::move(tdec);
  Json lam = Json::object();
  for (const auto& [key, v] : fit.lambda)
    lam[std::to_string(key.first) + "," + std::to_string(key.second)] = rat_to_string(v);
  payload["lambda"] = std::move(lam);
  maybe_write(rep, payload.dump(2) + "\n");
  rep.finish(payload, "alpha = " + rat_to_string(fit.alpha) + " (" + rat_to_decimal(fit.alpha) +
                          ")\n");
  return 0;
}

int cmd_polar(Reporter& rep, const std::string& body_path) {
  Body b = load_body_arg(rep, body_path, BodyRole::table);
  Json payload = body_to_json(polar_dual(b));
  maybe_write(rep, payload.dump(2) + "\n");
  rep.finish(payload, payload.dump(2) + "\n");
  return 0;
}

int cmd_minksum(Reporter& rep, const std::string& a_path, const std::string& b_path) {
  Body a = load_body_arg(rep, a_path, BodyRole::table);
  Body b = load_body_arg(rep, b_path, BodyRole::table);
  Json payload = body_to_json(minkowski_sum(a, b));
  maybe_write(rep, payload.dump(2) + "\n");
  rep.finish(payload, payload.dump(2) + "\n");
  return 0;
}

int cmd_simplex_traj(Reporter& rep, const std::string& path, const std::string& order_str) {
  std::string content = read_text_file(path);
  rep.add_input(path, content);
  Json j;
  try {
    j = Json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    fail_input("JSON parse error in " + path + ": " + e.what());
  }
  if (!j.contains("vrep")) fail_input("simplex file needs a \"vrep\" vertex list");
  std::vector<Vec> verts;
  for (const auto& q : j["vrep"]) verts.push_back(point_from_json(q));
  auto s = make_simplex_spec(verts);
  int n1 = static_cast<int>(verts.size());
  std::vector<int> order;
  if (order_str.empty()) {
    for (int i = 0; i < n1; ++i) order.push_back(i);
  } else {
    size_t pos = 0;
    while (pos < order_str.size()) {
      size_t comma = order_str.find(',', pos);
      if (comma == std::string::npos) comma = order_str.size();
      order.push_back(std::stoi(order_str.substr(pos, comma - pos)));
      pos = comma + 1;
    }
  }
  auto tr = closed_form_trajectory(s, order);
  Json payload;
  payload["masses"] = point_to_json(s.masses);
  payload["M"] = rat_to_string(s.pair_product_sum);
  payload["M_decimal"] = rat_to_decimal(s.pair_product_sum);
  payload["order"] = tr.order;
  Json pts = Json::array(), pts_dec = Json::array();
  for (const auto& q : tr.points) {
    pts.push_back(point_to_json(q));
    Json dec = Json::array();
    for (const auto& c : q) dec.push_back(rat_to_decimal(c));
    pts_dec.push_back(std::move(dec));
  }
  payload["points"] = std::move(pts);
  payload["points_decimal"] = std::move(pts_dec);
  Json steps = Json::array(), steps_dec = Json::array();
  Rat total = 0;
  for (const Rat& t : tr.steps) {
    steps.push_back(rat_to_string(t));
    steps_dec.push_back(rat_to_decimal(t));
    total += t;
  }
  payload["steps"] = std::move(steps);
  payload["steps_decimal"] = std::move(steps_dec);
  payload["length"] = rat_to_string(total);
  payload["length_decimal"] = rat_to_decimal(total);
  long n = n1 - 1;
  payload["bound"] = rat_to_string(Rat(2) + frac(2, n));
  payload["bound_decimal"] = rat_to_decimal(Rat(2) + frac(2, n));
  payload["cevian_sum"] = rat_to_string(cevian_identity(s, tr));
  payload["midpoint_common_point"] = point_to_json(midpoint_hyperplanes_concurrent(s, tr));
  auto all = all_orders_trajectories(s);
  std::set<std::vector<std::string>> distinct;
  bool multisets_equal = true;
  std::multiset<std::string> base;
  for (size_t oi = 0; oi < all.size(); ++oi) {
    std::multiset<std::string> ms;
    std::vector<std::string> key;
    for (const Rat& t : all[oi].steps) ms.insert(rat_to_string(t));
    for (const auto& q : all[oi].points)
      for (const auto& c : q) key.push_back(rat_to_string(c));
    if (oi == 0)
      base = ms;
    else if (ms != base)
      multisets_equal = false;
    distinct.insert(key);
  }
  payload["orders"] = {{"count", all.size()},
                       {"distinct_trajectories", distinct.size()},
                       {"equal_step_multisets", multisets_equal}};
  maybe_write(rep, payload.dump(2) + "\n");
  std::string text = "length = " + rat_to_string(total) + " (1/M), bound = " +
                     payload["bound"].get<std::string>() + ", cevian sum = " +
                     payload["cevian_sum"].get<std::string>() + "\n";
  rep.finish(payload, text);
  return 0;
}

int cmd_oracle(Reporter& rep, const std::string& k_path, const std::string& t_arg, int resolution,
               int max_m, const std::string& mode, uint64_t seed, long long budget) {
  Body k = load_body_arg(rep, k_path, BodyRole::table);
  Body t = (t_arg == "polar:K") ? polar_dual(k) : load_body_arg(rep, t_arg, BodyRole::norm_body);
  OracleConfig cfg;
  cfg.resolution = resolution;
  cfg.max_m = max_m;
  cfg.seed = seed;
  if (budget > 0) cfg.budget = budget;
  if (mode == "exhaustive-2d")
    cfg.mode = OracleMode::exhaustive_2d;
  else if (mode == "random-3d")
    cfg.mode = OracleMode::random_3d;
  else
    fail_input("unknown oracle mode: " + mode);
  auto res = oracle_xi(k, t, cfg);
  Json payload;
  payload["value"] = rat_to_string(res.value);
  payload["value_decimal"] = rat_to_decimal(res.value);
  Json best = Json::array();
  for (const auto& q : res.best.points) best.push_back(point_to_json(q));
  payload["best"] = std::move(best);
  payload["partial"] = res.partial;
  payload["tuples_tested"] = res.tuples_tested;
  payload["resolution"] = resolution;
  payload["max_m"] = max_m;
  payload["mode"] = mode;
  maybe_write(rep, payload.dump(2) + "\n");
  rep.finish(payload, "oracle value = " + rat_to_string(res.value) + " (" +
                          rat_to_decimal(res.value) + ")" + (res.partial ? " [partial]" : "") +
                          "\n");
  return 0;
}

int cmd_verify(Reporter& rep, const std::string& suite, uint64_t seed, int count) {
  auto report = run_suite(suite, seed, count);
  Json payload;
  payload["suite"] = report.suite;
  payload["seed"] = report.seed;
  payload["count"] = report.count;
  payload["violations"] = report.violations;
  Json inst = Json::array();
  for (const auto& it : report.instances)
    inst.push_back({{"description", it.description}, {"ok", it.ok}, {"detail", it.detail}});
  payload["instances"] = std::move(inst);
  maybe_write(rep, payload.dump(2) + "\n");
  std::string text = "suite " + report.suite + ": " + std::to_string(report.violations) +
                     " violation(s) in " + std::to_string(report.instances.size()) +
                     " instance(s)\n";
  for (const auto& it : report.instances)
    text += std::string(it.ok ? "  ok   " : "  FAIL ") + it.description + "  " + it.detail + "\n";
  rep.finish(payload, text);
  return report.violations == 0 ? 0 : 1;
}

int cmd_render(Reporter& rep, const std::string& sol_path, const std::string& out_path) {
  std::string content = read_text_file(sol_path);
  rep.add_input(sol_path, content);
  Json j;
  try {
    j = Json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    fail_input("JSON parse error in " + sol_path + ": " + e.what());
  }
  auto sol = solution_from_json(j);
  std::string svg = render_solution_svg(sol);
  if (out_path.empty()) fail_input("render needs --out");
  write_text_file(out_path, svg);
  Json payload;
  payload["out"] = out_path;
  payload["bytes"] = svg.size();
  rep.finish(payload, "wrote " + out_path + " (" + std::to_string(svg.size()) + " bytes)\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact shortest closed billiard trajectories in convex polytopes "
               "with polyhedral gauge norms"};
  app.require_subcommand(1);
  std::string format = "text", out_path;
  app.add_option("--format", format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--out", out_path, "write the result artifact to this path");

  std::string k_path, t_arg, points_path, a_path, b_path, order_str, mode = "exhaustive-2d";
  std::string suite, sol_path, render_out;
  int max_m = 0, threads = 0, resolution = 16, oracle_max_m = 3, count = 10;
  long long budget = 0;
  uint64_t seed = 1;

  auto* xi = app.add_subcommand("xi", "compute the shortest closed billiard trajectory");
  xi->add_option("table", k_path, "table body file")->required();
  xi->add_option("norm", t_arg, "norm body file, or polar:K")->required();
  xi->add_option("--max-m", max_m, "cap the bounce count (default dim+1)");
  xi->add_option("--threads", threads, "worker threads for the pattern sweep");

  auto* fit = app.add_subcommand("fit", "smallest enclosing homothet of a point set");
  fit->add_option("--body", k_path, "table body file")->required();
  fit->add_option("--points", points_path, "JSON array of points")->required();

  auto* polar = app.add_subcommand("polar", "polar dual of a body");
  polar->add_option("body", a_path, "body file")->required();

  auto* mink = app.add_subcommand("minksum", "Minkowski sum of two bodies");
  mink->add_option("a", a_path, "first body file")->required();
  mink->add_option("b", b_path, "second body file")->required();

  auto* straj = app.add_subcommand("simplex-traj", "closed-form simplex trajectory");
  straj->add_option("simplex", sol_path, "body file with a vrep simplex")->required();
  straj->add_option("--order", order_str, "cyclic facet order, e.g. 0,2,1");

  auto* orc = app.add_subcommand("oracle", "sampling upper bound for xi");
  orc->add_option("table", k_path, "table body file")->required();
  orc->add_option("norm", t_arg, "norm body file, or polar:K")->required();
  orc->add_option("--resolution", resolution, "samples per facet");
  orc->add_option("--max-m", oracle_max_m, "tuple size cap");
  orc->add_option("--mode", mode, "exhaustive-2d or random-3d");
  orc->add_option("--seed", seed, "random mode seed");
  orc->add_option("--budget", budget, "tuple budget");

  auto* ver = app.add_subcommand("verify", "run a property suite");
  ver->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  ver->add_option("--seed", seed, "generator seed");
  ver->add_option("--count", count, "instance count");

  auto* ren = app.add_subcommand("render", "draw a 2-D solution as SVG");
  ren->add_option("solution", sol_path, "solution file from xi --out")->required();
  ren->add_option("--out", render_out, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Reporter rep;
  rep.format = format;
  rep.out_path = out_path;
  try {
    if (app.got_subcommand(xi)) {
      rep.command = "xi";
      return cmd_xi(rep, k_path, t_arg, max_m, threads);
    }
    if (app.got_subcommand(fit)) {
      rep.command = "fit";
      return cmd_fit(rep, k_path, points_path);
    }
    if (app.got_subcommand(polar)) {
      rep.command = "polar";
      return cmd_polar(rep, a_path);
    }
    if (app.got_subcommand(mink)) {
      rep.command = "minksum";
      return cmd_minksum(rep, a_path, b_path);
    }
    if (app.got_subcommand(straj)) {
      rep.command = "simplex-traj";
      return cmd_simplex_traj(rep, sol_path, order_str);
    }
    if (app.got_subcommand(orc)) {
      rep.command = "oracle";
      return cmd_oracle(rep, k_path, t_arg, resolution, oracle_max_m, mode, seed, budget);
    }
    if (app.got_subcommand(ver)) {
      rep.command = "verify";
      return cmd_verify(rep, suite, seed, count);
    }
    if (app.got_subcommand(ren)) {
      rep.command = "render";
      return cmd_render(rep, sol_path, render_out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::invalid_input ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
