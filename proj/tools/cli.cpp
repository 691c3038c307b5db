#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cli_common.hpp"
#include "cyclelab/analytic.hpp"
#include "cyclelab/estimator.hpp"
#include "cyclelab/local_limit.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace cyclelab::cli {

std::string version_string() {
#ifdef CYCLELAB_GIT_REV
  return std::string("0.1.0+") + CYCLELAB_GIT_REV;
#else
  return "0.1.0";
#endif
}

std::string iso8601_utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_manifest(const fs::path& dir, const std::string& command,
                    const std::vector<std::string>& args, std::uint64_t master_seed,
                    const std::string& started_at, const std::string& finished_at) {
  json m;
  m["command"] = command;
  m["args"] = args;
  m["seed"] = master_seed;
  m["version"] = version_string();
  m["started_at"] = started_at;
  m["finished_at"] = finished_at;
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  out << m.dump(2) << "\n";
}

namespace {

int run_cli(std::vector<std::string> args);

// CYCLELAB_SEED, when set, wins over --seed. Parse failures are usage errors.
bool apply_seed_env(std::uint64_t& seed, std::string& err) {
  const char* env = std::getenv("CYCLELAB_SEED");
  if (env == nullptr) return true;
  char* end = nullptr;
  errno = 0;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || end == env || *end != '\0') {
    err = std::string("CYCLELAB_SEED is not a decimal integer: ") + env;
    return false;
  }
  seed = v;
  return true;
}

int cmd_estimate(std::uint64_t n, double c, std::uint64_t trials, std::uint64_t seed,
                 unsigned threads, const std::string& out_dir) {
  const std::string started = iso8601_utc_now();
  BatchResult batch = estimate_batch(n, c, trials, Seed{seed, 0}, threads);

  fs::path dir(out_dir);
  fs::create_directories(dir);

  {
    // deterministic payload only; per-trial timings live in records.jsonl
    std::ofstream csv(dir / "records.csv", std::ios::binary);
    csv << "n,c,trial,seed_master,seed_stream,core_size,core_edges,stripped,v1,v2,"
           "sum_phi,non_tree_mass,tree_count,l_hat_over_n,corollary1\n";
    for (std::size_t i = 0; i < batch.records.size(); ++i) {
      const EstimateRecord& r = batch.records[i];
      csv << r.n << ',' << fmt_double(r.c) << ',' << i << ',' << r.seed.master << ','
          << r.seed.stream << ',' << r.core_size << ',' << r.core_edges << ','
          << r.stripped_size << ',' << r.v1_size << ',' << r.v2_size << ',' << r.sum_phi
          << ',' << r.non_tree_mass << ',' << r.tree_count << ','
          << fmt_double(r.l_hat_over_n) << ',' << fmt_double(r.corollary1_value) << '\n';
    }
  }
  double total_ms = 0;
  {
    std::ofstream jl(dir / "records.jsonl", std::ios::binary);
    for (std::size_t i = 0; i < batch.records.size(); ++i) {
      const EstimateRecord& r = batch.records[i];
      json o;
      o["trial"] = i;
      o["n"] = r.n;
      o["c"] = r.c;
      o["seed"] = {{"master", r.seed.master}, {"stream", r.seed.stream}};
      o["core_size"] = r.core_size;
      o["core_edges"] = r.core_edges;
      o["stripped_size"] = r.stripped_size;
      o["v1_size"] = r.v1_size;
      o["v2_size"] = r.v2_size;
      o["sum_phi"] = r.sum_phi;
      o["non_tree_mass"] = r.non_tree_mass;
      o["tree_count"] = r.tree_count;
      json hist = json::object();
      for (const auto& [size, count] : r.tree_size_hist) hist[std::to_string(size)] = count;
      o["tree_size_hist"] = hist;
      o["l_hat_over_n"] = r.l_hat_over_n;
      o["corollary1"] = r.corollary1_value;
      o["wall_ms"] = r.wall_ms;
      jl << o.dump() << "\n";
      total_ms += r.wall_ms;
    }
  }
  const Corollary1 cor = corollary1(c);
  {
    json s;
    s["n"] = n;
    s["c"] = c;
    s["trials"] = trials;
    s["threads"] = threads;
    s["seed"] = seed;
    s["mean_l_hat_over_n"] = batch.mean;
    s["stderr_mean"] = batch.stderr_mean;
    s["corollary1_value"] = cor.value;
    s["corollary1_band"] = cor.band;
    s["total_wall_ms"] = total_ms;
    std::ofstream(dir / "summary.json", std::ios::binary) << s.dump(2) << "\n";
  }
  write_manifest(dir, "estimate",
                 {"estimate", "--n", std::to_string(n), "--c", fmt_double(c), "--trials",
                  std::to_string(trials), "--seed", std::to_string(seed), "--threads",
                  std::to_string(threads), "--out", out_dir},
                 seed, started, iso8601_utc_now());

  std::cout << "wrote " << (dir / "records.csv").string() << " (" << trials << " trials)\n"
            << "mean l_hat/n = " << fmt_double(batch.mean)
            << ", stderr = " << fmt_double(batch.stderr_mean)
            << ", analytic limit = " << fmt_double(cor.value) << "\n";
  return 0;
}

int cmd_analytic(const std::vector<double>& cs, double eps, const std::string& format,
                 const std::string& out_dir) {
  const std::string started = iso8601_utc_now();
  std::string csv = "c,x,core_v,core_e,corollary1,band,lambda,k1\n";
  json rows = json::array();

  for (double c : cs) {
    if (!(c > 1.0)) {
      csv += fmt_double(c) + ",rejected,,,,,,\n";
      rows.push_back({{"c", c}, {"status", "rejected: c must exceed 1"}});
      continue;
    }
    const CoreParams cp = core_fractions(c);
    const Corollary1 cor = corollary1(c);
    json row;
    row["c"] = c;
    row["x"] = cp.x;
    row["core_v"] = cp.vertex_fraction;
    row["core_e"] = cp.edge_fraction;
    row["corollary1"] = cor.value;
    row["band"] = cor.band;
    std::string lam = "n/a", k1 = "n/a";
    try {
      const double l = solve_lambda(2.0 * cp.edge_fraction / cp.vertex_fraction).lambda;
      lam = fmt_double(l);
      row["lambda"] = l;
    } catch (const std::exception&) {
      row["lambda"] = nullptr;
    }
    try {
      const DepthChoice d = k1_of(eps, c);
      k1 = std::to_string(d.k1);
      row["k1"] = d.k1;
    } catch (const std::domain_error&) {
      row["k1"] = nullptr;
    }
    csv += fmt_double(c) + "," + fmt_double(cp.x) + "," + fmt_double(cp.vertex_fraction) +
           "," + fmt_double(cp.edge_fraction) + "," + fmt_double(cor.value) + "," +
           fmt_double(cor.band) + "," + lam + "," + k1 + "\n";
    rows.push_back(row);
  }

  const std::string payload = format == "json" ? rows.dump(2) + "\n" : csv;
  std::cout << payload;
  if (!out_dir.empty()) {
    fs::path dir(out_dir);
    fs::create_directories(dir);
    const std::string name = format == "json" ? "analytic.json" : "analytic.csv";
    std::ofstream(dir / name, std::ios::binary) << payload;
    std::vector<std::string> args{"analytic", "--c", ""};
    for (std::size_t i = 0; i < cs.size(); ++i)
      args[2] += (i ? "," : "") + fmt_double(cs[i]);
    args.insert(args.end(), {"--eps", fmt_double(eps), "--format", format, "--out", out_dir});
    write_manifest(dir, "analytic", args, 0, started, iso8601_utc_now());
  }
  return 0;
}

int cmd_fseries(double c, double eps, std::uint64_t cap, const std::string& variant, double n_val,
                double m_val, bool whole_ball, const std::string& out_dir) {
  const std::string started = iso8601_utc_now();
  if (n_val <= 0 || m_val <= 0) {
    // only the ratio 2M/N enters the weights, so the 2-core fractions at c do
    const CoreParams cp = core_fractions(c);
    n_val = cp.vertex_fraction;
    m_val = cp.edge_fraction;
  }

  json o;
  o["c"] = c;
  o["eps"] = eps;
  o["size_cap"] = cap;
  o["N"] = n_val;
  o["M"] = m_val;
  o["variant"] = variant;
  o["whole_ball"] = whole_ball;
  try {
    const FEpsResult r = f_eps(c, eps, cap, n_val, m_val, whole_ball);
    o["value"] = variant == "f2" ? r.value_f2 : r.value_exp;
    o["value_exp"] = r.value_exp;
    o["value_f2"] = r.value_f2;
    o["rho_mass_exp"] = r.rho_mass_exp;
    o["rho_mass_f2"] = r.rho_mass_f2;
    o["lambda"] = r.lambda;
    o["ratio"] = r.ratio;
    o["k1"] = r.k1;
    o["trees_evaluated"] = r.trees_evaluated;
    o["trees_contributing"] = r.trees_contributing;
    o["vertices_enumerated"] = r.vertices_enumerated;
    o["truncated"] = r.truncated;
    o["cutoff_size_class"] = r.cutoff_size_class;
  } catch (const std::domain_error& e) {
    o["value"] = nullptr;
    o["k1"] = nullptr;
    o["note"] = std::string("depth rule undefined at this c: ") + e.what();
  }

  const std::string payload = o.dump(2) + "\n";
  std::cout << payload;
  if (!out_dir.empty()) {
    fs::path dir(out_dir);
    fs::create_directories(dir);
    std::ofstream(dir / "fseries.json", std::ios::binary) << payload;
    std::vector<std::string> args{"fseries", "--c",       fmt_double(c),      "--eps",
                                  fmt_double(eps), "--cap", std::to_string(cap), "--variant",
                                  variant,        "--N",   fmt_double(n_val), "--M",
                                  fmt_double(m_val)};
    if (whole_ball) args.push_back("--whole-ball");
    args.insert(args.end(), {"--out", out_dir});
    write_manifest(dir, "fseries", args, 0, started, iso8601_utc_now());
  }
  return 0;
}

int cmd_replay(const std::string& manifest_path, const std::string& out_override) {
  std::ifstream in(manifest_path);
  if (!in) {
    std::cerr << "error: cannot open " << manifest_path << "\n";
    return 1;
  }
  json m = json::parse(in, nullptr, false);
  if (m.is_discarded() || !m.contains("args") || !m["args"].is_array()) {
    std::cerr << "error: " << manifest_path << " is not a run manifest\n";
    return 1;
  }
  auto args = m["args"].get<std::vector<std::string>>();
  if (!out_override.empty()) {
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
      if (args[i] == "--out") args[i + 1] = out_override;
  }
  return run_cli(std::move(args));
}

int run_cli(std::vector<std::string> args) {
  CLI::App app{"longest-cycle scaling experiments on sparse random graphs"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  auto* est = app.add_subcommand(
      "estimate", "sample G(n, c/n), strip the giant 2-core, and record the estimate");
  std::uint64_t n = 0, trials = 1, seed = 0;
  double c = 0;
  unsigned threads = 0;
  std::string out_dir;
  est->add_option("--n", n, "vertex count")->required();
  est->add_option("--c", c, "mean degree, must exceed 1")->required();
  est->add_option("--trials", trials, "independent trials (default 1)");
  est->add_option("--seed", seed, "master seed; trial i uses stream i");
  est->add_option("--threads", threads, "worker pool size, 0 = all cores");
  est->add_option("--out", out_dir, "output directory")->required();

  auto* val = app.add_subcommand("validate", "run the invariant and oracle cross-check suite");
  std::vector<std::string> only;
  unsigned max_tree = 9;
  std::uint64_t vseed = 1;
  val->add_option("--only", only, "restrict to named modules")
      ->check(CLI::IsMember({"graph", "strip", "packing", "oracle", "sampler", "estimator",
                             "analytic", "locallimit"}));
  val->add_option("--max-tree", max_tree, "exhaustive packing checks up to this many vertices")
      ->check(CLI::Range(1u, 12u));
  val->add_option("--seed", vseed, "master seed for the sampled checks");

  auto* ana = app.add_subcommand("analytic", "tabulate x, core fractions, the limit and its band");
  std::vector<double> cs;
  double eps = 0.25;
  std::string format = "csv", ana_out;
  ana->add_option("--c", cs, "mean-degree grid, comma separated")->required()->delimiter(',');
  ana->add_option("--eps", eps, "accuracy target for the depth rule (default 0.25)");
  ana->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  ana->add_option("--out", ana_out, "also write the table and a manifest here");

  auto* fse = app.add_subcommand("fseries", "evaluate the truncated local-limit series");
  double fc = 0, feps = 0.25, n_val = 0, m_val = 0;
  std::uint64_t cap = 200000;
  std::string variant = "exp", fse_out;
  bool whole_ball = false;
  fse->add_option("--c", fc, "mean degree")->required();
  fse->add_option("--eps", feps, "accuracy target (default 0.25)");
  fse->add_option("--cap", cap, "vertex budget for the tree enumeration");
  fse->add_option("--variant", variant, "exponential factor: exp or f2")
      ->check(CLI::IsMember({"exp", "f2"}));
  fse->add_option("--N", n_val, "vertex scale (default: 2-core fraction at c)");
  fse->add_option("--M", m_val, "edge scale (default: 2-core fraction at c)");
  fse->add_flag("--whole-ball", whole_ball, "absorb every tree vertex into the gadget frontier");
  fse->add_option("--out", fse_out, "also write fseries.json and a manifest here");

  auto* rep = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  std::string manifest_path, replay_out;
  rep->add_option("--manifest", manifest_path, "path to manifest.json")->required();
  rep->add_option("--out", replay_out, "redirect the replayed run's output directory");

  std::reverse(args.begin(), args.end());  // CLI11's vector parse wants reversed argv
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // 0 covers --help/--version
  }

  if (est->parsed()) {
    std::string err;
    if (!apply_seed_env(seed, err)) {
      std::cerr << "error: " << err << "\n";
      return 2;
    }
    if (n < 1 || !(c > 1.0) || trials < 1) {
      std::cerr << "error: estimate requires --n >= 1, --c > 1 and --trials >= 1\n";
      return 2;
    }
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    return cmd_estimate(n, c, trials, seed, threads, out_dir);
  }
  if (val->parsed()) {
    std::string err;
    if (!apply_seed_env(vseed, err)) {
      std::cerr << "error: " << err << "\n";
      return 2;
    }
    return run_validate(only, max_tree, vseed, std::cout);
  }
  if (ana->parsed()) return cmd_analytic(cs, eps, format, ana_out);
  if (fse->parsed()) {
    if ((n_val <= 0 || m_val <= 0) && !(fc > 1.0)) {
      std::cerr << "error: fseries requires --c > 1 unless --N and --M set the scales\n";
      return 2;
    }
    return cmd_fseries(fc, feps, cap, variant, n_val, m_val, whole_ball, fse_out);
  }
  return cmd_replay(manifest_path, replay_out);
}

}  // namespace
}  // namespace cyclelab::cli

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return cyclelab::cli::run_cli(std::move(args));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
