#include "dimerbell/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dimerbell/bellmap.hpp"
#include "dimerbell/critical.hpp"

namespace dimerbell {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
  } else {
    write_file(cfg.out, text);
  }
}

SolverConfig make_solver(const RunConfig& cfg) {
  SolverConfig s;
  if (cfg.solver == "auto") {
    s.kind = SolverKind::Auto;
  } else if (cfg.solver == "dense") {
    s.kind = SolverKind::Dense;
  } else if (cfg.solver == "lanczos") {
    s.kind = SolverKind::Lanczos;
  } else {
    throw std::invalid_argument("unknown solver '" + cfg.solver +
                                "' (expected auto, dense or lanczos)");
  }
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  s.lanczos_tol = cfg.tol;
  s.seed = cfg.seed;
  return s;
}

struct Workspace {
  Lattice lattice;
  std::vector<DimerCovering> coverings;
  std::vector<CoveringClass> classes;
  std::string coverings_hash;
  std::string classes_hash;
};

Workspace load_workspace(const RunConfig& cfg, bool need_classes) {
  Workspace w{Lattice(cfg.n, boundary_from_string(cfg.boundary)), {}, {}, {}, {}};

  std::string cov_path, cls_path;
  if (!cfg.cache_dir.empty()) {
    fs::create_directories(cfg.cache_dir);
    const std::string stem = "_n" + std::to_string(cfg.n) + "_" + cfg.boundary + ".json";
    cov_path = cfg.cache_dir + "/coverings" + stem;
    cls_path = cfg.cache_dir + "/classes" + stem;
  }

  bool have_coverings = false;
  if (!cov_path.empty() && fs::exists(cov_path)) {
    CoveringFile f = coverings_from_json(ordered_json::parse(read_file(cov_path)));
    if (f.n != cfg.n || f.boundary != w.lattice.boundary()) {
      throw std::runtime_error("cached covering file does not match the request: " + cov_path);
    }
    w.coverings = std::move(f.coverings);
    have_coverings = true;
  }
  if (!have_coverings) {
    w.coverings = enumerate_maximal(w.lattice);
    if (!cov_path.empty()) {
      write_file(cov_path, coverings_to_json(w.lattice, w.coverings).dump(2) + "\n");
    }
  }
  w.coverings_hash = hash_hex(fnv1a(coverings_to_json(w.lattice, w.coverings).dump()));

  if (need_classes) {
    bool have_classes = false;
    if (!cls_path.empty() && fs::exists(cls_path)) {
      w.classes =
          classes_from_json(ordered_json::parse(read_file(cls_path)), w.coverings);
      have_classes = true;
    }
    if (!have_classes) {
      w.classes = classify(w.lattice, w.coverings);
      if (!cls_path.empty()) {
        write_file(cls_path, classes_to_json(w.classes).dump(2) + "\n");
      }
    }
    w.classes_hash = hash_hex(fnv1a(classes_to_json(w.classes).dump()));
  }
  return w;
}

ordered_json base_doc(const RunConfig& cfg) {
  ordered_json j;
  j["version"] = kVersion;
  j["config"] = config_to_json(cfg);
  return j;
}

std::vector<double> epsilon_list(const RunConfig& cfg) {
  if (cfg.grid) return parse_grid(*cfg.grid);
  if (cfg.epsilon) return {*cfg.epsilon};
  throw std::invalid_argument("provide --epsilon or --grid");
}

std::vector<std::size_t> selected_classes(const RunConfig& cfg, const Workspace& w) {
  if (cfg.class_id < 0) {
    std::vector<std::size_t> all(w.classes.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }
  if (cfg.class_id >= static_cast<int>(w.classes.size())) {
    throw std::invalid_argument("--class-id " + std::to_string(cfg.class_id) +
                                " out of range (have " + std::to_string(w.classes.size()) +
                                " classes)");
  }
  return {static_cast<std::size_t>(cfg.class_id)};
}

int cmd_enumerate(const RunConfig& cfg) {
  const Workspace w = load_workspace(cfg, false);
  ordered_json doc = base_doc(cfg);
  doc["input_hashes"] = {{"coverings", w.coverings_hash}};
  doc["n"] = cfg.n;
  doc["boundary"] = cfg.boundary;
  doc["count"] = w.coverings.size();
  doc["coverings"] = coverings_to_json(w.lattice, w.coverings)["coverings"];
  write_output(cfg, doc.dump(2) + "\n");
  std::cerr << "enumerated " << w.coverings.size() << " maximum dimer coverings (n=" << cfg.n
            << ", " << cfg.boundary << ")\n";
  return 0;
}

int cmd_classify(const RunConfig& cfg) {
  const Workspace w = load_workspace(cfg, true);
  const auto sizes = class_stats(w.classes);
  ordered_json doc = base_doc(cfg);
  doc["input_hashes"] = {{"coverings", w.coverings_hash}, {"classes", w.classes_hash}};
  doc["n"] = cfg.n;
  doc["boundary"] = cfg.boundary;
  doc["count"] = w.coverings.size();
  doc["classes"] = classes_to_json(w.classes)["classes"];
  doc["stats"] = {{"num_classes", w.classes.size()},
                  {"min_size", sizes.front()},
                  {"max_size", sizes.back()},
                  {"total", w.coverings.size()}};
  write_output(cfg, doc.dump(2) + "\n");
  std::cerr << "n=" << cfg.n << " boundary=" << cfg.boundary
            << " coverings=" << w.coverings.size() << " classes=" << w.classes.size()
            << " min=" << sizes.front() << " max=" << sizes.back() << "\n";
  return 0;
}

int cmd_classical_bound(const RunConfig& cfg) {
  const auto eps = epsilon_list(cfg);
  const Workspace w = load_workspace(cfg, true);
  const auto sel = selected_classes(cfg, w);
  ordered_json doc = base_doc(cfg);
  doc["input_hashes"] = {{"coverings", w.coverings_hash}, {"classes", w.classes_hash}};
  ordered_json results = ordered_json::array();
  for (std::size_t i : sel) {
    const auto& cls = w.classes[i];
    ordered_json row;
    row["class_id"] = cls.id;
    ordered_json values = ordered_json::array();
    for (double e : eps) {
      const auto r = classical_bound_transfer(w.lattice, cls.representative, e);
      values.push_back({{"epsilon", e}, {"beta_c", r.beta_c}});
    }
    row["values"] = std::move(values);
    results.push_back(std::move(row));
  }
  doc["results"] = std::move(results);
  write_output(cfg, doc.dump(2) + "\n");
  std::cerr << "classical bounds for " << sel.size() << " class(es) at " << eps.size()
            << " coupling(s)\n";
  return 0;
}

int cmd_quantum_value(const RunConfig& cfg) {
  const auto eps = epsilon_list(cfg);
  const Workspace w = load_workspace(cfg, true);
  const auto sel = selected_classes(cfg, w);
  const SolverConfig solver = make_solver(cfg);
  const int sites = w.lattice.num_sites();
  bool all_converged = true;
  ordered_json doc = base_doc(cfg);
  doc["input_hashes"] = {{"coverings", w.coverings_hash}, {"classes", w.classes_hash}};
  ordered_json results = ordered_json::array();
  for (std::size_t i : sel) {
    const auto& cls = w.classes[i];
    ordered_json row;
    row["class_id"] = cls.id;
    ordered_json values = ordered_json::array();
    for (double e : eps) {
      const auto terms = build_hamiltonian(w.lattice, cls.representative, e);
      const bool dense = solver.kind == SolverKind::Dense ||
                         (solver.kind == SolverKind::Auto && sites <= solver.dense_max_sites);
      QuantumValueResult q;
      if (dense) {
        q = ground_energy_dense(terms, sites);
      } else {
        LanczosOptions opts;
        opts.tol = solver.lanczos_tol;
        opts.seed = solver.seed;
        q = ground_energy_lanczos(terms, sites, opts);
      }
      all_converged = all_converged && q.converged;
      values.push_back({{"epsilon", e},
                        {"beta_q", q.beta_q},
                        {"method", q.method == SolverMethod::Dense ? "dense" : "lanczos"},
                        {"residual", q.residual},
                        {"iterations", q.iterations},
                        {"converged", q.converged}});
    }
    row["values"] = std::move(values);
    results.push_back(std::move(row));
  }
  doc["results"] = std::move(results);
  write_output(cfg, doc.dump(2) + "\n");
  std::cerr << "quantum values for " << sel.size() << " class(es) at " << eps.size()
            << " coupling(s)\n";
  if (!all_converged) {
    std::cerr << "warning: at least one quantum solve did not converge\n";
    return 2;
  }
  return 0;
}

int cmd_critical(const RunConfig& cfg) {
  const Workspace w = load_workspace(cfg, true);
  const auto sel = selected_classes(cfg, w);
  const SolverConfig solver = make_solver(cfg);
  const CriticalConfig ccfg;

  std::vector<ordered_json> rows(sel.size());
  std::vector<std::optional<ViolationResult>> found(sel.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    std::size_t i;
    while ((i = next.fetch_add(1)) < sel.size()) {
      const auto& cls = w.classes[sel[i]];
      try {
        ViolationResult v =
            violation_interval(w.lattice, cls.representative, cls.id, solver, ccfg);
        rows[i] = violation_to_json(v);
        found[i] = std::move(v);
      } catch (const std::exception& e) {
        ordered_json err;
        err["class_id"] = cls.id;
        err["error"] = e.what();
        rows[i] = std::move(err);
      }
    }
  };
  const int nthreads =
      std::max(1, std::min(cfg.jobs, static_cast<int>(sel.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  double min_low = std::numeric_limits<double>::infinity();
  double max_high = -std::numeric_limits<double>::infinity();
  int min_low_class = -1, max_high_class = -1;
  int failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!found[i]) {
      ++failures;
      continue;
    }
    const auto& v = *found[i];
    if (!v.converged) {
      ++failures;
      continue;
    }
    if (v.eps_low < min_low) {
      min_low = v.eps_low;
      min_low_class = v.class_id;
    }
    if (v.eps_high > max_high) {
      max_high = v.eps_high;
      max_high_class = v.class_id;
    }
  }

  ordered_json doc = base_doc(cfg);
  doc["input_hashes"] = {{"coverings", w.coverings_hash}, {"classes", w.classes_hash}};
  doc["n"] = cfg.n;
  doc["boundary"] = cfg.boundary;
  doc["results"] = rows;
  ordered_json summary;
  if (min_low_class >= 0) {
    summary["min_eps_low"] = min_low;
    summary["min_eps_low_class"] = min_low_class;
    summary["max_eps_high"] = max_high;
    summary["max_eps_high_class"] = max_high_class;
  }
  doc["summary"] = std::move(summary);
  write_output(cfg, doc.dump(2) + "\n");
  std::cerr << "critical couplings for " << sel.size() << " class(es)";
  if (min_low_class >= 0) {
    std::cerr << ": min eps_low=" << min_low << " (class " << min_low_class
              << "), max eps_high=" << max_high << " (class " << max_high_class << ")";
  }
  std::cerr << "\n";
  return failures == 0 ? 0 : 2;
}

int cmd_sweep(const RunConfig& cfg) {
  if (!cfg.grid) throw std::invalid_argument("sweep requires --grid a:b:step");
  const auto eps = parse_grid(*cfg.grid);
  const Workspace w = load_workspace(cfg, true);
  const std::size_t cls = cfg.class_id < 0 ? 0 : selected_classes(cfg, w).front();
  const SolverConfig solver = make_solver(cfg);
  const auto points = sweep(w.lattice, w.classes[cls].representative, eps, solver);

  const bool csv = cfg.out.size() > 4 && cfg.out.rfind(".csv") == cfg.out.size() - 4;
  if (csv) {
    std::string text = "# " + std::string(kVersion) + "\n# config: " +
                       config_to_json(cfg).dump() + "\n";
    text += sweep_to_csv(points);
    write_output(cfg, text);
  } else {
    ordered_json doc = base_doc(cfg);
    doc["input_hashes"] = {{"coverings", w.coverings_hash}, {"classes", w.classes_hash}};
    doc["class_id"] = w.classes[cls].id;
    ordered_json trace = ordered_json::array();
    for (const auto& p : points) trace.push_back({p.epsilon, p.beta_c, p.beta_q});
    doc["trace"] = std::move(trace);
    write_output(cfg, doc.dump(2) + "\n");
  }
  std::cerr << "swept class " << w.classes[cls].id << " over " << points.size()
            << " couplings\n";
  return 0;
}

int cmd_bellmap(const RunConfig& cfg) {
  const MeasurementAngles angles =
      cfg.m == 2 ? MeasurementAngles::chsh() : MeasurementAngles::equally_spaced(cfg.m);
  const LinearSystem sys = build_system(angles);
  const AlphaSolution sol = solve_alpha(sys);
  ordered_json doc = base_doc(cfg);
  doc["input_hashes"] = ordered_json::object();
  doc["m"] = cfg.m;
  doc["angles"] = angles.theta;
  doc["alpha"] = std::vector<double>(sol.alpha.data(), sol.alpha.data() + sol.alpha.size());
  doc["rank"] = sol.rank;
  doc["unique"] = sol.unique;
  doc["residual"] = sol.residual;
  doc["classical_min"] = classical_min_deterministic(angles, sol.alpha);
  write_output(cfg, doc.dump(2) + "\n");
  std::cerr << "bell map m=" << cfg.m << " rank=" << sol.rank
            << (sol.unique ? " (unique solution)" : " (minimum-norm member of a family)")
            << "\n";
  return 0;
}

}  // namespace

ordered_json config_to_json(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = cfg.command;
  j["n"] = cfg.n;
  j["boundary"] = cfg.boundary;
  if (cfg.epsilon) j["epsilon"] = *cfg.epsilon;
  if (cfg.grid) j["grid"] = *cfg.grid;
  j["solver"] = cfg.solver;
  j["tol"] = cfg.tol;
  j["jobs"] = cfg.jobs;
  j["seed"] = cfg.seed;
  if (!cfg.cache_dir.empty()) j["cache_dir"] = cfg.cache_dir;
  if (!cfg.out.empty()) j["out"] = cfg.out;
  if (cfg.class_id >= 0) j["class_id"] = cfg.class_id;
  if (cfg.command == "bellmap") j["m"] = cfg.m;
  return j;
}

std::vector<double> parse_grid(const std::string& spec) {
  double a = 0.0, b = 0.0, step = 0.0;
  char extra = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &a, &b, &step, &extra) != 3) {
    throw std::invalid_argument("grid must be a:b:step, got '" + spec + "'");
  }
  if (!(step > 0.0) || b < a) {
    throw std::invalid_argument("grid requires a <= b and step > 0");
  }
  std::vector<double> g;
  const double tol = step * 1e-9;
  for (int k = 0;; ++k) {
    const double x = a + k * step;
    if (x > b + tol) break;
    g.push_back(std::min(x, b));
  }
  return g;
}

int run_command(const RunConfig& cfg) {
  try {
    if (cfg.command == "enumerate") return cmd_enumerate(cfg);
    if (cfg.command == "classify") return cmd_classify(cfg);
    if (cfg.command == "classical-bound") return cmd_classical_bound(cfg);
    if (cfg.command == "quantum-value") return cmd_quantum_value(cfg);
    if (cfg.command == "critical") return cmd_critical(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg);
    if (cfg.command == "bellmap") return cmd_bellmap(cfg);
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dimerbell
