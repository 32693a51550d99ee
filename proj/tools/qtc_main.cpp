// Command-line interface for the qtc shared library. All computation goes
// through the C API in qtc/qtc.h; this file only handles flags, JSON, and
// file formats. Data output goes to stdout, diagnostics to stderr.
//
// Exit codes: 0 ok, 1 input error, 2 no logical qudits, 3 oracle
// disagreement, 4 table verification failure.

#include <atomic>
#include <cmath>
#include <csignal>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtc/qtc.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoLogicals = 2;
constexpr int kExitOracleDisagreement = 3;
constexpr int kExitTableMismatch = 4;

[[noreturn]] void die(qtc_status status) {
  std::cerr << "error: " << qtc_last_error() << "\n";
  std::exit(status == QTC_ERROR_NO_LOGICALS ? kExitNoLogicals : kExitInput);
}

void check(qtc_status status) {
  if (status != QTC_OK) die(status);
}

json fit_json(const qtc_fit_result& f) {
  json j;
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  if (std::isnan(f.r_squared))
    j["r_squared"] = nullptr;
  else
    j["r_squared"] = f.r_squared;
  j["points"] = f.points;
  return j;
}

json record_json(const qtc_record_view& v) {
  json j;
  j["p"] = v.p;
  j["n"] = v.n;
  j["k"] = v.k;
  j["d"] = v.d;
  j["f"] = v.f;
  j["g"] = v.g;
  j["alpha"] = v.alpha;
  j["beta"] = v.beta;
  j["gamma"] = v.gamma;
  j["kd2_over_n"] = v.kd2_over_n;
  j["sets"] = v.sets;
  j["repeats"] = v.repeats;
  j["seed"] = v.seed;
  j["converged"] = v.converged != 0;
  return j;
}

struct SeedFlag {
  std::optional<uint64_t> value;
  bool deterministic = false;

  uint64_t resolve() const {
    if (value) return *value;
    if (deterministic) {
      std::cerr << "error: --deterministic requires an explicit --seed\n";
      std::exit(kExitInput);
    }
    std::random_device rd;
    uint64_t s = (uint64_t(rd()) << 32) ^ rd();
    std::cerr << "seed: " << s << "\n";
    return s;
  }
};

int env_threads() {
  const char* env = std::getenv("QCF_THREADS");
  if (!env || !*env) return 0;
  return std::atoi(env);
}

// RAII wrappers around the opaque handles
struct CodeHandle {
  qtc_code* ptr = nullptr;
  ~CodeHandle() { qtc_code_free(ptr); }
};

struct RecordsHandle {
  qtc_records* ptr = nullptr;
  ~RecordsHandle() { qtc_records_free(ptr); }
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_records_file(qtc_records* records, const std::string& path) {
  if (ends_with(path, ".json")) {
    json arr = json::array();
    for (size_t i = 0; i < qtc_records_size(records); ++i) {
      qtc_record_view v;
      check(qtc_records_get(records, i, &v));
      arr.push_back(record_json(v));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open for writing: " << path << "\n";
      std::exit(kExitInput);
    }
    out << arr.dump(1) << "\n";
  } else {
    check(qtc_records_write_csv(records, path.c_str()));
  }
}

// Loads a results CSV, or a JSON bundle of instance entries with published
// parameters (used for fitting the shipped tables directly).
void load_records_into(const std::string& path, qtc_records* acc) {
  if (ends_with(path, ".json")) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open: " << path << "\n";
      std::exit(kExitInput);
    }
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_array()) {
      std::cerr << "error: " << path << ": expected a JSON array\n";
      std::exit(kExitInput);
    }
    for (const json& row : doc) {
      qtc_record_view v{};
      std::string f = row.at("f").get<std::string>();
      std::string g = row.at("g").get<std::string>();
      v.p = row.at("p").get<int64_t>();
      v.f = f.c_str();
      v.g = g.c_str();
      v.alpha = row.at("alpha").get<int64_t>();
      v.beta = row.at("beta").get<int64_t>();
      v.gamma = row.at("gamma").get<int64_t>();
      if (row.contains("published")) {
        const json& pub = row.at("published");
        v.n = pub.at("n").get<int64_t>();
        v.k = pub.at("k").get<int64_t>();
        v.d = pub.at("d").get<int32_t>();
      } else {
        v.n = row.at("n").get<int64_t>();
        v.k = row.at("k").get<int64_t>();
        v.d = row.at("d").get<int32_t>();
        v.sets = row.value("sets", int64_t{0});
        v.repeats = row.value("repeats", int64_t{0});
        v.seed = row.value("seed", uint64_t{0});
        v.converged = row.value("converged", false) ? 1 : 0;
      }
      check(qtc_records_append(acc, &v));
    }
  } else {
    RecordsHandle file;
    check(qtc_records_read_csv(path.c_str(), &file.ptr));
    for (size_t i = 0; i < qtc_records_size(file.ptr); ++i) {
      qtc_record_view v;
      check(qtc_records_get(file.ptr, i, &v));
      check(qtc_records_append(acc, &v));
    }
  }
}

// ---------------------------------------------------------------- params

struct ParamsArgs {
  int64_t p = 0, alpha = 0, beta = 0, gamma = 0;
  std::string f, g;
  std::string distance = "none";
  int64_t sets = 5000, repeats = 10;
  int32_t wmax = 8;
  int threads = 0;
  SeedFlag seed;
};

int cmd_params(const ParamsArgs& a) {
  CodeHandle code;
  check(qtc_code_create(a.p, a.f.c_str(), a.g.c_str(), a.alpha, a.beta, a.gamma, &code.ptr));
  qtc_code_params params;
  check(qtc_code_compute_params(code.ptr, &params));

  json out;
  out["n"] = params.n;
  out["k"] = params.k;
  out["k_oracle"] = params.k_oracle;
  out["weight_max"] = params.weight_max;
  out["range"] = params.range;

  int exit_code = kExitOk;
  if (params.k != params.k_oracle) {
    std::cerr << "error: oracle disagreement: k_twisted=" << params.k
              << " k_linalg=" << params.k_oracle << "\n";
    exit_code = kExitOracleDisagreement;
  }

  if (a.distance == "estimate") {
    qtc_distance_options opt{a.sets, a.repeats, a.seed.resolve(), a.threads};
    qtc_distance_estimate est;
    check(qtc_code_estimate_distance(code.ptr, &opt, &est));
    out["d_upper"] = est.d_upper;
    out["distance_info"] = {{"d_x_upper", est.d_x_upper},
                            {"d_z_upper", est.d_z_upper},
                            {"sets", est.sets},
                            {"repeats", est.repeats},
                            {"seed", est.seed},
                            {"converged", est.converged != 0}};
  } else if (a.distance == "exact") {
    int32_t d = 0, exceeds = 0;
    check(qtc_code_exact_distance(code.ptr, a.wmax, &d, &exceeds));
    if (exceeds) {
      out["d_exact"] = nullptr;
      out["d_exact_exceeds_wmax"] = a.wmax;
    } else {
      out["d_exact"] = d;
    }
  }
  std::cout << out.dump(2) << "\n";
  return exit_code;
}

// ---------------------------------------------------------------- kmax

int cmd_kmax(int64_t p, const std::string& f, const std::string& g) {
  int64_t k_max = 0;
  int32_t finite = 0;
  check(qtc_kmax(p, f.c_str(), g.c_str(), &k_max, &finite));
  json out;
  if (finite) {
    out["k_max"] = k_max;
  } else {
    out["k_max"] = "infinite";
    out["topological_order"] = false;
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- search

std::atomic<bool> g_interrupted{false};

void handle_sigint(int) {
  g_interrupted.store(true);
  qtc_search_request_stop();
}

struct SearchArgs {
  int64_t p = 0, n_min = 0, n_max = 0;
  std::string out_path;
  std::string resume_dir;
  std::string coeffs;
  int64_t prune_sets = 100, prune_repeats = 1;
  int64_t sets = 10000, repeats = 100;
  int threads = 0;
  SeedFlag seed;
};

int cmd_search(const SearchArgs& a) {
  qtc_search_options opt{};
  opt.p = a.p;
  opt.n_min = a.n_min;
  opt.n_max = a.n_max;
  opt.prune_sets = a.prune_sets;
  opt.prune_repeats = a.prune_repeats;
  opt.sets = a.sets;
  opt.repeats = a.repeats;
  opt.seed = a.seed.resolve();
  opt.threads = a.threads;
  opt.resume_dir = a.resume_dir.empty() ? nullptr : a.resume_dir.c_str();
  opt.coefficients = a.coeffs.empty() ? nullptr : a.coeffs.c_str();

  std::signal(SIGINT, handle_sigint);
  qtc_search_reset_stop();

  auto progress = [](const qtc_search_stats* s, void*) {
    std::cerr << "\rchunks " << s->chunks_done << "/" << s->chunks_total << "  visited "
              << s->visited << "  pruned " << s->pruned << std::flush;
  };
  RecordsHandle records;
  qtc_search_stats stats{};
  check(qtc_search_run(&opt, progress, nullptr, &records.ptr, &stats));
  std::cerr << "\n";

  write_records_file(records.ptr, a.out_path);
  std::cerr << "candidates: raw=" << stats.pairs_raw << " degenerate=" << stats.degenerate
            << " visited=" << stats.visited << " to_failed=" << stats.to_failed
            << " k_zero=" << stats.k_zero << " pruned=" << stats.pruned
            << " survivors=" << stats.survivors << " confirmed=" << stats.confirmed
            << " emitted=" << stats.emitted << "\n";
  if (stats.d_decreases) {
    std::cerr << "note: " << stats.d_decreases
              << " verification re-runs found a smaller distance (kept the smaller value)\n";
  }
  if (stats.interrupted) {
    std::cerr << "interrupted; partial results written to " << a.out_path << "\n";
    return 130;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  std::vector<std::string> inputs;
  std::string mode = "global";
  std::string plot_path;
};

int cmd_fit(const FitArgs& a) {
  RecordsHandle records;
  check(qtc_records_create(&records.ptr));
  for (const std::string& path : a.inputs) load_records_into(path, records.ptr);

  json out;
  if (a.mode == "global") {
    qtc_fit_result fit;
    check(qtc_fit_global(records.ptr, &fit));
    out = fit_json(fit);
  } else {
    std::vector<qtc_fit_result> fits(64);
    std::vector<int64_t> ps(64);
    size_t count = 0;
    qtc_fit_result second;
    bool want_second = a.mode == "slopes-vs-lnp";
    check(qtc_fit_per_p(records.ptr, fits.data(), ps.data(), fits.size(), &count,
                        want_second ? &second : nullptr));
    json per_p = json::array();
    for (size_t i = 0; i < count && i < fits.size(); ++i) {
      json j = fit_json(fits[i]);
      j["p"] = ps[i];
      per_p.push_back(j);
    }
    if (want_second) {
      out = fit_json(second);
      out["per_p"] = per_p;
    } else {
      out["per_p"] = per_p;
    }
  }
  if (!a.plot_path.empty()) {
    check(qtc_plot_svg(records.ptr, a.mode == "global" ? 0 : 1, a.plot_path.c_str()));
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- tables

struct TablesArgs {
  std::string bundle;
  bool verify_k = false;
  bool verify_d = false;
  int64_t sets = 5000, repeats = 10;
  int threads = 0;
  SeedFlag seed;
};

int cmd_tables(const TablesArgs& a) {
  std::ifstream in(a.bundle, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open bundle: " << a.bundle << "\n";
    return kExitInput;
  }
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) {
    std::cerr << "error: bundle must be a JSON array of instance entries\n";
    return kExitInput;
  }

  uint64_t seed = (a.verify_d) ? a.seed.resolve() : 0;
  json rows = json::array();
  size_t k_matches = 0, k_mismatches = 0;
  size_t d_match = 0, d_below = 0, d_above = 0;

  for (size_t idx = 0; idx < doc.size(); ++idx) {
    const json& row = doc[idx];
    std::string f = row.at("f").get<std::string>();
    std::string g = row.at("g").get<std::string>();
    int64_t p = row.at("p").get<int64_t>();
    int64_t alpha = row.at("alpha").get<int64_t>();
    int64_t beta = row.at("beta").get<int64_t>();
    int64_t gamma = row.at("gamma").get<int64_t>();
    const json& pub = row.at("published");

    CodeHandle code;
    check(qtc_code_create(p, f.c_str(), g.c_str(), alpha, beta, gamma, &code.ptr));
    qtc_code_params params;
    check(qtc_code_compute_params(code.ptr, &params));

    json r;
    r["index"] = idx;
    r["p"] = p;
    r["n"] = params.n;
    r["n_published"] = pub.at("n").get<int64_t>();
    r["k_published"] = pub.at("k").get<int64_t>();
    r["k_twisted"] = params.k;
    r["k_linalg"] = params.k_oracle;
    bool ok = params.n == pub.at("n").get<int64_t>() && params.k == pub.at("k").get<int64_t>() &&
              params.k_oracle == params.k;
    r["k_ok"] = ok;
    if (ok)
      ++k_matches;
    else
      ++k_mismatches;

    if (a.verify_d) {
      qtc_distance_options opt{a.sets, a.repeats, seed, a.threads};
      qtc_distance_estimate est;
      check(qtc_code_estimate_distance(code.ptr, &opt, &est));
      int32_t published_d = pub.at("d").get<int32_t>();
      r["d_published"] = published_d;
      r["d_estimate"] = est.d_upper;
      const char* rel = est.d_upper == published_d ? "match"
                        : est.d_upper < published_d ? "below"
                                                    : "above";
      r["d_relation"] = rel;
      if (est.d_upper == published_d)
        ++d_match;
      else if (est.d_upper < published_d)
        ++d_below;
      else
        ++d_above;
      std::cerr << "row " << idx << ": d_estimate=" << est.d_upper << " (" << rel << ")\n";
    }
    rows.push_back(std::move(r));
  }

  json out;
  out["rows"] = std::move(rows);
  out["summary"]["rows"] = doc.size();
  out["summary"]["k_matches"] = k_matches;
  out["summary"]["k_mismatches"] = k_mismatches;
  if (a.verify_d) {
    out["summary"]["d_match"] = d_match;
    out["summary"]["d_below"] = d_below;
    out["summary"]["d_above"] = d_above;
  }
  std::cout << out.dump(2) << "\n";
  std::cerr << "verified " << doc.size() << " rows, " << k_matches << " k matches, "
            << k_mismatches << " k mismatches\n";
  return k_mismatches == 0 ? kExitOk : kExitTableMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Z_p toric codes on twisted tori"};
  app.require_subcommand(1);
  bool deterministic = false;
  app.add_flag("--deterministic", deterministic,
               "refuse randomized commands without an explicit --seed");
  int default_threads = env_threads();

  ParamsArgs pa;
  pa.threads = default_threads;
  auto* params = app.add_subcommand("params", "evaluate one code instance");
  params->add_option("--p", pa.p, "prime qudit dimension")->required();
  params->add_option("--f", pa.f, "stabilizer polynomial f")->required();
  params->add_option("--g", pa.g, "stabilizer polynomial g")->required();
  params->add_option("--alpha", pa.alpha)->required();
  params->add_option("--beta", pa.beta)->required();
  params->add_option("--gamma", pa.gamma)->required();
  params->add_option("--distance", pa.distance, "none, exact, or estimate")
      ->check(CLI::IsMember({"none", "exact", "estimate"}));
  params->add_option("--sets", pa.sets, "information sets per repeat");
  params->add_option("--repeats", pa.repeats);
  params->add_option("--wmax", pa.wmax, "weight cap for the exact search");
  params->add_option("--seed", pa.seed.value, "RNG seed");
  params->add_option("--threads", pa.threads);

  int64_t kp = 0;
  std::string kf, kg;
  auto* kmax = app.add_subcommand("kmax", "maximal logical dimension over all tori");
  kmax->add_option("--p", kp)->required();
  kmax->add_option("--f", kf)->required();
  kmax->add_option("--g", kg)->required();

  SearchArgs sa;
  sa.threads = default_threads;
  auto* search = app.add_subcommand("search", "enumerate the weight-6 family");
  search->add_option("--p", sa.p)->required();
  search->add_option("--n-min", sa.n_min)->required();
  search->add_option("--n-max", sa.n_max)->required();
  search->add_option("--out", sa.out_path, "results file (.csv or .json)")->required();
  search->add_option("--prune-sets", sa.prune_sets);
  search->add_option("--prune-repeats", sa.prune_repeats);
  search->add_option("--sets", sa.sets, "full-budget information sets");
  search->add_option("--repeats", sa.repeats);
  search->add_option("--seed", sa.seed.value);
  search->add_option("--threads", sa.threads);
  search->add_option("--resume", sa.resume_dir, "checkpoint directory");
  search->add_option("--coeffs", sa.coeffs, "comma-separated coefficient residues");

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "least-squares fits of kd^2/n");
  fit->add_option("--input", fa.inputs, "results CSV or bundle JSON")->required()->expected(-1);
  fit->add_option("--mode", fa.mode)->check(CLI::IsMember({"global", "per-p", "slopes-vs-lnp"}));
  fit->add_option("--plot", fa.plot_path, "write an SVG scatter plot");

  TablesArgs ta;
  ta.threads = default_threads;
  auto* tables = app.add_subcommand("tables", "verify a bundle of published rows");
  tables->add_option("--bundle", ta.bundle)->required();
  tables->add_flag("--verify-k", ta.verify_k);
  tables->add_flag("--verify-d", ta.verify_d);
  tables->add_option("--sets", ta.sets);
  tables->add_option("--repeats", ta.repeats);
  tables->add_option("--seed", ta.seed.value);
  tables->add_option("--threads", ta.threads);

  CLI11_PARSE(app, argc, argv);

  pa.seed.deterministic = deterministic;
  sa.seed.deterministic = deterministic;
  ta.seed.deterministic = deterministic;

  try {
    if (*params) return cmd_params(pa);
    if (*kmax) return cmd_kmax(kp, kf, kg);
    if (*search) return cmd_search(sa);
    if (*fit) return cmd_fit(fa);
    if (*tables) return cmd_tables(ta);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
