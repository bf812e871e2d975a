// infogeo: exact and approximate information tests on multinomial families.
//
// Subcommands:
//   table1      exact unrestricted/restricted test table for the n=3 trinomial
//   power       exact power curves along the Hardy-Weinberg curve
//   ait         approximate information test on a sampled family
//   motivating  classical statistics for the bundled 7-category data set
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "infogeo/ait.hpp"
#include "infogeo/csv.hpp"
#include "infogeo/manifold.hpp"
#include "infogeo/stats.hpp"
#include "infogeo/submanifold.hpp"
#include "infogeo/version.hpp"

using infogeo::CountVector;
using infogeo::SimplexPoint;
using nlohmann::json;

namespace {

// Fill options from a flat JSON object whose keys are long option names.
// Values given on the command line always win; everything else is bound as
// if it had been typed.
void apply_config(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw infogeo::ValidationError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw infogeo::ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw infogeo::ValidationError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr)
      throw infogeo::ValidationError("config: unknown option '" + key + "'");
    if (opt->count() > 0) continue;
    if (value.is_array()) {
      for (const auto& v : value)
        opt->add_result(v.is_string() ? v.get<std::string>() : v.dump());
    } else {
      opt->add_result(value.is_string() ? value.get<std::string>() : value.dump());
    }
    opt->run_callback();
  }
}

std::string output_path(const std::string& out_dir, const std::string& file) {
  std::filesystem::create_directories(out_dir);
  return (std::filesystem::path(out_dir) / file).string();
}

void emit_json(const json& j, const std::string& out_dir, const std::string& file) {
  std::cout << j.dump(2) << std::endl;
  if (!out_dir.empty()) {
    std::ofstream f(output_path(out_dir, file));
    f << j.dump(2) << "\n";
  }
}

// ---------------------------------------------------------------- table1 --

void run_table1(const std::string& out_dir) {
  const double tau_bar = 0.3;
  const SimplexPoint null_dist = infogeo::hw_map(tau_bar);
  const auto outcomes = infogeo::enumerate_outcomes(3, 3);
  std::vector<std::vector<std::string>> rows;
  for (const CountVector& x : outcomes) {
    const double prob = std::exp(infogeo::multinomial_log_pmf(null_dist, x));
    const double unrestricted = infogeo::hw_unrestricted_statistic(x, tau_bar);
    const double tau = infogeo::hw_restricted_mhde(x);
    const double restricted = infogeo::hw_info_distance(tau_bar, tau);
    rows.push_back({std::to_string(x[0]), std::to_string(x[1]), std::to_string(x[2]),
                    infogeo::format_double(prob), infogeo::format_double(unrestricted),
                    infogeo::format_double(tau), infogeo::format_double(restricted)});
  }
  const std::string meta = std::string("infogeo v") + infogeo::kVersion +
                           " | table1 | null=hw(0.3) n=3 alpha-free";
  const std::vector<std::string> cols{"x1",       "x2",      "x3",      "null_prob",
                                      "info_unrestricted", "tau_mhde", "info_restricted"};
  if (out_dir.empty()) {
    std::cout << "# " << meta << "\n";
    for (std::size_t c = 0; c < cols.size(); ++c) std::cout << (c ? "," : "") << cols[c];
    std::cout << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) std::cout << (c ? "," : "") << row[c];
      std::cout << "\n";
    }
  } else {
    infogeo::write_rows_csv(output_path(out_dir, "table1.csv"), cols, rows, meta);
    std::cout << "wrote " << output_path(out_dir, "table1.csv") << std::endl;
  }
}

// ----------------------------------------------------------------- power --

void run_power(const std::string& example, double grid_step, double alpha_override,
               const std::string& out_dir) {
  if (!(grid_step > 0.0 && grid_step <= 0.5))
    throw infogeo::ValidationError("power: --grid-step must lie in (0, 0.5]");
  const double tau_bar = 0.3;
  const bool ex2 = example == "ex2";
  const int n = ex2 ? 20 : 3;
  const double alpha = alpha_override > 0.0 ? alpha_override : (ex2 ? 0.05 : 0.1);
  if (!(alpha > 0.0 && alpha < 1.0))
    throw infogeo::ValidationError("power: --alpha must lie in (0,1)");
  const SimplexPoint null_dist = infogeo::hw_map(tau_bar);

  const infogeo::OutcomeTable unrestricted = infogeo::make_outcome_table(
      n, 3, null_dist,
      [&](const CountVector& x) { return infogeo::hw_unrestricted_statistic(x, tau_bar); });
  const infogeo::OutcomeTable restricted = infogeo::make_outcome_table(
      n, 3, null_dist, [&](const CountVector& x) {
        return infogeo::hw_info_distance(tau_bar, infogeo::hw_restricted_mhde(x));
      });
  const infogeo::RandomizedTest test_u = infogeo::build_exact_test(unrestricted, alpha);
  const infogeo::RandomizedTest test_r = infogeo::build_exact_test(restricted, alpha);
  infogeo::RandomizedTest test_chi;
  if (ex2) test_chi = infogeo::chi2_critical_test(restricted, alpha, 1, n);

  std::vector<std::vector<std::string>> rows;
  for (double tau = 0.0; tau <= 1.0 + 1e-12; tau += grid_step) {
    const double t = std::min(tau, 1.0);
    const SimplexPoint alt = infogeo::hw_map(t);
    std::vector<std::string> row{
        infogeo::format_double(t),
        infogeo::format_double(infogeo::exact_power(test_u, unrestricted, alt)),
        infogeo::format_double(infogeo::exact_power(test_r, restricted, alt))};
    if (ex2)
      row.push_back(infogeo::format_double(infogeo::exact_power(test_chi, restricted, alt)));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> cols{"tau", "beta_unrestricted", "beta_restricted"};
  if (ex2) cols.push_back("beta_restricted_chi2");
  const std::string meta = std::string("infogeo v") + infogeo::kVersion + " | power " +
                           example + " | n=" + std::to_string(n) + " alpha=" +
                           infogeo::format_double(alpha) + " null=hw(0.3) grid_step=" +
                           infogeo::format_double(grid_step);
  const std::string file = "power_" + example + ".csv";
  if (out_dir.empty()) {
    std::cout << "# " << meta << "\n";
    for (std::size_t c = 0; c < cols.size(); ++c) std::cout << (c ? "," : "") << cols[c];
    std::cout << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) std::cout << (c ? "," : "") << row[c];
      std::cout << "\n";
    }
  } else {
    infogeo::write_rows_csv(output_path(out_dir, file), cols, rows, meta);
    std::cout << "wrote " << output_path(out_dir, file) << std::endl;
  }
}

// ------------------------------------------------------------------- ait --

struct AitOptions {
  std::vector<int> counts;
  std::vector<double> null_probs;
  std::string submanifold;
  std::string dists_path;
  int m = 100;
  int knn = 5;
  double epsilon = 0.0;
  bool use_epsilon = false;
  int dim = 0;  // 0 = family default
  int ell = 0;  // 0 = auto
  std::string oos;
  int replicates = 2000;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
  bool add_one = false;
  std::string out_dir;
};

void run_ait(const AitOptions& opt) {
  if (opt.counts.empty()) throw infogeo::ValidationError("ait: --counts is required");
  const CountVector x(opt.counts);
  if (x.n() < 1) throw infogeo::ValidationError("ait: counts must sum to a positive n");

  // Assemble the null-first distribution list.
  std::vector<SimplexPoint> dists;
  int default_dim = 1;
  if (!opt.dists_path.empty()) {
    std::vector<SimplexPoint> from_file = infogeo::read_distributions_csv(opt.dists_path);
    if (!opt.null_probs.empty()) dists.emplace_back(opt.null_probs);
    for (auto& p : from_file) dists.push_back(std::move(p));
  } else {
    std::unique_ptr<infogeo::Submanifold> family;
    if (opt.submanifold == "hw") {
      family = std::make_unique<infogeo::HardyWeinberg>();
    } else if (opt.submanifold == "spherical") {
      family = std::make_unique<infogeo::SphericalSubfamily>();
    } else {
      throw infogeo::ValidationError(
          "ait: supply --dists FILE or --submanifold hw|spherical");
    }
    default_dim = family->param_dim();
    if (!opt.null_probs.empty()) {
      dists.emplace_back(opt.null_probs);
    } else if (opt.submanifold == "hw") {
      dists.push_back(infogeo::hw_map(0.3));
    } else {
      dists.push_back(infogeo::SphericalSubfamily::null_point().to_simplex());
    }
    if (opt.m < 1) throw infogeo::ValidationError("ait: --m must be >= 1");
    for (auto& p : family->sample(opt.m, {opt.master_seed, opt.stream_id}))
      dists.push_back(std::move(p));
  }
  for (const SimplexPoint& p : dists)
    if (p.size() != x.size())
      throw infogeo::ValidationError("ait: counts and distributions disagree on dimension");

  infogeo::FitParams params;
  params.rule = opt.use_epsilon ? infogeo::GraphRule::Epsilon : infogeo::GraphRule::Knn;
  params.graph_value = opt.use_epsilon ? opt.epsilon : static_cast<double>(opt.knn);
  params.dim = opt.dim > 0 ? opt.dim : default_dim;
  if (opt.ell > 0) params.ell = opt.ell;
  if (!opt.oos.empty()) {
    if (opt.oos == "cosines")
      params.oos_mode = infogeo::OosMode::LawOfCosines1D;
    else if (opt.oos == "centroid")
      params.oos_mode = infogeo::OosMode::Centroid;
    else
      throw infogeo::ValidationError("ait: --oos must be cosines or centroid");
  }

  const infogeo::EmbeddedSubmanifold sub = infogeo::fit_submanifold(std::move(dists), params);
  if (params.rule == infogeo::GraphRule::Knn && sub.effective_k > opt.knn)
    std::cerr << "note: K raised from " << opt.knn << " to " << sub.effective_k
              << " to connect the neighborhood graph\n";

  // The submanifold sample consumes streams {stream_id}; replicates start on
  // a disjoint range so reruns with the same seed are byte-identical.
  const infogeo::RngSeed mc_seed{opt.master_seed, opt.stream_id + 1};
  const infogeo::AitResult result =
      infogeo::mc_significance(sub, x, opt.replicates, mc_seed, opt.add_one);

  // Echo of the resolved run configuration; keys match the command's flags,
  // so this object can be fed back through --config verbatim.
  json config{{"counts", opt.counts},
              {"dim", params.dim},
              {"ell", sub.ell},
              {"oos", sub.oos_mode == infogeo::OosMode::LawOfCosines1D ? "cosines" : "centroid"},
              {"replicates", opt.replicates},
              {"seed", opt.master_seed},
              {"stream", opt.stream_id}};
  if (!opt.submanifold.empty()) config["submanifold"] = opt.submanifold;
  if (!opt.dists_path.empty()) config["dists"] = opt.dists_path;
  if (opt.dists_path.empty()) config["m"] = opt.m;
  if (opt.use_epsilon)
    config["epsilon"] = opt.epsilon;
  else
    config["knn"] = opt.knn;
  if (opt.add_one) config["add-one"] = true;

  json out{{"statistic", result.statistic},
           {"p_value", result.p_value},
           {"B", result.replicates},
           {"exceed_count", result.exceed_count},
           {"seed", {{"master_seed", result.seed.master_seed}, {"stream_id", result.seed.stream_id}}},
           {"graph_params",
            {{"rule", opt.use_epsilon ? "epsilon" : "knn"},
             {"value", opt.use_epsilon ? opt.epsilon : static_cast<double>(opt.knn)},
             {"effective_k", sub.effective_k}}},
           {"r", sub.dim},
           {"ell", sub.ell},
           {"oos_mode",
            sub.oos_mode == infogeo::OosMode::LawOfCosines1D ? "law_of_cosines_1d" : "centroid"},
           {"p_value_convention", opt.add_one ? "add_one" : "exceed_count_over_B"},
           {"version", infogeo::kVersion},
           {"config", config}};
  emit_json(out, opt.out_dir, "ait_result.json");

  if (!opt.out_dir.empty()) {
    // Embedding export: every fitted point plus the embedded observation.
    const int total = static_cast<int>(sub.config.points.rows());
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < total; ++i) {
      std::vector<std::string> row{std::to_string(i), i == sub.null_index ? "null" : "sample"};
      for (int c = 0; c < sub.dim; ++c)
        row.push_back(infogeo::format_double(sub.config.points(i, c)));
      rows.push_back(std::move(row));
    }
    {
      // Re-derive the observation's embedded location from its statistic
      // inputs so the CSV matches what the test used.
      const SimplexPoint emp = infogeo::empirical_distribution(x);
      std::vector<std::pair<int, double>> landmarks;
      for (int i = 1; i < total; ++i)
        landmarks.push_back({i, infogeo::hellinger_distance(emp, sub.distributions[i])});
      std::sort(landmarks.begin(), landmarks.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
      });
      const Eigen::VectorXd y =
          infogeo::embed_out_of_sample(sub.config, landmarks, sub.ell, sub.oos_mode);
      std::vector<std::string> row{std::to_string(total), "empirical"};
      for (int c = 0; c < sub.dim; ++c) row.push_back(infogeo::format_double(y(c)));
      rows.push_back(std::move(row));
    }
    std::vector<std::string> cols{"index", "role"};
    for (int c = 1; c <= sub.dim; ++c) cols.push_back("z" + std::to_string(c));
    infogeo::write_rows_csv(output_path(opt.out_dir, "ait_embedding.csv"), cols, rows,
                            std::string("infogeo v") + infogeo::kVersion + " | ait embedding | " +
                                config.dump());

    std::vector<std::string> dcols;
    for (int c = 0; c < total; ++c) dcols.push_back("d" + std::to_string(c));
    infogeo::write_matrix_csv(output_path(opt.out_dir, "ait_dissimilarity.csv"), sub.geodesics,
                              dcols,
                              std::string("infogeo v") + infogeo::kVersion +
                                  " | ait shortest-path dissimilarities | " + config.dump());
  }
}

// ------------------------------------------------------------ motivating --

void run_motivating(const std::string& out_dir) {
  const SimplexPoint null_dist({0.09, 0.09, 0.09, 0.25, 0.16, 0.16, 0.16});
  const CountVector obs({3, 5, 4, 6, 9, 2, 1});
  const double g2 = infogeo::likelihood_ratio_statistic(obs, null_dist);
  const double x2 = infogeo::pearson_statistic(obs, null_dist);
  const double lrt = infogeo::spherical_restricted_lrt(
      obs, infogeo::SphericalSubfamily::null_point());
  json out{{"n", obs.n()},
           {"counts", obs.counts()},
           {"null", null_dist.probs()},
           {"g2", g2},
           {"p_g2", infogeo::chi2_survival(6, g2)},
           {"x2", x2},
           {"p_x2", infogeo::chi2_survival(6, x2)},
           {"restricted_lrt", lrt},
           {"p_restricted_lrt", infogeo::chi2_survival(2, lrt)}};
  emit_json(out, out_dir, "motivating.json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and approximate information tests on multinomial families"};
  app.require_subcommand(1);

  std::string table1_out, table1_config;
  CLI::App* table1 = app.add_subcommand("table1", "exact test table for the n=3 trinomial");
  table1->add_option("--out", table1_out, "output directory (default: stdout)");
  table1->add_option("--config", table1_config, "JSON config file; flags override");
  table1->callback([&] {
    apply_config(table1, table1_config);
    run_table1(table1_out);
  });

  std::string power_example = "ex1", power_out;
  double grid_step = 0.005, power_alpha = 0.0;
  CLI::App* power = app.add_subcommand("power", "exact power curves on the curve family");
  power->add_option("--example", power_example, "study: ex1 (n=3) or ex2 (n=20)")
      ->check(CLI::IsMember({"ex1", "ex2"}));
  power->add_option("--grid-step", grid_step, "tau grid step (default 0.005)");
  power->add_option("--alpha", power_alpha, "test size (default: 0.1 for ex1, 0.05 for ex2)");
  power->add_option("--out", power_out, "output directory (default: stdout)");
  std::string power_config;
  power->add_option("--config", power_config, "JSON config file; flags override");
  power->callback([&] {
    apply_config(power, power_config);
    run_power(power_example, grid_step, power_alpha, power_out);
  });

  AitOptions ait;
  CLI::App* ait_cmd = app.add_subcommand("ait", "approximate information test");
  ait_cmd->add_option("--counts", ait.counts, "observed counts, comma separated")
      ->delimiter(',');
  ait_cmd->add_option("--null", ait.null_probs, "null distribution, comma separated")
      ->delimiter(',');
  ait_cmd->add_option("--submanifold", ait.submanifold, "built-in family: hw or spherical");
  ait_cmd->add_option("--dists", ait.dists_path, "CSV of sampled distributions (one per row)");
  ait_cmd->add_option("--m", ait.m, "number of sampled distributions (default 100)");
  CLI::Option* knn_opt = ait_cmd->add_option("--knn", ait.knn, "KNN graph parameter (default 5)");
  CLI::Option* eps_opt =
      ait_cmd->add_option("--epsilon", ait.epsilon, "epsilon graph parameter")->excludes(knn_opt);
  ait_cmd->add_option("--dim", ait.dim, "embedding dimension (default: family dimension)");
  ait_cmd->add_option("--ell", ait.ell, "landmarks for out-of-sample embedding");
  ait_cmd->add_option("--oos", ait.oos, "out-of-sample rule: cosines or centroid");
  ait_cmd->add_option("--replicates", ait.replicates, "Monte Carlo replicates (default 2000)");
  ait_cmd->add_option("--seed", ait.master_seed, "master seed (default 0)");
  ait_cmd->add_option("--stream", ait.stream_id, "stream id offset (default 0)");
  ait_cmd->add_flag("--add-one", ait.add_one, "use the (count+1)/(B+1) p-value convention");
  ait_cmd->add_option("--out", ait.out_dir, "output directory");
  std::string ait_config;
  ait_cmd->add_option("--config", ait_config, "JSON config file; flags override");
  ait_cmd->callback([&] {
    apply_config(ait_cmd, ait_config);
    ait.use_epsilon = eps_opt->count() > 0;
    run_ait(ait);
  });

  std::string motivating_out;
  CLI::App* motivating = app.add_subcommand("motivating", "classical tests for the bundled data");
  motivating->add_option("--out", motivating_out, "output directory");
  std::string motivating_config;
  motivating->add_option("--config", motivating_config, "JSON config file; flags override");
  motivating->callback([&] {
    apply_config(motivating, motivating_config);
    run_motivating(motivating_out);
  });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const infogeo::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << std::endl;
    return 2;
  } catch (const infogeo::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << std::endl;
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  }
}
