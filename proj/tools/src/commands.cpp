#include "mfu_cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <iomanip>
#include <ios>
#include <limits>

#include <CLI11.hpp>

#include "mfu/csv_io.hpp"
#include "mfu/diagnostics.hpp"
#include "mfu/error.hpp"
#include "mfu/gibbs.hpp"
#include "mfu/models.hpp"
#include "mfu_cli/demos.hpp"

namespace mfu::cli {
namespace {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<std::size_t> parse_burnin(const std::string& text) {
  if (text == "half") return std::nullopt;
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("--burnin must be 'half' or a non-negative integer");
  }
  return value;
}

void check_burnin(const RunConfig& config) {
  if (config.burnin && *config.burnin >= config.n_samples) {
    throw UsageError("--burnin must be smaller than --n-samples");
  }
}

void maybe_write(const RunConfig& config, const Chain& chain) {
  if (config.out_path) write_chain_csv(chain, *config.out_path);
}

std::ostream& fixed(std::ostream& os, int width, double value) {
  return os << std::setw(width) << std::fixed << std::setprecision(7) << value;
}

void print_time(std::ostream& out, double seconds) {
  out << "time: " << std::fixed << std::setprecision(3) << seconds << '\n';
}

void print_summary(std::ostream& out, const Summary& summary) {
  out << "burn-in: " << summary.burnin << ", retained: " << summary.retained << '\n';
  out << std::left << std::setw(12) << "param" << std::right << std::setw(14) << "mean"
      << std::setw(14) << "sd" << std::setw(14) << "2.5%" << std::setw(14) << "50%"
      << std::setw(14) << "97.5%" << std::setw(10) << "ess" << '\n';
  for (const auto& p : summary.params) {
    out << std::left << std::setw(12) << p.name << std::right;
    fixed(out, 14, p.mean);
    fixed(out, 14, p.sd);
    fixed(out, 14, p.q025);
    fixed(out, 14, p.q50);
    fixed(out, 14, p.q975);
    out << std::setw(10) << std::setprecision(1) << p.ess << '\n';
  }
}

}  // namespace

int cmd_demo_logistic(const RunConfig& config, std::ostream& out) {
  check_burnin(config);
  const LogisticDemo demo =
      run_logistic_demo(config.n_samples, config.seed, config.engine, config.burnin);
  out << std::left << std::setw(8) << "" << std::right << std::setw(14) << "mle"
      << std::setw(14) << "mcmc" << '\n';
  for (std::size_t k = 0; k < demo.posterior_mean.size(); ++k) {
    out << std::left << std::setw(8) << demo.chain.names()[k] << std::right;
    fixed(out, 14, demo.mle.coef[k]);
    fixed(out, 14, demo.posterior_mean[k]);
    out << '\n';
  }
  print_time(out, demo.seconds);
  maybe_write(config, demo.chain);
  return kExitOk;
}

int cmd_demo_hetero(const RunConfig& config, bool blocked, std::ostream& out) {
  if (config.engine == Engine::Ars) {
    throw UsageError("the heteroscedastic model provides no gradient; use --sampler slice");
  }
  check_burnin(config);
  const HeteroDemo demo = run_hetero_demo(config.n_samples, config.seed, blocked, config.burnin);
  const std::size_t k = demo.sample.beta_true.size();
  out << std::setw(6) << "" << std::setw(14) << "beta" << std::setw(14) << "beta.est"
      << std::setw(14) << "gamma" << std::setw(14) << "gamma.est" << '\n';
  for (std::size_t j = 0; j < k; ++j) {
    out << std::setw(6) << ("[" + std::to_string(j + 1) + ",]");
    fixed(out, 14, demo.sample.beta_true[j]);
    fixed(out, 14, demo.posterior_mean[j]);
    fixed(out, 14, demo.sample.gamma_true[j]);
    fixed(out, 14, demo.posterior_mean[k + j]);
    out << '\n';
  }
  out << "sigmamax: ";
  fixed(out, 0, demo.sample.sigmamax) << ' ';
  fixed(out, 0, demo.posterior_mean[2 * k]) << '\n';
  print_time(out, demo.seconds);
  maybe_write(config, demo.chain);
  return kExitOk;
}

int cmd_sample(const RunConfig& config, std::ostream& out) {
  check_burnin(config);
  if (!config.data_path) throw UsageError("sample requires --data");
  const CsvTable table = read_csv_matrix(*config.data_path);
  const auto y_it = std::find(table.names.begin(), table.names.end(), "y");
  if (y_it == table.names.end()) throw Error(ErrorCode::Parse, "data file has no 'y' column");
  const auto y_col = static_cast<std::size_t>(y_it - table.names.begin());
  if (table.names.size() < 2 || table.rows < 1) {
    throw Error(ErrorCode::Parse, "data file needs at least one covariate column and one row");
  }

  const auto n = static_cast<Eigen::Index>(table.rows);
  const auto k = static_cast<Eigen::Index>(table.names.size() - 1);
  Eigen::MatrixXd X(n, k);
  Eigen::VectorXd y(n);
  std::vector<std::string> covariates;
  for (std::size_t j = 0; j < table.names.size(); ++j) {
    if (j != y_col) covariates.push_back(table.names[j]);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index col = 0;
    for (std::size_t j = 0; j < table.names.size(); ++j) {
      const double v = table(static_cast<std::size_t>(i), j);
      if (j == y_col) {
        y[i] = v;
      } else {
        X(i, col++) = v;
      }
    }
  }

  RngStream rng(config.seed);
  const auto start = std::chrono::steady_clock::now();
  Chain chain;
  if (config.model == "logistic") {
    LogisticData data{X, y, config.prior_mean, config.prior_sd};
    data.validate();
    ControlOverrides overrides;
    overrides.engine = config.engine;
    const auto control = make_control(static_cast<std::size_t>(k), overrides);
    const std::vector<double> beta0(static_cast<std::size_t>(k), 0.0);
    std::vector<std::string> names;
    for (const auto& c : covariates) names.push_back("beta." + c);
    chain = run_chain(beta0, logit_density(data), logit_gradient(data), control,
                      config.n_samples, rng, names);
  } else if (config.model == "hetero") {
    if (config.engine == Engine::Ars) {
      throw UsageError("the heteroscedastic model provides no gradient; use --sampler slice");
    }
    HeteroData data{X, y};
    data.validate();
    const auto kk = static_cast<std::size_t>(k);
    std::vector<double> lower(2 * kk + 1, -kInf);
    lower.back() = kSigmamaxLowerBound;
    ControlOverrides overrides;
    overrides.lower = lower;
    const auto control = make_control(2 * kk + 1, overrides);
    std::vector<double> coeff0(2 * kk + 1, 0.0);
    coeff0.back() = kSigmamaxStart;
    std::vector<std::string> names;
    for (const auto& c : covariates) names.push_back("beta." + c);
    for (const auto& c : covariates) names.push_back("gamma." + c);
    names.emplace_back("sigmamax");
    chain = run_chain(coeff0, hetero_density(data), {}, control, config.n_samples, rng, names);
  } else {
    throw UsageError("unknown model '" + config.model + "' (expected logistic or hetero)");
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  print_summary(out, summarize(chain, config.burnin));
  print_time(out, seconds);
  maybe_write(config, chain);
  return kExitOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multivariate sampling with univariate slice and ARS engines", "mfu"};
  app.require_subcommand(1);

  RunConfig config;
  std::string burnin_text = "half";
  std::string sampler = "slice";
  std::string out_path;
  std::string data_path;
  bool blocked_flag = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n-samples", config.n_samples, "Gibbs cycles to run")
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()))
        ->capture_default_str();
    sub->add_option("--burnin", burnin_text, "Rows to drop: 'half' or a count")
        ->capture_default_str();
    sub->add_option("--seed", config.seed, "Random seed")->capture_default_str();
    sub->add_option("--sampler", sampler, "Univariate engine")
        ->check(CLI::IsMember({"slice", "ars"}))
        ->capture_default_str();
    sub->add_option("--out", out_path, "Write the chain to this CSV file");
  };

  auto* logistic = app.add_subcommand("demo-logistic", "Bayesian logistic regression demo");
  add_common(logistic);
  auto* hetero = app.add_subcommand("demo-hetero", "Heteroscedastic regression demo (joint)");
  add_common(hetero);
  hetero->add_flag("--blocked", blocked_flag, "Use the three-block Gibbs cycle");
  auto* hetero_blocked =
      app.add_subcommand("demo-hetero-blocked", "Heteroscedastic regression demo (blocked)");
  add_common(hetero_blocked);
  auto* sample = app.add_subcommand("sample", "Sample a model posterior for CSV data");
  add_common(sample);
  sample->add_option("--data", data_path, "CSV with covariate columns and a 'y' column")
      ->required();
  sample->add_option("--model", config.model, "Model: logistic or hetero")
      ->required()
      ->check(CLI::IsMember({"logistic", "hetero"}));
  sample->add_option("--prior-mean", config.prior_mean, "Logistic prior mean")
      ->capture_default_str();
  sample->add_option("--prior-sd", config.prior_sd, "Logistic prior sd")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      return app.exit(e, out, err);
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    config.burnin = parse_burnin(burnin_text);
    config.engine = sampler == "ars" ? Engine::Ars : Engine::Slice;
    if (!out_path.empty()) config.out_path = out_path;
    if (!data_path.empty()) config.data_path = data_path;

    if (logistic->parsed()) {
      config.command = Command::DemoLogistic;
      return cmd_demo_logistic(config, out);
    }
    if (hetero->parsed()) {
      config.command = blocked_flag ? Command::DemoHeteroBlocked : Command::DemoHetero;
      return cmd_demo_hetero(config, blocked_flag, out);
    }
    if (hetero_blocked->parsed()) {
      config.command = Command::DemoHeteroBlocked;
      return cmd_demo_hetero(config, true, out);
    }
    config.command = Command::Sample;
    return cmd_sample(config, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace mfu::cli
