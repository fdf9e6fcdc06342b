#include "recordlab/asymptotic.hpp"
#include "recordlab/error.hpp"
#include "recordlab/io.hpp"
#include "recordlab/multivariate.hpp"
#include "recordlab/records.hpp"
#include "recordlab/simulate.hpp"
#include "recordlab/validate.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace recordlab;

namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool unconverged = false;

  void row(std::vector<std::string> r) { rows.push_back(std::move(r)); }
  void note(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }
};

void write_csv(std::ostream& os, const Table& t, const std::string& config) {
  std::istringstream cfg(config);
  for (std::string line; std::getline(cfg, line);)
    if (!line.empty()) os << "# " << line << '\n';
  for (const auto& [k, v] : t.meta) os << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  }
}

void write_pretty(std::ostream& os, const Table& t) {
  for (const auto& [k, v] : t.meta) os << k << ": " << v << '\n';
  std::vector<std::size_t> w(t.columns.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = t.columns[i].size();
  for (const auto& r : t.rows)
    for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << (i ? "  " : "") << r[i];
      if (i + 1 < r.size()) os << std::string(w[i] - r[i].size(), ' ');
    }
    os << '\n';
  };
  line(t.columns);
  for (const auto& r : t.rows) line(r);
}

struct Globals {
  double tol = 0.0;
  std::uint64_t seed = 0;
  int max_dim = 30;
  std::string out;
  std::string format = "csv";
  std::string model = "iid";
  std::string model_file;
  std::string tail = "zero";
  // Multivariate models.
  std::string cross_file;
  int d = 1;
  double cross_rho = 0.0;

  [[nodiscard]] NumericOptions numeric() const {
    NumericOptions o;
    if (tol > 0) o.tol = tol;
    o.seed = seed;
    o.max_dim = max_dim;
    return o;
  }

  [[nodiscard]] TailRule tail_rule() const {
    if (tail == "geometric") return TailRule::Geometric;
    if (tail == "truncate") return TailRule::Truncate;
    return TailRule::Zero;
  }

  [[nodiscard]] CorrelationModel univariate() const {
    if (!model_file.empty()) return read_model_file(model_file, tail_rule());
    const auto colon = model.find(':');
    const std::string kind = model.substr(0, colon);
    auto param = [&]() {
      require(colon != std::string::npos, ErrorKind::InvalidArgument, "--model " + kind + " needs a parameter, e.g. " + kind + ":0.5");
      try {
        return std::stod(model.substr(colon + 1));
      } catch (...) {
        raise(ErrorKind::InvalidArgument, "--model: cannot parse parameter of '" + model + "'");
      }
    };
    if (kind == "iid") return CorrelationModel::iid();
    if (kind == "ar1") return CorrelationModel::ar1(param());
    if (kind == "equi") return CorrelationModel::equicorrelated(param());
    if (kind == "unit-gamma") return CorrelationModel::unit_gamma(param());
    raise(ErrorKind::InvalidArgument, "--model: unknown kind '" + kind + "' (iid, ar1:phi, equi:rho, unit-gamma:r)");
  }

  [[nodiscard]] CrossCorrelationModel cross() const {
    if (!cross_file.empty()) return read_cross_file(cross_file);
    const auto u = univariate();
    if (cross_rho == 0.0) return CrossCorrelationModel::independent(std::vector<CorrelationModel>(d, u));
    Matrix c = Matrix::Constant(d, d, cross_rho);
    c.diagonal().setOnes();
    return CrossCorrelationModel::separable(u, c);
  }
};

void law_row(Table& t, std::vector<std::string> lead, const RecordLaw& r) {
  lead.push_back(fmt(r.value));
  lead.push_back(fmt(r.abs_error));
  lead.push_back(r.converged ? "1" : "0");
  t.unconverged = t.unconverged || !r.converged;
  t.row(std::move(lead));
}

std::vector<std::string> law_columns(std::vector<std::string> lead) {
  for (const char* c : {"value", "abs_error", "converged"}) lead.emplace_back(c);
  return lead;
}

Vector to_vector(const std::vector<double>& v, int d, const char* flag) {
  require(static_cast<int>(v.size()) == d, ErrorKind::InvalidArgument,
          std::string(flag) + " needs " + std::to_string(d) + " comma-separated values");
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + fmt(v[i]);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Record statistics of stationary Gaussian and related sequences"};
  app.set_config("--config", "", "Replay a run from its echoed header (strip the leading '# ')");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "Absolute MVN tolerance (default depends on dimension)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Root seed for every random stream");
  app.add_option("--max-dim", g.max_dim, "Largest MVN dimension")->check(CLI::Range(1, 200));
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "pretty"}));
  app.add_option("--model", g.model, "iid, ar1:phi, equi:rho or unit-gamma:r");
  app.add_option("--model-file", g.model_file, "Lag table or correlation matrix CSV")->check(CLI::ExistingFile);
  app.add_option("--tail", g.tail, "Extension rule for tabulated models")
      ->check(CLI::IsMember({"zero", "geometric", "truncate"}));
  app.add_option("--cross-file", g.cross_file, "Lag-stamped d x d cross-correlation blocks")->check(CLI::ExistingFile);
  app.add_option("--d", g.d, "Components for multivariate models built from --model")->check(CLI::Range(1, 16));
  app.add_option("--cross-rho", g.cross_rho, "Equal cross-correlation between components");

  Table table;
  std::vector<int> ns{5};
  std::vector<double> xs{0.0};
  int j = 2;
  std::vector<double> x1{0.0}, x2{kInf};
  TailPolicy policy;
  auto add_n = [&](CLI::App* c) { c->add_option("--n", ns, "Time index (comma list allowed)")->delimiter(',')->check(CLI::Range(1, 100000)); };
  auto add_x = [&](CLI::App* c) { c->add_option("--x", xs, "Evaluation points (comma list)")->delimiter(','); };
  auto add_j = [&](CLI::App* c) { c->add_option("--j", j, "Earlier record time")->check(CLI::Range(1, 100000)); };
  auto add_policy = [&](CLI::App* c) {
    c->add_option("--eps-tail", policy.eps_tail, "Tail threshold")->check(CLI::PositiveNumber);
    c->add_option("--run", policy.run, "Consecutive small terms required")->check(CLI::Range(1, 1000));
    c->add_option("--max-index", policy.max_index, "Truncation index (0: automatic)")->check(CLI::NonNegativeNumber);
    c->add_flag("--require-convergence", policy.require_convergence, "Fail with exit 3 if the tail is not reached");
  };

  auto* c_prob = app.add_subcommand("record-prob", "P(X_n is a record)");
  add_n(c_prob);
  c_prob->callback([&] {
    const auto m = g.univariate();
    table.columns = law_columns({"n"});
    for (int n : ns) law_row(table, {std::to_string(n)}, record_probability(m, n, g.numeric()));
  });

  auto* c_cdf = app.add_subcommand("record-cdf", "P(X_n <= x | X_n is a record)");
  add_n(c_cdf);
  add_x(c_cdf);
  c_cdf->callback([&] {
    const auto m = g.univariate();
    table.columns = law_columns({"n", "x"});
    for (int n : ns)
      for (double x : xs) law_row(table, {std::to_string(n), fmt(x)}, record_value_cdf(m, n, x, g.numeric()));
  });

  std::vector<int> times{2, 4};
  auto* c_arr = app.add_subcommand("arrival-times", "P(T(2) = j_2, ..., T(k) = j_k)");
  c_arr->add_option("--times", times, "Increasing record times j_2,...,j_k")->delimiter(',')->required();
  c_arr->callback([&] {
    table.columns = law_columns({"times"});
    std::string key;
    for (std::size_t i = 0; i < times.size(); ++i) key += (i ? ";" : "") + std::to_string(times[i]);
    law_row(table, {key}, arrival_times_joint(g.univariate(), times, g.numeric()));
  });

  auto* c_t2 = app.add_subcommand("t2-pmf", "P(T(2) = n)");
  add_n(c_t2);
  c_t2->callback([&] {
    const auto m = g.univariate();
    table.columns = law_columns({"n"});
    for (int n : ns) law_row(table, {std::to_string(n)}, second_record_time_pmf(m, n, g.numeric()));
  });

  auto series = [&](bool second) {
    const auto m = g.univariate();
    table.columns = {"x", "value", "abs_error", "residual_bound", "last_index", "status", "converged"};
    for (double x : xs) {
      const auto s = second ? second_increment_cdf(m, x, policy, g.numeric()) : first_increment_cdf(m, x, policy, g.numeric());
      table.unconverged = table.unconverged || !s.converged;
      table.row({fmt(x), fmt(s.value), fmt(s.abs_error), fmt(s.residual_bound), std::to_string(s.last_index),
                 to_string(s.status), s.converged ? "1" : "0"});
    }
  };
  auto* c_inc = app.add_subcommand("increment-cdf", "P(X_T(2) - X_1 <= x), truncated series");
  add_x(c_inc);
  add_policy(c_inc);
  c_inc->callback([&] { series(false); });
  auto* c_inc2 = app.add_subcommand("increment2-cdf", "P(X_T(3) - X_T(2) <= x), truncated series");
  add_x(c_inc2);
  add_policy(c_inc2);
  c_inc2->callback([&] { series(true); });

  auto* c_exp = app.add_subcommand("expected-records", "Expected number of records over the infinite sequence");
  add_policy(c_exp);
  c_exp->callback([&] {
    const auto e = expected_records(g.univariate(), policy, g.numeric());
    table.note("classification", to_string(e.classification));
    table.note("partial_sum", fmt(e.partial_sum));
    table.note("value", fmt(e.value));
    table.note("abs_error", fmt(e.abs_error));
    table.unconverged = !e.converged;
    table.columns = {"n", "record_prob", "n_times_prob"};
    for (std::size_t i = 0; i < e.terms.size(); ++i)
      table.row({std::to_string(i + 2), fmt(e.terms[i]), fmt((i + 2) * e.terms[i])});
  });

  auto pair_cmd = [&](const char* name, const char* desc, auto fn) {
    auto* c = app.add_subcommand(name, desc);
    add_j(c);
    add_n(c);
    c->callback([&, fn] {
      const auto m = g.univariate();
      table.columns = law_columns({"j", "n"});
      for (int n : ns) law_row(table, {std::to_string(j), std::to_string(n)}, fn(m, j, n, g.numeric()));
    });
  };
  pair_cmd("joint-prob", "P(records at j and n)", [](const auto& m, int a, int b, const NumericOptions& o) {
    return joint_record_prob(m, a, b, o);
  });
  pair_cmd("cons-joint-prob", "P(consecutive records at j and n)",
           [](const auto& m, int a, int b, const NumericOptions& o) { return consecutive_joint_record_prob(m, a, b, o); });

  auto pair_cdf_cmd = [&](const char* name, const char* desc, bool consecutive) {
    auto* c = app.add_subcommand(name, desc);
    add_j(c);
    add_n(c);
    c->add_option("--x1", x1, "Bound on the record at j (comma list)")->delimiter(',');
    c->add_option("--x2", x2, "Bound on the record at n (comma list)")->delimiter(',');
    c->callback([&, consecutive] {
      const auto m = g.univariate();
      table.columns = law_columns({"j", "n", "x1", "x2"});
      for (int n : ns)
        for (double a : x1)
          for (double b : x2) {
            const auto r = consecutive ? consecutive_joint_record_cdf(m, j, n, a, b, g.numeric())
                                       : joint_record_cdf(m, j, n, a, b, g.numeric());
            law_row(table, {std::to_string(j), std::to_string(n), fmt(a), fmt(b)}, r);
          }
    });
  };
  pair_cdf_cmd("joint-cdf", "P(X_j <= x1, X_n <= x2 | records at j and n)", false);
  pair_cdf_cmd("cons-joint-cdf", "Joint cdf given consecutive records at j and n", true);

  std::vector<double> vx, vx1, vx2;
  auto* c_cp = app.add_subcommand("complete-prob", "P(X_n is a complete record), d-variate");
  add_n(c_cp);
  c_cp->callback([&] {
    const auto m = g.cross();
    table.note("cross_model", m.describe());
    table.columns = law_columns({"n"});
    for (int n : ns) law_row(table, {std::to_string(n)}, complete_record_prob(m, n, g.numeric()));
  });
  auto* c_cc = app.add_subcommand("complete-cdf", "P(X_n <= x | complete record at n)");
  add_n(c_cc);
  c_cc->add_option("--x", vx, "Componentwise bound, d values")->delimiter(',')->required();
  c_cc->callback([&] {
    const auto m = g.cross();
    table.columns = law_columns({"n", "x"});
    for (int n : ns) law_row(table, {std::to_string(n), join(vx)}, complete_record_cdf(m, n, to_vector(vx, m.dim(), "--x"), g.numeric()));
  });
  auto* c_jcp = app.add_subcommand("joint-complete-prob", "P(complete records at j and n)");
  add_j(c_jcp);
  add_n(c_jcp);
  c_jcp->callback([&] {
    const auto m = g.cross();
    table.columns = law_columns({"j", "n"});
    for (int n : ns) law_row(table, {std::to_string(j), std::to_string(n)}, joint_complete_record_prob(m, j, n, g.numeric()));
  });
  auto* c_jcc = app.add_subcommand("joint-complete-cdf", "P(X_j <= x1, X_n <= x2 | complete records at j and n)");
  add_j(c_jcc);
  add_n(c_jcc);
  c_jcc->add_option("--x1", vx1, "Bound at j, d values")->delimiter(',')->required();
  c_jcc->add_option("--x2", vx2, "Bound at n, d values")->delimiter(',')->required();
  c_jcc->callback([&] {
    const auto m = g.cross();
    table.columns = law_columns({"j", "n", "x1", "x2"});
    for (int n : ns)
      law_row(table, {std::to_string(j), std::to_string(n), join(vx1), join(vx2)},
              joint_complete_record_cdf(m, j, n, to_vector(vx1, m.dim(), "--x1"), to_vector(vx2, m.dim(), "--x2"),
                                        g.numeric()));
  });

  int chernick_m = 0;
  std::vector<double> coeffs;
  double alpha = 1.5, kappa = 0.0;
  std::vector<std::string> hsing;
  auto* c_th = app.add_subcommand("theta", "Extremal index of the worked processes");
  auto* o_ch = c_th->add_option("--chernick-m", chernick_m, "Chernick AR(1) with m-point innovations")->check(CLI::Range(2, 1000000));
  auto* o_st = c_th->add_option("--stable-coeffs", coeffs, "Stable moving-average coefficients")->delimiter(',');
  c_th->add_option("--alpha", alpha, "Stable index")->check(CLI::Range(0.0, 2.0));
  c_th->add_option("--kappa", kappa, "Stable skewness")->check(CLI::Range(-1.0, 1.0));
  auto* o_hs = c_th->add_option("--hsing-delta", hsing, "lag:delta pairs, e.g. 1:1,2:2.5 (inf allowed)")->delimiter(',');
  o_ch->excludes(o_st)->excludes(o_hs);
  o_st->excludes(o_hs);
  c_th->callback([&] {
    ExtremalIndex e;
    if (chernick_m > 0) {
      e = chernick_theta(chernick_m);
      table.note("limit", "exp(theta x), x < 0, norming a_n = 1/n, b_n = 1");
    } else if (!coeffs.empty()) {
      e = stable_ma_theta(coeffs, alpha, kappa);
      table.note("limit", "exp(-theta x^-alpha), norming n^(1/alpha)");
    } else if (!hsing.empty()) {
      std::map<int, double> deltas;
      for (const auto& item : hsing) {
        const auto c = item.find(':');
        require(c != std::string::npos, ErrorKind::InvalidArgument, "--hsing-delta entries look like lag:delta");
        try {
          const std::string v = item.substr(c + 1);
          deltas[std::stoi(item.substr(0, c))] = v == "inf" ? kInf : std::stod(v);
        } catch (const std::logic_error&) {
          raise(ErrorKind::InvalidArgument, "--hsing-delta: cannot parse '" + item + "'");
        }
      }
      e = hsing_theta(deltas, g.tol > 0 ? g.tol : 1e-6, g.seed);
      table.note("limit", "exp(-theta e^-x), Gaussian norming");
    } else {
      raise(ErrorKind::InvalidArgument, "theta needs --chernick-m, --stable-coeffs or --hsing-delta");
    }
    table.columns = {"theta", "abs_error", "provenance", "flagged"};
    table.row({fmt(e.theta), fmt(e.abs_error), e.provenance, e.flagged ? "1" : "0"});
  });

  std::string family = "gumbel";
  double shape = 0.0, theta = 1.0;
  auto* c_gev = app.add_subcommand("gev", "G(x)^theta for a GEV family");
  c_gev->add_option("--family", family, "gumbel, frechet, weibull or general")
      ->check(CLI::IsMember({"gumbel", "frechet", "weibull", "general"}));
  c_gev->add_option("--shape", shape, "alpha (frechet), beta (weibull) or gamma (general)");
  c_gev->add_option("--theta", theta, "Extremal index exponent")->check(CLI::PositiveNumber);
  add_x(c_gev);
  c_gev->callback([&] {
    GevSpec s = family == "frechet" ? GevSpec::frechet(shape)
                : family == "weibull" ? GevSpec::neg_weibull(shape)
                : family == "general" ? GevSpec::general(shape)
                                      : GevSpec::gumbel();
    table.columns = {"x", "cdf", "pdf"};
    for (double x : xs) table.row({fmt(x), fmt(gev_cdf(x, s, theta)), fmt(gev_pdf(x, s, theta))});
  });

  std::string process = "gaussian", margin = "identity", dump;
  int sim_n = 10;
  std::size_t paths = 10000, dump_paths = 1000;
  bool want_theta = false;
  int runs = 3;
  double quantile = 0.95;
  auto* c_sim = app.add_subcommand("simulate", "Monte Carlo record statistics");
  c_sim->add_option("--process", process, "gaussian, chernick or stable-ma")
      ->check(CLI::IsMember({"gaussian", "chernick", "stable-ma"}));
  c_sim->add_option("--n", sim_n, "Path length")->check(CLI::Range(1, 10000000));
  c_sim->add_option("--paths", paths, "Number of paths")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40));
  c_sim->add_option("--margin", margin, "Monotone margin transform")->check(CLI::IsMember({"identity", "exp", "cube"}));
  c_sim->add_option("--chernick-m", chernick_m, "Chernick innovation count")->check(CLI::Range(2, 1000000));
  c_sim->add_option("--stable-coeffs", coeffs, "Moving-average coefficients")->delimiter(',');
  c_sim->add_option("--alpha", alpha, "Stable index")->check(CLI::Range(0.0, 2.0));
  c_sim->add_option("--kappa", kappa, "Stable skewness")->check(CLI::Range(-1.0, 1.0));
  c_sim->add_option("--dump", dump, "Write the first --dump-paths raw paths in RLAB binary format");
  c_sim->add_option("--dump-paths", dump_paths, "Rows in the raw dump");
  c_sim->add_flag("--extremal-index", want_theta, "Runs estimate of theta from up to 1000 paths");
  c_sim->add_option("--runs", runs, "Run length r of the runs estimator")->check(CLI::Range(1, 100000));
  c_sim->add_option("--quantile", quantile, "Threshold quantile")->check(CLI::Range(0.8, 1.0));
  c_sim->callback([&] {
    SimStudy s;
    s.n = sim_n;
    s.n_paths = paths;
    s.seed = g.seed;
    s.keep_increments = false;
    if (process == "chernick") {
      s.process = ChernickProcess{chernick_m > 0 ? chernick_m : 2};
    } else if (process == "stable-ma") {
      s.process = StableMaProcess{coeffs.empty() ? std::vector<double>{1.0} : coeffs, alpha, kappa};
    } else if (!g.cross_file.empty() || g.d > 1) {
      s.process = g.cross();
    } else {
      s.process = g.univariate();
    }
    if (margin == "exp") s.margin = [](double v) { return std::exp(v); };
    if (margin == "cube") s.margin = [](double v) { return v * v * v + v; };
    const auto st = simulate_records(s);
    table.note("paths", std::to_string(paths));
    table.note("expected_records", fmt(st.expected_records()));
    table.note("expected_records_se", st.se_defined() ? fmt(st.expected_records_se()) : "undefined");
    const bool rb = !st.rb_sum.empty();
    table.columns = {"t", "rate", "se"};
    if (rb) table.columns.emplace_back("rb_rate");
    for (int t = 1; t <= sim_n; ++t) {
      std::vector<std::string> r{std::to_string(t), fmt(st.rate(t)), st.se_defined() ? fmt(st.rate_se(t)) : "nan"};
      if (rb) r.push_back(fmt(st.rb_rate(t)));
      table.row(std::move(r));
    }
    if (!dump.empty()) {
      write_binary(dump, sample_paths(s, std::min(dump_paths, paths)));
      table.note("dump", dump);
    }
    if (want_theta) {
      const auto e = empirical_extremal_index(sample_paths(s, std::min<std::size_t>(paths, 1000)), runs, quantile, g.seed);
      table.note("theta_hat", fmt(e.theta));
      table.note("theta_ci", fmt(e.ci_low) + ";" + fmt(e.ci_high));
    }
  });

  std::string suite = "iid";
  ValidationOptions vopt;
  auto* c_val = app.add_subcommand("validate", "Closed form against exact values and simulation");
  c_val->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(validation_suites()));
  c_val->add_option("--n-max", vopt.n_max, "Largest time index")->check(CLI::Range(2, 30));
  c_val->add_option("--paths", vopt.paths, "Simulation paths")->check(CLI::Range(std::size_t{100}, std::size_t{1} << 32));
  bool validation_failed = false;
  c_val->callback([&] {
    vopt.numeric = g.numeric();
    if (g.model != "iid" || !g.model_file.empty()) vopt.model = g.univariate();
    const auto rep = run_validation(suite, vopt);
    table.columns = {"check", "expected", "observed", "bound", "pass"};
    for (const auto& c : rep.checks)
      table.row({c.name, fmt(c.expected), fmt(c.observed), fmt(c.bound), c.pass ? "1" : "0"});
    validation_failed = !rep.passed();
    table.note("result", rep.passed() ? "pass" : "FAIL");
  });

  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->configurable();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return is_numerical(e.kind()) ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  std::ofstream file;
  if (!g.out.empty()) {
    file.open(g.out);
    if (!file) {
      std::cerr << "error: cannot write --out " << g.out << '\n';
      return 2;
    }
  }
  std::ostream& os = g.out.empty() ? std::cout : file;
  if (g.format == "pretty")
    write_pretty(os, table);
  else
    write_csv(os, table, app.config_to_str(false, false));

  if (validation_failed) {
    std::cerr << "validation failed\n";
    return 3;
  }
  if (table.unconverged) {
    std::cerr << "warning: at least one integral missed its tolerance (see the converged column)\n";
    return 3;
  }
  return 0;
}
