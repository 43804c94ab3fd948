#include "stochorder/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "stochorder/apps.hpp"
#include "stochorder/coupling.hpp"
#include "stochorder/dependence.hpp"
#include "stochorder/io.hpp"
#include "stochorder/orders.hpp"
#include "stochorder/risk.hpp"

namespace stochorder::cli {

namespace {

using io::Json;

struct Outcome {
  Json inputs = Json::object();
  Json result = Json::object();
  std::optional<Json> witness;
  int code = kHolds;
  std::string summary;
  std::optional<std::string> raw;  // replaces the JSON report on stdout (tables)
};

std::string describe(const OrderVerdict& v) {
  if (v.holds) return "holds";
  const Witness& w = *v.witness;
  std::ostringstream s;
  auto show = [&](const Rational& r) { return w.exact ? to_string(r) : std::to_string(to_double(r)); };
  s << "fails at " << to_string(w.kind) << " = " << show(w.value) << " (lhs " << show(w.lhs)
    << ", rhs " << show(w.rhs) << ")";
  return s.str();
}

void set_verdict(Outcome& o, const OrderVerdict& v) {
  o.result["holds"] = v.holds;
  if (!v.holds) {
    o.witness = io::to_json(*v.witness);
    o.code = kFails;
  }
}

Distribution load_dist(const std::string& path, Json& echo) {
  Json raw = io::load_file(path);
  try {
    Distribution d = io::distribution_from_json(raw);
    echo = io::to_json(d);
    return d;
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

JointDist load_joint(const std::string& path, Json& echo) {
  Json raw = io::load_file(path);
  try {
    JointDist j = io::joint_from_json(raw);
    echo = io::to_json(j);
    return j;
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

const DiscreteDist& require_discrete(const Distribution& d, const std::string& what) {
  if (const auto* dd = std::get_if<DiscreteDist>(&d)) return *dd;
  throw InputError(what + " must be a discrete law (use `discretize` first)");
}

std::vector<Rational> parse_list(const std::string& text, std::string_view what) {
  std::vector<Rational> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const InputError& e) {
      throw InputError(std::string(what) + ": " + e.what());
    }
  }
  if (out.empty()) throw InputError(std::string(what) + ": empty list");
  return out;
}

// Rational or double rendering of a scalar computed on either route.
Json scalar(const Distribution& d, const std::function<Rational(const DiscreteDist&)>& exact,
            const std::function<double(const ParamDist&)>& approx) {
  if (const auto* dd = std::get_if<DiscreteDist>(&d)) return io::to_json(exact(*dd));
  return approx(std::get<ParamDist>(d));
}

// --- tables -----------------------------------------------------------------------

std::string tenths(int k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", k / 10.0);
  return buf;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render(const std::string& format) const {
    std::ostringstream s;
    if (format == "csv") {
      auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t k = 0; k < r.size(); ++k) s << (k ? "," : "") << r[k];
        s << "\n";
      };
      line(header);
      for (const auto& r : rows) line(r);
    } else {
      auto line = [&](const std::vector<std::string>& r) {
        s << "|";
        for (const auto& c : r) s << " " << c << " |";
        s << "\n";
      };
      line(header);
      s << "|";
      for (std::size_t k = 0; k < header.size(); ++k) s << "---|";
      s << "\n";
      for (const auto& r : rows) line(r);
    }
    return s.str();
  }
};

std::string bit(bool b) { return b ? "1" : "0"; }

Outcome table_bernoulli(const std::string& format, const std::optional<std::string>& c_list,
                        const std::optional<std::string>& rho_list) {
  std::vector<std::pair<std::string, Rational>> cs, rhos;
  if (c_list) {
    for (auto& v : parse_list(*c_list, "--c")) cs.emplace_back(to_string(v), v);
  } else {
    for (int k = 0; k <= 15; ++k) cs.emplace_back(tenths(k), Rational{k, 10});
  }
  if (rho_list) {
    for (auto& v : parse_list(*rho_list, "--rho")) rhos.emplace_back(to_string(v), v);
  } else {
    for (int k = -10; k <= 10; ++k) rhos.emplace_back(tenths(k), Rational{k, 10});
  }

  Outcome o;
  Table t{{"c", "rho", "ssd", "new", "classic", "analytic_ssd", "analytic_new", "analytic_classic",
           "agree"},
          {}};
  Json cells = Json::array();
  std::size_t mismatches = 0, skipped = 0;
  for (const auto& [c_text, c] : cs) {
    for (const auto& [r_text, rho] : rhos) {
      if (rho < -1 || rho > 1) {
        ++skipped;
        continue;
      }
      BernoulliRegionReport r = bernoulli_region({c, rho});
      bool agree = r.checked == r.analytic;
      if (!agree) ++mismatches;
      t.rows.push_back({c_text, r_text, bit(r.checked.ssd), bit(r.checked.cond_new),
                        bit(r.checked.cond_classic), bit(r.analytic.ssd), bit(r.analytic.cond_new),
                        bit(r.analytic.cond_classic), bit(agree)});
      cells.push_back({{"c", io::to_json(c)},
                       {"rho", io::to_json(rho)},
                       {"ssd", r.checked.ssd},
                       {"new", r.checked.cond_new},
                       {"classic", r.checked.cond_classic},
                       {"analytic_ssd", r.analytic.ssd},
                       {"analytic_new", r.analytic.cond_new},
                       {"analytic_classic", r.analytic.cond_classic},
                       {"agree", agree}});
    }
  }
  o.inputs = {{"table", "bernoulli"}};
  o.result = {{"cells", std::move(cells)}, {"mismatches", mismatches}, {"skipped", skipped}};
  o.code = mismatches == 0 ? kHolds : kFails;
  o.summary = "bernoulli table: " + std::to_string(t.rows.size()) + " cells, " +
              std::to_string(mismatches) + " mismatches";
  if (format != "json") o.raw = t.render(format);
  return o;
}

std::vector<double> parse_reals(const std::string& text, std::string_view what) {
  std::vector<double> out;
  for (const auto& r : parse_list(text, what)) out.push_back(to_double(r));
  return out;
}

Outcome table_gaussian(const std::string& format, const std::optional<std::string>& mu_list,
                       const std::optional<std::string>& sigma_list,
                       const std::optional<std::string>& rho_list) {
  std::vector<double> mus = mu_list ? parse_reals(*mu_list, "--mu") : std::vector<double>{-0.5, -0.1, 0.0, 0.1};
  std::vector<double> sigmas = sigma_list ? parse_reals(*sigma_list, "--sigma") : std::vector<double>{0.5, 1.0, 2.0};
  std::vector<double> rhos;
  if (rho_list) {
    rhos = parse_reals(*rho_list, "--rho");
  } else {
    for (int k = -9; k <= 9; ++k) rhos.push_back(k / 10.0);
  }

  Outcome o;
  Table t{{"mu_z", "sigma_z", "rho", "ssd", "new", "classic", "new_numeric", "ssd_parametric",
           "grid_max", "boundary", "agree"},
          {}};
  Json cells = Json::array();
  std::size_t mismatches = 0;
  constexpr double kBoundary = 1e-6;
  for (double mu : mus) {
    for (double sigma : sigmas) {
      for (double rho : rhos) {
        GaussianRegionReport r = gaussian_region({mu, sigma, rho});
        // Distance to the nearest active constraint of either region.
        const bool boundary = std::abs(mu) < kBoundary || std::abs(rho) < kBoundary ||
                              std::abs(rho + sigma / 2) < kBoundary;
        const bool agree = r.cond_new_numeric == r.analytic.cond_new &&
                           r.ssd_parametric == r.analytic.ssd;
        if (!agree && !boundary) ++mismatches;
        char gm[32];
        std::snprintf(gm, sizeof gm, "%.6g", r.grid_max);
        t.rows.push_back({std::to_string(mu), std::to_string(sigma), std::to_string(rho),
                          bit(r.analytic.ssd), bit(r.analytic.cond_new),
                          bit(r.analytic.cond_classic), bit(r.cond_new_numeric),
                          bit(r.ssd_parametric), gm, bit(boundary), bit(agree)});
        cells.push_back({{"mu_z", mu},
                         {"sigma_z", sigma},
                         {"rho", rho},
                         {"ssd", r.analytic.ssd},
                         {"new", r.analytic.cond_new},
                         {"classic", r.analytic.cond_classic},
                         {"new_numeric", r.cond_new_numeric},
                         {"ssd_parametric", r.ssd_parametric},
                         {"grid_max", r.grid_max},
                         {"boundary", boundary},
                         {"agree", agree}});
      }
    }
  }
  o.inputs = {{"table", "gaussian"}};
  o.result = {{"cells", std::move(cells)}, {"interior_mismatches", mismatches}};
  o.code = mismatches == 0 ? kHolds : kFails;
  o.summary = "gaussian table: " + std::to_string(t.rows.size()) + " cells, " +
              std::to_string(mismatches) + " interior mismatches";
  if (format != "json") o.raw = t.render(format);
  return o;
}

// --- subcommand handlers -------------------------------------------------------------

struct Args {
  std::string relation, which, mode, level, deductible, deductibles, p0, utility, wealth;
  std::string x_path, y_path, joint_path, loss_path, indemnity_path, at;
  std::string table_kind, format = "csv", grid = "default";
  std::optional<std::string> c_list, rho_list, mu_list, sigma_list;
  std::size_t points = 0;
  double drift = 0.0, sigma = 0.2, strike = 1.0, spot = 1.0, horizon = 1.0, time = 0.0;
  std::size_t pp_grid = 101;
};

Outcome do_check_order(const Args& a) {
  Outcome o;
  Json ex, ey;
  Distribution x = load_dist(a.x_path, ex);
  Distribution y = load_dist(a.y_path, ey);
  o.inputs = {{"relation", a.relation}, {"X", ex}, {"Y", ey}};
  OrderVerdict v;
  if (a.relation == "ssd") {
    v = check_ssd(x, y);
  } else if (a.relation == "icx") {
    v = check_icx(x, y);
  } else if (a.relation == "cx") {
    v = check_cx(x, y);
  } else {
    v = check_st(x, y);
  }
  o.result["relation"] = a.relation;
  set_verdict(o, v);
  const std::string sym = a.relation == "cx" ? "X <=cx Y" : "X >=" + a.relation + " Y";
  o.summary = sym + ": " + describe(v);
  return o;
}

Outcome do_check_cond(const Args& a) {
  Outcome o;
  Json ej;
  JointDist j = load_joint(a.joint_path, ej);
  o.inputs = {{"which", a.which}, {"joint", ej}};
  o.result["which"] = a.which;
  OrderVerdict v;
  if (a.which == "new") {
    v = cond_new(j);
  } else if (a.which == "classic") {
    v = cond_classic(j);
  } else if (a.which == "icx") {
    v = cond_icx(j);
  } else if (a.which == "cx") {
    v = cond_cx_pair(j);
  } else {
    Theorem2Certificate cert = theorem2_certificate(j);
    v = cert.condition;
    o.result["mean_zero"] = cert.mean_zero;
    o.result["certifies_cx"] = cert.certifies_cx;
  }
  set_verdict(o, v);
  o.summary = "condition " + a.which + ": " + describe(v);
  return o;
}

Outcome do_synthesize(const Args& a) {
  Outcome o;
  Json ex, ey;
  const DiscreteDist x = require_discrete(load_dist(a.x_path, ex), "X");
  const DiscreteDist y = require_discrete(load_dist(a.y_path, ey), "Y");
  const CouplingMode mode = a.mode == "ssd" ? CouplingMode::supermartingale : CouplingMode::martingale;
  o.inputs = {{"mode", a.mode}, {"X", ex}, {"Y", ey}};
  SynthResult r = synthesize(x, y, mode);
  o.result["feasible"] = r.feasible;
  o.result["coupling_mode"] = std::string(to_string(mode));
  if (r.feasible) {
    JointDist j = r.coupling->to_joint();
    o.result["plan"] = io::to_json(*r.coupling);
    o.result["joint"] = io::to_json(j);
    o.result["verification"] = {{"verify_coupling", verify_coupling(*r.coupling, x, y, mode)},
                                {"cond_classic", cond_classic(j).holds},
                                {"cond_new", cond_new(j).holds}};
    o.summary = "coupling found (" + std::string(to_string(mode)) + ")";
  } else {
    o.result["certificate"] = io::to_json(*r.certificate);
    o.witness = io::to_json(*r.certificate->witness);
    o.code = kFails;
    o.summary = "no coupling: order check " + describe(*r.certificate);
  }
  return o;
}

Outcome do_es_like(const Args& a, const std::string& which) {
  Outcome o;
  Json ex;
  Distribution d = load_dist(a.x_path, ex);
  o.inputs = {{"X", ex}};
  Json value;
  if (which == "es" || which == "phi") {
    const Rational p = parse_rational(a.level);
    o.inputs["level"] = io::to_json(p);
    if (which == "es") {
      value = scalar(d, [&](const DiscreteDist& dd) { return es(dd, p); },
                     [&](const ParamDist& pd) { return es(pd, to_double(p)); });
    } else {
      value = scalar(d, [&](const DiscreteDist& dd) { return phi(dd, p); },
                     [&](const ParamDist& pd) { return phi(pd, to_double(p)); });
    }
  } else if (which == "stoploss") {
    const Rational t = parse_rational(a.deductible);
    o.inputs["deductible"] = io::to_json(t);
    value = scalar(d, [&](const DiscreteDist& dd) { return stop_loss(dd, t); },
                   [&](const ParamDist& pd) { return stop_loss(pd, to_double(t)); });
  } else if (which == "cdf") {
    const Rational t = parse_rational(a.at);
    o.inputs["at"] = io::to_json(t);
    value = scalar(d, [&](const DiscreteDist& dd) { return cdf(dd, t); },
                   [&](const ParamDist& pd) { return cdf(pd, to_double(t)); });
  } else {
    const Rational t = parse_rational(a.level);
    o.inputs["level"] = io::to_json(t);
    value = scalar(d, [&](const DiscreteDist& dd) { return quantile_right(dd, t); },
                   [&](const ParamDist& pd) { return quantile_right(pd, to_double(t)); });
  }
  o.result["value"] = value;
  o.summary = which + " = " + (value.is_string() ? value.get<std::string>() : value.dump());
  return o;
}

Outcome do_discretize(const Args& a) {
  Outcome o;
  Json ex;
  Distribution d = load_dist(a.x_path, ex);
  const auto* pd = std::get_if<ParamDist>(&d);
  if (!pd) throw InputError("discretize expects a parametric law");
  o.inputs = {{"X", ex}, {"grid", a.points}};
  DiscreteDist out = discretize(*pd, a.points);
  o.result["distribution"] = io::to_json(out);
  o.result["approximation"] = true;
  o.summary = "discretized to " + std::to_string(out.size()) + " atoms (an approximation)";
  return o;
}

Outcome do_improver(const Args& a) {
  Outcome o;
  Json ej;
  JointDist j = load_joint(a.joint_path, ej);
  o.inputs = {{"joint", ej}};
  ImproverReport r = improver_check(j);
  o.result["in_S"] = r.in_S;
  o.result["in_N"] = r.in_N;
  o.result["S_verdict"] = io::to_json(r.s_verdict);
  o.result["N_verdict"] = io::to_json(r.n_verdict);
  std::vector<WeightedPair> pairs;
  for (const auto& at : j.atoms()) pairs.push_back({at.w, at.w + at.z, at.prob});
  const bool comonotone = is_comonotone(pairs);
  o.result["comonotone"] = comonotone;
  if (comonotone) o.result["S_equals_N"] = prop4_check(j);
  if (!r.in_S) {
    o.witness = io::to_json(*r.s_verdict.witness);
    o.code = kFails;
  }
  o.summary = std::string("X + Z >=ssd X: ") + (r.in_S ? "yes" : "no") +
              "; conditional-mean improver: " + (r.in_N ? "yes" : "no");
  return o;
}

Outcome do_marketable(const Args& a, std::ostream& err) {
  Outcome o;
  Json ex;
  Distribution loss = load_dist(a.loss_path, ex);
  Json raw_ind = io::load_file(a.indemnity_path);
  IndemnitySchedule ind = io::indemnity_from_json(raw_ind);
  const Rational p0 = parse_rational(a.p0);
  o.inputs = {{"loss", ex}, {"indemnity", io::to_json(ind)}, {"p0", io::to_json(p0)}};
  MarketabilityReport r;
  if (const auto* dd = std::get_if<DiscreteDist>(&loss)) {
    r = marketable_check(ind, *dd, p0);
  } else if (const auto* e = std::get<ParamDist>(loss).as<Exponential>()) {
    r = marketable_check(ind, *e, to_double(p0));
  } else {
    throw InputError("marketable supports discrete or exponential losses");
  }
  if (r.warning) {
    err << "warning: " << *r.warning << "\n";
    o.result["warning"] = *r.warning;
  }
  o.result["expected_indemnity"] = r.expected_indemnity;
  set_verdict(o, r.verdict);
  o.summary = "E[I | X - I >= x] >= P0: " + describe(r.verdict);
  return o;
}

Outcome do_premium(const Args& a) {
  Outcome o;
  Json ex;
  const DiscreteDist loss = require_discrete(load_dist(a.loss_path, ex), "loss");
  IndemnitySchedule ind = io::indemnity_from_json(io::load_file(a.indemnity_path));
  const Utility u = Utility::parse(a.utility);
  const double wealth = to_double(parse_rational(a.wealth));
  o.inputs = {{"loss", ex},
              {"indemnity", io::to_json(ind)},
              {"utility", u.to_string()},
              {"wealth", wealth}};
  const double premium = indifference_premium(u, wealth, loss, ind);
  Rational expected{0};
  for (const auto& at : loss.atoms()) expected += ind(at.value) * at.prob;
  o.result["premium"] = premium;
  o.result["expected_indemnity"] = io::to_json(expected);
  o.result["one_lipschitz"] = ind.is_one_lipschitz();
  o.summary = "indifference premium " + std::to_string(premium) + " (E[I] = " + to_string(expected) + ")";
  return o;
}

Outcome do_stoploss_compare(const Args& a) {
  Outcome o;
  Json ej;
  JointDist j = load_joint(a.joint_path, ej);
  o.inputs = {{"joint", ej}};
  std::optional<std::vector<Rational>> grid;
  if (!a.deductibles.empty()) {
    grid = parse_list(a.deductibles, "--deductibles");
    Json g = Json::array();
    for (const auto& d : *grid) g.push_back(io::to_json(d));
    o.inputs["deductibles"] = g;
  }
  StopLossReport r = stop_loss_compare(j, grid);
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"deductible", io::to_json(row.deductible)},
                    {"premium_x", io::to_json(row.premium_x)},
                    {"premium_sum", io::to_json(row.premium_sum)}});
  }
  o.result["rows"] = std::move(rows);
  o.result["dominates"] = r.dominates;
  o.result["condition"] = io::to_json(r.condition);
  set_verdict(o, r.condition);
  if (r.condition.holds && !r.dominates) {
    throw std::logic_error("stop-loss dominance violated although E[Z | X >= x] >= 0 holds");
  }
  o.summary = std::string("E[Z | X >= x] >= 0: ") + describe(r.condition) +
              "; X + Z premiums dominate: " + (r.dominates ? "yes" : "no");
  return o;
}

Outcome do_protective_put(const Args& a) {
  Outcome o;
  BSParams p{a.spot, a.strike, a.sigma, a.drift, a.horizon};
  o.inputs = {{"spot", p.spot},   {"strike", p.strike}, {"sigma", p.sigma}, {"drift", p.drift},
              {"horizon", p.horizon}, {"time", a.time}, {"grid", a.pp_grid}};
  ProtectivePutReport r = protective_put_check(p, a.time, a.pp_grid);
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& pt : r.points) worst = std::min(worst, pt.conditional_mean);
  o.result["p0"] = r.p0;
  o.result["expected_pt"] = r.expected_pt;
  o.result["min_conditional_mean"] = r.points.empty() ? Json(nullptr) : Json(worst);
  o.result["relevant_points"] = r.points.size();
  o.result["irrelevant_points"] = r.irrelevant_points;
  o.result["put_decreasing"] = r.put_decreasing;
  o.result["wealth_increasing"] = r.wealth_increasing;
  set_verdict(o, r.verdict);
  o.summary = "E[Z_t | X_t + Z_t <= x] >= 0 on the grid: " + describe(r.verdict);
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic-order and dependence-condition checker", "stochorder"};
  app.require_subcommand(1);
  Args a;

  auto* order = app.add_subcommand("check-order", "decide X >=ssd|icx|st Y or X <=cx Y");
  order->add_option("--relation", a.relation)->required()->check(CLI::IsMember({"ssd", "icx", "cx", "st"}));
  order->add_option("X", a.x_path)->required();
  order->add_option("Y", a.y_path)->required();

  auto* cond = app.add_subcommand("check-cond", "dependence conditions on a joint law of (W, Z)");
  cond->add_option("--which", a.which)->required()->check(CLI::IsMember({"new", "classic", "icx", "cx", "thm2"}));
  cond->add_option("joint", a.joint_path)->required();

  auto* synth = app.add_subcommand("synthesize", "supermartingale (ssd) or martingale (cx) coupling");
  synth->add_option("--mode", a.mode)->required()->check(CLI::IsMember({"ssd", "cx"}));
  synth->add_option("X", a.x_path)->required();
  synth->add_option("Y", a.y_path)->required();

  auto* es_cmd = app.add_subcommand("es", "expected shortfall at a level in [0, 1)");
  es_cmd->add_option("--level", a.level)->required();
  es_cmd->add_option("X", a.x_path)->required();

  auto* phi_cmd = app.add_subcommand("phi", "(1 - p) ES_p");
  phi_cmd->add_option("--level", a.level)->required();
  phi_cmd->add_option("X", a.x_path)->required();

  auto* sl_cmd = app.add_subcommand("stoploss", "stop-loss premium E[(X - d)+]");
  sl_cmd->add_option("--deductible", a.deductible)->required();
  sl_cmd->add_option("X", a.x_path)->required();

  auto* cdf_cmd = app.add_subcommand("cdf", "P(X <= x)");
  cdf_cmd->add_option("--at", a.at)->required();
  cdf_cmd->add_option("X", a.x_path)->required();

  auto* q_cmd = app.add_subcommand("quantile", "right quantile inf{x : P(X <= x) > t}");
  q_cmd->add_option("--level", a.level)->required();
  q_cmd->add_option("X", a.x_path)->required();

  auto* disc = app.add_subcommand("discretize", "equal-probability quantile discretization");
  disc->add_option("--grid", a.points)->required();
  disc->add_option("X", a.x_path)->required();

  auto* table = app.add_subcommand("table", "region tables for W + Z <=ssd W");
  table->add_option("kind", a.table_kind)->required()->check(CLI::IsMember({"gaussian", "bernoulli"}));
  table->add_option("--grid", a.grid)->check(CLI::IsMember({"default"}));
  table->add_option("--format", a.format)->check(CLI::IsMember({"json", "csv", "md"}));
  table->add_option("--c", a.c_list, "comma-separated c values (bernoulli)");
  table->add_option("--rho", a.rho_list, "comma-separated rho values");
  table->add_option("--mu", a.mu_list, "comma-separated mu_z values (gaussian)");
  table->add_option("--sigma", a.sigma_list, "comma-separated sigma_z values (gaussian)");

  auto* impr = app.add_subcommand("improver", "X + Z >=ssd X and E[Z | X + Z <= x] >= 0");
  impr->add_option("joint", a.joint_path)->required();

  auto* mkt = app.add_subcommand("marketable", "E[I(X) | X - I(X) >= x] >= P0 for all relevant x");
  mkt->add_option("--indemnity", a.indemnity_path)->required();
  mkt->add_option("--loss", a.loss_path)->required();
  mkt->add_option("--p0", a.p0)->required();

  auto* prem = app.add_subcommand("premium", "indifference premium");
  prem->add_option("--utility", a.utility)->required();
  prem->add_option("--wealth", a.wealth)->required();
  prem->add_option("--loss", a.loss_path)->required();
  prem->add_option("--indemnity", a.indemnity_path)->required();

  auto* slc = app.add_subcommand("stoploss-compare", "stop-loss premiums of X + Z against X");
  slc->add_option("joint", a.joint_path)->required();
  slc->add_option("--deductibles", a.deductibles, "comma-separated deductibles");

  auto* pp = app.add_subcommand("protective-put", "conditional-mean check for a protective put");
  pp->add_option("--drift", a.drift)->required();
  pp->add_option("--sigma", a.sigma)->required();
  pp->add_option("--strike", a.strike)->required();
  pp->add_option("--spot", a.spot)->required();
  pp->add_option("--horizon", a.horizon)->required();
  pp->add_option("--time", a.time)->required();
  pp->add_option("--grid", a.pp_grid);

  std::vector<std::string> argv_store{"stochorder"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kHolds;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kHolds;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kBadInput;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    if (sub == order) {
      o = do_check_order(a);
    } else if (sub == cond) {
      o = do_check_cond(a);
    } else if (sub == synth) {
      o = do_synthesize(a);
    } else if (sub == es_cmd) {
      o = do_es_like(a, "es");
    } else if (sub == phi_cmd) {
      o = do_es_like(a, "phi");
    } else if (sub == sl_cmd) {
      o = do_es_like(a, "stoploss");
    } else if (sub == cdf_cmd) {
      o = do_es_like(a, "cdf");
    } else if (sub == q_cmd) {
      o = do_es_like(a, "quantile");
    } else if (sub == disc) {
      o = do_discretize(a);
    } else if (sub == table) {
      o = a.table_kind == "bernoulli" ? table_bernoulli(a.format, a.c_list, a.rho_list)
                                      : table_gaussian(a.format, a.mu_list, a.sigma_list, a.rho_list);
    } else if (sub == impr) {
      o = do_improver(a);
    } else if (sub == mkt) {
      o = do_marketable(a, err);
    } else if (sub == prem) {
      o = do_premium(a);
    } else if (sub == slc) {
      o = do_stoploss_compare(a);
    } else {
      o = do_protective_put(a);
    }
  } catch (const InputError& e) {
    err << name << ": input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ResourceLimit& e) {
    err << name << ": " << e.what() << "\n";
    return kBadInput;
  } catch (const std::domain_error& e) {
    err << name << ": domain error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    err << name << ": input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::logic_error& e) {
    err << name << ": internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << name << ": error: " << e.what() << "\n";
    return kInternal;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (o.raw) {
    out << *o.raw;
  } else {
    Json report = {{"subcommand", name},
                   {"inputs", o.inputs},
                   {"result", o.result},
                   {"witness", o.witness ? *o.witness : Json(nullptr)},
                   {"timing_ms", ms}};
    out << report.dump(2) << "\n";
  }
  err << o.summary << "\n";
  return o.code;
}

}  // namespace stochorder::cli
