#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli/args.hpp"
#include "cli/report.hpp"
#include "lcdual/cli.hpp"
#include "lcdual/eigensolver.hpp"
#include "lcdual/field_io.hpp"
#include "lcdual/levicivita.hpp"
#include "lcdual/spectra.hpp"
#include "lcdual/summation.hpp"

namespace lcdual::cli {

namespace {

namespace es = lcdual::eigensolver;
namespace lc = lcdual::levicivita;

Json system_json(const SystemSpec& spec) {
  Json j;
  j["equation"] = to_string(spec.equation);
  j["potential"] = is_coulomb(spec.potential) ? "coulomb" : "oscillator";
  j["mass"] = spec.mass;
  j[is_coulomb(spec.potential) ? "kappa" : "omega"] = spec.coupling();
  return j;
}

Json report_header(const char* command) {
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  return j;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double normalization(const es::RadialSolution& sol) {
  std::vector<double> terms(sol.eigenvector.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double r = sol.grid.radius(static_cast<int>(i));
    terms[i] = sol.eigenvector[i] * sol.eigenvector[i] * r * sol.grid.h();
  }
  return pairwise_sum(terms);
}

void add_system_flags(CLI::App* cmd, SystemArgs& sys, bool with_potential) {
  cmd->add_option("--equation", sys.equation, "schroedinger | kg | dirac");
  if (with_potential) cmd->add_option("--potential", sys.potential, "coulomb | oscillator");
  cmd->add_option("--mass", sys.mass, "mu (schroedinger), M or m (kg, dirac)");
  cmd->add_option("--kappa", sys.kappa, "Coulomb coupling")->each([&sys](const std::string&) { sys.kappa_given = true; });
  if (with_potential) {
    cmd->add_option("--omega", sys.omega, "oscillator frequency")->each([&sys](const std::string&) {
      sys.omega_given = true;
    });
  }
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumArgs {
  SystemArgs sys;
  std::string l = "0";
  std::string k = "0";
  std::string method = "both";
  std::string format = "json";
  int cells = 2048;
  double rmax = 0.0;
  bool rmax_given = false;
  bool no_extrapolate = false;
  std::uint64_t seed = tridiagonal::kDefaultSeed;
};

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out, std::ostream& err) {
  const SystemSpec spec = a.sys.to_spec();
  const auto ls = parse_range(a.l).values();
  const auto ks = parse_range(a.k).values();
  const OutputFormat format = parse_format(a.format);
  if (a.method != "closed" && a.method != "numeric" && a.method != "both") {
    throw Error(ErrorCode::InvalidArgument, "unknown method '" + a.method + "' (closed|numeric|both)");
  }
  for (int k : ks) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 0");
  }
  const bool closed = a.method != "numeric";
  const bool numeric = a.method != "closed";
  const bool extrapolate = !a.no_extrapolate;

  std::vector<QuantumNumbers> states;
  for (int k : ks) {
    for (int l : ls) states.push_back({k, l});
  }

  std::vector<es::ScanResult> scan;
  if (numeric) {
    es::SolveOptions opts;
    opts.seed = a.seed;
    scan = es::scan_states(spec, states, a.cells, a.rmax_given ? std::optional<double>(a.rmax) : std::nullopt,
                           extrapolate, opts);
  }

  int status = 0;
  Json doc = report_header("spectrum");
  doc["system"] = system_json(spec);
  doc["method"] = a.method;
  Json rows = Json::array();
  std::vector<std::string> headers{"equation", "potential", "mass", "coupling", "k", "l", "method", "energy",
                                   "residual", "cells", "rmax", "iterations"};
  if (closed && numeric) headers.push_back("discrepancy");
  Table table(headers);

  for (std::size_t s = 0; s < states.size(); ++s) {
    const auto& qn = states[s];
    Json row;
    row["k"] = qn.k;
    row["l"] = qn.l;
    Json entries = Json::array();
    std::optional<double> e_closed;
    std::optional<double> e_num;
    if (closed) e_closed = spectra::closed_form_energy(spec, qn);
    if (numeric) {
      const auto& res = scan[s];
      if (res.solution) e_num = res.extrapolated.value_or(res.solution->energy);
    }
    std::optional<double> discrepancy;
    if (e_closed && e_num) discrepancy = relative_gap(*e_num, *e_closed);
    auto base_cells = [&](const char* method) {
      return std::vector<Cell>{std::string(to_string(spec.equation)),
                               std::string(is_coulomb(spec.potential) ? "coulomb" : "oscillator"),
                               spec.mass,
                               spec.coupling(),
                               static_cast<long long>(qn.k),
                               static_cast<long long>(qn.l),
                               std::string(method)};
    };
    if (e_closed) {
      Json e;
      e["method"] = "closed";
      e["energy"] = *e_closed;
      e["residual"] = 0.0;
      entries.push_back(e);
      auto cells = base_cells("closed");
      cells.insert(cells.end(), {*e_closed, 0.0, std::monostate{}, std::monostate{}, std::monostate{}});
      if (discrepancy) cells.push_back(*discrepancy);
      table.add_row(cells);
    }
    if (numeric) {
      const auto& res = scan[s];
      Json e;
      e["method"] = "numeric";
      if (res.solution) {
        const auto& sol = *res.solution;
        const double residual = res.extrapolated ? std::abs(*res.extrapolated - sol.energy) : 0.0;
        const int cells = extrapolate ? a.cells : sol.grid.n_cells;
        e["energy"] = *e_num;
        e["residual"] = residual;
        e["cells"] = cells;
        e["rmax"] = sol.grid.r_max;
        e["iterations"] = sol.iterations;
        e["converged"] = sol.converged;
        e["extrapolated"] = extrapolate;
        auto row_cells = base_cells("numeric");
        row_cells.insert(row_cells.end(), {*e_num, residual, static_cast<long long>(cells), sol.grid.r_max,
                                           static_cast<long long>(sol.iterations)});
        if (discrepancy) row_cells.push_back(*discrepancy);
        table.add_row(row_cells);
      } else {
        e["converged"] = false;
        e["error"] = res.error;
        err << "error: k=" << qn.k << " l=" << qn.l << ": " << res.error << '\n';
        status = 1;
      }
      entries.push_back(e);
    }
    row["entries"] = entries;
    if (discrepancy) row["discrepancy"] = *discrepancy;
    rows.push_back(row);
  }
  doc["rows"] = rows;

  if (format == OutputFormat::Json) {
    write_json(out, doc);
  } else {
    table.write(out, format);
  }
  return status;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  SystemArgs sys;
  int k = 0;
  int l = 0;
  int cells = 2048;
  double rmax = 0.0;
  bool rmax_given = false;
  bool no_extrapolate = false;
  double tol = 1e-12;
  double relax = 0.5;
  int max_iter = 200;
  std::string format = "json";
  std::string dump;
  int n_theta = 64;
  std::uint64_t seed = tridiagonal::kDefaultSeed;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const SystemSpec spec = a.sys.to_spec();
  const OutputFormat format = parse_format(a.format);
  const QuantumNumbers qn{a.k, a.l};
  if (qn.k < 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 0");
  if (!(a.relax > 0.0 && a.relax <= 1.0)) throw Error(ErrorCode::InvalidArgument, "--relax must lie in (0, 1]");
  const es::GridSpec grid{a.cells, a.rmax_given ? a.rmax : es::default_rmax(spec, qn)};
  grid.validate();
  es::SolveOptions opts;
  opts.tol = a.tol;
  opts.relax = a.relax;
  opts.max_iter = a.max_iter;
  opts.seed = a.seed;

  const double closed = spectra::closed_form_energy(spec, qn);
  std::optional<es::ExtrapolatedLevel> lvl;
  es::RadialSolution sol;
  if (a.no_extrapolate) {
    sol = es::solve_state(spec, qn, grid, opts);
  } else {
    lvl = es::solve_extrapolated(spec, qn, grid, opts);
    sol = lvl->coarse;
  }

  if (!a.dump.empty()) io::write_field_file(a.dump, es::to_field(lvl ? lvl->fine : sol, a.n_theta));

  Json doc = report_header("solve");
  doc["system"] = system_json(spec);
  doc["state"] = {{"k", qn.k}, {"l", qn.l}};
  doc["grid"] = {{"cells", grid.n_cells}, {"rmax", grid.r_max}};
  doc["energy"] = sol.energy;
  doc["closed_form"] = closed;
  doc["relative_error"] = relative_gap(sol.energy, closed);
  doc["iterations"] = sol.iterations;
  doc["converged"] = sol.converged;
  doc["normalization"] = normalization(sol);
  if (lvl) {
    Json r;
    r["fine_cells"] = lvl->fine.grid.n_cells;
    r["fine_energy"] = lvl->fine.energy;
    r["fine_iterations"] = lvl->fine.iterations;
    r["extrapolated"] = lvl->energy;
    r["extrapolated_relative_error"] = relative_gap(lvl->energy, closed);
    r["order_ratio"] = (sol.energy - closed) / (lvl->fine.energy - closed);
    doc["richardson"] = r;
  }
  if (format == OutputFormat::Json) {
    write_json(out, doc);
    return 0;
  }
  Table t({"quantity", "value"});
  t.add_row({std::string("energy"), sol.energy});
  t.add_row({std::string("closed_form"), closed});
  t.add_row({std::string("relative_error"), relative_gap(sol.energy, closed)});
  t.add_row({std::string("iterations"), static_cast<long long>(sol.iterations)});
  t.add_row({std::string("cells"), static_cast<long long>(grid.n_cells)});
  t.add_row({std::string("rmax"), grid.r_max});
  t.add_row({std::string("normalization"), normalization(sol)});
  if (lvl) {
    t.add_row({std::string("extrapolated"), lvl->energy});
    t.add_row({std::string("extrapolated_relative_error"), relative_gap(lvl->energy, closed)});
  }
  t.write(out, format);
  return 0;
}

// ---------------------------------------------------------------------------
// map-verify

struct MapVerifyArgs {
  SystemArgs sys;
  int k = 0;
  int l = 0;
  std::string grids = "512,1024,2048";
  double exclude_below = 0.5;
  std::string format = "json";
  std::uint64_t seed = tridiagonal::kDefaultSeed;
};

std::vector<double> convergence_orders(const std::vector<int>& n, const std::vector<double>& res) {
  std::vector<double> out;
  for (std::size_t i = 1; i < res.size(); ++i) {
    out.push_back(std::log(res[i - 1] / res[i]) / std::log(static_cast<double>(n[i]) / n[i - 1]));
  }
  return out;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

int cmd_map_verify(const MapVerifyArgs& a, std::ostream& out, std::ostream& err) {
  SystemArgs sys = a.sys;
  sys.potential = "coulomb";
  const SystemSpec spec = sys.to_spec();
  const OutputFormat format = parse_format(a.format);
  const QuantumNumbers qn{a.k, a.l};
  if (qn.k < 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 0");
  const auto grids = parse_int_list(a.grids);
  const bool dirac = spec.equation == EquationKind::Dirac;
  const double kappa = spec.coupling();
  const double x_rmax = es::default_rmax(spec, qn);
  const double u_rmax = std::sqrt(x_rmax);

  es::SolveOptions opts;
  opts.seed = a.seed;

  Json doc = report_header("map-verify");
  doc["system"] = system_json(spec);
  doc["state"] = {{"k", qn.k}, {"l", qn.l}};
  doc["operator"] = dirac ? "dirac-oscillator" : (is_relativistic(spec.equation) ? "kg-oscillator" : "nr-oscillator");
  Json rows = Json::array();
  std::vector<double> residuals;
  std::vector<double> exact_residuals;
  Table table(dirac ? std::vector<std::string>{"n_r", "n_theta", "x_cells", "energy", "residual", "residual_upper",
                                               "residual_lower", "exact_pullback_residual", "l_upper_x", "l_upper_u",
                                               "l_lower_x", "l_lower_u"}
                    : std::vector<std::string>{"n_r", "n_theta", "x_cells", "energy", "residual", "l_x", "l_u"});

  bool angular_ok = true;
  for (int n_r : grids) {
    const int n_theta = std::max(32, n_r / 8);
    const es::GridSpec xgrid{4 * n_r, x_rmax};
    const auto sol = es::solve_state(spec, qn, xgrid, opts);
    const PolarGrid ugrid{Chart::UPlane, n_r, n_theta, u_rmax, RadialLayout::CellCentered};
    const HydrogenParams hp{spec.mass, sol.energy, kappa};

    Json row;
    row["n_r"] = n_r;
    row["n_theta"] = n_theta;
    row["x_cells"] = xgrid.n_cells;
    row["x_rmax"] = x_rmax;
    row["u_rmax"] = u_rmax;
    row["energy"] = sol.energy;

    if (!dirac) {
      const Field2D f = es::to_field(sol, 2 * n_theta);
      const Field2D g = lc::pullback_scalar(f, ugrid);
      kernels::ScalarOperator op;
      if (is_relativistic(spec.equation)) {
        op = lc::kg_oscillator_operator(hp);
      } else {
        op = lc::nr_oscillator_operator(spectra::nr_map_hydrogen_to_oscillator(spec.mass, sol.energy, kappa));
      }
      const double res = lc::scalar_operator_residual(g, op);
      const auto before = lc::angular_index(f);
      const auto after = lc::angular_index(g);
      angular_ok = angular_ok && before.l == qn.l && after.l == 2 * qn.l;
      residuals.push_back(res);
      row["residual"] = res;
      row["angular_index"] = {{"x", before.l}, {"u", after.l}, {"u_purity", after.purity}};
      table.add_row({static_cast<long long>(n_r), static_cast<long long>(n_theta),
                     static_cast<long long>(xgrid.n_cells), sol.energy, res, static_cast<long long>(before.l),
                     static_cast<long long>(after.l)});
    } else {
      const Spinor2D psi = es::to_spinor(sol, spec.mass, 2 * n_theta);
      const Spinor2D phi = lc::pullback_spinor(psi, ugrid);
      const auto lit = lc::dirac_operator_residual(phi, lc::dirac_oscillator_operator(hp));
      lc::ResidualOptions ropts;
      ropts.exclude_below = a.exclude_below;
      const auto exact =
          lc::dirac_operator_residual(phi, lc::dirac_oscillator_operator(hp, lc::DiracForm::ExactPullback), ropts);
      const auto up_x = lc::angular_index(psi.upper());
      const auto up_u = lc::angular_index(phi.upper());
      const auto lo_x = lc::angular_index(psi.lower());
      const auto lo_u = lc::angular_index(phi.lower());
      angular_ok = angular_ok && up_x.l == qn.l && up_u.l == 2 * qn.l + 1 && lo_x.l == qn.l + 1 &&
                   lo_u.l == 2 * (qn.l + 1);
      residuals.push_back(lit.joint);
      exact_residuals.push_back(exact.joint);
      row["residual"] = lit.joint;
      row["residual_upper"] = lit.upper;
      row["residual_lower"] = lit.lower;
      row["exact_pullback_residual"] = exact.joint;
      row["angular_index"] = {{"upper", {{"x", up_x.l}, {"u", up_u.l}}}, {"lower", {{"x", lo_x.l}, {"u", lo_u.l}}}};
      table.add_row({static_cast<long long>(n_r), static_cast<long long>(n_theta),
                     static_cast<long long>(xgrid.n_cells), sol.energy, lit.joint, lit.upper, lit.lower, exact.joint,
                     static_cast<long long>(up_x.l), static_cast<long long>(up_u.l), static_cast<long long>(lo_x.l),
                     static_cast<long long>(lo_u.l)});
    }
    rows.push_back(row);
  }

  const bool decreasing = strictly_decreasing(residuals);
  doc["rows"] = rows;
  doc["orders"] = convergence_orders(grids, residuals);
  doc["decreasing"] = decreasing;
  if (dirac) {
    doc["exclude_below"] = a.exclude_below;
    doc["exact_pullback_orders"] = convergence_orders(grids, exact_residuals);
    doc["exact_pullback_decreasing"] = strictly_decreasing(exact_residuals);
    doc["note"] =
        "residual applies the oscillator Dirac operator to the pulled-back spinor; exact_pullback_residual adds "
        "the -2i tau Phi1 / |u|^2 term generated by transforming the lower row through Psi1 = 2 conj(tau) Phi1, "
        "evaluated on |u| >= exclude_below";
  }
  doc["angular_index_ok"] = angular_ok;

  if (format == OutputFormat::Json) {
    write_json(out, doc);
  } else {
    table.write(out, format);
  }
  if (!decreasing) {
    err << "error: residual does not decrease under refinement\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// match

struct MatchArgs {
  SystemArgs sys;
  int depth = 3;
  std::string rule = "both";
  std::string format = "json";
  int cells = 2048;
  std::uint64_t seed = tridiagonal::kDefaultSeed;
};

int hydrogen_s(const QuantumNumbers& qn) { return 2 * qn.k + 2 * std::abs(qn.l) + 1; }

Json entry_json(const SpectrumEntry& e) {
  return {{"k", e.qn.k}, {"l", e.qn.l}, {"energy", e.energy}, {"method", e.method == Method::ClosedForm ? "closed" : "numeric"}};
}

int cmd_match(const MatchArgs& a, std::ostream& out, std::ostream& err) {
  SystemArgs sys = a.sys;
  sys.potential = "coulomb";
  sys.omega_given = false;  // --omega belongs to the oscillator side here
  const SystemSpec hspec = sys.to_spec();
  if (!(sys.omega > 0.0)) throw Error(ErrorCode::NegativeOmega, "--omega must be positive");
  const OutputFormat format = parse_format(a.format);
  const RuleChoice choice = parse_rule(a.rule);
  if (a.depth < 0) throw Error(ErrorCode::InvalidArgument, "--depth must be >= 0");
  const bool rel = is_relativistic(hspec.equation);
  const double kappa = hspec.coupling();

  spectra::MatchContext ctx;
  ctx.family = rel ? spectra::Family::Relativistic : spectra::Family::NonRelativistic;
  ctx.osc_mass = rel ? hspec.mass : 4.0 * hspec.mass;
  ctx.omega = sys.omega;
  ctx.hyd_mass = hspec.mass;
  ctx.kappa = kappa;

  // Hydrogen shells s = 1, 3, ..., 2 depth - 1.
  std::vector<QuantumNumbers> hstates;
  for (int j = 0; j < a.depth; ++j) {
    for (int l = -j; l <= j; ++l) hstates.push_back({j - std::abs(l), l});
  }
  std::vector<SpectrumEntry> hyd_closed;
  for (const auto& qn : hstates) {
    hyd_closed.push_back({qn, std::nullopt, spectra::closed_form_energy(hspec, qn), Method::ClosedForm, 0.0});
  }
  es::SolveOptions opts;
  opts.seed = a.seed;
  const auto scan = es::scan_states(hspec, hstates, a.cells, std::nullopt, true, opts);
  std::vector<SpectrumEntry> hyd_oracle;
  for (const auto& r : scan) {
    if (!r.solution) throw Error(ErrorCode::ConvergenceFailure, "oracle solve failed: " + r.error);
    hyd_oracle.push_back({r.qn, std::nullopt, *r.extrapolated, Method::Numerical,
                          std::abs(*r.extrapolated - r.solution->energy)});
  }

  // Oscillator shells N = 0 .. 2 depth - 2, every polar label.
  std::vector<SpectrumEntry> osc;
  for (int n = 0; n <= 2 * a.depth - 2; ++n) {
    const double eps = rel ? spectra::rel_oscillator_level(ctx.osc_mass, ctx.omega, n) : (n + 1) * ctx.omega;
    for (int l = -n; l <= n; l += 2) {
      osc.push_back({{(n - std::abs(l)) / 2, l}, std::nullopt, eps, Method::ClosedForm, 0.0});
    }
  }

  std::vector<spectra::MatchRule> rules;
  if (choice != RuleChoice::OddN1N2) rules.push_back(spectra::MatchRule::EvenLo);
  if (choice != RuleChoice::EvenLo) rules.push_back(spectra::MatchRule::OddN1N2);

  Json doc = report_header("match");
  doc["family"] = rel ? "relativistic" : "non-relativistic";
  doc["system"] = system_json(hspec);
  doc["oscillator"] = {{"mass", ctx.osc_mass}, {"omega", ctx.omega}};
  doc["depth"] = a.depth;
  doc["oracle"] = {{"cells", a.cells}, {"extrapolated", true}};
  Json rule_docs = Json::array();
  Table table({"rule", "reference", "osc_k", "osc_l", "osc_energy", "predicted", "hyd_k", "hyd_l", "hyd_s",
               "hyd_energy", "discrepancy", "tolerance", "agrees"});
  std::vector<std::string> supported;
  std::set<int> even_matched_s;
  bool even_supported = false;
  bool odd_supported = false;

  for (const auto rule : rules) {
    Json rd;
    rd["rule"] = to_string(rule);
    bool oracle_ok = false;
    for (const bool oracle : {false, true}) {
      const auto& hyd = oracle ? hyd_oracle : hyd_closed;
      const char* ref = oracle ? "oracle" : "closed";
      Json part;
      try {
        const auto report = spectra::match_levels(osc, hyd, rule, ctx);
        Json pairs = Json::array();
        for (const auto& p : report.matched) {
          Json pj;
          pj["oscillator"] = entry_json(p.oscillator);
          pj["predicted_energy"] = p.predicted_energy;
          if (p.hydrogen) {
            pj["hydrogen"] = entry_json(*p.hydrogen);
            pj["hydrogen"]["s"] = hydrogen_s(p.hydrogen->qn);
            pj["relative_discrepancy"] = p.relative_discrepancy;
            pj["tolerance"] = p.tolerance;
            if (rule == spectra::MatchRule::EvenLo && oracle && p.agrees) {
              even_matched_s.insert(hydrogen_s(p.hydrogen->qn));
            }
          }
          pj["agrees"] = p.agrees;
          pairs.push_back(pj);
          std::vector<Cell> cells{std::string(to_string(rule)), std::string(ref),
                                  static_cast<long long>(p.oscillator.qn.k), static_cast<long long>(p.oscillator.qn.l),
                                  p.oscillator.energy, p.predicted_energy};
          if (p.hydrogen) {
            cells.insert(cells.end(), {static_cast<long long>(p.hydrogen->qn.k),
                                       static_cast<long long>(p.hydrogen->qn.l),
                                       static_cast<long long>(hydrogen_s(p.hydrogen->qn)), p.hydrogen->energy,
                                       p.relative_discrepancy, p.tolerance, p.agrees});
          } else {
            cells.insert(cells.end(), {std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                                       std::monostate{}, std::monostate{}, false});
          }
          table.add_row(cells);
        }
        Json rejected = Json::array();
        for (const auto& e : report.rejected) rejected.push_back(entry_json(e));
        Json uncovered = Json::array();
        for (const auto& e : report.uncovered_hydrogen) uncovered.push_back(entry_json(e));
        part["matched"] = pairs;
        part["rejected"] = rejected;
        part["uncovered_hydrogen"] = uncovered;
        part["supported"] = report.supported();
        if (oracle) oracle_ok = report.supported();
      } catch (const Error& e) {
        part["supported"] = false;
        part["error"] = e.what();
      }
      rd[ref] = part;
    }
    rd["oracle_supported"] = oracle_ok;
    if (oracle_ok) supported.emplace_back(to_string(rule));
    (rule == spectra::MatchRule::EvenLo ? even_supported : odd_supported) = oracle_ok;
    rule_docs.push_back(rd);
  }
  doc["rules"] = rule_docs;
  doc["supported_rules"] = supported;
  doc["matched_s"] = std::vector<int>(even_matched_s.begin(), even_matched_s.end());
  if (choice == RuleChoice::Both && a.depth > 0) {
    if (even_supported && !odd_supported) {
      doc["note"] =
          "Oscillator shells with odd n1 + n2 carry an even level number nu = n1 + n2 + 1, so the hydrogen energies "
          "they imply have even nu. The computed hydrogen spectrum contains only odd nu = 2k + 2|l| + 1, so the "
          "odd-n1+n2 selection is not supported; the even-l_o selection reproduces every computed hydrogen level.";
    } else {
      doc["note"] = "even-lo supported: " + std::string(even_supported ? "yes" : "no") +
                    "; odd-n1n2 supported: " + std::string(odd_supported ? "yes" : "no");
    }
  }

  if (format == OutputFormat::Json) {
    write_json(out, doc);
  } else {
    table.write(out, format);
    if (doc.contains("note")) out << "# " << doc["note"].get<std::string>() << '\n';
  }
  if (a.depth > 0 && supported.empty()) {
    err << "error: no selection rule reproduces the oracle spectrum\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// momentum-check

struct MomentumArgs {
  double h = 1e-2;
  std::string format = "json";
};

int cmd_momentum_check(const MomentumArgs& a, std::ostream& out, std::ostream& err) {
  const OutputFormat format = parse_format(a.format);
  if (!(a.h > 0.0)) throw Error(ErrorCode::InvalidArgument, "--h must be positive");
  const auto x1 = [](double u, double) { return cplx{u, 0.0}; };
  const auto x2 = [](double, double v) { return cplx{v, 0.0}; };
  const auto gaussian = [](double u, double v) {
    const double du = u - 2.0;
    const double dv = v;
    return cplx{std::exp(-(du * du + dv * dv)), 0.0};
  };
  const double r1 = lc::momentum_identity_residual(x1, a.h);
  const double r2 = lc::momentum_identity_residual(x2, a.h);
  const double g1 = lc::momentum_identity_residual(gaussian, a.h);
  const double g2 = lc::momentum_identity_residual(gaussian, 0.5 * a.h);
  const double ratio = g1 / g2;
  const bool poly_ok = r1 <= 1e-12 && r2 <= 1e-12;
  const bool order_ok = ratio >= 3.5 && ratio <= 4.5;

  Json doc = report_header("momentum-check");
  doc["samples"] = lc::momentum_sample_points().size();
  doc["fields"] = Json::array({
      Json{{"field", "x1"}, {"h", a.h}, {"residual", r1}},
      Json{{"field", "x2"}, {"h", a.h}, {"residual", r2}},
      Json{{"field", "gaussian"}, {"h", a.h}, {"residual", g1}},
      Json{{"field", "gaussian"}, {"h", 0.5 * a.h}, {"residual", g2}},
  });
  doc["gaussian_ratio"] = ratio;
  doc["polynomial_exact"] = poly_ok;
  doc["second_order"] = order_ok;
  if (format == OutputFormat::Json) {
    write_json(out, doc);
  } else {
    Table t({"field", "h", "residual"});
    t.add_row({std::string("x1"), a.h, r1});
    t.add_row({std::string("x2"), a.h, r2});
    t.add_row({std::string("gaussian"), a.h, g1});
    t.add_row({std::string("gaussian"), 0.5 * a.h, g2});
    t.write(out, format);
  }
  if (!poly_ok || !order_ok) {
    err << "error: momentum identity check failed\n";
    return 1;
  }
  return 0;
}

bool is_usage_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveMass:
    case ErrorCode::NonPositiveKappa:
    case ErrorCode::NegativeOmega:
    case ErrorCode::CouplingTooStrong:
    case ErrorCode::NonPositiveN:
    case ErrorCode::NonPositiveS:
    case ErrorCode::InvalidGrid:
    case ErrorCode::InvalidArgument:
    case ErrorCode::CountExceedsDimension:
    case ErrorCode::MalformedFile:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coulomb / oscillator correspondence under the Levi-Civita map", "lcdual"};
  app.require_subcommand(1);

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "closed-form and numerical spectra over a (k, l) range");
  add_system_flags(spectrum, sa.sys, true);
  spectrum->add_option("--l", sa.l, "angular range A..B");
  spectrum->add_option("--k", sa.k, "radial range A..B");
  spectrum->add_option("--method", sa.method, "closed | numeric | both");
  spectrum->add_option("--cells", sa.cells, "radial cells (Richardson pairs with 2x)");
  spectrum->add_option("--rmax", sa.rmax, "outer radius (default: per-state heuristic)")->each([&sa](const std::string&) {
    sa.rmax_given = true;
  });
  spectrum->add_flag("--no-extrapolate", sa.no_extrapolate, "report the single-grid value");
  spectrum->add_option("--format", sa.format, "json | csv | table");
  spectrum->add_option("--seed", sa.seed, "inverse-iteration seed");

  SolveArgs so;
  auto* solve = app.add_subcommand("solve", "one state with full diagnostics");
  add_system_flags(solve, so.sys, true);
  solve->add_option("--k", so.k);
  solve->add_option("--l", so.l);
  solve->add_option("--cells", so.cells);
  solve->add_option("--rmax", so.rmax)->each([&so](const std::string&) { so.rmax_given = true; });
  solve->add_flag("--no-extrapolate", so.no_extrapolate);
  solve->add_option("--tol", so.tol, "fixed-point tolerance relative to the mass");
  solve->add_option("--relax", so.relax, "fixed-point relaxation in (0, 1]");
  solve->add_option("--max-iter", so.max_iter);
  solve->add_option("--dump", so.dump, "write the x-plane field (lc-field/1) to this file");
  solve->add_option("--n-theta", so.n_theta, "angular samples for --dump");
  solve->add_option("--format", so.format);
  solve->add_option("--seed", so.seed);

  MapVerifyArgs mv;
  auto* map_verify = app.add_subcommand("map-verify", "pull a hydrogen eigenstate to the u-plane and test it");
  add_system_flags(map_verify, mv.sys, false);
  map_verify->add_option("--k", mv.k);
  map_verify->add_option("--l", mv.l);
  map_verify->add_option("--grids", mv.grids, "u-plane radial sizes, comma separated");
  map_verify->add_option("--exclude-below", mv.exclude_below, "inner |u| cut for the exact-pullback Dirac residual");
  map_verify->add_option("--format", mv.format);
  map_verify->add_option("--seed", mv.seed);

  MatchArgs ma;
  auto* match = app.add_subcommand("match", "pair oscillator and hydrogen levels under a selection rule");
  add_system_flags(match, ma.sys, false);
  match->add_option("--omega", ma.sys.omega, "oscillator frequency")->each([&ma](const std::string&) {
    ma.sys.omega_given = true;
  });
  match->add_option("--depth", ma.depth, "number of hydrogen shells");
  match->add_option("--rule", ma.rule, "even-lo | odd-n1n2 | both");
  match->add_option("--cells", ma.cells, "oracle radial cells");
  match->add_option("--format", ma.format);
  match->add_option("--seed", ma.seed);

  MomentumArgs mo;
  auto* momentum = app.add_subcommand("momentum-check", "momentum identity on built-in test fields");
  momentum->add_option("--step", mo.h, "finite-difference step h");
  momentum->add_option("--format", mo.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(sa, out, err);
    if (solve->parsed()) return cmd_solve(so, out);
    if (map_verify->parsed()) return cmd_map_verify(mv, out, err);
    if (match->parsed()) return cmd_match(ma, out, err);
    if (momentum->parsed()) return cmd_momentum_check(mo, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_usage_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace lcdual::cli
