#include "pxp_cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "pxp/diagnostics.hpp"
#include "pxp/effective_hamiltonians.hpp"
#include "pxp/floquet_engine.hpp"
#include "pxp/observables.hpp"
#include "pxp/sector_resolved.hpp"
#include "pxp/states.hpp"
#include "pxp_cli/output.hpp"

namespace pxp::cli {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

class Context {
 public:
  explicit Context(const RunConfig& c) : cfg(c), dir(c.out), config_json(c.to_json()) {
    fs::create_directories(dir);
  }

  const RunConfig& cfg;
  fs::path dir;
  json config_json;
  std::vector<std::string> files;
  json summary = json::object();

  fs::path file(const std::string& name) {
    files.push_back(name);
    return dir / name;
  }
  CsvWriter csv(const std::string& name, const std::vector<std::string>& columns) {
    return CsvWriter(file(name), config_json, columns);
  }
  void json_file(const std::string& name, json body) {
    json j;
    j["config"] = config_json;
    for (auto& [k, v] : body.items()) j[k] = v;
    write_json(file(name), j);
  }

  void check_dense(std::size_t dim, const std::string& what) const {
    if (dim > cfg.max_dense_dim)
      throw config_error(what + " needs a dense matrix of dimension " + std::to_string(dim) + " (limit " +
                         std::to_string(cfg.max_dense_dim) + "; raise --max-dense-dim)");
  }

  DriveProtocol protocol(double lambda, double omega) const {
    DriveProtocol p{cfg.w, lambda, omega};
    p.validate();
    return p;
  }
};

std::string flag(bool b) { return b ? "1" : "0"; }

ConstrainedBasis make_basis(const RunConfig& c) { return ConstrainedBasis({c.L, c.boundary}); }

/// "auto" picks the (k = 0, p = +1) sector when the state lies in it.
Space resolve_space(const Context& ctx, const ConstrainedBasis& basis, const VecC* psi_full) {
  const std::string& s = ctx.cfg.space;
  if (s == "full") return Space::full(basis);
  if (s == "auto") {
    SectorBasis even(basis, {0, 1});
    if (psi_full && lies_in_sector(even, *psi_full)) return Space::sector(std::move(even));
    if (!psi_full) return Space::sector(std::move(even));
    return Space::full(basis);
  }
  SectorBasis sb(basis, parse_sector(s));
  if (psi_full && !lies_in_sector(sb, *psi_full))
    throw config_error("initial state " + ctx.cfg.state + " has weight outside sector " + sb.sector().tag());
  return Space::sector(std::move(sb));
}

json scar_json(const ScarSet& s, const VecR& energies, const VecR& weights) {
  json j;
  j["threshold"] = s.threshold;
  j["members"] = s.members;
  json e = json::array(), w = json::array();
  for (auto i : s.members) {
    e.push_back(rounded(energies(static_cast<Eigen::Index>(i))));
    w.push_back(rounded(weights(static_cast<Eigen::Index>(i))));
  }
  j["member_quasienergies"] = e;
  j["member_overlaps"] = w;
  j["tower"] = s.tower;
  j["w_R"] = s.w_R ? json(rounded(*s.w_R)) : json(nullptr);
  return j;
}

void run_basis(Context& ctx) {
  const ConstrainedBasis basis = make_basis(ctx.cfg);
  {
    auto w = ctx.csv("basis.csv", {"index", "bitstring"});
    for (std::size_t i = 0; i < basis.size(); ++i) w.row({std::to_string(i), to_bitstring(basis.state(i), basis.sites())});
  }
  ctx.summary["dimension"] = basis.size();
  if (ctx.cfg.boundary == Boundary::periodic && ctx.cfg.space != "auto" && ctx.cfg.space != "full") {
    SectorBasis sb(basis, parse_sector(ctx.cfg.space));
    auto w = ctx.csv("sector_basis.csv", {"index", "representative", "orbit_norm"});
    for (std::size_t i = 0; i < sb.dim(); ++i)
      w.row({std::to_string(i), to_bitstring(sb.representatives()[i], basis.sites()), num(sb.norms()[i])});
    ctx.summary["sector"] = sb.sector().tag();
    ctx.summary["sector_dimension"] = sb.dim();
  }
}

struct SpectrumRun {
  Space space;
  FloquetSpectrum spectrum;
  VecC psi0;
  std::vector<EntanglementRecord> records;
  ScarSet scars;
  DriveProtocol protocol;
  EvolutionOperator u;
};

SpectrumRun spectrum_run(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const ConstrainedBasis basis = make_basis(c);
  const VecC full = full_state_vector(basis, InitialState::parse(c.state));
  Space space = resolve_space(ctx, basis, &full);
  ctx.check_dense(space.dim(), "the Floquet spectrum");
  const DriveProtocol p = ctx.protocol(c.lambdas.front(), c.omegas.front());
  EvolutionOperator u = build_floquet_operator(space, p);
  FloquetSpectrum spec = diagonalize_floquet(u, c.method);
  VecC psi0 = space.from_full(full);
  auto records = entanglement_records(spec, space, psi0);
  VecR ov(static_cast<Eigen::Index>(records.size()));
  for (std::size_t i = 0; i < records.size(); ++i) ov(static_cast<Eigen::Index>(i)) = records[i].overlap;
  ScarSet scars = identify_scars(spec.quasienergies, ov, c.thresholds.overlap, 1e-8 * p.omega);
  return {std::move(space), std::move(spec), std::move(psi0), std::move(records), std::move(scars), p, std::move(u)};
}

void dump_operators(Context& ctx, const SpectrumRun& r) {
  {
    std::ofstream os(ctx.file("floquet_operator.coo.csv"));
    write_coo_csv(os, r.u.U, 1e-14);
  }
  std::ofstream os(ctx.file("floquet_hamiltonian.coo.csv"));
  write_coo_csv(os, floquet_hamiltonian_exact(r.spectrum).matrix, 1e-14);
}

void run_spectrum(Context& ctx) {
  const SpectrumRun r = spectrum_run(ctx);
  {
    auto w = ctx.csv("spectrum.csv", {"index", "E_F", "overlap2", "S_half"});
    w.meta("space", r.space.tag());
    for (std::size_t i = 0; i < r.records.size(); ++i)
      w.row({std::to_string(i), num(r.records[i].quasienergy), num(r.records[i].overlap), num(r.records[i].entropy)});
  }
  const FloquetHamiltonian hf = floquet_hamiltonian_exact(r.spectrum);
  json s = scar_json(r.scars, r.spectrum.quasienergies, overlaps(r.spectrum.vectors, r.psi0));
  s["space"] = r.space.tag();
  s["branch_warning"] = hf.branch_warning;
  ctx.json_file("scars.json", s);
  if (ctx.cfg.dump_operators) dump_operators(ctx, r);
  ctx.summary["space"] = r.space.tag();
  ctx.summary["dimension"] = r.space.dim();
  ctx.summary["scar_count"] = r.scars.members.size();
  ctx.summary["branch_warning"] = hf.branch_warning;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void run_entanglement(Context& ctx) {
  const SpectrumRun r = spectrum_run(ctx);
  std::vector<bool> is_scar(r.records.size(), false);
  for (auto i : r.scars.members) is_scar[i] = true;
  std::vector<double> all;
  std::optional<double> min_scar;
  {
    auto w = ctx.csv("entanglement.csv", {"index", "E_F", "overlap2", "S_half", "scar"});
    w.meta("space", r.space.tag());
    for (std::size_t i = 0; i < r.records.size(); ++i) {
      const auto& rec = r.records[i];
      w.row({std::to_string(i), num(rec.quasienergy), num(rec.overlap), num(rec.entropy), flag(is_scar[i])});
      all.push_back(rec.entropy);
      if (is_scar[i]) min_scar = std::min(min_scar.value_or(rec.entropy), rec.entropy);
    }
  }
  const double med = median_of(all);
  json s;
  s["space"] = r.space.tag();
  s["initial_state_entropy"] = rounded(half_chain_entropy(r.space.to_full(r.psi0), r.space.basis()));
  s["median_entropy"] = rounded(med);
  s["max_entropy"] = rounded(*std::max_element(all.begin(), all.end()));
  s["scar_count"] = r.scars.members.size();
  s["min_scar_entropy"] = min_scar ? json(rounded(*min_scar)) : json(nullptr);
  s["scar_entropy_deficit"] = min_scar ? json(rounded(med - *min_scar)) : json(nullptr);
  ctx.json_file("entanglement.json", s);
  ctx.summary["space"] = r.space.tag();
  ctx.summary["scar_count"] = r.scars.members.size();
}

void run_dynamics(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const ConstrainedBasis basis = make_basis(c);
  const DriveProtocol p = ctx.protocol(c.lambdas.front(), c.omegas.front());
  const VecC full = full_state_vector(basis, InitialState::parse(c.state));
  const auto parts = split_over_sectors(basis, full);
  for (const auto& part : parts) ctx.check_dense(part.space.dim(), "sector " + part.space.tag());

  const SectorDynamics dyn = sector_resolved_dynamics(parts, p, correlator_action(basis.geometry(), c.site, c.separation), c.n_max);
  const std::string obs = "n" + std::to_string(c.site) + "*n" +
                          std::to_string((c.site - 1 + c.separation) % c.L + 1);
  {
    auto w = ctx.csv("series.csv", {"n", "time", "correlator", "fidelity"});
    w.meta("observable", obs);
    for (std::size_t n = 0; n < dyn.observable.size(); ++n)
      w.row({std::to_string(n), num(static_cast<double>(n) * p.period()), num(dyn.observable[n]), num(dyn.fidelity[n])});
  }
  const FourierSpectrum fsp = fourier_peak(dyn.observable, p.period());
  {
    auto w = ctx.csv("fourier.csv", {"bin", "omega", "power"});
    for (std::size_t m = 0; m < fsp.frequencies.size(); ++m) w.row({std::to_string(m), num(fsp.frequencies[m]), num(fsp.power[m])});
  }

  const SpectralWeights sw = floquet_weights(parts, p, c.method);
  const ScarSet scars = identify_scars(sw.energies, sw.weights, c.thresholds.overlap, 1e-8 * p.omega);
  json s = scar_json(scars, sw.energies, sw.weights);
  json sectors = json::array();
  for (const auto& part : parts) sectors.push_back(part.space.tag());
  s["sectors"] = sectors;
  s["branch_warning"] = sw.branch_warning;
  json f;
  f["omega_res"] = fsp.omega_res ? json(rounded(*fsp.omega_res)) : json(nullptr);
  f["bin_width"] = rounded(fsp.bin_width);
  f["prominence"] = rounded(fsp.prominence);
  f["at_resolution_floor"] = fsp.at_resolution_floor;
  if (fsp.omega_res && scars.w_R) {
    f["distance_to_w_R"] = rounded(std::abs(*fsp.omega_res - *scars.w_R));
    f["within_one_bin"] = std::abs(*fsp.omega_res - *scars.w_R) <= fsp.bin_width;
  }
  s["fourier"] = f;
  ctx.json_file("scars.json", s);
  ctx.summary["scar_count"] = scars.members.size();
}

void run_norms(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const ConstrainedBasis basis = make_basis(c);
  ctx.check_dense(basis.size(), "the norm split");
  const Space space = Space::full(basis);
  auto w = ctx.csv("norms.csv", {"omega", "lambda", "gamma", "delta", "f1_exact", "f2_exact", "f1_analytic", "branch_warning"});
  w.meta("n0", std::to_string(pxp_pair_formula(basis.geometry())));
  for (double lam : c.lambdas) {
    for (double om : c.omegas) {
      const DriveProtocol p = ctx.protocol(lam, om);
      const FloquetHamiltonian hf = floquet_hamiltonian_exact(diagonalize_floquet(build_floquet_operator(space, p), c.method));
      const NormSplit ns = norm_split(hf.matrix, basis);
      w.row({num(om), num(lam), num(p.gamma()), num(p.delta()), num(ns.f1), num(ns.f2), num(f1_analytic(c.w, p.gamma())),
             flag(hf.branch_warning)});
    }
  }
}

void run_levelstats(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const ConstrainedBasis basis = make_basis(c);
  const Space space = resolve_space(ctx, basis, nullptr);
  ctx.check_dense(space.dim(), "level statistics");
  auto summary = ctx.csv("levelstats.csv", {"omega", "lambda", "L", "space", "levels", "mean_r", "low_confidence"});
  auto hist = ctx.csv("levelstats_hist.csv", {"omega", "lambda", "bin_lo", "bin_hi", "density", "goe", "poisson"});
  json records = json::array();
  for (double lam : c.lambdas) {
    for (double om : c.omegas) {
      const DriveProtocol p = ctx.protocol(lam, om);
      const VecR q = floquet_quasienergies(build_floquet_operator(space, p));
      const LevelStatistics ls = level_statistics(q, p.omega, 1e-8 * p.omega);
      summary.row({num(om), num(lam), std::to_string(c.L), space.tag(), std::to_string(ls.levels), num(ls.mean_r), flag(ls.low_confidence)});
      for (std::size_t b = 0; b < ls.density.size(); ++b) {
        const double mid = 0.5 * (ls.bin_edges[b] + ls.bin_edges[b + 1]);
        hist.row({num(om), num(lam), num(ls.bin_edges[b]), num(ls.bin_edges[b + 1]), num(ls.density[b]),
                  num(goe_ratio_density(mid)), num(poisson_ratio_density(mid))});
      }
      json r;
      r["omega"] = om;
      r["lambda"] = lam;
      r["space"] = space.tag();
      r["levels"] = ls.levels;
      r["mean_r"] = rounded(ls.mean_r);
      r["low_confidence"] = ls.low_confidence;
      records.push_back(r);
    }
  }
  json body;
  body["goe_mean_r"] = kGoeMeanRatio;
  body["poisson_mean_r"] = kPoissonMeanRatio;
  body["records"] = records;
  ctx.json_file("levelstats.json", body);
}

void run_zeromodes(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const ConstrainedBasis basis = make_basis(c);
  ctx.check_dense(basis.size(), "the zero-mode census");
  const DriveProtocol p = ctx.protocol(c.lambdas.front(), c.omegas.front());
  const VecR q = floquet_quasienergies(build_floquet_operator(Space::full(basis), p));
  const ZeroModeCensus z = zero_mode_census(q, p.omega, basis.geometry());
  json body;
  body["dimension"] = basis.size();
  body["zero_modes"] = z.count;
  body["bound"] = z.bound;
  body["bound_satisfied"] = z.bound_satisfied;
  body["tolerance"] = z.tolerance;
  body["max_pair_mismatch"] = z.max_pair_mismatch;
  body["unpaired"] = z.unpaired;
  ctx.json_file("zeromodes.json", body);
  ctx.summary["zero_modes"] = z.count;
  ctx.summary["bound_satisfied"] = z.bound_satisfied;
}

void run_sweep(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  {
    // the sector is used when the state lies in it; the full basis otherwise
    const ConstrainedBasis basis = make_basis(c);
    const VecC full = full_state_vector(basis, InitialState::parse(c.state));
    ctx.check_dense(lies_in_sector(SectorBasis(basis, {0, 1}), full) ? SectorBasis(basis, {0, 1}).dim() : basis.size(),
                    "the phase sweep");
  }
  SweepRequest req;
  req.omegas = c.omegas;
  req.lambdas = c.lambdas;
  req.jobs = c.jobs;
  req.base.w = c.w;
  req.base.L = c.L;
  req.base.state = InitialState::parse(c.state);
  req.base.n_max = c.n_max;
  req.base.site = c.site;
  req.base.separation = c.separation;
  req.base.thresholds = c.thresholds;
  req.base.method = c.method;
  const SweepResult res = phase_diagram_sweep(req, c.q_max);

  json failures = json::array();
  {
    auto w = ctx.csv("phase.csv", {"omega", "lambda", "L", "classification", "std_late", "mean_late", "inf_T_value",
                                   "scar_count", "mean_r", "branch_warning"});
    for (const PhasePoint& pt : res.points) {
      if (!pt.error.empty()) {
        w.row({num(pt.omega), num(pt.lambda), std::to_string(pt.L), "error", "", "", "", "", "", ""});
        failures.push_back({{"omega", pt.omega}, {"lambda", pt.lambda}, {"error", pt.error}});
        continue;
      }
      w.row({num(pt.omega), num(pt.lambda), std::to_string(pt.L), to_string(pt.classification), num(pt.std_late),
             num(pt.mean_late), num(pt.inf_T_value), std::to_string(pt.scar_count), num(pt.mean_r), flag(pt.branch_warning)});
    }
  }
  {
    auto w = ctx.csv("critical.csv", {"lambda", "q", "omega_c"});
    for (std::size_t i = 0; i < c.lambdas.size(); ++i)
      for (std::size_t q = 0; q < res.critical[i].size(); ++q)
        w.row({num(c.lambdas[i]), std::to_string(q + 1), num(res.critical[i][q])});
  }
  ctx.summary["points"] = res.points.size();
  ctx.summary["failures"] = failures;
  if (!failures.empty()) throw std::runtime_error(std::to_string(failures.size()) + " sweep point(s) failed; see phase.csv");
}

void run_magnus(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const ConstrainedBasis basis = make_basis(c);
  const Space space = resolve_space(ctx, basis, nullptr);
  ctx.check_dense(space.dim(), "the Magnus check");
  auto w = ctx.csv("magnus.csv", {"omega", "lambda", "gamma", "delta", "err_order0", "err_order1", "err_order2",
                                  "err_order3", "err_h0", "err_h0_h1", "err_fpt", "branch_warning"});
  w.meta("space", space.tag());
  w.meta("error", "relative Frobenius distance to the exact Floquet Hamiltonian");
  for (double lam : c.lambdas) {
    for (double om : c.omegas) {
      const DriveProtocol p = ctx.protocol(lam, om);
      const FloquetHamiltonian hf = floquet_hamiltonian_exact(diagonalize_floquet(build_floquet_operator(space, p), c.method));
      const double norm = hf.matrix.norm();
      auto rel = [&](const MatC& m) { return num((hf.matrix - m).norm() / norm); };
      const MagnusTerms t = magnus_terms(space, p, 3);
      std::vector<std::string> cells{num(om), num(lam), num(p.gamma()), num(p.delta())};
      MatC partial = MatC::Zero(hf.matrix.rows(), hf.matrix.cols());
      for (const MatC& term : t.order) {
        partial += term;
        cells.push_back(rel(partial));
      }
      cells.push_back(rel(t.H0));
      cells.push_back(rel(t.H0 + t.H1));
      cells.push_back(rel(fpt_closed_form(space, p)));
      cells.push_back(flag(hf.branch_warning));
      w.row(cells);
    }
  }
}

void run_scargap(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const ConstrainedBasis basis = make_basis(c);
  const VecC full = full_state_vector(basis, InitialState::parse(c.state));
  const auto parts = split_over_sectors(basis, full);
  for (const auto& part : parts) ctx.check_dense(part.space.dim(), "sector " + part.space.tag());
  const double lam = c.lambdas.front();

  const SpectralWeights stat = pxp_weights(parts, c.w);
  const ScarSet s0 = identify_scars(stat.energies, stat.weights, c.thresholds.overlap, 1e-12 * c.w * c.L);
  if (!s0.w_R) throw numerical_error("no scar tower found in the undriven model");
  const double w_inf = *s0.w_R;

  auto w = ctx.csv("scargap.csv", {"omega", "lambda", "gamma", "w_R_measured", "w_R_predicted", "rel_error", "members", "tower"});
  w.meta("w_inf", num(w_inf));
  w.meta("sectors", std::to_string(parts.size()));
  for (double om : c.omegas) {
    const DriveProtocol p = ctx.protocol(lam, om);
    const SpectralWeights sw = floquet_weights(parts, p, c.method);
    const ScarSet s = identify_scars(sw.energies, sw.weights, c.thresholds.overlap, 1e-8 * om);
    const double pred = scar_gap_prediction(p, w_inf);
    w.row({num(om), num(lam), num(p.gamma()), s.w_R ? num(*s.w_R) : "", num(pred), s.w_R ? num(*s.w_R / pred - 1.0) : "",
           std::to_string(s.members.size()), std::to_string(s.tower.size())});
  }
  ctx.summary["w_inf"] = rounded(w_inf);
}

void dispatch(Context& ctx) {
  const std::string& e = ctx.cfg.experiment;
  if (e == "basis") return run_basis(ctx);
  if (e == "spectrum") return run_spectrum(ctx);
  if (e == "entanglement") return run_entanglement(ctx);
  if (e == "dynamics") return run_dynamics(ctx);
  if (e == "norms") return run_norms(ctx);
  if (e == "levelstats") return run_levelstats(ctx);
  if (e == "zeromodes") return run_zeromodes(ctx);
  if (e == "sweep") return run_sweep(ctx);
  if (e == "magnus-check") return run_magnus(ctx);
  if (e == "scargap") return run_scargap(ctx);
  throw config_error("unknown experiment '" + e + "'");
}

void write_manifest(Context& ctx, const std::string& status) {
  json m;
  m["tool"] = "pxp";
  m["version"] = kToolVersion;
  m["generated"] = utc_now();
  m["status"] = status;
  m["rng"] = "none";
  m["config"] = ctx.config_json;
  m["files"] = ctx.files;
  m["summary"] = ctx.summary;
  write_json(ctx.dir / "manifest.json", m);
}

}  // namespace

RunResult run(const RunConfig& config) {
  config.validate();
  Context ctx(config);
  try {
    dispatch(ctx);
  } catch (...) {
    write_manifest(ctx, "error");
    throw;
  }
  write_manifest(ctx, "ok");
  return {ctx.files};
}

int main_entry(const std::vector<std::string>& args) {
  RunConfig config;
  std::string type = "runtime";
  int status = 1;
  std::string message;
  try {
    std::string help;
    if (!parse_command_line(args, config, help)) {
      std::cout << help;
      return 0;
    }
    run(config);
    return 0;
  } catch (const config_error& e) {
    type = "configuration";
    status = 2;
    message = e.what();
  } catch (const numerical_error& e) {
    type = "numerical";
    status = 3;
    message = e.what();
  } catch (const std::invalid_argument& e) {
    type = "configuration";
    status = 2;
    message = e.what();
  } catch (const std::exception& e) {
    message = e.what();
  }
  json err;
  err["status"] = "error";
  err["type"] = type;
  err["experiment"] = config.experiment;
  err["message"] = message;
  std::cerr << err.dump() << '\n';
  try {
    if (!config.out.empty()) {
      fs::create_directories(config.out);
      write_json(fs::path(config.out) / "error.json", err);
    }
  } catch (const std::exception&) {
    // the message is already on stderr
  }
  return status;
}

}  // namespace pxp::cli
