#include "pxp_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <CLI11.hpp>

#include "pxp/states.hpp"

namespace pxp::cli {
namespace {

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw config_error("not a number: '" + s + "'");
  }
  if (s.find_first_not_of(" \t", used) != std::string::npos) throw config_error("not a number: '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw config_error(message);
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw config_error("empty parameter grid");
  std::vector<double> out;
  if (t.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(t);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(trim(p));
    if (parts.size() != 3) throw config_error("range must be start:stop:step, got '" + t + "'");
    const double a = parse_number(parts[0]), b = parse_number(parts[1]), step = parse_number(parts[2]);
    if (!(step > 0.0) || b < a) throw config_error("range needs step > 0 and stop >= start: '" + t + "'");
    const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
    if (n > 100000) throw config_error("range '" + t + "' has too many points");
    for (long i = 0; i < n; ++i) out.push_back(a + static_cast<double>(i) * step);
    return out;
  }
  std::stringstream ss(t);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_number(trim(p)));
  return out;
}

SymmetrySector parse_sector(const std::string& text) {
  // k=<int>[,p=+1|-1]
  SymmetrySector s;
  std::stringstream ss(text);
  std::string item;
  bool have_k = false;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.rfind("k=", 0) == 0) {
      s.momentum = static_cast<int>(parse_number(item.substr(2)));
      have_k = true;
    } else if (item == "p=+1" || item == "p=1") {
      s.parity = 1;
    } else if (item == "p=-1") {
      s.parity = -1;
    } else {
      throw config_error("cannot parse sector '" + text + "' (expected k=<int>[,p=+1|-1])");
    }
  }
  if (!have_k) throw config_error("sector '" + text + "' has no momentum");
  return s;
}

void RunConfig::validate() const {
  require(contains(experiments(), experiment), "unknown experiment '" + experiment + "'");
  try {
    ChainGeometry{L, boundary}.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
  const bool basis_only = experiment == "basis";
  require(basis_only || boundary == Boundary::periodic, "open chains are only supported by the basis experiment");
  require(basis_only || L >= 4, "experiments need at least 4 sites");
  const bool needs_even = experiment == "spectrum" || experiment == "entanglement" || experiment == "zeromodes" ||
                          experiment == "sweep" || experiment == "scargap";
  require(!needs_even || L % 2 == 0, experiment + " needs an even number of sites, got L = " + std::to_string(L));
  require(std::isfinite(w) && w > 0.0, "w must be positive");
  require(!omegas.empty() && !lambdas.empty(), "omega and lambda grids must not be empty");
  for (double om : omegas) require(std::isfinite(om) && om > 0.0, "drive frequency must be positive, got " + std::to_string(om));
  for (double lam : lambdas) require(std::isfinite(lam), "drive amplitude must be finite");
  const bool single = experiment == "spectrum" || experiment == "entanglement" || experiment == "dynamics" ||
                      experiment == "zeromodes";
  require(!single || (omegas.size() == 1 && lambdas.size() == 1), experiment + " takes a single omega and lambda");
  require(experiment != "scargap" || lambdas.size() == 1, "scargap takes a single lambda");
  require(n_max >= 0, "nmax must be non-negative");
  require(experiment != "dynamics" || n_max >= 64, "dynamics needs nmax >= 64 for the Fourier analysis");
  require(experiment != "sweep" || n_max >= 500, "sweep needs nmax >= 500");
  require(jobs >= 1, "jobs must be at least 1");
  require(site >= 1 && site <= L, "site must lie in [1, L]");
  require(separation >= 1 && separation < L, "separation must lie in [1, L)");
  require(q_max >= 1, "qmax must be at least 1");
  require(thresholds.overlap > 0.0 && thresholds.overlap < 1.0, "overlap threshold must lie in (0, 1)");
  require(thresholds.late_fraction > 0.0 && thresholds.late_fraction <= 1.0, "late fraction must lie in (0, 1]");
  require(thresholds.std_max > 0.0 && thresholds.mean_tolerance > 0.0 && thresholds.prominence_factor > 0.0,
          "classification thresholds must be positive");
  require(!out.empty(), "output directory must not be empty");
  try {
    const InitialState s = InitialState::parse(state);
    require(s.kind != InitialState::Kind::custom || s.length == L,
            "custom state '" + state + "' does not have L = " + std::to_string(L) + " sites");
    if (s.kind == InitialState::Kind::custom) require(is_constrained(s.bits, {L, boundary}), "custom state violates the blockade");
    const bool neel = s.kind != InitialState::Kind::custom && s.kind != InitialState::Kind::vacuum;
    require(!neel || L % 2 == 0, "Neel states need an even number of sites");
  } catch (const config_error&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
  if (space != "auto" && space != "full") {
    const SymmetrySector sec = parse_sector(space);
    require(sec.momentum >= 0 && sec.momentum < L, "sector momentum must lie in [0, L)");
    require(sec.parity == 0 || sec.momentum == 0 || 2 * sec.momentum == L, "parity needs k = 0 or k = L/2");
  }
  require(experiment != "norms" || space == "auto" || space == "full", "norms are defined in the full basis");
  require(experiment != "zeromodes" || space == "auto" || space == "full", "the zero-mode census uses the full basis");
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["L"] = L;
  j["boundary"] = to_string(boundary);
  j["w"] = w;
  j["lambda"] = lambdas;
  j["omega"] = omegas;
  j["state"] = state;
  j["nmax"] = n_max;
  j["site"] = site;
  j["separation"] = separation;
  j["method"] = to_string(method);
  j["space"] = space;
  j["qmax"] = q_max;
  j["threshold_overlap"] = thresholds.overlap;
  j["late_fraction"] = thresholds.late_fraction;
  j["std_max"] = thresholds.std_max;
  j["mean_tolerance"] = thresholds.mean_tolerance;
  j["prominence_factor"] = thresholds.prominence_factor;
  j["seedless"] = seedless;
  return j;
}

bool parse_command_line(const std::vector<std::string>& args, RunConfig& c, std::string& help_out) {
  CLI::App app{"Exact diagonalization of the periodically driven constrained spin chain"};
  app.name("pxp");
  app.set_config("--config", "", "key=value configuration file (flags override it)");
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::string lambda_text, omega_text, boundary_text = "periodic", method_text = "pencil";
  app.add_option("--experiment", c.experiment, "experiment to run when no subcommand is given");
  app.add_option("--L", c.L, "number of sites");
  app.add_option("--boundary", boundary_text, "periodic or open")->check(CLI::IsMember({"periodic", "open"}));
  app.add_option("--w", c.w, "transverse coupling, default sqrt(2) so energies are in units of w/sqrt(2)");
  app.add_option("--lambda", lambda_text, "drive amplitude: value, list a,b,c or range start:stop:step");
  app.add_option("--omega", omega_text, "drive frequency: value, list or range");
  app.add_option("--state", c.state, "Z2, Z2bar, Z2plus, vacuum or a bitstring with site 1 first");
  app.add_option("--nmax", c.n_max, "number of drive cycles");
  app.add_option("--jobs", c.jobs, "worker threads for sweeps");
  app.add_option("--out", c.out, "output directory");
  app.add_option("--site", c.site, "first site of the correlator n_i n_{i+j}");
  app.add_option("--separation", c.separation, "separation j of the correlator");
  app.add_option("--method", method_text, "unitary eigensolver: pencil or schur")->check(CLI::IsMember({"pencil", "schur"}));
  app.add_option("--space", c.space, "auto, full, or a sector like k=0,p=+1");
  app.add_option("--qmax", c.q_max, "number of predicted critical frequencies per lambda");
  app.add_option("--threshold-overlap", c.thresholds.overlap, "overlap^2 above which an eigenstate counts as a scar");
  app.add_option("--late-fraction", c.thresholds.late_fraction, "fraction of the series used for late-time statistics");
  app.add_option("--std-max", c.thresholds.std_max, "late-time standard deviation below which a point may be ergodic");
  app.add_option("--mean-tolerance", c.thresholds.mean_tolerance, "allowed distance of the late mean from infinite temperature");
  app.add_option("--prominence", c.thresholds.prominence_factor, "Fourier peak over mean power required for nonergodic");
  app.add_option("--max-dense-dim", c.max_dense_dim, "largest dense matrix dimension allowed");
  app.add_flag("--seedless", c.seedless, "assert that no random numbers are used");
  app.add_flag("--dump-operators", c.dump_operators, "write the Floquet operator and Hamiltonian as COO CSV");

  for (const auto& name : experiments()) app.add_subcommand(name, "run the " + name + " experiment")->fallthrough();
  app.require_subcommand(0, 1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    help_out = app.help();
    return false;
  } catch (const CLI::CallForAllHelp&) {
    help_out = app.help("", CLI::AppFormatMode::All);
    return false;
  } catch (const CLI::ParseError& e) {
    throw config_error(e.what());
  }

  for (const auto* sub : app.get_subcommands()) c.experiment = sub->get_name();
  if (c.experiment.empty()) throw config_error("no experiment given (use a subcommand or experiment= in the config)");
  c.boundary = boundary_text == "open" ? Boundary::open : Boundary::periodic;
  c.method = unitary_method_from_string(method_text);
  if (!lambda_text.empty()) c.lambdas = parse_grid(lambda_text);
  if (!omega_text.empty()) c.omegas = parse_grid(omega_text);
  return true;
}

}  // namespace pxp::cli
