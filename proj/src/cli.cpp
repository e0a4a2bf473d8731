#include "semirel/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include "semirel/error.hpp"
#include "semirel/fit.hpp"
#include "semirel/pauli.hpp"
#include "semirel/perturbation.hpp"
#include "semirel/salpeter.hpp"
#include "semirel/spectra.hpp"

namespace semirel::cli {

namespace {

using json = nlohmann::json;
using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  json extra = json::object();
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CellText {
  std::string operator()(double v) const { return format_double(v); }
  std::string operator()(long long v) const { return std::to_string(v); }
  std::string operator()(const std::string& v) const { return v; }
};

struct CellJson {
  json operator()(double v) const { return v; }
  json operator()(long long v) const { return v; }
  json operator()(const std::string& v) const { return v; }
};

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << std::visit(CellText{}, row[i]);
    os << '\n';
  }
}

void write_json(const Table& t, const std::string& command, const json& params, std::ostream& os) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = command;
  doc["parameters"] = params;
  doc["columns"] = t.columns;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = std::visit(CellJson{}, row[i]);
    rows.push_back(r);
  }
  doc["rows"] = rows;
  for (auto it = t.extra.begin(); it != t.extra.end(); ++it) doc[it.key()] = it.value();
  os << doc.dump(2) << '\n';
}

// Flags shared by the subcommands; -1 / empty marks "not given".
struct RunConfig {
  double alpha = 1.0 / 137.035999084;
  double mass = 1.0;
  std::string branch = "particle";
  int n_max = 3;
  int n = -1;
  int l = -1;
  double j = -1.0;
  std::string spin = "zero";
  int basis = -1;
  double mu = 0.0;
  double mu_factor = 1.0;
  int nodes = 0;
  std::string alphas = "0.1,0.15,0.2,0.3";
  int levels = 3;
  std::string format = "csv";
  std::string output;
  std::string config;
};

CouplingConfig coupling(const RunConfig& rc) {
  CouplingConfig cfg;
  cfg.alpha = rc.alpha;
  cfg.mass = rc.mass;
  cfg.branch = rc.branch == "antiparticle" ? Branch::antiparticle : Branch::particle;
  cfg.validate();
  return cfg;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse '" + item + "' as a number");
    }
    if (pos != item.size()) throw InvalidArgument("cannot parse '" + item + "' as a number");
    out.push_back(v);
  }
  return out;
}

json parameters(const RunConfig& rc) {
  json p;
  p["alpha"] = rc.alpha;
  p["mass"] = rc.mass;
  p["branch"] = rc.branch;
  return p;
}

// ---------------------------------------------------------------------------

Table cmd_spectrum(const RunConfig& rc, json& params) {
  const CouplingConfig cfg = coupling(rc);
  if (rc.n_max < 1) throw InvalidArgument("--n-max must be >= 1");
  params["n-max"] = rc.n_max;
  Table t;
  t.columns = {"n", "l", "j", "E_schroedinger", "E_kg_exact", "E_kg_series", "E_dirac_exact",
               "E_dirac_series", "kg_exact_minus_series", "dirac_exact_minus_series",
               "kg_minus_dirac_exact"};
  for (int n = 1; n <= rc.n_max; ++n) {
    for (int l = 0; l < n; ++l) {
      for (int twice_j : {2 * l - 1, 2 * l + 1}) {
        if (twice_j < 1) continue;
        const QuantumNumbers qn = QuantumNumbers::make(n, l, 0.5 * twice_j);
        const double es = spectra::schroedinger_energy(qn, cfg).binding;
        const double kg = spectra::kg_exact_energy(qn, cfg).binding;
        const double kgs = spectra::kg_series_energy(qn, cfg).binding;
        const double de = spectra::dirac_exact_energy(qn, cfg).binding;
        const double ds = spectra::dirac_series_energy(qn, cfg).binding;
        t.rows.push_back({static_cast<long long>(n), static_cast<long long>(l), 0.5 * twice_j, es, kg,
                          kgs, de, ds, kg - kgs, de - ds, kg - de});
      }
    }
  }
  return t;
}

Table cmd_perturbation(const RunConfig& rc, json& params) {
  const CouplingConfig cfg = coupling(rc);
  using namespace perturbation;
  if (rc.spin != "zero" && rc.spin != "half") throw InvalidArgument("--spin must be zero or half");
  const int basis = rc.basis > 0 ? rc.basis : 128;
  std::vector<int> ns;
  if (rc.n > 0) {
    ns.push_back(rc.n);
  } else {
    if (rc.n_max < 1) throw InvalidArgument("--n-max must be >= 1");
    for (int n = 1; n <= rc.n_max; ++n) ns.push_back(n);
  }
  params["spin"] = rc.spin;
  params["basis"] = basis;
  params["n"] = ns;
  Table t;
  if (rc.spin == "zero") {
    const HamiltonianExpansion h4 = iterate_hamiltonian(4, SpinSector::spin_zero, cfg);
    t.columns = {"n", "l", "E_n", "first_order", "commutator", "total", "reference_kg_series",
                 "residual"};
    for (int n : ns) {
      for (int l = 0; l < n; ++l) {
        if (rc.l >= 0 && l != rc.l) continue;
        const QuantumNumbers qn = QuantumNumbers::make(n, l);
        const double en = spectra::schroedinger_energy(qn, cfg).binding;
        const double d1 = first_order_shift(qn, cfg, h4).total;
        const double comm = commutator_expectation(qn, cfg);
        const double ref = spectra::kg_series_energy(qn, cfg).binding;
        t.rows.push_back({static_cast<long long>(n), static_cast<long long>(l), en, d1, comm,
                          en + d1, ref, en + d1 - ref});
      }
    }
    return t;
  }

  const HamiltonianExpansion h4 = iterate_hamiltonian(4, SpinSector::spin_half, cfg);
  t.columns = {"n", "l", "j", "E_n", "first_order", "odd_first_order_diagonal", "odd_second_order",
               "commutator", "total", "reference_dirac_series", "residual", "textbook_total"};
  for (int n : ns) {
    for (int twice_j = 1; twice_j <= 2 * n - 1; twice_j += 2) {
      if (rc.j > 0 && std::abs(rc.j - 0.5 * twice_j) > 1e-12) continue;
      const HalfInteger j{twice_j};
      const EffectiveMatrix em = effective_fine_structure(n, j, cfg, basis);
      // The matrix is diagonal up to roundoff; pair eigenvalues with channels
      // by the rank of the diagonal entry, rows stay in ascending l.
      std::vector<std::size_t> order(em.channels.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return em.entries(a, a).real() < em.entries(b, b).real();
      });
      for (std::size_t c = 0; c < order.size(); ++c) {
        const auto rank = static_cast<std::size_t>(
            std::find(order.begin(), order.end(), c) - order.begin());
        const int l = em.channels[c];
        if (rc.l >= 0 && l != rc.l) continue;
        const QuantumNumbers qn = QuantumNumbers::make(n, l, 0.5 * twice_j);
        const double total = em.unperturbed + em.shifts[static_cast<Eigen::Index>(rank)];
        const double ref = spectra::dirac_series_energy(qn, cfg).binding;
        const auto idx = static_cast<Eigen::Index>(c);
        t.rows.push_back({static_cast<long long>(n), static_cast<long long>(l), 0.5 * twice_j,
                          em.unperturbed, first_order_shift(qn, cfg, h4).total,
                          std::abs(em.first_order(idx, idx) - first_order_shift(qn, cfg, h4).total),
                          em.second_order(idx, idx).real(), commutator_expectation(qn, cfg), total,
                          ref, total - ref, em.unperturbed + textbook_hamiltonian_shift(qn, cfg)});
      }
    }
  }
  return t;
}

Table cmd_salpeter(const RunConfig& rc, json& params) {
  const CouplingConfig cfg = coupling(rc);
  const int l = rc.l >= 0 ? rc.l : 0;
  const int basis = rc.basis > 0 ? rc.basis : 48;
  salpeter::SolveOptions opts;
  if (rc.nodes > 0) opts.quadrature.node_count = rc.nodes;
  const salpeter::SalpeterSolveReport r = salpeter::solve(l, cfg, basis, rc.mu, opts);
  params["l"] = l;
  params["basis"] = basis;
  params["mu"] = r.basis.scale;
  params["levels"] = rc.levels;
  Table t;
  t.columns = {"level", "binding", "total"};
  for (const auto& h : r.history) t.columns.push_back("binding_N" + std::to_string(h.size));
  const int levels = std::min<int>(rc.levels, static_cast<int>(r.bindings.size()));
  for (int k = 0; k < levels; ++k) {
    std::vector<Cell> row{static_cast<long long>(k), r.bindings[k], r.eigenvalues[k]};
    for (const auto& h : r.history) {
      row.push_back(k < static_cast<int>(h.bindings.size()) ? Cell(h.bindings[k]) : Cell(std::string()));
    }
    t.rows.push_back(row);
  }
  t.extra["basis"] = {{"l", r.basis.l}, {"power", r.basis.power}, {"scale", r.basis.scale},
                      {"size", r.basis.size}};
  t.extra["quadrature"] = {{"nodes", r.quadrature.node_count},
                           {"tolerance", r.quadrature.tolerance},
                           {"change_on_doubling", r.quadrature_change}};
  t.extra["bound_levels"] = r.bound_levels();
  return t;
}

Table cmd_scaling(const RunConfig& rc, json& params) {
  const CouplingConfig cfg = coupling(rc);
  const std::vector<double> alphas = parse_list(rc.alphas);
  const int l = rc.l >= 0 ? rc.l : 0;
  const int basis = rc.basis > 0 ? rc.basis : 48;
  const salpeter::ScalingReport s =
      salpeter::residual_scaling(l, cfg, alphas, basis, rc.mu_factor, salpeter::Reference::series_alpha4);
  std::vector<double> res2;
  for (const auto& p : s.points) {
    const QuantumNumbers qn = QuantumNumbers::make(l + 1, l);
    res2.push_back(std::abs(p.binding - spectra::schroedinger_energy(qn, cfg.with_alpha(p.alpha)).binding));
  }
  const PowerLawFit fit2 = fit_power_law(alphas, res2);
  params["alphas"] = alphas;
  params["l"] = l;
  params["basis"] = basis;
  params["mu-factor"] = rc.mu_factor;
  Table t;
  t.columns = {"alpha", "binding", "reference_alpha4", "residual_alpha4", "residual_alpha2",
               "slope_alpha4", "slope_alpha4_stderr", "slope_alpha2", "slope_alpha2_stderr"};
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const auto& p = s.points[i];
    t.rows.push_back({p.alpha, p.binding, p.reference, p.residual, res2[i], s.fit.slope,
                      s.fit.slope_stderr, fit2.slope, fit2.slope_stderr});
  }
  t.extra["fit"] = {{"slope_alpha4", s.fit.slope},
                    {"slope_alpha4_stderr", s.fit.slope_stderr},
                    {"slope_alpha2", fit2.slope},
                    {"slope_alpha2_stderr", fit2.slope_stderr}};
  return t;
}

int cmd_pauli_check(std::ostream& os) {
  using namespace pauli;
  bool all = true;
  auto line = [&](bool ok, const std::string& name, double value, const std::string& limit) {
    all = all && ok;
    os << (ok ? "PASS " : "FAIL ") << name << " value=" << format_double(value) << " limit=" << limit
       << '\n';
  };
  const double sp = sigma_product_check();
  line(sp <= 1e-14, "sigma-product", sp, "1e-14");
  const double sr = sigma_random_check(1000);
  line(sr <= 1e-14, "sigma-vector-identity-1000-pairs", sr, "1e-14");
  const double z = minimal_coupling_residual(SampledField::zero(), 1.0, 1e-2);
  line(z <= 1e-10, "minimal-coupling-zero-field", z, "1e-10");
  try {
    const auto u = minimal_coupling_square_check(SampledField::uniform(Vec3(0.3, -0.5, 0.8)), 1.0, 1e-2);
    line(true, "minimal-coupling-uniform-field-ratio", u.ratio, "[3.5,4.5]");
  } catch (const FieldTooRough& e) {
    line(false, "minimal-coupling-uniform-field-ratio", 0.0, "[3.5,4.5]");
  }
  const SampledField g = SampledField::gaussian();
  const std::vector<double> hs{1e-2, 5e-3, 2.5e-3};
  std::vector<double> rs;
  for (double h : hs) rs.push_back(minimal_coupling_residual(g, 1.0, h));
  const double slope = fit_power_law(hs, rs).slope;
  line(std::abs(slope - 2.0) <= 0.1, "minimal-coupling-slope", slope, "2+-0.1");
  const Vec3 x(0.2, -0.1, 0.3);
  const double flip = (sigma_b_term(g, 1.0, x) + sigma_b_term(g, -1.0, x)).cwiseAbs().maxCoeff();
  line(flip == 0.0, "charge-flip-sigma-b", flip, "0");
  const auto c = sqrt_series_coefficients(2);
  const bool coeff_ok = c[0] == Rational(1) && c[1] == Rational(1, 2) && c[2] == Rational(-1, 8);
  line(coeff_ok, "sqrt-series-coefficients", coeff_ok ? 0.0 : 1.0, "exact");
  double worst = 0.0;
  for (int i = 0; i <= 50; ++i) {
    const double xv = 0.01 * i;
    const double err = std::abs(std::sqrt(1.0 + xv) - (1.0 + 0.5 * xv - 0.125 * xv * xv));
    const double bound = sqrt_remainder_bound(xv);
    worst = std::max(worst, err - bound);
  }
  line(worst <= 0.0, "sqrt-remainder-bound", worst, "<=0");
  const PlaneWaveCheck pw = plane_wave_check(1.0, 0.3);
  line(pw.error <= pw.bound, "plane-wave-p0.3", pw.error, format_double(pw.bound));
  return all ? 0 : 1;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const SupercriticalCoupling*>(&e) || dynamic_cast<const SupercriticalSalpeter*>(&e)) {
    return 3;
  }
  if (dynamic_cast<const NonConverged*>(&e) || dynamic_cast<const SingularSystem*>(&e) ||
      dynamic_cast<const IllConditioned*>(&e) || dynamic_cast<const IllConditionedBasis*>(&e) ||
      dynamic_cast<const ComplexEigenvalues*>(&e)) {
    return 4;
  }
  if (dynamic_cast<const InvalidArgument*>(&e) || dynamic_cast<const ChannelMismatch*>(&e) ||
      dynamic_cast<const DomainError*>(&e) || dynamic_cast<const InsufficientPoints*>(&e) ||
      dynamic_cast<const UnsupportedOrder*>(&e) || dynamic_cast<const ConfigMismatch*>(&e)) {
    return 2;
  }
  return 1;
}

// Turns a JSON config object into flags placed ahead of the explicit ones.
std::vector<std::string> config_arguments(const std::string& path, std::string& command) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("config file must hold a JSON object");
  std::vector<std::string> out;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const json& v = it.value();
    if (it.key() == "command") {
      if (!v.is_string()) throw InvalidArgument("config key 'command' must be a string");
      command = v.get<std::string>();
      continue;
    }
    if (it.key() == "config") throw InvalidArgument("config files cannot include other config files");
    out.push_back("--" + it.key());
    if (v.is_string()) {
      out.push_back(v.get<std::string>());
    } else if (v.is_number_integer()) {
      out.push_back(std::to_string(v.get<long long>()));
    } else if (v.is_number()) {
      out.push_back(format_double(v.get<double>()));
    } else if (v.is_array()) {
      std::string joined;
      for (const auto& e : v) {
        if (!e.is_number()) throw InvalidArgument("config arrays must hold numbers");
        joined += (joined.empty() ? "" : ",") + format_double(e.get<double>());
      }
      out.push_back(joined);
    } else {
      throw InvalidArgument("unsupported value for config key '" + it.key() + "'");
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> kCommands{"spectrum", "perturbation", "salpeter", "scaling",
                                                  "pauli-check"};
  RunConfig rc;
  std::vector<std::string> args = args_in;
  try {
    // --config is expanded before CLI11 sees the arguments.
    auto cfg_it = std::find_if(args.begin(), args.end(), [](const std::string& a) {
      return a == "--config" || a.rfind("--config=", 0) == 0;
    });
    if (cfg_it != args.end()) {
      std::string path;
      auto after = cfg_it;
      if (*cfg_it == "--config") {
        if (cfg_it + 1 == args.end()) throw InvalidArgument("--config needs a path");
        path = *(cfg_it + 1);
        after = args.erase(cfg_it, cfg_it + 2);
      } else {
        path = cfg_it->substr(9);
        after = args.erase(cfg_it);
      }
      (void)after;
      std::string command;
      const std::vector<std::string> extra = config_arguments(path, command);
      const bool has_command =
          !args.empty() && std::find(kCommands.begin(), kCommands.end(), args.front()) != kCommands.end();
      if (!has_command) {
        if (command.empty()) throw InvalidArgument("no subcommand given on the command line or in the config");
        args.insert(args.begin(), command);
      }
      args.insert(args.begin() + 1, extra.begin(), extra.end());
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{"Semirelativistic hydrogen-like spectra: exact, perturbative and variational"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--alpha", rc.alpha, "fine structure constant")->take_last();
    sub->add_option("--mass", rc.mass, "rest mass")->take_last();
    sub->add_option("--branch", rc.branch, "particle or antiparticle")
        ->check(CLI::IsMember({"particle", "antiparticle"}))
        ->take_last();
    sub->add_option("--format", rc.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->take_last();
    sub->add_option("--output", rc.output, "output file (default stdout)")->take_last();
  };
  CLI::App* spectrum = app.add_subcommand("spectrum", "closed-form spectra and their series");
  common(spectrum);
  spectrum->add_option("--n-max", rc.n_max, "largest principal quantum number")->take_last();

  CLI::App* pert = app.add_subcommand("perturbation", "order-alpha^4 perturbation theory");
  common(pert);
  pert->add_option("--spin", rc.spin, "zero or half")->check(CLI::IsMember({"zero", "half"}))->take_last();
  pert->add_option("--n", rc.n, "principal quantum number")->take_last();
  pert->add_option("--n-max", rc.n_max, "largest n when --n is absent")->take_last();
  pert->add_option("--l", rc.l, "orbital quantum number filter")->take_last();
  pert->add_option("--j", rc.j, "total angular momentum filter")->take_last();
  pert->add_option("--basis", rc.basis, "resolvent basis size (default 128)")->take_last();

  CLI::App* salp = app.add_subcommand("salpeter", "variational square-root Hamiltonian");
  common(salp);
  salp->add_option("--l", rc.l, "orbital channel")->take_last();
  salp->add_option("--basis", rc.basis, "basis size N (default 48)")->take_last();
  salp->add_option("--mu", rc.mu, "basis scale (default m alpha)")->take_last();
  salp->add_option("--nodes", rc.nodes, "momentum quadrature nodes (default max(400, 4N))")->take_last();
  salp->add_option("--levels", rc.levels, "number of levels to report")->take_last();

  CLI::App* scal = app.add_subcommand("scaling", "residual scaling against the alpha^4 series");
  common(scal);
  scal->add_option("--alphas", rc.alphas, "comma-separated couplings")->take_last();
  scal->add_option("--l", rc.l, "orbital channel")->take_last();
  scal->add_option("--basis", rc.basis, "basis size N (default 48)")->take_last();
  scal->add_option("--mu-factor", rc.mu_factor, "basis scale in units of m alpha")->take_last();

  CLI::App* pauli_cmd = app.add_subcommand("pauli-check", "Pauli-algebra identity checks");

  std::vector<const char*> argv{"semirel"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (pauli_cmd->parsed()) return cmd_pauli_check(out);
    CLI::App* sub = app.get_subcommands().front();
    json params = parameters(rc);
    Table table;
    if (sub == spectrum) {
      table = cmd_spectrum(rc, params);
    } else if (sub == pert) {
      table = cmd_perturbation(rc, params);
    } else if (sub == salp) {
      table = cmd_salpeter(rc, params);
    } else {
      table = cmd_scaling(rc, params);
    }
    std::ofstream file;
    std::ostream* os = &out;
    if (!rc.output.empty()) {
      file.open(rc.output);
      if (!file) throw InvalidArgument("cannot open output file " + rc.output);
      os = &file;
    }
    if (rc.format == "json") {
      write_json(table, sub->get_name(), params, *os);
    } else {
      write_csv(table, *os);
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace semirel::cli
