// Command-line surface: basis certification, teleportation experiments,
// fidelity sweeps, observable construction and CV convergence studies.
// Human-readable summaries go to stdout; the machine-readable JSON report
// goes to --out. Exit codes: 0 all checks pass, 1 a mathematical check
// failed, 2 input/usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dket/bell.hpp"
#include "dket/fock.hpp"
#include "dket/io.hpp"
#include "dket/spanning.hpp"
#include "dket/teleport.hpp"

using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

double default_tolerance() {
  if (const char* env = std::getenv("DKET_TOL")) {
    try {
      const double v = std::stod(env);
      if (v > 0.0) return v;
    } catch (...) {
    }
    std::cerr << "warning: ignoring invalid DKET_TOL\n";
  }
  return dket::kDefaultTol;
}

// "znzn:N" builtin basis names.
dket::SpanningSet parse_builtin(const std::string& name) {
  const std::string prefix = "znzn:";
  if (name.rfind(prefix, 0) != 0)
    throw dket::ParseError("unknown builtin basis: " + name);
  const int n = std::stoi(name.substr(prefix.size()));
  if (n < 1) throw dket::ParseError("builtin dimension must be >= 1");
  return dket::znzn_basis(n).to_spanning_set();
}

void write_report(const std::string& out_path, const json& report) {
  if (!out_path.empty()) dket::save_json_file(out_path, report);
}

struct CheckBasisOpts {
  std::string builtin;
  std::string file;
  std::string out;
  int trials = 50;
  std::uint64_t seed = 1;
  double tol = 0.0;
};

int run_check_basis(const CheckBasisOpts& opt) {
  dket::SpanningSet set;
  std::string source;
  if (!opt.builtin.empty()) {
    set = parse_builtin(opt.builtin);
    source = opt.builtin;
  } else {
    set = dket::spanning_set_from_json(dket::load_json_file(opt.file));
    source = opt.file;
  }

  const auto reports = dket::run_all_checks(set, opt.trials, opt.seed,
                                            opt.tol);
  bool all_pass = true;
  json checks = json::array();
  for (const auto& r : reports) {
    all_pass = all_pass && r.pass;
    checks.push_back(dket::check_report_to_json(r));
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.statement
              << "  max_residual=" << r.max_residual;
    if (!std::isnan(r.frame_min_eig))
      std::cout << "  frame_min_eig=" << r.frame_min_eig;
    std::cout << "\n";
  }
  const json report{{"command", "check-basis"}, {"source", source},
                    {"dim", set.dim},           {"trials", opt.trials},
                    {"seed", opt.seed},         {"tol", opt.tol},
                    {"checks", checks},         {"all_pass", all_pass}};
  write_report(opt.out, report);
  std::cout << (all_pass ? "spanning set: COMPLETE\n"
                         : "spanning set: NOT complete\n");
  return all_pass ? kExitPass : kExitCheckFailed;
}

struct TeleportOpts {
  std::string rho_file;
  std::string basis = "";  // defaults to znzn:<dim of rho>
  std::string resource_file;
  std::string channel_file;
  std::string out;
  std::uint64_t seed = 1;
  double tol = 0.0;
};

int run_teleport(const TeleportOpts& opt) {
  const dket::ComplexMatrix rho =
      dket::matrix_from_json(dket::load_json_file(opt.rho_file));
  if (rho.rows() != rho.cols())
    throw dket::ParseError("rho must be square");
  if (!dket::is_density(rho))
    throw dket::ParseError("rho is not a density matrix");

  const std::string basis_name =
      opt.basis.empty() ? "znzn:" + std::to_string(rho.rows()) : opt.basis;
  const dket::SpanningSet set = parse_builtin(basis_name);
  if (set.dim != rho.rows())
    throw dket::ParseError("dimension mismatch between rho and basis");
  const dket::BellPovm povm =
      dket::bell_povm(set.elements, set.weights, set.labels);

  if (!opt.channel_file.empty() && !opt.resource_file.empty())
    throw dket::ParseError(
        "choose either --channel (noisy, identity resource) or --resource");

  std::vector<dket::TeleportRecord> records;
  std::string mode;
  if (!opt.channel_file.empty()) {
    const dket::KrausChannel channel =
        dket::kraus_channel_from_json(dket::load_json_file(opt.channel_file));
    if (channel.dim() != set.dim * set.dim)
      throw dket::ParseError("channel must act on H2 (x) H3");
    records = dket::noisy_teleport(rho, povm, channel, opt.tol);
    mode = "noisy";
  } else {
    dket::ComplexMatrix v =
        dket::ComplexMatrix::Identity(rho.rows(), rho.cols());
    if (!opt.resource_file.empty())
      v = dket::matrix_from_json(dket::load_json_file(opt.resource_file));
    if (v.rows() != rho.rows() || !dket::is_unitary(v, 1e-8))
      throw dket::ParseError("resource V must be a unitary of matching size");
    records = dket::ideal_teleport(rho, povm, v);
    mode = "ideal";
  }

  json recs = json::array();
  double total = 0.0;
  for (const auto& rec : records) {
    json jr = dket::teleport_record_to_json(rec);
    jr["fidelity_to_input"] = dket::state_fidelity(rho, rec.corrected);
    recs.push_back(jr);
    total += rec.probability;
    std::cout << "outcome " << rec.label << "  p=" << rec.probability
              << "  fidelity=" << jr["fidelity_to_input"].get<double>()
              << "\n";
  }
  const json report{{"command", "teleport"},   {"mode", mode},
                    {"basis", basis_name},     {"seed", opt.seed},
                    {"tol", opt.tol},          {"records", recs},
                    {"total_probability", total}};
  write_report(opt.out, report);
  return kExitPass;
}

struct SweepOpts {
  double eps_start = 0.0;
  double eps_stop = 0.9;
  double eps_step = 0.1;
  int grid = 256;
  std::string out;
  std::uint64_t seed = 1;
  double tol = 0.0;
};

int run_fidelity_sweep(const SweepOpts& opt) {
  if (opt.eps_step <= 0.0 || opt.eps_start < 0.0 || opt.eps_stop >= 1.0 ||
      opt.eps_stop < opt.eps_start)
    throw dket::ParseError("epsilon grid must sit inside [0, 1)");

  json rows = json::array();
  double max_dev_analytic = 0.0, max_dev_brute = 0.0, max_gap = 0.0;
  for (double eps = opt.eps_start; eps <= opt.eps_stop + 1e-12;
       eps += opt.eps_step) {
    dket::ComplexMatrix s = dket::ComplexMatrix::Zero(2, 2);
    s(0, 0) = 1.0 + eps;
    s(1, 1) = 1.0 - eps;
    const double analytic = dket::min_fidelity_analytic(s).f_analytic;
    const double brute = dket::min_fidelity_brute(s, opt.grid).f_brute;
    const double closed = 1.0 - eps * eps;
    max_dev_analytic = std::max(max_dev_analytic, std::abs(analytic - closed));
    max_dev_brute = std::max(max_dev_brute, std::abs(brute - closed));
    max_gap = std::max(max_gap, std::abs(analytic - brute));
    rows.push_back({{"epsilon", eps},
                    {"f_analytic", analytic},
                    {"f_brute", brute}});
    std::cout << "eps=" << eps << "  F_analytic=" << analytic
              << "  F_brute=" << brute << "\n";
  }
  const bool pass = max_dev_analytic < 1e-9 && max_dev_brute < 1e-6;
  const json report{{"command", "fidelity-sweep"},
                    {"grid", opt.grid},
                    {"seed", opt.seed},
                    {"tol", opt.tol},
                    {"rows", rows},
                    {"max_dev_analytic", max_dev_analytic},
                    {"max_dev_brute", max_dev_brute},
                    {"max_gap", max_gap},
                    {"pass", pass}};
  write_report(opt.out, report);
  std::cout << "max |F_analytic - (1-eps^2)| = " << max_dev_analytic << "\n"
            << "max |F_brute - (1-eps^2)| = " << max_dev_brute << "\n";
  return pass ? kExitPass : kExitCheckFailed;
}

struct ObservableOpts {
  std::string f_file;
  int enumerate_dim = 0;
  std::string out;
  std::uint64_t seed = 1;
  double tol = 0.0;
};

int run_observable(const ObservableOpts& opt) {
  Eigen::Index dim = 0;
  std::vector<double> f;
  if (!opt.f_file.empty()) {
    const json j = dket::load_json_file(opt.f_file);
    try {
      dim = j.at("dim").get<Eigen::Index>();
      f = j.at("values").get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw dket::ParseError(std::string("f table: ") + e.what());
    }
    if (dim < 1 || static_cast<Eigen::Index>(f.size()) != dim * dim)
      throw dket::ParseError("f table must carry dim and dim^2 values");
  } else {
    dim = opt.enumerate_dim;
    if (dim < 1) throw dket::ParseError("--enumerate requires a dimension");
    for (Eigen::Index k = 0; k < dim * dim; ++k)
      f.push_back(static_cast<double>(k));
  }

  const dket::BellPovm povm = dket::bell_povm(dket::znzn_basis(dim));
  dket::BellObservable direct;
  try {
    direct = dket::bell_observable(povm, f);
  } catch (const std::invalid_argument& e) {
    std::cout << "[FAIL] " << e.what() << "\n";
    return kExitCheckFailed;
  }
  const dket::ComplexMatrix tensor_form =
      dket::observable_tensor_form(dim, f);
  const double residual = (direct.op - tensor_form).norm();

  Eigen::SelfAdjointEigenSolver<dket::ComplexMatrix> es(direct.op);
  json spectrum = json::array();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    spectrum.push_back(es.eigenvalues()(i));

  const bool pass = residual <= opt.tol;
  const json report{{"command", "observable"},
                    {"dim", dim},
                    {"f", f},
                    {"seed", opt.seed},
                    {"tol", opt.tol},
                    {"operator", dket::matrix_to_json(direct.op)},
                    {"tensor_form", dket::matrix_to_json(tensor_form)},
                    {"agreement_residual", residual},
                    {"spectrum", spectrum},
                    {"pass", pass}};
  write_report(opt.out, report);
  std::cout << (pass ? "[PASS] " : "[FAIL] ")
            << "direct vs tensor form residual = " << residual << "\n";
  return pass ? kExitPass : kExitCheckFailed;
}

struct CvOpts {
  std::vector<Eigen::Index> ladder = {40, 60, 80};
  double z_re = 1.0;
  double z_im = 0.0;
  Eigen::Index interior_cut = 40;
  double radius = 6.0;
  double spacing = 0.5;
  bool quadrature = true;
  std::string out;
  std::uint64_t seed = 1;
  double tol = 0.0;
};

int run_cv_check(const CvOpts& opt) {
  for (std::size_t i = 1; i < opt.ladder.size(); ++i)
    if (opt.ladder[i] <= opt.ladder[i - 1])
      throw dket::ParseError("n_max ladder must be ascending");
  const dket::Complex z(opt.z_re, opt.z_im);

  json eigen_rows = json::array();
  for (const Eigen::Index n_max : opt.ladder) {
    const Eigen::Index cut = std::min(opt.interior_cut, n_max - 10);
    const auto rep = dket::eigen_relation_check(z, n_max, cut);
    eigen_rows.push_back({{"n_max", n_max},
                          {"interior_cut", cut},
                          {"z_re", opt.z_re},
                          {"z_im", opt.z_im},
                          {"residual", rep.residual}});
    std::cout << "eigen-relation  n_max=" << n_max << " cut=" << cut
              << " residual=" << rep.residual << "\n";
  }

  json quad_rows = json::array();
  if (opt.quadrature) {
    const auto grid = dket::make_displacement_grid(opt.radius, opt.spacing);
    for (const Eigen::Index n_max : opt.ladder) {
      const Eigen::Index cut = std::min<Eigen::Index>(10, n_max - 10);
      dket::ComplexMatrix vac = dket::ComplexMatrix::Zero(n_max, n_max);
      vac(0, 0) = 1.0;
      const auto rep = dket::wh_depolarizing_check(vac, grid, n_max, cut);
      quad_rows.push_back({{"n_max", n_max},
                           {"interior_cut", cut},
                           {"radius", opt.radius},
                           {"spacing", opt.spacing},
                           {"residual", rep.residual}});
      std::cout << "quadrature      n_max=" << n_max << " cut=" << cut
                << " residual=" << rep.residual << "\n";
    }
  }

  const json report{{"command", "cv-check"},
                    {"seed", opt.seed},
                    {"tol", opt.tol},
                    {"eigen_relation", eigen_rows},
                    {"quadrature", quad_rows}};
  write_report(opt.out, report);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator-basis toolkit: Bell measurements, teleportation "
               "and spanning-set certification"};
  app.require_subcommand(1);
  const double tol_default = default_tolerance();

  CheckBasisOpts cb;
  cb.tol = tol_default;
  auto* cmd_cb = app.add_subcommand("check-basis",
                                    "run the four completeness checks");
  auto* opt_builtin =
      cmd_cb->add_option("--builtin", cb.builtin, "builtin basis (znzn:N)");
  auto* opt_file =
      cmd_cb->add_option("--file", cb.file, "spanning-set JSON file");
  opt_builtin->excludes(opt_file);
  cmd_cb->add_option("--trials", cb.trials, "random trials per check");
  cmd_cb->add_option("--seed", cb.seed, "rng seed");
  cmd_cb->add_option("--tol", cb.tol, "residual tolerance");
  cmd_cb->add_option("--out", cb.out, "JSON report path");

  TeleportOpts tp;
  tp.tol = tol_default;
  auto* cmd_tp = app.add_subcommand("teleport", "simulate teleportation");
  cmd_tp->add_option("--rho", tp.rho_file, "input density matrix JSON")
      ->required();
  cmd_tp->add_option("--basis", tp.basis, "builtin basis (znzn:N)");
  cmd_tp->add_option("--resource", tp.resource_file,
                     "unitary V for the |V>>/sqrt(N) resource");
  cmd_tp->add_option("--channel", tp.channel_file,
                     "Kraus channel JSON applied to the resource");
  cmd_tp->add_option("--seed", tp.seed, "rng seed");
  cmd_tp->add_option("--tol", tp.tol, "shortcut agreement tolerance");
  cmd_tp->add_option("--out", tp.out, "JSON report path");

  SweepOpts sw;
  sw.tol = tol_default;
  auto* cmd_sw = app.add_subcommand("fidelity-sweep",
                                    "minimum-fidelity epsilon sweep");
  cmd_sw->add_option("--eps-start", sw.eps_start, "first epsilon");
  cmd_sw->add_option("--eps-stop", sw.eps_stop, "last epsilon");
  cmd_sw->add_option("--eps-step", sw.eps_step, "epsilon step");
  cmd_sw->add_option("--grid", sw.grid, "brute-force grid size");
  cmd_sw->add_option("--seed", sw.seed, "rng seed");
  cmd_sw->add_option("--tol", sw.tol, "tolerance");
  cmd_sw->add_option("--out", sw.out, "JSON report path");

  ObservableOpts ob;
  ob.tol = tol_default;
  auto* cmd_ob = app.add_subcommand("observable",
                                    "Bell observable in direct and tensor "
                                    "form");
  auto* opt_f = cmd_ob->add_option("--f", ob.f_file, "f table JSON");
  auto* opt_enum = cmd_ob->add_option("--enumerate", ob.enumerate_dim,
                                      "use f_k = k at this dimension");
  opt_f->excludes(opt_enum);
  cmd_ob->add_option("--seed", ob.seed, "rng seed");
  cmd_ob->add_option("--tol", ob.tol, "agreement tolerance");
  cmd_ob->add_option("--out", ob.out, "JSON report path");

  CvOpts cv;
  cv.tol = tol_default;
  auto* cmd_cv = app.add_subcommand("cv-check",
                                    "truncated Fock-space convergence "
                                    "ladders");
  cmd_cv->add_option("--nmax-ladder", cv.ladder, "ascending n_max values");
  cmd_cv->add_option("--z-re", cv.z_re, "Re z for the eigen relation");
  cmd_cv->add_option("--z-im", cv.z_im, "Im z for the eigen relation");
  cmd_cv->add_option("--interior-cut", cv.interior_cut, "interior cut");
  cmd_cv->add_option("--radius", cv.radius, "quadrature grid radius");
  cmd_cv->add_option("--spacing", cv.spacing, "quadrature grid spacing");
  cmd_cv->add_flag("--quadrature,!--no-quadrature", cv.quadrature,
                   "run the quadrature table");
  cmd_cv->add_option("--seed", cv.seed, "rng seed");
  cmd_cv->add_option("--tol", cv.tol, "tolerance");
  cmd_cv->add_option("--out", cv.out, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (cmd_cb->parsed()) {
      if (cb.builtin.empty() && cb.file.empty())
        throw dket::ParseError("check-basis needs --builtin or --file");
      return run_check_basis(cb);
    }
    if (cmd_tp->parsed()) return run_teleport(tp);
    if (cmd_sw->parsed()) return run_fidelity_sweep(sw);
    if (cmd_ob->parsed()) return run_observable(ob);
    if (cmd_cv->parsed()) return run_cv_check(cv);
  } catch (const dket::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dket::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
