#include "symext/cli.hpp"

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "symext/acceptance.hpp"
#include "symext/convert.hpp"
#include "symext/generate.hpp"
#include "symext/io.hpp"
#include "symext/schur_basis.hpp"
#include "symext/solver.hpp"

namespace symext {

namespace {

class Report {
 public:
  explicit Report(std::ostream& os) : os_(os) {}
  template <class T>
  Report& line(const std::string& key, const T& value) {
    os_ << key << ": " << value << "\n";
    return *this;
  }
  Report& num(const std::string& key, double v) { return line(key, format_number(v)); }

 private:
  std::ostream& os_;
};

int exit_code(SolverStatus s) {
  switch (s) {
    case SolverStatus::Feasible: return kExitOk;
    case SolverStatus::Infeasible: return kExitFail;
    case SolverStatus::Undecided: return kExitUndecided;
  }
  return kExitUndecided;
}

std::string pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

struct SolverFlags {
  SolverConfig cfg;
  void add_to(CLI::App* app) {
    app->add_option("--max-iter", cfg.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
    app->add_option("--seed", cfg.seed, "Starting point seed (0 = origin)");
    app->add_option("--tol-feasible", cfg.tol_feasible, "Residual for FEASIBLE")->check(CLI::PositiveNumber);
    app->add_option("--tol-gap", cfg.tol_infeasible_gap, "Certified gap for INFEASIBLE")->check(CLI::PositiveNumber);
  }
};

void print_solver(Report& rep, const SolverReport& r) {
  rep.line("status", to_string(r.status));
  rep.num("residual", r.residual);
  rep.num("gap_estimate", r.gap_estimate);
  rep.line("iterations", r.iterations);
}

void print_checks(Report& rep, const ExtensionReport& v, bool want_support) {
  rep.line("psd", pass_fail(v.psd_ok()) + " (min_eigenvalue " + format_number(v.min_eigenvalue) + ")");
  rep.line("trace", pass_fail(v.trace_ok()) + " (error " + format_number(v.trace_error) + ")");
  rep.line("marginals", pass_fail(v.marginal_ok()) + " (max error " + format_number(v.marginal_error) +
                            (v.analytic ? ", analytic" : "") + ")");
  rep.line("permutation", pass_fail(v.permutation_ok()) + " (max error " + format_number(v.permutation_error) + ")");
  rep.line(want_support ? "support" : "support (informational)",
           pass_fail(v.support_ok()) + " (error " + format_number(v.support_error) + ")");
}

// Empty when a bipartite input has no symmetric extension; `status` then holds the solver verdict.
std::optional<BosonicState> convert_input(const LoadedFile& f, int k, const SolverConfig& cfg, Report& rep,
                                          SolverStatus& status, DensityMatrix& marginal_out) {
  if (const auto* rho = std::get_if<DensityMatrix>(&f)) {
    const auto& dims = rho->layout().dims();
    if (dims.size() == 2) {
      rep.line("input", "bipartite state; solving for a symmetric extension");
      const auto r = solve_symmetric(*rho, k, cfg);
      print_solver(rep, r);
      status = r.status;
      if (!r.certificate) return std::nullopt;
      marginal_out = *rho;
      return sym_to_bos(*r.certificate);
    }
    rep.line("input", "full-space extension; twirling into block coordinates");
    if (dims.size() != static_cast<std::size_t>(k) + 1) throw std::invalid_argument("convert: layout does not have k B systems");
    const BlockState bs = global_to_blocks(*rho, build_schur_basis(k));
    marginal_out = marginal_from_blocks(bs);
    return sym_to_bos(bs);
  }
  if (const auto* bs = std::get_if<BlockState>(&f)) {
    rep.line("input", "block state");
    if (bs->k() != k) throw std::invalid_argument("convert: block file has k=" + std::to_string(bs->k()));
    marginal_out = marginal_from_blocks(*bs);
    return sym_to_bos(*bs);
  }
  const auto& sigma = std::get<BosonicState>(f);
  rep.line("input", "bosonic state (unchanged)");
  if (sigma.k() != k) throw std::invalid_argument("convert: bosonic file has k=" + std::to_string(sigma.k()));
  marginal_out = marginal_from_blocks(sigma.to_blocks());
  return sigma;
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s = "symext";
  for (const auto& a : args) s += " " + a;
  return s;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetric and bosonic extendibility of qubit-B states"};
  app.require_subcommand(1);
  app.fallthrough();
  bool no_timing = false;
  app.add_flag("--no-timing", no_timing, "Omit the elapsed-time line");

  int k = 0;
  std::size_t dA = 0, dB = 0;
  std::string in, out_path, ext, marginal, cert, witness, profile = "all", out_dir;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  double convert_tol = 1e-7;
  std::vector<int> only;
  SolverFlags sf;

  auto* check_sym = app.add_subcommand("check-sym", "Decide k-symmetric extendibility (qubit B)");
  auto* check_bos = app.add_subcommand("check-bos", "Decide k-bosonic extendibility (qubit B)");
  for (auto* c : {check_sym, check_bos}) {
    c->add_option("--k", k, "Number of B copies")->required()->check(CLI::PositiveNumber);
    c->add_option("--in", in, "Bipartite state file")->required();
    c->add_option("--cert", cert, "Write the certificate here when FEASIBLE");
    sf.add_to(c);
  }
  auto* check_bos2 = app.add_subcommand("check-bos2", "Decide 2-bosonic extendibility for any B dimension");
  check_bos2->add_option("--dB", dB, "Dimension of B")->required()->check(CLI::Range(2, 64));
  check_bos2->add_option("--in", in, "Bipartite state file")->required();
  check_bos2->add_option("--cert", cert, "Write the extension here when FEASIBLE");
  sf.add_to(check_bos2);

  auto* convert = app.add_subcommand("convert", "Turn a symmetric extension into a bosonic one");
  convert->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  convert->add_option("--in", in, "Bipartite state, full-space extension, or block file")->required();
  convert->add_option("--out", out_path, "Bosonic output file")->required();
  convert->add_option("--tol", convert_tol, "Verification tolerance")->check(CLI::PositiveNumber);
  sf.add_to(convert);

  auto* verify = app.add_subcommand("verify", "Check an extension against a marginal");
  verify->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  verify->add_option("--ext", ext, "Bosonic, block or full-space extension file")->required();
  verify->add_option("--marginal", marginal, "Bipartite state file")->required();
  verify->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);

  auto* tilde = app.add_subcommand("tilde", "Tilde state and its PPT screen");
  tilde->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  tilde->add_option("--in", in)->required();
  tilde->add_option("--out", out_path, "Write the tilde state here");

  auto* gen = app.add_subcommand("gen", "Planted extendible instance");
  gen->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  gen->add_option("--dA", dA)->required()->check(CLI::Range(1, 4));
  gen->add_option("--seed", seed)->required();
  gen->add_option("--profile", profile, "all | exclude-bosonic")->check(CLI::IsMember({"all", "exclude-bosonic"}));
  gen->add_option("--out", out_path, "State file (printed to stdout when absent)");
  gen->add_option("--witness", witness, "Write the witness block file here");

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--seed", seed, "Suite seed")->default_val(1);
  selftest->add_option("--out-dir", out_dir, "Keep the certificate files here");
  selftest->add_option("--only", only, "Criterion ids to run");

  auto* basis = app.add_subcommand("basis", "Export the Schur basis (diagnostic)");
  basis->add_option("--k", k)->required()->check(CLI::PositiveNumber);

  std::vector<std::string> argv_store{"symext"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (!app.get_subcommands().empty()) err << app.get_subcommands().front()->help();
    return kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Report rep(out);
  int code = kExitOk;
  try {
    if (basis->parsed()) {
      write_basis(out, build_schur_basis(k));
      return kExitOk;
    }
    if (gen->parsed() && out_path.empty()) {
      const auto inst = gen_random_extendible(k, dA, seed, parse_profile(profile));
      out << format_state(inst.marginal, {seed, "gen k=" + std::to_string(k) + " dA=" + std::to_string(dA) + " profile=" + profile});
      if (!witness.empty()) save_blocks(inst.witness, witness, {seed, "witness"});
      return kExitOk;
    }
    rep.line("command", join_args(args));

    if (check_sym->parsed() || check_bos->parsed()) {
      const bool bosonic = check_bos->parsed();
      const DensityMatrix rho = load_state(in);
      const auto r = bosonic ? solve_bosonic(rho, k, sf.cfg) : solve_symmetric(rho, k, sf.cfg);
      print_solver(rep, r);
      if (r.certificate && !cert.empty()) {
        if (bosonic)
          save_bosonic(BosonicState::from_blocks(*r.certificate), cert);
        else
          save_blocks(*r.certificate, cert);
        rep.line("certificate", cert);
      }
      code = exit_code(r.status);
    } else if (check_bos2->parsed()) {
      const DensityMatrix rho = load_state(in);
      const auto r = solve_bosonic_k2_generic(rho, dB, sf.cfg);
      print_solver(rep, r);
      if (r.extension && !cert.empty()) {
        save_state(*r.extension, cert);
        rep.line("certificate", cert);
      }
      code = exit_code(r.status);
    } else if (convert->parsed()) {
      const auto f = load_file(in);
      SolverStatus status = SolverStatus::Feasible;
      DensityMatrix target(ComplexMatrix::Identity(1, 1), SystemLayout({1}));
      const auto sigma = convert_input(f, k, sf.cfg, rep, status, target);
      if (!sigma) {
        code = exit_code(status);
      } else {
        save_bosonic(*sigma, out_path, {std::nullopt, "converted from " + in});
        rep.line("output", out_path);
        const auto v = verify_extension(*sigma, target, k, convert_tol);
        print_checks(rep, v, true);
        rep.line("status", pass_fail(v.bosonic_ok()));
        code = v.bosonic_ok() ? kExitOk : kExitFail;
      }
    } else if (verify->parsed()) {
      const DensityMatrix rho = load_state(marginal);
      const auto f = load_file(ext);
      ExtensionReport v;
      bool want_support = true;
      if (const auto* s = std::get_if<BosonicState>(&f)) {
        v = verify_extension(*s, rho, k, tol);
      } else if (const auto* bs = std::get_if<BlockState>(&f)) {
        v = verify_extension(*bs, rho, k, tol);
        want_support = false;
      } else {
        v = verify_extension(std::get<DensityMatrix>(f), rho, k, tol);
        want_support = false;
      }
      rep.line("kind", want_support ? "bosonic" : "symmetric");
      print_checks(rep, v, want_support);
      const bool ok = want_support ? v.bosonic_ok() : v.symmetric_ok();
      rep.line("status", pass_fail(ok));
      code = ok ? kExitOk : kExitFail;
    } else if (tilde->parsed()) {
      const DensityMatrix rho = load_state(in);
      const auto t = tilde_state(rho, k);
      rep.num("pt_min_eigenvalue", t.pt_min_eigenvalue);
      rep.line("ppt", t.ppt ? "yes" : "no");
      if (!out_path.empty()) {
        save_state(t.state, out_path);
        rep.line("output", out_path);
      }
      rep.line("status", pass_fail(t.ppt));
      code = t.ppt ? kExitOk : kExitFail;
    } else if (gen->parsed()) {
      const auto inst = gen_random_extendible(k, dA, seed, parse_profile(profile));
      save_state(inst.marginal, out_path, {seed, "gen k=" + std::to_string(k) + " dA=" + std::to_string(dA) + " profile=" + profile});
      rep.line("output", out_path);
      if (!witness.empty()) {
        save_blocks(inst.witness, witness, {seed, "witness"});
        rep.line("witness", witness);
      }
      rep.line("status", "PASS");
    } else if (selftest->parsed()) {
      AcceptanceOptions opts;
      opts.seed = seed;
      opts.only = only;
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        opts.out_dir = out_dir;
      }
      const auto results = run_acceptance(opts, [&](const CriterionResult& r) { out << format_result(r) << "\n" << std::flush; });
      bool ok = !results.empty();
      for (const auto& r : results) ok = ok && r.passed;
      if (!out_dir.empty()) rep.line("certificates", out_dir);
      rep.line("status", pass_fail(ok));
      code = ok ? kExitOk : kExitFail;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!no_timing)
    rep.num("elapsed_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return code;
}

}  // namespace symext
