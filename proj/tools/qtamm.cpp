// qtamm: command-line front end for the deformed-oscillator library.

#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qtamm/algebra.hpp"
#include "qtamm/calculus.hpp"
#include "qtamm/coherent.hpp"
#include "qtamm/errors.hpp"
#include "qtamm/finite_dim.hpp"
#include "qtamm/output.hpp"
#include "qtamm/spectral.hpp"
#include "qtamm/thermo.hpp"
#include "qtamm/verify.hpp"

using namespace qtamm;

namespace {

struct ParamFlags {
  double q = 0.5;
  double mu = 0.5;
  std::optional<double> eta;
  double alpha = -1.0, beta = 1.0, gamma = 1.0, delta = -1.0;

  DeformationParams build() const {
    DeformationParams p = DeformationParams::normalized_with(q, mu, alpha, beta, gamma, delta);
    if (eta) {
      p.eta = *eta;
      p.normalized = std::fabs(p.mu + p.eta - 1.0) <= 1e-15;
    }
    p.validate();
    return p;
  }
};

struct Common {
  ParamFlags pf;
  std::string format = "csv";
  std::string output;
};

void add_params(CLI::App* app, Common& c) {
  app->add_option("--q", c.pf.q, "deformation base q > 0");
  app->add_option("--mu", c.pf.mu, "weight mu");
  app->add_option("--eta", c.pf.eta, "weight eta (default 1 - mu)");
  app->add_option("--alpha", c.pf.alpha, "exponent alpha");
  app->add_option("--beta", c.pf.beta, "exponent beta");
  app->add_option("--gamma", c.pf.gamma, "exponent gamma");
  app->add_option("--delta", c.pf.delta, "exponent delta");
}

void add_io(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--output", c.output, "output file (default stdout)");
}

void emit(const Table& t, const Common& c) {
  const Format f = parse_format(c.format);
  if (c.output.empty()) {
    write_table(t, f, std::cout);
    return;
  }
  std::ofstream os(c.output, std::ios::binary);
  if (!os) throw Error(ErrorKind::InvalidParams, "cannot open output file '" + c.output + "'");
  write_table(t, f, os);
}

// Same positivity logic the library uses; rejects parameters whose Fock
// space cannot grow from the vacuum to the requested dimension.
void precheck_fock(const DeformationParams& p, std::size_t dim) {
  const PositivityReport r = classify_positivity(p);
  if (dim > 1 && !r.fock_valid_from_zero) {
    throw Error(ErrorKind::InvalidParams,
                std::string("{1} < 0 (regime ") + to_string(r.regime) + "): no Fock representation");
  }
  for (long n = 1; n + 1 < static_cast<long>(dim); ++n) {
    if (!r.admissible.contains(n)) throw RepresentationBreakdown(n, qnumber(p, static_cast<double>(n)));
  }
}

void print_error(std::string_view kind, const std::string& msg) {
  std::string clean = msg;
  for (char& ch : clean) {
    if (ch == '\n') ch = ' ';
    if (ch == '"') ch = '\'';
  }
  std::cerr << "error kind=" << kind << " message=\"" << clean << "\"\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qtamm: generalized q-deformed Tamm-Dancoff oscillator toolkit"};
  app.require_subcommand(1, 1);
  Common c;
  std::function<void()> action;

  // qnum
  auto* qnum = app.add_subcommand("qnum", "deformed number {n}, or a table up to --n-max");
  add_params(qnum, c);
  add_io(qnum, c);
  double qnum_n = 1.0;
  std::optional<long> qnum_nmax;
  qnum->add_option("--n", qnum_n, "argument n (any real)");
  qnum->add_option("--n-max", qnum_nmax, "emit n, {n}, {n}! for n = 0..n-max");
  qnum->callback([&] {
    action = [&] {
      const DeformationParams p = c.pf.build();
      if (!qnum_nmax) {
        std::cout << format_double(qnumber(p, qnum_n)) << '\n';
        return;
      }
      Table t;
      t.columns = {"n", "qnumber", "qfactorial"};
      for (long n = 0; n <= *qnum_nmax; ++n)
        t.add({std::int64_t{n}, qnumber(p, static_cast<double>(n)), qfactorial(p, n, false)});
      emit(t, c);
    };
  });

  // fock
  auto* fock = app.add_subcommand("fock", "Fock representation: ladder entries or commutator residuals");
  add_params(fock, c);
  add_io(fock, c);
  std::size_t fock_dim = 16;
  bool fock_residuals = false;
  fock->add_option("--dim", fock_dim, "dimension")->check(CLI::PositiveNumber);
  fock->add_flag("--residuals", fock_residuals, "emit commutator residuals instead");
  fock->callback([&] {
    action = [&] {
      const DeformationParams p = c.pf.build();
      precheck_fock(p, fock_dim);
      const FockRep rep = build_fock(p, fock_dim);
      Table t;
      if (fock_residuals) {
        const CommutatorResiduals r = commutator_residuals(rep);
        t.columns = {"relation", "residual"};
        t.add({std::string("aadag-adaga-({N+1}-{N})"), r.aadag});
        t.add({std::string("[N,a]+a"), r.na});
        t.add({std::string("[N,adag]-adag"), r.nadag});
      } else {
        t.columns = {"n", "qnumber", "ladder"};
        for (std::size_t n = 0; n < rep.dim(); ++n) {
          const double lad = n + 1 < rep.dim() ? rep.ladder()[n] : std::nan("");
          t.add({static_cast<std::int64_t>(n), rep.numbers()[n], lad});
        }
      }
      emit(t, c);
    };
  });

  // calculus
  auto* calc = app.add_subcommand("calculus", "deformed exponential eigen-identity or half-line moments");
  add_params(calc, c);
  add_io(calc, c);
  std::string calc_table = "exp";
  double calc_omega = 1.0, calc_xmax = 3.0, calc_tol = 1e-10;
  std::size_t calc_points = 31;
  long calc_nmax = 8;
  calc->add_option("--table", calc_table, "exp or moments")->check(CLI::IsMember({"exp", "moments"}));
  calc->add_option("--omega", calc_omega, "constant omega");
  calc->add_option("--x-max", calc_xmax, "largest x for the exp table");
  calc->add_option("--points", calc_points, "grid points")->check(CLI::PositiveNumber);
  calc->add_option("--n-max", calc_nmax, "largest moment order");
  calc->add_option("--tol", calc_tol, "deformed-integral tolerance")->check(CLI::PositiveNumber);
  calc->callback([&] {
    action = [&] {
      const DeformationParams p = c.pf.build();
      Table t;
      if (calc_table == "exp") {
        EvalFn g;
        g.f = [&](double x) { return deformed_exp(p, calc_omega * x); };
        g.fprime = [&](double x) { return deformed_exp_derivative(p, calc_omega, x, 1); };
        t.columns = {"x", "e", "De", "omega_e", "rel_defect"};
        for (std::size_t i = 0; i < calc_points; ++i) {
          const double x = calc_points == 1 ? 0.0 : calc_xmax * i / (calc_points - 1.0);
          const double e = deformed_exp(p, calc_omega * x);
          const double de = deformed_derivative_fn(g, p, x);
          t.add({x, e, de, calc_omega * e, std::fabs(de - calc_omega * e) / std::fabs(calc_omega * e)});
        }
      } else {
        const ExpSeries e(p, 0, 4e6);
        t.columns = {"n", "analytic", "numeric", "rel_error", "regularized", "terms"};
        for (long n = 0; n <= calc_nmax; ++n) {
          const auto f = [&](double x) { return e(-calc_omega * x) * std::pow(x, static_cast<double>(n)); };
          const DeformedIntegral r = deformed_integral_halfline(f, p, calc_tol);
          const double a = halfline_moment(p, n, calc_omega);
          t.add({std::int64_t{n}, a, r.value, std::fabs(r.value - a) / std::fabs(a), r.regularized,
                 static_cast<std::int64_t>(r.terms)});
        }
      }
      emit(t, c);
    };
  });

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "energy levels and variances, or self-adjointness diagnostics");
  add_params(spec, c);
  add_io(spec, c);
  OscillatorConfig oc;
  long spec_nmax = 20;
  bool spec_diag = false;
  spec->add_option("--m", oc.m, "mass")->check(CLI::PositiveNumber);
  spec->add_option("--omega", oc.omega, "angular frequency")->check(CLI::PositiveNumber);
  spec->add_option("--n-max", spec_nmax, "largest level (or ratio-test n_max with --diagnostics)");
  spec->add_flag("--diagnostics", spec_diag, "emit ratio-test and log-concavity diagnostics");
  spec->callback([&] {
    action = [&] {
      oc.params = c.pf.build();
      Table t;
      if (spec_diag) {
        const auto d = selfadjointness_diagnostics(oc.params, spec_nmax);
        t.columns = {"n_max", "ratio_limit_estimate", "ratio_at_nmax", "sqrt_q", "partial_sum",
                     "tail_estimate", "converging", "logconcavity_ok", "min_logconcavity_gap",
                     "first_logconcavity_violation", "last_logconcavity_violation"};
        t.add({std::int64_t{spec_nmax}, d.ratio_limit_estimate, d.ratio_at_nmax, std::sqrt(oc.params.q),
               d.partial_sum, d.tail_estimate, d.converging, d.logconcavity_ok, d.min_logconcavity_gap,
               std::int64_t{d.first_logconcavity_violation}, std::int64_t{d.last_logconcavity_violation}});
      } else {
        precheck_fock(oc.params, static_cast<std::size_t>(spec_nmax + 2));
        t.columns = {"n", "energy", "varQ", "varP", "uncertainty"};
        for (long n = 0; n <= spec_nmax; ++n) {
          const StateStatistics st = state_statistics(oc, n);
          t.add({std::int64_t{n}, energy_level(oc, n), st.varQ, st.varP, st.uncertainty});
        }
      }
      emit(t, c);
    };
  });

  // coherent
  auto* coh = app.add_subcommand("coherent", "coherent-state amplitudes, g_k coefficients or moment report");
  add_params(coh, c);
  add_io(coh, c);
  std::string coh_table = "amplitudes";
  double z_re = 1.0, z_im = 0.0, coh_tol = 1e-12;
  std::size_t coh_k = 8;
  long coh_nmax = 6;
  coh->add_option("--table", coh_table, "amplitudes, gk or moments")
      ->check(CLI::IsMember({"amplitudes", "gk", "moments"}));
  coh->add_option("--z-re", z_re, "Re z");
  coh->add_option("--z-im", z_im, "Im z");
  coh->add_option("--tol", coh_tol, "truncation tolerance")->check(CLI::PositiveNumber);
  coh->add_option("--k", coh_k, "number of g_k coefficients");
  coh->add_option("--n-max", coh_nmax, "largest moment order");
  coh->callback([&] {
    action = [&] {
      const DeformationParams p = c.pf.build();
      Table t;
      if (coh_table == "amplitudes") {
        const CoherentState s = coherent_coeffs({z_re, z_im}, p, coh_tol);
        t.columns = {"n", "re", "im"};
        for (std::size_t n = 0; n < s.trunc; ++n)
          t.add({static_cast<std::int64_t>(n), s.coeffs[n].real(), s.coeffs[n].imag()});
      } else if (coh_table == "gk") {
        const WeightCoeffs w = weight_coeffs(p, coh_k);
        t.columns = {"k", "g"};
        for (std::size_t k = 0; k < w.g.size(); ++k) t.add({static_cast<std::int64_t>(k), w.g[k]});
      } else {
        const MomentReport r = moment_problem_check(p, coh_nmax, coh_tol);
        t.columns = {"n", "numeric", "exact", "rel_error", "regularized", "cutoff"};
        for (const auto& row : r.rows)
          t.add({std::int64_t{row.n}, row.numeric, row.exact, row.rel_error, row.regularized, row.cutoff});
      }
      emit(t, c);
    };
  });

  // finite
  auto* fin = app.add_subcommand("finite", "d-dimensional specialization: spectrum or identity checks");
  add_io(fin, c);
  FiniteParams fp{0.5, 3};
  bool fin_ident = false;
  fin->add_option("--q", fp.q, "deformation base 0 < q < 1");
  fin->add_option("--d", fp.d, "dimension d (nonzero)");
  fin->add_flag("--identities", fin_ident, "emit {-k}_d and moment-chain defects");
  fin->callback([&] {
    action = [&] {
      fp.validate();
      Table t;
      if (fin_ident) {
        t.columns = {"k", "neg_identity_defect", "moment_rel_defect"};
        for (long k = 1; k <= std::max<long>(std::labs(fp.d), 1) + 4; ++k)
          t.add({std::int64_t{k}, neg_qnumber_d_identity_defect(fp, k), moment_identity_d_check(fp, k).rel_defect});
      } else {
        const FockRep rep = build_fock_d(fp);
        t.columns = {"n", "qnumber_d", "ladder"};
        for (std::size_t n = 0; n <= rep.dim(); ++n) {
          const double lad = n + 1 < rep.dim() ? rep.ladder()[n] : std::nan("");
          t.add({static_cast<std::int64_t>(n), rep.numbers()[n], lad});
        }
      }
      emit(t, c);
    };
  });

  // thermo
  auto* th = app.add_subcommand("thermo", "mean occupation table or restricted J integral");
  add_io(th, c);
  double th_q = 0.78, th_mu = 0.5, th_xmax = 10.0, th_tol = 1e-12;
  std::size_t th_points = 100;
  bool th_J = false;
  th->add_option("--q", th_q, "deformation base 0 < q <= 1");
  th->add_option("--mu", th_mu, "weight mu");
  th->add_option("--x-max", th_xmax, "largest x = hbar nu / kT");
  th->add_option("--points", th_points, "grid points over (0, x-max]")->check(CLI::PositiveNumber);
  th->add_flag("--J", th_J, "emit the restricted integral J(q) and U / T^4");
  th->add_option("--tol", th_tol, "quadrature tolerance")->check(CLI::PositiveNumber);
  th->callback([&] {
    action = [&] {
      Table t;
      if (th_J) {
        const JResult j = J_restricted(th_q, th_mu, th_tol);
        const TotalEnergy e = total_energy(1.0, th_q, th_mu, {}, th_tol);
        t.columns = {"q", "mu", "J", "error", "a_q"};
        t.add({th_q, th_mu, j.value, j.error, e.a_q});
      } else {
        t.columns = {"x", "occupation", "in_domain", "note"};
        for (std::size_t i = 1; i <= th_points; ++i) {
          const ThermoPoint pt = thermo_point(th_xmax * i / th_points, th_q, th_mu);
          t.add({pt.x, pt.occupation, pt.in_domain,
                 std::string(pt.note == ThermoNote::Ok ? "ok" : "below_x_min")});
        }
      }
      emit(t, c);
    };
  });

  // figures
  auto* fig = app.add_subcommand("figures", "radiation curve against Planck's law");
  add_io(fig, c);
  double fig_q = 0.78, fig_mu = 0.1, fig_T = 1.0, fig_numax = 10.0;
  std::optional<double> fig_numin;
  std::size_t fig_points = 200;
  PhysicalConstants pc;
  fig->add_option("--q", fig_q, "deformation base 0 < q <= 1");
  fig->add_option("--mu", fig_mu, "weight mu");
  fig->add_option("--T", fig_T, "temperature")->check(CLI::PositiveNumber);
  fig->add_option("--nu-max", fig_numax, "largest frequency");
  fig->add_option("--nu-min", fig_numin, "grid origin (default: domain edge kT x_min / hbar)");
  fig->add_option("--points", fig_points, "grid points")->check(CLI::PositiveNumber);
  fig->add_option("--hbar", pc.hbar, "hbar")->check(CLI::PositiveNumber);
  fig->add_option("--k", pc.k, "Boltzmann constant")->check(CLI::PositiveNumber);
  fig->add_option("--c", pc.c, "speed of light")->check(CLI::PositiveNumber);
  fig->callback([&] {
    action = [&] {
      const RadiationCurve rc = radiation_curve(fig_q, fig_mu, fig_T, fig_numax, fig_points, pc,
                                                fig_numin.value_or(-1.0));
      Table t;
      t.columns = {"nu", "I_deformed", "I_planck"};
      for (std::size_t i = 0; i < rc.nu.size(); ++i) t.add({rc.nu[i], rc.I[i], rc.I_planck[i]});
      emit(t, c);
    };
  });

  // verify
  auto* ver = app.add_subcommand("verify", "run the built-in verification suite");
  add_params(ver, c);
  add_io(ver, c);
  std::string suite = "all";
  long ver_d = 3;
  std::vector<std::string> suites = verification_modules();
  suites.push_back("all");
  ver->add_option("--suite", suite, "module name or all")->check(CLI::IsMember(suites));
  ver->add_option("--d", ver_d, "dimension for the finite-dim checks");
  int verify_status = 0;
  ver->callback([&] {
    action = [&] {
      VerifyConfig vc;
      vc.params = c.pf.build();
      vc.finite = FiniteParams{c.pf.q > 0.0 && c.pf.q < 1.0 ? c.pf.q : 0.5, ver_d};
      vc.finite.validate();
      vc.extended = extended_precision_requested();
      const auto recs = run_verification(suite, vc);
      emit(verification_table(recs), c);
      for (const auto& r : recs) {
        if (r.status == CheckStatus::Fail) verify_status = 2;
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("InvalidArguments", e.what());
    return 1;
  }

  try {
    action();
  } catch (const Error& e) {
    print_error(to_string(e.kind()), e.what());
    return is_numerical(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    print_error("Internal", e.what());
    return 2;
  }
  if (verify_status != 0) {
    print_error("VerificationFailed", "one or more checks failed");
    return verify_status;
  }
  return 0;
}
