#include "run.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "sbk/sbk.hpp"

namespace sbk::cli {
namespace {

using nlohmann::json;

const std::vector<std::string> kCommands{"coxeter-identities", "lie-identities", "counterexample",
                                         "heat-kernel",        "transform",      "factorization",
                                         "bounds"};

bool is_table_command(const std::string& c) { return c == "heat-kernel" || c == "transform"; }

json config_json(const RunConfig& c) {
  json j = {{"command", c.command},
            {"t_list", c.t_list},
            {"mu_list", c.mu_list},
            {"seed", c.seed},
            {"samples", c.samples},
            {"tol", c.tol},
            {"truncation_tol", c.truncation_tol},
            {"quad_order", c.quad_order},
            {"haar_resolution", c.haar_resolution},
            {"format", effective_format(c) == Format::json ? "json" : "csv"},
            {"dim", c.dim}};
  if (c.command == "heat-kernel" || c.command == "transform") j["flavor"] = c.flavor;
  if (c.command == "heat-kernel") j["matrix"] = c.matrix;
  if (c.command == "transform") j["version"] = c.version;
  if (c.command == "transform" || c.command == "factorization") j["function"] = c.function;
  if (c.command == "transform" || c.command == "factorization" || c.command == "bounds") {
    j["grid"] = c.grid;
  }
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string render(const RunConfig& c, json doc) {
  if (c.timestamp) doc["generated_at"] = utc_timestamp();
  return doc.dump(2) + "\n";
}

SampleSpec sample_spec(const RunConfig& c) {
  SampleSpec s;
  s.seed = c.seed;
  s.samples = c.samples;
  s.mu_list = c.mu_list;
  s.t_list = c.t_list;
  s.dim = c.dim;
  s.truncation_tol = c.truncation_tol;
  return s;
}

std::string fmt(double v) { return format_double(v); }

RunResult identity_result(const RunConfig& c, const IdentityReport& report) {
  RunResult out;
  const bool pass = report.within(c.tol);
  out.exit_code = pass ? kExitPass : kExitResidual;
  if (effective_format(c) == Format::csv) {
    std::ostringstream os;
    write_csv(os, report);
    out.body = os.str();
  } else {
    json doc = to_json(report, c.tol);
    doc["config"] = config_json(c);
    doc["sample_grid"] = report.config;
    out.body = render(c, std::move(doc));
  }
  if (!pass) {
    for (const auto& s : report.identities) {
      if (s.max_residual > c.tol) {
        out.message = s.id + ": max residual " + fmt(s.max_residual) + " > tol at " + s.worst_point;
        break;
      }
    }
  }
  return out;
}

RunResult run_coxeter_identities(const RunConfig& c) {
  return identity_result(c, verify_coxeter_identities(sample_spec(c)));
}

RunResult run_lie_identities(const RunConfig& c) {
  IdentityReport report = verify_lie_identities(sample_spec(c));
  RunResult out = identity_result(c, report);
  if (out.exit_code == kExitPass && report.max_tail_bound > c.truncation_tol) {
    out.exit_code = kExitResidual;
    out.message = "heat-kernel tail bound " + fmt(report.max_tail_bound) + " exceeds truncation tol";
  }
  return out;
}

RunResult run_counterexample(const RunConfig& c) {
  RunResult out;
  json reports = json::array();
  std::ostringstream csv;
  csv << "t,rho_I,rho_negI,rho_half_I,rho_half_negI,q_pos_lower,q_neg_upper,gap_lower,"
         "residual_at_I,residual_at_negI,sweep_max_residual,identity_suite_max_residual,"
         "reproduced\n";
  bool all = true;
  for (double tv : c.t_list) {
    CounterexampleOptions opts;
    opts.seed = c.seed;
    opts.sweep_samples = c.samples;
    opts.truncation_tol = c.truncation_tol;
    CounterexampleReport r = counterexample_report(Planck(tv), opts);
    SampleSpec spec = sample_spec(c);
    spec.t_list = {tv};
    r.contrast_max_residual = verify_lie_identities(spec).max_residual();
    all = all && r.reproduced();
    if (!r.reproduced() && out.message.empty()) {
      out.message = "counterexample not certified at t = " + fmt(tv);
    }
    reports.push_back(to_json(r));
    csv << fmt(tv) << ',' << fmt(r.rho_I.mid) << ',' << fmt(r.rho_negI.mid) << ','
        << fmt(r.rho_half_I.mid) << ',' << fmt(r.rho_half_negI.mid) << ',' << fmt(r.q_pos_lower)
        << ',' << fmt(r.q_neg_upper) << ',' << fmt(r.gap_lower) << ',' << fmt(r.residual_at_I)
        << ',' << fmt(r.residual_at_negI) << ',' << fmt(r.sweep.max_residual) << ','
        << fmt(*r.contrast_max_residual) << ',' << (r.reproduced() ? "true" : "false") << '\n';
  }
  out.exit_code = all ? kExitPass : kExitResidual;
  if (effective_format(c) == Format::csv) {
    out.body = csv.str();
  } else {
    out.body = render(c, {{"config", config_json(c)},
                          {"reports", std::move(reports)},
                          {"verdict", {{"gap_threshold", kCounterexampleGapThreshold},
                                       {"pass", all}}}});
  }
  return out;
}

SU2Element parse_group_matrix(const std::string& spec) {
  if (spec == "identity") return SU2Element::identity();
  if (spec == "minus-identity") return SU2Element::minus_identity();
  if (spec.rfind("diag:", 0) == 0) {
    try {
      return SU2Element::diagonal(std::stod(spec.substr(5)));
    } catch (const std::logic_error&) {
    }
  }
  throw UsageError("--matrix must be identity, minus-identity, diag:<tau> or random; got '" + spec +
                   "'");
}

RunResult run_heat_kernel(const RunConfig& c) {
  RunResult out;
  json rows = json::array();
  std::ostringstream csv;
  if (c.flavor == "su2") {
    std::vector<std::pair<std::string, SL2CElement>> args;
    if (c.matrix == "random") {
      CounterRng rng(c.seed, 0x5000);
      for (std::size_t s = 0; s < c.samples; ++s) {
        rng.seek(s * 8);
        args.emplace_back("random[" + std::to_string(s) + "]", random_sl2c(rng, 1.0));
      }
    } else {
      args.emplace_back(c.matrix, embed(parse_group_matrix(c.matrix)));
    }
    csv << "t,matrix,half_trace_re,half_trace_im,value_re,value_im,tail_bound,terms_used,"
           "certified_value,certified_radius\n";
    for (double tv : c.t_list) {
      for (const auto& [label, g] : args) {
        const cplx h = g.matrix().half_trace();
        const TruncatedSum s = heat_kernel_su2(g.matrix(), Planck(tv), c.truncation_tol);
        json row = {{"t", tv},           {"matrix", label},         {"half_trace", {h.real(), h.imag()}},
                    {"value", {s.value.real(), s.value.imag()}},   {"tail_bound", s.tail_bound},
                    {"terms_used", s.terms_used}};
        std::string cert = ",";
        if (h.imag() == 0.0 && std::abs(h.real()) <= 1.0) {
          const CertifiedValue cv = heat_kernel_su2_certified(h.real(), Planck(tv));
          row["certified"] = to_json(cv);
          cert = fmt(cv.mid) + "," + fmt(cv.radius);
        }
        rows.push_back(std::move(row));
        csv << fmt(tv) << ',' << label << ',' << fmt(h.real()) << ',' << fmt(h.imag()) << ','
            << fmt(s.value.real()) << ',' << fmt(s.value.imag()) << ',' << fmt(s.tail_bound) << ','
            << s.terms_used << ',' << cert << '\n';
      }
    }
  } else {
    csv << "mu,t,z_re,z_im,w,value_re,value_im\n";
    CounterRng rng(c.seed, 0x5100);
    for (std::size_t mi = 0; mi < c.mu_list.size(); ++mi) {
      const Multiplicity mu(c.mu_list[mi]);
      for (double tv : c.t_list) {
        const Planck t(tv);
        for (std::size_t s = 0; s < c.grid; ++s) {
          const double root_t = std::sqrt(tv);
          const ComplexPoint z{cplx(root_t * rng.uniform(-1, 1), root_t * rng.uniform(-1, 1))};
          const ComplexPoint w{root_t * rng.uniform(-2, 2)};
          const cplx v = heat_kernel_rho(z, w, mu, t);
          rows.push_back({{"mu", mu.value()}, {"t", tv}, {"z", {z[0].real(), z[0].imag()}},
                          {"w", w[0].real()}, {"value", {v.real(), v.imag()}}});
          csv << fmt(mu.value()) << ',' << fmt(tv) << ',' << fmt(z[0].real()) << ','
              << fmt(z[0].imag()) << ',' << fmt(w[0].real()) << ',' << fmt(v.real()) << ','
              << fmt(v.imag()) << '\n';
        }
      }
    }
  }
  out.body = effective_format(c) == Format::csv
                 ? csv.str()
                 : render(c, {{"config", config_json(c)}, {"rows", std::move(rows)}});
  return out;
}

KernelVersion parse_version(const std::string& v) {
  if (v == "A") return KernelVersion::A;
  if (v == "B") return KernelVersion::B;
  if (v == "C") return KernelVersion::C;
  throw UsageError("--version must be A, B or C; got '" + v + "'");
}

RunResult run_transform(const RunConfig& c) {
  RunResult out;
  const KernelVersion version = parse_version(c.version);
  json rows = json::array();
  std::ostringstream csv;
  if (c.flavor == "su2") {
    const GroupFunction psi = group_test_function(c.function);
    const HaarRule rule = haar_rule(c.haar_resolution);
    CounterRng rng(c.seed, 0x5200);
    csv << "t,g11_re,g11_im,g12_re,g12_im,g21_re,g21_im,g22_re,g22_im,value_re,value_im\n";
    for (double tv : c.t_list) {
      for (std::size_t s = 0; s < c.grid; ++s) {
        const SL2CElement g = random_sl2c(rng, 0.5);
        const cplx v = transform_apply_lie(version, psi, g, Planck(tv), rule, c.truncation_tol);
        const Mat2C& m = g.matrix();
        rows.push_back({{"t", tv}, {"g", m.to_string()}, {"value", {v.real(), v.imag()}}});
        csv << fmt(tv);
        for (cplx e : {m.a11, m.a12, m.a21, m.a22}) csv << ',' << fmt(e.real()) << ',' << fmt(e.imag());
        csv << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
      }
    }
  } else {
    const RealFunction psi = real_test_function(c.function, c.seed);
    CounterRng rng(c.seed, 0x5300);
    csv << "mu,t,z,value_re,value_im\n";
    for (double muv : c.mu_list) {
      const Multiplicity mu(muv);
      for (double tv : c.t_list) {
        const Planck t(tv);
        const RealRule rule = version == KernelVersion::B ? m_rule(mu, t, c.quad_order, c.dim)
                                                          : omega_rule(mu, t, c.quad_order, c.dim);
        const double root_t = std::sqrt(tv);
        for (std::size_t s = 0; s < c.grid; ++s) {
          std::vector<cplx> coords(c.dim);
          for (auto& x : coords) x = root_t * cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
          const ComplexPoint z(std::move(coords));
          const cplx v = transform_apply(version, psi, z, mu, t, rule);
          rows.push_back({{"mu", muv}, {"t", tv}, {"z", z.to_string()}, {"value", {v.real(), v.imag()}}});
          csv << fmt(muv) << ',' << fmt(tv) << ',' << csv_quote(z.to_string()) << ','
              << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
        }
      }
    }
  }
  out.body = effective_format(c) == Format::csv
                 ? csv.str()
                 : render(c, {{"config", config_json(c)}, {"rows", std::move(rows)}});
  return out;
}

RunResult run_factorization(const RunConfig& c) {
  IdentityReport report;
  report.config = sample_spec(c);
  const std::vector<std::string> names =
      c.function == "all" ? real_test_function_names() : std::vector<std::string>{c.function};
  report.identities.reserve(names.size());
  for (const auto& name : names) {
    const RealFunction psi = real_test_function(name, c.seed);
    auto& stats = report.add_identity("C_equals_A_M[" + name + "]", "");
    for (std::size_t mi = 0; mi < c.mu_list.size(); ++mi) {
      const Multiplicity mu(c.mu_list[mi]);
      for (std::size_t ti = 0; ti < c.t_list.size(); ++ti) {
        const Planck t(c.t_list[ti]);
        const RealRule rule = omega_rule(mu, t, c.quad_order, c.dim);
        CounterRng rng(c.seed, 0x6000 + mi * c.t_list.size() + ti);
        const double root_t = std::sqrt(t.value());
        std::vector<ComplexPoint> grid;
        for (std::size_t s = 0; s < c.grid; ++s) {
          std::vector<cplx> coords(c.dim);
          for (auto& x : coords) x = root_t * cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
          grid.emplace_back(std::move(coords));
        }
        const IdentityReport part = factorization_check(psi, grid, mu, t, rule, name);
        if (stats.formula.empty()) stats.formula = part.identities.front().formula;
        stats.merge(part.identities.front());
      }
    }
  }
  return identity_result(c, report);
}

RunResult run_bounds(const RunConfig& c) {
  IdentityReport report;
  report.config = sample_spec(c);
  report.identities.reserve(1 + c.mu_list.size() * c.t_list.size());

  // |U_n(z)| <= (3 max(1,|z|))^n; the residual is the excess over the bound.
  auto& cheb = report.add_identity("chebyshev_bound", "|U_n(z)| <= (3 max(1,|z|))^n, n <= 60, |z| <= 5");
  std::size_t violations = 0;
  double cheb_max_ratio = 0.0;
  CounterRng rng(c.seed, 0x7000);
  for (std::size_t s = 0; s < c.samples; ++s) {
    const cplx z = std::polar(5.0 * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
    for (int n = 0; n <= 60; ++n) {
      const double ratio = std::abs(u_eval(ChebDegree(n), z)) / u_bound(ChebDegree(n), z);
      cheb_max_ratio = std::max(cheb_max_ratio, ratio);
      if (ratio > 1.0) ++violations;
      cheb.add(std::max(0.0, ratio - 1.0), [&] {
        return "n=" + std::to_string(n) + " z=" + fmt(z.real()) + fmt(z.imag()) + "i";
      });
    }
  }

  json bound_blocks = json::array();
  for (double muv : c.mu_list) {
    for (double tv : c.t_list) {
      const Multiplicity mu(muv);
      const Planck t(tv);
      const RealRule rule = omega_rule(mu, t, c.quad_order, c.dim);
      CounterRng zr(c.seed, 0x7100);
      const double root_t = std::sqrt(tv);
      auto draw = [&] {
        std::vector<cplx> coords(c.dim);
        for (auto& x : coords) x = root_t * cplx(zr.uniform(-1, 1), zr.uniform(-1, 1));
        return ComplexPoint(std::move(coords));
      };
      std::vector<ComplexPoint> z_grid, w_list;
      for (std::size_t s = 0; s < c.grid; ++s) z_grid.push_back(draw());
      for (int s = 0; s < 5; ++s) w_list.push_back(draw());
      const BoundCheck b = pointwise_bound_check(z_grid, w_list, mu, t, rule);
      auto& stats = report.add_identity("pointwise_bound[mu=" + fmt(muv) + ",t=" + fmt(tv) + "]",
                                        "|f(z)| <= c^(1/2) exp(|Im z|^2/2t) ||f||");
      stats.add(std::max(0.0, b.max_ratio - 1.0), [&] { return b.worst_point; });
      bound_blocks.push_back({{"mu", muv}, {"t", tv}, {"c", b.c}, {"max_ratio", b.max_ratio},
                              {"mean_ratio", b.mean_ratio}, {"count", b.count}});
    }
  }
  RunResult out = identity_result(c, report);
  if (violations > 0 && out.exit_code == kExitPass) out.exit_code = kExitResidual;
  if (effective_format(c) == Format::json) {
    json doc = json::parse(out.body);
    doc.erase("generated_at");
    doc["chebyshev"] = {{"violations", violations}, {"max_ratio", cheb_max_ratio}};
    doc["pointwise_bound"] = std::move(bound_blocks);
    out.body = render(c, std::move(doc));
  }
  return out;
}

}  // namespace

Format effective_format(const RunConfig& c) {
  if (c.format) return *c.format;
  return is_table_command(c.command) ? Format::csv : Format::json;
}

void validate(const RunConfig& c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    throw UsageError("unknown command '" + c.command + "'");
  }
  if (c.t_list.empty()) throw UsageError("--t needs at least one value");
  for (double t : c.t_list) {
    if (!(t > 0.0) || !std::isfinite(t)) throw UsageError("--t values must be finite and > 0");
  }
  if (c.mu_list.empty()) throw UsageError("--mu needs at least one value");
  for (double mu : c.mu_list) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw UsageError("--mu values must be finite and >= 0");
    if (mu > 0.0 && c.dim > 1) throw UsageError("--mu > 0 requires --dim 1");
  }
  if (c.dim < 1 || c.dim > 3) throw UsageError("--dim must be 1, 2 or 3");
  if (c.samples < 1) throw UsageError("--samples must be >= 1");
  if (!(c.tol > 0.0)) throw UsageError("--tol must be > 0");
  if (!(c.truncation_tol > 0.0)) throw UsageError("--truncation-tol must be > 0");
  if (c.quad_order < 2 || c.quad_order > 256 || c.quad_order % 2 != 0) {
    throw UsageError("--quad-order must be even and in [2, 256]");
  }
  if (c.haar_resolution < 4 || c.haar_resolution > 64) {
    throw UsageError("--haar-resolution must be in [4, 64]");
  }
  if (c.grid < 1) throw UsageError("--grid must be >= 1");
  if (c.flavor != "su2" && c.flavor != "coxeter") throw UsageError("--flavor must be su2 or coxeter");
  if (c.command == "heat-kernel" && c.flavor == "su2" && c.matrix != "random") {
    (void)parse_group_matrix(c.matrix);
  }
  if (c.command == "transform") {
    (void)parse_version(c.version);
    if (c.flavor == "su2") {
      (void)group_test_function(c.function);
    } else {
      (void)real_test_function(c.function);
    }
  }
  if (c.command == "factorization" && c.function != "all") (void)real_test_function(c.function);
}

RunResult run(const RunConfig& c) {
  try {
    validate(c);
    if (c.command == "coxeter-identities") return run_coxeter_identities(c);
    if (c.command == "lie-identities") return run_lie_identities(c);
    if (c.command == "counterexample") return run_counterexample(c);
    if (c.command == "heat-kernel") return run_heat_kernel(c);
    if (c.command == "transform") return run_transform(c);
    if (c.command == "factorization") return run_factorization(c);
    return run_bounds(c);
  } catch (const UsageError& e) {
    return {kExitConfig, "", std::string("config error: ") + e.what()};
  } catch (const DomainError& e) {
    return {kExitConfig, "", std::string("config error: ") + e.what()};
  } catch (const RankError& e) {
    return {kExitConfig, "", std::string("config error: ") + e.what()};
  } catch (const std::exception& e) {
    return {kExitResidual, "", std::string("evaluation failed: ") + e.what()};
  }
}

std::string output_destination(const RunConfig& c) {
  if (!c.output_path.empty()) return c.output_path;
  if (const char* dir = std::getenv("SBK_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
    const char* ext = effective_format(c) == Format::json ? ".json" : ".csv";
    return (std::filesystem::path(dir) / (c.command + ext)).string();
  }
  return {};
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, int& exit_code) {
  CLI::App app{"Segal-Bargmann kernel identity checks and reports", "sbk"};
  app.require_subcommand(1, 1);
  RunConfig c;
  std::string format;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--t", c.t_list, "Planck constants t > 0 (comma separated)")->delimiter(',');
    sub->add_option("--mu", c.mu_list, "multiplicities mu >= 0 (comma separated)")->delimiter(',');
    sub->add_option("--seed", c.seed, "seed for every random draw");
    sub->add_option("--samples", c.samples, "samples per (mu, t)");
    sub->add_option("--tol", c.tol, "max residual for exit status 0");
    sub->add_option("--truncation-tol", c.truncation_tol, "heat-kernel series tail tolerance");
    sub->add_option("--quad-order", c.quad_order, "Gauss rule order on R");
    sub->add_option("--haar-resolution", c.haar_resolution, "Haar rule resolution on SU(2)");
    sub->add_option("--output", c.output_path, "report file (default stdout or $SBK_OUTPUT_DIR)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--no-timestamp", [&](std::int64_t) { c.timestamp = false; },
                  "omit generated_at from JSON");
    sub->add_option("--dim", c.dim, "dimension N (mu = 0 only for N > 1)");
    sub->add_option("--grid", c.grid, "grid size for transform, factorization and bounds");
  };

  for (const auto& name : kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    common(sub);
    if (name == "heat-kernel" || name == "transform") {
      sub->add_option("--flavor", c.flavor, "su2 or coxeter");
    }
    if (name == "heat-kernel") {
      sub->add_option("--matrix", c.matrix, "identity, minus-identity, diag:<tau> or random");
    }
    if (name == "transform") {
      sub->add_option("--version", c.version, "kernel version A, B or C");
      sub->add_option("--function", c.function, "one, cubic, trig, gauss (su2: one, chi<2u>)");
    }
    if (name == "factorization") {
      c.function = "all";
      sub->add_option("--function", c.function, "test function or all");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    exit_code = code == 0 ? kExitPass : kExitConfig;
    return std::nullopt;
  }
  for (const auto* sub : app.get_subcommands()) c.command = sub->get_name();
  if (c.command == "transform" && !app.get_subcommand("transform")->count("--function")) {
    c.function = "one";
  }
  if (!format.empty()) c.format = format == "json" ? Format::json : Format::csv;
  exit_code = kExitPass;
  return c;
}

}  // namespace sbk::cli
