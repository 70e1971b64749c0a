// Command-line surface for the quaternionic zero-bound library: computes
// inclusion radii, finds zeros, evaluates the extremal gap constants, and
// runs seeded bound-vs-zeros verification sweeps. One invocation = one
// process; all state flows through files and stdio.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qek/bounds.hpp"
#include "qek/errors.hpp"
#include "qek/harness.hpp"
#include "qek/json_io.hpp"
#include "qek/mconst.hpp"
#include "qek/roots.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitHypothesis = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct GlobalOpts {
  double tol = 1e-9;
  std::uint64_t seed = 12345;
  std::string out;  // empty = stdout
};

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + g.out);
  f << text << "\n";
}

void emit_error(const std::string& kind, const std::string& message) {
  nlohmann::json diag{{"error", kind}, {"message", message}};
  std::cerr << qek::stable_dump(diag) << "\n";
}

// Input is either inline JSON (starts with '{') or a file path.
qek::SparseQPolynomial load_poly(const std::string& input) {
  const size_t first = input.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && input[first] == '{') {
    return qek::poly_from_string(input);
  }
  std::ifstream f(input, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open input file: " + input);
  std::ostringstream buf;
  buf << f.rdbuf();
  return qek::poly_from_string(buf.str());
}

qek::Quaternion parse_quaternion_flag(const std::string& text) {
  std::istringstream is(text);
  double c[4];
  char comma;
  for (int i = 0; i < 4; ++i) {
    if (i > 0 && (!(is >> comma) || comma != ',')) {
      throw std::invalid_argument("--b expects w,x,y,z");
    }
    if (!(is >> c[i])) throw std::invalid_argument("--b expects w,x,y,z");
  }
  return qek::Quaternion{c[0], c[1], c[2], c[3]};
}

int run_bounds(const GlobalOpts& g, const std::string& input,
               const std::string& theorem, const qek::BoundParams& params) {
  const qek::SparseQPolynomial p = load_poly(input);
  if (theorem == "auto") {
    nlohmann::json arr = nlohmann::json::array();
    for (const qek::BoundReport& r : qek::auto_select(p, params)) {
      arr.push_back(qek::boundreport_to_json(r));
    }
    emit(g, qek::stable_dump(arr));
    return kExitOk;
  }
  qek::BoundReport r;
  if (theorem == "ek") {
    r = qek::check_ek(p);
  } else if (theorem == "q2") {
    const qek::Quaternion b =
        params.b ? *params.b : (p.empty() ? qek::Quaternion::real(1.0) : p.leading());
    double theta = 0.0;
    if (params.theta) {
      theta = *params.theta;
    } else {
      // minimal admissible aperture, clamped so the validator (not the
      // frame constructor) reports coefficients outside the cone
      for (const qek::Term& t : p.terms()) {
        theta = std::max(theta, qek::angle_between(t.coeff, b));
      }
      theta = std::min(theta, 1.5707963267948966);
    }
    r = qek::bound_q2(p, qek::AngleFrame(b, theta));
  } else if (theorem == "q3") {
    r = qek::bound_q3(p);
  } else if (theorem == "t1") {
    r = qek::bound_t1(p, params);
  } else if (theorem == "t2") {
    r = qek::bound_t2(p, params);
  } else if (theorem == "co1") {
    r = qek::bound_co1(p);
  } else if (theorem == "co2") {
    r = qek::bound_co2(p);
  } else if (theorem == "cor3") {
    r = qek::bound_cor3(p);
  } else {
    throw std::invalid_argument("unknown theorem id: " + theorem);
  }
  emit(g, qek::stable_dump(qek::boundreport_to_json(r)));
  return r.hypothesis.satisfied ? kExitOk : kExitHypothesis;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-inclusion radii and certified zeros for lacunary "
               "quaternionic polynomials"};
  app.require_subcommand(1);
  // global flags remain valid after the subcommand name
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--tol", g.tol, "root-finder / classification tolerance");
  auto* seed_opt =
      app.add_option("--seed", g.seed, "seed for randomized subcommands");
  app.add_option("--out", g.out, "output path (default stdout)");

  std::string input;
  std::string theorem = "auto";
  std::string b_flag, r_flag = "auto", method = "closed";
  std::optional<double> alpha_flag, theta_flag, beta_flag;
  int samples = 10000;

  auto* roots_cmd = app.add_subcommand("roots", "find all zeros");
  roots_cmd->add_option("input", input, "polynomial JSON (path or inline)")
      ->required();

  auto* bounds_cmd = app.add_subcommand("bounds", "inclusion radii");
  bounds_cmd->add_option("input", input)->required();
  bounds_cmd->add_option("--theorem", theorem)
      ->check(CLI::IsMember(
          {"ek", "q2", "q3", "t1", "t2", "co1", "co2", "cor3", "auto"}));
  bounds_cmd->add_option("--alpha", alpha_flag);
  bounds_cmd->add_option("--beta", beta_flag);
  bounds_cmd->add_option("--theta", theta_flag);
  bounds_cmd->add_option("--b", b_flag, "frame direction w,x,y,z");
  bounds_cmd->add_option("--r", r_flag, "unimodal peak index or 'auto'");

  auto* mconst_cmd = app.add_subcommand("m-const", "extremal gap constants");
  mconst_cmd->add_option("input", input)->required();
  mconst_cmd->add_option("--method", method)
      ->check(CLI::IsMember({"closed", "sampled"}));
  mconst_cmd->add_option("--samples", samples);

  auto* verify_cmd =
      app.add_subcommand("verify", "bound vs. actually-found zeros");
  verify_cmd->add_option("input", input)->required();
  verify_cmd->add_option("--theorem", theorem)
      ->check(CLI::IsMember({"ek", "q2", "q3", "t1", "t2", "co1", "co2", "cor3"}));
  verify_cmd->add_option("--alpha", alpha_flag);
  verify_cmd->add_option("--beta", beta_flag);
  verify_cmd->add_option("--theta", theta_flag);
  verify_cmd->add_option("--b", b_flag);
  verify_cmd->add_option("--r", r_flag);

  std::string kind = "monotone-real";
  std::string sweep_theorem = "ek";
  std::string dump_instances;
  std::string config_path;
  qek::EnsembleConfig cfg;
  auto* sweep_cmd = app.add_subcommand("sweep", "seeded ensemble verification");
  auto* kind_opt = sweep_cmd->add_option("--kind", kind)
      ->check(CLI::IsMember({"monotone-real", "monotone-modulus-angle",
                             "component-monotone", "complex-co1",
                             "complex-co2"}));
  auto* theorem_opt = sweep_cmd->add_option("--theorem", sweep_theorem)
      ->check(CLI::IsMember({"ek", "q2", "q3", "t1", "t1-literal", "t2", "co1",
                             "co2", "cor3"}));
  auto* count_opt = sweep_cmd->add_option("--count", cfg.count);
  auto* maxdeg_opt = sweep_cmd->add_option("--max-degree", cfg.maxDegree);
  auto* support_opt = sweep_cmd->add_option("--support-size", cfg.supportSize);
  auto* maxgap_opt = sweep_cmd->add_option("--max-gap", cfg.maxGap);
  sweep_cmd->add_option("--alpha", alpha_flag, "angle cone for the t1 kind");
  sweep_cmd->add_option("--dump-instances", dump_instances,
                        "also write the generated polynomials as JSON");
  sweep_cmd->add_option("--config", config_path,
                        "JSON config file; explicit flags override it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    emit_error("cli", e.what());
    return kExitInput;
  }

  try {
    qek::BoundParams params;
    params.alpha = alpha_flag;
    params.beta = beta_flag;
    params.theta = theta_flag;
    if (!b_flag.empty()) params.b = parse_quaternion_flag(b_flag);
    if (r_flag != "auto") params.peak_r = std::stoi(r_flag);

    if (roots_cmd->parsed()) {
      const qek::SparseQPolynomial p = load_poly(input);
      const qek::ZeroSet zs = qek::find_zeros(p, g.tol);
      emit(g, qek::stable_dump(qek::zeroset_to_json(zs)));
      return kExitOk;
    }
    if (bounds_cmd->parsed()) {
      return run_bounds(g, input, theorem, params);
    }
    if (mconst_cmd->parsed()) {
      const qek::SparseQPolynomial p = load_poly(input);
      const qek::MReport r = qek::m_overall(
          p, method == "closed" ? qek::MMethod::ClosedForm : qek::MMethod::Sampled,
          samples, g.seed);
      emit(g, qek::stable_dump(qek::mreport_to_json(r)));
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      const qek::SparseQPolynomial p = load_poly(input);
      qek::BoundReport r;
      if (theorem == "ek") r = qek::check_ek(p);
      else if (theorem == "q3") r = qek::bound_q3(p);
      else if (theorem == "t1") r = qek::bound_t1(p, params);
      else if (theorem == "t2") r = qek::bound_t2(p, params);
      else if (theorem == "co1") r = qek::bound_co1(p);
      else if (theorem == "co2") r = qek::bound_co2(p);
      else if (theorem == "cor3") r = qek::bound_cor3(p);
      else if (theorem == "q2") {
        const qek::Quaternion b = params.b ? *params.b : p.leading();
        double theta = params.theta.value_or(0.0);
        if (!params.theta) {
          for (const qek::Term& t : p.terms()) {
            theta = std::max(theta, qek::angle_between(t.coeff, b));
          }
          theta = std::min(theta, 1.5707963267948966);
        }
        r = qek::bound_q2(p, qek::AngleFrame(b, theta));
      } else {
        throw std::invalid_argument("unknown theorem id: " + theorem);
      }
      if (!r.hypothesis.satisfied) {
        emit(g, qek::stable_dump(qek::boundreport_to_json(r)));
        return kExitHypothesis;
      }
      const qek::VerifyRow row = qek::verify(p, r, g.tol);
      emit(g, qek::stable_dump(qek::verifyrow_to_json(row)));
      return kExitOk;
    }
    if (sweep_cmd->parsed()) {
      if (!config_path.empty()) {
        std::ifstream f(config_path, std::ios::binary);
        if (!f) {
          throw std::invalid_argument("cannot open config file: " + config_path);
        }
        nlohmann::json j;
        try {
          f >> j;
        } catch (const nlohmann::json::exception& e) {
          throw std::invalid_argument(std::string("malformed config JSON: ") +
                                      e.what());
        }
        if (j.contains("kind") && kind_opt->count() == 0) {
          kind = j["kind"].get<std::string>();
        }
        if (j.contains("theorem") && theorem_opt->count() == 0) {
          sweep_theorem = j["theorem"].get<std::string>();
        }
        if (j.contains("count") && count_opt->count() == 0) {
          cfg.count = j["count"].get<int>();
        }
        if (j.contains("maxDegree") && maxdeg_opt->count() == 0) {
          cfg.maxDegree = j["maxDegree"].get<int>();
        }
        if (j.contains("supportSize") && support_opt->count() == 0) {
          cfg.supportSize = j["supportSize"].get<int>();
        }
        if (j.contains("maxGap") && maxgap_opt->count() == 0) {
          cfg.maxGap = j["maxGap"].get<int>();
        }
        if (j.contains("alpha") && !alpha_flag) {
          alpha_flag = j["alpha"].get<double>();
        }
        if (j.contains("seed") && seed_opt->count() == 0) {
          g.seed = j["seed"].get<std::uint64_t>();
        }
      }
      if (kind == "monotone-real") cfg.kind = qek::EnsembleKind::MonotoneReal;
      else if (kind == "monotone-modulus-angle") cfg.kind = qek::EnsembleKind::MonotoneModulusAngle;
      else if (kind == "component-monotone") cfg.kind = qek::EnsembleKind::ComponentMonotone;
      else if (kind == "complex-co1") cfg.kind = qek::EnsembleKind::ComplexCo1;
      else cfg.kind = qek::EnsembleKind::ComplexCo2;
      cfg.seed = g.seed;
      if (alpha_flag) cfg.alpha = *alpha_flag;
      if (!dump_instances.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const qek::SparseQPolynomial& p : qek::generate(cfg)) {
          arr.push_back(qek::poly_to_json(p));
        }
        std::ofstream f(dump_instances, std::ios::binary);
        if (!f) {
          throw std::invalid_argument("cannot open dump file: " + dump_instances);
        }
        f << qek::stable_dump(arr) << "\n";
      }
      const qek::SweepResult result = qek::sweep(cfg, sweep_theorem);
      std::string csv = qek::to_csv(result.rows);
      if (g.out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream f(g.out, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open output file: " + g.out);
        f << csv;
      }
      return kExitOk;
    }
  } catch (const qek::HypothesisViolation& e) {
    emit_error("hypothesis", e.what());
    return kExitHypothesis;
  } catch (const qek::NumericalError& e) {
    emit_error("numerical", e.what());
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    emit_error("input", e.what());
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    emit_error("input", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return kExitNumerical;
  }
  return kExitInput;
}
