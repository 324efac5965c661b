#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "embolic/errors.hpp"
#include "embolic/homology.hpp"
#include "embolic/nerve.hpp"
#include "embolic/pipeline.hpp"
#include "embolic/report_json.hpp"
#include "embolic/space_io.hpp"
#include "genspec.hpp"
#include "meta.hpp"

namespace embolic {
namespace {

struct GenerateArgs {
  std::string name;
  long long m = 0;
  double a = 1.0, b = 1.0;
  long long m1 = 0, m2 = 0;
  std::string of;
  long long copies = 0;
  double sep = 100.0;
  std::string out;
  bool binary = false;
};

struct RunArgs {
  std::string in, gen, truth;
  double r0 = -1.0, theta = -1.0, beta = -1.0;
  int p = 2, dmax = -1, cap = 24, threads = 1;
  std::string out, complex_out;
};

std::string sanitize_spec(const std::string& spec) {
  std::string s = spec;
  for (char& c : s)
    if (c == ':' || c == ',' || c == '.') c = '-';
  return s;
}

std::string build_spec(const GenerateArgs& g) {
  auto fmt = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return std::string(buf);
  };
  if (g.name == "circle" || g.name == "sphere2") {
    if (g.m <= 0) throw ValidationError("generate: " + g.name + " requires --m");
    return g.name + ":" + std::to_string(g.m);
  }
  if (g.name == "flat-torus") {
    if (g.m1 <= 0 || g.m2 <= 0) throw ValidationError("generate: flat-torus requires --m1 and --m2");
    return "flat-torus:" + fmt(g.a) + "," + fmt(g.b) + "," + std::to_string(g.m1) + "," +
           std::to_string(g.m2);
  }
  if (g.name == "union") {
    if (g.of.empty() || g.copies <= 0)
      throw ValidationError("generate: union requires --of and --copies");
    return "union:" + std::to_string(g.copies) + "," + fmt(g.sep) + "," + g.of;
  }
  throw ValidationError("generate: unknown generator '" + g.name + "'");
}

int cmd_generate(const GenerateArgs& g) {
  const GeneratedSpace gen = make_generator(build_spec(g));
  const std::string out = g.out.empty() ? sanitize_spec(gen.canonical) + ".space" : g.out;
  if (g.binary)
    write_space_binary(gen.space, out);
  else
    write_space_text(gen.space, out);
  const std::string meta = meta_path_for(out);
  write_meta(meta, gen.canonical, gen.space, gen.betti);

  std::printf("wrote %s (m=%d, n=%d, inj=%.17g, vol=%.17g)\n", out.c_str(),
              gen.space.point_count(), gen.space.dim(), gen.space.inj(),
              gen.space.total_volume());
  std::printf("wrote %s (betti =", meta.c_str());
  for (long long v : gen.betti) std::printf(" %lld", v);
  std::printf(")\n");
  return kExitOk;
}

std::string default_report_name() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, "report_%Y%m%d-%H%M%S.json", &tm);
  return buf;
}

std::string derive_complex_name(const std::string& report_out) {
  const std::string suffix = ".json";
  if (report_out.size() > suffix.size() &&
      report_out.compare(report_out.size() - suffix.size(), suffix.size(), suffix) == 0)
    return report_out.substr(0, report_out.size() - suffix.size()) + ".complex";
  return report_out + ".complex";
}

std::vector<std::string> failing_checks(const BoundReport& r) {
  std::vector<std::string> out;
  auto note = [&](bool ok, const char* name) {
    if (!ok) out.push_back(name);
  };
  note(r.packing_radii_sorted_ok, "packing_radii_sorted");
  note(r.packing_disjoint_ok, "packing_disjoint");
  note(r.packing_coverage_ok, "packing_coverage");
  note(r.five_ball_ok, "five_ball");
  note(r.chain_a_ok, "chain_a");
  note(r.chain_b_ok, "chain_b");
  note(r.chain_c_ok, "chain_c");
  note(r.chain_d_ok, "chain_d");
  note(r.chain_e_ok, "chain_e");
  note(r.bk_le_tk_ok, "bk_le_tk");
  note(r.tk_le_bound_ok, "tk_le_bound");
  if (r.has_truth) note(r.betti_match_ok, "betti_match");
  return out;
}

void print_counts(const char* label, const std::vector<long long>& v) {
  std::printf("%s = [", label);
  for (std::size_t i = 0; i < v.size(); ++i) std::printf("%s%lld", i ? " " : "", v[i]);
  std::printf("]");
}

void print_summary(const BoundReport& r, const std::string& out, const std::string& complex_out) {
  std::printf("input: %s (m=%lld, n=%d, inj=%.6g, vol=%.6g)\n", r.input.c_str(), r.m, r.n, r.inj,
              r.vol);
  std::printf("R0 = %.6g (%s), theta = %.6g (%s), alpha = %.6g\n", r.R0, r.r0_policy.c_str(),
              r.theta, r.theta_policy.c_str(), r.alpha);
  std::printf("beta_n = %.6g (%s), r_floor = %.6g, rho = %.6g, rho_hat = %.6g\n", r.beta_n,
              r.beta_n_provenance.c_str(), r.r_floor, r.rho, r.rho_hat);
  std::printf("N = %lld, T = %lld, k_max_scale = %d, max_multiplicity = %d\n", r.N, r.T,
              r.k_max_scale, r.max_multiplicity);
  print_counts("t", r.t);
  std::printf(", ");
  print_counts("b", r.b);
  if (r.has_truth) {
    std::printf(", ");
    print_counts("truth", r.truth);
    std::printf(" (%s)", r.betti_match_ok ? "match" : "MISMATCH");
  }
  std::printf("\n");
  std::printf("bound_T = %.6g, bound_tk = %.6g, Cn = %.6g, Cnprime = %.6g\n", r.bound_T,
              r.bound_tk, r.Cn, r.Cnprime);
  std::printf("mandatory checks: %s", r.mandatory_ok ? "PASS" : "FAIL");
  if (!r.mandatory_ok) {
    std::printf(" (");
    const std::vector<std::string> bad = failing_checks(r);
    for (std::size_t i = 0; i < bad.size(); ++i) std::printf("%s%s", i ? ", " : "", bad[i].c_str());
    std::printf(")");
  }
  std::printf("\n");
  std::printf("report: %s\ncomplex: %s\n", out.c_str(), complex_out.c_str());
}

int cmd_run(const RunArgs& a) {
  if (a.in.empty() == a.gen.empty())
    throw ValidationError("run: exactly one of --in and --gen is required");

  PipelineOptions opts;
  opts.r0 = a.r0;
  opts.theta_override = a.theta;
  opts.beta_override = a.beta;
  opts.p = a.p;
  opts.dmax = a.dmax;
  opts.multiplicity_cap = a.cap;
  opts.threads = a.threads;

  std::optional<GeneratedSpace> generated;
  std::optional<MetricMeasureSpace> loaded;
  const MetricMeasureSpace* space = nullptr;
  if (!a.gen.empty()) {
    generated.emplace(make_generator(a.gen));
    space = &generated->space;
    opts.input_name = generated->canonical;
    opts.has_truth = true;
    opts.truth = generated->betti;
  } else {
    try {
      loaded.emplace(read_space(a.in));
    } catch (const ValidationError& e) {
      throw StageError("validate", e.what(), kExitValidation);
    }
    space = &*loaded;
    opts.input_name = a.in;
  }
  if (!a.truth.empty()) {
    opts.truth = read_truth(a.truth);
    opts.has_truth = true;
  }

  const PipelineResult result = run_pipeline(*space, opts);

  const std::string out = a.out.empty() ? default_report_name() : a.out;
  const std::string complex_out =
      a.complex_out.empty() ? derive_complex_name(out) : a.complex_out;
  write_report(result.report, out);
  write_complex(result.complex, complex_out);
  print_summary(result.report, out, complex_out);

  return result.report.mandatory_ok ? kExitOk : kExitCheck;
}

int cmd_homology(const std::string& in, int p) {
  const SimplicialComplex complex = read_complex(in);
  const BettiProfile profile = betti(complex, FieldSpec{p});
  for (std::size_t i = 0; i < profile.b.size(); ++i)
    std::printf("%s%lld", i ? " " : "", profile.b[i]);
  std::printf("\n");
  return kExitOk;
}

int cmd_report(const std::string& in) {
  std::ifstream f(in, std::ios::binary);
  if (!f) throw ValidationError("report: cannot open '" + in + "'");
  nlohmann::ordered_json doc;
  try {
    f >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("report: '" + in + "' is not valid JSON: " + std::string(e.what()));
  }
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const StageError& e) {
    std::cerr << "error at stage " << e.stage << ": " << e.what() << "\n";
    return e.exit_code;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace
}  // namespace embolic

int main(int argc, char** argv) {
  using namespace embolic;

  CLI::App app{"Covering-trick verification harness: good-ball packings, nerve complexes, "
               "finite-field Betti numbers, and volume-bound checks on sampled spaces"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "TOML-style config file with per-subcommand sections, e.g. [run] followed by "
                 "r0=0.2; command-line flags override file values");

  GenerateArgs gen_args;
  CLI::App* gen = app.add_subcommand(
      "generate", "Write a sampled space file plus a ground-truth metadata sidecar");
  gen->add_option("name", gen_args.name, "Generator: circle | sphere2 | flat-torus | union")
      ->required()
      ->check(CLI::IsMember({"circle", "sphere2", "flat-torus", "union"}));
  gen->add_option("--m", gen_args.m, "Sample count (circle, sphere2)");
  gen->add_option("--a", gen_args.a, "Torus circumference a (default 1)");
  gen->add_option("--b", gen_args.b, "Torus circumference b (default 1)");
  gen->add_option("--m1", gen_args.m1, "Torus grid size along a");
  gen->add_option("--m2", gen_args.m2, "Torus grid size along b");
  gen->add_option("--of", gen_args.of, "Union base spec, e.g. sphere2:500");
  gen->add_option("--copies", gen_args.copies, "Union copy count");
  gen->add_option("--sep", gen_args.sep, "Union inter-component distance (default 100)");
  gen->add_option("-o,--out", gen_args.out,
                  "Output path (default derived from the generator spec)");
  gen->add_flag("--binary", gen_args.binary, "Write the binary space format");

  RunArgs run_args;
  CLI::App* run = app.add_subcommand(
      "run", "Full pipeline: validate, croke, good balls, packing, nerve, homology, bounds");
  run->add_option("--in", run_args.in, "Space file to load");
  run->add_option("--gen", run_args.gen, "Generator spec, e.g. circle:2000");
  run->add_option("--truth", run_args.truth,
                  "Expected Betti numbers: a metadata sidecar path or an inline list like 1,0,1");
  run->add_option("--r0", run_args.r0, "Explicit R0 in (0, inj/2] (default: inj/2)");
  run->add_option("--theta", run_args.theta, "Explicit theta >= 0 (default: sqrt(log_5 rho_hat))");
  run->add_option("--beta", run_args.beta, "User beta_n > 0 (default: empirical estimate)");
  run->add_option("--p", run_args.p, "Coefficient field characteristic (prime, default 2)");
  run->add_option("--dmax", run_args.dmax, "Nerve dimension cutoff (default: n+1)");
  run->add_option("--cap", run_args.cap, "Witness multiplicity cap (default 24)");
  run->add_option("--threads", run_args.threads, "Parallelism degree (default 1)");
  run->add_option("--out", run_args.out, "Report path (default: report_<timestamp>.json)");
  run->add_option("--complex-out", run_args.complex_out,
                  "Complex path (default: report path with .complex)");

  std::string homology_in;
  int homology_p = 2;
  CLI::App* hom = app.add_subcommand("homology", "Betti numbers of a stored complex file");
  hom->add_option("--in", homology_in, "Complex file")->required();
  hom->add_option("--p", homology_p, "Coefficient field characteristic (prime, default 2)");

  std::string report_in;
  CLI::App* rep = app.add_subcommand("report", "Pretty-print a report file");
  rep->add_option("--in", report_in, "Report JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) return guarded([&] { return cmd_generate(gen_args); });
  if (run->parsed()) return guarded([&] { return cmd_run(run_args); });
  if (hom->parsed()) return guarded([&] { return cmd_homology(homology_in, homology_p); });
  if (rep->parsed()) return guarded([&] { return cmd_report(report_in); });
  return kExitFailure;
}
