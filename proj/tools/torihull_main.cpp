#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "torihull/approximation.hpp"
#include "torihull/errors.hpp"
#include "torihull/io.hpp"
#include "torihull/semiclassics.hpp"
#include "torihull/spectral.hpp"
#include "torihull/toric_hull.hpp"

namespace th = torihull;

namespace {

struct RunConfig {
  th::Tolerances tol;
  std::uint64_t seed = 0;
  std::string input;
  std::string output;
};

void add_common_options(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--gap-tie-tol", cfg.tol.gap_tie_tol, "Tolerance for tied maximal gaps")
      ->envname("TORIHULL_GAP_TIE_TOL")
      ->capture_default_str();
  cmd.add_option("--hull-cauchy-tol", cfg.tol.hull_cauchy_tol, "Cauchy tolerance for hull limits")
      ->envname("TORIHULL_HULL_CAUCHY_TOL")
      ->capture_default_str();
  cmd.add_option("--margin", cfg.tol.margin, "Required distance of -1 from each spectrum")
      ->envname("TORIHULL_MARGIN")
      ->capture_default_str();
  cmd.add_option("--mesh", cfg.tol.mesh, "Resolution of hull distances")
      ->envname("TORIHULL_MESH")
      ->capture_default_str();
  cmd.add_option("--joint-eig-tol", cfg.tol.joint_eig_tol, "Joint eigenvector residual tolerance")
      ->envname("TORIHULL_JOINT_EIG_TOL")
      ->capture_default_str();
  cmd.add_option("--seed", cfg.seed, "Random seed")->envname("TORIHULL_SEED")->capture_default_str();
  cmd.add_option("--threads", cfg.tol.threads, "Worker threads")
      ->envname("TORIHULL_THREADS")
      ->capture_default_str();
  cmd.add_option("-o,--output", cfg.output, "Output file (default: stdout)");
}

// CLI11 silently drops environment values that fail a validator, so ranges are checked here.
void validate_config(const RunConfig& cfg) {
  const std::pair<const char*, double> positive[] = {
      {"--gap-tie-tol", cfg.tol.gap_tie_tol}, {"--hull-cauchy-tol", cfg.tol.hull_cauchy_tol},
      {"--margin", cfg.tol.margin},           {"--mesh", cfg.tol.mesh},
      {"--joint-eig-tol", cfg.tol.joint_eig_tol}};
  for (const auto& [name, value] : positive) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw th::InputError(std::string(name) + " must be a positive number");
    }
  }
  if (cfg.tol.threads < 1 || cfg.tol.threads > 256) throw th::InputError("--threads must lie in [1, 256]");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw th::InputError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw th::InputError("cannot write " + path);
  out << text;
}

std::string with_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s.push_back('\n');
  return s;
}

std::string angles_text(const std::vector<double>& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ", ";
    s += th::io::format_number(a[i]);
  }
  return s + "]";
}

int cmd_hull(const RunConfig& cfg) {
  const th::LabeledSet e = th::io::labeled_set_from_json(read_file(cfg.input));
  if (!th::is_simple(e)) {
    if (e.component_count() != 1) {
      throw th::AssumptionError("set is not simple and has several components; no hull is defined");
    }
    const std::size_t d = e.dim();
    const auto per_axis = static_cast<std::size_t>(
        std::max(2.0, std::round(std::pow(16.0, 1.0 / static_cast<double>(d)))));
    const th::HullizableReport rep = th::hullizable(e, th::rotation_grid(d, per_axis), cfg.tol);
    if (rep.status != th::Hullizability::hullizable) {
      throw th::AssumptionError(rep.status == th::Hullizability::not_decidable
                                    ? "set is not simple and no rotation admits a very simple "
                                      "approximation: hullizability is not decidable"
                                    : "set is not simple and not hullizable");
    }
    std::cerr << "simple: no\nhullizable: yes\nhull: " << (rep.hull->is_full() ? "full" : "anchored")
              << '\n';
    write_output(cfg.output, with_newline(th::io::hull_to_json(*rep.hull)));
    return 0;
  }
  const th::GenericityReport gen = th::check_generic(e, cfg.tol);
  const th::ToricHull hull = th::convex_hull_simple(e, cfg.tol);
  std::cerr << "simple: yes\ngeneric: " << (gen.generic ? "yes" : "no") << '\n';
  if (!hull.is_full()) std::cerr << "admissible rotation: " << angles_text(hull.base().angles()) << '\n';
  if (gen.witness) {
    std::cerr << "witness: components " << gen.witness->component_a << " and "
              << gen.witness->component_b << " shift differently between rotations "
              << angles_text(gen.witness->b.angles()) << " and "
              << angles_text(gen.witness->c.angles()) << '\n';
  }
  std::cerr << "hull: " << (hull.is_full() ? "full" : "anchored") << '\n';
  write_output(cfg.output, with_newline(th::io::hull_to_json(hull)));
  return 0;
}

int cmd_jointspec(const RunConfig& cfg, bool rotate) {
  const th::UnitaryFamily family = th::io::family_from_json(read_file(cfg.input));
  th::JointSpectrum spec;
  if (rotate) {
    th::TorusPoint used;
    spec = th::joint_spectrum_rotated(family, cfg.tol, &used);
    std::cerr << "rotation: " << angles_text(used.angles()) << '\n';
  } else {
    spec = th::joint_spectrum_unitary(family, cfg.tol);
  }
  std::cerr << "points: " << spec.points.size() << "\nresidual: "
            << th::io::format_number(spec.residual) << '\n';
  write_output(cfg.output, with_newline(th::io::joint_spectrum_to_json(spec)));
  return 0;
}

std::vector<int> parse_klist(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const int k = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(k);
    } catch (const std::exception&) {
      throw th::InputError("bad k value \"" + item + "\"");
    }
  }
  if (out.empty()) throw th::InputError("k list is empty");
  return out;
}

int cmd_converge(const RunConfig& cfg, const std::string& family, const std::string& klist, int d,
                 const std::string& sidecar) {
  const std::vector<int> ks = parse_klist(klist);
  th::ConvergenceResult result;
  if (family == "arc") {
    if (d != 1) throw th::InputError("the arc family is one-dimensional");
    result = th::convergence_experiment(th::arc_family, th::arc_classical_samples(cfg.tol.mesh), ks,
                                        cfg.tol.mesh, cfg.tol);
  } else if (family == "torus-bto") {
    result = th::convergence_experiment([d](int k) { return th::tensor_family(k, d); },
                                        th::torus_classical_samples(d), ks, cfg.tol.mesh, cfg.tol);
  } else {
    throw th::InputError("unknown family \"" + family + "\" (expected arc or torus-bto)");
  }
  write_output(cfg.output, th::io::convergence_to_csv(result));
  if (!sidecar.empty()) write_output(sidecar, with_newline(th::io::convergence_to_json(result)));
  if (!result.a1_ok) {
    std::cerr << "assumption check failed: no single admissible rotation serves every k"
              << (result.classical_simple ? "" : " (the classical image is not simple)") << '\n';
    return static_cast<int>(th::ErrorKind::assumption);
  }
  return 0;
}

int cmd_axioms(const RunConfig& cfg, const std::string& model, const std::vector<double>& hbars,
               const std::string& format) {
  const auto kind = th::parse_model(model);
  if (!kind) throw th::InputError("unknown model \"" + model + "\" (expected diagonal or perturbed)");
  const th::AxiomReport report = th::axiom_property_suite(*kind, hbars, cfg.seed);
  write_output(cfg.output, format == "json" ? with_newline(th::io::axiom_report_to_json(report))
                                            : th::io::axiom_report_to_text(report));
  return 0;
}

int cmd_family(const RunConfig& cfg, int k, int d) {
  write_output(cfg.output, with_newline(th::io::family_to_json(th::tensor_family(k, d))));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric convex hulls and joint spectra of commuting unitaries"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* hull = app.add_subcommand("hull", "Toric convex hull of a labeled point set");
  add_common_options(*hull, cfg);
  hull->add_option("input", cfg.input, "Labeled set JSON")->required();

  bool rotate = false;
  auto* jointspec = app.add_subcommand("jointspec", "Joint spectrum of a commuting unitary family");
  add_common_options(*jointspec, cfg);
  jointspec->add_option("input", cfg.input, "Matrix family JSON")->required();
  jointspec->add_flag("--rotate", rotate, "Rotate away from -1 when the margin is too small");

  std::string family = "arc";
  std::string klist;
  std::string sidecar;
  int dim = 1;
  auto* converge = app.add_subcommand("converge", "Hull convergence experiment");
  add_common_options(*converge, cfg);
  converge->add_option("--family", family, "arc or torus-bto")->capture_default_str();
  converge->add_option("--klist", klist, "Comma-separated increasing k values")->required();
  converge->add_option("--d", dim, "Torus dimension for torus-bto")->capture_default_str();
  converge->add_option("--json", sidecar, "JSON sidecar with full hulls");

  std::string model;
  std::vector<double> hbars{0.1, 1.0 / 30.0, 0.01, 1.0 / 300.0, 0.001};
  std::string format = "text";
  auto* axioms = app.add_subcommand("axioms", "Quantization axiom defects and slopes");
  add_common_options(*axioms, cfg);
  axioms->add_option("--model", model, "diagonal or perturbed")->required();
  axioms->add_option("--hbar", hbars, "Semiclassical parameters")->capture_default_str();
  axioms->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  int fam_k = 2;
  auto* fam = app.add_subcommand("family", "Write the torus translation family as JSON");
  add_common_options(*fam, cfg);
  fam->add_option("--k", fam_k, "Inverse semiclassical parameter")->capture_default_str();
  fam->add_option("--d", dim, "Torus dimension")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(th::ErrorKind::input);
  }

  try {
    validate_config(cfg);
    if (*hull) return cmd_hull(cfg);
    if (*jointspec) return cmd_jointspec(cfg, rotate);
    if (*converge) return cmd_converge(cfg, family, klist, dim, sidecar);
    if (*axioms) return cmd_axioms(cfg, model, hbars, format);
    if (*fam) return cmd_family(cfg, fam_k, dim);
  } catch (const th::MarginError& e) {
    std::cerr << "error: " << e.what() << "; rerun with --rotate to rotate the family first\n";
    return static_cast<int>(e.kind());
  } catch (const th::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(th::ErrorKind::numerical);
  }
  return 0;
}
