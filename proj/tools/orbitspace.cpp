// Command-line front end: basis, phat, flatten, verify, strata, transform.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "orbitspace/errors.hpp"
#include "orbitspace/groups.hpp"
#include "orbitspace/invariants.hpp"
#include "orbitspace/io.hpp"
#include "orbitspace/pipeline.hpp"
#include "orbitspace/refdata.hpp"
#include "orbitspace/strata.hpp"

#ifndef ORBITSPACE_VERSION
#define ORBITSPACE_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace orbitspace;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kParse = 3, kInconsistent = 4, kMismatch = 5 };

struct Config {
  std::string group;
  std::uint64_t seed = kDefaultSeed;
  unsigned jobs = 1;
  std::string out = ".";
  std::string solver = "modular";
  std::string reference_dir = default_reference_dir().string();
  std::size_t k = 0;
  std::string basis = "flat";
  std::string phat_file;
  std::string map_file;
  std::string scales = "auto";
  bool section = false;
};

class Clock {
 public:
  explicit Clock(const Config& cfg) : log_path_(fs::path(cfg.out) / "run.log") {}
  void stage(const std::string& name) {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    std::cerr << "[" << name << "] " << s << " s\n";
    lines_.push_back(name + ": " + std::to_string(s) + " s");
  }
  void flush() const {
    std::ofstream log(log_path_, std::ios::app);
    for (const auto& l : lines_) log << l << "\n";
  }

 private:
  fs::path log_path_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  std::vector<std::string> lines_;
};

PhatOptions phat_options(const Config& cfg) {
  PhatOptions o;
  o.seed = cfg.seed;
  o.jobs = cfg.jobs;
  o.lane = cfg.solver == "exact" ? SolverLane::kExact : SolverLane::kModular;
  return o;
}

Header base_header(const Config& cfg, const ReflectionGroupData& g) {
  return {{"group", g.name},
          {"degrees", join_ints(g.degrees)},
          {"seed", std::to_string(cfg.seed)},
          {"version", ORBITSPACE_VERSION}};
}

void write_file(const Config& cfg, const std::string& name, const std::string& text) {
  fs::create_directories(cfg.out);
  const fs::path path = fs::path(cfg.out) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
  std::cout << "wrote " << path.string() << "\n";
}

std::string rationals(const std::vector<Rational>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
  return out;
}

int cmd_basis(const Config& cfg) {
  const auto& g = catalog(cfg.group);
  const auto report = verify_group_numerics(g);
  std::cout << "group: " << g.name << "\nrank: " << g.rank
            << "\ndegrees: " << join_ints(g.degrees) << "\ncoefficients: " << rationals(g.coeffs)
            << "\nforms: " << g.forms.size() << "\norder: " << to_string(g.order)
            << "\nreflections: " << g.reflections << "\nnumerics: "
            << (report.ok() ? "ok" : "FAILED") << "\n";
  for (const auto& f : report.failures) std::cout << "  " << f << "\n";
  BasicInvariantSet s = build_basic_invariants(g);
  try {
    s.materialize();
    for (std::size_t a = 0; a < g.rank; ++a) {
      std::cout << s.p_ring()->name(a) << " = " << format_polynomial((*s.polys())[a]) << "\n";
    }
  } catch (const Error& e) {
    std::cout << "invariants not materialized: " << e.what() << "\n";
  }
  return report.ok() ? kOk : kInconsistent;
}

int cmd_phat(const Config& cfg) {
  Clock clock(cfg);
  const auto& g = catalog(cfg.group);
  const auto s = build_basic_invariants(g);
  const auto result = compute_phat(s, phat_options(cfg));
  clock.stage("phat " + g.name);
  Header h = base_header(cfg, g);
  h.push_back({"variables", "p"});
  h.push_back({"points", std::to_string(result.points)});
  h.push_back({"coordinate-bound", std::to_string(result.coordinate_bound)});
  write_file(cfg, g.name + "_phat_p.txt", format_matrix(result.matrix, h));
  clock.flush();
  return kOk;
}

ScaleConvention pick_convention(const Config& cfg, const ReflectionGroupData& g) {
  const bool have_ref = has_reference(g.name, cfg.reference_dir);
  if (cfg.scales == "reference" || (cfg.scales == "auto" && have_ref)) {
    return convention_from(load_reference(g.name, cfg.reference_dir).transform);
  }
  return {};
}

int cmd_flatten(const Config& cfg) {
  Clock clock(cfg);
  const auto& g = catalog(cfg.group);
  const auto s = build_basic_invariants(g);
  const ScaleConvention convention = pick_convention(cfg, g);
  const FlatRun run = run_flat_pipeline(s, phat_options(cfg), convention);
  clock.stage("flatten " + g.name);
  Header h = base_header(cfg, g);
  h.push_back({"parameters", std::to_string(run.flatness.parameters)});
  h.push_back({"scales", convention.leading.empty() ? "unit" : "reference"});
  write_file(cfg, g.name + "_flat_transform.txt", format_transform(run.transform, h));
  write_file(cfg, g.name + "_flat_inverse.txt", format_transform(run.inverse, h));
  h.push_back({"variables", "q"});
  write_file(cfg, g.name + "_flat_phat.txt", format_matrix(run.flat_phat, h));
  clock.flush();
  if (!run.metric.flat()) {
    std::cerr << "error: the computed basis is not flat\n";
    return kInconsistent;
  }
  return kOk;
}

void print_compare(const std::string& what, const CompareReport& r) {
  std::cout << what << ": " << r.matched << "/" << r.compared << " entries match\n";
  for (const auto& m : r.mismatches) {
    std::cout << "  mismatch " << m.entry << "\n";
    for (const auto& d : m.differences) std::cout << "    " << d << "\n";
  }
}

int cmd_verify(const Config& cfg) {
  Clock clock(cfg);
  const auto report = verify_group(cfg.group, phat_options(cfg), cfg.reference_dir);
  clock.stage("verify " + report.group);
  std::cout << "group " << report.group << ", " << report.parameters << " free parameters\n";
  print_compare("reference transform applied to computed P-hat", report.reference_phat);
  print_compare("independent flat transform", report.flat_transform);
  print_compare("independent flat P-hat", report.flat_phat);
  std::cout << (report.ok() ? "verify: all entries match\n" : "verify: MISMATCH\n");
  clock.flush();
  return report.ok() ? kOk : kMismatch;
}

std::string minor_name(char tag, const PolynomialMinor& m) {
  auto idx = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
    return s;
  };
  return std::string(1, tag) + "[" + idx(m.rows) + ";" + idx(m.cols) + "]";
}

int cmd_strata(const Config& cfg) {
  Clock clock(cfg);
  std::optional<PhatMatrix> phat;
  Header h;
  std::string stem;
  if (!cfg.phat_file.empty()) {
    const Document doc = read_document(cfg.phat_file);
    std::vector<int> degrees;
    if (auto d = header_degrees(doc)) {
      degrees = *d;
    } else if (!cfg.group.empty()) {
      degrees = catalog(cfg.group).degrees;
    } else {
      throw ParseError(cfg.phat_file + ": no '# degrees:' header and no --group given");
    }
    std::string vars = doc.header_value("variables");
    if (vars.empty()) vars = "p";
    phat.emplace(parse_matrix(doc, GradedRing::graded(vars, degrees)));
    h = {{"source", fs::path(cfg.phat_file).filename().string()},
         {"degrees", join_ints(degrees)},
         {"version", ORBITSPACE_VERSION}};
    stem = fs::path(cfg.phat_file).stem().string();
  } else {
    const auto& g = catalog(cfg.group);
    const auto s = build_basic_invariants(g);
    h = base_header(cfg, g);
    if (cfg.basis == "p") {
      phat.emplace(compute_phat(s, phat_options(cfg)).matrix);
    } else {
      phat.emplace(run_flat_pipeline(s, phat_options(cfg), pick_convention(cfg, g)).flat_phat);
    }
    h.push_back({"basis", cfg.basis});
    stem = g.name + "_" + cfg.basis;
  }
  const StratumSystem system0 = stratum_system(*phat, cfg.k);
  const StratumSystem system = cfg.section ? section_p1(system0) : system0;
  clock.stage("strata");
  h.push_back({"rank", std::to_string(cfg.k)});
  if (cfg.section) h.push_back({"section", phat->ring()->name(0) + " = 1"});
  h.push_back({"legend", "E = 0 (order k+1 minors), N >= 0 (principal minors), some W != 0 (order k minors)"});
  std::string text = format_header(h);
  for (const auto& m : system.equations) text += minor_name('E', m) + " = " + format_polynomial(m.value) + "\n";
  for (const auto& m : system.nonneg) text += minor_name('N', m) + " = " + format_polynomial(m.value) + "\n";
  for (const auto& m : system.witnesses) text += minor_name('W', m) + " = " + format_polynomial(m.value) + "\n";
  write_file(cfg, stem + "_strata_k" + std::to_string(cfg.k) + (cfg.section ? "_section" : "") + ".txt", text);
  clock.flush();
  return kOk;
}

int cmd_transform(const Config& cfg) {
  const Document pdoc = read_document(cfg.phat_file);
  const Document mdoc = read_document(cfg.map_file);
  std::vector<int> degrees;
  if (auto d = header_degrees(pdoc)) {
    degrees = *d;
  } else if (auto d2 = header_degrees(mdoc)) {
    degrees = *d2;
  } else if (!cfg.group.empty()) {
    degrees = catalog(cfg.group).degrees;
  } else {
    throw ParseError("no '# degrees:' header in the inputs and no --group given");
  }
  std::string from = pdoc.header_value("variables");
  if (from.empty()) from = "p";
  std::string to = mdoc.header_value("to");
  if (to.empty()) to = from == "q" ? "r" : "q";
  const RingPtr from_ring = GradedRing::graded(from, degrees);
  const RingPtr to_ring = GradedRing::graded(to, degrees);
  const PhatMatrix phat = parse_matrix(pdoc, from_ring);
  const BasisTransform map = parse_transform(mdoc, from_ring, to_ring);
  check_transform(map);
  const PhatMatrix out = transform_phat(phat, map);
  const Header h = {{"source", fs::path(cfg.phat_file).filename().string()},
                    {"map", fs::path(cfg.map_file).filename().string()},
                    {"degrees", join_ints(degrees)},
                    {"variables", to},
                    {"version", ORBITSPACE_VERSION}};
  write_file(cfg, fs::path(cfg.phat_file).stem().string() + "_transformed.txt", format_matrix(out, h));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact P-hat matrices, flat bases and strata of reflection groups"};
  app.set_version_flag("--version", std::string("orbitspace ") + ORBITSPACE_VERSION);
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub, bool group_required) {
    auto* opt = sub->add_option("--group", cfg.group, "group name (A3, B2, B3, E7, E8)");
    if (group_required) opt->required();
    sub->add_option("--seed", cfg.seed, "seed of the interpolation points")->capture_default_str();
    sub->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
    sub->add_option("--solver", cfg.solver, "linear solver lane")
        ->check(CLI::IsMember({"exact", "modular"}))->capture_default_str();
    sub->add_option("--reference-dir", cfg.reference_dir, "directory of reference data")->capture_default_str();
  };

  auto* basis = app.add_subcommand("basis", "print group data and small-group invariants");
  add_common(basis, true);
  auto* phat = app.add_subcommand("phat", "compute P-hat(p) and write it");
  add_common(phat, true);
  auto* flatten = app.add_subcommand("flatten", "solve for the flat basis and write it");
  add_common(flatten, true);
  flatten->add_option("--scales", cfg.scales, "scale convention")
      ->check(CLI::IsMember({"auto", "unit", "reference"}))->capture_default_str();
  auto* verify = app.add_subcommand("verify", "compare the pipeline with the reference data");
  add_common(verify, true);
  auto* strata = app.add_subcommand("strata", "write the rank-k stratum system");
  add_common(strata, false);
  strata->add_option("--k", cfg.k, "rank of the stratum")->required();
  strata->add_option("--basis", cfg.basis, "flat or p")->check(CLI::IsMember({"flat", "p"}))->capture_default_str();
  strata->add_option("--phat", cfg.phat_file, "use this P-hat file instead of computing one")->check(CLI::ExistingFile);
  strata->add_option("--scales", cfg.scales, "scale convention for the flat basis")
      ->check(CLI::IsMember({"auto", "unit", "reference"}))->capture_default_str();
  strata->add_flag("--section", cfg.section, "restrict to the hyperplane v1 = 1");
  auto* transform = app.add_subcommand("transform", "apply a basis change to a P-hat file");
  add_common(transform, false);
  transform->add_option("--phat", cfg.phat_file, "P-hat matrix file")->required()->check(CLI::ExistingFile);
  transform->add_option("--map", cfg.map_file, "basis transform file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (strata->parsed() && cfg.phat_file.empty() && cfg.group.empty()) {
    std::cerr << "strata: give --group or --phat\n";
    return kUsage;
  }

  try {
    if (basis->parsed()) return cmd_basis(cfg);
    if (phat->parsed()) return cmd_phat(cfg);
    if (flatten->parsed()) return cmd_flatten(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (strata->parsed()) return cmd_strata(cfg);
    if (transform->parsed()) return cmd_transform(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const InconsistentSystemError& e) {
    std::cerr << "inconsistent: " << e.what() << "\n";
    return kInconsistent;
  } catch (const UnderdeterminedSystemError& e) {
    std::cerr << "underdetermined: " << e.what() << "\n";
    return kInconsistent;
  } catch (const DataIntegrityError& e) {
    std::cerr << "data integrity: " << e.what() << "\n";
    return kInconsistent;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
