// hdsign: weighted spatial-sign location tests for high-dimensional data.
//
//   hdsign test --input data.csv [--test os|ss|cq|scalar-invariant-os|custom]
//   hdsign are
//   hdsign simulate --scenario V --pattern dense --p 200
//   hdsign table2 [--quick]
//   hdsign validate --p 50 --samples 100000

#include <CLI11.hpp>

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "hdsign/csv.hpp"
#include "hdsign/distributions.hpp"
#include "hdsign/errors.hpp"
#include "hdsign/power.hpp"
#include "hdsign/report.hpp"
#include "hdsign/scaleinv.hpp"
#include "hdsign/signcore.hpp"
#include "hdsign/simulation.hpp"

namespace {

using namespace hdsign;

struct Options {
  std::string input;
  std::string test_kind = "os";
  std::string weight;
  std::string theta0;
  double alpha = 0.05;
  std::uint64_t seed = 42;
  std::string format = "table";
  bool header = false;
  unsigned threads = 0;

  // simulate
  std::string scenario = "I";
  std::string pattern = "null";
  Index n = 40;
  Index p = 200;
  Index reps = 2500;
  double target = -1.0;
  std::vector<std::string> tests{"cq", "ss", "os"};
  std::string signal_scale = "trace";

  // table2
  bool quick = false;

  // validate
  Index samples = 100000;
  std::string matrix = "ar1";
  double rho = 0.5;
  std::string family = "sphere";
};

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kRejected = 2;

int cmd_test(const Options& o) {
  SampleMatrix x = read_csv_file(o.input, o.header);
  if (!o.theta0.empty()) {
    const SampleMatrix t0 = read_csv_file(o.theta0, false);
    if (t0.n() != 1) throw InvalidInput("theta0 file must contain exactly one row");
    x = x.centered_at(t0.data().row(0).transpose());
  }
  require_rows(x, 3, "test");
  TestOutcome out;
  std::string name;
  if (o.test_kind == "scalar-invariant-os") {
    out = run_scalar_invariant_test(x, WeightFunction::os(), o.alpha);
    name = "scalar-invariant-os";
  } else {
    WeightFunction k = WeightFunction::os();
    if (o.test_kind == "ss") {
      k = WeightFunction::ss();
    } else if (o.test_kind == "cq") {
      k = WeightFunction::cq();
    } else if (o.test_kind == "custom") {
      if (o.weight.empty()) throw InvalidInput("--test custom requires --weight");
      k = WeightFunction::parse(o.weight);
    } else if (o.test_kind != "os") {
      throw InvalidInput("unknown test kind '" + o.test_kind + "'");
    }
    out = run_test(x, k, o.alpha);
    name = o.test_kind == "custom" ? "custom:" + k.name() : o.test_kind;
  }
  write_outcome(std::cout, out, name, parse_output_format(o.format));
  return out.reject ? kRejected : kOk;
}

int cmd_are(const Options& o) {
  write_are_table(std::cout, are_table(), parse_output_format(o.format));
  return kOk;
}

std::vector<TestId> parse_tests(const std::vector<std::string>& names) {
  std::vector<TestId> ids;
  for (const auto& s : names) ids.push_back(parse_test_id(s));
  return ids;
}

int cmd_simulate(const Options& o) {
  ScenarioSpec spec = reference_scenario(parse_scenario(o.scenario), o.n, o.p, parse_pattern(o.pattern),
                                     o.reps, o.seed);
  if (o.target >= 0.0) spec.target = o.target;
  spec.signal_scale = parse_signal_scale(o.signal_scale);
  spec.alpha = o.alpha;
  spec.tests = parse_tests(o.tests);
  const SimulationReport rep = run_scenario(spec, o.threads);
  write_reports(std::cout, {rep}, parse_output_format(o.format));
  return kOk;
}

int cmd_table2(const Options& o) {
  const Preset preset = o.quick ? Preset::Quick : Preset::Full;
  const OutputFormat fmt = parse_output_format(o.format);
  std::vector<ScenarioSpec> specs = table2_specs(preset, o.seed);
  for (auto& s : specs) s.signal_scale = parse_signal_scale(o.signal_scale);
  const auto reports = run_scenarios(specs, o.threads, [](const SimulationReport& r) {
    std::cerr << r.spec.label << " p=" << r.spec.p << " " << to_string(r.spec.pattern) << " done in "
              << std::fixed << std::setprecision(1) << r.elapsed.count() << "s\n";
  });
  if (fmt == OutputFormat::Table) {
    write_table2(std::cout, reports);
  } else {
    write_reports(std::cout, reports, fmt);
  }
  return kOk;
}

void print_check(const char* name, const MomentCheck& c, bool informational) {
  std::cout << std::left << std::setw(22) << name << std::right << std::setprecision(6)
            << std::setw(14) << c.sample_mean << std::setw(14) << c.expected << std::setw(12)
            << c.standard_error << std::setw(10) << std::setprecision(3) << c.deviation_in_se() << "  "
            << (c.within(4.0) ? "ok" : (informational ? "MISMATCH" : "FAIL")) << '\n';
}

int cmd_validate(const Options& o) {
  Matrix m;
  if (o.matrix == "ar1") {
    m = ScatterSpec::ar1(o.p, o.rho).matrix();
  } else if (o.matrix == "identity") {
    m = Matrix::Identity(o.p, o.p);
  } else if (o.matrix == "e1") {
    m = Matrix::Zero(o.p, o.p);
    m(0, 0) = 1.0;
  } else {
    throw InvalidInput("unknown matrix '" + o.matrix + "' (expected ar1, identity, e1)");
  }
  RngStream rng(o.seed, 0);
  SphereMomentReport rep;
  if (o.family == "sphere") {
    rep = sphere_moment_check(m, o.samples, rng);
  } else {
    const ScatterSpec scatter = ScatterSpec::ar1(o.p, 0.5);
    DistributionSpec d;
    if (o.family == "normal") {
      d = DistributionSpec::normal(scatter);
    } else if (o.family == "t3") {
      d = DistributionSpec::student_t(3, scatter);
    } else if (o.family == "t4") {
      d = DistributionSpec::student_t(4, scatter);
    } else if (o.family == "mn0.2") {
      d = DistributionSpec::mixture_normal(0.2, 10, scatter);
    } else if (o.family == "mn0.8") {
      d = DistributionSpec::mixture_normal(0.8, 10, scatter);
    } else {
      throw InvalidInput("unknown family '" + o.family + "'");
    }
    rep = ellipticity_check(d, m, o.samples, rng);
  }
  std::cout << "p = " << rep.p << ", samples = " << rep.samples << ", M = " << o.matrix
            << ", source = " << o.family << '\n';
  std::cout << std::left << std::setw(22) << "moment" << std::right << std::setw(14) << "mc mean"
            << std::setw(14) << "formula" << std::setw(12) << "se" << std::setw(10) << "|dev|/se"
            << '\n';
  print_check("E(u'Mu)^2", rep.second, false);
  print_check("E(u'Mu)^4 trace form", rep.fourth, true);
  print_check("E(u'Mu)^4 exact", rep.fourth_exact, false);
  return rep.second.within(4.0) && rep.fourth_exact.within(4.0) ? kOk : kError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted spatial-sign tests for high-dimensional location problems"};
  app.require_subcommand(1);
  Options o;
  o.threads = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--format", o.format, "Output format: csv, tsv, table")
        ->check(CLI::IsMember({"csv", "tsv", "table"}));
  };

  auto* test = app.add_subcommand("test", "Run a weighted sign test on a CSV sample");
  test->add_option("--input,-i", o.input, "CSV file, n rows x p columns")->required();
  test->add_option("--test,-t", o.test_kind, "os, ss, cq, scalar-invariant-os, custom")
      ->check(CLI::IsMember({"os", "ss", "cq", "scalar-invariant-os", "custom"}));
  test->add_option("--weight,-w", o.weight, "Custom weight, e.g. 'r^-1' or '2*r^(1/2)'");
  test->add_option("--alpha,-a", o.alpha, "Significance level");
  test->add_option("--theta0", o.theta0, "One-row CSV with the hypothesized location");
  test->add_flag("--header", o.header, "Skip the first CSV line");
  add_common(test);

  auto* are = app.add_subcommand("are", "Print the closed-form ARE table");
  add_common(are);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo size/power for one scenario");
  sim->add_option("--scenario,-s", o.scenario, "I..VII");
  sim->add_option("--pattern", o.pattern, "null, dense, sparse");
  sim->add_option("--n", o.n, "Sample size");
  sim->add_option("--p", o.p, "Dimension");
  sim->add_option("--reps", o.reps, "Replications");
  sim->add_option("--target", o.target, "Override theta'theta/sqrt(tr Sigma)");
  sim->add_option("--alpha,-a", o.alpha, "Significance level");
  sim->add_option("--tests", o.tests, "Tests to run: cq ss os tn")->delimiter(',');
  sim->add_option("--threads", o.threads, "Worker threads (0 = HDSIGN_THREADS or auto)");
  sim->add_option("--signal-scale", o.signal_scale,
                  "Target normalizer: trace (sqrt tr Sigma) or trace-squared (sqrt tr Sigma^2)")
      ->check(CLI::IsMember({"trace", "trace-squared"}));
  add_common(sim);

  auto* t2 = app.add_subcommand("table2", "Size/power grid for scenarios I-VII");
  t2->add_flag("--quick", o.quick, "500 replications at p = 200 only");
  t2->add_option("--threads", o.threads, "Worker threads (0 = HDSIGN_THREADS or auto)");
  t2->add_option("--signal-scale", o.signal_scale,
                 "Target normalizer: trace (sqrt tr Sigma) or trace-squared (sqrt tr Sigma^2)")
      ->check(CLI::IsMember({"trace", "trace-squared"}));
  add_common(t2);

  auto* val = app.add_subcommand("validate", "Check samplers against the sphere moment identities");
  val->add_option("--p", o.p, "Dimension");
  val->add_option("--samples", o.samples, "Monte Carlo draws");
  val->add_option("--matrix", o.matrix, "ar1, identity, e1");
  val->add_option("--rho", o.rho, "AR(1) correlation for --matrix ar1");
  val->add_option("--family", o.family, "sphere, normal, t3, t4, mn0.2, mn0.8");
  add_common(val);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*test) return cmd_test(o);
    if (*are) return cmd_are(o);
    if (*sim) return cmd_simulate(o);
    if (*t2) return cmd_table2(o);
    if (*val) return cmd_validate(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
