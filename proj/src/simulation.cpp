#include "hdsign/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "hdsign/errors.hpp"
#include "hdsign/scaleinv.hpp"

namespace hdsign {

namespace {

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

}  // namespace

std::string to_string(TestId t) {
  switch (t) {
    case TestId::CQ: return "CQ";
    case TestId::SS: return "SS";
    case TestId::OS: return "OS";
    case TestId::ScalarInvariantOS: return "TN";
  }
  return "?";
}

TestId parse_test_id(std::string_view s) {
  const std::string v = lower(s);
  if (v == "cq") return TestId::CQ;
  if (v == "ss") return TestId::SS;
  if (v == "os") return TestId::OS;
  if (v == "tn" || v == "scalar-invariant-os") return TestId::ScalarInvariantOS;
  throw InvalidInput("unknown test '" + std::string(s) + "' (expected cq, ss, os, tn)");
}

std::string to_string(Pattern p) {
  switch (p) {
    case Pattern::Null: return "Size";
    case Pattern::Dense: return "Dense";
    case Pattern::Sparse: return "Sparse";
  }
  return "?";
}

Pattern parse_pattern(std::string_view s) {
  const std::string v = lower(s);
  if (v == "null" || v == "size") return Pattern::Null;
  if (v == "dense") return Pattern::Dense;
  if (v == "sparse") return Pattern::Sparse;
  throw InvalidInput("unknown pattern '" + std::string(s) + "' (expected null, dense, sparse)");
}

std::string to_string(Scenario s) {
  static const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII"};
  return names[static_cast<int>(s) - 1];
}

Scenario parse_scenario(std::string_view s) {
  std::string v;
  for (char c : s) {
    if (c != '(' && c != ')') v.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  for (int i = 1; i <= 7; ++i) {
    const auto id = static_cast<Scenario>(i);
    if (v == to_string(id) || v == std::to_string(i)) return id;
  }
  throw InvalidInput("unknown scenario '" + std::string(s) + "' (expected I..VII)");
}

void ScenarioSpec::validate() const {
  distribution.validate();
  const bool needs_four = std::find(tests.begin(), tests.end(), TestId::ScalarInvariantOS) != tests.end();
  if (n < (needs_four ? 4 : 3)) throw InvalidInput("scenario sample size too small");
  if (p != distribution.p()) throw InvalidInput("scenario dimension does not match the distribution");
  if (replications < 1) throw InvalidInput("replications must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
  if (tests.empty()) throw InvalidInput("no tests requested");
  if (pattern == Pattern::Null && target != 0.0) throw InvalidInput("the null pattern requires target = 0");
  if (!(target >= 0.0)) throw InvalidInput("signal target must be nonnegative");
}

std::string to_string(SignalScale s) {
  return s == SignalScale::TraceSigma ? "trace" : "trace-squared";
}

SignalScale parse_signal_scale(std::string_view s) {
  if (s == "trace") return SignalScale::TraceSigma;
  if (s == "trace-squared") return SignalScale::TraceSigmaSquared;
  throw InvalidInput("unknown signal scale '" + std::string(s) + "' (expected trace, trace-squared)");
}

DistributionSpec ScenarioSpec::resolved_distribution() const {
  if (pattern == Pattern::Null) return distribution.with_theta(Vector::Zero(p));
  const ThetaPattern tp = pattern == Pattern::Dense ? ThetaPattern::Dense : ThetaPattern::Sparse;
  const double normalizer = signal_scale == SignalScale::TraceSigma ? distribution.scatter.trace()
                                                                    : distribution.scatter.trace_squared();
  return distribution.with_theta(build_theta(p, tp, target, normalizer));
}

std::uint64_t ScenarioSpec::stream_seed() const {
  return salt == 0 ? seed : splitmix64(seed ^ splitmix64(salt));
}

ScenarioSpec reference_scenario(Scenario id, Index n, Index p, Pattern pattern, Index replications,
                            std::uint64_t seed) {
  const ScatterSpec scatter = ScatterSpec::ar1(p, 0.5);
  ScenarioSpec s;
  double target = 0.1;
  switch (id) {
    case Scenario::I: s.distribution = DistributionSpec::normal(scatter); break;
    case Scenario::II: s.distribution = DistributionSpec::student_t(3, scatter); break;
    case Scenario::III: s.distribution = DistributionSpec::student_t(4, scatter); break;
    case Scenario::IV: s.distribution = DistributionSpec::mixture_normal(0.2, 10, scatter); break;
    case Scenario::V:
      s.distribution = DistributionSpec::mixture_normal(0.8, 10, scatter);
      target = 1.0;
      break;
    case Scenario::VI: s.distribution = DistributionSpec::ic_student_t(3, scatter); break;
    case Scenario::VII:
      s.distribution = DistributionSpec::ic_normal_mix(0.2, 10, scatter);
      target = 1.0;
      break;
  }
  s.label = "(" + to_string(id) + ")";
  s.n = n;
  s.p = p;
  s.pattern = pattern;
  s.target = pattern == Pattern::Null ? 0.0 : target;
  s.replications = replications;
  s.seed = seed;
  s.salt = (static_cast<std::uint64_t>(id) << 48) ^ (static_cast<std::uint64_t>(pattern) << 40) ^
           (static_cast<std::uint64_t>(n) << 20) ^ static_cast<std::uint64_t>(p);
  return s;
}

const TestTally& SimulationReport::tally(TestId t) const {
  for (const auto& r : results) {
    if (r.test == t) return r;
  }
  throw InvalidInput("test " + to_string(t) + " was not run in this scenario");
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("HDSIGN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void for_each_replication(const ScenarioSpec& spec, unsigned threads,
                          const std::function<void(Index, const SampleMatrix&)>& fn) {
  spec.validate();
  const Sampler sampler(spec.resolved_distribution());
  const std::uint64_t seed = spec.stream_seed();
  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::min<Index>(threads, spec.replications));

  std::atomic<Index> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const Index rep = next.fetch_add(1);
      if (rep >= spec.replications) return;
      try {
        RngStream rng(seed, static_cast<std::uint64_t>(rep));
        const SampleMatrix x = sampler.draw(spec.n, rng);
        fn(rep, x);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(spec.replications);
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

namespace {

enum Cell : signed char { kAccept = 0, kReject = 1, kDegenerate = 2 };

Cell evaluate(TestId t, const SampleMatrix& x, double alpha) {
  try {
    TestOutcome o;
    switch (t) {
      case TestId::CQ: o = run_test(x, WeightFunction::cq(), alpha); break;
      case TestId::SS: o = run_test(x, WeightFunction::ss(), alpha); break;
      case TestId::OS: o = run_test(x, WeightFunction::os(), alpha); break;
      case TestId::ScalarInvariantOS: o = run_scalar_invariant_test(x, WeightFunction::os(), alpha); break;
    }
    return o.reject ? kReject : kAccept;
  } catch (const DegenerateVariance&) {
    return kDegenerate;
  }
}

}  // namespace

SimulationReport run_scenario(const ScenarioSpec& spec, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t k = spec.tests.size();
  std::vector<Cell> cells(static_cast<std::size_t>(spec.replications) * k, kAccept);
  for_each_replication(spec, threads, [&](Index rep, const SampleMatrix& x) {
    for (std::size_t t = 0; t < k; ++t) {
      cells[static_cast<std::size_t>(rep) * k + t] = evaluate(spec.tests[t], x, spec.alpha);
    }
  });

  SimulationReport report;
  report.spec = spec;
  for (std::size_t t = 0; t < k; ++t) {
    TestTally tally;
    tally.test = spec.tests[t];
    for (Index rep = 0; rep < spec.replications; ++rep) {
      const Cell c = cells[static_cast<std::size_t>(rep) * k + t];
      if (c == kDegenerate) {
        ++tally.degenerate;
      } else {
        ++tally.valid;
        if (c == kReject) ++tally.rejections;
      }
    }
    if (static_cast<double>(tally.degenerate) > 0.001 * static_cast<double>(spec.replications)) {
      throw Error(spec.label + " " + to_string(tally.test) + ": " + std::to_string(tally.degenerate) +
                  " of " + std::to_string(spec.replications) +
                  " replications had a degenerate variance estimate (limit 0.1%)");
    }
    const double r = tally.valid > 0 ? static_cast<double>(tally.rejections) / static_cast<double>(tally.valid) : 0.0;
    tally.rejection_rate = r;
    tally.mc_standard_error = std::sqrt(r * (1.0 - r) / static_cast<double>(spec.replications));
    report.results.push_back(tally);
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

std::vector<ScenarioSpec> table2_specs(Preset preset, std::uint64_t seed) {
  const std::vector<Index> dims = preset == Preset::Full ? std::vector<Index>{200, 400, 800}
                                                         : std::vector<Index>{200};
  const Index reps = preset == Preset::Full ? 2500 : 500;
  std::vector<ScenarioSpec> specs;
  for (Index p : dims) {
    for (int s = 1; s <= 7; ++s) {
      for (Pattern pat : {Pattern::Null, Pattern::Dense, Pattern::Sparse}) {
        specs.push_back(reference_scenario(static_cast<Scenario>(s), 40, p, pat, reps, seed));
      }
    }
  }
  return specs;
}

std::vector<SimulationReport> table2(Preset preset, std::uint64_t seed, unsigned threads,
                                     const std::function<void(const SimulationReport&)>& progress) {
  return run_scenarios(table2_specs(preset, seed), threads, progress);
}

std::vector<SimulationReport> run_scenarios(const std::vector<ScenarioSpec>& specs, unsigned threads,
                                            const std::function<void(const SimulationReport&)>& progress) {
  std::vector<SimulationReport> out;
  for (const ScenarioSpec& spec : specs) {
    out.push_back(run_scenario(spec, threads));
    if (progress) progress(out.back());
  }
  return out;
}

}  // namespace hdsign
