// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dnc/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

#include "dnc/capacity.hpp"
#include "dnc/enumerate.hpp"
#include "dnc/format.hpp"
#include "dnc/maxent.hpp"
#include "dnc/report.hpp"
#include "dnc/sampler.hpp"
#include "dnc/spec_io.hpp"
#include "dnc/verify.hpp"

namespace dnc::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes to --out when given, otherwise to stdout. Summary lines are
// prefixed with "# " when they share stdout with a table.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : out_(&out) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write '" + path + "'");
      table_ = &file_;
    } else {
      table_ = &out;
    }
  }
  std::ostream& table() { return *table_; }
  std::ostream& summary() {
    if (table_ == out_) *out_ << "# ";
    return *out_;
  }

 private:
  std::ofstream file_;
  std::ostream* table_;
  std::ostream* out_;
};

Rational parse_rational_flag(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

struct Common {
  std::string spec_path;
};

struct EnumerateArgs : Common {
  std::string w_max = "20";
  std::string out;
  double tail = 0.25;
};

struct CapacityArgs : Common {
  std::string method = "auto";
  std::string w_max = "40";
  double delta = 0.1;
  double threshold = 1e6;
  bool bits = false;
};

struct MaxentArgs : Common {
  int l_max = 16;
  std::string out;
  double tail = 0.25;
  bool bits = false;
};

struct SampleArgs : Common {
  std::size_t count = 1000;
  std::size_t steps = 100;
  std::optional<std::uint64_t> seed;
  std::string out;
};

struct VerifyArgs : Common {
  std::string w_max = "40";
  int l_max = 40;
  double tol = 1e-6;
  double delta = 0.1;
  double threshold = 1e6;
};

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out) {
  const SystemSpec spec = load_system_spec(a.spec_path);
  const WeightSpectrum spectrum = weight_spectrum(spec.system, parse_rational_flag(a.w_max, "--wmax"));
  Sink sink(a.out, out);
  write_spectrum_tsv(sink.table(), spectrum);
  if (spectrum.entries.size() >= 2) {
    const auto cap = empirical_capacity(spectrum, a.tail);
    sink.summary() << "empirical_capacity " << format_double(cap.estimate.value) << '\n';
  }
  const DensityReport density = density_check(spectrum);
  sink.summary() << "density fitted_K " << format_double(density.fitted_K) << " fitted_L "
                 << format_double(density.fitted_L) << " passes " << (density.passes ? "true" : "false") << '\n';
  return ok;
}

int cmd_capacity(const CapacityArgs& a, std::ostream& out) {
  const SystemSpec spec = load_system_spec(a.spec_path);
  const BranchSystem& system = spec.system;
  std::string method = a.method;
  if (method == "auto") {
    method = system.alphabet() ? "root" : system.fsm() ? "spectral" : "abscissa";
  }

  CapacityEstimate estimate;
  if (method == "root") {
    if (!system.alphabet()) throw UsageError("root method requires memoryless system");
    estimate = characteristic_root(*system.alphabet());
  } else if (method == "spectral") {
    if (system.fsm()) {
      estimate = fsm_capacity(*system.fsm());
    } else if (system.alphabet()) {
      estimate = fsm_capacity(memoryless_fsm(*system.alphabet()));
    } else {
      throw UsageError("spectral method requires an fsm or memoryless system");
    }
  } else if (method == "abscissa") {
    AbscissaOptions options;
    options.delta = a.delta;
    options.divergence_threshold = a.threshold;
    estimate = abscissa_estimate(weight_spectrum(system, parse_rational_flag(a.w_max, "--wmax")), options).estimate;
  } else {
    throw UsageError("unknown method '" + a.method + "'");
  }

  std::string json = capacity_json(estimate);
  if (a.bits) {
    json.pop_back();
    json += ", \"value_bits\": " + format_double(estimate.value / std::log(2.0)) + "}";
  }
  out << json << '\n';
  return ok;
}

int cmd_maxent(const MaxentArgs& a, std::ostream& out) {
  const SystemSpec spec = load_system_spec(a.spec_path);
  const ProbCapacity result = cprob_estimate(spec.system, a.l_max, a.tail);
  Sink sink(a.out, out);
  write_level_tsv(sink.table(), result.levels, a.bits);
  sink.summary() << "c_prob " << capacity_json(result.estimate) << '\n';
  if (result.truncated) sink.summary() << "truncated at level " << result.levels.size() << '\n';
  return ok;
}

int cmd_sample(const SampleArgs& a, unsigned threads, std::ostream& out) {
  std::optional<std::uint64_t> seed = a.seed;
  if (!seed) {
    if (const char* env = std::getenv("DNCCAP_SEED")) {
      try {
        seed = std::stoull(env);
      } catch (const std::exception&) {
        throw UsageError("DNCCAP_SEED is not an unsigned integer");
      }
    }
  }
  if (!seed) throw UsageError("--seed is required (or set DNCCAP_SEED)");

  const SystemSpec spec = load_system_spec(a.spec_path);
  const BranchSystem& system = spec.system;
  std::vector<SampledPath> samples;
  std::optional<WeightedFsm> fsm;
  if (system.fsm()) fsm = *system.fsm();
  if (system.alphabet()) fsm = memoryless_fsm(*system.alphabet());
  double reference = 0.0;
  if (fsm) {
    const MaxentChain chain = maxent_chain(*fsm, fsm_capacity(*fsm));
    reference = analytic_entropy_rate(chain);
    samples = sample_paths(chain, a.count, a.steps, *seed, threads);
  } else {
    const int level = static_cast<int>(a.steps);
    const LevelSolution sol = solve_level_rate(system, level);
    reference = sol.rate;
    samples = sample_level_paths(system, level, sol.rate, a.count, *seed);
  }
  Sink sink(a.out, out);
  write_samples_tsv(sink.table(), samples);
  sink.summary() << "empirical_entropy_rate " << format_double(empirical_entropy_rate(samples)) << '\n';
  sink.summary() << "reference_rate " << format_double(reference) << '\n';
  return ok;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const SystemSpec spec = load_system_spec(a.spec_path);
  VerifyOptions options;
  options.w_max = parse_rational_flag(a.w_max, "--wmax");
  options.l_max = a.l_max;
  options.tol = a.tol;
  options.abscissa.delta = a.delta;
  options.abscissa.divergence_threshold = a.threshold;
  const VerifyReport report = verify_equality(spec.system, options);
  out << verdict_json(report, spec.echo.dump());
  switch (report.verdict) {
    case Verdict::pass:
      return ok;
    case Verdict::fail:
      return verify_fail;
    case Verdict::inconclusive:
      return verify_inconclusive;
  }
  return verify_inconclusive;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity and maximum entropy rate of discrete noiseless channels", "dnccap"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--threads", threads, "Worker threads for sampling")->check(CLI::PositiveNumber);

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "Exact weight spectrum as TSV");
  enumerate->add_option("spec", en.spec_path, "System spec JSON")->required();
  enumerate->add_option("--wmax", en.w_max, "Weight bound (p/q or decimal)");
  enumerate->add_option("--out", en.out, "TSV output path (default stdout)");
  enumerate->add_option("--tail", en.tail, "Trailing fraction for the limsup proxy");

  CapacityArgs ca;
  auto* capacity = app.add_subcommand("capacity", "Combinatorial capacity as JSON");
  capacity->add_option("spec", ca.spec_path, "System spec JSON")->required();
  capacity->add_option("--method", ca.method, "auto|root|spectral|abscissa")
      ->check(CLI::IsMember({"auto", "root", "spectral", "abscissa"}));
  capacity->add_option("--wmax", ca.w_max, "Weight bound for the abscissa method");
  capacity->add_option("--delta", ca.delta, "Abscissa probe offset");
  capacity->add_option("--threshold", ca.threshold, "Abscissa divergence threshold");
  capacity->add_flag("--bits", ca.bits, "Also report the value in bits");

  MaxentArgs me;
  auto* maxent = app.add_subcommand("maxent", "Level-wise maximum entropy rates as TSV");
  maxent->add_option("spec", me.spec_path, "System spec JSON")->required();
  maxent->add_option("--lmax", me.l_max, "Deepest level")->check(CLI::Range(2, 1 << 20));
  maxent->add_option("--out", me.out, "TSV output path (default stdout)");
  maxent->add_option("--tail", me.tail, "Trailing fraction for the limsup proxy");
  maxent->add_flag("--bits", me.bits, "Rates and entropies in bits");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Sample from the maxentropic source");
  sample->add_option("spec", sa.spec_path, "System spec JSON")->required();
  sample->add_option("--count", sa.count, "Number of paths")->check(CLI::PositiveNumber);
  sample->add_option("--steps", sa.steps, "Branches per path")->check(CLI::PositiveNumber);
  sample->add_option("--seed", sa.seed, "PRNG seed");
  sample->add_option("--out", sa.out, "TSV output path (default stdout)");

  VerifyArgs ve;
  auto* verify = app.add_subcommand("verify", "Compare both capacities; exit 0 PASS, 2 FAIL, 3 INCONCLUSIVE");
  verify->add_option("spec", ve.spec_path, "System spec JSON")->required();
  verify->add_option("--wmax", ve.w_max, "Weight bound for the counting side");
  verify->add_option("--lmax", ve.l_max, "Deepest level for the entropy side")->check(CLI::Range(2, 1 << 20));
  verify->add_option("--tol", ve.tol, "Agreement tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--delta", ve.delta, "Abscissa probe offset");
  verify->add_option("--threshold", ve.threshold, "Abscissa divergence threshold");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_or_validation;
  }

  try {
    if (*enumerate) return cmd_enumerate(en, out);
    if (*capacity) return cmd_capacity(ca, out);
    if (*maxent) return cmd_maxent(me, out);
    if (*sample) return cmd_sample(sa, threads, out);
    if (*verify) return cmd_verify(ve, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage_or_validation;
  }
  return usage_or_validation;
}

}  // namespace dnc::cli
