// Copyright 2026 The masfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MASFUZZ_EXECUTOR_HPP_
#define MASFUZZ_EXECUTOR_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "masfuzz/coverage.hpp"
#include "masfuzz/driver.hpp"
#include "masfuzz/model.hpp"

namespace masfuzz {

/// One engine-reported crash, unprocessed.
struct RawCrash {
  std::string kind;  // "addr-violation", "assert", "timeout", "oom", "other"
  std::string report_text;
  std::string input;  // reproducing input bytes
};

/// Outcome of one execution slot (t_actual, newCov, crashes).
struct ExecutionResult {
  std::string driver_id;
  std::int64_t t_actual_ms = 0;
  CoverageReport coverage;
  bool has_coverage = false;  // true iff executions > 0
  std::int64_t executions = 0;
  std::vector<RawCrash> crashes;
  bool executor_error = false;  // engine failed to start; driver retires
  std::string error_detail;
};

/// Runs a compiled driver for a bounded slot. budget_ms must be > 0
/// (PreconditionError otherwise).
class DriverExecutor {
 public:
  virtual ~DriverExecutor() = default;
  virtual ExecutionResult execute(const FuzzDriver &driver, std::int64_t budget_ms) = 0;
};

/// Branches that become revealed once a driver's cumulative execution
/// time reaches at_ms. The union over points is monotone by
/// construction.
struct SimCurvePoint {
  std::int64_t at_ms = 0;
  std::vector<BranchHit> branches;
};

struct SimCrash {
  std::int64_t at_ms = 0;
  std::string kind = "addr-violation";
  std::string input;
  std::string report;
};

struct SimDriverSpec {
  std::vector<SimCurvePoint> curve;
  std::vector<SimCrash> crashes;
  std::int64_t execs_per_second = 100;
};

/// Deterministic executor stand-in. The entry under "*" (when present)
/// serves any driver id without its own entry.
struct SimSpec {
  std::uint64_t rng_seed = 1;
  std::map<std::string, SimDriverSpec> drivers;
};

/// Parses {"schema":"masfuzz.simspec/1","drivers":{...}}; crash inputs
/// are hex-encoded. Throws FormatError on malformed input.
SimSpec parse_simspec(const std::string &json_text);

/// Replays a SimSpec: each slot advances the driver's cumulative clock
/// by the budget and reports every branch and crash whose trigger time
/// falls inside the slot. Unknown driver ids (and no "*" entry) are a
/// PreconditionError.
class SimulatedExecutor : public DriverExecutor {
 public:
  explicit SimulatedExecutor(SimSpec spec) : spec_(std::move(spec)) {}
  ExecutionResult execute(const FuzzDriver &driver, std::int64_t budget_ms) override;

  std::int64_t cumulative_ms(const std::string &driver_id) const;

 private:
  SimSpec spec_;
  std::map<std::string, std::int64_t> cumulative_;
};

/// External tool paths and flags shared by library build, driver
/// compilation, and symbolization.
struct ToolchainConfig {
  std::string clang = "clang";
  std::string addr2line = "addr2line";
  std::vector<std::string> extra_cflags;
};

/// Compiles every model source with coverage and sanitizer
/// instrumentation into out_dir; returns the object files. Throws
/// IoError with the compiler diagnostics on failure.
std::vector<std::string> build_instrumented_library(const LibraryModel &model,
                                                    const std::string &out_dir,
                                                    const ToolchainConfig &toolchain);

/// Second object set for coverage replay, instrumented with pc guards
/// instead of fuzzer counters. Also materializes the replay runner
/// source in out_dir and returns (objects, runner path).
std::pair<std::vector<std::string>, std::string> build_replay_library(
    const LibraryModel &model, const std::string &out_dir, const ToolchainConfig &toolchain);

struct CompileResult {
  bool ok = false;
  std::string diagnostics;
  std::string binary_path;
};

/// Turns driver source into an executable fuzz target.
class DriverCompiler {
 public:
  virtual ~DriverCompiler() = default;
  virtual CompileResult compile(const FuzzDriver &driver, const std::string &source_path,
                                const std::string &binary_path) = 0;
};

/// clang -fsanitize=fuzzer,address over the driver source, linked
/// against the instrumented library objects. When replay objects are
/// supplied, a companion "<binary>.cov" corpus-replay executable is
/// linked as well; its failure never fails the driver compile.
class ClangCompiler : public DriverCompiler {
 public:
  ClangCompiler(ToolchainConfig toolchain, std::vector<std::string> include_dirs,
                std::vector<std::string> library_objects,
                std::vector<std::string> replay_objects = {}, std::string replay_runner = {})
      : toolchain_(std::move(toolchain)),
        include_dirs_(std::move(include_dirs)),
        library_objects_(std::move(library_objects)),
        replay_objects_(std::move(replay_objects)),
        replay_runner_(std::move(replay_runner)) {}
  CompileResult compile(const FuzzDriver &driver, const std::string &source_path,
                        const std::string &binary_path) override;

 private:
  ToolchainConfig toolchain_;
  std::vector<std::string> include_dirs_;
  std::vector<std::string> library_objects_;
  std::vector<std::string> replay_objects_;
  std::string replay_runner_;
};

struct LibFuzzerConfig {
  std::string binary_dir;    // compiled drivers
  std::string corpus_root;   // corpus/<driver-id>/ evolves in place
  std::string artifact_dir;  // raw crash artifacts
  ToolchainConfig toolchain;
  std::int64_t grace_quantum_ms = 1000;
  int per_input_timeout_s = 5;
};

/// Supervises one libFuzzer child process per slot: hard deadline of
/// budget plus the grace quantum, crash artifacts read from the
/// artifact directory. Coverage comes from replaying the slot-end
/// corpus under the driver's "<binary>.cov" companion; without one the
/// engine's newly-seen program counters are the fallback, which misses
/// whatever the seed corpus already reached.
class LibFuzzerExecutor : public DriverExecutor {
 public:
  explicit LibFuzzerExecutor(LibFuzzerConfig config) : config_(std::move(config)) {}
  ExecutionResult execute(const FuzzDriver &driver, std::int64_t budget_ms) override;

 private:
  LibFuzzerConfig config_;
};

/// Classifies a sanitizer/engine report into the RawCrash kind
/// vocabulary.
std::string classify_crash_kind(const std::string &report_text);

/// Captured output and status of a supervised child process.
struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  bool spawn_failed = false;
  std::string output;  // stdout and stderr interleaved
  std::int64_t elapsed_ms = 0;
};

/// Runs argv with a hard deadline, capturing combined output. env_extra
/// entries are "KEY=VALUE" additions to the child environment.
ProcessResult run_process(const std::vector<std::string> &argv,
                          const std::vector<std::string> &env_extra, std::int64_t timeout_ms);

}  // namespace masfuzz

#endif  // MASFUZZ_EXECUTOR_HPP_
