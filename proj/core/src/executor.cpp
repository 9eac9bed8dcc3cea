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

#include "masfuzz/executor.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "masfuzz/error.hpp"

extern char **environ;

namespace masfuzz {

namespace fs = std::filesystem;
using nlohmann::json;

ProcessResult run_process(const std::vector<std::string> &argv,
                          const std::vector<std::string> &env_extra, std::int64_t timeout_ms) {
  ProcessResult res;
  int out_pipe[2] = {-1, -1};
  int exec_pipe[2] = {-1, -1};
  if (pipe(out_pipe) != 0 || pipe2(exec_pipe, O_CLOEXEC) != 0) {
    res.spawn_failed = true;
    res.output = "pipe setup failed";
    return res;
  }

  std::vector<std::string> argv_store = argv;
  std::vector<char *> cargv;
  cargv.reserve(argv_store.size() + 1);
  for (auto &a : argv_store) cargv.push_back(a.data());
  cargv.push_back(nullptr);

  std::vector<std::string> env_store;
  for (char **e = environ; *e != nullptr; ++e) env_store.emplace_back(*e);
  for (const auto &extra : env_extra) {
    std::string key = extra.substr(0, extra.find('=') + 1);
    env_store.erase(std::remove_if(env_store.begin(), env_store.end(),
                                   [&](const std::string &v) { return v.rfind(key, 0) == 0; }),
                    env_store.end());
    env_store.push_back(extra);
  }
  std::vector<char *> cenv;
  cenv.reserve(env_store.size() + 1);
  for (auto &e : env_store) cenv.push_back(e.data());
  cenv.push_back(nullptr);

  auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) {
    res.spawn_failed = true;
    res.output = "fork failed";
    for (int fd : {out_pipe[0], out_pipe[1], exec_pipe[0], exec_pipe[1]}) close(fd);
    return res;
  }
  if (pid == 0) {
    dup2(out_pipe[1], 1);
    dup2(out_pipe[1], 2);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(exec_pipe[0]);
    execvpe(cargv[0], cargv.data(), cenv.data());
    int err = errno;
    ssize_t n = write(exec_pipe[1], &err, sizeof err);
    (void)n;
    _exit(127);
  }
  close(out_pipe[1]);
  close(exec_pipe[1]);

  // The CLOEXEC pipe reports exec failure: EOF means the exec took.
  int exec_errno = 0;
  if (read(exec_pipe[0], &exec_errno, sizeof exec_errno) == static_cast<ssize_t>(sizeof exec_errno)) {
    res.spawn_failed = true;
    res.output = argv.empty() ? "exec failed" : argv[0] + ": " + std::strerror(exec_errno);
    close(exec_pipe[0]);
    close(out_pipe[0]);
    waitpid(pid, nullptr, 0);
    return res;
  }
  close(exec_pipe[0]);

  fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);
  std::string output;
  bool killed = false;
  char buf[4096];
  for (;;) {
    struct pollfd pfd = {out_pipe[0], POLLIN, 0};
    poll(&pfd, 1, 50);
    for (;;) {
      ssize_t n = read(out_pipe[0], buf, sizeof buf);
      if (n > 0) {
        output.append(buf, static_cast<std::size_t>(n));
        continue;
      }
      if (n == 0) goto drained;
      break;  // EAGAIN
    }
    if (!killed) {
      auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
      if (elapsed >= timeout_ms) {
        kill(pid, SIGKILL);
        killed = true;
      }
    }
  }
drained:
  close(out_pipe[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  res.timed_out = killed;
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  res.output = std::move(output);
  res.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return res;
}

std::string classify_crash_kind(const std::string &report) {
  auto has = [&](const char *needle) { return report.find(needle) != std::string::npos; };
  if (has("AddressSanitizer") &&
      (has("SEGV") || has("buffer-overflow") || has("use-after") || has("double-free") ||
       has("invalid-free") || has("stack-overflow") || has("null pointer"))) {
    return "addr-violation";
  }
  if (has("deadly signal") || has("SEGV on unknown address")) return "addr-violation";
  if (has("assert") || has("Assertion")) return "assert";
  if (has("libFuzzer: timeout") || has("timeout after")) return "timeout";
  if (has("out-of-memory") || has("rss_limit_mb")) return "oom";
  return "other";
}

// ---------------------------------------------------------------------
// Simulated execution

namespace {

std::string hex_decode(const std::string &hex) {
  std::string out;
  for (std::size_t i = 0; i + 1 < hex.size(); i += 2) {
    auto nibble = [](char c) -> int {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      if (c >= 'A' && c <= 'F') return c - 'A' + 10;
      return 0;
    };
    out.push_back(static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  }
  return out;
}

}  // namespace

SimSpec parse_simspec(const std::string &json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception &e) {
    throw FormatError(std::string("simspec is not valid JSON: ") + e.what());
  }
  SimSpec spec;
  try {
    spec.rng_seed = doc.value("rng_seed", std::uint64_t{1});
    for (const auto &[id, d] : doc.at("drivers").items()) {
      SimDriverSpec ds;
      ds.execs_per_second = d.value("execs_per_second", std::int64_t{100});
      for (const auto &pt : d.value("curve", json::array())) {
        SimCurvePoint p;
        p.at_ms = pt.at("at_ms").get<std::int64_t>();
        for (const auto &b : pt.value("branches", json::array())) {
          p.branches.push_back({b.at("file").get<std::string>(), b.at("line").get<int>(),
                                b.value("index", 0)});
        }
        ds.curve.push_back(std::move(p));
      }
      for (const auto &cr : d.value("crashes", json::array())) {
        SimCrash c;
        c.at_ms = cr.at("at_ms").get<std::int64_t>();
        c.kind = cr.value("kind", "addr-violation");
        c.input = hex_decode(cr.value("input_hex", ""));
        c.report = cr.value("report", "simulated crash");
        ds.crashes.push_back(std::move(c));
      }
      std::sort(ds.curve.begin(), ds.curve.end(),
                [](const SimCurvePoint &a, const SimCurvePoint &b) { return a.at_ms < b.at_ms; });
      std::sort(ds.crashes.begin(), ds.crashes.end(),
                [](const SimCrash &a, const SimCrash &b) { return a.at_ms < b.at_ms; });
      spec.drivers[id] = std::move(ds);
    }
  } catch (const json::exception &e) {
    throw FormatError(std::string("simspec shape error: ") + e.what());
  }
  return spec;
}

ExecutionResult SimulatedExecutor::execute(const FuzzDriver &driver, std::int64_t budget_ms) {
  if (budget_ms <= 0) throw PreconditionError("execution budget must be positive");
  auto it = spec_.drivers.find(driver.id);
  if (it == spec_.drivers.end()) it = spec_.drivers.find("*");
  if (it == spec_.drivers.end()) {
    throw PreconditionError("simspec has no entry for driver " + driver.id);
  }
  const SimDriverSpec &ds = it->second;
  std::int64_t before = cumulative_[driver.id];
  std::int64_t after = before + budget_ms;

  ExecutionResult res;
  res.driver_id = driver.id;

  // The engine stops at the first crash inside the slot.
  for (const auto &crash : ds.crashes) {
    if (crash.at_ms > before && crash.at_ms <= after) {
      after = crash.at_ms;
      res.crashes.push_back({crash.kind, crash.report, crash.input});
      break;
    }
  }
  for (const auto &point : ds.curve) {
    if (point.at_ms > before && point.at_ms <= after) {
      res.coverage.branches.insert(res.coverage.branches.end(), point.branches.begin(),
                                   point.branches.end());
    }
  }
  res.t_actual_ms = after - before;
  res.executions = res.t_actual_ms * ds.execs_per_second / 1000;
  res.has_coverage = res.executions > 0;
  if (!res.has_coverage) res.coverage.branches.clear();
  cumulative_[driver.id] = after;
  return res;
}

std::int64_t SimulatedExecutor::cumulative_ms(const std::string &driver_id) const {
  auto it = cumulative_.find(driver_id);
  return it == cumulative_.end() ? 0 : it->second;
}

// ---------------------------------------------------------------------
// Real toolchain

namespace {

std::vector<std::string> model_include_dirs(const LibraryModel &model) {
  std::vector<std::string> dirs;
  auto push = [&](const fs::path &p) {
    std::string s = p.string();
    if (std::find(dirs.begin(), dirs.end(), s) == dirs.end()) dirs.push_back(s);
  };
  push(model.root);
  for (const auto &h : model.headers) {
    push((fs::path(model.root) / h).parent_path());
  }
  return dirs;
}

}  // namespace

namespace {

std::vector<std::string> compile_library_objects(const LibraryModel &model,
                                                 const std::string &out_dir,
                                                 const ToolchainConfig &toolchain,
                                                 const std::string &instrument_flag) {
  fs::create_directories(out_dir);
  std::set<std::string> usage(model.usage_files.begin(), model.usage_files.end());
  std::vector<std::string> objects;
  std::vector<fs::path> sources;
  for (const auto &entry : fs::recursive_directory_iterator(model.root)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".c") continue;
    std::string rel = fs::relative(entry.path(), model.root).generic_string();
    if (usage.count(rel)) continue;
    sources.push_back(entry.path());
  }
  std::sort(sources.begin(), sources.end());
  for (const auto &src : sources) {
    std::string rel = fs::relative(src, model.root).generic_string();
    std::string obj_name = rel;
    std::replace(obj_name.begin(), obj_name.end(), '/', '_');
    obj_name = obj_name.substr(0, obj_name.size() - 2) + ".o";
    std::string obj = (fs::path(out_dir) / obj_name).string();

    std::vector<std::string> cmd = {toolchain.clang,
                                    "-c",
                                    "-O1",
                                    "-g",
                                    "-gdwarf-4",
                                    "-fno-omit-frame-pointer",
                                    "-fsanitize=address",
                                    instrument_flag};
    for (const auto &dir : model_include_dirs(model)) cmd.push_back("-I" + dir);
    for (const auto &f : toolchain.extra_cflags) cmd.push_back(f);
    cmd.push_back(src.string());
    cmd.push_back("-o");
    cmd.push_back(obj);
    ProcessResult pr = run_process(cmd, {}, 120000);
    if (pr.spawn_failed || pr.exit_code != 0) {
      throw IoError("library build failed for " + rel + ":\n" + pr.output);
    }
    objects.push_back(obj);
  }
  return objects;
}

// Executes every corpus entry once and reports each pc-guard site the
// first time it fires. Lines stream to stderr so a crashing entry still
// leaves everything observed up to that point.
constexpr char kReplayRunnerSource[] = R"(#include <dirent.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

int LLVMFuzzerTestOneInput(const uint8_t *data, size_t size);

void __sanitizer_cov_trace_pc_guard_init(uint32_t *start, uint32_t *stop) {
  static uint64_t n;
  if (start == stop || *start) return;
  for (uint32_t *x = start; x < stop; x++) *x = (uint32_t)++n;
}

void __sanitizer_cov_trace_pc_guard(uint32_t *guard) {
  if (!*guard) return;
  *guard = 0;
  fprintf(stderr, "COVPC: %p\n", __builtin_return_address(0));
}

static void run_file(const char *path) {
  FILE *f = fopen(path, "rb");
  if (f == NULL) return;
  fseek(f, 0, SEEK_END);
  long len = ftell(f);
  fseek(f, 0, SEEK_SET);
  if (len < 0) {
    fclose(f);
    return;
  }
  uint8_t *buf = malloc(len > 0 ? (size_t)len : 1);
  if (buf != NULL && fread(buf, 1, (size_t)len, f) == (size_t)len) {
    LLVMFuzzerTestOneInput(buf, (size_t)len);
  }
  free(buf);
  fclose(f);
}

int main(int argc, char **argv) {
  for (int i = 1; i < argc; ++i) {
    DIR *dir = opendir(argv[i]);
    if (dir == NULL) {
      run_file(argv[i]);
      continue;
    }
    struct dirent *e;
    while ((e = readdir(dir)) != NULL) {
      if (e->d_name[0] == '.') continue;
      char path[4096];
      snprintf(path, sizeof path, "%s/%s", argv[i], e->d_name);
      run_file(path);
    }
    closedir(dir);
  }
  return 0;
}
)";

}  // namespace

std::vector<std::string> build_instrumented_library(const LibraryModel &model,
                                                    const std::string &out_dir,
                                                    const ToolchainConfig &toolchain) {
  return compile_library_objects(model, out_dir, toolchain, "-fsanitize=fuzzer-no-link");
}

std::pair<std::vector<std::string>, std::string> build_replay_library(
    const LibraryModel &model, const std::string &out_dir, const ToolchainConfig &toolchain) {
  std::vector<std::string> objects =
      compile_library_objects(model, out_dir, toolchain, "-fsanitize-coverage=trace-pc-guard");
  std::string runner = (fs::path(out_dir) / "replay_runner.c").string();
  std::ofstream out(runner, std::ios::trunc);
  if (!out) throw IoError("cannot write " + runner);
  out << kReplayRunnerSource;
  return {std::move(objects), std::move(runner)};
}

CompileResult ClangCompiler::compile(const FuzzDriver &driver, const std::string &source_path,
                                     const std::string &binary_path) {
  (void)driver;
  std::vector<std::string> cmd = {toolchain_.clang, "-O1", "-g", "-gdwarf-4",
                                  "-fno-omit-frame-pointer", "-fsanitize=fuzzer,address"};
  for (const auto &dir : include_dirs_) cmd.push_back("-I" + dir);
  for (const auto &f : toolchain_.extra_cflags) cmd.push_back(f);
  cmd.push_back(source_path);
  for (const auto &obj : library_objects_) cmd.push_back(obj);
  cmd.push_back("-o");
  cmd.push_back(binary_path);

  ProcessResult pr = run_process(cmd, {}, 120000);
  CompileResult res;
  res.diagnostics = pr.output;
  res.binary_path = binary_path;
  res.ok = !pr.spawn_failed && pr.exit_code == 0 && fs::exists(binary_path);
  if (pr.spawn_failed) res.diagnostics = "compiler failed to start: " + pr.output;

  // Position-dependent layout makes the replay binary's pc-guard
  // addresses resolvable through addr2line without a symbolizer.
  if (res.ok && !replay_objects_.empty() && !replay_runner_.empty()) {
    std::vector<std::string> rcmd = {toolchain_.clang,
                                     "-O1",
                                     "-g",
                                     "-gdwarf-4",
                                     "-fno-omit-frame-pointer",
                                     "-fsanitize=address",
                                     "-fsanitize-coverage=trace-pc-guard",
                                     "-no-pie"};
    for (const auto &dir : include_dirs_) rcmd.push_back("-I" + dir);
    for (const auto &f : toolchain_.extra_cflags) rcmd.push_back(f);
    rcmd.push_back(source_path);
    rcmd.push_back(replay_runner_);
    for (const auto &obj : replay_objects_) rcmd.push_back(obj);
    rcmd.push_back("-o");
    rcmd.push_back(binary_path + ".cov");
    run_process(rcmd, {}, 120000);
  }
  return res;
}

// ---------------------------------------------------------------------
// libFuzzer supervision

namespace {

struct Symbolized {
  std::string function;
  std::string file;
  int line = 0;
  bool ok = false;
};

int parse_line_number(const std::string &s) {
  if (s.empty()) return 0;
  int value = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return 0;
    value = value * 10 + (c - '0');
  }
  return value;
}

// addr2line -f prints two lines per address: the function name, then
// "path:line" ("??:0" when unresolved, discriminator suffixes after a
// space).
std::vector<Symbolized> symbolize(const std::string &addr2line, const std::string &binary,
                                  const std::vector<std::string> &addrs) {
  std::vector<Symbolized> out(addrs.size());
  const std::size_t kBatch = 400;
  for (std::size_t base = 0; base < addrs.size(); base += kBatch) {
    std::size_t count = std::min(kBatch, addrs.size() - base);
    std::vector<std::string> cmd = {addr2line, "-f", "-e", binary};
    for (std::size_t i = 0; i < count; ++i) cmd.push_back(addrs[base + i]);
    ProcessResult pr = run_process(cmd, {}, 60000);
    if (pr.spawn_failed || pr.exit_code != 0) continue;
    std::istringstream lines(pr.output);
    std::string func, loc;
    for (std::size_t i = 0; i < count && std::getline(lines, func) && std::getline(lines, loc);
         ++i) {
      std::size_t sp = loc.find(' ');
      if (sp != std::string::npos) loc = loc.substr(0, sp);
      std::size_t colon = loc.rfind(':');
      if (colon == std::string::npos) continue;
      std::string file = loc.substr(0, colon);
      int parsed = parse_line_number(loc.substr(colon + 1));
      if (file.empty() || file == "??" || parsed <= 0) continue;
      out[base + i] = {func == "??" ? std::string() : func, file, parsed, true};
    }
  }
  return out;
}

// Without an external symbolizer the engine prints raw pcs with a
// "(module+0xOFFSET)" locator. The runtime pc of a position-independent
// binary never resolves through addr2line; the module offset does.
std::optional<std::string> module_offset(const std::string &line, const std::string &binary_name) {
  std::size_t open = 0;
  while ((open = line.find('(', open)) != std::string::npos) {
    std::size_t close = line.find(')', open);
    if (close == std::string::npos) break;
    std::string inside = line.substr(open + 1, close - open - 1);
    std::size_t plus = inside.rfind("+0x");
    if (plus != std::string::npos &&
        fs::path(inside.substr(0, plus)).filename().string() == binary_name) {
      return inside.substr(plus + 1);
    }
    open = close + 1;
  }
  return std::nullopt;
}

// "... 0xPC in func path:line[:col]" when a symbolizer was available.
std::optional<Symbolized> inline_location(const std::string &line) {
  std::size_t in_pos = line.find(" in ");
  if (in_pos == std::string::npos) return std::nullopt;
  std::istringstream rest(line.substr(in_pos + 4));
  std::string func, loc;
  if (!(rest >> func >> loc)) return std::nullopt;
  std::size_t c1 = loc.rfind(':');
  if (c1 == std::string::npos || c1 == 0) return std::nullopt;
  std::string last = loc.substr(c1 + 1);
  std::size_t c2 = loc.rfind(':', c1 - 1);
  std::string mid = c2 == std::string::npos ? std::string() : loc.substr(c2 + 1, c1 - c2 - 1);
  std::string file;
  int lineno = 0;
  if (parse_line_number(mid) > 0 && parse_line_number(last) > 0) {
    file = loc.substr(0, c2);
    lineno = parse_line_number(mid);
  } else {
    file = loc.substr(0, c1);
    lineno = parse_line_number(last);
  }
  if (file.empty() || file == "??" || lineno <= 0) return std::nullopt;
  return Symbolized{func == "??" ? std::string() : func, file, lineno, true};
}

// Rewrites "(binary+0xOFFSET)" stack frames into "in func path:line"
// form so report parsing, dedup keys, and classification see source
// locations. Frames addr2line cannot resolve keep their module form.
std::string symbolize_report_frames(const std::string &report, const std::string &addr2line,
                                    const fs::path &binary) {
  std::vector<std::string> lines;
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);

  std::string binary_name = binary.filename().string();
  std::vector<std::size_t> frame_at;
  std::vector<std::string> offsets;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string &l = lines[i];
    std::size_t hash = l.find('#');
    if (hash == std::string::npos || l.find(" in ") != std::string::npos) continue;
    if (hash + 1 >= l.size() || std::isdigit(static_cast<unsigned char>(l[hash + 1])) == 0) {
      continue;
    }
    auto off = module_offset(l, binary_name);
    if (!off) continue;
    frame_at.push_back(i);
    offsets.push_back(*off);
  }
  if (offsets.empty()) return report;

  std::vector<Symbolized> syms = symbolize(addr2line, binary.string(), offsets);
  for (std::size_t k = 0; k < frame_at.size(); ++k) {
    if (!syms[k].ok) continue;
    std::string &l = lines[frame_at[k]];
    std::size_t pc = l.find("0x");
    if (pc == std::string::npos) continue;
    std::size_t pc_end = pc;
    while (pc_end < l.size() && std::isspace(static_cast<unsigned char>(l[pc_end])) == 0) {
      ++pc_end;
    }
    l = l.substr(0, pc_end) + " in " +
        (syms[k].function.empty() ? std::string("??") : syms[k].function) + " " + syms[k].file +
        ":" + std::to_string(syms[k].line);
  }

  std::string out;
  for (const auto &rebuilt : lines) {
    out += rebuilt;
    out += '\n';
  }
  return out;
}

std::string read_file_bytes(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Runs the pc-guard companion over the corpus and symbolizes every
// fired guard site. Empty when the companion is missing or silent.
std::vector<Symbolized> replay_coverage(const fs::path &binary, const fs::path &corpus,
                                        const std::string &addr2line) {
  fs::path replay_bin = binary;
  replay_bin += ".cov";
  if (!fs::exists(replay_bin)) return {};
  std::vector<std::string> cmd = {replay_bin.string(), corpus.string()};
  std::vector<std::string> env = {"ASAN_OPTIONS=detect_leaks=0:abort_on_error=0"};
  ProcessResult pr = run_process(cmd, env, 60000);
  if (pr.spawn_failed) return {};

  std::vector<std::string> pcs;
  std::istringstream lines(pr.output);
  std::string line;
  while (std::getline(lines, line)) {
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line.compare(first, 7, "COVPC: ") != 0) continue;
    std::uint64_t pc = std::strtoull(line.c_str() + first + 7, nullptr, 16);
    if (pc <= 1) continue;
    // The guard sees the return address; the branch site is one byte
    // back.
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(pc - 1));
    pcs.emplace_back(buf);
  }
  std::sort(pcs.begin(), pcs.end());
  pcs.erase(std::unique(pcs.begin(), pcs.end()), pcs.end());
  if (pcs.empty()) return {};
  return symbolize(addr2line, replay_bin.string(), pcs);
}

}  // namespace

ExecutionResult LibFuzzerExecutor::execute(const FuzzDriver &driver, std::int64_t budget_ms) {
  if (budget_ms <= 0) throw PreconditionError("execution budget must be positive");
  ExecutionResult res;
  res.driver_id = driver.id;

  std::string stem = driver.filename();
  stem = stem.substr(0, stem.size() - 2);  // drop .c
  fs::path binary = fs::path(config_.binary_dir) / stem;
  fs::path corpus = fs::path(config_.corpus_root) / driver.id;
  fs::create_directories(corpus);
  fs::create_directories(config_.artifact_dir);
  std::string artifact_prefix = (fs::path(config_.artifact_dir) / (driver.id + "-")).string();

  // One second of the slot is headroom for engine startup and shutdown
  // so a normal run finishes before the hard deadline below.
  std::int64_t budget_s = std::max<std::int64_t>(1, budget_ms / 1000 - 1);
  std::vector<std::string> cmd = {binary.string(),
                                  corpus.string(),
                                  "-max_total_time=" + std::to_string(budget_s),
                                  "-print_pcs=1",
                                  "-print_final_stats=1",
                                  "-timeout=" + std::to_string(config_.per_input_timeout_s),
                                  "-artifact_prefix=" + artifact_prefix};
  std::vector<std::string> env = {"ASAN_OPTIONS=detect_leaks=0:abort_on_error=0:log_path=stderr"};

  auto artifacts_before = [&] {
    std::set<std::string> files;
    for (const auto &e : fs::directory_iterator(config_.artifact_dir)) {
      files.insert(e.path().string());
    }
    return files;
  }();

  ProcessResult pr = run_process(cmd, env, budget_ms + config_.grace_quantum_ms);
  // Reap latency after a deadline kill is not charged to the slot.
  res.t_actual_ms = std::min(pr.elapsed_ms, budget_ms + config_.grace_quantum_ms);

  if (pr.spawn_failed) {
    res.executor_error = true;
    res.error_detail = pr.output;
    return res;
  }

  // Execution count: the final-stats line when the run completed, the
  // last progress line otherwise.
  std::int64_t executions = 0;
  std::istringstream lines(pr.output);
  std::string line;
  std::string binary_name = binary.filename().string();
  std::vector<std::string> offsets;
  std::vector<Symbolized> direct;
  while (std::getline(lines, line)) {
    // The engine indents NEW_PC lines with a tab.
    std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line.compare(first, 7, "NEW_PC:") == 0) {
      if (auto s = inline_location(line)) {
        direct.push_back(*s);
      } else if (auto off = module_offset(line, binary_name)) {
        offsets.push_back(*off);
      }
      continue;
    }
    if (line.find("stat::number_of_executed_units:") != std::string::npos) {
      executions = std::atoll(line.substr(line.find(':', 6) + 1).c_str());
      continue;
    }
    if (!line.empty() && line[0] == '#') {
      std::int64_t n = std::atoll(line.c_str() + 1);
      if (n > executions) executions = n;
    }
  }
  res.executions = executions;

  bool engine_started = pr.output.find("INFO:") != std::string::npos || executions > 0;
  bool crashed = pr.output.find("ERROR: ") != std::string::npos ||
                 pr.output.find("SUMMARY: ") != std::string::npos;
  if (!engine_started && !crashed && pr.exit_code != 0) {
    res.executor_error = true;
    res.error_detail = "engine failed to start (exit " + std::to_string(pr.exit_code) + ")";
    return res;
  }

  // A deadline kill without an engine report is budget enforcement,
  // not a crash; per-input hangs produce the engine's own timeout
  // report and land here through the crashed path.
  if (crashed) {
    RawCrash crash;
    crash.kind = classify_crash_kind(pr.output);
    std::size_t begin = pr.output.find("==");
    if (begin == std::string::npos) begin = pr.output.find("ERROR: ");
    std::string text = begin == std::string::npos ? pr.output : pr.output.substr(begin);
    crash.report_text = symbolize_report_frames(text, config_.toolchain.addr2line, binary);
    for (const auto &e : fs::directory_iterator(config_.artifact_dir)) {
      std::string p = e.path().string();
      if (!artifacts_before.count(p) && p.rfind(artifact_prefix, 0) == 0) {
        crash.input = read_file_bytes(e.path());
        break;
      }
    }
    res.crashes.push_back(std::move(crash));
  }

  // Coverage preferred source: replay the slot-end corpus under the
  // pc-guard companion, which sees everything the corpus reaches. The
  // engine's newly seen PCs are the fallback and miss what the seed
  // corpus already covered.
  std::vector<Symbolized> syms = replay_coverage(binary, corpus, config_.toolchain.addr2line);
  if (syms.empty()) {
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    if (!offsets.empty()) {
      syms = symbolize(config_.toolchain.addr2line, binary.string(), offsets);
    }
    syms.insert(syms.end(), direct.begin(), direct.end());
  }

  // PCs resolving into the driver's own file or the replay runner are
  // harness noise, not library coverage.
  auto is_harness = [&](const std::string &file) {
    for (const std::string &name : {driver.filename(), std::string("replay_runner.c")}) {
      if (file.size() >= name.size() &&
          file.compare(file.size() - name.size(), std::string::npos, name) == 0) {
        return true;
      }
    }
    return false;
  };
  std::map<std::pair<std::string, int>, int> ordinal;
  for (const auto &s : syms) {
    if (!s.ok || is_harness(s.file)) continue;
    int index = ordinal[{s.file, s.line}]++;
    res.coverage.branches.push_back({s.file, s.line, index});
  }
  res.has_coverage = res.executions > 0;
  return res;
}

}  // namespace masfuzz
