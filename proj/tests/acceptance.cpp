// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <fmt/core.h>

#include "levylab/suite.hpp"

namespace fs = std::filesystem;
using namespace levylab;

namespace {

constexpr std::uint64_t seed = 42;

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::set<std::string> listing(const fs::path& dir) {
  std::set<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out.insert(e.path().filename().string());
  return out;
}

// Runs the CLI suite into `dir`; returns the exit status.
int run_suite(const fs::path& dir) {
  fs::remove_all(dir);
  const std::string cmd = fmt::format("'{}' suite --seed {} --out '{}' 2>/dev/null", LEVYLAB_CLI_PATH, seed, dir.string());
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

suite::CriterionResult reproducibility() {
  const auto t0 = std::chrono::steady_clock::now();
  suite::CriterionResult r{10, "seeded reproducibility", false, {}, {}, 0.0};
  const fs::path base = fs::temp_directory_path() / fmt::format("levylab-acceptance-{}", ::getpid());
  const fs::path a = base / "a";
  const fs::path b = base / "b";
  const int ca = run_suite(a);
  const int cb = run_suite(b);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  // exit status 1 only reports failing criteria; anything else is a crash or usage error
  if ((ca != 0 && ca != 1) || ca != cb || !fs::exists(a) || !fs::exists(b)) {
    r.detail = fmt::format("suite runs exited {} and {}", ca, cb);
    fs::remove_all(base);
    return r;
  }
  const auto files = listing(a);
  int differing = 0;
  bool same_listing = files == listing(b);
  for (const auto& f : files) {
    if (slurp(a / f) != slurp(b / f)) ++differing;
  }
  const bool complete = files.count("summary.csv") == 1 && files.size() == 10;
  r.pass = same_listing && complete && differing == 0 && secs < 600.0;
  r.detail = fmt::format("{} files, {} differing, two runs in {:.1f} s", files.size(), differing, secs);
  r.runtime_ms = secs * 1e3;
  fs::remove_all(base);
  return r;
}

void report(const suite::CriterionResult& c) {
  std::cout << fmt::format("{} criterion {}: {}: {}", c.pass ? "PASS" : "FAIL", c.id, c.name, c.detail) << std::endl;
}

}  // namespace

int main() {
  int failed = 0;
  for (const auto& check : suite::all_checks()) {
    suite::CriterionResult c;
    try {
      c = check(seed);
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = fmt::format("threw: {}", e.what());
    }
    report(c);
    if (c.id == 3) {
      for (const auto& j : c.records) {
        std::cout << fmt::format("INFO criterion 3: series {} normalized ratio over its own large-n equivalent at n=100: {:.6f}",
                                 j["series"].get<std::string>(), j["over_series_asymptote_100"].get<double>())
                  << std::endl;
      }
    }
    failed += c.pass ? 0 : 1;
  }
  const auto r10 = reproducibility();
  report(r10);
  failed += r10.pass ? 0 : 1;
  std::cout << fmt::format("{} of 10 criteria failed", failed) << std::endl;
  return failed == 0 ? 0 : 1;
}
