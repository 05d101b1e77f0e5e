#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "permstat/circle_function.hpp"
#include "permstat/sampler.hpp"

namespace permstat {

// Parsed command line for one experiment. Every spec string validates before
// any computation starts.
struct ExperimentConfig {
  std::string command;
  std::string model = "ewens:1";
  long n = 100;
  long samples = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string format = "csv";  // csv | json
  std::string out;             // empty writes to stdout

  long d = 0;                  // trace-dist: tr(sigma^d) when > 0
  std::string s_grid = "0:1:11";
  Complex x1{0.0, 0.0};
  Complex x2{0.0, 0.0};
  int s1 = 1;
  int s2 = 0;
  std::string function_spec;   // laurent:d=c,... | arc:a,b | fourier:file | cos
  std::string zlaw_spec = "point";
  double p = 3.0;
  long k_max = 64;
  bool asym = true;            // hn: include the asymptotic column
  std::string emit = "cycles"; // sample: cycles | angles
};

struct Verdict {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double threshold = 0.0;
  std::string note;
};

// One table of named numeric columns plus scalar metrics and verdicts.
// Rerunning the same config reproduces rows bit for bit, whatever the worker
// count.
struct ExperimentResult {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<Verdict> verdicts;
  double wall_seconds = 0.0;
};

ExperimentResult cmd_hn(const ExperimentConfig& cfg);
ExperimentResult cmd_sample(const ExperimentConfig& cfg);
ExperimentResult cmd_trace_dist(const ExperimentConfig& cfg);
ExperimentResult cmd_clt(const ExperimentConfig& cfg);
ExperimentResult cmd_moments(const ExperimentConfig& cfg);
ExperimentResult cmd_autocorr(const ExperimentConfig& cfg);
ExperimentResult cmd_selftest(const ExperimentConfig& cfg);
ExperimentResult run_command(const ExperimentConfig& cfg);

void write_csv(const ExperimentResult& result, std::ostream& os);
void write_json(const ExperimentResult& result, std::ostream& os);
// Writes to cfg.out (or stdout) in cfg.format.
void write_result(const ExperimentResult& result, const ExperimentConfig& cfg);

// Function mini-language: laurent:d=c,... | arc:a,b | fourier:file.json | cos.
// Angle tokens accept plain numbers and the literal pi with a coefficient
// ("pi", "-pi", "0.5pi").
CircleFunction parse_function(const std::string& spec);
ZLaw parse_zlaw(const std::string& spec);  // point | uniform | atoms:a=p,...
std::vector<double> parse_sgrid(const std::string& spec);  // a:b:count

// Deterministic replica map: evaluates fn(i) for i in [0, count) on `workers`
// threads over contiguous chunks; results land by index, so the output never
// depends on the partitioning.
std::vector<double> replicate_indexed(
    long count, int workers, const std::function<double(long)>& fn);

}  // namespace permstat
