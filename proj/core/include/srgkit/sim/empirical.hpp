#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "srgkit/lang/expr.hpp"
#include "srgkit/lti/transfer_function.hpp"
#include "srgkit/mode.hpp"
#include "srgkit/nonlin/nonlinearity.hpp"

namespace srg::sim {

using lti::Complex;

// Maps a uniformly sampled input to the output on the same grid.
using System = std::function<std::vector<double>(const std::vector<double>&)>;

System lti_system(const lti::TransferFunction& f, double h);
System static_system(const nonlin::Nonlinearity& phi);
System word_system(const lang::ExprPtr& e, const lang::OperatorTable& t, double h);

struct EmpiricalOptions {
  double T = 100.0;    // input window
  double tail = 20.0;  // zero-input time appended so outputs can decay
  double h = 1e-3;
  int max_sines = 5;
  double w_lo = 1e-2, w_hi = 1e2;
  double tukey = 0.2;  // tapered fraction of the window
  double amp_lo = 0.1, amp_hi = 10.0;
  std::uint64_t seed = 1;
};

// Tukey-windowed sum of 1..max_sines sinusoids, zero on the tail.
std::vector<double> random_input(std::mt19937_64& rng, const EmpiricalOptions& o);

struct IoRecord {
  std::vector<double> u, y;
};

double inner(const std::vector<double>& a, const std::vector<double>& b, double h);

// SRG point of a pair (NonIncremental: b is the zero input); nullopt if the
// input difference is numerically zero.
std::optional<Complex> srg_point(const IoRecord& a, const IoRecord* b, double h);

// Both conjugates of each sampled point.
std::vector<Complex> empirical_srg_samples(const System& sys, int n_pairs, Mode mode, const EmpiricalOptions& o = {});

// Runs for gain estimation: consecutive records form the incremental pairs.
std::vector<IoRecord> random_runs(const System& sys, int n, const EmpiricalOptions& o = {});

// Largest truncated norm ratio over runs (or consecutive pairs) and truncation times.
double gain_estimate(const std::vector<IoRecord>& runs, Mode mode, double h);

}  // namespace srg::sim
