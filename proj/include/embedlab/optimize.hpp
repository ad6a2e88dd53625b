#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "embedlab/embeddings.hpp"
#include "embedlab/probdist.hpp"

namespace embedlab {

struct OptimizerConfig {
    int restarts = 16;
    int max_iters = 2000;      // simplex iterations per restart
    double ftol = 1e-9;        // convergence: spread of simplex values
    std::uint64_t seed = 0;
    double simplex_scale = 0.78539816339744831;  // pi/4 edge length
    int threads = 0;           // 0: EMBEDLAB_THREADS, else hardware default
};

struct RestartTrace {
    int restart = 0;
    double start_delta = 0.0;
    double final_delta = 0.0;
    int iters = 0;
    bool converged = false;
};

struct OptimizerResult {
    PhaseAssignment best_phases;
    Eigen::VectorXd best_coords;  // gauge-fixed, folded into [0, 2*pi)
    double best_delta = 0.0;
    std::vector<RestartTrace> per_restart;
    bool converged = false;  // convergence of the winning restart
};

// Leakage of the regular embedding with the given gauge-fixed coordinates.
double evaluate_objective(const JointDistribution& p, const Eigen::VectorXd& coords);

// Multi-start downhill simplex over the free phase coordinates. Restart 0
// always starts at the canonical embedding (all phases zero), so the result
// never exceeds the canonical leakage. The phase space is periodic, so the
// simplex moves unconstrained and coordinates are folded on evaluation.
// Restarts run concurrently; given the same seed the result is identical
// bit-for-bit regardless of the thread count.
OptimizerResult minimize_leakage(const JointDistribution& p, const OptimizerConfig& cfg = {});

}  // namespace embedlab
