#pragma once

#include <vector>

#include "qpovm/channels.hpp"
#include "qpovm/povm.hpp"

namespace qpovm {

/// Sampled scalar observable over a strictly increasing time grid.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> values;
};

struct Revival {
    double t_start = 0.0;
    double t_end = 0.0;
    double rise = 0.0;
};

/// Monotonicity verdict for one trajectory. monotone is true exactly
/// when no revival exceeded the detection tolerance.
struct WitnessVerdict {
    bool monotone = true;
    std::vector<Revival> revivals;
    double max_rise = 0.0;
};

Trajectory sharpness_trajectory(const ChannelFamily& family, double theta,
                                double phi, const std::vector<double>& grid);

/// Scan for maximal rising runs whose cumulative rise exceeds tol.
WitnessVerdict detect_revivals(const Trajectory& traj, double tolerance = 1e-9);

Trajectory trace_distance_trajectory(const ChannelFamily& family,
                                     const DensityMatrix& rho1,
                                     const DensityMatrix& rho2,
                                     const std::vector<double>& grid);

struct ThetaVerdict {
    double theta = 0.0;
    WitnessVerdict verdict;
};

/// Sharpness-monotonicity witness aggregated over measurement angles.
/// A revival at any angle flags P-indivisible non-Markovianity; a clean
/// scan proves nothing (the witness is one-directional).
struct WitnessReport {
    std::vector<ThetaVerdict> per_theta;
    bool p_indivisible = false;
};

WitnessReport witness_report(const ChannelFamily& family,
                             const std::vector<double>& theta_grid,
                             const std::vector<double>& time_grid);

/// Evenly spaced grid with `steps` points from start to stop inclusive.
std::vector<double> linear_grid(double start, double stop, int steps);

} // namespace qpovm
