#include "qpovm/markov.hpp"

#include <algorithm>

#include "qpovm/errors.hpp"

namespace qpovm {

namespace {

void require_grid(const std::vector<double>& grid, std::size_t min_size) {
    if (grid.size() < min_size) throw Error("time grid too short");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw Error("time grid must be strictly increasing");
}

} // namespace

std::vector<double> linear_grid(double start, double stop, int steps) {
    if (steps < 1) throw Error("grid needs at least one point");
    if (start > stop) throw Error("grid start exceeds stop");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    if (steps == 1) {
        grid[0] = start;
        return grid;
    }
    const double h = (stop - start) / (steps - 1);
    for (int i = 0; i < steps; ++i) grid[static_cast<std::size_t>(i)] = start + h * i;
    grid.back() = stop;
    return grid;
}

Trajectory sharpness_trajectory(const ChannelFamily& family, double theta,
                                double phi, const std::vector<double>& grid) {
    require_grid(grid, 1);
    Trajectory traj;
    traj.times = grid;
    traj.values.reserve(grid.size());
    for (double t : grid) {
        const auto [e_plus, e_minus] = heisenberg_effects(family.channel_at(t),
                                                          theta, phi);
        (void)e_minus;
        traj.values.push_back(extract_bias_sharpness(e_plus).sharpness);
    }
    return traj;
}

WitnessVerdict detect_revivals(const Trajectory& traj, double tolerance) {
    if (traj.times.size() < 2 || traj.times.size() != traj.values.size())
        throw Error("revival detection needs at least two samples");
    WitnessVerdict verdict;
    const auto& v = traj.values;
    const auto& t = traj.times;
    std::size_t i = 0;
    while (i + 1 < v.size()) {
        if (v[i + 1] > v[i]) {
            std::size_t j = i;
            while (j + 1 < v.size() && v[j + 1] >= v[j]) ++j;
            const double rise = v[j] - v[i];
            if (rise > tolerance)
                verdict.revivals.push_back({t[i], t[j], rise});
            i = j;
        } else {
            ++i;
        }
    }
    for (const auto& r : verdict.revivals)
        verdict.max_rise = std::max(verdict.max_rise, r.rise);
    verdict.monotone = verdict.revivals.empty();
    return verdict;
}

Trajectory trace_distance_trajectory(const ChannelFamily& family,
                                     const DensityMatrix& rho1,
                                     const DensityMatrix& rho2,
                                     const std::vector<double>& grid) {
    if (rho1.dim() != rho2.dim())
        throw DimensionError("trace-distance scan needs states of equal dimension");
    require_grid(grid, 1);
    Trajectory traj;
    traj.times = grid;
    traj.values.reserve(grid.size());
    for (double t : grid) {
        const KrausChannel ch = family.channel_at(t);
        traj.values.push_back(trace_distance(apply(ch, rho1), apply(ch, rho2)));
    }
    return traj;
}

WitnessReport witness_report(const ChannelFamily& family,
                             const std::vector<double>& theta_grid,
                             const std::vector<double>& time_grid) {
    if (theta_grid.empty()) throw Error("witness report needs at least one angle");
    require_grid(time_grid, 2);
    WitnessReport report;
    report.per_theta.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        const Trajectory traj = sharpness_trajectory(family, theta, 0.0, time_grid);
        ThetaVerdict tv;
        tv.theta = theta;
        tv.verdict = detect_revivals(traj);
        report.p_indivisible = report.p_indivisible || !tv.verdict.monotone;
        report.per_theta.push_back(std::move(tv));
    }
    return report;
}

} // namespace qpovm
