#pragma once

#include <cstddef>
#include <vector>

#include "polyode/polysys.hpp"

namespace polyode {

enum class TrajectorySource { ClosedForm, Integrated };

struct StepStatistics {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    double min_step = 0.0;
};

/// Sampled complex states at strictly increasing times.
struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    TrajectorySource source = TrajectorySource::ClosedForm;
    StepStatistics meta;
};

/// n + 1 points t_end * i / n, i = 0..n; the last point is exactly t_end.
std::vector<double> uniform_grid(double t_end, std::size_t intervals);

}  // namespace polyode
