#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "grover/distribution.hpp"
#include "grover/instance.hpp"

namespace grover {

// Closed-form Grover amplitudes. After k iterations the marked subspace
// carries sin^2((2k+1)*theta) of the probability mass, theta = asin(sqrt(M/N)).
struct AnalyticParams {
    double theta = 0.0;
    int iterations = 0;
    double marked_prob_each = 0.0;
    double unmarked_prob_each = 0.0;
};

AnalyticParams analytic_params(const GroverInstance& instance,
                               std::optional<int> iterations = std::nullopt);

// Two-value distribution: each marked string gets sin^2((2k+1)theta)/M,
// every other string cos^2((2k+1)theta)/(N-M). Valid for any supported n
// without touching 2^n entries.
Distribution analytic_distribution(const GroverInstance& instance,
                                   std::optional<int> iterations = std::nullopt);

// Marked amplitude sin((2k+1)theta) for k = 0..max_iterations.
std::vector<std::pair<int, double>> amplitude_trajectory(
    const GroverInstance& instance, int max_iterations);

}  // namespace grover
