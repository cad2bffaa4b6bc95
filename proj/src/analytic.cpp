#include "grover/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "grover/circuit.hpp"

namespace grover {

AnalyticParams analytic_params(const GroverInstance& instance,
                               std::optional<int> iterations) {
    const double n_total = static_cast<double>(instance.dimension());
    const double m = static_cast<double>(instance.marked_count());
    AnalyticParams params;
    params.theta = std::asin(std::sqrt(m / n_total));
    params.iterations = iterations.value_or(
        optimal_iterations(instance.n_qubits(), instance.marked_count()));
    if (params.iterations < 0) {
        throw std::invalid_argument("iterations must be >= 0");
    }
    const double amp = std::sin((2.0 * params.iterations + 1.0) * params.theta);
    const double marked_total = amp * amp;
    params.marked_prob_each = marked_total / m;
    params.unmarked_prob_each = (1.0 - marked_total) / (n_total - m);
    return params;
}

Distribution analytic_distribution(const GroverInstance& instance,
                                   std::optional<int> iterations) {
    const AnalyticParams params = analytic_params(instance, iterations);
    std::map<std::string, double> marked;
    for (const auto& bits : instance.marked()) {
        marked.emplace(bits, params.marked_prob_each);
    }
    // floating-point noise can push the complement a hair below zero
    const double unmarked = params.unmarked_prob_each < 0.0
                                ? 0.0
                                : params.unmarked_prob_each;
    return Distribution::two_value(instance.n_qubits(), std::move(marked), unmarked);
}

std::vector<std::pair<int, double>> amplitude_trajectory(
    const GroverInstance& instance, int max_iterations) {
    if (max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 0");
    const double theta = analytic_params(instance, 0).theta;
    std::vector<std::pair<int, double>> trajectory;
    trajectory.reserve(static_cast<std::size_t>(max_iterations) + 1);
    for (int k = 0; k <= max_iterations; ++k) {
        trajectory.emplace_back(k, std::sin((2.0 * k + 1.0) * theta));
    }
    return trajectory;
}

}  // namespace grover
