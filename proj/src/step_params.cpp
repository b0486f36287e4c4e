#include <cmath>
#include <iostream>

#include "tdflow/error.hpp"
#include "tdflow/evolve.hpp"

namespace tdflow {

StepParams::StepParams(KernelSpec kernel, double t_) : spec(std::move(kernel)), t(t_) {
    require(std::isfinite(t) && t > 0.0, "StepParams: t must be positive");
    require(spec.threshold() > 0.0, "StepParams: kernel must have positive total mass");
}

double kernel_time(const KernelSpec& spec, double T, std::size_t n_steps, bool effective_time) {
    require(T > 0.0, "kernel_time: T must be positive");
    require(n_steps >= 1, "kernel_time: need at least one step");
    const double tau = T / static_cast<double>(n_steps);
    if (!effective_time) return tau;
    require(spec.step_ratio() > 0.0, "kernel_time: effective time needs a positive step ratio");
    return tau / spec.step_ratio();
}

void stderr_warning(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

}  // namespace tdflow
