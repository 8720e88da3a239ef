#pragma once

#include <optional>
#include <vector>

#include "cfor/kernel.hpp"
#include "cfor/solver.hpp"
#include "cfor/wavelet.hpp"

namespace cfor {

// Measure-increment trigger: after each step the high-pass measure is
// compared with the previous step's value; an increment of at least eta
// applies the conjugated low-pass filter to the whole field.
struct CforController {
    double eta = 0.0;  // must be positive before use
    KernelSpec lowpass_spec{1.0, 1.0, 35, 0};
    WaveletFilterBank bank = WaveletFilterBank::cdf97();
    int scales = 3;
    int max_applications = 1;  // filter passes allowed within one step
    std::optional<double> last_measure;
    std::vector<TriggerEvent> event_log;

    void reset() {
        last_measure.reset();
        event_log.clear();
    }
    void validate() const;
};

// Computes the field's measure; on the first call just stores it.  When the
// increment over the stored measure reaches eta, smooths the field (up to
// max_applications passes, stopping early once the increment falls below
// eta), logs the event, and stores the post-filter measure.  Returns whether
// filtering happened.
bool check_and_filter(SolverState& state, CforController& controller);

// Runs the smooth reference uncontrolled on the target problem's grid and dt
// (horizon capped at min(problem.t_final, 3)), takes the largest per-step
// measure increment delta_max, and returns safety_factor * delta_max.
// The reference supplies the physics (reynolds, advection form); the target
// problem supplies the discretization that eta depends on.
double calibrate_eta(const ProblemSpec& problem, const CforController& controller_template,
                     const ProblemSpec& smooth_reference, double safety_factor = 2.0);

}  // namespace cfor
