#include "cfor/controller.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfor {

void CforController::validate() const {
    if (!(eta > 0.0)) throw std::invalid_argument("CforController: eta must be positive");
    if (scales < 1) throw std::invalid_argument("CforController: scales must be >= 1");
    if (max_applications < 1)
        throw std::invalid_argument("CforController: max_applications must be >= 1");
    if (lowpass_spec.order != 0)
        throw std::invalid_argument("CforController: lowpass_spec must be order 0");
    bank.validate();
}

bool check_and_filter(SolverState& state, CforController& controller) {
    controller.validate();
    const double m = highpass_measure(state.field, controller.bank, controller.scales).total;
    if (!controller.last_measure) {
        controller.last_measure = m;
        return false;
    }
    const double prev = *controller.last_measure;
    if (m - prev >= controller.eta) {
        double after = m;
        for (int a = 0; a < controller.max_applications; ++a) {
            state.field = conjugate_lowpass(state.field, controller.lowpass_spec);
            after = highpass_measure(state.field, controller.bank, controller.scales).total;
            if (after - prev < controller.eta) break;
        }
        controller.event_log.push_back({state.t, m, after});
        controller.last_measure = after;
        return true;
    }
    controller.last_measure = m;
    return false;
}

double calibrate_eta(const ProblemSpec& problem, const CforController& controller_template,
                     const ProblemSpec& smooth_reference, double safety_factor) {
    problem.validate();
    smooth_reference.validate();
    if (smooth_reference.inviscid())
        throw std::invalid_argument("calibrate_eta: smooth reference must be viscous");
    if (!(safety_factor > 1.0))
        throw std::invalid_argument(
            "calibrate_eta: safety_factor must exceed 1 for the zero-trigger guarantee");

    // eta scales with the target's dt and dx, so the reference run borrows the
    // target discretization and only takes its physics from smooth_reference.
    ProblemSpec reference = problem;
    reference.reynolds = smooth_reference.reynolds;
    reference.conservative = smooth_reference.conservative;
    reference.t_final = std::min(problem.t_final, 3.0);

    CforController probe = controller_template;
    probe.eta = 1e12;  // unreachable: the probe only records the measure
    const RunTrace trace = run(reference, &probe, {});
    if (trace.status != RunStatus::completed)
        throw std::runtime_error("calibrate_eta: reference run blew up at t=" +
                                 std::to_string(trace.t_end));
    if (trace.measure_increments.empty())
        throw std::runtime_error("calibrate_eta: degenerate calibration (no steps taken)");
    const double delta_max =
        *std::max_element(trace.measure_increments.begin(), trace.measure_increments.end());
    if (!(delta_max > 0.0))
        throw std::runtime_error(
            "calibrate_eta: degenerate calibration (reference measure never grows)");
    return safety_factor * delta_max;
}

}  // namespace cfor
