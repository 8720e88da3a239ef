#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cfor/grid.hpp"
#include "cfor/kernel.hpp"

namespace cfor {

struct CforController;  // adaptive filtering hook, defined in controller.hpp

// reynolds = infinity selects the inviscid equation (diffusion term dropped).
// The derivative specs' delta is always taken from the grid; their orders are
// forced to 1 and 2.
struct ProblemSpec {
    double reynolds = 100.0;
    Grid grid{41, 0.0, 1.0};
    double dt = 0.01;
    double t_final = 1.0;
    KernelSpec deriv_spec_1{1.0, 4.5, 35, 1};
    KernelSpec deriv_spec_2{1.0, 4.5, 35, 2};
    bool conservative = false;  // flux form D1(u^2/2), for experimentation

    bool inviscid() const { return std::isinf(reynolds); }
    double viscosity() const { return inviscid() ? 0.0 : 1.0 / reynolds; }
    void validate() const;
};

struct SolverState {
    double t = 0.0;
    Field field;
};

struct TriggerEvent {
    double t;
    double measure_before;
    double measure_after;
};

enum class RunStatus { completed, blown_up };

struct SnapshotRecord {
    double requested_t;
    double actual_t;
    Field field;
};

struct RunTrace {
    RunStatus status = RunStatus::completed;
    double t_end = 0.0;
    Field initial_field;
    Field final_field;
    std::vector<SnapshotRecord> snapshots;
    // Filled only when a controller is attached: one entry per completed step.
    std::vector<double> measure_times;
    std::vector<double> measures;
    std::vector<double> measure_increments;
    std::vector<TriggerEvent> triggers;
    std::string blow_up_what;

    const Field* snapshot_at(double requested_t) const;
};

// u(x,0) = sin(pi x) with the endpoints pinned to exactly 0.
Field initial_condition(const Grid& grid);

// Precomputed DSC derivative tables for one problem; rhs and rk4_step share
// this one code path so stand-alone stepping reproduces run() bit for bit.
class BurgersOperator {
  public:
    explicit BurgersOperator(const ProblemSpec& problem);
    Field rhs(const SolverState& state) const;
    void rk4_step(SolverState& state) const;
    const ProblemSpec& problem() const { return problem_; }

  private:
    void derivative(const std::vector<double>& u, const std::vector<double>& weights,
                    bool even_extension, std::vector<double>& out) const;

    ProblemSpec problem_;
    int n_ = 0;
    double nu_ = 0.0;
    std::vector<double> w1_rev_;  // order-1 taps, reversed, 1/delta included
    std::vector<double> w2_rev_;  // order-2 taps, reversed, 1/delta^2 included
    std::vector<int> gather_idx_;
    std::vector<double> gather_sign_;
};

Field rhs(const SolverState& state, const ProblemSpec& problem);
SolverState rk4_step(const SolverState& state, const ProblemSpec& problem);

// Steps from t=0 to t_final; invokes the controller after every step when one
// is attached.  Blow-up (|u| > 1e3 or non-finite) ends the run with the
// partial trace instead of throwing.
RunTrace run(const ProblemSpec& problem, CforController* controller,
             const std::vector<double>& snapshot_times);

}  // namespace cfor
