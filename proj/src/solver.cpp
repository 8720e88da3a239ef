#include "cfor/solver.hpp"

#include <algorithm>
#include <cmath>

#include "cfor/controller.hpp"

namespace cfor {

void ProblemSpec::validate() const {
    grid.validate();
    if (grid.x_min != 0.0 || grid.x_max != 1.0)
        throw std::invalid_argument("ProblemSpec: domain must be [0, 1]");
    if (!(reynolds > 0.0)) throw std::invalid_argument("ProblemSpec: reynolds must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("ProblemSpec: dt must be positive");
    if (!(t_final >= 0.0) || !std::isfinite(t_final))
        throw std::invalid_argument("ProblemSpec: t_final must be finite and non-negative");
    if (deriv_spec_1.half_width >= grid.n_points || deriv_spec_2.half_width >= grid.n_points)
        throw std::invalid_argument("ProblemSpec: stencil half-width too large for the grid");
    if (deriv_spec_1.half_width != deriv_spec_2.half_width)
        throw std::invalid_argument("ProblemSpec: the derivative pair shares one stencil half-width");
}

const Field* RunTrace::snapshot_at(double requested_t) const {
    for (const SnapshotRecord& rec : snapshots)
        if (rec.requested_t == requested_t) return &rec.field;
    return nullptr;
}

Field initial_condition(const Grid& grid) {
    grid.validate();
    if (grid.x_min != 0.0 || grid.x_max != 1.0)
        throw std::invalid_argument("initial_condition: domain must be [0, 1]");
    const double pi = 3.14159265358979323846264338327950288;
    Field f{grid, std::vector<double>(grid.n_points)};
    for (int i = 0; i < grid.n_points; ++i) f.values[i] = std::sin(pi * grid.node(i));
    f.values[0] = 0.0;
    f.values[grid.n_points - 1] = 0.0;
    return f;
}

BurgersOperator::BurgersOperator(const ProblemSpec& problem) : problem_(problem) {
    problem_.validate();
    n_ = problem_.grid.n_points;
    nu_ = problem_.viscosity();
    const double dx = problem_.grid.spacing();
    const int w = problem_.deriv_spec_1.half_width;

    KernelSpec s1 = problem_.deriv_spec_1;
    s1.delta = dx;
    s1.order = 1;
    w1_rev_ = build_taps(s1, Centering::on_grid).weights;
    std::reverse(w1_rev_.begin(), w1_rev_.end());
    if (!problem_.inviscid()) {
        KernelSpec s2 = problem_.deriv_spec_2;
        s2.delta = dx;
        s2.order = 2;
        w2_rev_ = build_taps(s2, Centering::on_grid).weights;
        std::reverse(w2_rev_.begin(), w2_rev_.end());
    }

    // Antisymmetric extension about both boundaries, tabulated once.  With
    // w < n a single reflection covers every stencil position.
    const int width = 2 * w + 1;
    gather_idx_.resize(static_cast<size_t>(n_) * width);
    gather_sign_.resize(static_cast<size_t>(n_) * width);
    const int period = 2 * n_ - 2;
    for (int i = 0; i < n_; ++i) {
        for (int c = 0; c < width; ++c) {
            int p = i + c - w;
            double sign = 1.0;
            if (p < 0) p = -p;
            if (p >= n_) p = period - p;
            if (p >= n_ || p < 0)
                throw std::logic_error("BurgersOperator: stencil exceeded one reflection");
            if (i + c - w < 0 || i + c - w > n_ - 1) sign = -1.0;
            gather_idx_[static_cast<size_t>(i) * width + c] = p;
            gather_sign_[static_cast<size_t>(i) * width + c] = sign;
        }
    }
}

void BurgersOperator::derivative(const std::vector<double>& u,
                                 const std::vector<double>& weights, bool even_extension,
                                 std::vector<double>& out) const {
    const int w = problem_.deriv_spec_1.half_width;
    const int width = 2 * w + 1;
    out.resize(n_);
    for (int i = 0; i < n_; ++i) {
        const size_t base = static_cast<size_t>(i) * width;
        double acc = 0.0;
        for (int c = 0; c < width; ++c) {
            const double sign = even_extension ? 1.0 : gather_sign_[base + c];
            acc += weights[c] * sign * u[gather_idx_[base + c]];
        }
        out[i] = acc;
    }
}

Field BurgersOperator::rhs(const SolverState& state) const {
    if (static_cast<int>(state.field.values.size()) != n_)
        throw std::invalid_argument("rhs: field length does not match problem grid");
    const std::vector<double>& u = state.field.values;
    Field out{problem_.grid, std::vector<double>(n_)};
    std::vector<double> d1, d2;
    if (problem_.conservative) {
        // Flux form: u odd about the boundaries makes u^2/2 even there.
        std::vector<double> flux(n_);
        for (int i = 0; i < n_; ++i) flux[i] = 0.5 * u[i] * u[i];
        derivative(flux, w1_rev_, true, d1);
        for (int i = 0; i < n_; ++i) out.values[i] = -d1[i];
    } else {
        derivative(u, w1_rev_, false, d1);
        for (int i = 0; i < n_; ++i) out.values[i] = -u[i] * d1[i];
    }
    if (!problem_.inviscid()) {
        derivative(u, w2_rev_, false, d2);
        for (int i = 0; i < n_; ++i) out.values[i] += nu_ * d2[i];
    }
    for (int i = 0; i < n_; ++i) {
        if (!std::isfinite(out.values[i]))
            throw BlowUpError(state.t, i,
                              "rhs: non-finite value at t=" + std::to_string(state.t) +
                                  ", node " + std::to_string(i));
    }
    return out;
}

void BurgersOperator::rk4_step(SolverState& state) const {
    const double dt = problem_.dt;
    const std::vector<double>& u = state.field.values;
    SolverState stage{state.t, Field{problem_.grid, std::vector<double>(n_)}};

    const Field k1 = rhs(state);
    for (int i = 0; i < n_; ++i) stage.field.values[i] = u[i] + 0.5 * dt * k1.values[i];
    stage.t = state.t + 0.5 * dt;
    const Field k2 = rhs(stage);
    for (int i = 0; i < n_; ++i) stage.field.values[i] = u[i] + 0.5 * dt * k2.values[i];
    const Field k3 = rhs(stage);
    for (int i = 0; i < n_; ++i) stage.field.values[i] = u[i] + dt * k3.values[i];
    stage.t = state.t + dt;
    const Field k4 = rhs(stage);

    for (int i = 0; i < n_; ++i)
        state.field.values[i] +=
            dt / 6.0 * (k1.values[i] + 2.0 * k2.values[i] + 2.0 * k3.values[i] + k4.values[i]);
    state.field.values[0] = 0.0;
    state.field.values[n_ - 1] = 0.0;
    state.t += dt;
}

Field rhs(const SolverState& state, const ProblemSpec& problem) {
    return BurgersOperator(problem).rhs(state);
}

SolverState rk4_step(const SolverState& state, const ProblemSpec& problem) {
    SolverState next = state;
    BurgersOperator(problem).rk4_step(next);
    return next;
}

RunTrace run(const ProblemSpec& problem, CforController* controller,
             const std::vector<double>& snapshot_times) {
    const BurgersOperator op(problem);
    for (double st : snapshot_times)
        if (st < 0.0 || st > problem.t_final)
            throw std::invalid_argument("run: snapshot times must lie within [0, t_final]");

    RunTrace trace;
    trace.initial_field = initial_condition(problem.grid);
    SolverState state{0.0, trace.initial_field};
    std::vector<bool> recorded(snapshot_times.size(), false);

    auto record_snapshots = [&]() {
        for (size_t k = 0; k < snapshot_times.size(); ++k) {
            if (!recorded[k] && std::abs(state.t - snapshot_times[k]) < problem.dt / 2.0) {
                trace.snapshots.push_back({snapshot_times[k], state.t, state.field});
                recorded[k] = true;
            }
        }
    };
    record_snapshots();

    if (controller) {
        controller->reset();
        controller->validate();
        check_and_filter(state, *controller);  // seeds last_measure from the initial field
    }

    const long long steps = std::llround(problem.t_final / problem.dt);
    auto finish = [&](RunStatus status, const std::string& what) {
        trace.status = status;
        trace.t_end = state.t;
        trace.final_field = state.field;
        trace.blow_up_what = what;
        if (controller) trace.triggers = controller->event_log;
        return trace;
    };

    for (long long s = 1; s <= steps; ++s) {
        try {
            op.rk4_step(state);
        } catch (const BlowUpError& e) {
            return finish(RunStatus::blown_up, e.what());
        }
        for (int i = 0; i < problem.grid.n_points; ++i) {
            const double v = state.field.values[i];
            if (!std::isfinite(v) || std::abs(v) > 1e3)
                return finish(RunStatus::blown_up,
                              "solution diverged at t=" + std::to_string(state.t) + ", node " +
                                  std::to_string(i));
        }
        if (controller) {
            const double prev = controller->last_measure.value();
            const bool triggered = check_and_filter(state, *controller);
            const double now = controller->last_measure.value();
            const double raw = triggered ? controller->event_log.back().measure_before : now;
            trace.measure_times.push_back(state.t);
            trace.measures.push_back(now);
            trace.measure_increments.push_back(raw - prev);
        }
        record_snapshots();
    }
    return finish(RunStatus::completed, "");
}

}  // namespace cfor
