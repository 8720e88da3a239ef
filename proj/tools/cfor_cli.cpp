// Command-line front end. One scenario per invocation:
//   dsc      uncontrolled run; snapshot/final CSVs and a run summary
//   cfor     controlled run; adds the trigger log and the final spectrum
//   fourier  uncontrolled run; spectrum CSVs for the final field and snapshots
//   filters  frequency-response CSVs for the conjugated filter trio (no run)
//   table1   error-norm table for the viscous reference problem
// All numeric output is written at full round-trip precision, and files are a
// pure function of the configuration (timing goes to stdout only).
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cfor/controller.hpp"
#include "cfor/exact.hpp"
#include "cfor/grid.hpp"
#include "cfor/kernel.hpp"
#include "cfor/solver.hpp"
#include "cfor/wavelet.hpp"

namespace {

constexpr int kExitBlowUp = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    std::string mode;
    std::string reynolds = "100";
    int n_points = 41;
    double dt = 0.01;
    double t_final = 1.0;
    int half_width = 35;
    double sigma_deriv = 4.5;
    double sigma_lowpass = 1.0;
    std::string eta = "auto";
    int scales = 3;
    std::vector<double> snapshot_times;
    std::string output_dir = ".";
};

double parse_reynolds(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF")
        return std::numeric_limits<double>::infinity();
    size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size() || !(value > 0.0) || !std::isfinite(value))
        throw std::invalid_argument("--re must be a positive number or \"inf\"");
    return value;
}

cfor::ProblemSpec problem_from(const RunConfig& cfg) {
    cfor::ProblemSpec p;
    p.reynolds = parse_reynolds(cfg.reynolds);
    p.grid.n_points = cfg.n_points;
    p.dt = cfg.dt;
    p.t_final = cfg.t_final;
    p.deriv_spec_1 = cfor::KernelSpec{1.0, cfg.sigma_deriv, cfg.half_width, 1};
    p.deriv_spec_2 = cfor::KernelSpec{1.0, cfg.sigma_deriv, cfg.half_width, 2};
    p.validate();
    return p;
}

cfor::CforController controller_from(const RunConfig& cfg) {
    cfor::CforController c;
    c.lowpass_spec = cfor::KernelSpec{1.0, cfg.sigma_lowpass, cfg.half_width, 0};
    c.scales = cfg.scales;
    c.eta = 1.0;  // placeholder so validate() sees a positive threshold
    c.validate();
    return c;
}

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << std::setprecision(17);
    return out;
}

// The closed form is validated for viscous runs up to moderate Reynolds
// number; beyond that the snapshot files carry only the numerical field.
bool exact_available(const cfor::ProblemSpec& p) {
    return !p.inviscid() && p.reynolds <= 500.0;
}

void write_field_csv(const std::filesystem::path& path, const cfor::Field& field,
                     double t, const cfor::ProblemSpec& p) {
    std::ofstream out = open_csv(path);
    const bool with_exact = exact_available(p);
    out << (with_exact ? "x,u,u_exact,error\n" : "x,u\n");
    cfor::ExactSolutionSpec es;
    es.reynolds = p.reynolds;
    for (int k = 0; k < field.grid.n_points; ++k) {
        const double x = field.grid.node(k);
        out << x << ',' << field.values[k];
        if (with_exact) {
            const double ue = cfor::cole_exact(x, t, es);
            out << ',' << ue << ',' << field.values[k] - ue;
        }
        out << '\n';
    }
}

void write_fourier_csv(const std::filesystem::path& path, const cfor::Field& field) {
    const cfor::FourierImage img = cfor::fourier_image(field);
    std::ofstream out = open_csv(path);
    out << "omega,magnitude\n";
    for (size_t i = 0; i < img.omega.size(); ++i)
        out << img.omega[i] << ',' << img.magnitude[i] << '\n';
}

void write_response_csv(const std::filesystem::path& path,
                        const cfor::FilterTaps& taps) {
    const cfor::FrequencyResponse resp = cfor::frequency_response(taps, 1001, true);
    const double nyquist = resp.omega.back();
    std::ofstream out = open_csv(path);
    out << "omega,magnitude\n";
    for (size_t i = 0; i < resp.omega.size(); ++i)
        out << resp.omega[i] / nyquist << ',' << resp.magnitude[i] << '\n';
}

std::string snapshot_name(const char* stem, double t) {
    std::ostringstream name;
    name << stem << "_t" << std::setprecision(6) << t << ".csv";
    return name.str();
}

void write_summary(const std::filesystem::path& path, const RunConfig& cfg,
                   const cfor::RunTrace& trace, double eta_used) {
    std::ofstream out = open_csv(path);
    out << "mode=" << cfg.mode << '\n'
        << "status="
        << (trace.status == cfor::RunStatus::completed ? "completed" : "blown_up")
        << '\n'
        << "t_end=" << trace.t_end << '\n'
        << "steps=" << std::llround(trace.t_end / cfg.dt) << '\n';
    if (cfg.mode == "cfor")
        out << "eta=" << eta_used << '\n'
            << "triggers=" << trace.triggers.size() << '\n';
    if (trace.status == cfor::RunStatus::completed) {
        double amp = 0.0;
        for (double v : trace.final_field.values) amp = std::max(amp, std::abs(v));
        out << "tv_final=" << cfor::total_variation(trace.final_field) << '\n'
            << "max_abs_final=" << amp << '\n';
    } else {
        out << "diagnostic=" << trace.blow_up_what << '\n';
    }
}

int run_scenario(const RunConfig& cfg, const std::string& effective_config) {
    const std::filesystem::path out_dir(cfg.output_dir);
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream cfg_out(out_dir / "config.txt");
        if (!cfg_out)
            throw std::runtime_error("cannot write " + (out_dir / "config.txt").string());
        cfg_out << effective_config;
    }

    if (cfg.mode == "filters") {
        // The trio that shares one effective bandwidth: the half-grid
        // smoother, the on-grid first derivative, and the half-grid second
        // derivative, each normalized to unit maximum over [0, pi/delta].
        const cfor::KernelSpec base{1.0, cfg.sigma_deriv, cfg.half_width, 0};
        for (int order = 0; order <= 2; ++order) {
            cfor::KernelSpec spec = base;
            spec.order = order;
            const cfor::Centering centering =
                order == 1 ? cfor::Centering::on_grid : cfor::Centering::half_grid;
            write_response_csv(out_dir / ("filter_order" + std::to_string(order) + ".csv"),
                               cfor::build_taps(spec, centering));
        }
        std::printf("filters: sigma=%g delta, W=%d -> 3 response CSVs in %s\n",
                    cfg.sigma_deriv, cfg.half_width, out_dir.string().c_str());
        return 0;
    }

    if (cfg.mode == "table1") {
        cfor::ProblemSpec p = problem_from(cfg);
        if (!exact_available(p))
            throw std::invalid_argument(
                "table1 needs the closed form: finite Reynolds <= 500");
        const std::vector<double> times = {0.4, 0.8, 1.2, 3.0, 10.0, 30.0, 60.0, 90.0};
        p.t_final = times.back();
        cfor::RunTrace trace = cfor::run(p, nullptr, times);
        if (trace.status != cfor::RunStatus::completed) {
            std::fprintf(stderr, "table1 run blew up: %s\n", trace.blow_up_what.c_str());
            return kExitBlowUp;
        }
        cfor::ExactSolutionSpec es;
        es.reynolds = p.reynolds;
        std::ofstream out = open_csv(out_dir / "table1.csv");
        out << "t,l_inf,l_1\n";
        std::printf("%8s  %12s  %12s\n", "t", "L_inf", "L_1");
        for (double t : times) {
            const cfor::ErrorReport r =
                cfor::error_norms(*trace.snapshot_at(t), t, es);
            out << t << ',' << r.l_inf << ',' << r.l_1 << '\n';
            std::printf("%8.1f  %12.4e  %12.4e\n", t, r.l_inf, r.l_1);
        }
        return 0;
    }

    // dsc, cfor, fourier: one time integration.
    cfor::ProblemSpec p = problem_from(cfg);
    cfor::CforController controller;
    double eta_used = 0.0;
    const bool controlled = cfg.mode == "cfor";
    if (controlled) {
        controller = controller_from(cfg);
        if (cfg.eta == "auto") {
            cfor::ProblemSpec ref = p;
            if (!exact_available(ref)) ref.reynolds = 100.0;
            eta_used = cfor::calibrate_eta(p, controller, ref);
        } else {
            size_t used = 0;
            eta_used = std::stod(cfg.eta, &used);
            if (used != cfg.eta.size() || !(eta_used > 0.0))
                throw std::invalid_argument("--eta must be \"auto\" or a positive number");
        }
        controller.eta = eta_used;
    }

    const auto t0 = std::chrono::steady_clock::now();
    cfor::RunTrace trace =
        cfor::run(p, controlled ? &controller : nullptr, cfg.snapshot_times);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_summary(out_dir / "run_summary.txt", cfg, trace, eta_used);
    const bool spectra = cfg.mode == "fourier";
    for (const cfor::SnapshotRecord& snap : trace.snapshots) {
        write_field_csv(out_dir / snapshot_name("snapshot", snap.requested_t),
                        snap.field, snap.actual_t, p);
        if (spectra)
            write_fourier_csv(out_dir / snapshot_name("fourier", snap.requested_t),
                              snap.field);
    }
    write_field_csv(out_dir / "u_final.csv", trace.final_field, trace.t_end, p);
    if (spectra || controlled)
        write_fourier_csv(out_dir / "fourier_final.csv", trace.final_field);
    if (controlled) {
        std::ofstream out = open_csv(out_dir / "triggers.csv");
        out << "t,measure_before,measure_after\n";
        for (const cfor::TriggerEvent& ev : trace.triggers)
            out << ev.t << ',' << ev.measure_before << ',' << ev.measure_after << '\n';
    }

    std::printf("%s: Re=%s, N=%d, dt=%g, t_final=%g", cfg.mode.c_str(),
                cfg.reynolds.c_str(), cfg.n_points, cfg.dt, cfg.t_final);
    if (controlled) std::printf(", eta=%.6g%s", eta_used, cfg.eta == "auto" ? " (auto)" : "");
    std::printf("\n");
    if (trace.status == cfor::RunStatus::completed) {
        std::printf("status: completed at t=%g (%lld steps, %.2f s)\n", trace.t_end,
                    static_cast<long long>(std::llround(trace.t_end / cfg.dt)), secs);
        if (controlled) {
            std::printf("triggers: %zu", trace.triggers.size());
            if (!trace.triggers.empty())
                std::printf(" (first at t=%g)", trace.triggers.front().t);
            std::printf("\n");
        }
        std::printf("TV(final)=%.6g\n", cfor::total_variation(trace.final_field));
        std::printf("outputs in %s\n", out_dir.string().c_str());
        return 0;
    }
    std::fprintf(stderr, "blow-up: %s (partial outputs in %s)\n",
                 trace.blow_up_what.c_str(), out_dir.string().c_str());
    return kExitBlowUp;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Burgers' equation solver with conjugated-filter shock control"};
    app.set_config("--config", "", "key=value config file; flags override it");
    app.add_option("--mode", cfg.mode, "dsc | cfor | fourier | filters | table1")
        ->required()
        ->check(CLI::IsMember({"dsc", "cfor", "fourier", "filters", "table1"}));
    app.add_option("--re", cfg.reynolds, "Reynolds number, or \"inf\" for inviscid")
        ->capture_default_str();
    app.add_option("--n", cfg.n_points, "grid points")->capture_default_str();
    app.add_option("--dt", cfg.dt, "time step")->capture_default_str();
    app.add_option("--t-final", cfg.t_final, "end time")->capture_default_str();
    app.add_option("--w", cfg.half_width, "kernel half-width")->capture_default_str();
    app.add_option("--sigma-deriv", cfg.sigma_deriv,
                   "derivative kernel width, units of the grid spacing")
        ->capture_default_str();
    app.add_option("--sigma-lowpass", cfg.sigma_lowpass,
                   "smoothing kernel width, units of the grid spacing")
        ->capture_default_str();
    app.add_option("--eta", cfg.eta, "trigger threshold, \"auto\" to calibrate")
        ->capture_default_str();
    app.add_option("--scales", cfg.scales, "wavelet scales in the measure")
        ->capture_default_str();
    app.add_option("--snapshots", cfg.snapshot_times, "snapshot times (comma separated)")
        ->delimiter(',');
    app.add_option("--out", cfg.output_dir, "output directory")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    try {
        return run_scenario(cfg, app.config_to_str(true, false));
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
}
