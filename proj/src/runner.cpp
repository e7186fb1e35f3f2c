#include "relax/runner.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "relax/euler_poisson.hpp"
#include "relax/fft.hpp"
#include "relax/init.hpp"
#include "relax/keller_segel.hpp"
#include "relax/limit_harness.hpp"
#include "relax/linear_analysis.hpp"
#include "relax/littlewood_paley.hpp"
#include "relax/snapshot_io.hpp"

namespace relax {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

struct SummaryInfo {
    std::string command;
    bool has_slope = false;
    double slope = 0.0, residual = 0.0;
    int violations = 0;
    bool pass = false;
    double wall_time_s = 0.0;
};

void write_summary(const fs::path& dir, const SummaryInfo& s) {
    json j;
    j["command"] = s.command;
    if (s.has_slope) {
        j["slope"] = s.slope;
        j["residual"] = s.residual;
    }
    j["violations"] = s.violations;
    j["pass"] = s.pass;
    j["wall_time_s"] = s.wall_time_s;
    std::ofstream os(dir / "summary.json");
    os << j.dump(2) << "\n";
}

SpectralField build_density(const RunConfig& cfg, const Grid& grid) {
    if (cfg.init_kind == "gaussian")
        return make_gaussian(grid, cfg.init_amplitude);
    if (cfg.init_kind == "single_mode")
        return make_single_mode(grid, cfg.init_amplitude);
    return make_random_band(grid, cfg.init_amplitude, grid.k_fund(),
                            std::max(1.0, 4.0 * grid.k_fund()), cfg.init_seed);
}

VectorField build_velocity(const RunConfig& cfg, const Grid& grid) {
    VectorField v = make_vector_field(grid);
    if (cfg.init_kind == "gaussian") {
        const double centers[3] = {0.35, 0.6, 0.45};
        for (int ax = 0; ax < grid.d; ++ax)
            v[ax] = make_gaussian(grid, cfg.init_amplitude, centers[ax % 3],
                                  centers[(ax + 1) % 3], centers[(ax + 2) % 3]);
    } else if (cfg.init_kind == "random_band") {
        for (int ax = 0; ax < grid.d; ++ax)
            v[ax] = make_random_band(grid, cfg.init_amplitude, grid.k_fund(),
                                     std::max(1.0, 4.0 * grid.k_fund()),
                                     cfg.init_seed + 1 + static_cast<std::uint64_t>(ax));
    }
    return v; // single_mode: density perturbation only
}

int cmd_linear_verify(const RunConfig&, const fs::path& dir, SummaryInfo& sum) {
    DecayReport rep = certify_default_sweep();
    std::ofstream os(dir / "certification.csv");
    os << "xi_norm,eps,t,measured,bound,margin\n";
    for (const auto& r : rep.rows)
        os << num(r.xi_norm) << ',' << num(r.eps) << ',' << num(r.t) << ','
           << num(r.measured) << ',' << num(r.bound) << ',' << num(r.margin) << "\n";
    std::ofstream notes(dir / "certification_notes.txt");
    notes << rep.note << "\n";
    sum.violations = rep.violations;
    sum.pass = rep.violations == 0;
    return sum.pass ? kExitOk : kExitCertification;
}

int cmd_besov(const RunConfig& cfg, const fs::path& dir, SummaryInfo& sum) {
    Grid grid(cfg.d, cfg.n, cfg.L);
    SpectralField u = build_density(cfg, grid);
    DyadicPartition part = build_partition(grid, cfg.epsilon);
    const double sd2 = 0.5 * grid.d;
    std::ofstream os(dir / "norms.csv");
    os << "time,s,regime,value,j_min,j_max\n";
    for (double s : {sd2 - 1.0, sd2, sd2 + 1.0})
        for (Regime r : {Regime::Full, Regime::Low, Regime::High, Regime::LowMinusEps,
                         Regime::LowPlusEps})
            os << num(0.0) << ',' << num(s) << ',' << regime_name(r) << ','
               << num(besov_norm(u, s, r, part)) << ',' << part.j_min << ','
               << part.j_max << "\n";
    sum.pass = true;
    return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, const fs::path& dir, SummaryInfo& sum) {
    Grid grid(cfg.d, cfg.n, cfg.L);
    ModelParams p;
    p.A = cfg.A;
    p.gamma = cfg.gamma;
    p.rho_bar = cfg.rho_bar;
    p.eps = cfg.epsilon;
    DyadicPartition part = build_partition(grid, cfg.epsilon);
    const double sd2 = 0.5 * grid.d;

    std::ofstream os(dir / "series.csv");
    os << "time";
    for (const char* sn : {"dm1", "d2", "dp1"})
        for (const char* rn : {"l", "h", "full"}) os << ",rho_" << sn << '_' << rn;
    os << ",w_d2,min_rho,cfl_limit\n";

    const int n_steps = static_cast<int>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
    int snap_id = 0;

    auto emit = [&](double time, const SpectralField& pert, double wn, double minrho,
                    double cfl) {
        os << num(time);
        for (double s : {sd2 - 1.0, sd2, sd2 + 1.0})
            for (Regime r : {Regime::Low, Regime::High, Regime::Full})
                os << ',' << num(besov_norm(pert, s, r, part));
        os << ',' << num(wn) << ',' << num(minrho) << ',' << num(cfl) << "\n";
    };

    try {
        if (cfg.model == "ep") {
            EPStepper stepper(grid, p, Frame::Rescaled);
            stepper.set_dt(cfg.dt);
            FlowState s = FlowState::equilibrium(grid);
            s.rho_pert = build_density(cfg, grid);
            s.v = build_velocity(cfg, grid);
            auto observe = [&](int k) {
                if (k % cfg.norm_stride == 0 || k == n_steps)
                    emit(s.time, s.rho_pert,
                         besov_norm(damped_mode(s, p), sd2, Regime::Full, part),
                         stepper.min_density(s), stepper.cfl_limit(s));
                if (cfg.snapshot_stride > 0 && (k % cfg.snapshot_stride == 0 || k == n_steps)) {
                    char name[32];
                    std::snprintf(name, sizeof name, "snap_%05d.rlxf", snap_id++);
                    save_snapshot((dir / name).string(), s.rho_pert, s.time);
                }
            };
            observe(0);
            for (int k = 1; k <= n_steps; ++k) {
                stepper.step(s);
                observe(k);
            }
        } else {
            KSStepper stepper(grid, p);
            stepper.set_dt(cfg.dt);
            KSState s = KSState::equilibrium(grid);
            s.n_pert = build_density(cfg, grid);
            auto observe = [&](int k) {
                if (k % cfg.norm_stride == 0 || k == n_steps)
                    emit(s.time, s.n_pert, 0.0, stepper.min_density(s),
                         std::numeric_limits<double>::infinity());
                if (cfg.snapshot_stride > 0 && (k % cfg.snapshot_stride == 0 || k == n_steps)) {
                    char name[32];
                    std::snprintf(name, sizeof name, "snap_%05d.rlxf", snap_id++);
                    save_snapshot((dir / name).string(), s.n_pert, s.time);
                }
            };
            observe(0);
            for (int k = 1; k <= n_steps; ++k) {
                stepper.step(s);
                observe(k);
            }
        }
    } catch (const VacuumError& e) {
        std::cerr << "simulate aborted: " << e.what() << "\n";
        return kExitBlowUp;
    } catch (const BlowUpError& e) {
        std::cerr << "simulate aborted: " << e.what() << "\n";
        return kExitBlowUp;
    } catch (const StepSizeError& e) {
        std::cerr << "simulate aborted: " << e.what() << "\n";
        return kExitBlowUp;
    }
    sum.pass = true;
    return kExitOk;
}

void write_gnuplot_stub(const fs::path& dir, const std::string& study) {
    std::ofstream gp(dir / "study.gp");
    gp << "set logscale xy\n"
       << "set xlabel 'epsilon'\n"
       << "set ylabel 'error'\n"
       << "set datafile separator ','\n"
       << "plot '" << study << ".csv' using 1:2 with linespoints title '" << study << "'\n";
}

int cmd_limit_study(const RunConfig& cfg, const fs::path& dir, SummaryInfo& sum) {
    Grid grid(cfg.d, cfg.n, cfg.L);
    LadderConfig lc;
    lc.grid = grid;
    lc.base.A = cfg.A;
    lc.base.gamma = cfg.gamma;
    lc.base.rho_bar = cfg.rho_bar;
    lc.base.eps = 0.1;
    lc.epsilons = cfg.ladder_epsilons;
    lc.t_final = cfg.t_final;
    lc.dt_main = cfg.dt;
    lc.amp_rho = cfg.init_amplitude;
    lc.amp_v = 2.0 * cfg.init_amplitude;
    lc.band_lo = grid.k_fund();
    lc.band_hi = std::max(1.0, 4.0 * grid.k_fund());
    lc.seed = cfg.init_seed;

    if (cfg.study == "frame_consistency") {
        std::ofstream os(dir / "frame_consistency.csv");
        os << "eps,max_relative_error\n";
        double worst = 0.0;
        for (double e : lc.epsilons) {
            const double err = frame_consistency_error(lc, e);
            worst = std::max(worst, err);
            os << num(e) << ',' << num(err) << "\n";
        }
        sum.pass = std::isfinite(worst);
        std::cout << "frame_consistency max_error=" << num(worst) << "\n";
        return kExitOk;
    }

    StudyReport rep = cfg.study == "damped_mode" ? damped_mode_decay_study(lc)
                                                 : ep_ks_convergence_study(lc);
    const std::string name = cfg.study;
    std::ofstream os(dir / (name + ".csv"));
    os << "eps,value,l1_high,l1_low,horizon,tail_fraction,completed,error\n";
    for (const auto& r : rep.rows)
        os << num(r.eps) << ',' << num(r.value) << ',' << num(r.l1_high) << ','
           << num(r.l1_low) << ',' << num(r.horizon) << ',' << num(r.tail_fraction) << ','
           << (r.completed ? 1 : 0) << ',' << r.error << "\n";
    write_gnuplot_stub(dir, name);

    std::cout << rep.summary << "\n";
    sum.has_slope = rep.fit.defined;
    sum.slope = rep.fit.slope;
    sum.residual = rep.fit.residual_max;
    sum.pass = rep.pass;
    return rep.complete ? kExitOk : kExitBlowUp;
}

} // namespace

int run_command(const std::string& command, const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::cerr << "cannot create output directory " << dir << "\n";
        return kExitConfig;
    }
    {
        std::ofstream echo(dir / "config_effective.json");
        echo << config_echo(cfg) << "\n";
    }

    SummaryInfo sum;
    sum.command = command;
    int code = kExitConfig;
    if (command == "linear-verify")
        code = cmd_linear_verify(cfg, dir, sum);
    else if (command == "besov")
        code = cmd_besov(cfg, dir, sum);
    else if (command == "simulate")
        code = cmd_simulate(cfg, dir, sum);
    else if (command == "limit-study")
        code = cmd_limit_study(cfg, dir, sum);
    else {
        std::cerr << "unknown command: " << command << "\n";
        return kExitConfig;
    }

    sum.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_summary(dir, sum);
    return code;
}

} // namespace relax
