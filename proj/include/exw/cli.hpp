// cli.hpp
//
// The `exw` command line: `synth` compiles and simulates one protocol,
// `sweep` tabulates total times against qubit count, `spiral` exports the
// spiral geometry, and `verify` runs the oracle cross-checks. Exit codes:
// 0 success, 1 check or I/O failure, 2 invalid arguments.

#pragma once

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "exw/exchange_core.hpp"
#include "exw/io.hpp"
#include "exw/schedules.hpp"
#include "exw/verification.hpp"

namespace exw {

namespace cli_detail {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

inline std::string fmt6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

/// Runs `body` against the stream named by `path` ("-" or "" meaning
/// `fallback`, normally stdout). Returns kExitFailure on I/O trouble.
inline int with_sink(const std::string& path, std::ostream& fallback, std::ostream& err,
                     const std::function<void(std::ostream&)>& body) {
    if (path.empty() || path == "-") {
        body(fallback);
        return kExitOk;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        err << "error: cannot open \"" << path << "\" for writing\n";
        return kExitFailure;
    }
    body(file);
    file.flush();
    if (!file) {
        err << "error: write to \"" << path << "\" failed\n";
        return kExitFailure;
    }
    return kExitOk;
}

struct SynthArgs {
    std::string protocol;
    int n = 0;
    double lambda = 1.0;
    std::string out_state = "-";
    std::string out_schedule;
};

inline int run_synth(const SynthArgs& a, std::ostream& out, std::ostream& err) {
    Schedule schedule;
    TargetReport report;
    SubspaceState state = make_initial_subspace(2);
    try {
        schedule = compile_schedule(protocol_from_string(a.protocol), a.n, Anisotropy{a.lambda});
        state = run_schedule(schedule);
        report = check_target(state);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    out << "protocol = " << to_string(schedule.protocol) << ", n = " << schedule.n_qubits
        << ", lambda = " << fmt6(schedule.lambda) << "\n";
    out << "serial_time = " << fmt6(schedule.serial_time)
        << ", parallel_time = " << fmt6(schedule.parallel_time) << "\n";
    out << "max_magnitude_error = " << fmt6(report.max_magnitude_error) << "\n";
    out << "phase_spread = " << fmt6(phase_spread(report.phases)) << "\n";

    if (!a.out_schedule.empty()) {
        const int rc = with_sink(a.out_schedule, out, err, [&](std::ostream& os) {
            os << schedule_to_json(schedule) << "\n";
        });
        if (rc != kExitOk) return rc;
    }
    return with_sink(a.out_state, out, err, [&](std::ostream& os) { write_state_csv(os, state); });
}

struct SweepArgs {
    std::string protocols = "flying,sequential,divide_conquer";
    std::int64_t n_min = 2;
    std::int64_t n_max = 1024;
    std::int64_t step = 0;  // 0 = geometric grid (powers of two)
    std::string out = "-";
};

inline std::vector<std::int64_t> sweep_grid(std::int64_t n_min, std::int64_t n_max, std::int64_t step) {
    std::vector<std::int64_t> grid;
    if (step > 0) {
        for (std::int64_t n = n_min; n <= n_max; n += step) grid.push_back(n);
    } else {
        std::int64_t n = 2;
        while (n < n_min) n *= 2;
        for (; n <= n_max; n *= 2) grid.push_back(n);
    }
    return grid;
}

inline int run_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
    if (a.n_min < 2 || a.n_max < a.n_min || a.step < 0) {
        err << "error: sweep requires 2 <= n-min <= n-max and step >= 0\n";
        return kExitUsage;
    }
    bool want_flying = false, want_sequential = false, want_dc = false;
    try {
        std::string rest = a.protocols;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string item = rest.substr(0, comma);
            rest = comma == std::string::npos ? std::string{} : rest.substr(comma + 1);
            switch (protocol_from_string(item)) {
                case Protocol::flying: want_flying = true; break;
                case Protocol::sequential: want_sequential = true; break;
                case Protocol::divide_conquer: want_dc = true; break;
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const std::vector<std::int64_t> grid = sweep_grid(a.n_min, a.n_max, a.step);
    return with_sink(a.out, out, err, [&](std::ostream& os) {
        os << "n,flying_serial,sequential_serial,dc_serial,dc_parallel,"
              "flying_asymptotic,sequential_asymptotic,dc_serial_asymptotic,dc_parallel_asymptotic\n";
        KahanSum theta;
        std::int64_t theta_n = 1;
        constexpr double half_pi = std::numbers::pi / 2.0;
        constexpr double quarter_pi = std::numbers::pi / 4.0;
        for (std::int64_t n : grid) {
            while (theta_n < n) {
                theta.add(spiral_alpha(theta_n));
                ++theta_n;
            }
            const double th = theta.value();
            const bool pow2 = (n & (n - 1)) == 0;
            os << n << ',';
            if (want_flying) os << fmt17(th);
            os << ',';
            if (want_sequential) os << fmt17(static_cast<double>(n - 1) * half_pi - th);
            os << ',';
            if (want_dc && pow2) os << fmt17(static_cast<double>(n - 1) * quarter_pi);
            os << ',';
            if (want_dc && pow2) {
                int m = 0;
                for (std::int64_t v = n; v > 1; v >>= 1) ++m;
                os << fmt17(static_cast<double>(m) * quarter_pi);
            }
            const double sqrt_n = std::sqrt(static_cast<double>(n));
            os << ',' << fmt17(2.0 * sqrt_n) << ','
               << fmt17(static_cast<double>(n - 1) * half_pi - 2.0 * sqrt_n) << ','
               << fmt17(static_cast<double>(n - 1) * quarter_pi) << ','
               << fmt17(quarter_pi * std::log2(static_cast<double>(n))) << '\n';
        }
    });
}

struct SpiralArgs {
    std::int64_t n_max = 0;
    std::string out = "-";
};

inline int run_spiral(const SpiralArgs& a, std::ostream& out, std::ostream& err) {
    if (a.n_max < 1) {
        err << "error: spiral requires n-max >= 1\n";
        return kExitUsage;
    }
    return with_sink(a.out, out, err, [&](std::ostream& os) {
        os << "n,radius,alpha,beta,theta\n";
        KahanSum theta;
        for (std::int64_t n = 1; n <= a.n_max; ++n) {
            const double alpha = spiral_alpha(n);
            os << n << ',' << fmt17(std::sqrt(static_cast<double>(n))) << ',' << fmt17(alpha)
               << ',' << fmt17(spiral_beta(n)) << ',' << fmt17(theta.value()) << '\n';
            theta.add(alpha);
        }
    });
}

struct VerifyArgs {
    int n_max_oracle = 8;
    std::uint64_t seed = 42;
    bool inject_phase_bug = false;
};

inline int run_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    if (a.n_max_oracle < 2 || a.n_max_oracle > 10) {
        err << "error: n-max-oracle must lie in [2, 10]\n";
        return kExitUsage;
    }
    const double lambdas[] = {0.0, 0.5, 1.0, 2.0};
    std::string first_failure;
    auto row = [&](const std::string& check, const std::string& params, double value,
                   const std::string& limit, bool ok) {
        char line[160];
        std::snprintf(line, sizeof line, "%-18s %-24s %-14s %-12s %s", check.c_str(),
                      params.c_str(), fmt6(value).c_str(), limit.c_str(), ok ? "PASS" : "FAIL");
        out << line << "\n";
        if (!ok && first_failure.empty()) first_failure = check;
    };

    out << "seed = " << a.seed << ", n_max_oracle = " << a.n_max_oracle << "\n";
    char header[160];
    std::snprintf(header, sizeof header, "%-18s %-24s %-14s %-12s %s", "check", "params", "value",
                  "limit", "result");
    out << header << "\n";

    for (int n = 2; n <= a.n_max_oracle; ++n)
        for (double lam : lambdas) {
            const std::uint64_t seed = a.seed + 1000 * static_cast<std::uint64_t>(n) +
                                       static_cast<std::uint64_t>(lam * 10);
            const double dev = oracle_crosscheck(n, 50, seed, Anisotropy{lam}, a.inject_phase_bug);
            row("oracle_crosscheck", "n=" + std::to_string(n) + " lambda=" + fmt6(lam), dev,
                "<= 1e-12", dev <= 1e-12);
        }

    for (int n = 2; n <= a.n_max_oracle; ++n) {
        const double dev = w_invariance_check(n, 100, a.seed + 5000 + static_cast<std::uint64_t>(n));
        row("w_invariance", "n=" + std::to_string(n) + " lambda=1", dev, "<= 1e-12", dev <= 1e-12);
    }

    const int n_no_go = std::max(3, a.n_max_oracle);
    int n_dc = 4;
    while (n_dc * 2 <= std::max(4, a.n_max_oracle)) n_dc *= 2;
    const std::pair<Protocol, int> no_go_cases[] = {{Protocol::flying, n_no_go},
                                                    {Protocol::sequential, n_no_go},
                                                    {Protocol::divide_conquer, n_dc}};
    for (const auto& [proto, n] : no_go_cases) {
        double spread = 0.0;
        bool ok = true;
        try {
            spread = no_go_demonstration(proto, n, Anisotropy{1.0}).spread;
        } catch (const std::runtime_error&) {
            ok = false;
        }
        row("no_go_" + to_string(proto), "n=" + std::to_string(n) + " lambda=1", spread, "> 0.1",
            ok && spread > 0.1);
    }

    if (!first_failure.empty()) {
        out << "verify: FAIL (" << first_failure << ")\n";
        return kExitFailure;
    }
    out << "verify: all checks passed\n";
    return kExitOk;
}

}  // namespace cli_detail

/// Parses and runs one CLI invocation. `args` excludes the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pairwise-exchange protocol compiler and single-excitation simulator"};
    app.name("exw");
    app.require_subcommand(1);

    cli_detail::SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "compile one protocol, simulate it, report the "
                                                  "target error and export state/schedule");
    synth->add_option("--protocol", synth_args.protocol,
                      "flying, sequential or divide_conquer")->required();
    synth->add_option("--n", synth_args.n, "number of qubits (>= 2)")->required();
    synth->add_option("--lambda", synth_args.lambda, "XXZ anisotropy (default 1)");
    synth->add_option("--out-state", synth_args.out_state,
                      "state CSV destination; \"-\" = stdout (default)");
    synth->add_option("--out-schedule", synth_args.out_schedule,
                      "schedule JSON destination; omitted = not written");

    cli_detail::SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "tabulate total times vs qubit count as CSV");
    sweep->add_option("--protocols", sweep_args.protocols, "comma-separated protocol list");
    sweep->add_option("--n-min", sweep_args.n_min, "smallest qubit count (>= 2)");
    sweep->add_option("--n-max", sweep_args.n_max, "largest qubit count");
    sweep->add_option("--step", sweep_args.step,
                      "linear grid step; 0 (default) walks powers of two");
    sweep->add_option("--out", sweep_args.out, "CSV destination; \"-\" = stdout (default)");

    cli_detail::SpiralArgs spiral_args;
    CLI::App* spiral = app.add_subcommand("spiral", "export spiral geometry (n, radius, angles) as CSV");
    spiral->add_option("--n-max", spiral_args.n_max, "largest spiral index")->required();
    spiral->add_option("--out", spiral_args.out, "CSV destination; \"-\" = stdout (default)");

    cli_detail::VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "cross-check the fast engine against the "
                                                    "full-space oracle and print a pass/fail table");
    verify->add_option("--n-max-oracle", verify_args.n_max_oracle,
                       "largest qubit count for full-space checks (<= 10)");
    verify->add_option("--seed", verify_args.seed, "RNG seed for randomized checks")
        ->envname("EXW_SEED");
    verify->add_flag("--inject-phase-bug", verify_args.inject_phase_bug,
                     "self-test hook: spoil a phase so oracle_crosscheck must fail");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? cli_detail::kExitOk : cli_detail::kExitUsage;
    }

    try {
        if (synth->parsed()) return cli_detail::run_synth(synth_args, out, err);
        if (sweep->parsed()) return cli_detail::run_sweep(sweep_args, out, err);
        if (spiral->parsed()) return cli_detail::run_spiral(spiral_args, out, err);
        if (verify->parsed()) return cli_detail::run_verify(verify_args, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return cli_detail::kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return cli_detail::kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return cli_detail::kExitFailure;
    }
    err << "error: no subcommand given\n";
    return cli_detail::kExitUsage;
}

}  // namespace exw
