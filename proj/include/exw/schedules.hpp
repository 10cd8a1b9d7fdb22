// schedules.hpp
//
// Compilers for the three excitation-spreading protocols, their closed-form
// total times, and the spiral-of-Theodorus geometry behind the two serial
// ones. Point n of the spiral sits at radius sqrt(n) and cumulative angle
// theta_n; the interior angle alpha_n = asin(1/sqrt(n+1)) equals a flying
// gate time and the exterior angle beta_n = acos(1/sqrt(n+1)) equals a
// sequential gate time.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "exw/exchange_core.hpp"
#include "exw/kahan.hpp"

namespace exw {

enum class Protocol { flying, sequential, divide_conquer };

inline std::string to_string(Protocol p) {
    switch (p) {
        case Protocol::flying: return "flying";
        case Protocol::sequential: return "sequential";
        case Protocol::divide_conquer: return "divide_conquer";
    }
    throw std::invalid_argument("unknown protocol");
}

inline Protocol protocol_from_string(const std::string& s) {
    if (s == "flying") return Protocol::flying;
    if (s == "sequential") return Protocol::sequential;
    if (s == "divide_conquer") return Protocol::divide_conquer;
    throw std::invalid_argument("unknown protocol \"" + s + "\" (expected flying, sequential or "
                                "divide_conquer)");
}

/// An ordered gate list for one protocol instance. serial_time is the sum of
/// all gate durations; parallel_time sums, over stages, the longest gate of
/// each stage. The two serial protocols have one gate per stage, so there
/// the two times coincide.
struct Schedule {
    Protocol protocol = Protocol::flying;
    int n_qubits = 0;
    double lambda = 1.0;
    std::vector<PairGate> gates;
    double serial_time = 0.0;
    double parallel_time = 0.0;

    int n_stages() const {
        int m = 0;
        for (const PairGate& g : gates)
            if (g.stage && *g.stage + 1 > m) m = *g.stage + 1;
        return m;
    }
};

struct SpiralPoint {
    std::int64_t n = 0;
    double radius = 0.0;  // sqrt(n)
    double theta = 0.0;   // cumulative angle of point n; theta_1 = 0
    double alpha = 0.0;   // interior angle of triangle n
    double beta = 0.0;    // exterior angle; alpha + beta = pi/2
};

inline double spiral_alpha(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("spiral index must be >= 1");
    return std::asin(1.0 / std::sqrt(static_cast<double>(n + 1)));
}

inline double spiral_beta(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("spiral index must be >= 1");
    return std::acos(1.0 / std::sqrt(static_cast<double>(n + 1)));
}

/// theta_n = sum_{k=1}^{n-1} alpha_k, accumulated with compensation.
inline double spiral_theta(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("spiral index must be >= 1");
    KahanSum s;
    for (std::int64_t k = 1; k < n; ++k) s.add(spiral_alpha(k));
    return s.value();
}

inline std::vector<SpiralPoint> spiral_points(std::int64_t n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    std::vector<SpiralPoint> pts;
    pts.reserve(static_cast<std::size_t>(n_max));
    KahanSum theta;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        SpiralPoint p;
        p.n = n;
        p.radius = std::sqrt(static_cast<double>(n));
        p.theta = theta.value();
        p.alpha = spiral_alpha(n);
        p.beta = spiral_beta(n);
        pts.push_back(p);
        theta.add(p.alpha);
    }
    return pts;
}

namespace detail {

inline void check_protocol_size(int n) {
    if (n < 2) throw std::invalid_argument("protocol requires n >= 2 qubits");
}

inline Schedule finish_serial(Schedule s) {
    KahanSum sum;
    for (const PairGate& g : s.gates) sum.add(g.t);
    s.serial_time = sum.value();
    s.parallel_time = s.serial_time;
    return s;
}

}  // namespace detail

/// Qubit 0 interacts with qubits 1, 2, ..., n-1 in turn; gate k lasts
/// asin(1/sqrt(n-k)). Times increase strictly along the schedule.
inline Schedule flying_schedule(int n, Anisotropy lam = {}) {
    detail::check_protocol_size(n);
    Schedule s;
    s.protocol = Protocol::flying;
    s.n_qubits = n;
    s.lambda = lam.lambda;
    s.gates.reserve(static_cast<std::size_t>(n - 1));
    for (int k = 0; k + 1 < n; ++k) {
        const double t = std::asin(1.0 / std::sqrt(static_cast<double>(n - k)));
        s.gates.push_back(PairGate{0, k + 1, t, k});
    }
    return detail::finish_serial(std::move(s));
}

/// Adjacent pairs (0,1), (1,2), ..., (n-2,n-1) interact in turn; gate k
/// lasts acos(1/sqrt(n-k)). Times decrease strictly along the schedule.
inline Schedule sequential_schedule(int n, Anisotropy lam = {}) {
    detail::check_protocol_size(n);
    Schedule s;
    s.protocol = Protocol::sequential;
    s.n_qubits = n;
    s.lambda = lam.lambda;
    s.gates.reserve(static_cast<std::size_t>(n - 1));
    for (int k = 0; k + 1 < n; ++k) {
        const double t = std::acos(1.0 / std::sqrt(static_cast<double>(n - k)));
        s.gates.push_back(PairGate{k, k + 1, t, k});
    }
    return detail::finish_serial(std::move(s));
}

/// Hierarchical halving for n = 2^M: stage s (0-based) pairs qubit q with
/// q + n/2^(s+1) for every q that is a multiple of n/2^s. Every gate lasts
/// pi/4; stage s holds 2^s gates on disjoint pairs.
inline Schedule divide_conquer_schedule(int n, Anisotropy lam = {}) {
    detail::check_protocol_size(n);
    if (!std::has_single_bit(static_cast<unsigned>(n)))
        throw std::invalid_argument("n must be a power of two");
    const int m = std::countr_zero(static_cast<unsigned>(n));
    constexpr double quarter_pi = std::numbers::pi / 4.0;

    Schedule s;
    s.protocol = Protocol::divide_conquer;
    s.n_qubits = n;
    s.lambda = lam.lambda;
    s.gates.reserve(static_cast<std::size_t>(n - 1));
    for (int stage = 0; stage < m; ++stage) {
        const int step = n >> stage;       // spacing of already-excited qubits
        const int offset = n >> (stage + 1);
        for (int q = 0; q < n; q += step) s.gates.push_back(PairGate{q, q + offset, quarter_pi, stage});
    }
    s.serial_time = static_cast<double>(n - 1) * quarter_pi;
    s.parallel_time = static_cast<double>(m) * quarter_pi;
    return s;
}

inline Schedule compile_schedule(Protocol p, int n, Anisotropy lam = {}) {
    switch (p) {
        case Protocol::flying: return flying_schedule(n, lam);
        case Protocol::sequential: return sequential_schedule(n, lam);
        case Protocol::divide_conquer: return divide_conquer_schedule(n, lam);
    }
    throw std::invalid_argument("unknown protocol");
}

struct TotalTime {
    double serial = 0.0;
    double parallel = 0.0;
};

/// Closed-form totals without materializing a schedule: flying takes
/// theta_n, sequential takes (n-1)pi/2 - theta_n, divide-and-conquer takes
/// (n-1)pi/4 serially and M pi/4 with full stage parallelism.
inline TotalTime total_time(Protocol p, std::int64_t n) {
    if (n < 2) throw std::invalid_argument("protocol requires n >= 2 qubits");
    switch (p) {
        case Protocol::flying: {
            const double theta = spiral_theta(n);
            return {theta, theta};
        }
        case Protocol::sequential: {
            const double t = static_cast<double>(n - 1) * std::numbers::pi / 2.0 - spiral_theta(n);
            return {t, t};
        }
        case Protocol::divide_conquer: {
            if (!std::has_single_bit(static_cast<std::uint64_t>(n)))
                throw std::invalid_argument("n must be a power of two");
            const int m = std::countr_zero(static_cast<std::uint64_t>(n));
            constexpr double quarter_pi = std::numbers::pi / 4.0;
            return {static_cast<double>(n - 1) * quarter_pi, static_cast<double>(m) * quarter_pi};
        }
    }
    throw std::invalid_argument("unknown protocol");
}

/// Structural checks shared by every compiled schedule: n-1 gates, valid
/// disjoint-pair stages, principal-branch times, and totals consistent with
/// the gate list.
inline void validate(const Schedule& s) {
    if (s.n_qubits < 2) throw std::invalid_argument("schedule must cover n >= 2 qubits");
    if (s.gates.size() != static_cast<std::size_t>(s.n_qubits - 1))
        throw std::invalid_argument("schedule must contain exactly n-1 gates");
    constexpr double half_pi = std::numbers::pi / 2.0;
    std::vector<std::vector<int>> stage_qubits;
    KahanSum serial;
    for (const PairGate& g : s.gates) {
        detail::check_qubit_pair(s.n_qubits, g.a, g.b);
        if (!(g.t > 0.0) || g.t > half_pi)
            throw std::invalid_argument("compiled gate time must lie in (0, pi/2]");
        if (!g.stage || *g.stage < 0)
            throw std::invalid_argument("compiled gate must carry a non-negative stage index");
        if (static_cast<std::size_t>(*g.stage) >= stage_qubits.size())
            stage_qubits.resize(static_cast<std::size_t>(*g.stage) + 1);
        auto& used = stage_qubits[static_cast<std::size_t>(*g.stage)];
        for (int q : {g.a, g.b})
            for (int seen : used)
                if (q == seen)
                    throw std::invalid_argument("stage reuses qubit " + std::to_string(q));
        used.push_back(g.a);
        used.push_back(g.b);
        serial.add(g.t);
    }
    if (std::abs(s.serial_time - serial.value()) > 1e-12)
        throw std::invalid_argument("serial_time does not match the gate-time sum");
    KahanSum parallel;
    for (std::size_t st = 0; st < stage_qubits.size(); ++st) {
        double longest = 0.0;
        for (const PairGate& g : s.gates)
            if (g.stage && static_cast<std::size_t>(*g.stage) == st && g.t > longest) longest = g.t;
        parallel.add(longest);
    }
    if (std::abs(s.parallel_time - parallel.value()) > 1e-12)
        throw std::invalid_argument("parallel_time does not match the stage maxima");
}

}  // namespace exw
