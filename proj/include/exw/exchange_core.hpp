// exchange_core.hpp
//
// Exact complex-amplitude representations of an N-qubit register restricted
// to the single-excitation sector, plus a full 2^N state vector used as a
// brute-force oracle, and the XXZ pair-exchange unitary acting on both.
//
// The pair unitary, for qubits A and B interacting for time t (in units of
// 2*hbar/J) with anisotropy lambda, acts as
//
//   opposite spins:  exp(i*lambda*t/2) * (cos t * 1 - i sin t * swap)
//   equal spins:     exp(-i*lambda*t/2)
//
// In the single-excitation sector only the two components with the
// excitation on A or B mix; every other component sits in the equal-spin
// sector of the pair and picks up exp(-i*lambda*t/2). SubspaceState folds
// that spectator factor into a single lazily tracked global phase, so one
// gate touches O(1) amplitudes regardless of N.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exw/kahan.hpp"

namespace exw {

using cplx = std::complex<double>;

/// XXZ anisotropy; lambda = 1 is the isotropic Heisenberg point.
struct Anisotropy {
    double lambda = 1.0;
};

/// One exchange pulse: qubit pair (a, b), duration t in units of 2*hbar/J.
/// Compiled schedules also assign a 0-based stage index; gates sharing a
/// stage act on disjoint pairs and may run concurrently.
struct PairGate {
    int a = 0;
    int b = 0;
    double t = 0.0;
    std::optional<int> stage{};
};

namespace detail {

inline void check_qubit_pair(int n_qubits, int a, int b) {
    if (a < 0 || a >= n_qubits || b < 0 || b >= n_qubits)
        throw std::out_of_range("qubit index out of range: pair (" + std::to_string(a) + ", " +
                                std::to_string(b) + ") on " + std::to_string(n_qubits) +
                                " qubits");
    if (a == b)
        throw std::invalid_argument("pair gate requires two distinct qubits, got (" +
                                    std::to_string(a) + ", " + std::to_string(b) + ")");
}

inline void check_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

inline double norm2_of(std::span<const cplx> amps) {
    KahanSum s;
    for (const cplx& a : amps) s.add(std::norm(a));
    return s.value();
}

inline void check_amps_finite(std::span<const cplx> amps) {
    for (const cplx& a : amps)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::invalid_argument("amplitude must be finite");
}

}  // namespace detail

/// Amplitudes c_j for the excitation sitting on qubit j, times a unit-modulus
/// global phase that is only applied when the state is materialized. Gates
/// update two amplitudes and the phase; nothing else is touched.
class SubspaceState {
  public:
    /// Excitation on qubit 0, all other qubits in the ground state.
    explicit SubspaceState(int n_qubits) {
        if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
        amps_.assign(static_cast<std::size_t>(n_qubits), cplx{0.0, 0.0});
        amps_[0] = cplx{1.0, 0.0};
        norm2_ = 1.0;
    }

    explicit SubspaceState(std::vector<cplx> amps, cplx global_phase = {1.0, 0.0})
        : amps_(std::move(amps)), global_phase_(global_phase) {
        if (amps_.empty()) throw std::invalid_argument("n_qubits must be >= 1");
        detail::check_amps_finite(amps_);
        if (std::abs(std::abs(global_phase_) - 1.0) > 1e-9)
            throw std::invalid_argument("global_phase must have unit modulus");
        norm2_ = detail::norm2_of(amps_);
    }

    int n_qubits() const { return static_cast<int>(amps_.size()); }
    std::span<const cplx> amps() const { return amps_; }

    /// Raw amplitude, without the global phase.
    cplx amp(int j) const { return amps_.at(static_cast<std::size_t>(j)); }

    cplx global_phase() const { return global_phase_; }

    double norm() const { return std::sqrt(detail::norm2_of(amps_)); }

    /// Exchange pulse on qubits (a, b) for time t. O(1): the spectator
    /// factor exp(-i*lambda*t/2) goes into the global phase and the pair is
    /// compensated with the relative factor exp(i*lambda*t).
    void apply_gate(int a, int b, double t, Anisotropy lam) {
        detail::check_qubit_pair(n_qubits(), a, b);
        detail::check_finite(t, "gate time");
        detail::check_finite(lam.lambda, "lambda");
        if (std::abs(std::sqrt(norm2_) - 1.0) > 1e-9)
            throw std::runtime_error("state is not normalized (norm deviation > 1e-9)");

        const cplx pa = amps_[static_cast<std::size_t>(a)];
        const cplx pb = amps_[static_cast<std::size_t>(b)];
        const double ct = std::cos(t);
        const double st = std::sin(t);
        const cplx mix = std::polar(1.0, lam.lambda * t);
        const cplx na = mix * (ct * pa - cplx{0.0, 1.0} * st * pb);
        const cplx nb = mix * (ct * pb - cplx{0.0, 1.0} * st * pa);

        norm2_ += (std::norm(na) + std::norm(nb)) - (std::norm(pa) + std::norm(pb));
        amps_[static_cast<std::size_t>(a)] = na;
        amps_[static_cast<std::size_t>(b)] = nb;
        global_phase_ *= std::polar(1.0, -lam.lambda * t / 2.0);
    }

    void apply_gate(const PairGate& g, Anisotropy lam) { apply_gate(g.a, g.b, g.t, lam); }

  private:
    std::vector<cplx> amps_;
    cplx global_phase_{1.0, 0.0};
    double norm2_ = 1.0;  // tracked incrementally so the gate guard stays O(1)
};

inline SubspaceState make_initial_subspace(int n_qubits) { return SubspaceState(n_qubits); }

/// Amplitudes with the global phase applied.
inline std::vector<cplx> materialize(const SubspaceState& s) {
    std::vector<cplx> out(s.amps().begin(), s.amps().end());
    for (cplx& a : out) a *= s.global_phase();
    return out;
}

/// Full 2^N state vector, indexed by bitstring with bit j set iff qubit j is
/// excited. Verification oracle only; capped at 20 qubits.
class FullState {
  public:
    static constexpr int kMaxQubits = 20;

    /// All qubits in the ground state.
    explicit FullState(int n_qubits) : n_(checked_n(n_qubits)) {
        amps_.assign(std::size_t{1} << n_, cplx{0.0, 0.0});
        amps_[0] = cplx{1.0, 0.0};
    }

    FullState(int n_qubits, std::vector<cplx> amps) : n_(checked_n(n_qubits)), amps_(std::move(amps)) {
        if (amps_.size() != (std::size_t{1} << n_))
            throw std::invalid_argument("amplitude vector has wrong length for n_qubits");
        detail::check_amps_finite(amps_);
    }

    static FullState basis_state(int n_qubits, std::size_t index) {
        FullState s(n_qubits);
        if (index >= s.dim()) throw std::out_of_range("basis index out of range");
        s.amps_[0] = cplx{0.0, 0.0};
        s.amps_[index] = cplx{1.0, 0.0};
        return s;
    }

    /// Equal-magnitude, equal-phase superposition of the N one-hot states.
    static FullState w_state(int n_qubits) {
        FullState s(n_qubits);
        s.amps_[0] = cplx{0.0, 0.0};
        const double a = 1.0 / std::sqrt(static_cast<double>(n_qubits));
        for (int j = 0; j < n_qubits; ++j) s.amps_[std::size_t{1} << j] = cplx{a, 0.0};
        return s;
    }

    int n_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const cplx> amps() const { return amps_; }
    cplx amp(std::size_t index) const { return amps_.at(index); }

    double norm() const { return std::sqrt(detail::norm2_of(amps_)); }

    /// The exact 4x4 pair unitary applied across the whole register.
    void apply_gate(int a, int b, double t, Anisotropy lam) {
        detail::check_qubit_pair(n_, a, b);
        detail::check_finite(t, "gate time");
        detail::check_finite(lam.lambda, "lambda");

        const std::size_t mask_a = std::size_t{1} << a;
        const std::size_t mask_b = std::size_t{1} << b;
        const cplx equal = std::polar(1.0, -lam.lambda * t / 2.0);
        const cplx mix = std::polar(1.0, lam.lambda * t / 2.0);
        const double ct = std::cos(t);
        const double st = std::sin(t);

        for (std::size_t i = 0; i < amps_.size(); ++i) {
            const bool ba = (i & mask_a) != 0;
            const bool bb = (i & mask_b) != 0;
            if (ba == bb) {
                amps_[i] *= equal;
            } else if (ba) {  // partner j has the excitation on b instead
                const std::size_t j = i ^ mask_a ^ mask_b;
                const cplx xi = amps_[i];
                const cplx xj = amps_[j];
                amps_[i] = mix * (ct * xi - cplx{0.0, 1.0} * st * xj);
                amps_[j] = mix * (ct * xj - cplx{0.0, 1.0} * st * xi);
            }
        }
    }

    void apply_gate(const PairGate& g, Anisotropy lam) { apply_gate(g.a, g.b, g.t, lam); }

  private:
    static int checked_n(int n_qubits) {
        if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
        if (n_qubits > kMaxQubits)
            throw std::invalid_argument("n_qubits must be <= " + std::to_string(kMaxQubits) +
                                        " for the full-space representation");
        return n_qubits;
    }

    int n_;
    std::vector<cplx> amps_;
};

/// Places the materialized subspace amplitudes on the N one-hot bitstrings.
inline FullState embed_subspace(const SubspaceState& s) {
    const int n = s.n_qubits();
    if (n > FullState::kMaxQubits)
        throw std::invalid_argument("n_qubits must be <= 20 for the full-space representation");
    std::vector<cplx> amps(std::size_t{1} << n, cplx{0.0, 0.0});
    const std::vector<cplx> m = materialize(s);
    for (int j = 0; j < n; ++j) amps[std::size_t{1} << j] = m[static_cast<std::size_t>(j)];
    return FullState(n, std::move(amps));
}

/// Reads the N one-hot amplitudes back out of a full state. Inverse of
/// embed_subspace on its image.
inline SubspaceState extract_single_excitation(const FullState& f) {
    std::vector<cplx> amps(static_cast<std::size_t>(f.n_qubits()));
    for (int j = 0; j < f.n_qubits(); ++j) amps[static_cast<std::size_t>(j)] = f.amp(std::size_t{1} << j);
    return SubspaceState(std::move(amps));
}

inline cplx overlap(const SubspaceState& x, const SubspaceState& y) {
    if (x.n_qubits() != y.n_qubits())
        throw std::invalid_argument("overlap requires states of equal size");
    KahanSum re, im;
    for (int j = 0; j < x.n_qubits(); ++j) {
        const cplx term = std::conj(x.amp(j)) * y.amp(j);
        re.add(term.real());
        im.add(term.imag());
    }
    return std::conj(x.global_phase()) * y.global_phase() * cplx{re.value(), im.value()};
}

inline cplx overlap(const FullState& x, const FullState& y) {
    if (x.n_qubits() != y.n_qubits())
        throw std::invalid_argument("overlap requires states of equal size");
    KahanSum re, im;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        const cplx term = std::conj(x.amps()[i]) * y.amps()[i];
        re.add(term.real());
        im.add(term.imag());
    }
    return cplx{re.value(), im.value()};
}

}  // namespace exw
