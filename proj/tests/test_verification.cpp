// Unit tests for schedule execution, target grading, the W-state
// invariance check and the no-go demonstration. Frozen phase values come
// from an independent full-space simulation of the protocols.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "exw/verification.hpp"

using namespace exw;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("run_schedule spreads the excitation evenly", "[verification]") {
    const SubspaceState flying4 = run_schedule(flying_schedule(4), Anisotropy{1.0});
    for (const cplx& c : materialize(flying4)) REQUIRE(std::abs(std::abs(c) - 0.5) < 1e-12);

    const SubspaceState seq2 = run_schedule(sequential_schedule(2), Anisotropy{1.0});
    for (const cplx& c : materialize(seq2))
        REQUIRE(std::abs(std::abs(c) - 1.0 / std::sqrt(2.0)) < 1e-12);

    const SubspaceState dc8 = run_schedule(divide_conquer_schedule(8), Anisotropy{0.0});
    for (const cplx& c : materialize(dc8))
        REQUIRE(std::abs(std::abs(c) - 1.0 / std::sqrt(8.0)) < 1e-12);
}

TEST_CASE("run_schedule without explicit lambda uses the schedule stamp", "[verification]") {
    const Schedule s = flying_schedule(5, Anisotropy{0.5});
    const SubspaceState a = run_schedule(s);
    const SubspaceState b = run_schedule(s, Anisotropy{0.5});
    REQUIRE(std::abs(overlap(a, b) - cplx{1.0, 0.0}) < 1e-14);
}

TEST_CASE("check_target grades an exact W state perfectly", "[verification]") {
    const double r = 1.0 / std::sqrt(5.0);
    const SubspaceState w(std::vector<cplx>(5, cplx{r, 0.0}));
    const TargetReport rep = check_target(w);
    REQUIRE(rep.max_magnitude_error == 0.0);
    REQUIRE(rep.phases_all_equal);
    REQUIRE(rep.phases[0] == 0.0);
}

TEST_CASE("check_target on a protocol output: equal magnitudes, unequal phases", "[verification]") {
    const TargetReport rep = check_target(run_schedule(flying_schedule(3), Anisotropy{1.0}));
    REQUIRE(rep.max_magnitude_error <= 1e-12);
    REQUIRE_FALSE(rep.phases_all_equal);
    // frozen from the full-space oracle: phases relative to component 0
    REQUIRE(rep.phases[0] == 0.0);
    REQUIRE(std::abs(rep.phases[1] - (-3.0 * pi / 4.0)) < 1e-12);
    REQUIRE(std::abs(rep.phases[2] - (-pi / 2.0)) < 1e-12);
}

TEST_CASE("check_target on a basis state", "[verification]") {
    const TargetReport rep = check_target(make_initial_subspace(9));
    REQUIRE(rep.max_magnitude_error == 1.0 - 1.0 / std::sqrt(9.0));
    const TargetReport rep4 = check_target(make_initial_subspace(4));
    REQUIRE(rep4.max_magnitude_error == 1.0 - 1.0 / std::sqrt(4.0));
}

TEST_CASE("relative phases land in (-pi, pi]", "[verification]") {
    const double r = 1.0 / std::sqrt(2.0);
    const SubspaceState s(std::vector<cplx>{{r, 0.0}, {-r, 0.0}});
    const TargetReport rep = check_target(s);
    REQUIRE(rep.phases[1] == pi);  // not -pi
    REQUIRE_FALSE(std::signbit(rep.phases[0]));
}

TEST_CASE("check_target rejects unnormalized states", "[verification]") {
    const SubspaceState bad(std::vector<cplx>{{0.5, 0.0}, {0.0, 0.0}});
    REQUIRE_THROWS_AS(check_target(bad), std::runtime_error);
}

TEST_CASE("phase_spread is the width of the relative-phase pattern", "[verification]") {
    const std::vector<double> phases{0.0, -pi / 2.0, pi};
    REQUIRE(phase_spread(phases) == 3.0 * pi / 2.0);
    REQUIRE(phase_spread(std::vector<double>{0.25}) == 0.0);
    REQUIRE(phase_spread(std::vector<double>{}) == 0.0);
}

TEST_CASE("W state is invariant under any pair gate at lambda=1", "[verification]") {
    // seeds 100+n
    REQUIRE(w_invariance_check(2, 50, 102) <= 1e-12);
    REQUIRE(w_invariance_check(5, 100, 105) <= 1e-12);
    REQUIRE(w_invariance_check(10, 100, 110) <= 1e-12);
    REQUIRE_THROWS_AS(w_invariance_check(1, 10, 0), std::out_of_range);
    REQUIRE_THROWS_AS(w_invariance_check(21, 10, 0), std::out_of_range);
    REQUIRE_THROWS_AS(w_invariance_check(4, 0, 0), std::invalid_argument);
}

TEST_CASE("anisotropy away from 1 breaks full W invariance", "[verification]") {
    // n=3, lambda=2, t=pi/2 on one pair: 1 - |<W|U|W>| = 1 - sqrt(5)/3,
    // frozen to 0.2546440075000701 by 40-digit arithmetic
    FullState w = FullState::w_state(3);
    FullState u = w;
    u.apply_gate(0, 1, pi / 2.0, Anisotropy{2.0});
    const double dev = 1.0 - std::abs(overlap(w, u));
    REQUIRE(std::abs(dev - 0.2546440075000701) < 1e-12);
    REQUIRE(dev > 0.01);

    // magnitudes are still untouched
    for (int j = 0; j < 3; ++j)
        REQUIRE(std::abs(std::abs(u.amp(std::size_t{1} << j)) - 1.0 / std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("no protocol output has equal phases", "[verification]") {
    const NoGoResult flying3 = no_go_demonstration(Protocol::flying, 3, Anisotropy{1.0});
    REQUIRE(std::abs(flying3.spread - 3.0 * pi / 4.0) < 1e-12);  // frozen: 0 .. -3pi/4

    const NoGoResult seq4 = no_go_demonstration(Protocol::sequential, 4, Anisotropy{0.0});
    REQUIRE(seq4.spread > 0.1);
    REQUIRE(std::abs(seq4.spread - 3.0 * pi / 2.0) < 1e-12);  // frozen: pi .. -pi/2

    const NoGoResult dc4 = no_go_demonstration(Protocol::divide_conquer, 4, Anisotropy{1.0});
    REQUIRE(dc4.spread > 0.1);
    REQUIRE(std::abs(dc4.spread - 3.0 * pi / 2.0) < 1e-12);

    REQUIRE_THROWS_AS(no_go_demonstration(Protocol::flying, 2, Anisotropy{1.0}),
                      std::invalid_argument);
}

TEST_CASE("phases_all_equal is false for every protocol and tested lambda", "[verification]") {
    const double lambdas[] = {0.0, 0.5, 1.0, 2.0};
    for (double lam : lambdas)
        for (int n : {2, 3, 4, 8}) {
            for (Protocol p : {Protocol::flying, Protocol::sequential}) {
                const TargetReport rep = check_target(run_schedule(compile_schedule(p, n), Anisotropy{lam}));
                REQUIRE_FALSE(rep.phases_all_equal);
            }
            if ((n & (n - 1)) == 0) {
                const TargetReport rep =
                    check_target(run_schedule(divide_conquer_schedule(n), Anisotropy{lam}));
                REQUIRE_FALSE(rep.phases_all_equal);
            }
        }
}

TEST_CASE("oracle crosscheck stays at rounding level", "[verification]") {
    REQUIRE(oracle_crosscheck(2, 1, 42, Anisotropy{1.0}) <= 1e-15);          // seed 42
    REQUIRE(oracle_crosscheck(6, 50, 1234, Anisotropy{0.5}) <= 1e-12);       // seed 1234
    REQUIRE(oracle_crosscheck(10, 50, 99, Anisotropy{2.0}) <= 1e-12);        // seed 99
    REQUIRE_THROWS_AS(oracle_crosscheck(1, 10, 0, Anisotropy{1.0}), std::out_of_range);
    REQUIRE_THROWS_AS(oracle_crosscheck(11, 10, 0, Anisotropy{1.0}), std::out_of_range);
    REQUIRE_THROWS_AS(oracle_crosscheck(4, 0, 0, Anisotropy{1.0}), std::invalid_argument);
}

TEST_CASE("injected phase bug is caught by the crosscheck", "[verification]") {
    const double clean = oracle_crosscheck(4, 20, 7, Anisotropy{1.0}, false);   // seed 7
    const double spoiled = oracle_crosscheck(4, 20, 7, Anisotropy{1.0}, true);
    REQUIRE(clean <= 1e-12);
    REQUIRE(spoiled > 1e-6);
}

TEST_CASE("a finalized flying amplitude never changes again", "[verification]") {
    const int n = 8;
    const Schedule s = flying_schedule(n);
    SubspaceState state = make_initial_subspace(n);
    std::vector<double> at_finalization;
    for (std::size_t k = 0; k < s.gates.size(); ++k) {
        state.apply_gate(s.gates[k], Anisotropy{0.7});
        at_finalization.push_back(std::abs(state.amp(s.gates[k].b)));
        // every previously finalized qubit keeps its magnitude, to the bit
        for (std::size_t j = 0; j < k; ++j)
            REQUIRE(std::abs(state.amp(s.gates[j].b)) == at_finalization[j]);
    }
    for (double mag : at_finalization) REQUIRE(std::abs(mag - 1.0 / std::sqrt(8.0)) < 1e-12);
}

TEST_CASE("oracle fingerprints agree with the fast engine", "[verification]") {
    for (const auto& [p, n, lam] :
         {std::tuple{Protocol::flying, 4, 1.0}, std::tuple{Protocol::sequential, 5, 0.5},
          std::tuple{Protocol::divide_conquer, 8, 2.0}}) {
        const ProtocolFingerprint fp = fingerprint_via_oracle(p, n, Anisotropy{lam});
        const TargetReport rep = check_target(run_schedule(compile_schedule(p, n), Anisotropy{lam}));
        REQUIRE(fp.phases.size() == rep.phases.size());
        for (std::size_t j = 0; j < fp.phases.size(); ++j) {
            REQUIRE(std::abs(fp.phases[j] - rep.phases[j]) < 1e-12);
            REQUIRE(std::abs(fp.magnitudes[j] - rep.magnitudes[j]) < 1e-12);
        }
    }
}
