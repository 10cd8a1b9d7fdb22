// io.hpp
//
// File formats: state CSV, spiral CSV, schedule JSON and protocol
// fingerprint JSON. All floating-point fields are emitted with 17
// significant digits so files round-trip doubles exactly and are byte
// stable across runs. Parsing goes through nlohmann::json.

#pragma once

#include <cstdio>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "exw/exchange_core.hpp"
#include "exw/schedules.hpp"
#include "exw/verification.hpp"

namespace exw {

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// CSV rows `index,re,im,magnitude,phase`, phase in (-pi, pi]. One row per
/// basis index: N rows for a subspace state, 2^N for a full state.
inline void write_state_csv(std::ostream& os, const SubspaceState& s) {
    os << "index,re,im,magnitude,phase\n";
    const std::vector<cplx> c = materialize(s);
    for (std::size_t j = 0; j < c.size(); ++j)
        os << j << ',' << fmt17(c[j].real()) << ',' << fmt17(c[j].imag()) << ','
           << fmt17(std::abs(c[j])) << ',' << fmt17(detail::canonical_phase(c[j])) << '\n';
}

inline void write_state_csv(std::ostream& os, const FullState& s) {
    os << "index,re,im,magnitude,phase\n";
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const cplx a = s.amps()[i];
        os << i << ',' << fmt17(a.real()) << ',' << fmt17(a.imag()) << ',' << fmt17(std::abs(a))
           << ',' << fmt17(detail::canonical_phase(a)) << '\n';
    }
}

inline void write_spiral_csv(std::ostream& os, std::span<const SpiralPoint> pts) {
    os << "n,radius,alpha,beta,theta\n";
    for (const SpiralPoint& p : pts)
        os << p.n << ',' << fmt17(p.radius) << ',' << fmt17(p.alpha) << ',' << fmt17(p.beta)
           << ',' << fmt17(p.theta) << '\n';
}

/// Schedule JSON. Gate order in the array is execution order.
inline std::string schedule_to_json(const Schedule& s) {
    std::string out = "{\"protocol\": \"" + to_string(s.protocol) + "\", \"n\": " +
                      std::to_string(s.n_qubits) + ", \"lambda\": " + fmt17(s.lambda) +
                      ", \"gates\": [";
    for (std::size_t i = 0; i < s.gates.size(); ++i) {
        const PairGate& g = s.gates[i];
        if (i > 0) out += ", ";
        out += "{\"a\": " + std::to_string(g.a) + ", \"b\": " + std::to_string(g.b) +
               ", \"t\": " + fmt17(g.t) + ", \"stage\": " + std::to_string(g.stage.value_or(0)) + "}";
    }
    out += "], \"serial_time\": " + fmt17(s.serial_time) +
           ", \"parallel_time\": " + fmt17(s.parallel_time) + "}";
    return out;
}

inline Schedule schedule_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    Schedule s;
    s.protocol = protocol_from_string(j.at("protocol").get<std::string>());
    s.n_qubits = j.at("n").get<int>();
    s.lambda = j.at("lambda").get<double>();
    for (const auto& jg : j.at("gates")) {
        PairGate g;
        g.a = jg.at("a").get<int>();
        g.b = jg.at("b").get<int>();
        g.t = jg.at("t").get<double>();
        g.stage = jg.at("stage").get<int>();
        s.gates.push_back(g);
    }
    s.serial_time = j.at("serial_time").get<double>();
    s.parallel_time = j.at("parallel_time").get<double>();
    return s;
}

/// JSON array of protocol output patterns, one object per (protocol, n,
/// lambda) with the magnitudes and relative phases of the final state.
inline std::string fingerprints_to_json(std::span<const ProtocolFingerprint> records) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const ProtocolFingerprint& r = records[i];
        out += "  {\"protocol\": \"" + to_string(r.protocol) + "\", \"n\": " + std::to_string(r.n) +
               ", \"lambda\": " + fmt17(r.lambda) + ", \"magnitudes\": [";
        for (std::size_t k = 0; k < r.magnitudes.size(); ++k) {
            if (k > 0) out += ", ";
            out += fmt17(r.magnitudes[k]);
        }
        out += "], \"phases\": [";
        for (std::size_t k = 0; k < r.phases.size(); ++k) {
            if (k > 0) out += ", ";
            out += fmt17(r.phases[k]);
        }
        out += "]}";
        if (i + 1 < records.size()) out += ",";
        out += "\n";
    }
    out += "]\n";
    return out;
}

inline std::vector<ProtocolFingerprint> fingerprints_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("fingerprint file must hold a JSON array");
    std::vector<ProtocolFingerprint> out;
    for (const auto& jr : j) {
        ProtocolFingerprint r;
        r.protocol = protocol_from_string(jr.at("protocol").get<std::string>());
        r.n = jr.at("n").get<int>();
        r.lambda = jr.at("lambda").get<double>();
        r.magnitudes = jr.at("magnitudes").get<std::vector<double>>();
        r.phases = jr.at("phases").get<std::vector<double>>();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace exw
