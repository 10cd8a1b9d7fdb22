// Regenerates the committed protocol fingerprint file (tests/golden/).
// Every record is computed through the full 2^N oracle, never through the
// fast subspace engine, so the file pins the phase patterns independently
// of the code path the tests exercise.

#include <fstream>
#include <iostream>
#include <vector>

#include "exw/io.hpp"
#include "exw/verification.hpp"

int main(int argc, char** argv) {
    const std::string path = argc > 1 ? argv[1] : "tests/golden/protocol_fingerprints.json";
    const double lambdas[] = {0.0, 0.5, 1.0, 2.0};

    std::vector<exw::ProtocolFingerprint> records;
    for (int n = 3; n <= 16; ++n)
        for (double lam : lambdas) {
            records.push_back(exw::fingerprint_via_oracle(exw::Protocol::flying, n, {lam}));
            records.push_back(exw::fingerprint_via_oracle(exw::Protocol::sequential, n, {lam}));
            if ((n & (n - 1)) == 0)
                records.push_back(
                    exw::fingerprint_via_oracle(exw::Protocol::divide_conquer, n, {lam}));
        }

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open " << path << " for writing\n";
        return 1;
    }
    out << exw::fingerprints_to_json(records);
    std::cout << "wrote " << records.size() << " records to " << path << "\n";
    return 0;
}
