#pragma once

#include "betaflow/kneading.hpp"

namespace betaflow {

// Compiled Markov presentation of an intermediate system: the ordered
// partition points from the kneading orbits, the 0/1 letter of each cell,
// and the cell-to-cell adjacency (I(j) inside T(I(i))).
struct SftSystem {
    Params params;
    std::vector<Scalar> partition;        // a_1 < ... < a_n, a_1 = 0, a_n = 1
    std::vector<uint8_t> letter_of;       // chi per cell: 0 iff cell inside [0, p]
    std::vector<std::vector<uint8_t>> adjacency;

    size_t cells() const { return letter_of.size(); }
    Scalar cell_lo(size_t i) const { return partition[i]; }
    Scalar cell_hi(size_t i) const { return partition[i + 1]; }
    Scalar cell_length(size_t i) const { return partition[i + 1] - partition[i]; }
    // min cell length (the rho of the cylinder bounds)
    Scalar min_cell_length() const;
};

// Requires is_sft(params); compiles the Markov partition and verifies the
// Markov property exactly.
SftSystem compile(const Params& params);
// Same construction for any parameters whose kneading orbits are finite;
// skips the finite-type requirement (greedy systems compile this way).
SftSystem compile_markov(const Params& params);

struct EntropyResult {
    AlgebraicReal perron;  // spectral radius of the adjacency
    double log_value;      // topological entropy log(perron)
};
EntropyResult entropy(const SftSystem& s);
// Perron data of a bare 0/1 matrix.
EntropyResult entropy_of_matrix(const std::vector<std::vector<uint8_t>>& m);

// Characteristic polynomial of an integer matrix (Samuelson-Berkowitz,
// division free).
Poly characteristic_polynomial(const std::vector<std::vector<Int>>& m);

struct TransitivityReport {
    bool transitive = false;
    size_t cycle_period = 1;          // n of the cyclic cell-class structure when not transitive
    std::optional<size_t> co_prime_k; // spatial rotation step when detectable
};
TransitivityReport transitivity_report(const SftSystem& s);
TransitivityReport transitivity_of_matrix(const std::vector<std::vector<uint8_t>>& m);

// Exact cylinder interval for a word over cells.  Throws NOT-ADMISSIBLE
// when the word is not adjacency-consistent.
struct CylinderInterval {
    Scalar lo, hi;
    Scalar length() const { return hi - lo; }
};
CylinderInterval cylinder(const SftSystem& s, const std::vector<size_t>& cell_word);

// All admissible cell-words of a given length.
std::vector<std::vector<size_t>> admissible_cell_words(const SftSystem& s, size_t len);

// Count of admissible cell-words of length n via adjacency powers.
Int cell_word_count(const SftSystem& s, size_t n);

// Higher-block presentation: cells are the admissible n-words, the map is
// T^n; used for the composed winning reports on cyclic systems.
struct BlockSystem {
    const SftSystem* base;
    size_t block;
    std::vector<std::vector<size_t>> cells;           // admissible n-words
    std::vector<std::vector<uint8_t>> adjacency;      // uv admissible
};
BlockSystem make_block_system(const SftSystem& s, size_t n);

}  // namespace betaflow
