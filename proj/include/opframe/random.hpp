#pragma once

// Seeded generators. Every stochastic path in the library derives its own
// engine from a (seed, salt...) tuple so results do not depend on call order
// or thread schedule.

#include <cstdint>
#include <initializer_list>
#include <random>

#include "opframe/cstar_core.hpp"
#include "opframe/hilbert_module.hpp"

namespace opframe {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> salts) {
    std::uint64_t h = splitmix64(seed);
    for (std::uint64_t s : salts) h = splitmix64(h ^ splitmix64(s + 0x632be59bd9b4e019ULL));
    return h;
}

inline Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> salts = {}) {
    return Rng(derive_seed(seed, salts));
}

/// Standard complex Gaussian entries.
CMatrix random_complex_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);
CVector random_unit_vector(Rng& rng, Eigen::Index dim);
/// Haar-ish unitary via QR of a Gaussian matrix.
CMatrix random_unitary(Rng& rng, Eigen::Index dim);
/// B B^H for a Gaussian B with `rank` columns.
CMatrix random_psd(Rng& rng, Eigen::Index dim, Eigen::Index rank);
ModuleVector random_module_vector(Rng& rng, ModuleShape shape);
double uniform_real(Rng& rng, double lo, double hi);

/// Order-sensitive hash of matrix contents, used to salt per-instance
/// generators.
std::uint64_t hash_matrix(const CMatrix& m, std::uint64_t h = 0);

}  // namespace opframe
