#pragma once

#include <cstdint>
#include <vector>

namespace pgv {

// splitmix64 finalizer; decorrelates consecutive stream ids.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// n iid N(0,1) draws from a freshly seeded generator; same seed, same vector.
std::vector<double> standard_normals(std::uint64_t seed, std::size_t n);

// n iid U(0,1) draws, same contract.
std::vector<double> standard_uniforms(std::uint64_t seed, std::size_t n);

} // namespace pgv
