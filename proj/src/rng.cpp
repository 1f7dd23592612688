#include "pgvario/rng.hpp"

#include <random>

namespace pgv {

std::vector<double> standard_normals(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> out(n);
    for (auto& v : out) v = dist(gen);
    return out;
}

std::vector<double> standard_uniforms(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> out(n);
    for (auto& v : out) v = dist(gen);
    return out;
}

} // namespace pgv
