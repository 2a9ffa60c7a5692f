#pragma once

#include <cstdint>
#include <random>

namespace specreg {

using Rng = std::mt19937_64;

/// Deterministic child seed for stream (a, b) of a master seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

}  // namespace specreg
