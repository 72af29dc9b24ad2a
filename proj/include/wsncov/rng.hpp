#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace wsncov
{

// Per-stream engine. Each Monte Carlo trial gets its own engine keyed by
// (seed, trial, purpose), so results never depend on scheduling.
using Engine = std::mt19937_64;

inline constexpr std::string_view kGeneratorId = "mt19937_64 keyed by splitmix64(seed, trial, stream)";

enum class Stream : std::uint64_t
{
  deployment = 1,
  targets = 2,
  coins = 3,
};

constexpr std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t trial, Stream stream)
{
  return splitmix64(splitmix64(splitmix64(seed) ^ trial) ^ static_cast<std::uint64_t>(stream));
}

inline Engine make_engine(std::uint64_t seed, std::uint64_t trial, Stream stream)
{
  return Engine(derive_key(seed, trial, stream));
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(Engine& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

}  // namespace wsncov
