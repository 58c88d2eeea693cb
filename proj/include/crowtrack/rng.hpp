#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace crowtrack {

using RandomStream = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of an independent sub-stream, keyed by the master seed and a tag path
/// (e.g. {frame, particle}). Identical keys give identical streams regardless of
/// which thread asks.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t h = mix64(master);
  for (std::uint64_t k : keys) h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

inline RandomStream make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  return RandomStream(derive_seed(master, keys));
}

// Stream purposes, used as the first key of derive_seed.
enum class StreamTag : std::uint64_t { init = 1, transition = 2, cso = 3, run = 4, synth = 5 };

constexpr std::uint64_t tag(StreamTag t) noexcept { return static_cast<std::uint64_t>(t); }

}  // namespace crowtrack
