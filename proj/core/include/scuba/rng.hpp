// scuba/rng.hpp — deterministic per-entity random substreams.
//
// Every random decision in a run draws from a generator seeded by
// (run seed, entity id, stream tag). Substreams are independent, so adding a
// UE or a new consumer never perturbs the draws of existing ones, which keeps
// whole runs bit-reproducible.
#pragma once

#include <cstdint>
#include <random>

namespace scuba {

/// splitmix64 finalizer: cheap, well-avalanched 64-bit mixer used to derive
/// substream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Fixed stream tags. Append only — renumbering changes every seeded run.
enum class RngStream : std::uint64_t {
  kCellularTraffic = 1,
  kSidelinkTraffic = 2,
  kBandSelect = 3,
  kPeerSelect = 4,
  kMonteCarlo = 5,
};

/// Generator for one (run, entity, stream) substream.
inline std::mt19937_64 make_rng(std::uint64_t run_seed, std::uint64_t entity,
                                RngStream stream) {
  std::uint64_t z = splitmix64(run_seed);
  z = splitmix64(z ^ (0x9e3779b97f4a7c15ull * (entity + 1)));
  z = splitmix64(z ^ static_cast<std::uint64_t>(stream));
  return std::mt19937_64(z);
}

/// Uniform double in [0, 1) from the top 53 bits. Hand-rolled so draws are
/// identical across standard libraries (std::generate_canonical is not).
inline double uniform_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n). Multiply-shift bounding; the 2^-64 bias is
/// irrelevant at our n and, unlike std::uniform_int_distribution, the mapping
/// is platform-independent.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

}  // namespace scuba
