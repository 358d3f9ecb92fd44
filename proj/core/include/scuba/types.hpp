// scuba/types.hpp — shared scalar types, timing constants and error classes.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scuba {

/// Absolute subframe index. One subframe (SF) is the 1 ms scheduling quantum;
/// 64 bits because long runs cover hundreds of millions of subframes.
using Sf = std::int64_t;

inline constexpr int kSfPerFrame = 10;        ///< radio frame = 10 subframes
inline constexpr int kFramesPerHyper = 1024;  ///< SFN wraps after 1024 frames
inline constexpr int kSfPerHyper = kSfPerFrame * kFramesPerHyper;  // 10240

/// Sentinel subframe for "never" / "not scheduled".
inline constexpr Sf kNever = INT64_MAX;

/// Malformed configuration: bad field values, unknown scenario keys, violated
/// parameter constraints. The command-line tool maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A runtime invariant was violated (half-duplex breach, timer inconsistency,
/// accounting mismatch). Indicates a bug, not bad input; exit code 3.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

/// What the cellular modem allows the sidelink to do in a given subframe.
///  - kFree: modem idle for this SF; the sidelink may transmit or receive.
///  - kSamUWindowOnly: a connected-mode switching gap; wide enough only for
///    the half-SF availability beacon, nothing else.
///  - kBusy: modem owns the radio; no sidelink activity at all.
enum class Availability : std::uint8_t { kFree = 0, kSamUWindowOnly, kBusy };

/// Sidelink operating mode of a UE.
///  - kNative: fixed paging-occasion schedule only.
///  - kSam: fixed schedule plus availability beacons and dynamic occasions.
///  - kLlm: low-latency mode — no fixed occasions, listens on every free SF.
enum class ScubaMode : std::uint8_t { kNative = 0, kSam, kLlm };

/// Traffic topology for multi-UE scenarios.
enum class Topology : std::uint8_t { kCentralDst = 0, kRandomPeers };

inline const char* to_string(Availability a) {
  switch (a) {
    case Availability::kFree: return "free";
    case Availability::kSamUWindowOnly: return "sam_u_window_only";
    case Availability::kBusy: return "busy";
  }
  return "?";
}

inline const char* to_string(ScubaMode m) {
  switch (m) {
    case ScubaMode::kNative: return "native";
    case ScubaMode::kSam: return "sam";
    case ScubaMode::kLlm: return "llm";
  }
  return "?";
}

inline const char* to_string(Topology t) {
  switch (t) {
    case Topology::kCentralDst: return "central_dst";
    case Topology::kRandomPeers: return "random_peers";
  }
  return "?";
}

}  // namespace scuba
