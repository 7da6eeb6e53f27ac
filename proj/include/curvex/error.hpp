#pragma once

#include <stdexcept>
#include <string>

namespace curvex {

enum class Errc {
  UnsupportedSurface,
  TrivialCurve,
  DomainMismatch,
  GeneralPosition,
  InvalidCutSystem,
  NotElementaryMove,
  BallTooSmall,
  InsufficientBall,
  NotAnAutomorphism,
  DisconnectedInBall,
  NoSurgeryNeeded,
  ConfigError,
  FormatError,
  Internal,
};

// Every failure the engine can report deliberately carries one of the codes
// above, so callers (and the command line driver) can branch on the kind of
// problem instead of string-matching messages.
struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

// Internal consistency checks that should be impossible to trip. These stay
// on in release builds: the cost is negligible next to the damage a silently
// wrong answer would do downstream.
inline void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(Errc::Internal, "internal invariant violated: " + msg);
}

}  // namespace curvex
