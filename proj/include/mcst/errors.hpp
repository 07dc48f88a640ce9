#pragma once

#include <stdexcept>

namespace mcst {

// Base class for every protocol or simulation error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- field / sharing ---
struct ZeroInverse : Error { using Error::Error; };
struct BadThreshold : Error { using Error::Error; };
struct EmptyMessage : Error { using Error::Error; };
struct InsufficientShares : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct NotAByte : Error { using Error::Error; };

// --- codec ---
struct OddLength : Error { using Error::Error; };
struct NonHexChar : Error { using Error::Error; };

// --- hopping ---
struct ZeroSeed : Error { using Error::Error; };
struct BadPartCount : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };

// --- packet ---
struct BadPayloadLength : Error { using Error::Error; };
struct ZeroCountdown : Error { using Error::Error; };
struct WrongType : Error { using Error::Error; };
struct DirtyPadding : Error { using Error::Error; };
struct EmptyPacket : Error { using Error::Error; };

// --- medium ---
struct BadChannel : Error { using Error::Error; };
struct MediumRejected : Error { using Error::Error; };

// --- node ---
struct StreamTooLong : Error { using Error::Error; };
struct FrameCorrupt : Error { using Error::Error; };

// --- analysis ---
struct BadN : Error { using Error::Error; };

}  // namespace mcst
