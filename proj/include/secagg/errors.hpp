#pragma once

#include <stdexcept>

namespace secagg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Point handed to a group operation is neither on the curve nor the identity.
struct InvalidPointError : Error { using Error::Error; };

// Scalar / plaintext / parameter outside its admissible range.
struct RangeError : Error { using Error::Error; };

// No discrete log <= the stated bound reproduces the point.
struct UnmappablePointError : Error { using Error::Error; };

// Decryption produced a point outside the plaintext range.
struct CorruptCiphertextError : Error { using Error::Error; };

// MAC key failed its precondition (empty).
struct InvalidKeyError : Error { using Error::Error; };

// Physically meaningless input (negative length / distance / energy).
struct DomainError : Error { using Error::Error; };

struct ConfigError : Error { using Error::Error; };

// Cluster-agent election attempted on a cluster with no alive member.
struct DeadClusterError : Error { using Error::Error; };

// No alive cluster agent remains anywhere; the simulation cannot continue.
struct NetworkDeadError : Error { using Error::Error; };

struct IoError : Error { using Error::Error; };

}  // namespace secagg
