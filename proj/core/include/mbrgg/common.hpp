#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mbrgg {

using Vertex = std::uint32_t;
using Seed = std::uint64_t;

// Raised when an operation's documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Estimate {
  double value = 0.0;
  double se = 0.0;  // standard error
};

// splitmix64 finalizer; used to derive independent per-replication seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr Seed derive_seed(Seed base, std::uint64_t index) {
  return mix64(mix64(base) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

}  // namespace mbrgg
