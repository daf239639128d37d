#pragma once

#include <cstdint>
#include <cstring>
#include <string>

namespace elmg {

/// FNV-1a 64-bit.  Used for content keys and output checksums; not
/// cryptographic.
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(const std::string& s,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
  return fnv1a64(s.data(), s.size(), seed);
}

template <typename Scalar>
std::uint64_t fnv1a64_span(const Scalar* data, std::size_t count,
                           std::uint64_t seed = 0xcbf29ce484222325ull) {
  return fnv1a64(static_cast<const void*>(data), count * sizeof(Scalar), seed);
}

}  // namespace elmg
