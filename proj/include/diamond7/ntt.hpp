#pragma once

#include <cstdint>
#include <vector>

namespace diamond7::ntt {

/// Truncated product (a*b)[0..len) of residue vectors modulo m (m < 2^62),
/// computed by number-theoretic transforms over three 62-bit primes and CRT.
/// Exact for any inputs with len <= 2^26.
std::vector<std::uint64_t> multiply_mod(const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b, std::uint64_t m,
                                        std::size_t len);

/// Truncated square, sharing the forward transform.
std::vector<std::uint64_t> square_mod(const std::vector<std::uint64_t>& a, std::uint64_t m,
                                      std::size_t len);

}  // namespace diamond7::ntt
