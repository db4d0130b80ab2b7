#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace drawdown::rng {

// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw 2011).
// Every output block is a pure function of (key, counter), so simulations
// keyed by (seed, path_index) reproduce bit-identically for any degree of
// parallelism.

inline std::array<std::uint32_t, 4> philox_block(std::uint64_t key,
                                                 std::array<std::uint32_t, 4> ctr) {
    constexpr std::uint32_t kMul0 = 0xD2511F53u, kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ k0,
               static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ k1,
               static_cast<std::uint32_t>(p0)};
        k0 += kW0;
        k1 += kW1;
    }
    return ctr;
}

inline double u64_to_unit(std::uint64_t x) {
    // (0, 1), 53 significant bits
    return static_cast<double>(x >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

/// Acklam's rational approximation of the inverse normal CDF,
/// |relative error| < 1.15e-9 over (0, 1). Far below every statistical
/// resolution used here and about three times cheaper than Box-Muller.
inline double inverse_normal_cdf(double p) {
    constexpr double a0 = -3.969683028665376e+01, a1 = 2.209460984245205e+02,
                     a2 = -2.759285104469687e+02, a3 = 1.383577518672690e+02,
                     a4 = -3.066479806614716e+01, a5 = 2.506628277459239e+00;
    constexpr double b0 = -5.447609879822406e+01, b1 = 1.615858368580409e+02,
                     b2 = -1.556989798598866e+02, b3 = 6.680131188771972e+01,
                     b4 = -1.328068155288572e+01;
    constexpr double c0 = -7.784894002430293e-03, c1 = -3.223964580411365e-01,
                     c2 = -2.400758277161838e+00, c3 = -2.549732539343734e+00,
                     c4 = 4.374664141464968e+00, c5 = 2.938163982698783e+00;
    constexpr double d0 = 7.784695709041462e-03, d1 = 3.224671290700398e-01,
                     d2 = 2.445134137142996e+00, d3 = 3.754408661907416e+00;
    constexpr double plow = 0.02425;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c0 * q + c1) * q + c2) * q + c3) * q + c4) * q + c5) /
               ((((d0 * q + d1) * q + d2) * q + d3) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c0 * q + c1) * q + c2) * q + c3) * q + c4) * q + c5) /
               ((((d0 * q + d1) * q + d2) * q + d3) * q + 1.0);
    }
    const double q = p - 0.5, r = q * q;
    return (((((a0 * r + a1) * r + a2) * r + a3) * r + a4) * r + a5) * q /
           (((((b0 * r + b1) * r + b2) * r + b3) * r + b4) * r + 1.0);
}

/// One independent draw stream of a path. A stream is identified by
/// (seed, path_index, stream_id); draws are indexed by an internal counter.
class Stream {
  public:
    Stream(std::uint64_t seed, std::uint64_t path_index, std::uint32_t stream_id)
        : seed_(seed),
          path_lo_(static_cast<std::uint32_t>(path_index)),
          path_hi_(static_cast<std::uint32_t>(path_index >> 32)),
          stream_(stream_id) {}

    /// Two uniforms per Philox block.
    double uniform() {
        if (!have_u_) {
            const auto b = philox_block(seed_, {ctr_++, path_lo_, path_hi_, stream_});
            u_next_ = u64_to_unit((static_cast<std::uint64_t>(b[2]) << 32) | b[3]);
            have_u_ = true;
            return u64_to_unit((static_cast<std::uint64_t>(b[0]) << 32) | b[1]);
        }
        have_u_ = false;
        return u_next_;
    }

    /// Standard normals by inverse transform, two per block.
    double normal() {
        if (have_z_) {
            have_z_ = false;
            return z_next_;
        }
        const auto b = philox_block(seed_, {ctr_++, path_lo_, path_hi_, stream_});
        const double u1 = u64_to_unit((static_cast<std::uint64_t>(b[0]) << 32) | b[1]);
        const double u2 = u64_to_unit((static_cast<std::uint64_t>(b[2]) << 32) | b[3]);
        z_next_ = inverse_normal_cdf(u2);
        have_z_ = true;
        return inverse_normal_cdf(u1);
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

  private:
    std::uint64_t seed_;
    std::uint32_t path_lo_, path_hi_, stream_;
    std::uint32_t ctr_ = 0;
    double u_next_ = 0.0, z_next_ = 0.0;
    bool have_u_ = false, have_z_ = false;
};

// Stream ids used by the engines.
inline constexpr std::uint32_t kStreamIncrements = 0;
inline constexpr std::uint32_t kStreamScalars = 1;
inline constexpr std::uint32_t kStreamSubcycle = 2;
inline constexpr std::uint32_t kStreamBridgeUp = 3;
inline constexpr std::uint32_t kStreamBridgeDown = 4;

}  // namespace drawdown::rng
