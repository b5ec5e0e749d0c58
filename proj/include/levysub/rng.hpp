#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace levysub {

namespace detail {

inline std::uint64_t mulhilo64(std::uint64_t a, std::uint64_t b, std::uint64_t& hi) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(prod >> 64);
    return static_cast<std::uint64_t>(prod);
}

}  // namespace detail

/// Philox4x64-10 counter-based generator (Salmon et al., SC'11).
/// Produces the same output stream as numpy.random.Philox for a given
/// (key, counter), which the unit tests pin down with reference vectors.
class Philox4x64 {
public:
    static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
    static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
    static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
    static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

    static std::array<std::uint64_t, 4> encrypt(std::array<std::uint64_t, 4> ctr,
                                                std::array<std::uint64_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            std::uint64_t hi0 = 0;
            std::uint64_t hi1 = 0;
            const std::uint64_t lo0 = detail::mulhilo64(kMul0, ctr[0], hi0);
            const std::uint64_t lo1 = detail::mulhilo64(kMul1, ctr[2], hi1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }
};

/// A reproducible random stream keyed by (seed, stream_id).
///
/// Identical (seed, stream_id) replays the identical variate sequence;
/// distinct stream ids select statistically independent Philox streams, so
/// replica batches can be generated concurrently, one stream per replica.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : key_{seed, stream_id} {}

    std::uint64_t seed() const { return key_[0]; }
    std::uint64_t stream_id() const { return key_[1]; }

    std::uint64_t next_u64() {
        if (pos_ == 4) {
            block_ = Philox4x64::encrypt(ctr_, key_);
            for (int i = 0; i < 4; ++i) {
                if (++ctr_[i] != 0) break;  // 256-bit little-endian increment
            }
            pos_ = 0;
        }
        return block_[pos_++];
    }

    /// Uniform double strictly inside (0,1).
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential(double mean) {
        if (!(mean > 0.0)) throw std::domain_error("exponential: mean must be positive");
        return -mean * std::log(uniform01());
    }

    double normal01() {
        const double r = std::sqrt(-2.0 * std::log(uniform01()));
        return r * std::cos(2.0 * std::numbers::pi * uniform01());
    }

    /// Gamma(shape, rate) via Marsaglia-Tsang squeeze/rejection, with the
    /// boosting transform G(a) = G(a+1) * U^{1/a} for shape < 1.
    double gamma(double shape, double rate) {
        if (!(shape > 0.0) || !(rate > 0.0))
            throw std::domain_error("gamma: shape and rate must be positive");
        double boost = 1.0;
        if (shape < 1.0) {
            boost = std::pow(uniform01(), 1.0 / shape);
            shape += 1.0;
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = 0.0;
            double v = 0.0;
            do {
                x = normal01();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform01();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return boost * d * v / rate;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return boost * d * v / rate;
        }
    }

    /// Poisson(mean), exact in law for every finite mean: sequential CDF
    /// inversion below 10, Hormann's PTRS transformed rejection above.
    std::uint64_t poisson(double mean) {
        if (!(mean >= 0.0) || !std::isfinite(mean))
            throw std::domain_error("poisson: mean must be finite and nonnegative");
        if (mean == 0.0) return 0;
        if (mean < 10.0) {
            double p = std::exp(-mean);
            double cum = p;
            const double u = uniform01();
            std::uint64_t k = 0;
            while (u > cum && k < 2000) {
                ++k;
                p *= mean / static_cast<double>(k);
                cum += p;
            }
            return k;
        }
        return poisson_ptrs(mean);
    }

    /// One-sided positive stable variate with E[e^{-s X}] = e^{-s^index},
    /// 0 < index < 1, by Kanter's exact transformation of (U, Exp).
    double stable_one_sided(double index) {
        if (!(index > 0.0 && index < 1.0))
            throw std::domain_error("stable_one_sided: index must lie in (0,1)");
        const double u = uniform01();
        const double e = exponential(1.0);
        const double pu = std::numbers::pi * u;
        const double a = std::pow(std::sin(index * pu), index / (1.0 - index)) *
                         std::sin((1.0 - index) * pu) /
                         std::pow(std::sin(pu), 1.0 / (1.0 - index));
        return std::pow(a / e, (1.0 - index) / index);
    }

private:
    std::uint64_t poisson_ptrs(double mean) {
        const double slam = std::sqrt(mean);
        const double loglam = std::log(mean);
        const double b = 0.931 + 2.53 * slam;
        const double a = -0.059 + 0.02483 * b;
        const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
        const double vr = 0.9277 - 3.6224 / (b - 2.0);
        for (;;) {
            const double u = uniform01() - 0.5;
            double v = uniform01();
            const double us = 0.5 - std::abs(u);
            const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
            if (k < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
                k * loglam - mean - std::lgamma(k + 1.0)) {
                return static_cast<std::uint64_t>(k);
            }
        }
    }

    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> ctr_{0, 0, 0, 0};
    std::array<std::uint64_t, 4> block_{0, 0, 0, 0};
    int pos_ = 4;
};

}  // namespace levysub
