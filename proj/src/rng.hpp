#pragma once
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace sqpc {

/*
 * Reproducible random streams.
 *
 * Every stochastic choice in the simulator draws from a RandomStream derived
 * from the session seed plus a role tag, so runs are bit-identical for a
 * given seed regardless of host platform or thread count.  mt19937_64 output
 * is fully specified by the standard; doubles and integer draws below avoid
 * std::uniform_*_distribution, whose mapping is implementation-defined.
 */
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    // Derive an independent stream from a master seed and a role tag.
    static RandomStream derive(std::uint64_t master, std::string_view tag,
                               std::uint64_t index = 0);

    // Uniform in [0, 1), 53-bit mantissa.
    double next_double();

    // Uniform integer in [0, n), n >= 1.  Inverse CDF over the uniform pmf:
    // outcome k is the cell [k/n, (k+1)/n) containing the draw.
    int uniform_int(int n);

    // Fair coin.
    bool coin() { return next_double() < 0.5; }

    // Inverse-CDF sample from an explicit pmf, outcomes scanned in ascending
    // index order.  The pmf need not be perfectly normalized; leftover mass
    // from rounding goes to the last outcome with nonzero probability.
    int sample_pmf(const std::vector<double>& pmf);

    // Standard normal via Box-Muller (not std::normal_distribution, which is
    // implementation-defined).
    double next_gaussian();

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// 64-bit seed mixing helpers (splitmix64 finalizer, FNV-1a for tags).
std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_tag(std::string_view tag);

} // namespace sqpc
