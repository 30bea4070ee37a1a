#include "rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqpc {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

RandomStream RandomStream::derive(std::uint64_t master, std::string_view tag,
                                  std::uint64_t index) {
    std::uint64_t s = mix64(master ^ hash_tag(tag));
    s = mix64(s ^ mix64(index));
    return RandomStream(s);
}

double RandomStream::next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int RandomStream::uniform_int(int n) {
    if (n < 1) throw std::invalid_argument("uniform_int: n must be >= 1");
    int k = static_cast<int>(next_double() * n);
    return k < n ? k : n - 1;
}

int RandomStream::sample_pmf(const std::vector<double>& pmf) {
    if (pmf.empty()) throw std::invalid_argument("sample_pmf: empty pmf");
    double u = next_double();
    double cum = 0.0;
    int last_nonzero = -1;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        if (pmf[k] > 0.0) last_nonzero = static_cast<int>(k);
        cum += pmf[k];
        if (u < cum) return static_cast<int>(k);
    }
    if (last_nonzero < 0) throw std::invalid_argument("sample_pmf: all-zero pmf");
    return last_nonzero;
}

double RandomStream::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

} // namespace sqpc
