#include "qbc/random.hpp"

#include <cmath>
#include <stdexcept>

namespace qbc {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RandomStream RandomStream::derive(std::uint64_t seed,
                                  std::initializer_list<std::uint64_t> tags) {
    std::uint64_t s = splitmix64(seed);
    for (std::uint64_t t : tags) {
        s = splitmix64(s ^ splitmix64(t));
    }
    return RandomStream(s);
}

int RandomStream::uniform_int(int n) {
    if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
    // Rejection sampling to avoid modulo bias.
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t r;
    do {
        r = bits();
    } while (r >= limit);
    return static_cast<int>(r % un);
}

int RandomStream::poisson(double mu) {
    if (mu < 0.0) throw std::invalid_argument("poisson: mu must be >= 0");
    if (mu == 0.0) return 0;
    int total = 0;
    // Sum of independent Poisson(mu/2) halves is Poisson(mu).
    while (mu > 30.0) {
        mu *= 0.5;
        total += poisson(mu);
    }
    const double threshold = std::exp(-mu);
    int k = 0;
    double prod = 1.0;
    do {
        ++k;
        prod *= uniform();
    } while (prod > threshold);
    return total + k - 1;
}

int RandomStream::binomial(int n, double p) {
    if (n < 0) throw std::invalid_argument("binomial: n must be >= 0");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("binomial: p must be in [0,1]");
    if (p == 0.0) return 0;
    if (p == 1.0) return n;
    int k = 0;
    for (int i = 0; i < n; ++i) {
        if (bernoulli(p)) ++k;
    }
    return k;
}

double RandomStream::exponential(double rate) {
    if (rate <= 0.0) throw std::invalid_argument("exponential: rate must be positive");
    double u;
    do {
        u = uniform();
    } while (u == 0.0);
    return -std::log(u) / rate;
}

}  // namespace qbc
