#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace qbc {

// SplitMix64 step; used to derive sub-stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Deterministic random stream.
//
// Sampling primitives are hand-rolled on top of the raw 64-bit generator
// instead of std::<distribution> types, whose output sequences are
// implementation-defined. Given the same seed, the stream produces the same
// values on every standard library, which is what keeps transcripts
// byte-identical under replay.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    // Stream splitting rule: fold each tag into the master seed with
    // splitmix64, i.e. seed_{i+1} = splitmix64(seed_i ^ splitmix64(tag)).
    // Used to give every session its own independent stream.
    static RandomStream derive(std::uint64_t seed,
                               std::initializer_list<std::uint64_t> tags);

    std::uint64_t bits() { return gen_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in {0, ..., n-1}, n >= 1.
    int uniform_int(int n);

    // Poisson(mu) by Knuth's product method; for large mu the sample is
    // split as a sum of independent Poisson halves, which is exact.
    int poisson(double mu);

    // Binomial(n, p) by direct Bernoulli counting (n is small here).
    int binomial(int n, double p);

    // Exponential with the given rate (inter-arrival gaps).
    double exponential(double rate);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(static_cast<int>(i)));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace qbc
