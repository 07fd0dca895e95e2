#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace polar::core {

// Reproducible randomness for the whole pipeline.
//
// The generator is std::mt19937_64, which the C++ standard pins bit-for-bit,
// and unit doubles are derived as (x >> 11) * 2^-53, so every stream is
// portable across platforms and implementations. Categorical sampling is
// inverse-CDF over the probability vector in index order and consumes exactly
// one unit draw per sample; replaying the seed replays the choices.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    // Uniform double in [0, 1).
    double next_unit() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). n must be > 0.
    std::size_t next_index(std::size_t n) {
        return static_cast<std::size_t>(next_unit() * static_cast<double>(n)) % n;
    }

    // Samples an index i with probability weights[i] / sum(weights).
    // Weights must be non-negative with a positive sum. Smallest index k with
    // u < cumulative(k) wins; rounding that leaves u beyond the final
    // cumulative value falls back to the last positive-weight index.
    std::size_t sample_categorical(const std::vector<double>& weights);

    // Uniform sample of k distinct positions from [0, n) in ascending order
    // (selection sampling; one unit draw per inspected position).
    std::vector<std::size_t> sample_positions(std::size_t n, std::size_t k);

    std::uint64_t next_raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

// Derives a stage-local seed from the run seed so stages draw from
// independent streams: FNV-1a 64 over the seed bytes, the stage name and the
// index. Documented so external tools can replay any stage in isolation.
std::uint64_t derive_seed(std::uint64_t base, const std::string& stage, std::uint64_t index = 0);

} // namespace polar::core
