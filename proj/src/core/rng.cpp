#include "polar/core/rng.hpp"

#include "polar/core/errors.hpp"

namespace polar::core {

std::size_t SeededRng::sample_categorical(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw IndexError("categorical weights must be non-negative");
        total += w;
    }
    if (!(total > 0.0))
        throw IndexError("categorical sample requires a positive weight sum");

    const double u = next_unit();
    double cum = 0.0;
    std::size_t last_positive = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        last_positive = i;
        cum += weights[i] / total;
        if (u < cum) return i;
    }
    return last_positive; // u landed past the rounded final cumulative value
}

std::vector<std::size_t> SeededRng::sample_positions(std::size_t n, std::size_t k) {
    std::vector<std::size_t> picked;
    if (k >= n) {
        picked.resize(n);
        for (std::size_t i = 0; i < n; ++i) picked[i] = i;
        return picked;
    }
    picked.reserve(k);
    std::size_t needed = k;
    for (std::size_t i = 0; i < n && needed > 0; ++i) {
        const std::size_t remaining = n - i;
        if (next_unit() * static_cast<double>(remaining) < static_cast<double>(needed)) {
            picked.push_back(i);
            --needed;
        }
    }
    return picked;
}

std::uint64_t derive_seed(std::uint64_t base, const std::string& stage, std::uint64_t index) {
    constexpr std::uint64_t kOffset = 1469598103934665603ULL;
    constexpr std::uint64_t kPrime = 1099511628211ULL;
    std::uint64_t h = kOffset;
    const auto mix_byte = [&](unsigned char b) {
        h ^= b;
        h *= kPrime;
    };
    for (int i = 0; i < 8; ++i) mix_byte(static_cast<unsigned char>(base >> (8 * i)));
    for (char c : stage) mix_byte(static_cast<unsigned char>(c));
    for (int i = 0; i < 8; ++i) mix_byte(static_cast<unsigned char>(index >> (8 * i)));
    return h;
}

} // namespace polar::core
