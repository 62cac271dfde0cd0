#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "grover/errors.hpp"
#include "grover/types.hpp"

namespace grover {

/// C(n, k), or nullopt once the value exceeds `cap`.
inline std::optional<std::uint64_t> binomial_within(Index n, Index k, std::uint64_t cap) {
    if (k < 0 || k > n) return std::uint64_t{0};
    if (k > n - k) k = n - k;
    std::uint64_t c = 1;
    for (Index i = 0; i < k; ++i) {
        // c * (n - i) stays exact: c <= cap <= 2^40 and n < 2^31.
        c = c * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
        if (c > cap) return std::nullopt;
    }
    return c;
}

/// Lexicographic iteration over all k-subsets of {0, ..., n-1}.
/// Visits subsets as sorted index vectors, in increasing lexicographic order.
class SubsetEnumerator {
  public:
    SubsetEnumerator(Index n, Index k) : n_(n), indices_(static_cast<std::size_t>(k)) {
        if (k < 1 || k > n) throw InvalidCount("subset size must satisfy 1 <= k <= n");
        for (Index i = 0; i < k; ++i) indices_[static_cast<std::size_t>(i)] = i;
    }

    const std::vector<Index>& current() const { return indices_; }

    /// Advance to the next subset; false once the last one has been visited.
    bool next() {
        const Index k = static_cast<Index>(indices_.size());
        Index i = k - 1;
        while (i >= 0 && indices_[static_cast<std::size_t>(i)] == n_ - k + i) --i;
        if (i < 0) return false;
        ++indices_[static_cast<std::size_t>(i)];
        for (Index j = i + 1; j < k; ++j) {
            indices_[static_cast<std::size_t>(j)] = indices_[static_cast<std::size_t>(j - 1)] + 1;
        }
        return true;
    }

  private:
    Index n_;
    std::vector<Index> indices_;
};

namespace detail {

/// splitmix64 finalizer; the portable mixing step behind per-sample streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace detail

/// Small deterministic generator. The standard distributions are not pinned
/// across library implementations, so reproducible sampling draws from this
/// instead.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw from [0, bound), bias-free via rejection.
    std::uint64_t bounded(std::uint64_t bound) {
        const std::uint64_t threshold = (-bound) % bound;
        std::uint64_t x = next();
        while (x < threshold) x = next();
        return x % bound;
    }

  private:
    std::uint64_t state_;
};

/// Stream for the j-th sample of a run with the given seed. Streams are
/// independent of evaluation order, so estimates do not depend on how the
/// samples are scheduled.
inline SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t sample_index) {
    return SplitMix64(detail::splitmix64(seed) ^ detail::splitmix64(sample_index + 1));
}

/// Sorted uniform random k-subset of {0, ..., n-1}: partial Fisher-Yates on a
/// caller-provided pool, which is restored to identity before returning.
inline std::vector<Index> sample_subset(std::vector<Index>& pool, Index k, SplitMix64& rng) {
    const Index n = static_cast<Index>(pool.size());
    if (k < 1 || k > n) throw InvalidCount("subset size must satisfy 1 <= k <= n");
    std::vector<std::pair<Index, Index>> swaps;
    swaps.reserve(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) {
        const Index j = i + static_cast<Index>(rng.bounded(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        swaps.emplace_back(i, j);
    }
    std::vector<Index> subset(pool.begin(), pool.begin() + k);
    for (auto it = swaps.rbegin(); it != swaps.rend(); ++it) {
        std::swap(pool[static_cast<std::size_t>(it->first)], pool[static_cast<std::size_t>(it->second)]);
    }
    std::sort(subset.begin(), subset.end());
    return subset;
}

/// Convenience overload owning its pool; for one-off draws such as sampling a
/// marked set from (r, seed).
inline std::vector<Index> sample_subset(Index n, Index k, std::uint64_t seed,
                                        std::uint64_t sample_index = 0) {
    std::vector<Index> pool(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    SplitMix64 rng = sample_stream(seed, sample_index);
    return sample_subset(pool, k, rng);
}

} // namespace grover
