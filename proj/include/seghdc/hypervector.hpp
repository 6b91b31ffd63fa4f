#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace seghdc {

/// Deterministic 64-bit-seeded generator. mt19937_64 output is fixed by the
/// standard, so one seed gives one stream everywhere we build on it.
using Rng = std::mt19937_64;

/// Binary hypervector with runtime dimension, bit-packed into 64-bit words.
/// Invariant: bits past `dim` in the last word are always zero, so word-wise
/// popcount kernels need no tail handling.
class Hypervector {
public:
    Hypervector() = default;
    explicit Hypervector(std::size_t dim);  // all-zero

    static Hypervector random(std::size_t dim, Rng& rng);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t word_count() const noexcept { return words_.size(); }
    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::span<std::uint64_t> words() noexcept { return words_; }

    bool bit(std::size_t i) const;
    void set_bit(std::size_t i, bool v);

    std::size_t popcount() const noexcept;

    friend bool operator==(const Hypervector& a, const Hypervector& b) = default;

    static std::size_t words_for(std::size_t dim) noexcept { return (dim + 63) / 64; }

private:
    std::size_t dim_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Non-negative integer vector; accumulates hypervector bits to form cluster
/// centroids. Entries are bounded by the number of accumulated vectors.
class IntVector {
public:
    IntVector() = default;
    explicit IntVector(std::size_t dim) : values_(dim, 0) {}

    static IntVector from_hv(const Hypervector& h);

    std::size_t dim() const noexcept { return values_.size(); }
    std::uint32_t operator[](std::size_t i) const { return values_[i]; }
    std::uint32_t& operator[](std::size_t i) { return values_[i]; }
    std::span<const std::uint32_t> values() const noexcept { return values_; }

    /// Element-wise add of h's bits into this vector.
    void add(const Hypervector& h);
    void add_words(std::span<const std::uint64_t> hv_words);

    /// Exact integer sum of squared entries.
    std::uint64_t norm_squared() const noexcept;

    /// Scale every entry by a positive integer (cosine assignment must ignore this).
    void scale(std::uint32_t factor);

    friend bool operator==(const IntVector& a, const IntVector& b) = default;

private:
    std::vector<std::uint32_t> values_;
};

// --- operations -------------------------------------------------------------

Hypervector hv_xor(const Hypervector& a, const Hypervector& b);
inline Hypervector operator^(const Hypervector& a, const Hypervector& b) { return hv_xor(a, b); }

/// New vector with bits in [start, start+len) inverted; the input is untouched.
Hypervector flip_range(const Hypervector& h, std::size_t start, std::size_t len);

std::size_t hamming_distance(const Hypervector& a, const Hypervector& b);
std::size_t hamming_distance_words(std::span<const std::uint64_t> a,
                                   std::span<const std::uint64_t> b);

/// 1 - (y.z)/(|y||z|). Exactly 1 when either argument is the zero vector.
/// Dot products and norms are exact integers; the division is the only
/// floating-point step.
double cosine_distance(const Hypervector& a, const Hypervector& b);
double cosine_distance(const IntVector& a, const IntVector& b);
double cosine_distance(const Hypervector& a, const IntVector& b);
inline double cosine_distance(const IntVector& a, const Hypervector& b) {
    return cosine_distance(b, a);
}

/// Element-wise integer addition of h's bits into acc (value-semantics form).
IntVector accumulate(IntVector acc, const Hypervector& h);

/// Bits of all parts in argument order; result dim is the sum of part dims.
Hypervector concat(std::span<const Hypervector> parts);

/// Sum of z over the set bits of a packed hypervector.
std::uint64_t dot_words(std::span<const std::uint64_t> hv_words, const IntVector& z);
std::uint64_t dot(const Hypervector& y, const IntVector& z);
std::uint64_t dot(const IntVector& y, const IntVector& z);

}  // namespace seghdc
