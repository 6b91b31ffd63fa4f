#include "seghdc/hypervector.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "seghdc/errors.hpp"

namespace seghdc {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
    if (a != b) {
        throw ConfigError(std::string(op) + ": dimension mismatch (" +
                          std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

// 1-bits at positions [start, start+len) of word w (word-local positions).
std::uint64_t range_mask(std::size_t start, std::size_t len) {
    if (len == 0) return 0;
    std::uint64_t m = ~0ULL >> (64 - len);
    return m << start;
}

}  // namespace

Hypervector::Hypervector(std::size_t dim) : dim_(dim), words_(words_for(dim), 0) {
    if (dim == 0) throw ConfigError("hypervector dimension must be >= 1");
}

Hypervector Hypervector::random(std::size_t dim, Rng& rng) {
    Hypervector h(dim);
    for (auto& w : h.words_) w = rng();
    // keep tail bits zero
    if (dim % 64 != 0) h.words_.back() &= range_mask(0, dim % 64);
    return h;
}

bool Hypervector::bit(std::size_t i) const {
    if (i >= dim_) throw ConfigError("hypervector bit index out of range");
    return (words_[i >> 6] >> (i & 63)) & 1ULL;
}

void Hypervector::set_bit(std::size_t i, bool v) {
    if (i >= dim_) throw ConfigError("hypervector bit index out of range");
    const std::uint64_t m = 1ULL << (i & 63);
    if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
}

std::size_t Hypervector::popcount() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
}

Hypervector hv_xor(const Hypervector& a, const Hypervector& b) {
    require_same_dim(a.dim(), b.dim(), "xor");
    Hypervector out(a.dim());
    auto oa = a.words(), ob = b.words();
    auto ow = out.words();
    for (std::size_t i = 0; i < ow.size(); ++i) ow[i] = oa[i] ^ ob[i];
    return out;
}

Hypervector flip_range(const Hypervector& h, std::size_t start, std::size_t len) {
    if (start + len > h.dim() || start + len < start) {
        throw ConfigError("flip_range out of bounds: [" + std::to_string(start) + ", " +
                          std::to_string(start + len) + ") exceeds dim " +
                          std::to_string(h.dim()));
    }
    Hypervector out = h;
    auto w = out.words();
    std::size_t i = start;
    while (i < start + len) {
        const std::size_t word = i >> 6;
        const std::size_t off = i & 63;
        const std::size_t take = std::min<std::size_t>(64 - off, start + len - i);
        w[word] ^= range_mask(off, take);
        i += take;
    }
    return out;
}

std::size_t hamming_distance_words(std::span<const std::uint64_t> a,
                                   std::span<const std::uint64_t> b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += std::popcount(a[i] ^ b[i]);
    return n;
}

std::size_t hamming_distance(const Hypervector& a, const Hypervector& b) {
    require_same_dim(a.dim(), b.dim(), "hamming_distance");
    return hamming_distance_words(a.words(), b.words());
}

IntVector IntVector::from_hv(const Hypervector& h) {
    IntVector v(h.dim());
    v.add(h);
    return v;
}

void IntVector::add(const Hypervector& h) {
    if (h.dim() != dim()) {
        throw ConfigError("accumulate: dimension mismatch (" + std::to_string(dim()) +
                          " vs " + std::to_string(h.dim()) + ")");
    }
    add_words(h.words());
}

void IntVector::add_words(std::span<const std::uint64_t> hv_words) {
    for (std::size_t wi = 0; wi < hv_words.size(); ++wi) {
        std::uint64_t w = hv_words[wi];
        while (w) {
            const int b = std::countr_zero(w);
            ++values_[(wi << 6) + static_cast<std::size_t>(b)];
            w &= w - 1;
        }
    }
}

std::uint64_t IntVector::norm_squared() const noexcept {
    std::uint64_t s = 0;
    for (auto v : values_) s += static_cast<std::uint64_t>(v) * v;
    return s;
}

void IntVector::scale(std::uint32_t factor) {
    for (auto& v : values_) v *= factor;
}

IntVector accumulate(IntVector acc, const Hypervector& h) {
    acc.add(h);
    return acc;
}

std::uint64_t dot_words(std::span<const std::uint64_t> hv_words, const IntVector& z) {
    std::uint64_t s = 0;
    auto vals = z.values();
    for (std::size_t wi = 0; wi < hv_words.size(); ++wi) {
        std::uint64_t w = hv_words[wi];
        const std::size_t base = wi << 6;
        while (w) {
            const int b = std::countr_zero(w);
            s += vals[base + static_cast<std::size_t>(b)];
            w &= w - 1;
        }
    }
    return s;
}

std::uint64_t dot(const Hypervector& y, const IntVector& z) {
    require_same_dim(y.dim(), z.dim(), "dot");
    return dot_words(y.words(), z);
}

std::uint64_t dot(const IntVector& y, const IntVector& z) {
    require_same_dim(y.dim(), z.dim(), "dot");
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < y.dim(); ++i) {
        s += static_cast<std::uint64_t>(y[i]) * z[i];
    }
    return s;
}

namespace {

double cosine_from_parts(std::uint64_t dotp, std::uint64_t n2a, std::uint64_t n2b) {
    if (n2a == 0 || n2b == 0) return 1.0;  // zero vector carries no similarity
    return 1.0 - static_cast<double>(dotp) /
                     (std::sqrt(static_cast<double>(n2a)) * std::sqrt(static_cast<double>(n2b)));
}

}  // namespace

double cosine_distance(const Hypervector& a, const Hypervector& b) {
    require_same_dim(a.dim(), b.dim(), "cosine_distance");
    std::uint64_t inter = 0;
    auto wa = a.words(), wb = b.words();
    for (std::size_t i = 0; i < wa.size(); ++i) inter += std::popcount(wa[i] & wb[i]);
    return cosine_from_parts(inter, a.popcount(), b.popcount());
}

double cosine_distance(const IntVector& a, const IntVector& b) {
    require_same_dim(a.dim(), b.dim(), "cosine_distance");
    return cosine_from_parts(dot(a, b), a.norm_squared(), b.norm_squared());
}

double cosine_distance(const Hypervector& a, const IntVector& b) {
    require_same_dim(a.dim(), b.dim(), "cosine_distance");
    return cosine_from_parts(dot(a, b), a.popcount(), b.norm_squared());
}

Hypervector concat(std::span<const Hypervector> parts) {
    if (parts.empty()) throw ConfigError("concat: at least one part required");
    std::size_t total = 0;
    for (const auto& p : parts) total += p.dim();
    Hypervector out(total);
    auto ow = out.words();
    std::size_t offset = 0;  // bits already written
    for (const auto& p : parts) {
        auto pw = p.words();
        const std::size_t word = offset >> 6;
        const std::size_t shift = offset & 63;
        // valid-bit regions are disjoint, so OR never clobbers earlier parts
        for (std::size_t i = 0; i < pw.size(); ++i) {
            ow[word + i] |= pw[i] << shift;
            if (shift != 0 && word + i + 1 < ow.size()) ow[word + i + 1] |= pw[i] >> (64 - shift);
        }
        offset += p.dim();
    }
    return out;
}

}  // namespace seghdc
