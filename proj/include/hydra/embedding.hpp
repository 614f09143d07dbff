#pragma once
// Embedding provider contract plus the deterministic offline implementation.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hydra/types.hpp"

namespace hydra {

using Vector = std::vector<double>;

inline double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vector& v) { return std::sqrt(dot(v, v)); }

inline double cosine(const Vector& a, const Vector& b) {
    double na = norm(a), nb = norm(b);
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot(a, b) / (na * nb);
}

class Embedder {
public:
    virtual ~Embedder() = default;
    virtual Vector embed(std::string_view text) const = 0;
    virtual size_t dimension() const = 0;
    // True when every emitted component is >= 0, so cosines already lie in
    // [0,1]. Backends that can emit negatives get remapped via (x+1)/2.
    virtual bool nonnegative() const { return false; }

    // Cosine similarity mapped into [0,1].
    double similarity(std::string_view a, std::string_view b) const {
        double c = cosine(embed(a), embed(b));
        if (!nonnegative()) c = (c + 1.0) / 2.0;
        if (c < 0.0) c = 0.0;
        if (c > 1.0) c = 1.0;
        return c;
    }
};

// Character-trigram hashing embedder: 256 nonnegative dimensions,
// L2-normalized, bitwise deterministic across runs and platforms.
class HashingEmbedder final : public Embedder {
public:
    static constexpr size_t kDim = 256;

    Vector embed(std::string_view text) const override {
        Vector v(kDim, 0.0);
        std::string padded = " " + normalize_label(text) + " ";
        if (padded.size() < 3) padded.append(3 - padded.size(), ' ');
        for (size_t i = 0; i + 3 <= padded.size(); ++i) {
            v[fnv1a(padded.substr(i, 3)) % kDim] += 1.0;
        }
        double n = norm(v);
        if (n > 0.0) {
            for (double& x : v) x /= n;
        }
        return v;
    }

    size_t dimension() const override { return kDim; }
    bool nonnegative() const override { return true; }

private:
    static uint64_t fnv1a(std::string_view s) {
        uint64_t h = 1469598103934665603ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace hydra
