#pragma once
// Plane geometry shared by the lattice and continuum sides: integer lattice
// points with packed-key hashing, open lattice discs with the discrete
// boundary convention, and 2d vectors.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "thickpoints/rng.hpp"

namespace thick {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double c) const { return {x * c, y * c}; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
};

struct LatticePoint {
    std::int32_t x = 0;
    std::int32_t y = 0;

    bool operator==(const LatticePoint&) const = default;
    std::int64_t norm2() const {
        return std::int64_t(x) * x + std::int64_t(y) * y;
    }
};

// Packs a lattice point into the 64-bit hash key. The all-min pattern is the
// empty-slot sentinel of PointMap, so the coordinate INT32_MIN is reserved;
// desk-scale walks stay within a few thousand of the origin.
inline std::uint64_t pack_point(LatticePoint p) {
    return (std::uint64_t(std::uint32_t(p.x)) << 32) | std::uint32_t(p.y);
}

inline LatticePoint unpack_point(std::uint64_t k) {
    return {std::int32_t(std::uint32_t(k >> 32)), std::int32_t(std::uint32_t(k))};
}

// Open disc on Z^2: z in D_center(r)  <=>  |z - center| < r (strict).
// Boundary: z' outside D adjacent (unit step) to some point of D.
struct LatticeDisc {
    LatticePoint center{};
    double radius = 0.0;

    bool contains(LatticePoint z) const {
        const std::int64_t dx = std::int64_t(z.x) - center.x;
        const std::int64_t dy = std::int64_t(z.y) - center.y;
        return double(dx * dx + dy * dy) < radius * radius;
    }

    bool on_boundary(LatticePoint z) const {
        if (contains(z)) return false;
        const LatticePoint nb[4] = {{z.x + 1, z.y}, {z.x - 1, z.y},
                                    {z.x, z.y + 1}, {z.x, z.y - 1}};
        for (const auto& q : nb)
            if (contains(q)) return true;
        return false;
    }
};

// Open-addressed hash map keyed by packed lattice coordinates. Linear
// probing, power-of-two capacity, splitmix finalizer as the hash. The visited
// set of an n-step walk is ~ pi*n/log n points, so a flat table beats any
// node-based map by a wide margin at n = 2^24.
template <typename T>
class PointMap {
    static constexpr std::uint64_t kEmpty =
        (std::uint64_t(0x80000000u) << 32) | 0x80000000u; // (INT32_MIN, INT32_MIN)

  public:
    explicit PointMap(std::size_t initial_capacity = 16) {
        std::size_t cap = 16;
        while (cap < initial_capacity) cap <<= 1;
        keys_.assign(cap, kEmpty);
        vals_.assign(cap, T{});
        mask_ = cap - 1;
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    T& operator[](LatticePoint p) {
        const std::uint64_t k = pack_point(p);
        if (k == kEmpty) throw std::invalid_argument("PointMap: coordinate INT32_MIN is reserved");
        if ((size_ + 1) * 10 >= (mask_ + 1) * 7) grow();
        std::size_t i = probe(k);
        if (keys_[i] == kEmpty) {
            keys_[i] = k;
            ++size_;
        }
        return vals_[i];
    }

    const T* find(LatticePoint p) const {
        const std::uint64_t k = pack_point(p);
        const std::size_t i = probe(k);
        return keys_[i] == k ? &vals_[i] : nullptr;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i <= mask_; ++i)
            if (keys_[i] != kEmpty) f(unpack_point(keys_[i]), vals_[i]);
    }

  private:
    std::size_t probe(std::uint64_t k) const {
        std::size_t i = mix64(k) & mask_;
        while (keys_[i] != kEmpty && keys_[i] != k) i = (i + 1) & mask_;
        return i;
    }

    void grow() {
        std::vector<std::uint64_t> old_keys = std::move(keys_);
        std::vector<T> old_vals = std::move(vals_);
        const std::size_t cap = (mask_ + 1) * 2;
        keys_.assign(cap, kEmpty);
        vals_.assign(cap, T{});
        mask_ = cap - 1;
        for (std::size_t i = 0; i < old_keys.size(); ++i) {
            if (old_keys[i] == kEmpty) continue;
            std::size_t j = mix64(old_keys[i]) & mask_;
            while (keys_[j] != kEmpty) j = (j + 1) & mask_;
            keys_[j] = old_keys[i];
            vals_[j] = old_vals[i];
        }
    }

    std::vector<std::uint64_t> keys_;
    std::vector<T> vals_;
    std::size_t size_ = 0;
    std::size_t mask_ = 0;
};

} // namespace thick
