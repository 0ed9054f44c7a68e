#ifndef WIDTHFORGE_GENERATORS_HPP
#define WIDTHFORGE_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "widthforge/graph.hpp"
#include "widthforge/uqc.hpp"

namespace widthforge {

// Seeded generators. Only raw mt19937_64 output is used (no std
// distributions), so the same seed gives the same instance everywhere.

namespace detail {

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

/// G(n, p) on vertices v0..v{n-1}.
inline Graph random_graph(std::uint64_t seed, std::size_t n, double p) {
    std::mt19937_64 rng(seed);
    Graph g;
    for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (detail::unit(rng) < p) g.add_edge(u, v);
    return g;
}

/// `points` points p0.. and up to `quartets` random quartets (duplicates are
/// dropped by the instance).
inline UqcInstance random_uqc(std::uint64_t seed, std::size_t points, std::size_t quartets) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> pts;
    for (std::size_t i = 0; i < points; ++i) pts.push_back("p" + std::to_string(i));
    std::vector<Quartet> qs;
    if (points >= 4) {
        for (std::size_t k = 0; k < quartets; ++k) {
            std::vector<std::string> pool = pts;
            for (std::size_t i = 0; i < 4; ++i) std::swap(pool[i], pool[i + detail::below(rng, pool.size() - i)]);
            qs.emplace_back(pool[0], pool[1], pool[2], pool[3]);
        }
    }
    return UqcInstance(std::move(pts), qs);
}

}  // namespace widthforge

#endif
