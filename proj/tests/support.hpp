#pragma once

// Shared test helpers: seeded generators and brute-force oracles that do not
// go through the library code they check.

#include "cubepaths/pcset.hpp"

#include <random>
#include <vector>

namespace cubepaths::testing {

/// Random face-closed subset of K: each cell is picked with probability p,
/// then every face of a picked cell is added.
inline std::vector<std::vector<bool>> random_closed_subset(const PrecubicalSet& k, double p, std::mt19937& rng)
{
    std::bernoulli_distribution pick(p);
    std::vector<std::vector<bool>> keep(k.dimension() + 1);
    for (int d = 0; d <= k.dimension(); ++d) {
        keep[d].resize(k.count(d));
        for (std::size_t i = 0; i < k.count(d); ++i)
            keep[d][i] = pick(rng);
    }
    for (int d = k.dimension(); d >= 1; --d)
        for (std::size_t i = 0; i < k.count(d); ++i)
            if (keep[d][i])
                for (int axis = 1; axis <= d; ++axis)
                    for (int side = 0; side <= 1; ++side)
                        keep[d - 1][k.face({d, i}, axis, side).index] = true;
    return keep;
}

/// All words of {0,1,*}^n, by plain base-3 counting.
inline std::vector<CubeWord> all_words(int n)
{
    std::vector<CubeWord> out;
    std::size_t total = 1;
    for (int i = 0; i < n; ++i)
        total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        CubeWord w(n);
        std::size_t c = code;
        for (int p = n - 1; p >= 0; --p) {
            w[p] = static_cast<std::int8_t>(c % 3);
            c /= 3;
        }
        out.push_back(w);
    }
    return out;
}

inline int stars(const CubeWord& w)
{
    int s = 0;
    for (auto letter : w)
        s += letter == kFree;
    return s;
}

/// Vertex of □[n] as a CellId, from its 0/1 coordinates.
inline CellId cube_vertex(std::initializer_list<int> bits)
{
    CubeWord w;
    for (int b : bits)
        w.push_back(static_cast<std::int8_t>(b));
    return cube_cell(w);
}

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

}  // namespace cubepaths::testing

#include "cubepaths/dpath.hpp"

#include <memory>

namespace cubepaths::testing {

inline std::shared_ptr<const PrecubicalSet> shared(PrecubicalSet k)
{
    return std::make_shared<const PrecubicalSet>(std::move(k));
}

/// Straight diagonal 0_n → 1_n of the top cube of □[n] on [0, length].
inline DPath diagonal(const std::shared_ptr<const PrecubicalSet>& cube, int n, const Rational& length)
{
    Segment seg{{n, 0}, {{0, Coords(n, Rational(0))}, {length, Coords(n, Rational(1))}}};
    return DPath(cube, {seg});
}

/// Random monotone chain of points 0_n → 1_n in [0,1]^n with denominators up
/// to den; every consecutive pair differs.
inline std::vector<Coords> random_monotone_points(int n, int steps, int den, std::mt19937& rng)
{
    std::vector<Coords> pts{Coords(n, Rational(0))};
    std::uniform_int_distribution<int> step(0, den);
    for (int s = 0; s < steps; ++s) {
        Coords next = pts.back();
        for (int a = 0; a < n; ++a) {
            Rational room = 1 - next[a];
            next[a] += room * q(step(rng), den) / 2;
        }
        if (next != pts.back())
            pts.push_back(next);
    }
    if (pts.back() != Coords(n, Rational(1)))
        pts.push_back(Coords(n, Rational(1)));
    return pts;
}

/// A track through pts with random positive leg durations.
inline Segment random_track(CellId carrier, const std::vector<Coords>& pts, std::mt19937& rng)
{
    std::uniform_int_distribution<int> dur(1, 6);
    Segment seg{carrier, {{0, pts.front()}}};
    Rational t = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        t += q(dur(rng), 3);
        seg.breaks.push_back({t, pts[i]});
    }
    return seg;
}

/// Random strictly increasing PL map [0, source] → [0, target].
inline Reparam random_reparam(const Rational& source, const Rational& target, std::mt19937& rng)
{
    std::uniform_int_distribution<int> pieces(1, 4);
    std::uniform_int_distribution<int> w(1, 5);
    const int p = pieces(rng);
    std::vector<Rational> dt, dv;
    Rational st = 0, sv = 0;
    for (int i = 0; i < p; ++i) {
        dt.push_back(Rational(w(rng)));
        dv.push_back(Rational(w(rng)));
        st += dt.back();
        sv += dv.back();
    }
    std::vector<PlMap::Break> breaks{{0, 0}};
    Rational t = 0, v = 0;
    for (int i = 0; i < p; ++i) {
        t += dt[i] * source / st;
        v += dv[i] * target / sv;
        breaks.push_back({t, v});
    }
    return Reparam(PlMap(std::move(breaks)));
}

}  // namespace cubepaths::testing

namespace cubepaths::testing {

/// The non-tame path 0_3 → 1_3 across two squares of ∂□[3] through the
/// interior of their common edge *10, at x1 = 3/5.
inline DPath crossing_path_in_boundary()
{
    auto k = shared(boundary(3));
    Segment front = straight_segment(cube_cell(parse_word("**0")), {q(0), q(0)}, {q(3, 5), q(1)});
    Segment top = straight_segment(cube_cell(parse_word("*1*")), {q(3, 5), q(0)}, {q(1), q(1)});
    return DPath(k, {front, top});
}

/// The same track carried by the top cell of □[3].
inline DPath crossing_path_in_cube()
{
    auto k = shared(standard_cube(3));
    Segment a = straight_segment({3, 0}, {q(0), q(0), q(0)}, {q(3, 5), q(1), q(0)});
    Segment b = straight_segment({3, 0}, {q(3, 5), q(1), q(0)}, {q(1), q(1), q(1)});
    return DPath(k, {a, b});
}

}  // namespace cubepaths::testing
