#include "support.hpp"

#include "cubepaths/spatial.hpp"

#include <doctest.h>

#include <array>
#include <deque>

using namespace cubepaths;
using namespace cubepaths::testing;

namespace {

FaceSet words(std::initializer_list<const char*> cells)
{
    FaceSet out;
    for (const char* c : cells)
        out.insert(parse_word(c));
    return face_closure(out);
}

FaceSet proper_faces_of_cube()
{
    FaceSet out;
    for (const auto& w : all_words(3))
        if (stars(w) < 3)
            out.insert(w);
    return out;
}

// Staircase search on the grid {0, 1/N, ..., 1}^3: unit axis steps whose open
// segment lies in an open cell of A, never stopping at a cube vertex other
// than the two ends.
bool grid_oracle(const FaceSet& a, int steps)
{
    auto letter = [&](int v) -> std::int8_t { return v == 0 ? 0 : v == steps ? 1 : kFree; };
    auto cell = [&](const std::array<int, 3>& p) { return CubeWord{letter(p[0]), letter(p[1]), letter(p[2])}; };
    auto vertex = [](const CubeWord& w) { return stars(w) == 0; };
    const std::array<int, 3> start{0, 0, 0}, goal{steps, steps, steps};
    if (!a.contains(cell(start)) || !a.contains(cell(goal)))
        return false;
    std::set<std::array<int, 3>> seen{start};
    std::deque<std::array<int, 3>> queue{start};
    while (!queue.empty()) {
        const auto p = queue.front();
        queue.pop_front();
        if (p == goal)
            return true;
        for (int x = 0; x < 3; ++x) {
            if (p[x] == steps)
                continue;
            auto q = p;
            ++q[x];
            // Open segment from p to q: coordinate x strictly between the two values.
            CubeWord seg = cell(p);
            seg[x] = kFree;
            if (!a.contains(seg) || !a.contains(cell(q)))
                continue;
            if (vertex(cell(q)) && q != goal)
                continue;
            if (seen.insert(q).second)
                queue.push_back(q);
        }
    }
    return false;
}

FaceSet permuted(const FaceSet& a, const std::array<int, 3>& sigma)
{
    FaceSet out;
    for (const auto& w : a) {
        CubeWord v(3);
        for (int x = 0; x < 3; ++x)
            v[sigma[x]] = w[x];
        out.insert(v);
    }
    return out;
}

FaceSet random_boundary_subset(std::mt19937& rng, double p)
{
    std::bernoulli_distribution pick(p);
    FaceSet seed;
    for (const auto& w : all_words(3))
        if (stars(w) >= 1 && stars(w) <= 2 && pick(rng))
            seed.insert(w);
    seed.insert(parse_word("000"));
    seed.insert(parse_word("111"));
    return face_closure(seed);
}

}  // namespace

TEST_CASE("B_3 membership on the standard fixtures")
{
    const FaceSet all = proper_faces_of_cube();
    auto w = is_in_B3(all);
    REQUIRE(w.has_value());
    CHECK(verify_b3_witness(all, *w));

    // Two squares sharing the edge *10, as in the non-tame crossing.
    const FaceSet fig = words({"**0", "*1*"});
    w = is_in_B3(fig);
    REQUIRE(w.has_value());
    CHECK(verify_b3_witness(fig, *w));
    CHECK(w->cells == std::vector<CubeWord>{parse_word("000"), parse_word("**0"), parse_word("*10"),
                                            parse_word("*1*"), parse_word("111")});
    const DPath path = witness_path(*w);
    CHECK(path.length() == 3);
    CHECK(is_natural(path));

    FaceSet edges;
    for (const auto& c : all)
        if (stars(c) <= 1)
            edges.insert(c);
    CHECK_FALSE(is_in_B3(edges).has_value());
    CHECK(grid_oracle(fig, 6));
    CHECK_FALSE(grid_oracle(edges, 6));

    // Missing an end vertex.
    CHECK_FALSE(is_in_B3(words({"*1*"})).has_value());
}

TEST_CASE("B_3 preconditions")
{
    CHECK_THROWS_AS(is_in_B3({parse_word("**0")}), PreconditionError);
    CHECK_THROWS_AS(is_in_B3(words({"***"})), PreconditionError);
    CHECK_THROWS_AS(is_in_B3({parse_word("0*")}), PreconditionError);
}

TEST_CASE("B_3 membership agrees with staircase search and is symmetric")
{
    std::mt19937 rng(17);
    const std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    int members = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const FaceSet a = random_boundary_subset(rng, trial % 2 ? 0.2 : 0.35);
        const auto w = is_in_B3(a);
        CAPTURE(trial);
        CHECK(w.has_value() == grid_oracle(a, 8));
        if (w) {
            ++members;
            CHECK(verify_b3_witness(a, *w));
            CHECK(is_natural(witness_path(*w)));
        }
        for (const auto& s : perms)
            CHECK(is_in_B3(permuted(a, s)).has_value() == w.has_value());
    }
    CHECK(members > 20);
    CHECK(members < 380);
}

TEST_CASE("tampered witnesses are rejected")
{
    const FaceSet fig = words({"**0", "*1*"});
    const auto w = *is_in_B3(fig);
    auto bad = w;
    std::swap(bad.points[1], bad.points[3]);
    CHECK_FALSE(verify_b3_witness(fig, bad));
    bad = w;
    bad.points[2] = {q(1), q(1), q(0)};
    CHECK_FALSE(verify_b3_witness(fig, bad));
    CHECK_FALSE(verify_b3_witness(words({"**0"}), w));
}

TEST_CASE("low-dimensional and standard complexes are spatial")
{
    std::mt19937 rng(23);
    const auto sk = skeleton(standard_cube(4), 2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto k = subcomplex(sk, random_closed_subset(sk, 0.4, rng));
        CHECK(is_spatial(k).kind == SpatialVerdict::Kind::spatial);
    }
    CHECK(is_spatial(standard_cube(3)).kind == SpatialVerdict::Kind::spatial);
    CHECK(is_spatial(boundary(3)).kind == SpatialVerdict::Kind::spatial);
    CHECK(is_spatial(PrecubicalSet{}).kind == SpatialVerdict::Kind::spatial);
    const auto four = is_spatial(standard_cube(4));
    CHECK(four.kind == SpatialVerdict::Kind::unsupported);
    CHECK(verdict_name(four) == "unsupported(dim=4)");
}

TEST_CASE("doubling a cube along A is spatial exactly when A is not in B_3")
{
    const FaceSet fig = words({"**0", "*1*"});
    const auto k = double_cube(fig);
    CHECK(k.count(3) == 2);
    CHECK_FALSE(validate(k).has_value());
    CHECK(agreement_set(k, {3, 0}, {3, 1}) == fig);
    const auto v = is_spatial(k);
    REQUIRE(v.kind == SpatialVerdict::Kind::not_spatial);
    REQUIRE(v.witness.has_value());
    CHECK(verify_spatial_witness(k, *v.witness));
    CHECK(v.witness->first != v.witness->second);
    CHECK(verdict_to_json(v).find("\"not-spatial\"") != std::string::npos);

    auto forged = *v.witness;
    forged.second = forged.first;
    CHECK_FALSE(verify_spatial_witness(k, forged));

    std::mt19937 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        const FaceSet a = random_boundary_subset(rng, 0.3);
        const auto d = double_cube(a);
        const auto verdict = is_spatial(d);
        CAPTURE(trial);
        CHECK((verdict.kind == SpatialVerdict::Kind::not_spatial) == is_in_B3(a).has_value());
        if (verdict.witness)
            CHECK(verify_spatial_witness(d, *verdict.witness));
    }
}
