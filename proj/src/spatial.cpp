#include "cubepaths/spatial.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <map>

namespace cubepaths {

namespace {

// Position of a letter in the order 0 < * < 1 along which coordinates move.
int rank(std::int8_t letter) { return letter == 0 ? 0 : letter == kFree ? 1 : 2; }

bool is_vertex(const CubeWord& w) { return std::none_of(w.begin(), w.end(), [](auto c) { return c == kFree; }); }

bool is_face_of(const CubeWord& sub, const CubeWord& cell)
{
    for (std::size_t x = 0; x < cell.size(); ++x)
        if (cell[x] != kFree && cell[x] != sub[x])
            return false;
    return true;
}

bool moves_up(const CubeWord& from, const CubeWord& to)
{
    for (std::size_t x = 0; x < from.size(); ++x)
        if (rank(from[x]) > rank(to[x]))
            return false;
    return true;
}

const CubeWord kBottom{0, 0, 0};
const CubeWord kTop{1, 1, 1};

// Open cell of [0,1]^3 containing a point.
CubeWord cell_of(const Coords& p)
{
    CubeWord w;
    for (const auto& x : p)
        w.push_back(x == 0 ? 0 : x == 1 ? 1 : kFree);
    return w;
}

void require_boundary_subcomplex(const FaceSet& a)
{
    for (const auto& w : a) {
        if (w.size() != 3)
            throw PreconditionError("cell " + word_string(w) + " is not a cell of the 3-cube");
        if (std::all_of(w.begin(), w.end(), [](auto c) { return c == kFree; }))
            throw PreconditionError("the top cell *** is not in the boundary of the 3-cube");
    }
    if (face_closure(a) != a)
        throw PreconditionError("cell set is not closed under faces");
}

}  // namespace

FaceSet face_closure(const FaceSet& cells)
{
    FaceSet out;
    for (const auto& w : cells) {
        // Every way of fixing some free letters to 0 or 1.
        std::vector<CubeWord> frontier{w};
        while (!frontier.empty()) {
            CubeWord cur = frontier.back();
            frontier.pop_back();
            if (!out.insert(cur).second)
                continue;
            for (std::size_t x = 0; x < cur.size(); ++x)
                if (cur[x] == kFree)
                    for (std::int8_t side : {0, 1}) {
                        CubeWord f = cur;
                        f[x] = side;
                        frontier.push_back(f);
                    }
        }
    }
    return out;
}

std::optional<B3Witness> is_in_B3(const FaceSet& a)
{
    require_boundary_subcomplex(a);
    if (!a.contains(kBottom) || !a.contains(kTop))
        return std::nullopt;

    std::vector<CubeWord> nodes;
    for (const auto& w : a)
        if (!is_vertex(w) || w == kBottom || w == kTop)
            nodes.push_back(w);

    std::map<CubeWord, CubeWord> parent;
    std::deque<CubeWord> queue{kBottom};
    parent.emplace(kBottom, kBottom);
    while (!queue.empty() && !parent.contains(kTop)) {
        const CubeWord cur = queue.front();
        queue.pop_front();
        for (const auto& next : nodes) {
            if (parent.contains(next) || !moves_up(cur, next))
                continue;
            if (!is_face_of(cur, next) && !is_face_of(next, cur))
                continue;
            parent.emplace(next, cur);
            queue.push_back(next);
        }
    }
    if (!parent.contains(kTop))
        return std::nullopt;

    B3Witness w;
    for (CubeWord at = kTop; at != kBottom; at = parent.at(at))
        w.cells.push_back(at);
    w.cells.push_back(kBottom);
    std::reverse(w.cells.begin(), w.cells.end());

    // Each coordinate is free on one contiguous run of cells; spread its
    // values evenly over (0,1) along that run.
    w.points.assign(w.cells.size(), Coords(3));
    for (int x = 0; x < 3; ++x) {
        std::size_t first = w.cells.size(), last = 0;
        for (std::size_t i = 0; i < w.cells.size(); ++i)
            if (w.cells[i][x] == kFree) {
                first = std::min(first, i);
                last = i;
            }
        for (std::size_t i = 0; i < w.cells.size(); ++i) {
            const auto letter = w.cells[i][x];
            w.points[i][x] = letter != kFree
                                 ? Rational(static_cast<long>(letter))
                                 : make_rational(static_cast<long>(i - first + 1), static_cast<long>(last - first + 2));
        }
    }
    return w;
}

bool verify_b3_witness(const FaceSet& a, const B3Witness& w)
{
    if (w.cells.size() < 2 || w.cells.size() != w.points.size())
        return false;
    if (w.cells.front() != kBottom || w.cells.back() != kTop)
        return false;
    for (std::size_t i = 0; i < w.cells.size(); ++i) {
        if (!a.contains(w.cells[i]) || w.points[i].size() != 3 || cell_of(w.points[i]) != w.cells[i])
            return false;
        if (i > 0 && i + 1 < w.cells.size() && is_vertex(w.cells[i]))
            return false;
    }
    for (std::size_t i = 0; i + 1 < w.points.size(); ++i) {
        const Coords& p = w.points[i];
        const Coords& q = w.points[i + 1];
        if (p == q)
            return false;
        Coords mid(3);
        for (int x = 0; x < 3; ++x) {
            if (p[x] > q[x])
                return false;
            mid[x] = (p[x] + q[x]) / 2;
        }
        // The open segment stays in the open cell of its midpoint.
        const CubeWord m = cell_of(mid);
        if (!a.contains(m) || is_vertex(m))
            return false;
    }
    return true;
}

DPath witness_path(const B3Witness& w)
{
    static const auto cube = std::make_shared<const PrecubicalSet>(standard_cube(3));
    Segment seg{{3, 0}, {}};
    Rational t = 0;
    for (std::size_t i = 0; i < w.points.size(); ++i) {
        if (i > 0)
            t += d1(w.points[i - 1], w.points[i]);
        seg.breaks.push_back({t, w.points[i]});
    }
    return DPath(cube, {seg});
}

FaceSet agreement_set(const PrecubicalSet& k, CellId first, CellId second)
{
    if (first.dim != 3 || second.dim != 3 || !k.contains(first) || !k.contains(second))
        throw PreconditionError("agreement sets compare two 3-cubes");
    FaceSet out;
    for (int code = 0; code < 27; ++code) {
        CubeWord w{static_cast<std::int8_t>(code / 9), static_cast<std::int8_t>(code / 3 % 3),
                   static_cast<std::int8_t>(code % 3)};
        if (std::all_of(w.begin(), w.end(), [](auto c) { return c == kFree; }))
            continue;
        if (face_at(k, first, w) == face_at(k, second, w))
            out.insert(w);
    }
    return out;
}

SpatialVerdict is_spatial(const PrecubicalSet& k)
{
    const int dim = k.dimension();
    if (dim >= 4)
        return {SpatialVerdict::Kind::unsupported, dim, std::nullopt};
    if (dim <= 2)
        return {SpatialVerdict::Kind::spatial, dim, std::nullopt};

    std::map<FaceSet, std::optional<B3Witness>> cache;
    for (std::size_t i = 0; i < k.count(3); ++i)
        for (std::size_t j = i + 1; j < k.count(3); ++j) {
            const CellId c1{3, i}, c2{3, j};
            if (lower_corner(k, c1) != lower_corner(k, c2) || upper_corner(k, c1) != upper_corner(k, c2))
                continue;
            FaceSet agr = agreement_set(k, c1, c2);
            auto it = cache.find(agr);
            if (it == cache.end())
                it = cache.emplace(agr, is_in_B3(agr)).first;
            if (it->second)
                return {SpatialVerdict::Kind::not_spatial, dim, SpatialWitness{c1, c2, std::move(agr), *it->second}};
        }
    return {SpatialVerdict::Kind::spatial, dim, std::nullopt};
}

bool verify_spatial_witness(const PrecubicalSet& k, const SpatialWitness& w)
{
    if (w.first == w.second || w.first.dim != 3 || w.second.dim != 3 || !k.contains(w.first) ||
        !k.contains(w.second))
        return false;
    for (const auto& cell : w.agreement)
        if (cell.size() != 3 || face_at(k, w.first, cell) != face_at(k, w.second, cell))
            return false;
    return face_closure(w.agreement) == w.agreement && verify_b3_witness(w.agreement, w.path);
}

PrecubicalSet double_cube(const FaceSet& a)
{
    require_boundary_subcomplex(a);
    const PrecubicalSet cube = standard_cube(3);

    // Second-copy cells come after all of □[3] in each dimension.
    std::vector<std::size_t> counts(4);
    for (int d = 0; d <= 3; ++d)
        counts[d] = cube.count(d);
    std::map<CellId, std::size_t> second;  // cube cell → index of its second copy
    for (int d = 0; d <= 3; ++d)
        for (std::size_t i = 0; i < cube.count(d); ++i)
            if (!a.contains(cube_word(3, {d, i})))
                second.emplace(CellId{d, i}, counts[d]++);

    PrecubicalSet::FaceTable faces(3);
    PrecubicalSet::Labels labels = cube.labels();
    for (int d = 1; d <= 3; ++d) {
        faces[d - 1].resize(counts[d]);
        for (std::size_t i = 0; i < cube.count(d); ++i)
            for (int axis = 1; axis <= d; ++axis)
                for (int side = 0; side <= 1; ++side)
                    faces[d - 1][i].push_back(cube.face({d, i}, axis, side).index);
    }
    for (const auto& [cell, index] : second) {
        labels[{cell.dim, index}] = word_string(cube_word(3, cell)) + "'";
        if (cell.dim == 0)
            continue;
        auto& out = faces[cell.dim - 1][index];
        for (int axis = 1; axis <= cell.dim; ++axis)
            for (int side = 0; side <= 1; ++side) {
                const CellId f = cube.face(cell, axis, side);
                auto it = second.find(f);
                out.push_back(it == second.end() ? f.index : it->second);
            }
    }
    PrecubicalSet out(std::move(counts), faces, std::move(labels));
    require_valid(out);
    return out;
}

std::string verdict_name(const SpatialVerdict& v)
{
    switch (v.kind) {
    case SpatialVerdict::Kind::spatial:
        return "spatial";
    case SpatialVerdict::Kind::not_spatial:
        return "not-spatial";
    case SpatialVerdict::Kind::unsupported:
        break;
    }
    return "unsupported(dim=" + std::to_string(v.dimension) + ")";
}

std::string verdict_to_json(const SpatialVerdict& v)
{
    using nlohmann::ordered_json;
    ordered_json out{{"verdict", verdict_name(v)}, {"dimension", v.dimension}};
    if (v.witness) {
        const auto& w = *v.witness;
        ordered_json agreement = ordered_json::array();
        for (const auto& cell : w.agreement)
            agreement.push_back(word_string(cell));
        ordered_json cells = ordered_json::array(), points = ordered_json::array();
        for (const auto& cell : w.path.cells)
            cells.push_back(word_string(cell));
        for (const auto& p : w.path.points) {
            ordered_json coords = ordered_json::array();
            for (const auto& x : p)
                coords.push_back(to_string(x));
            points.push_back(coords);
        }
        out["witness"] = {{"cubes", {{w.first.dim, w.first.index}, {w.second.dim, w.second.index}}},
                          {"agreement", agreement},
                          {"path", {{"cells", cells}, {"points", points}}}};
    }
    return out.dump(2) + "\n";
}

}  // namespace cubepaths
