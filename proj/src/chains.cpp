#include "cubepaths/chains.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <iostream>
#include <numeric>

namespace cubepaths {

std::vector<int> CubeChain::shape() const
{
    std::vector<int> s;
    for (const auto& c : cubes)
        s.push_back(c.dim);
    return s;
}

int CubeChain::total_dim() const
{
    int total = 0;
    for (const auto& c : cubes)
        total += c.dim;
    return total;
}

std::string to_string(const CubeChain& chain)
{
    std::string out = "[";
    for (std::size_t i = 0; i < chain.cubes.size(); ++i)
        out += (i ? " " : "") + to_string(chain.cubes[i]);
    return out + "]";
}

void check_chain(const PrecubicalSet& k, const CubeChain& chain, std::size_t alpha, std::size_t beta)
{
    if (chain.cubes.empty())
        throw PreconditionError("a cube chain has at least one cube");
    CellId at{0, alpha};
    for (const auto& c : chain.cubes) {
        if (!k.contains(c) || c.dim < 1)
            throw PreconditionError("chain cube " + to_string(c) + " is not a cube of dimension >= 1");
        if (lower_corner(k, c) != at)
            throw PreconditionError("chain cube " + to_string(c) + " does not start at vertex " +
                                    std::to_string(at.index));
        at = upper_corner(k, c);
    }
    if (at != CellId{0, beta})
        throw PreconditionError("chain ends at vertex " + std::to_string(at.index) + ", not " + std::to_string(beta));
}

// -- category ----------------------------------------------------------------

ChainCategory::ChainCategory(std::size_t alpha, std::size_t beta, int n, std::vector<CubeChain> objects,
                             std::vector<ChainMorphism> morphisms)
    : alpha_(alpha)
    , beta_(beta)
    , n_(n)
    , objects_(std::move(objects))
    , morphisms_(std::move(morphisms))
    , outgoing_(objects_.size())
    , incoming_(objects_.size())
{
    for (std::size_t i = 0; i < objects_.size(); ++i)
        object_index_.emplace(objects_[i], i);
    std::sort(morphisms_.begin(), morphisms_.end());
    const auto dup = std::unique(morphisms_.begin(), morphisms_.end());
#ifndef NDEBUG
    if (dup != morphisms_.end())
        std::clog << "chain category: " << (morphisms_.end() - dup) << " duplicate morphisms merged\n";
#endif
    morphisms_.erase(dup, morphisms_.end());
    for (std::size_t m = 0; m < morphisms_.size(); ++m) {
        const auto& f = morphisms_[m];
        if (f.is_identity())
            throw std::invalid_argument("identities are implicit in ChainCategory");
        outgoing_.at(f.source).push_back(m);
        incoming_.at(f.target).push_back(m);
    }
}

std::optional<std::size_t> ChainCategory::find_object(const CubeChain& chain) const
{
    if (auto it = object_index_.find(chain); it != object_index_.end())
        return it->second;
    return std::nullopt;
}

std::optional<std::size_t> ChainCategory::find_morphism(const ChainMorphism& f) const
{
    auto it = std::lower_bound(morphisms_.begin(), morphisms_.end(), f);
    if (it != morphisms_.end() && *it == f)
        return static_cast<std::size_t>(it - morphisms_.begin());
    return std::nullopt;
}

ChainMorphism ChainCategory::identity(std::size_t object) const
{
    ChainMorphism id{object, object, {}};
    for (const auto& c : objects_.at(object).cubes)
        id.owners.emplace_back(c.dim, 0);
    return id;
}

ChainMorphism ChainCategory::compose(const ChainMorphism& g, const ChainMorphism& f) const
{
    if (f.target != g.source)
        throw std::invalid_argument("compose: arrows are not composable");

    // How many cubes of f's source each cube of f's target absorbs.
    std::vector<int> absorbed;
    for (const auto& own : f.owners)
        absorbed.push_back(*std::max_element(own.begin(), own.end()) + 1);

    ChainMorphism h{f.source, g.target, {}};
    std::size_t mid = 0;  // first cube of f.target inside the current block of g
    for (const auto& own_g : g.owners) {
        const int block = *std::max_element(own_g.begin(), own_g.end()) + 1;
        std::vector<int> offset(block, 0);
        for (int t = 1; t < block; ++t)
            offset[t] = offset[t - 1] + absorbed[mid + t - 1];
        std::vector<int> rank(block, 0);
        std::vector<int> own_h(own_g.size());
        for (std::size_t x = 0; x < own_g.size(); ++x) {
            const int t = own_g[x];
            own_h[x] = offset[t] + f.owners[mid + t][rank[t]++];
        }
        h.owners.push_back(std::move(own_h));
        mid += block;
    }
    return h;
}

std::size_t ChainCategory::component_count() const
{
    std::vector<std::size_t> parent(objects_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t count = objects_.size();
    for (const auto& f : morphisms_) {
        auto a = find(f.source), b = find(f.target);
        if (a != b) {
            parent[a] = b;
            --count;
        }
    }
    return count;
}

std::optional<std::size_t> ChainCategory::terminal_object() const
{
    for (std::size_t t = 0; t < objects_.size(); ++t) {
        if (!outgoing_[t].empty())
            continue;
        std::vector<int> arrows(objects_.size(), 0);
        arrows[t] = 1;
        for (auto m : incoming_[t])
            ++arrows[morphisms_[m].source];
        if (std::all_of(arrows.begin(), arrows.end(), [](int c) { return c == 1; }))
            return t;
    }
    return std::nullopt;
}

// -- enumeration -------------------------------------------------------------

namespace {

struct Corners {
    // lower[d][i], upper[d][i] for d >= 1: vertex indices
    std::vector<std::vector<std::size_t>> lower, upper;
    // cubes (d >= 1) by lower corner, sorted by (dim, index)
    std::vector<std::vector<CellId>> by_lower;
};

Corners corners_of(const PrecubicalSet& k)
{
    Corners c;
    const int top = std::max(k.dimension(), 0);
    c.lower.resize(top + 1);
    c.upper.resize(top + 1);
    c.by_lower.resize(k.count(0));
    for (int d = 1; d <= k.dimension(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i) {
            c.lower[d].push_back(lower_corner(k, {d, i}).index);
            c.upper[d].push_back(upper_corner(k, {d, i}).index);
            c.by_lower[c.lower[d].back()].push_back({d, i});
        }
    return c;
}

// BFS distance (in edges) from every vertex to target along directed edges.
std::vector<int> distances_to(const PrecubicalSet& k, std::size_t target)
{
    std::vector<std::vector<std::size_t>> reverse(k.count(0));
    for (std::size_t e = 0; e < k.count(1); ++e)
        reverse[k.face({1, e}, 1, 1).index].push_back(k.face({1, e}, 1, 0).index);
    std::vector<int> dist(k.count(0), -1);
    std::deque<std::size_t> queue{target};
    dist[target] = 0;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto u : reverse[v])
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    return dist;
}

void require_vertex(const PrecubicalSet& k, std::size_t v)
{
    if (v >= k.count(0))
        throw PreconditionError("no vertex " + std::to_string(v));
}

void partitions_rec(const std::vector<int>& sizes, std::vector<int>& remaining, std::vector<int>& owners, std::size_t x,
                    std::vector<std::vector<int>>& out)
{
    if (x == owners.size()) {
        out.push_back(owners);
        return;
    }
    for (std::size_t t = 0; t < sizes.size(); ++t) {
        if (remaining[t] == 0)
            continue;
        --remaining[t];
        owners[x] = static_cast<int>(t);
        partitions_rec(sizes, remaining, owners, x + 1, out);
        ++remaining[t];
    }
}

}  // namespace

std::vector<std::vector<int>> ordered_partitions(const std::vector<int>& sizes)
{
    std::vector<int> remaining = sizes;
    std::vector<int> owners(std::accumulate(sizes.begin(), sizes.end(), 0));
    std::vector<std::vector<int>> out;
    partitions_rec(sizes, remaining, owners, 0, out);
    return out;
}

std::vector<CubeChain> enumerate_chains(const PrecubicalSet& k, std::size_t alpha, std::size_t beta, int n)
{
    require_vertex(k, alpha);
    require_vertex(k, beta);
    if (n < 1)
        throw PreconditionError("chains have total dimension >= 1");

    const Corners corners = corners_of(k);
    const std::vector<int> dist = distances_to(k, beta);
    std::vector<CubeChain> out;
    CubeChain current;

    auto dfs = [&](auto&& self, std::size_t v, int remaining) -> void {
        if (remaining == 0) {
            if (v == beta)
                out.push_back(current);
            return;
        }
        for (const CellId& c : corners.by_lower[v]) {
            if (c.dim > remaining)
                break;
            const std::size_t u = corners.upper[c.dim][c.index];
            if (dist[u] < 0 || dist[u] > remaining - c.dim)
                continue;
            current.cubes.push_back(c);
            self(self, u, remaining - c.dim);
            current.cubes.pop_back();
        }
    };
    if (dist[alpha] >= 0 && dist[alpha] <= n)
        dfs(dfs, alpha, n);
    return out;
}

ChainCategory build_chain_category(const PrecubicalSet& k, std::size_t alpha, std::size_t beta, int n)
{
    std::vector<CubeChain> objects = enumerate_chains(k, alpha, beta, n);
    std::map<CubeChain, std::size_t> index;
    for (std::size_t i = 0; i < objects.size(); ++i)
        index.emplace(objects[i], i);

    const Corners corners = corners_of(k);
    std::map<std::vector<int>, std::vector<std::vector<int>>> partition_cache;
    auto partitions = [&](const std::vector<int>& sizes) -> const std::vector<std::vector<int>>& {
        auto it = partition_cache.find(sizes);
        if (it == partition_cache.end())
            it = partition_cache.emplace(sizes, ordered_partitions(sizes)).first;
        return it->second;
    };

    struct Option {
        CellId coarse;
        std::vector<int> owners;
    };

    std::vector<ChainMorphism> morphisms;
    for (std::size_t a = 0; a < objects.size(); ++a) {
        const auto& fine = objects[a].cubes;
        const std::size_t p = fine.size();

        // options[i][j]: ways the block fine[i..j) is the split of one cube.
        std::vector<std::vector<std::vector<Option>>> options(p, std::vector<std::vector<Option>>(p + 1));
        for (std::size_t i = 0; i < p; ++i) {
            options[i][i + 1].push_back({fine[i], std::vector<int>(fine[i].dim, 0)});
            std::vector<int> sizes{fine[i].dim};
            int m = fine[i].dim;
            for (std::size_t j = i + 2; j <= p; ++j) {
                sizes.push_back(fine[j - 1].dim);
                m += fine[j - 1].dim;
                const std::size_t lo = corners.lower[fine[i].dim][fine[i].index];
                const std::size_t hi = corners.upper[fine[j - 1].dim][fine[j - 1].index];
                for (const CellId& c : corners.by_lower[lo]) {
                    if (c.dim != m || corners.upper[m][c.index] != hi)
                        continue;
                    for (const auto& owners : partitions(sizes)) {
                        bool match = true;
                        for (std::size_t t = 0; match && t < sizes.size(); ++t) {
                            CubeWord pattern(m);
                            for (int x = 0; x < m; ++x)
                                pattern[x] = owners[x] < static_cast<int>(t) ? 1
                                             : owners[x] > static_cast<int>(t) ? 0
                                                                               : kFree;
                            match = face_at(k, c, pattern) == fine[i + t];
                        }
                        if (match)
                            options[i][j].push_back({c, owners});
                    }
                }
            }
        }

        // Every segmentation of fine into blocks, one option per block.
        CubeChain coarse;
        std::vector<std::vector<int>> owners;
        bool all_singletons = true;
        auto segment = [&](auto&& self, std::size_t i, bool singletons) -> void {
            if (i == p) {
                if (singletons)
                    return;
                auto it = index.find(coarse);
                if (it == index.end())
                    throw std::logic_error("coarsening " + to_string(coarse) + " is not an enumerated chain");
                morphisms.push_back({a, it->second, owners});
                return;
            }
            for (std::size_t j = i + 1; j <= p; ++j)
                for (const auto& opt : options[i][j]) {
                    coarse.cubes.push_back(opt.coarse);
                    owners.push_back(opt.owners);
                    self(self, j, singletons && j == i + 1);
                    coarse.cubes.pop_back();
                    owners.pop_back();
                }
        };
        segment(segment, 0, all_singletons);
    }
    return ChainCategory(alpha, beta, n, std::move(objects), std::move(morphisms));
}

// -- realization and concatenation -------------------------------------------

NaturalDPath realize_chain(const std::shared_ptr<const PrecubicalSet>& k, const CubeChain& chain)
{
    if (chain.cubes.empty())
        throw PreconditionError("cannot realize an empty chain");
    std::vector<Segment> segments;
    for (const auto& c : chain.cubes)
        segments.push_back(straight_segment(c, Coords(c.dim, Rational(0)), Coords(c.dim, Rational(1))));
    return NaturalDPath(DPath(k, std::move(segments)));
}

CubeChain concat_chains(const PrecubicalSet& k, const CubeChain& first, const CubeChain& second)
{
    if (first.cubes.empty() || second.cubes.empty())
        throw PreconditionError("cube chains have at least one cube");
    if (upper_corner(k, first.cubes.back()) != lower_corner(k, second.cubes.front()))
        throw PreconditionError("chains do not meet: " + to_string(first) + " then " + to_string(second));
    CubeChain out = first;
    out.cubes.insert(out.cubes.end(), second.cubes.begin(), second.cubes.end());
    return out;
}

std::optional<int> minimal_chain_length(const PrecubicalSet& k, std::size_t alpha, std::size_t beta)
{
    require_vertex(k, alpha);
    require_vertex(k, beta);
    if (alpha == beta) {
        // Needs a directed loop through alpha: shortest cycle.
        std::optional<int> best;
        const auto dist = distances_to(k, beta);
        for (std::size_t e = 0; e < k.count(1); ++e)
            if (k.face({1, e}, 1, 0).index == alpha) {
                const int d = dist[k.face({1, e}, 1, 1).index];
                if (d >= 0 && (!best || d + 1 < *best))
                    best = d + 1;
            }
        return best;
    }
    const int d = distances_to(k, beta)[alpha];
    if (d < 0)
        return std::nullopt;
    return d;
}

std::vector<ComponentCount> path_space_components(const PrecubicalSet& k, std::size_t alpha, std::size_t beta,
                                                  int max_n)
{
    std::vector<ComponentCount> out;
    for (int n = 1; n <= max_n; ++n) {
        ChainCategory cat = build_chain_category(k, alpha, beta, n);
        if (cat.objects().empty())
            continue;
        out.push_back({n, cat.objects().size(), cat.component_count()});
    }
    return out;
}

std::string category_to_json(const ChainCategory& category)
{
    using nlohmann::json;
    json objects = json::array();
    for (const auto& chain : category.objects()) {
        json cubes = json::array();
        for (const auto& c : chain.cubes)
            cubes.push_back(json::array({c.dim, c.index}));
        objects.push_back(cubes);
    }
    json arrows = json::array();
    for (const auto& f : category.morphisms())
        arrows.push_back({{"source", f.source}, {"target", f.target}, {"owners", f.owners}});
    json doc{{"alpha", category.alpha()}, {"beta", category.beta()}, {"n", category.n()},
             {"objects", objects}, {"arrows", arrows}};
    return doc.dump() + "\n";
}

}  // namespace cubepaths
