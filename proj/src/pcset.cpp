#include "cubepaths/pcset.hpp"

#include <algorithm>
#include <numeric>

namespace cubepaths {

std::string to_string(const CellId& cell)
{
    return "(" + std::to_string(cell.dim) + "," + std::to_string(cell.index) + ")";
}

PrecubicalSet::PrecubicalSet(std::vector<std::size_t> counts, const FaceTable& faces, Labels labels)
    : counts_(std::move(counts))
    , labels_(std::move(labels))
{
    while (!counts_.empty() && counts_.back() == 0)
        counts_.pop_back();

    const int top = static_cast<int>(counts_.size()) - 1;
    if (faces.size() > counts_.size() && std::any_of(faces.begin() + std::max(top, 0), faces.end(),
                                                      [](const auto& cells) { return !cells.empty(); }))
        throw MalformedComplex("face table lists cells above the declared dimensions");

    flat_.resize(counts_.empty() ? 0 : counts_.size() - 1);
    for (int d = 1; d <= top; ++d) {
        const auto& cells = d - 1 < static_cast<int>(faces.size()) ? faces[d - 1] : FaceTable::value_type{};
        if (cells.size() != counts_[d])
            throw MalformedComplex("dimension " + std::to_string(d) + ": " + std::to_string(counts_[d]) +
                                   " cells declared but " + std::to_string(cells.size()) + " face entries given");
        auto& flat = flat_[d - 1];
        flat.reserve(2 * d * counts_[d]);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].size() != static_cast<std::size_t>(2 * d))
                throw MalformedComplex("cell " + to_string(CellId{d, i}) + " needs " + std::to_string(2 * d) +
                                       " faces, has " + std::to_string(cells[i].size()));
            for (std::size_t f : cells[i]) {
                if (f >= counts_[d - 1])
                    throw MalformedComplex("cell " + to_string(CellId{d, i}) + " has dangling face " +
                                           to_string(CellId{d - 1, f}));
                flat.push_back(f);
            }
        }
    }

    for (const auto& [cell, text] : labels_)
        if (!contains(cell))
            throw MalformedComplex("label attached to missing cell " + to_string(cell));
}

int PrecubicalSet::dimension() const { return static_cast<int>(counts_.size()) - 1; }

std::size_t PrecubicalSet::count(int dim) const
{
    if (dim < 0 || dim >= static_cast<int>(counts_.size()))
        return 0;
    return counts_[dim];
}

std::size_t PrecubicalSet::total_cells() const { return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0}); }

bool PrecubicalSet::contains(CellId cell) const { return cell.index < count(cell.dim); }

CellId PrecubicalSet::face(CellId cell, int axis, int side) const
{
    if (!contains(cell))
        throw MalformedComplex("no cell " + to_string(cell));
    if (axis < 1 || axis > cell.dim || (side != 0 && side != 1))
        throw std::out_of_range("face ∂_" + std::to_string(axis) + "^" + std::to_string(side) + " of " +
                                to_string(cell));
    const auto& flat = flat_[cell.dim - 1];
    return {cell.dim - 1, flat[2 * cell.dim * cell.index + 2 * (axis - 1) + side]};
}

std::optional<std::string> PrecubicalSet::label(CellId cell) const
{
    if (auto it = labels_.find(cell); it != labels_.end())
        return it->second;
    return std::nullopt;
}

PrecubicalSet::FaceTable PrecubicalSet::face_table() const
{
    FaceTable table(flat_.size());
    for (std::size_t d = 1; d <= flat_.size(); ++d) {
        const std::size_t arity = 2 * d;
        for (std::size_t i = 0; i < counts_[d]; ++i)
            table[d - 1].emplace_back(flat_[d - 1].begin() + arity * i, flat_[d - 1].begin() + arity * (i + 1));
    }
    return table;
}

// -- validation ------------------------------------------------------------

std::string to_string(const RelationViolation& v)
{
    return "cubical relation fails at cell " + to_string(v.cell) + " (i=" + std::to_string(v.i) +
           ", j=" + std::to_string(v.j) + ", alpha=" + std::to_string(v.alpha) + ", beta=" + std::to_string(v.beta) +
           "): " + to_string(v.lhs) + " != " + to_string(v.rhs);
}

std::optional<RelationViolation> validate(const PrecubicalSet& k)
{
    for (int d = 2; d <= k.dimension(); ++d)
        for (std::size_t x = 0; x < k.count(d); ++x) {
            const CellId cell{d, x};
            for (int i = 1; i < d; ++i)
                for (int j = i + 1; j <= d; ++j)
                    for (int alpha = 0; alpha <= 1; ++alpha)
                        for (int beta = 0; beta <= 1; ++beta) {
                            CellId lhs = k.face(k.face(cell, j, beta), i, alpha);
                            CellId rhs = k.face(k.face(cell, i, alpha), j - 1, beta);
                            if (lhs != rhs)
                                return RelationViolation{cell, i, j, alpha, beta, lhs, rhs};
                        }
        }
    return std::nullopt;
}

ValidationError::ValidationError(RelationViolation v)
    : Error(to_string(v))
    , violation_(v)
{
}

void require_valid(const PrecubicalSet& k)
{
    if (auto v = validate(k))
        throw ValidationError(*v);
}

// -- standard cube -----------------------------------------------------------

namespace {

std::size_t binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Number of words of length m with exactly s free letters.
std::size_t completions(int m, int s)
{
    if (s < 0 || s > m)
        return 0;
    return binomial(m, s) << (m - s);
}

void words_with_stars(int n, int stars, CubeWord& prefix, std::vector<CubeWord>& out)
{
    const int remaining = n - static_cast<int>(prefix.size());
    if (remaining == 0) {
        if (stars == 0)
            out.push_back(prefix);
        return;
    }
    for (std::int8_t letter : {std::int8_t{0}, std::int8_t{1}, kFree}) {
        const int s = stars - (letter == kFree ? 1 : 0);
        if (s < 0 || s > remaining - 1)
            continue;
        prefix.push_back(letter);
        words_with_stars(n, s, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

CellId cube_cell(const CubeWord& word)
{
    const int n = static_cast<int>(word.size());
    int stars = static_cast<int>(std::count(word.begin(), word.end(), kFree));
    const int dim = stars;
    std::size_t rank = 0;
    for (int p = 0; p < n; ++p) {
        const int m = n - p - 1;
        const std::int8_t letter = word[p];
        if (letter != 0 && letter != 1 && letter != kFree)
            throw std::invalid_argument("bad cube word letter");
        // Every smaller letter at position p is a fixed letter.
        const int smaller = letter == kFree ? 2 : letter;
        rank += static_cast<std::size_t>(smaller) * completions(m, stars);
        if (letter == kFree)
            --stars;
    }
    return {dim, rank};
}

CubeWord cube_word(int n, CellId cell)
{
    std::vector<CubeWord> words;
    CubeWord prefix;
    words_with_stars(n, cell.dim, prefix, words);
    if (cell.index >= words.size())
        throw std::out_of_range("no cell " + to_string(cell) + " in the " + std::to_string(n) + "-cube");
    return words[cell.index];
}

std::string word_string(const CubeWord& word)
{
    std::string s;
    for (auto letter : word)
        s += letter == kFree ? '*' : static_cast<char>('0' + letter);
    return s;
}

CubeWord parse_word(std::string_view text)
{
    CubeWord word;
    for (char c : text) {
        if (c == '0' || c == '1')
            word.push_back(static_cast<std::int8_t>(c - '0'));
        else if (c == '*')
            word.push_back(kFree);
        else
            throw std::invalid_argument("bad cube word '" + std::string(text) + "'");
    }
    return word;
}

PrecubicalSet standard_cube(int n)
{
    if (n < 0)
        throw std::invalid_argument("cube dimension must be non-negative");
    std::vector<std::size_t> counts(n + 1);
    PrecubicalSet::FaceTable faces(n);
    PrecubicalSet::Labels labels;
    for (int k = 0; k <= n; ++k) {
        std::vector<CubeWord> words;
        CubeWord prefix;
        words_with_stars(n, k, prefix, words);
        counts[k] = words.size();
        for (std::size_t idx = 0; idx < words.size(); ++idx) {
            const CubeWord& w = words[idx];
            labels[{k, idx}] = word_string(w);
            if (k == 0)
                continue;
            std::vector<std::size_t> cell_faces;
            int axis = 0;
            for (int p = 0; p < n; ++p) {
                if (w[p] != kFree)
                    continue;
                ++axis;
                for (std::int8_t side : {std::int8_t{0}, std::int8_t{1}}) {
                    CubeWord f = w;
                    f[p] = side;
                    cell_faces.push_back(cube_cell(f).index);
                }
            }
            faces[k - 1].push_back(std::move(cell_faces));
        }
    }
    return PrecubicalSet(std::move(counts), faces, std::move(labels));
}

PrecubicalSet boundary(int n)
{
    if (n <= 0)
        return {};
    return skeleton(standard_cube(n), n - 1);
}

PrecubicalSet skeleton(const PrecubicalSet& k, int n)
{
    if (n < 0)
        return {};
    std::vector<std::size_t> counts(k.counts().begin(), k.counts().end());
    if (static_cast<int>(counts.size()) > n + 1)
        counts.resize(n + 1);
    auto faces = k.face_table();
    if (static_cast<int>(faces.size()) > n)
        faces.resize(std::max(n, 0));
    PrecubicalSet::Labels labels;
    for (const auto& [cell, text] : k.labels())
        if (cell.dim <= n)
            labels.emplace(cell, text);
    return PrecubicalSet(std::move(counts), faces, std::move(labels));
}

PrecubicalSet subcomplex(const PrecubicalSet& k, const std::vector<std::vector<bool>>& keep)
{
    const int top = k.dimension();
    std::vector<std::vector<std::size_t>> renumber(top + 1);
    std::vector<std::size_t> counts(top + 1, 0);
    for (int d = 0; d <= top; ++d) {
        renumber[d].assign(k.count(d), static_cast<std::size_t>(-1));
        for (std::size_t i = 0; i < k.count(d); ++i)
            if (d < static_cast<int>(keep.size()) && i < keep[d].size() && keep[d][i])
                renumber[d][i] = counts[d]++;
    }

    PrecubicalSet::FaceTable faces(std::max(top, 0));
    for (int d = 1; d <= top; ++d)
        for (std::size_t i = 0; i < k.count(d); ++i) {
            if (renumber[d][i] == static_cast<std::size_t>(-1))
                continue;
            std::vector<std::size_t> f;
            for (int axis = 1; axis <= d; ++axis)
                for (int side = 0; side <= 1; ++side) {
                    CellId g = k.face({d, i}, axis, side);
                    if (renumber[d - 1][g.index] == static_cast<std::size_t>(-1))
                        throw MalformedComplex("kept cell " + to_string(CellId{d, i}) + " has dropped face " +
                                               to_string(g));
                    f.push_back(renumber[d - 1][g.index]);
                }
            faces[d - 1].push_back(std::move(f));
        }

    PrecubicalSet::Labels labels;
    for (const auto& [cell, text] : k.labels())
        if (renumber[cell.dim][cell.index] != static_cast<std::size_t>(-1))
            labels.emplace(CellId{cell.dim, renumber[cell.dim][cell.index]}, text);
    return PrecubicalSet(std::move(counts), faces, std::move(labels));
}

PrecubicalSet reindexed(const PrecubicalSet& k, const std::vector<std::vector<std::size_t>>& perm)
{
    const int top = k.dimension();
    if (static_cast<int>(perm.size()) != top + 1)
        throw std::invalid_argument("reindexed: one permutation per dimension required");
    for (int d = 0; d <= top; ++d) {
        std::vector<std::size_t> sorted = perm[d];
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != i || sorted.size() != k.count(d))
                throw std::invalid_argument("reindexed: not a permutation in dimension " + std::to_string(d));
    }

    std::vector<std::size_t> counts(k.counts().begin(), k.counts().end());
    PrecubicalSet::FaceTable faces(std::max(top, 0));
    for (int d = 1; d <= top; ++d) {
        faces[d - 1].resize(k.count(d));
        for (std::size_t i = 0; i < k.count(d); ++i) {
            std::vector<std::size_t> f;
            for (int axis = 1; axis <= d; ++axis)
                for (int side = 0; side <= 1; ++side)
                    f.push_back(perm[d - 1][k.face({d, i}, axis, side).index]);
            faces[d - 1][perm[d][i]] = std::move(f);
        }
    }
    PrecubicalSet::Labels labels;
    for (const auto& [cell, text] : k.labels())
        labels.emplace(CellId{cell.dim, perm[cell.dim][cell.index]}, text);
    return PrecubicalSet(std::move(counts), faces, std::move(labels));
}

// -- faces and corners -------------------------------------------------------

CellId iterated_face(const PrecubicalSet& k, CellId x, std::vector<int> axes, int eps)
{
    std::sort(axes.begin(), axes.end());
    if (std::adjacent_find(axes.begin(), axes.end()) != axes.end())
        throw std::invalid_argument("iterated_face: repeated axis");
    if (!axes.empty() && (axes.front() < 1 || axes.back() > x.dim))
        throw std::invalid_argument("iterated_face: axis outside 1.." + std::to_string(x.dim));
    // The rightmost factor acts first; going from the highest axis down keeps
    // the remaining axis numbers valid.
    for (auto it = axes.rbegin(); it != axes.rend(); ++it)
        x = k.face(x, *it, eps);
    return x;
}

CellId face_at(const PrecubicalSet& k, CellId x, const CubeWord& pattern)
{
    if (static_cast<int>(pattern.size()) != x.dim)
        throw std::invalid_argument("face_at: pattern length differs from cell dimension");
    for (int axis = x.dim; axis >= 1; --axis)
        if (pattern[axis - 1] != kFree)
            x = k.face(x, axis, pattern[axis - 1]);
    return x;
}

CellId lower_corner(const PrecubicalSet& k, CellId x)
{
    for (int axis = x.dim; axis >= 1; --axis)
        x = k.face(x, axis, 0);
    return x;
}

CellId upper_corner(const PrecubicalSet& k, CellId x)
{
    for (int axis = x.dim; axis >= 1; --axis)
        x = k.face(x, axis, 1);
    return x;
}

// -- points ----------------------------------------------------------------

std::string to_string(const Point& p) { return to_string(p.carrier) + to_string(p.coords); }

Point canonicalize(const PrecubicalSet& k, CellId cell, Coords coords)
{
    if (!k.contains(cell))
        throw MalformedComplex("no cell " + to_string(cell));
    if (static_cast<int>(coords.size()) != cell.dim)
        throw std::invalid_argument("canonicalize: " + std::to_string(coords.size()) + " coordinates for a " +
                                    std::to_string(cell.dim) + "-cube");
    for (const auto& c : coords)
        if (c < 0 || c > 1)
            throw std::invalid_argument("canonicalize: coordinate " + to_string(c) + " outside [0,1]");

    for (int axis = cell.dim; axis >= 1; --axis) {
        const Rational& c = coords[axis - 1];
        if (c == 0 || c == 1) {
            cell = k.face(cell, axis, c == 1 ? 1 : 0);
            coords.erase(coords.begin() + (axis - 1));
        }
    }
    return {cell, std::move(coords)};
}

}  // namespace cubepaths
