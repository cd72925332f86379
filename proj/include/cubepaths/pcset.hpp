#pragma once

#include "cubepaths/errors.hpp"
#include "cubepaths/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cubepaths {

/// Names the cell K_dim[index] of some precubical set.
struct CellId {
    int dim = 0;
    std::size_t index = 0;

    auto operator<=>(const CellId&) const = default;
};

std::string to_string(const CellId& cell);

/// Cube-face selector: axis in 1..dim, side 0 (lower) or 1 (upper).
struct FaceSel {
    int axis;
    int side;
};

/**
 * A finite precubical set: per-dimension cell counts and the face maps
 * ∂_i^α : K_n → K_{n-1}. Cells are addressed positionally inside each
 * dimension. Construction checks only that the tables are well formed
 * (every face reference exists); the cubical relations are checked by
 * validate().
 */
class PrecubicalSet {
public:
    /// faces[d-1][i] lists the faces of cell (d, i) as
    /// [∂_1^0, ∂_1^1, ..., ∂_d^0, ∂_d^1], each an index into K_{d-1}.
    using FaceTable = std::vector<std::vector<std::vector<std::size_t>>>;
    using Labels = std::map<CellId, std::string>;

    PrecubicalSet() = default;
    PrecubicalSet(std::vector<std::size_t> counts, const FaceTable& faces, Labels labels = {});

    /// Highest non-empty dimension, or -1 for the empty complex.
    int dimension() const;
    bool empty() const { return dimension() < 0; }

    std::size_t count(int dim) const;
    std::span<const std::size_t> counts() const { return counts_; }
    std::size_t total_cells() const;

    bool contains(CellId cell) const;

    /// ∂_axis^side(cell).
    CellId face(CellId cell, int axis, int side) const;

    const Labels& labels() const { return labels_; }
    std::optional<std::string> label(CellId cell) const;

    /// Reconstructs the nested face table (inverse of the constructor).
    FaceTable face_table() const;

    bool operator==(const PrecubicalSet&) const = default;

private:
    std::vector<std::size_t> counts_;
    // flat_[d-1][2*d*i + 2*(axis-1) + side]
    std::vector<std::vector<std::size_t>> flat_;
    Labels labels_;
};

/// First failure of ∂_i^α ∂_j^β x = ∂_{j-1}^β ∂_i^α x (i < j).
struct RelationViolation {
    CellId cell;
    int i;
    int j;
    int alpha;
    int beta;
    CellId lhs;  // ∂_i^α ∂_j^β x
    CellId rhs;  // ∂_{j-1}^β ∂_i^α x
};

std::string to_string(const RelationViolation& v);

/// Checks every cubical relation in order (cell dimension, index, i, j, α, β);
/// returns the first violation, or nothing when K is a precubical set.
std::optional<RelationViolation> validate(const PrecubicalSet& k);

class ValidationError : public Error {
public:
    explicit ValidationError(RelationViolation v);
    const RelationViolation& violation() const { return violation_; }

private:
    RelationViolation violation_;
};

/// Throws ValidationError when validate() reports a violation.
void require_valid(const PrecubicalSet& k);

// -- the standard cube ------------------------------------------------------

/// A cell of □[n] as a word over {0, 1, kFree}: the cell's image in {0,1,*}^n.
using CubeWord = std::vector<std::int8_t>;
inline constexpr std::int8_t kFree = 2;

/// Position of a word inside standard_cube(word.size()).
CellId cube_cell(const CubeWord& word);
CubeWord cube_word(int n, CellId cell);
std::string word_string(const CubeWord& word);
CubeWord parse_word(std::string_view text);

/// □[n]. Cells of dimension k are the words with k free letters, ordered
/// lexicographically with 0 < 1 < *; vertex 0_n has index 0 and 1_n is last.
/// Every cell is labelled with its word.
PrecubicalSet standard_cube(int n);

/// ∂□[n] = □[n]_{≤ n-1}; empty for n = 0.
PrecubicalSet boundary(int n);

/// All cells of dimension ≤ n with their faces.
PrecubicalSet skeleton(const PrecubicalSet& k, int n);

/// Keeps the cells flagged in keep[d][i] and renumbers them in order.
/// Throws MalformedComplex unless the kept set is closed under faces.
PrecubicalSet subcomplex(const PrecubicalSet& k, const std::vector<std::vector<bool>>& keep);

/// Renames cells: the cell (d, i) becomes (d, perm[d][i]).
PrecubicalSet reindexed(const PrecubicalSet& k, const std::vector<std::vector<std::size_t>>& perm);

// -- faces and corners ------------------------------------------------------

/// ∂^ε_A = ∂^ε_{a_1} ∂^ε_{a_2} ... ∂^ε_{a_k} for A = {a_1 < ... < a_k}.
CellId iterated_face(const PrecubicalSet& k, CellId x, std::vector<int> axes, int eps);

/// The face of x obtained by fixing every non-free axis of pattern
/// (length dim x) to its value; free axes stay, in order.
CellId face_at(const PrecubicalSet& k, CellId x, const CubeWord& pattern);

CellId lower_corner(const PrecubicalSet& k, CellId x);
CellId upper_corner(const PrecubicalSet& k, CellId x);

// -- points of the geometric realization -------------------------------------

/// A point of |K| in canonical form: all coordinates strictly inside (0,1).
struct Point {
    CellId carrier;
    Coords coords;

    bool operator==(const Point&) const = default;
    bool is_vertex() const { return carrier.dim == 0; }
};

std::string to_string(const Point& p);

/// Drops every boundary coordinate through the matching face map until
/// only interior coordinates remain. Coordinates must lie in [0,1].
Point canonicalize(const PrecubicalSet& k, CellId cell, Coords coords);

}  // namespace cubepaths
