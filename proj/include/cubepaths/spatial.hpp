#pragma once

#include "cubepaths/dpath.hpp"
#include "cubepaths/pcset.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cubepaths {

/// A set of cells of □[3], as words.
using FaceSet = std::set<CubeWord>;

/// The set together with every face of its members.
FaceSet face_closure(const FaceSet& cells);

/**
 * Evidence that A belongs to B_3: open cells of A visited in order from 0_3
 * to 1_3, and one point inside each. The straight segments between
 * consecutive points form a monotone path in |A| meeting no other vertex.
 */
struct B3Witness {
    std::vector<CubeWord> cells;
    std::vector<Coords> points;
};

/**
 * Whether |A| contains a d-path 0_3 → 1_3 avoiding the other six vertices.
 * A must be a face-closed set of proper faces of □[3]; throws
 * PreconditionError otherwise. Returns a witness when it does.
 */
std::optional<B3Witness> is_in_B3(const FaceSet& a);

/// Independent check of a witness against A (points, cells, segments).
bool verify_b3_witness(const FaceSet& a, const B3Witness& w);

/// The witness as a natural d-path in □[3].
DPath witness_path(const B3Witness& w);

/// Cells w of ∂□[3] on which the two 3-cubes of K have the same face.
FaceSet agreement_set(const PrecubicalSet& k, CellId first, CellId second);

struct SpatialWitness {
    CellId first;
    CellId second;
    FaceSet agreement;
    B3Witness path;
};

struct SpatialVerdict {
    enum class Kind { spatial, not_spatial, unsupported };
    Kind kind;
    int dimension;
    std::optional<SpatialWitness> witness;  // set iff not_spatial
};

/**
 * Spatiality for complexes of dimension <= 3. Two distinct 3-cubes whose
 * agreement set lies in B_3 give a map from □[3] ⊔_A □[3] that does not
 * factor through □[3].
 */
SpatialVerdict is_spatial(const PrecubicalSet& k);

bool verify_spatial_witness(const PrecubicalSet& k, const SpatialWitness& w);

/// □[3] ⊔_A □[3]: the second copy's cells outside A are labelled "<word>'".
PrecubicalSet double_cube(const FaceSet& a);

std::string verdict_name(const SpatialVerdict& v);
std::string verdict_to_json(const SpatialVerdict& v);

}  // namespace cubepaths
