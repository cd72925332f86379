#pragma once

#include "cubepaths/dpath.hpp"
#include "cubepaths/pcset.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cubepaths {

/// A sequence of cubes c_1, ..., c_p (all of dimension >= 1) with the upper
/// corner of each equal to the lower corner of the next: a precubical map
/// □[n_1] * ... * □[n_p] → K.
struct CubeChain {
    std::vector<CellId> cubes;

    std::vector<int> shape() const;
    int total_dim() const;
    std::size_t size() const { return cubes.size(); }

    auto operator<=>(const CubeChain&) const = default;
};

std::string to_string(const CubeChain& chain);

/// Throws PreconditionError unless chain is a cube chain of K from alpha to beta.
void check_chain(const PrecubicalSet& k, const CubeChain& chain, std::size_t alpha, std::size_t beta);

/**
 * A morphism a → b of the chain category. b is the coarser chain: each cube
 * of b absorbs a consecutive block of a's cubes. For the j-th cube of b (of
 * dimension m), owners[j][x] says which cube of its block (0-based) moves
 * along axis x+1; this is the ordered partition (A_1, ..., A_k) of {1..m}.
 * The t-th fine cube is the face of the coarse cube with the axes of
 * A_1..A_{t-1} set to 1 and those of A_{t+1}..A_k set to 0.
 */
struct ChainMorphism {
    std::size_t source;
    std::size_t target;
    std::vector<std::vector<int>> owners;

    bool is_identity() const { return source == target; }
    auto operator<=>(const ChainMorphism&) const = default;
};

/// The finite category of cube chains from alpha to beta of total dimension n.
class ChainCategory {
public:
    ChainCategory(std::size_t alpha, std::size_t beta, int n, std::vector<CubeChain> objects,
                  std::vector<ChainMorphism> morphisms);

    std::size_t alpha() const { return alpha_; }
    std::size_t beta() const { return beta_; }
    int n() const { return n_; }

    const std::vector<CubeChain>& objects() const { return objects_; }
    /// Non-identity morphisms, sorted.
    const std::vector<ChainMorphism>& morphisms() const { return morphisms_; }

    std::optional<std::size_t> find_object(const CubeChain& chain) const;
    std::optional<std::size_t> find_morphism(const ChainMorphism& f) const;

    ChainMorphism identity(std::size_t object) const;
    /// g ∘ f for f : a → b and g : b → c.
    ChainMorphism compose(const ChainMorphism& g, const ChainMorphism& f) const;

    /// Indices into morphisms() of the non-identity arrows leaving / entering an object.
    const std::vector<std::size_t>& outgoing(std::size_t object) const { return outgoing_[object]; }
    const std::vector<std::size_t>& incoming(std::size_t object) const { return incoming_[object]; }

    std::size_t component_count() const;
    /// An object receiving exactly one arrow from every object.
    std::optional<std::size_t> terminal_object() const;

private:
    std::size_t alpha_;
    std::size_t beta_;
    int n_;
    std::vector<CubeChain> objects_;
    std::vector<ChainMorphism> morphisms_;
    std::map<CubeChain, std::size_t> object_index_;
    std::vector<std::vector<std::size_t>> outgoing_;
    std::vector<std::vector<std::size_t>> incoming_;
};

/// Chains from alpha to beta with total dimension n, in lexicographic order of
/// their cube sequences (cubes compared by dimension, then index).
std::vector<CubeChain> enumerate_chains(const PrecubicalSet& k, std::size_t alpha, std::size_t beta, int n);

/// Objects from enumerate_chains plus every morphism between them.
ChainCategory build_chain_category(const PrecubicalSet& k, std::size_t alpha, std::size_t beta, int n);

/// Ordered partitions of {1..m} into blocks of the given sizes, as owner
/// vectors (owners[x] = block containing axis x+1).
std::vector<std::vector<int>> ordered_partitions(const std::vector<int>& sizes);

/// The unit-speed diagonal of each cube, Moore-composed.
NaturalDPath realize_chain(const std::shared_ptr<const PrecubicalSet>& k, const CubeChain& chain);

/// Sequence concatenation; the first chain must end where the second starts.
CubeChain concat_chains(const PrecubicalSet& k, const CubeChain& first, const CubeChain& second);

/// Fewest edges on a directed edge path alpha → beta (the smallest n with
/// chains), or nothing when beta is unreachable.
std::optional<int> minimal_chain_length(const PrecubicalSet& k, std::size_t alpha, std::size_t beta);

struct ComponentCount {
    int n;
    std::size_t chains;
    std::size_t components;
};

/// For n = 1..max_n, the components of each non-empty chain category.
std::vector<ComponentCount> path_space_components(const PrecubicalSet& k, std::size_t alpha, std::size_t beta,
                                                  int max_n);

/// {"objects": [[[d,i],...],...], "arrows": [{"source", "target", "owners"}]}
std::string category_to_json(const ChainCategory& category);

}  // namespace cubepaths
