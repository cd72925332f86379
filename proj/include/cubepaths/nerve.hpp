#pragma once

#include "cubepaths/chains.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cubepaths {

/**
 * Non-degenerate part of the nerve of a loop-free ChainCategory. A 0-simplex
 * is an object index; a k-simplex (k >= 1) is a path of k composable
 * non-identity morphisms, stored as indices into category.morphisms().
 * Simplices of each dimension are sorted lexicographically.
 */
class NerveComplex {
public:
    using Simplex = std::vector<std::size_t>;

    /// Simplices of dimension 0..max_dim; all of them when max_dim is empty.
    NerveComplex(const ChainCategory& category, std::optional<int> max_dim = std::nullopt);

    int dimension() const { return static_cast<int>(simplices_.size()) - 1; }
    const std::vector<Simplex>& simplices(int k) const { return simplices_.at(k); }
    std::size_t count(int k) const { return k <= dimension() ? simplices_[k].size() : 0; }
    /// i-th face of a k-simplex, as an index into simplices(k-1).
    std::size_t face(int k, std::size_t simplex, int i) const;
    /// True when max_dim cut off longer composable paths.
    bool truncated() const { return truncated_; }

private:
    std::vector<std::pair<std::size_t, std::size_t>> ends_;  // (source, target) per morphism
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> compose_;  // (g, f) -> g∘f
    std::vector<std::vector<Simplex>> simplices_;
    std::vector<std::map<Simplex, std::size_t>> index_;
    bool truncated_ = false;
};

struct Triplet {
    std::size_t row;
    std::size_t col;
    long value;
};

/// Integer chain complex; boundary(k) : C_k → C_{k-1} as sparse triplets
/// sorted by (col, row), for k = 1..top.
class ChainComplexZ {
public:
    ChainComplexZ(std::vector<std::size_t> ranks, std::vector<std::vector<Triplet>> boundaries);

    int top() const { return static_cast<int>(ranks_.size()) - 1; }
    std::size_t rank(int k) const { return k >= 0 && k <= top() ? ranks_[k] : 0; }
    /// Empty for k <= 0 or k > top.
    const std::vector<Triplet>& boundary(int k) const;

    /// Throws std::logic_error naming the dimension if some ∂_{k-1}∂_k ≠ 0.
    void check_square_zero() const;

private:
    std::vector<std::size_t> ranks_;
    std::vector<std::vector<Triplet>> boundaries_;
    std::vector<Triplet> empty_;
};

/// The simplicial chain complex of a nerve: ∂ = Σ (-1)^i d_i.
ChainComplexZ chain_complex(const NerveComplex& nerve);

enum class Coefficients { rational, integer };

struct Homology {
    /// b_0, b_1, ... through the highest dimension computed, trailing zeros trimmed.
    std::vector<std::size_t> betti;
    /// Torsion coefficients (invariant factors > 1) of H_k; empty in rational mode.
    std::vector<std::vector<mpz_class>> torsion;
    long euler_characteristic = 0;
};

/**
 * Homology in dimensions 0..top-1 (top itself when the complex is not
 * truncated, i.e. when complete is true). Rank computations per dimension
 * use up to jobs threads; the result does not depend on jobs.
 */
Homology homology(const ChainComplexZ& complex, Coefficients coeff = Coefficients::rational, bool complete = true,
                  unsigned jobs = 1);

/// Rank of a sparse matrix over Q.
std::size_t rational_rank(std::size_t rows, std::size_t cols, const std::vector<Triplet>& entries);
/// Nonzero diagonal of the Smith normal form over Z, ascending by divisibility.
std::vector<mpz_class> smith_invariants(std::size_t rows, std::size_t cols, const std::vector<Triplet>& entries);

struct PathSpaceRow {
    int n;
    std::size_t objects;
    std::size_t morphisms;
    std::vector<std::size_t> simplices;  // per dimension
    std::size_t components;
    Homology homology;
};

struct PathSpaceOptions {
    int min_n = 1;
    int max_n = 1;
    std::optional<int> max_dim;
    Coefficients coeff = Coefficients::rational;
    unsigned jobs = 1;
};

/// One row per total dimension n in [min_n, max_n] with at least one chain.
std::vector<PathSpaceRow> path_space_report(const PrecubicalSet& k, std::size_t alpha, std::size_t beta,
                                            const PathSpaceOptions& options);

std::string report_to_json(const std::vector<PathSpaceRow>& rows, std::size_t alpha, std::size_t beta,
                           Coefficients coeff);
std::string report_to_text(const std::vector<PathSpaceRow>& rows, std::size_t alpha, std::size_t beta,
                           Coefficients coeff);

/// "# d<k> <rows> <cols> <nnz>" headers followed by "row col value" lines.
std::string complex_to_triplets(const ChainComplexZ& complex);

}  // namespace cubepaths
