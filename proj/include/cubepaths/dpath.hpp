#pragma once

#include "cubepaths/pcset.hpp"

#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace cubepaths {

/// L1 distance: the sum of coordinate differences.
Rational d1(const Coords& x, const Coords& y);

/**
 * Piecewise-linear function on [0, domain_end] given by its breakpoints.
 * Breakpoint times start at 0 and strictly increase. Interior breakpoints
 * where the slope does not change are dropped, so two maps are equal as
 * functions exactly when their breakpoint lists are equal.
 */
class PlMap {
public:
    struct Break {
        Rational t;
        Rational v;
        bool operator==(const Break&) const = default;
    };

    explicit PlMap(std::vector<Break> breaks);

    Rational operator()(const Rational& t) const;
    Rational domain_end() const { return breaks_.back().t; }
    Rational start_value() const { return breaks_.front().v; }
    Rational end_value() const { return breaks_.back().v; }
    std::span<const Break> breaks() const { return breaks_; }
    std::size_t pieces() const { return breaks_.size() - 1; }

    bool nondecreasing() const;
    bool strictly_increasing() const;

    bool operator==(const PlMap&) const = default;

private:
    std::vector<Break> breaks_;
};

/// A piecewise-linear increasing bijection [0, source] → [0, target].
class Reparam {
public:
    /// Throws std::invalid_argument unless map starts at (0,0) and strictly increases.
    explicit Reparam(PlMap map);

    static Reparam identity(const Rational& length);
    /// t ↦ t · target / source.
    static Reparam linear(const Rational& source, const Rational& target);

    Rational operator()(const Rational& t) const { return map_(t); }
    Rational inverse_at(const Rational& v) const;
    Rational source_length() const { return map_.domain_end(); }
    Rational target_length() const { return map_.end_value(); }
    const PlMap& map() const { return map_; }

    bool operator==(const Reparam&) const = default;

private:
    PlMap map_;
};

/// outer ∘ inner; requires inner's target length to equal outer's source length.
Reparam compose(const Reparam& outer, const Reparam& inner);
Reparam inverse(const Reparam& phi);

/// One cube factor [c; γ] of a d-path: a monotone PL track in [0,1]^dim c on
/// local time [0, length].
struct Segment {
    struct Break {
        Rational t;
        Coords x;
        bool operator==(const Break&) const = default;
    };

    CellId carrier;
    std::vector<Break> breaks;

    Rational length() const { return breaks.back().t; }
    bool operator==(const Segment&) const = default;
};

/**
 * A nonconstant Moore d-path [c_1;γ_1] * ... * [c_p;γ_p] of a precubical set
 * with exact piecewise-linear tracks. Construction checks that every track is
 * coordinatewise nondecreasing inside its carrier, that consecutive factors
 * meet at the same point of |K|, and that something moves.
 */
class DPath {
public:
    DPath(std::shared_ptr<const PrecubicalSet> complex, std::vector<Segment> segments);

    const PrecubicalSet& complex() const { return *complex_; }
    const std::shared_ptr<const PrecubicalSet>& complex_ptr() const { return complex_; }
    std::span<const Segment> segments() const { return segments_; }

    Rational length() const { return length_; }
    /// Global start time of each segment.
    Rational segment_start(std::size_t i) const { return starts_[i]; }

    Point start() const;
    Point end() const;
    /// Canonical point at global time t ∈ [0, length].
    Point at(const Rational& t) const;

    bool operator==(const DPath& other) const;

private:
    std::shared_ptr<const PrecubicalSet> complex_;
    std::vector<Segment> segments_;
    std::vector<Rational> starts_;
    Rational length_;
};

/// L̂(γ): global time ↦ L1 arc length travelled since time 0.
PlMap arc_length_profile(const DPath& path);
Rational l1_length(const DPath& path);

/// γ1 * γ2 on [0, ℓ1 + ℓ2]. Throws InvalidPath if γ1 does not end where γ2 starts.
DPath moore_compose(const DPath& first, const DPath& second);

/// γ1 *_N γ2 for paths of length 1: each run at double speed on half of [0,1].
DPath normalized_compose(const DPath& first, const DPath& second);

/// γ ∘ φ, for φ : [0, ℓ'] → [0, length(γ)].
DPath reparametrize(const DPath& path, const Reparam& phi);

struct RegularityReport {
    bool regular = true;
    /// First maximal stop interval [a, b] (global time) when not regular.
    std::optional<std::pair<Rational, Rational>> stop;
};

RegularityReport is_regular(const DPath& path);

struct TamenessReport {
    bool tame = true;
    /// First point where a cube factor is entered or left away from a vertex.
    std::optional<Rational> time;
    std::optional<Point> point;
};

/// Judged on the path's cube factorization after merging consecutive factors
/// carried by the same cube: every factor must start and end at cube vertices.
TamenessReport is_tame(const DPath& path);

/// A d-path parametrized by L1 arc length: L̂(γ)(t) = t.
class NaturalDPath {
public:
    /// Throws InvalidPath when path is not natural.
    explicit NaturalDPath(DPath path);

    const DPath& path() const { return path_; }
    Rational length() const { return path_.length(); }
    bool operator==(const NaturalDPath&) const = default;

private:
    DPath path_;
};

bool is_natural(const DPath& path);

class NotRegularError : public PreconditionError {
public:
    NotRegularError(Rational a, Rational b);
    const std::pair<Rational, Rational>& stop_interval() const { return stop_; }

private:
    std::pair<Rational, Rational> stop_;
};

struct Naturalization {
    Reparam phi;
    NaturalDPath natural;
};

/// Ψ(r) = (L̂(r), r ∘ L̂(r)^{-1}) for a regular path between vertices.
/// Throws NotRegularError (with the stop interval) or PreconditionError.
Naturalization naturalize(const DPath& path);

/// Φ(φ, ν) = ν ∘ φ; the inverse of naturalize.
DPath denaturalize(const Reparam& phi, const NaturalDPath& natural);

/// Straight segment from x to y inside one cube at unit L1 speed
/// (length d1(x, y)). Requires x ≤ y coordinatewise and x ≠ y.
Segment straight_segment(CellId carrier, Coords x, Coords y);

}  // namespace cubepaths
