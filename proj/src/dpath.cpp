#include "cubepaths/dpath.hpp"

#include <algorithm>

namespace cubepaths {

Rational d1(const Coords& x, const Coords& y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("d1: dimension mismatch");
    Rational sum = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        sum += abs(Rational(x[i] - y[i]));
    return sum;
}

// -- PlMap -------------------------------------------------------------------

PlMap::PlMap(std::vector<Break> breaks)
{
    if (breaks.size() < 2)
        throw std::invalid_argument("PL map needs at least two breakpoints");
    if (breaks.front().t != 0)
        throw std::invalid_argument("PL map must start at time 0");
    for (std::size_t i = 1; i < breaks.size(); ++i)
        if (breaks[i].t <= breaks[i - 1].t)
            throw std::invalid_argument("PL map breakpoints must strictly increase in time");

    breaks_.push_back(breaks.front());
    for (std::size_t i = 1; i + 1 < breaks.size(); ++i) {
        const Break& prev = breaks_.back();
        const Break& cur = breaks[i];
        const Break& next = breaks[i + 1];
        // Same slope on both sides: the breakpoint carries no information.
        if ((cur.v - prev.v) * (next.t - cur.t) != (next.v - cur.v) * (cur.t - prev.t))
            breaks_.push_back(cur);
    }
    breaks_.push_back(breaks.back());
}

Rational PlMap::operator()(const Rational& t) const
{
    if (t < 0 || t > domain_end())
        throw std::out_of_range("PL map evaluated at " + to_string(t) + " outside [0, " + to_string(domain_end()) + "]");
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), t, [](const Break& b, const Rational& x) { return b.t < x; });
    if (it->t == t)
        return it->v;
    const Break& hi = *it;
    const Break& lo = *(it - 1);
    return lo.v + (hi.v - lo.v) * (t - lo.t) / (hi.t - lo.t);
}

bool PlMap::nondecreasing() const
{
    for (std::size_t i = 1; i < breaks_.size(); ++i)
        if (breaks_[i].v < breaks_[i - 1].v)
            return false;
    return true;
}

bool PlMap::strictly_increasing() const
{
    for (std::size_t i = 1; i < breaks_.size(); ++i)
        if (breaks_[i].v <= breaks_[i - 1].v)
            return false;
    return true;
}

// -- Reparam -----------------------------------------------------------------

Reparam::Reparam(PlMap map)
    : map_(std::move(map))
{
    if (map_.start_value() != 0)
        throw std::invalid_argument("reparametrization must fix 0");
    if (!map_.strictly_increasing())
        throw std::invalid_argument("reparametrization must be strictly increasing");
}

Reparam Reparam::identity(const Rational& length) { return linear(length, length); }

Reparam Reparam::linear(const Rational& source, const Rational& target)
{
    return Reparam(PlMap({{0, 0}, {source, target}}));
}

Rational Reparam::inverse_at(const Rational& v) const
{
    const auto b = map_.breaks();
    if (v < 0 || v > target_length())
        throw std::out_of_range("inverse reparametrization evaluated outside its range");
    auto it = std::lower_bound(b.begin(), b.end(), v, [](const PlMap::Break& br, const Rational& x) { return br.v < x; });
    if (it->v == v)
        return it->t;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    return lo.t + (hi.t - lo.t) * (v - lo.v) / (hi.v - lo.v);
}

Reparam compose(const Reparam& outer, const Reparam& inner)
{
    if (inner.target_length() != outer.source_length())
        throw std::invalid_argument("compose: lengths do not match");
    std::vector<Rational> times;
    for (const auto& b : inner.map().breaks())
        times.push_back(b.t);
    for (const auto& b : outer.map().breaks())
        times.push_back(inner.inverse_at(b.t));
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    std::vector<PlMap::Break> breaks;
    for (const auto& s : times)
        breaks.push_back({s, outer(inner(s))});
    return Reparam(PlMap(std::move(breaks)));
}

Reparam inverse(const Reparam& phi)
{
    std::vector<PlMap::Break> breaks;
    for (const auto& b : phi.map().breaks())
        breaks.push_back({b.v, b.t});
    return Reparam(PlMap(std::move(breaks)));
}

// -- DPath -------------------------------------------------------------------

namespace {

Coords eval_track(const Segment& seg, const Rational& tau)
{
    const auto& b = seg.breaks;
    auto it = std::lower_bound(b.begin(), b.end(), tau, [](const Segment::Break& br, const Rational& x) { return br.t < x; });
    if (it == b.end())
        throw std::out_of_range("track evaluated past its end");
    if (it->t == tau)
        return it->x;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const Rational frac = (tau - lo.t) / (hi.t - lo.t);
    Coords x(lo.x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        x[k] = lo.x[k] + (hi.x[k] - lo.x[k]) * frac;
    return x;
}

bool collinear(const Segment::Break& prev, const Segment::Break& cur, const Segment::Break& next)
{
    for (std::size_t k = 0; k < cur.x.size(); ++k)
        if ((cur.x[k] - prev.x[k]) * (next.t - cur.t) != (next.x[k] - cur.x[k]) * (cur.t - prev.t))
            return false;
    return true;
}

void check_and_normalize(const PrecubicalSet& k, Segment& seg, std::size_t which)
{
    const std::string where = "segment " + std::to_string(which);
    if (!k.contains(seg.carrier) || seg.carrier.dim < 1)
        throw InvalidPath(where + ": carrier " + to_string(seg.carrier) + " is not a cube of dimension >= 1");
    if (seg.breaks.size() < 2)
        throw InvalidPath(where + ": a track needs at least two breakpoints");
    if (seg.breaks.front().t != 0)
        throw InvalidPath(where + ": local time must start at 0");
    for (std::size_t j = 0; j < seg.breaks.size(); ++j) {
        const auto& b = seg.breaks[j];
        if (static_cast<int>(b.x.size()) != seg.carrier.dim)
            throw InvalidPath(where + ": breakpoint " + std::to_string(j) + " has the wrong number of coordinates");
        for (const auto& c : b.x)
            if (c < 0 || c > 1)
                throw InvalidPath(where + ": coordinate " + to_string(c) + " outside [0,1]");
        if (j == 0)
            continue;
        const auto& prev = seg.breaks[j - 1];
        if (b.t <= prev.t)
            throw InvalidPath(where + ": breakpoint times must strictly increase");
        for (std::size_t c = 0; c < b.x.size(); ++c)
            if (b.x[c] < prev.x[c])
                throw InvalidPath(where + ": axis " + std::to_string(c + 1) + " decreases at t=" + to_string(b.t));
    }

    std::vector<Segment::Break> kept{seg.breaks.front()};
    for (std::size_t j = 1; j + 1 < seg.breaks.size(); ++j)
        if (!collinear(kept.back(), seg.breaks[j], seg.breaks[j + 1]))
            kept.push_back(seg.breaks[j]);
    kept.push_back(seg.breaks.back());
    seg.breaks = std::move(kept);
}

}  // namespace

DPath::DPath(std::shared_ptr<const PrecubicalSet> complex, std::vector<Segment> segments)
    : complex_(std::move(complex))
    , segments_(std::move(segments))
    , length_(0)
{
    if (!complex_)
        throw InvalidPath("d-path without a complex");
    if (segments_.empty())
        throw InvalidPath("d-path without segments");

    bool moves = false;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        check_and_normalize(*complex_, segments_[i], i);
        const auto& seg = segments_[i];
        moves = moves || seg.breaks.front().x != seg.breaks.back().x;
        starts_.push_back(length_);
        length_ += seg.length();
        if (i > 0) {
            const auto& prev = segments_[i - 1];
            Point a = canonicalize(*complex_, prev.carrier, prev.breaks.back().x);
            Point b = canonicalize(*complex_, seg.carrier, seg.breaks.front().x);
            if (a != b)
                throw InvalidPath("segments " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                  " do not meet: " + to_string(a) + " vs " + to_string(b));
        }
    }
    if (!moves)
        throw InvalidPath("constant d-path");
}

Point DPath::start() const
{
    const auto& seg = segments_.front();
    return canonicalize(*complex_, seg.carrier, seg.breaks.front().x);
}

Point DPath::end() const
{
    const auto& seg = segments_.back();
    return canonicalize(*complex_, seg.carrier, seg.breaks.back().x);
}

Point DPath::at(const Rational& t) const
{
    if (t < 0 || t > length_)
        throw std::out_of_range("d-path evaluated outside [0, length]");
    auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - starts_.begin()) - 1;
    const auto& seg = segments_[i];
    return canonicalize(*complex_, seg.carrier, eval_track(seg, std::min(Rational(t - starts_[i]), seg.length())));
}

bool DPath::operator==(const DPath& other) const
{
    if (complex_ != other.complex_ && *complex_ != *other.complex_)
        return false;
    return segments_ == other.segments_;
}

// -- arc length --------------------------------------------------------------

PlMap arc_length_profile(const DPath& path)
{
    std::vector<PlMap::Break> breaks{{0, 0}};
    Rational travelled = 0;
    for (std::size_t i = 0; i < path.segments().size(); ++i) {
        const auto& seg = path.segments()[i];
        for (std::size_t j = 1; j < seg.breaks.size(); ++j) {
            travelled += d1(seg.breaks[j - 1].x, seg.breaks[j].x);
            breaks.push_back({path.segment_start(i) + seg.breaks[j].t, travelled});
        }
    }
    return PlMap(std::move(breaks));
}

Rational l1_length(const DPath& path) { return arc_length_profile(path).end_value(); }

// -- composition -------------------------------------------------------------

DPath moore_compose(const DPath& first, const DPath& second)
{
    if (first.complex_ptr() != second.complex_ptr() && first.complex() != second.complex())
        throw InvalidPath("moore_compose: paths live in different complexes");
    if (first.end() != second.start())
        throw InvalidPath("moore_compose: first path ends at " + to_string(first.end()) + " but second starts at " +
                          to_string(second.start()));
    std::vector<Segment> segs(first.segments().begin(), first.segments().end());
    segs.insert(segs.end(), second.segments().begin(), second.segments().end());
    return DPath(first.complex_ptr(), std::move(segs));
}

DPath normalized_compose(const DPath& first, const DPath& second)
{
    if (first.length() != 1 || second.length() != 1)
        throw PreconditionError("normalized composition takes paths of length 1");
    const Reparam half = Reparam::linear(Rational(1, 2), 1);
    return moore_compose(reparametrize(first, half), reparametrize(second, half));
}

DPath reparametrize(const DPath& path, const Reparam& phi)
{
    if (phi.target_length() != path.length())
        throw std::invalid_argument("reparametrize: target length " + to_string(phi.target_length()) +
                                    " differs from path length " + to_string(path.length()));
    std::vector<Segment> out;
    for (std::size_t i = 0; i < path.segments().size(); ++i) {
        const auto& seg = path.segments()[i];
        const Rational t0 = path.segment_start(i);
        const Rational t1 = t0 + seg.length();
        const Rational s0 = phi.inverse_at(t0);
        const Rational s1 = phi.inverse_at(t1);

        std::vector<Rational> times;
        for (const auto& b : seg.breaks)
            times.push_back(phi.inverse_at(t0 + b.t));
        for (const auto& b : phi.map().breaks())
            if (b.t > s0 && b.t < s1)
                times.push_back(b.t);
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end()), times.end());

        Segment seg_out{seg.carrier, {}};
        for (const auto& s : times)
            seg_out.breaks.push_back({s - s0, eval_track(seg, phi(s) - t0)});
        out.push_back(std::move(seg_out));
    }
    return DPath(path.complex_ptr(), std::move(out));
}

// -- regularity and tameness -------------------------------------------------

RegularityReport is_regular(const DPath& path)
{
    std::optional<Rational> run_start;
    Rational run_end;
    for (std::size_t i = 0; i < path.segments().size(); ++i) {
        const auto& seg = path.segments()[i];
        const Rational base = path.segment_start(i);
        for (std::size_t j = 1; j < seg.breaks.size(); ++j) {
            const bool constant = seg.breaks[j - 1].x == seg.breaks[j].x;
            if (constant) {
                if (!run_start)
                    run_start = base + seg.breaks[j - 1].t;
                run_end = base + seg.breaks[j].t;
            } else if (run_start) {
                return {false, std::make_pair(*run_start, run_end)};
            }
        }
    }
    if (run_start)
        return {false, std::make_pair(*run_start, run_end)};
    return {};
}

namespace {

bool at_vertex(const Coords& x)
{
    return std::all_of(x.begin(), x.end(), [](const Rational& c) { return c == 0 || c == 1; });
}

}  // namespace

TamenessReport is_tame(const DPath& path)
{
    const auto segs = path.segments();
    std::size_t i = 0;
    while (i < segs.size()) {
        std::size_t j = i;
        while (j + 1 < segs.size() && segs[j + 1].carrier == segs[i].carrier &&
               segs[j + 1].breaks.front().x == segs[j].breaks.back().x)
            ++j;
        const auto& first = segs[i].breaks.front().x;
        if (!at_vertex(first)) {
            const Rational t = path.segment_start(i);
            return {false, t, canonicalize(path.complex(), segs[i].carrier, first)};
        }
        const auto& last = segs[j].breaks.back().x;
        if (!at_vertex(last)) {
            const Rational t = path.segment_start(j) + segs[j].length();
            return {false, t, canonicalize(path.complex(), segs[j].carrier, last)};
        }
        i = j + 1;
    }
    return {};
}

// -- naturalization ----------------------------------------------------------

bool is_natural(const DPath& path)
{
    const PlMap profile = arc_length_profile(path);
    for (const auto& b : profile.breaks())
        if (b.t != b.v)
            return false;
    return true;
}

NaturalDPath::NaturalDPath(DPath path)
    : path_(std::move(path))
{
    if (!is_natural(path_))
        throw InvalidPath("d-path is not parametrized by L1 arc length");
}

NotRegularError::NotRegularError(Rational a, Rational b)
    : PreconditionError("d-path is not regular: stop interval [" + to_string(a) + ", " + to_string(b) + "]")
    , stop_(std::move(a), std::move(b))
{
}

Naturalization naturalize(const DPath& path)
{
    if (auto reg = is_regular(path); !reg.regular)
        throw NotRegularError(reg.stop->first, reg.stop->second);
    if (!path.start().is_vertex() || !path.end().is_vertex())
        throw PreconditionError("naturalize needs a path between vertices; endpoints are " + to_string(path.start()) +
                                " and " + to_string(path.end()));
    Reparam phi(arc_length_profile(path));
    if (!is_integer(phi.target_length()))
        throw PreconditionError("L1 length " + to_string(phi.target_length()) + " is not an integer");
    NaturalDPath natural(reparametrize(path, inverse(phi)));
    return {std::move(phi), std::move(natural)};
}

DPath denaturalize(const Reparam& phi, const NaturalDPath& natural) { return reparametrize(natural.path(), phi); }

Segment straight_segment(CellId carrier, Coords x, Coords y)
{
    const Rational len = d1(x, y);
    if (len == 0)
        throw InvalidPath("straight_segment: endpoints coincide");
    return {carrier, {{0, std::move(x)}, {len, std::move(y)}}};
}

}  // namespace cubepaths
