#include "cubepaths/dpath_io.hpp"
#include "cubepaths/pcs_io.hpp"

#include <nlohmann/json.hpp>

namespace cubepaths {

using nlohmann::json;

namespace {

json parse_document(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("invalid JSON: " + std::string(e.what()), line, column);
    }
}

Rational rational_field(const json& value, const std::string& where)
{
    try {
        if (value.is_string())
            return parse_rational(value.get<std::string>());
        if (value.is_number_integer())
            return Rational(value.get<long>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected a rational string \"p/q\", got " + value.dump());
}

}  // namespace

DPath read_dpath(std::string_view text, std::shared_ptr<const PrecubicalSet> complex)
{
    const json doc = parse_document(text);
    if (!doc.is_array())
        throw ParseError("a .dpath document is a list of segments");

    std::vector<Segment> segments;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::string where = "segment " + std::to_string(i);
        const json& s = doc[i];
        if (!s.is_object() || !s.contains("carrier") || !s.contains("breaks"))
            throw ParseError(where + ": needs \"carrier\" and \"breaks\"");
        const json& c = s["carrier"];
        if (!c.is_array() || c.size() != 2 || !c[0].is_number_unsigned() || !c[1].is_number_unsigned())
            throw ParseError(where + ": carrier must be [dim, index]");
        Segment seg{{c[0].get<int>(), c[1].get<std::size_t>()}, {}};
        const json& breaks = s["breaks"];
        if (!breaks.is_array())
            throw ParseError(where + ": breaks must be a list");
        for (std::size_t j = 0; j < breaks.size(); ++j) {
            const std::string at = where + " break " + std::to_string(j);
            const json& b = breaks[j];
            if (!b.is_array() || b.size() != 2 || !b[1].is_array())
                throw ParseError(at + ": expected [t, [x...]]");
            Segment::Break br{rational_field(b[0], at), {}};
            for (const auto& x : b[1])
                br.x.push_back(rational_field(x, at));
            seg.breaks.push_back(std::move(br));
        }
        segments.push_back(std::move(seg));
    }
    return DPath(std::move(complex), std::move(segments));
}

std::string write_dpath(const DPath& path)
{
    json doc = json::array();
    for (const auto& seg : path.segments()) {
        json breaks = json::array();
        for (const auto& b : seg.breaks) {
            json xs = json::array();
            for (const auto& x : b.x)
                xs.push_back(to_string(x));
            breaks.push_back(json::array({to_string(b.t), xs}));
        }
        doc.push_back({{"breaks", breaks}, {"carrier", json::array({seg.carrier.dim, seg.carrier.index})}});
    }
    return doc.dump() + "\n";
}

Reparam read_reparam(std::string_view text)
{
    const json doc = parse_document(text);
    if (!doc.is_object() || !doc.contains("breaks") || !doc["breaks"].is_array())
        throw ParseError("a reparametrization is {\"breaks\": [[t, v], ...]}");
    std::vector<PlMap::Break> breaks;
    for (const auto& b : doc["breaks"]) {
        if (!b.is_array() || b.size() != 2)
            throw ParseError("reparametrization breakpoints are [t, v] pairs");
        breaks.push_back({rational_field(b[0], "t"), rational_field(b[1], "v")});
    }
    try {
        return Reparam(PlMap(std::move(breaks)));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string write_reparam(const Reparam& phi)
{
    json breaks = json::array();
    for (const auto& b : phi.map().breaks())
        breaks.push_back(json::array({to_string(b.t), to_string(b.v)}));
    return json{{"breaks", breaks}}.dump() + "\n";
}

}  // namespace cubepaths
