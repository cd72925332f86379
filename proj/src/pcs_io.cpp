#include "cubepaths/pcs_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace cubepaths {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset)
{
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

namespace {

std::size_t as_index(const json& value, const std::string& where)
{
    if (!value.is_number_unsigned())
        throw ParseError(where + ": expected a non-negative integer, got " + value.dump());
    return value.get<std::size_t>();
}

}  // namespace

PrecubicalSet read_pcs(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // nlohmann reports the offset one past the offending byte.
        auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("invalid JSON: " + std::string(e.what()), line, column);
    }

    if (!doc.is_object())
        throw ParseError("top level must be an object");
    if (!doc.contains("dims") || !doc["dims"].is_array())
        throw ParseError("missing \"dims\" array");

    std::vector<std::size_t> counts;
    for (std::size_t d = 0; d < doc["dims"].size(); ++d)
        counts.push_back(as_index(doc["dims"][d], "dims[" + std::to_string(d) + "]"));
    const int top = static_cast<int>(counts.size()) - 1;

    const json faces_doc = doc.value("faces", json::object());
    if (!faces_doc.is_object())
        throw ParseError("\"faces\" must be an object keyed by dimension");
    for (const auto& [key, value] : faces_doc.items()) {
        int d = -1;
        try {
            d = std::stoi(key);
        } catch (const std::exception&) {
        }
        if (d < 1 || d > top || std::to_string(d) != key)
            throw ParseError("faces: unexpected dimension key \"" + key + "\"");
    }

    PrecubicalSet::FaceTable faces(std::max(top, 0));
    for (int d = 1; d <= top; ++d) {
        const std::string key = std::to_string(d);
        if (counts[d] == 0)
            continue;
        if (!faces_doc.contains(key))
            throw ParseError("faces: no entry for dimension " + key);
        const json& cells = faces_doc[key];
        if (!cells.is_array())
            throw ParseError("faces[\"" + key + "\"] must be an array");
        if (cells.size() != counts[d])
            throw ParseError("faces[\"" + key + "\"]: " + std::to_string(counts[d]) + " cells declared, " +
                             std::to_string(cells.size()) + " given");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const std::string where = "cell " + to_string(CellId{d, i});
            const json& pairs = cells[i];
            if (!pairs.is_array() || pairs.size() != static_cast<std::size_t>(d))
                throw ParseError(where + ": expected " + std::to_string(d) + " face pairs, got " +
                                 (pairs.is_array() ? std::to_string(pairs.size()) : pairs.dump()));
            std::vector<std::size_t> flat;
            for (int axis = 1; axis <= d; ++axis) {
                const json& pair = pairs[axis - 1];
                const std::string at = where + " axis " + std::to_string(axis);
                if (!pair.is_array() || pair.size() != 2)
                    throw ParseError(at + ": expected a [lower, upper] pair");
                flat.push_back(as_index(pair[0], at));
                flat.push_back(as_index(pair[1], at));
            }
            faces[d - 1].push_back(std::move(flat));
        }
    }

    PrecubicalSet::Labels labels;
    if (doc.contains("labels")) {
        const json& lab = doc["labels"];
        if (!lab.is_object())
            throw ParseError("\"labels\" must be an object");
        for (const auto& [dkey, per_dim] : lab.items()) {
            if (!per_dim.is_object())
                throw ParseError("labels[\"" + dkey + "\"] must be an object");
            for (const auto& [ikey, text_value] : per_dim.items()) {
                if (!text_value.is_string())
                    throw ParseError("labels[\"" + dkey + "\"][\"" + ikey + "\"] must be a string");
                try {
                    labels[CellId{std::stoi(dkey), std::stoul(ikey)}] = text_value.get<std::string>();
                } catch (const std::logic_error&) {
                    throw ParseError("labels: bad key \"" + dkey + "\"/\"" + ikey + "\"");
                }
            }
        }
    }

    PrecubicalSet k;
    try {
        k = PrecubicalSet(std::move(counts), faces, std::move(labels));
    } catch (const MalformedComplex& e) {
        throw ParseError(e.what());
    }
    require_valid(k);
    return k;
}

std::string write_pcs(const PrecubicalSet& k)
{
    std::ostringstream out;
    out << "{\n  \"dims\": [";
    for (int d = 0; d <= k.dimension(); ++d)
        out << (d ? ", " : "") << k.count(d);
    out << "],\n  \"faces\": {";

    // Keys in JSON (lexicographic) order so a read/write cycle is a fixed point.
    std::vector<std::string> keys;
    for (int d = 1; d <= k.dimension(); ++d)
        keys.push_back(std::to_string(d));
    std::sort(keys.begin(), keys.end());
    bool first_dim = true;
    for (const auto& key : keys) {
        const int d = std::stoi(key);
        out << (first_dim ? "\n" : ",\n") << "    \"" << key << "\": [";
        first_dim = false;
        for (std::size_t i = 0; i < k.count(d); ++i) {
            out << (i ? ",\n      [" : "\n      [");
            for (int axis = 1; axis <= d; ++axis)
                out << (axis > 1 ? ", [" : "[") << k.face({d, i}, axis, 0).index << ", "
                    << k.face({d, i}, axis, 1).index << "]";
            out << "]";
        }
        out << (k.count(d) ? "\n    ]" : "]");
    }
    out << (first_dim ? "}" : "\n  }");

    if (!k.labels().empty()) {
        std::map<std::string, std::map<std::string, std::string>> grouped;
        for (const auto& [cell, text] : k.labels())
            grouped[std::to_string(cell.dim)][std::to_string(cell.index)] = text;
        out << ",\n  \"labels\": {";
        bool first = true;
        for (const auto& [dkey, entries] : grouped) {
            out << (first ? "\n" : ",\n") << "    " << json(dkey).dump() << ": {";
            first = false;
            bool first_entry = true;
            for (const auto& [ikey, text] : entries) {
                out << (first_entry ? "" : ", ") << json(ikey).dump() << ": " << json(text).dump();
                first_entry = false;
            }
            out << "}";
        }
        out << "\n  }";
    }
    out << "\n}\n";
    return out.str();
}

PrecubicalSet load_pcs(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return read_pcs(buffer.str());
}

void save_pcs(const std::filesystem::path& path, const PrecubicalSet& k)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path.string());
    out << write_pcs(k);
}

}  // namespace cubepaths
