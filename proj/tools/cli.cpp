#include "cli.hpp"

#include "cubepaths/chains.hpp"
#include "cubepaths/dpath_io.hpp"
#include "cubepaths/nerve.hpp"
#include "cubepaths/pcs_io.hpp"
#include "cubepaths/pvlang.hpp"
#include "cubepaths/spatial.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace cubepaths::cli {

namespace {

/// Bad arguments or unreadable files.
class UsageError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw UsageError("cannot write " + path);
}

std::optional<long> parse_count(std::string_view s)
{
    long v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size() || v < 0)
        return std::nullopt;
    return v;
}

/// "cube:N", "boundary:N", "skeleton:N:M", or a .pcs file.
PrecubicalSet load_complex(const std::string& source)
{
    std::vector<std::string> parts;
    std::stringstream ss(source);
    for (std::string p; std::getline(ss, p, ':');)
        parts.push_back(p);
    if (parts.size() >= 2 && (parts[0] == "cube" || parts[0] == "boundary" || parts[0] == "skeleton")) {
        std::vector<int> nums;
        for (std::size_t i = 1; i < parts.size(); ++i) {
            auto v = parse_count(parts[i]);
            if (!v || *v > 12)
                throw UsageError("bad dimension '" + parts[i] + "' in " + source);
            nums.push_back(static_cast<int>(*v));
        }
        if (parts[0] == "skeleton" && nums.size() == 2)
            return skeleton(standard_cube(nums[0]), nums[1]);
        if (parts[0] != "skeleton" && nums.size() == 1)
            return parts[0] == "cube" ? standard_cube(nums[0]) : boundary(nums[0]);
        throw UsageError("malformed complex name " + source);
    }
    const std::string text = read_file(source);
    try {
        return read_pcs(text);
    } catch (const ParseError& e) {
        throw UsageError(source + ":" + (e.line() ? "" : " ") + e.what());
    }
}

/// A vertex index, or the label of a vertex.
std::size_t resolve_vertex(const PrecubicalSet& k, const std::string& text, std::size_t fallback)
{
    if (text.empty())
        return fallback;
    if (auto v = parse_count(text)) {
        if (static_cast<std::size_t>(*v) >= k.count(0))
            throw UsageError("vertex " + text + " does not exist (complex has " + std::to_string(k.count(0)) +
                             " vertices)");
        return static_cast<std::size_t>(*v);
    }
    for (std::size_t v = 0; v < k.count(0); ++v)
        if (k.label({0, v}) == text)
            return v;
    throw UsageError("no vertex labelled " + text);
}

Coefficients parse_coeff(const std::string& s) { return s == "integer" ? Coefficients::integer : Coefficients::rational; }

struct PathsArgs {
    std::string input;
    std::string from;
    std::string to;
    int min_n = 0;
    int max_n = 0;
    int window = 2;
    int max_dim = -1;
    bool json = false;
    unsigned jobs = 1;
    std::string coeff = "rational";
    std::string emit_complex;
};

void add_path_options(CLI::App* cmd, PathsArgs& a)
{
    cmd->add_option("--min-n", a.min_n, "Smallest total dimension n (default: shortest edge path)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-n", a.max_n, "Largest total dimension n (default: smallest n plus --window)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--window", a.window, "How far past the smallest n to look by default")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-dim", a.max_dim, "Highest homology dimension (default: all)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--json", a.json, "Machine-readable output");
    cmd->add_option("--jobs", a.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    cmd->add_option("--coeff", a.coeff, "Homology coefficients")
        ->check(CLI::IsMember({"rational", "integer"}));
    cmd->add_option("--emit-complex", a.emit_complex, "Write the nerve boundary matrices as sparse triplets");
}

/// The shared report pipeline behind `paths` and `pv analyze`.
std::vector<PathSpaceRow> run_report(const PrecubicalSet& k, std::size_t alpha, std::size_t beta,
                                     const PathsArgs& a)
{
    const auto shortest = minimal_chain_length(k, alpha, beta);
    PathSpaceOptions opt;
    opt.coeff = parse_coeff(a.coeff);
    opt.jobs = a.jobs;
    if (a.max_dim >= 0)
        opt.max_dim = a.max_dim;
    opt.min_n = a.min_n > 0 ? a.min_n : shortest.value_or(1);
    opt.max_n = a.max_n > 0 ? a.max_n : (shortest ? *shortest + a.window : 0);
    if (opt.max_n < opt.min_n)
        return {};

    auto rows = path_space_report(k, alpha, beta, opt);
    if (!a.emit_complex.empty()) {
        std::string dump;
        for (const auto& row : rows) {
            const ChainCategory cat = build_chain_category(k, alpha, beta, row.n);
            std::optional<int> dims;
            if (opt.max_dim)
                dims = *opt.max_dim + 1;
            dump += "## n=" + std::to_string(row.n) + "\n" + complex_to_triplets(chain_complex(NerveComplex(cat, dims)));
        }
        write_file(a.emit_complex, dump);
    }
    return rows;
}

int cmd_generate(const std::string& kind, int n, int dim, const std::string& output, std::ostream& out)
{
    PrecubicalSet k;
    if (kind == "cube") {
        k = standard_cube(n);
    } else if (kind == "boundary") {
        k = boundary(n);
    } else {
        if (dim < 0)
            throw UsageError("generate skeleton needs --dim");
        k = skeleton(standard_cube(n), dim);
    }
    const std::string text = write_pcs(k);
    if (output.empty())
        out << text;
    else
        write_file(output, text);
    return kOk;
}

int cmd_paths(const PathsArgs& a, std::ostream& out)
{
    const PrecubicalSet k = load_complex(a.input);
    if (k.count(0) == 0)
        throw UsageError("complex has no vertices");
    const std::size_t alpha = resolve_vertex(k, a.from, 0);
    const std::size_t beta = resolve_vertex(k, a.to, k.count(0) - 1);
    const auto rows = run_report(k, alpha, beta, a);
    const auto coeff = parse_coeff(a.coeff);
    out << (a.json ? report_to_json(rows, alpha, beta, coeff) : report_to_text(rows, alpha, beta, coeff));
    return kOk;
}

std::string point_text(const Point& p) { return to_string(p.carrier) + " at " + to_string(p.coords); }

int cmd_naturalize(const std::string& input, const std::string& complex_source, const std::string& reparam_out,
                   const std::string& natural_out, bool json, std::ostream& out, std::ostream& err)
{
    auto k = std::make_shared<const PrecubicalSet>(load_complex(complex_source));
    DPath path = [&] {
        try {
            return read_dpath(read_file(input), k);
        } catch (const InvalidPath& e) {
            throw UsageError(std::string("invalid d-path: ") + e.what());
        }
    }();
    const RegularityReport reg = is_regular(path);
    const TamenessReport tame = is_tame(path);

    nlohmann::ordered_json doc{{"regular", reg.regular}, {"tame", tame.tame}};
    std::ostringstream text;
    text << "regular: " << (reg.regular ? "yes" : "no");
    if (reg.stop) {
        text << " (stops on [" << to_string(reg.stop->first) << ", " << to_string(reg.stop->second) << "])";
        doc["stop_interval"] = {to_string(reg.stop->first), to_string(reg.stop->second)};
    }
    text << "\ntame: " << (tame.tame ? "yes" : "no");
    if (tame.time && tame.point) {
        text << " (cube change away from a vertex at t=" << to_string(*tame.time) << ", " << point_text(*tame.point)
             << ")";
        doc["tame_failure"] = {{"t", to_string(*tame.time)}, {"point", point_text(*tame.point)}};
    }
    text << "\nlength: " << to_string(path.length()) << "\n";
    doc["length"] = to_string(path.length());

    if (!reg.regular) {
        out << (json ? doc.dump(2) + "\n" : text.str());
        err << "error: d-path is not regular, stop interval [" << to_string(reg.stop->first) << ", "
            << to_string(reg.stop->second) << "]\n";
        return kVerdictFailure;
    }

    const Naturalization nat = naturalize(path);
    const std::string phi = write_reparam(nat.phi);
    const std::string nu = write_dpath(nat.natural.path());
    if (!reparam_out.empty())
        write_file(reparam_out, phi);
    if (!natural_out.empty())
        write_file(natural_out, nu);
    doc["reparam"] = nlohmann::ordered_json::parse(phi);
    doc["natural"] = nlohmann::ordered_json::parse(nu);
    if (json) {
        out << doc.dump(2) << "\n";
    } else {
        out << text.str();
        out << "reparam: " << (reparam_out.empty() ? phi : "written to " + reparam_out + "\n");
        out << "natural: " << (natural_out.empty() ? nu : "written to " + natural_out + "\n");
    }
    return kOk;
}

int cmd_check_spatial(const std::string& input, bool json, std::ostream& out)
{
    const PrecubicalSet k = load_complex(input);
    const SpatialVerdict v = is_spatial(k);
    if (json) {
        out << verdict_to_json(v);
    } else {
        out << verdict_name(v) << "\n";
        if (v.witness) {
            const auto& w = *v.witness;
            out << "cubes " << to_string(w.first) << " and " << to_string(w.second) << " agree on:";
            for (const auto& cell : w.agreement)
                out << " " << word_string(cell);
            out << "\npath through:";
            for (const auto& cell : w.path.cells)
                out << " " << word_string(cell);
            out << "\n";
        }
    }
    return v.kind == SpatialVerdict::Kind::not_spatial ? kVerdictFailure : kOk;
}

int cmd_pv(bool analyze, const PathsArgs& a, const std::string& emit_pcs, std::ostream& out)
{
    const std::string source = read_file(a.input);
    const CompiledPv c = [&] {
        try {
            return compile_pv(parse_pv(source));
        } catch (const ParseError& e) {
            throw UsageError(a.input + ":" + e.what());
        }
    }();
    const std::string pcs = write_pcs(c.complex);
    if (!emit_pcs.empty())
        write_file(emit_pcs, pcs);
    if (!analyze) {
        if (emit_pcs.empty())
            out << pcs;
        return kOk;
    }

    const auto rows = run_report(c.complex, c.bottom, c.top, a);
    const auto coeff = parse_coeff(a.coeff);
    const auto dead = deadlock_candidates(c);
    auto label = [&](std::size_t v) { return c.complex.label({0, v}).value_or(std::to_string(v)); };
    if (a.json) {
        nlohmann::ordered_json doc{{"cells", c.complex.counts()},
                                   {"bottom", label(c.bottom)},
                                   {"top", label(c.top)},
                                   {"report", nlohmann::ordered_json::parse(report_to_json(rows, c.bottom, c.top, coeff))},
                                   {"deadlock_candidates", nlohmann::ordered_json::array()}};
        for (auto v : dead)
            doc["deadlock_candidates"].push_back({{"vertex", v}, {"label", label(v)}});
        out << doc.dump(2) << "\n";
    } else {
        out << "cells per dimension:";
        for (auto n : c.complex.counts())
            out << " " << n;
        out << "\nstart " << label(c.bottom) << ", end " << label(c.top) << "\n";
        out << report_to_text(rows, c.bottom, c.top, coeff);
        out << "deadlock candidates: " << dead.size() << "\n";
        for (auto v : dead)
            out << "  vertex " << v << " " << label(v) << "\n";
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Directed path spaces of precubical sets"};
    app.name("cubepaths");
    app.require_subcommand(1);

    std::string kind, output;
    int gen_n = 0, gen_dim = -1;
    auto* generate = app.add_subcommand("generate", "Write a standard complex as .pcs");
    generate->add_option("kind", kind, "cube, boundary or skeleton")
        ->required()
        ->check(CLI::IsMember({"cube", "boundary", "skeleton"}));
    generate->add_option("n", gen_n, "Cube dimension")->required()->check(CLI::Range(0, 12));
    generate->add_option("--dim", gen_dim, "Skeleton dimension")->check(CLI::NonNegativeNumber);
    generate->add_option("-o,--output", output, "Output file (default: stdout)");

    PathsArgs paths_args;
    auto* paths = app.add_subcommand("paths", "Cube chains, components and nerve homology between two vertices");
    paths->add_option("--input", paths_args.input, "A .pcs file, or cube:N, boundary:N, skeleton:N:M")->required();
    paths->add_option("--from", paths_args.from, "Start vertex: index or label (default: vertex 0)");
    paths->add_option("--to", paths_args.to, "End vertex: index or label (default: last vertex)");
    add_path_options(paths, paths_args);

    std::string dpath_input, complex_source, reparam_out, natural_out;
    bool nat_json = false;
    auto* nat = app.add_subcommand("naturalize", "Split a d-path into a reparametrization and a natural d-path");
    nat->add_option("--input", dpath_input, "A .dpath file")->required();
    nat->add_option("--complex", complex_source, "The complex the path lives in")->required();
    nat->add_option("--reparam-out", reparam_out, "Write the reparametrization here");
    nat->add_option("--natural-out", natural_out, "Write the natural d-path here");
    nat->add_flag("--json", nat_json, "Machine-readable output");

    std::string spatial_input;
    bool spatial_json = false;
    auto* spatial = app.add_subcommand("check-spatial", "Decide spatiality (dimension at most 3)");
    spatial->add_option("--input", spatial_input, "A .pcs file or generator such as cube:3")->required();
    spatial->add_flag("--json", spatial_json, "Machine-readable output");

    PathsArgs pv_args;
    std::string emit_pcs;
    auto* pv = app.add_subcommand("pv", "Compile or analyze a PV program");
    pv->require_subcommand(1);
    auto* pv_compile = pv->add_subcommand("compile", "Emit the program's precubical set");
    auto* pv_analyze = pv->add_subcommand("analyze", "Path-space report from start to end plus deadlock scan");
    for (auto* cmd : {pv_compile, pv_analyze}) {
        cmd->add_option("--input", pv_args.input, "A .pv source file")->required();
        cmd->add_option("--emit-pcs", emit_pcs, "Write the compiled .pcs here");
    }
    add_path_options(pv_analyze, pv_args);

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*generate)
            return cmd_generate(kind, gen_n, gen_dim, output, out);
        if (*paths)
            return cmd_paths(paths_args, out);
        if (*nat)
            return cmd_naturalize(dpath_input, complex_source, reparam_out, natural_out, nat_json, out, err);
        if (*spatial)
            return cmd_check_spatial(spatial_input, spatial_json, out);
        return cmd_pv(static_cast<bool>(*pv_analyze), pv_args, emit_pcs, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kVerdictFailure;
    } catch (const NotRegularError& e) {
        err << "error: " << e.what() << "\n";
        return kVerdictFailure;
    } catch (const Error& e) {
        // Parse errors, malformed complexes, unusable arguments.
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace cubepaths::cli
