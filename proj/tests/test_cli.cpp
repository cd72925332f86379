#include "support.hpp"

#include "cli.hpp"
#include "cubepaths/dpath_io.hpp"
#include "cubepaths/pcs_io.hpp"
#include "cubepaths/spatial.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cubepaths;
using namespace cubepaths::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "cubepaths");
    std::ostringstream out, err;
    const int code = cubepaths::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(CUBEPATHS_TEST_DIR) + "/data/" + name; }

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Compares against tests/golden/<name>; CUBEPATHS_UPDATE_GOLDEN=1 rewrites it.
void check_golden(const std::string& name, const std::string& text)
{
    const fs::path path = fs::path(CUBEPATHS_TEST_DIR) / "golden" / name;
    if (std::getenv("CUBEPATHS_UPDATE_GOLDEN")) {
        std::ofstream(path, std::ios::binary) << text;
        return;
    }
    REQUIRE_MESSAGE(fs::exists(path), "missing golden file " << path);
    CHECK(slurp(path) == text);
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("cubepaths-cli-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("generate writes the standard complexes")
{
    auto r = invoke({"generate", "cube", "2"});
    CHECK(r.code == 0);
    CHECK(read_pcs(r.out) == standard_cube(2));
    CHECK(r.out == write_pcs(standard_cube(2)));

    r = invoke({"generate", "boundary", "0"});
    CHECK(r.code == 0);
    CHECK(read_pcs(r.out).empty());

    TempDir tmp;
    r = invoke({"generate", "skeleton", "4", "--dim", "2", "-o", tmp / "sk.pcs"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(load_pcs(tmp / "sk.pcs") == skeleton(standard_cube(4), 2));

    CHECK(invoke({"generate", "skeleton", "3"}).code == 2);
    CHECK(invoke({"generate", "prism", "3"}).code == 2);
}

TEST_CASE("paths reports")
{
    auto r = invoke({"paths", "--input", "cube:2"});
    CHECK(r.code == 0);
    check_golden("paths_cube2.txt", r.out);

    r = invoke({"paths", "--input", "boundary:2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("2       2          0           2  2          2\n") != std::string::npos);

    r = invoke({"paths", "--input", "boundary:3", "--json", "--coeff", "integer"});
    CHECK(r.code == 0);
    check_golden("paths_boundary3.json", r.out);

    // Unreachable target: empty report, still success.
    r = invoke({"paths", "--input", "cube:2", "--from", "3", "--to", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("(no cube chains in range)") != std::string::npos);

    r = invoke({"paths", "--input", "cube:3", "--from", "000", "--to", "111"});
    CHECK(r.code == 2);  // 111 reads as a vertex index
    r = invoke({"paths", "--input", "cube:3", "--from", "*00"});
    CHECK(r.code == 2);
    CHECK(r.err.find("no vertex labelled *00") != std::string::npos);
    r = invoke({"paths", "--input", "cube:3", "--from", "1", "--to", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\n2       3") != std::string::npos);

    CHECK(invoke({"paths", "--input", "cube:2", "--max-n", "0"}).code == 2);
    CHECK(invoke({"paths", "--input", "nowhere.pcs"}).code == 2);
    CHECK(invoke({"paths", "--input", "cube:x"}).code == 2);
}

TEST_CASE("reports do not depend on the thread count")
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"paths", "--input", "boundary:4", "--max-n", "6", "--json"},
             {"paths", "--input", "cube:4", "--coeff", "integer"},
             {"pv", "analyze", "--input", data("swiss_flag.pv"), "--json"}}) {
        auto one = args, eight = args;
        one.insert(one.end(), {"--jobs", "1"});
        eight.insert(eight.end(), {"--jobs", "8"});
        const auto a = invoke(one), b = invoke(eight);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("emitting the nerve complex")
{
    TempDir tmp;
    auto r = invoke({"paths", "--input", "boundary:3", "--emit-complex", tmp / "d.txt"});
    CHECK(r.code == 0);
    const std::string dump = slurp(tmp / "d.txt");
    CHECK(dump.rfind("## n=3\n# d1 12 12 24\n", 0) == 0);

    r = invoke({"paths", "--input", "cube:3", "--max-dim", "0", "--emit-complex", tmp / "e.txt"});
    CHECK(r.code == 0);
    const std::string capped = slurp(tmp / "e.txt");
    CHECK(capped.rfind("## n=3\n# d1 ", 0) == 0);
    CHECK(capped.find("# d2") == std::string::npos);
}

TEST_CASE("naturalize")
{
    TempDir tmp;
    auto r = invoke({"naturalize", "--input", data("slow_diagonal.dpath"), "--complex", "cube:3", "--json"});
    CHECK(r.code == 0);
    check_golden("naturalize_diagonal.json", r.out);

    r = invoke({"naturalize", "--input", data("slow_diagonal.dpath"), "--complex", "cube:3", "--reparam-out",
             tmp / "phi.json", "--natural-out", tmp / "nu.dpath"});
    CHECK(r.code == 0);
    CHECK(read_reparam(slurp(tmp / "phi.json")) == Reparam::linear(q(6), q(3)));
    auto cube = shared(standard_cube(3));
    CHECK(read_dpath(slurp(tmp / "nu.dpath"), cube) == diagonal(cube, 3, q(3)));

    // A natural input comes back with the identity reparametrization.
    r = invoke({"naturalize", "--input", tmp / "nu.dpath", "--complex", "cube:3", "--json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"breaks\": [\n      [\n        \"0\",\n        \"0\"\n      ],\n      [\n        \"3\",\n"
                     "        \"3\"") != std::string::npos);

    r = invoke({"naturalize", "--input", data("pause.dpath"), "--complex", "cube:2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("stop interval [1, 3/2]") != std::string::npos);

    // The crossing path: regular but not tame in the hollow cube.
    std::ofstream(tmp / "cross.dpath") << write_dpath(crossing_path_in_boundary());
    r = invoke({"naturalize", "--input", tmp / "cross.dpath", "--complex", "boundary:3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("tame: no") != std::string::npos);

    CHECK(invoke({"naturalize", "--input", data("slow_diagonal.dpath"), "--complex", "cube:2"}).code == 2);
}

TEST_CASE("check-spatial verdicts")
{
    auto r = invoke({"check-spatial", "--input", "cube:3"});
    CHECK(r.code == 0);
    CHECK(r.out == "spatial\n");
    CHECK(invoke({"check-spatial", "--input", "boundary:3"}).out == "spatial\n");
    CHECK(invoke({"check-spatial", "--input", "skeleton:5:2"}).out == "spatial\n");
    r = invoke({"check-spatial", "--input", "cube:4"});
    CHECK(r.code == 0);
    CHECK(r.out == "unsupported(dim=4)\n");

    TempDir tmp;
    FaceSet a;
    for (const char* w : {"**0", "*1*"})
        a.insert(parse_word(w));
    save_pcs(tmp / "double.pcs", double_cube(face_closure(a)));
    r = invoke({"check-spatial", "--input", tmp / "double.pcs", "--json"});
    CHECK(r.code == 1);
    check_golden("spatial_double.json", r.out);
    r = invoke({"check-spatial", "--input", tmp / "double.pcs"});
    CHECK(r.code == 1);
    CHECK(r.out.rfind("not-spatial\ncubes (3,0) and (3,1) agree on:", 0) == 0);
}

TEST_CASE("pv compile and analyze")
{
    auto r = invoke({"pv", "compile", "--input", data("mutex.pv")});
    CHECK(r.code == 0);
    const auto k = read_pcs(r.out);
    CHECK(k.count(0) == 9);
    CHECK(k.count(1) == 12);
    CHECK(k.count(2) == 3);

    TempDir tmp;
    r = invoke({"pv", "analyze", "--input", data("swiss_flag.pv"), "--emit-pcs", tmp / "flag.pcs"});
    CHECK(r.code == 0);
    check_golden("pv_swiss_flag.txt", r.out);
    CHECK(load_pcs(tmp / "flag.pcs").count(2) == 11);

    r = invoke({"pv", "analyze", "--input", data("bad.pv")});
    CHECK(r.code == 2);
    CHECK(r.err.find("bad.pv:2:9: V(a) without a matching P(a)") != std::string::npos);
    CHECK(invoke({"pv", "analyze", "--input", data("missing.pv")}).code == 2);
}

TEST_CASE("argument errors and help")
{
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"paths"}).code == 2);
    auto r = invoke({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("check-spatial") != std::string::npos);
}
