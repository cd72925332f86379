#include "cubepaths/pvlang.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

namespace cubepaths {

int PvProgram::capacity(std::string_view semaphore) const
{
    for (const auto& s : semaphores)
        if (s.name == semaphore)
            return s.capacity;
    throw PreconditionError("unknown semaphore " + std::string(semaphore));
}

// -- parsing -----------------------------------------------------------------

namespace {

struct Token {
    enum class Kind { ident, number, punct, end };
    Kind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    std::size_t line = 1, column = 1;
    std::size_t i = 0;
    auto advance = [&] {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        ++i;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                advance();
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            Token t{Token::Kind::ident, "", line, column};
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                t.text += text[i];
                advance();
            }
            out.push_back(std::move(t));
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            Token t{Token::Kind::number, "", line, column};
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                t.text += text[i];
                advance();
            }
            out.push_back(std::move(t));
        } else if (std::string_view(";:.()").find(c) != std::string_view::npos) {
            out.push_back({Token::Kind::punct, std::string(1, c), line, column});
            advance();
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, column);
        }
    }
    out.push_back({Token::Kind::end, "", line, column});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens)
        : tokens_(std::move(tokens))
    {
    }

    PvProgram program()
    {
        PvProgram prog;
        while (peek().kind != Token::Kind::end) {
            const Token& kw = expect_ident("'sem' or 'proc'");
            if (kw.text == "sem") {
                if (!prog.processes.empty())
                    fail("semaphore declarations must come before processes", kw);
                semaphore(prog);
            } else if (kw.text == "proc") {
                process(prog);
            } else {
                fail("expected 'sem' or 'proc', found '" + kw.text + "'", kw);
            }
        }
        if (prog.processes.empty())
            fail("program declares no processes", peek());
        return prog;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] static void fail(const std::string& what, const Token& at)
    {
        throw ParseError(what, at.line, at.column);
    }

    static std::string describe(const Token& t) { return t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'"; }

    const Token& expect_ident(const std::string& what)
    {
        const Token& t = next();
        if (t.kind != Token::Kind::ident)
            fail("expected " + what + ", found " + describe(t), t);
        return t;
    }

    const Token& expect(const char* punct)
    {
        const Token& t = next();
        if (t.kind != Token::Kind::punct || t.text != punct)
            fail(std::string("expected '") + punct + "', found " + describe(t), t);
        return t;
    }

    void semaphore(PvProgram& prog)
    {
        const Token& name = expect_ident("a semaphore name");
        for (const auto& s : prog.semaphores)
            if (s.name == name.text)
                fail("semaphore " + name.text + " is declared twice", name);
        const Token& cap = next();
        if (cap.kind != Token::Kind::number)
            fail("expected a capacity, found " + describe(cap), cap);
        if (cap.text.size() > 9 || std::stoi(cap.text) < 1)
            fail("capacity must be a positive integer below 10^9", cap);
        expect(";");
        prog.semaphores.push_back({name.text, std::stoi(cap.text)});
    }

    void process(PvProgram& prog)
    {
        const Token& name = expect_ident("a process name");
        for (const auto& p : prog.processes)
            if (p.name == name.text)
                fail("process " + name.text + " is declared twice", name);
        expect(":");
        PvProcess proc{name.text, {}};
        std::map<std::string, int> held;
        if (peek().kind == Token::Kind::punct && peek().text == ";")
            fail("process " + name.text + " has no actions", peek());
        while (true) {
            const Token& op = expect_ident("P or V");
            if (op.text != "P" && op.text != "V")
                fail("expected P or V, found '" + op.text + "'", op);
            expect("(");
            const Token& sem = expect_ident("a semaphore name");
            const auto decl = std::find_if(prog.semaphores.begin(), prog.semaphores.end(),
                                           [&](const PvSemaphore& s) { return s.name == sem.text; });
            if (decl == prog.semaphores.end())
                fail("unknown semaphore " + sem.text, sem);
            expect(")");
            if (op.text == "P") {
                if (++held[sem.text] > decl->capacity)
                    fail("process " + name.text + " alone holds " + sem.text + " beyond its capacity " +
                             std::to_string(decl->capacity),
                         op);
                proc.actions.push_back({PvAction::Kind::P, sem.text});
            } else {
                if (held[sem.text] == 0)
                    fail("V(" + sem.text + ") without a matching P(" + sem.text + ") in process " + name.text, op);
                --held[sem.text];
                proc.actions.push_back({PvAction::Kind::V, sem.text});
            }
            const Token& sep = next();
            if (sep.kind == Token::Kind::punct && sep.text == ".")
                continue;
            if (sep.kind == Token::Kind::punct && sep.text == ";")
                break;
            fail("expected '.' or ';', found " + describe(sep), sep);
        }
        prog.processes.push_back(std::move(proc));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

PvProgram parse_pv(std::string_view text) { return Parser(tokenize(text)).program(); }

// -- compilation -------------------------------------------------------------

std::vector<int> pv_holds(const PvProgram& program, std::size_t process, int c)
{
    const auto& actions = program.processes.at(process).actions;
    const int length = static_cast<int>(actions.size());
    if (c < 0 || c > 2 * length)
        throw std::out_of_range("grid coordinate out of range");
    const std::size_t m = program.semaphores.size();
    std::map<std::string, std::size_t> slot;
    for (std::size_t s = 0; s < m; ++s)
        slot[program.semaphores[s].name] = s;

    // after[k]: holds after the first k actions.
    std::vector<std::vector<int>> after{std::vector<int>(m, 0)};
    for (const auto& a : actions) {
        after.push_back(after.back());
        after.back()[slot.at(a.semaphore)] += a.kind == PvAction::Kind::P ? 1 : -1;
    }
    const int k = c / 2;
    if (c % 2)
        return after[k + 1];
    if (k == length)
        return std::vector<int>(m, 0);  // a finished process releases everything
    // Resting between actions, a process still owns what the next action keeps.
    const auto& later = after[std::min(k + 1, length)];
    std::vector<int> out(m);
    for (std::size_t s = 0; s < m; ++s)
        out[s] = std::min(after[k][s], later[s]);
    return out;
}

CompiledPv compile_pv(const PvProgram& program)
{
    const std::size_t procs = program.processes.size();
    if (procs == 0)
        throw PreconditionError("program has no processes");
    std::vector<int> span;  // coordinates per process: 0..2L
    for (const auto& p : program.processes)
        span.push_back(2 * static_cast<int>(p.actions.size()) + 1);

    std::vector<std::vector<std::vector<int>>> holds(procs);
    for (std::size_t j = 0; j < procs; ++j)
        for (int c = 0; c < span[j]; ++c)
            holds[j].push_back(pv_holds(program, j, c));

    // Every grid cell, in lexicographic order of coordinates.
    std::map<std::vector<int>, CellId> id;
    std::vector<std::vector<std::vector<int>>> cells(procs + 1);
    std::vector<int> coord(procs, 0);
    while (true) {
        const int dim = static_cast<int>(std::count_if(coord.begin(), coord.end(), [](int c) { return c % 2; }));
        id.emplace(coord, CellId{dim, cells[dim].size()});
        cells[dim].push_back(coord);
        int j = static_cast<int>(procs) - 1;
        while (j >= 0 && ++coord[j] == span[j])
            coord[j--] = 0;
        if (j < 0)
            break;
    }

    std::vector<std::size_t> counts;
    PrecubicalSet::FaceTable faces(procs);
    PrecubicalSet::Labels labels;
    std::vector<std::vector<bool>> keep(procs + 1);
    for (std::size_t d = 0; d <= procs; ++d) {
        counts.push_back(cells[d].size());
        for (std::size_t i = 0; i < cells[d].size(); ++i) {
            const auto& c = cells[d][i];
            std::string label = "(";
            bool legal = true;
            for (std::size_t s = 0; s < program.semaphores.size(); ++s) {
                int total = 0;
                for (std::size_t j = 0; j < procs; ++j)
                    total += holds[j][c[j]][s];
                legal = legal && total <= program.semaphores[s].capacity;
            }
            std::vector<std::size_t> f;
            for (std::size_t j = 0; j < procs; ++j) {
                label += (j ? "," : "") + std::to_string(c[j] / 2);
                if (c[j] % 2 == 0)
                    continue;
                label += "-" + std::to_string(c[j] / 2 + 1);
                for (int side : {0, 1}) {
                    auto g = c;
                    g[j] += side ? 1 : -1;
                    const CellId face = id.at(g);
                    f.push_back(face.index);
                    legal = legal && keep[d - 1][face.index];
                }
            }
            labels[{static_cast<int>(d), i}] = label + ")";
            keep[d].push_back(legal);
            if (d > 0)
                faces[d - 1].push_back(std::move(f));
        }
    }

    const PrecubicalSet grid(std::move(counts), faces, std::move(labels));
    CompiledPv out{subcomplex(grid, keep), 0, 0};
    require_valid(out.complex);
    out.top = out.complex.count(0) - 1;
    return out;
}

std::vector<std::size_t> deadlock_candidates(const CompiledPv& compiled)
{
    const auto& k = compiled.complex;
    std::vector<bool> moves(k.count(0), false);
    for (std::size_t e = 0; e < k.count(1); ++e)
        moves[k.face({1, e}, 1, 0).index] = true;
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < k.count(0); ++v)
        if (!moves[v] && v != compiled.top)
            out.push_back(v);
    return out;
}

}  // namespace cubepaths
