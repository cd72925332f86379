#include "cubepaths/nerve.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cubepaths {

// -- nerve -------------------------------------------------------------------

NerveComplex::NerveComplex(const ChainCategory& category, std::optional<int> max_dim)
{
    if (max_dim && *max_dim < 0)
        throw PreconditionError("nerve dimension must be >= 0");
    const auto& ms = category.morphisms();
    for (const auto& f : ms)
        ends_.emplace_back(f.source, f.target);
    for (std::size_t f = 0; f < ms.size(); ++f)
        for (auto g : category.outgoing(ms[f].target)) {
            auto gf = category.find_morphism(category.compose(ms[g], ms[f]));
            if (!gf)
                throw std::logic_error("chain category is not closed under composition");
            compose_.emplace(std::pair{g, f}, *gf);
        }

    simplices_.emplace_back();
    for (std::size_t x = 0; x < category.objects().size(); ++x)
        simplices_[0].push_back({x});
    // Paths strictly shorten chains, so this stops after at most n steps.
    while (true) {
        const bool at_objects = simplices_.size() == 1;
        std::vector<Simplex> next;
        for (const auto& s : simplices_.back()) {
            const std::size_t last = at_objects ? s[0] : ends_[s.back()].second;
            for (auto g : category.outgoing(last)) {
                next.push_back(at_objects ? Simplex{} : s);
                next.back().push_back(g);
            }
        }
        if (next.empty())
            break;
        if (max_dim && dimension() >= *max_dim) {
            truncated_ = true;
            break;
        }
        simplices_.push_back(std::move(next));
    }

    index_.resize(simplices_.size());
    for (std::size_t k = 0; k < simplices_.size(); ++k)
        for (std::size_t i = 0; i < simplices_[k].size(); ++i)
            index_[k].emplace(simplices_[k][i], i);
}

std::size_t NerveComplex::face(int k, std::size_t simplex, int i) const
{
    if (k < 1 || k > dimension() || i < 0 || i > k)
        throw std::out_of_range("nerve face out of range");
    const Simplex& s = simplices_[k][simplex];
    if (k == 1)
        return i == 0 ? ends_[s[0]].second : ends_[s[0]].first;
    Simplex f;
    if (i == 0) {
        f.assign(s.begin() + 1, s.end());
    } else if (i == k) {
        f.assign(s.begin(), s.end() - 1);
    } else {
        f.assign(s.begin(), s.begin() + (i - 1));
        f.push_back(compose_.at({s[i], s[i - 1]}));
        f.insert(f.end(), s.begin() + (i + 1), s.end());
    }
    return index_[k - 1].at(f);
}

// -- chain complex -----------------------------------------------------------

ChainComplexZ::ChainComplexZ(std::vector<std::size_t> ranks, std::vector<std::vector<Triplet>> boundaries)
    : ranks_(std::move(ranks))
    , boundaries_(std::move(boundaries))
{
    if (ranks_.empty() || boundaries_.size() != ranks_.size() - 1)
        throw std::invalid_argument("chain complex needs one boundary matrix per positive dimension");
}

const std::vector<Triplet>& ChainComplexZ::boundary(int k) const
{
    if (k < 1 || k > top())
        return empty_;
    return boundaries_[k - 1];
}

void ChainComplexZ::check_square_zero() const
{
    for (int k = 2; k <= top(); ++k) {
        std::vector<std::vector<std::pair<std::size_t, long>>> lower_cols(rank(k - 1));
        for (const auto& e : boundary(k - 1))
            lower_cols[e.col].emplace_back(e.row, e.value);
        std::map<std::pair<std::size_t, std::size_t>, long> product;
        for (const auto& e : boundary(k))
            for (const auto& [row, v] : lower_cols[e.row])
                product[{row, e.col}] += v * e.value;
        for (const auto& [pos, v] : product)
            if (v != 0)
                throw std::logic_error("boundary of boundary is nonzero in dimension " + std::to_string(k));
    }
}

ChainComplexZ chain_complex(const NerveComplex& nerve)
{
    std::vector<std::size_t> ranks;
    std::vector<std::vector<Triplet>> boundaries;
    for (int k = 0; k <= nerve.dimension(); ++k)
        ranks.push_back(nerve.count(k));
    for (int k = 1; k <= nerve.dimension(); ++k) {
        std::vector<Triplet> entries;
        for (std::size_t s = 0; s < nerve.count(k); ++s) {
            std::map<std::size_t, long> column;
            for (int i = 0; i <= k; ++i)
                column[nerve.face(k, s, i)] += i % 2 ? -1 : 1;
            for (const auto& [row, v] : column)
                if (v != 0)
                    entries.push_back({row, s, v});
        }
        boundaries.push_back(std::move(entries));
    }
    return ChainComplexZ(std::move(ranks), std::move(boundaries));
}

// -- elimination -------------------------------------------------------------

namespace {

template <class T>
struct SparseRows {
    std::vector<std::map<std::size_t, T>> rows;
    std::vector<std::set<std::size_t>> cols;  // rows with a nonzero in each column

    SparseRows(std::size_t r, std::size_t c, const std::vector<Triplet>& entries)
        : rows(r)
        , cols(c)
    {
        for (const auto& e : entries) {
            if (e.row >= r || e.col >= c)
                throw std::out_of_range("matrix entry out of range");
            rows[e.row][e.col] += T(e.value);
        }
        for (std::size_t i = 0; i < r; ++i) {
            std::erase_if(rows[i], [](const auto& kv) { return kv.second == 0; });
            for (const auto& kv : rows[i])
                cols[kv.first].insert(i);
        }
    }

    // Clears column c from every row in pending except pivot row r.
    void eliminate(std::size_t r, std::size_t c, const std::vector<bool>& pending)
    {
        const T pivot = rows[r].at(c);
        const std::vector<std::size_t> targets(cols[c].begin(), cols[c].end());
        for (auto r2 : targets) {
            if (r2 == r || !pending[r2])
                continue;
            const T factor = rows[r2].at(c) / pivot;
            for (const auto& [col, v] : rows[r]) {
                T& cell = rows[r2][col];
                cell -= factor * v;
                if (cell == 0) {
                    rows[r2].erase(col);
                    cols[col].erase(r2);
                } else {
                    cols[col].insert(r2);
                }
            }
        }
    }
};

// Gaussian elimination choosing pivots accepted by eligible; returns the
// pivot count and leaves the unpivoted rows marked in pending.
template <class T, class Eligible>
std::size_t eliminate_pivots(SparseRows<T>& m, std::vector<bool>& pending, Eligible eligible)
{
    std::size_t pivots = 0;
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t r = 0; r < m.rows.size(); ++r) {
            if (!pending[r])
                continue;
            auto it = std::find_if(m.rows[r].begin(), m.rows[r].end(), [&](const auto& kv) { return eligible(kv.second); });
            if (it == m.rows[r].end())
                continue;
            m.eliminate(r, it->first, pending);
            pending[r] = false;
            ++pivots;
            progress = true;
        }
    }
    return pivots;
}

std::vector<mpz_class> dense_smith(std::vector<std::vector<mpz_class>> a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<mpz_class> diagonal;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (!best || abs(a[i][j]) < abs(a[best->first][best->second])))
                    best = {i, j};
        if (!best)
            break;
        std::swap(a[t], a[best->first]);
        for (auto& row : a)
            std::swap(row[t], row[best->second]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0)
                    continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t j = t; j < cols; ++j)
                    a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[i], a[t]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0)
                    continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t i = t; i < rows; ++i)
                    a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (auto& row : a)
                        std::swap(row[j], row[t]);
                    clean = false;
                }
            }
        }
        diagonal.push_back(abs(a[t][t]));
    }
    // diag(a, b) is equivalent to diag(gcd, lcm); sweep until each divides the next.
    for (std::size_t i = 0; i < diagonal.size(); ++i)
        for (std::size_t j = i + 1; j < diagonal.size(); ++j) {
            mpz_class g = gcd(diagonal[i], diagonal[j]);
            mpz_class l = lcm(diagonal[i], diagonal[j]);
            diagonal[i] = g;
            diagonal[j] = l;
        }
    return diagonal;
}

template <class F>
void run_parallel(std::size_t tasks, unsigned jobs, F&& work)
{
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks)));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks; ++i)
            work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(tasks);
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < jobs; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < tasks;) {
                try {
                    work(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    pool.clear();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace

std::size_t rational_rank(std::size_t rows, std::size_t cols, const std::vector<Triplet>& entries)
{
    SparseRows<mpq_class> m(rows, cols, entries);
    std::vector<bool> pending(rows, true);
    return eliminate_pivots(m, pending, [](const mpq_class& v) { return v != 0; });
}

std::vector<mpz_class> smith_invariants(std::size_t rows, std::size_t cols, const std::vector<Triplet>& entries)
{
    SparseRows<mpz_class> m(rows, cols, entries);
    std::vector<bool> pending(rows, true);
    const std::size_t units = eliminate_pivots(m, pending, [](const mpz_class& v) { return abs(v) == 1; });

    // What is left touches no pivot column; finish it densely.
    std::vector<std::size_t> rest_rows, rest_cols;
    std::set<std::size_t> used;
    for (std::size_t r = 0; r < rows; ++r)
        if (pending[r] && !m.rows[r].empty()) {
            rest_rows.push_back(r);
            for (const auto& kv : m.rows[r])
                used.insert(kv.first);
        }
    rest_cols.assign(used.begin(), used.end());
    std::vector<std::vector<mpz_class>> dense(rest_rows.size(), std::vector<mpz_class>(rest_cols.size()));
    for (std::size_t i = 0; i < rest_rows.size(); ++i)
        for (const auto& [c, v] : m.rows[rest_rows[i]])
            dense[i][std::lower_bound(rest_cols.begin(), rest_cols.end(), c) - rest_cols.begin()] = v;

    std::vector<mpz_class> out(units, mpz_class(1));
    for (auto& d : dense_smith(std::move(dense)))
        out.push_back(std::move(d));
    std::stable_sort(out.begin(), out.end(), [](const mpz_class& a, const mpz_class& b) { return a < b; });
    return out;
}

Homology homology(const ChainComplexZ& complex, Coefficients coeff, bool complete, unsigned jobs)
{
    const int top = complex.top();
    const int last = complete ? top : top - 1;
    Homology h;
    if (last < 0)
        return h;

    // rank of ∂_k for k = 1..top, plus invariants in integer mode.
    std::vector<std::size_t> ranks(top + 2, 0);
    std::vector<std::vector<mpz_class>> invariants(top + 2);
    run_parallel(static_cast<std::size_t>(top), jobs, [&](std::size_t i) {
        const int k = static_cast<int>(i) + 1;
        if (coeff == Coefficients::rational) {
            ranks[k] = rational_rank(complex.rank(k - 1), complex.rank(k), complex.boundary(k));
        } else {
            invariants[k] = smith_invariants(complex.rank(k - 1), complex.rank(k), complex.boundary(k));
            ranks[k] = invariants[k].size();
        }
    });

    for (int k = 0; k <= last; ++k) {
        h.betti.push_back(complex.rank(k) - ranks[k] - ranks[k + 1]);
        h.euler_characteristic += (k % 2 ? -1 : 1) * static_cast<long>(h.betti.back());
        if (coeff == Coefficients::integer) {
            std::vector<mpz_class> torsion;
            for (const auto& d : invariants[k + 1])
                if (d > 1)
                    torsion.push_back(d);
            h.torsion.push_back(std::move(torsion));
        }
    }
    while (h.betti.size() > 1 && h.betti.back() == 0 && (h.torsion.empty() || h.torsion.back().empty())) {
        h.betti.pop_back();
        if (!h.torsion.empty())
            h.torsion.pop_back();
    }
    return h;
}

// -- report ------------------------------------------------------------------

std::vector<PathSpaceRow> path_space_report(const PrecubicalSet& k, std::size_t alpha, std::size_t beta,
                                            const PathSpaceOptions& options)
{
    if (options.min_n < 1 || options.max_n < options.min_n)
        throw PreconditionError("need 1 <= min_n <= max_n");
    const std::size_t count = static_cast<std::size_t>(options.max_n - options.min_n + 1);
    std::vector<std::optional<PathSpaceRow>> rows(count);
    const unsigned inner_jobs = count == 1 ? options.jobs : 1;

    run_parallel(count, options.jobs, [&](std::size_t i) {
        const int n = options.min_n + static_cast<int>(i);
        const ChainCategory cat = build_chain_category(k, alpha, beta, n);
        if (cat.objects().empty())
            return;
        std::optional<int> build_dim;
        if (options.max_dim)
            build_dim = *options.max_dim + 1;
        const NerveComplex nerve(cat, build_dim);
        const ChainComplexZ complex = chain_complex(nerve);
        complex.check_square_zero();
        const bool complete = !nerve.truncated();

        PathSpaceRow row{n, cat.objects().size(), cat.morphisms().size(), {}, cat.component_count(), {}};
        for (int d = 0; d <= nerve.dimension() && (!options.max_dim || d <= *options.max_dim); ++d)
            row.simplices.push_back(nerve.count(d));
        row.homology = homology(complex, options.coeff, complete, inner_jobs);
        rows[i] = std::move(row);
    });

    std::vector<PathSpaceRow> out;
    for (auto& r : rows)
        if (r)
            out.push_back(std::move(*r));
    return out;
}

namespace {

const char* coeff_name(Coefficients c) { return c == Coefficients::rational ? "rational" : "integer"; }

template <class T>
std::string join(const std::vector<T>& values, const char* sep = ",")
{
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out << (i ? sep : "") << values[i];
    return out.str();
}

std::string torsion_text(const std::vector<std::vector<mpz_class>>& torsion)
{
    std::vector<std::string> parts;
    for (std::size_t k = 0; k < torsion.size(); ++k)
        for (const auto& d : torsion[k])
            parts.push_back("H" + std::to_string(k) + ":Z/" + d.get_str());
    return parts.empty() ? "-" : join(parts, " ");
}

}  // namespace

std::string report_to_json(const std::vector<PathSpaceRow>& rows, std::size_t alpha, std::size_t beta,
                           Coefficients coeff)
{
    using nlohmann::ordered_json;
    ordered_json out{{"from", alpha}, {"to", beta}, {"coefficients", coeff_name(coeff)},
                     {"equivalence", "up to homotopy"}, {"rows", ordered_json::array()}};
    for (const auto& r : rows) {
        ordered_json row{{"n", r.n},
                         {"chains", r.objects},
                         {"morphisms", r.morphisms},
                         {"components", r.components},
                         {"simplices", r.simplices},
                         {"betti", r.homology.betti},
                         {"euler_characteristic", r.homology.euler_characteristic}};
        if (coeff == Coefficients::integer) {
            ordered_json torsion = ordered_json::array();
            for (const auto& t : r.homology.torsion) {
                ordered_json dim = ordered_json::array();
                for (const auto& d : t)
                    dim.push_back(d.get_str());
                torsion.push_back(dim);
            }
            row["torsion"] = torsion;
        }
        out["rows"].push_back(row);
    }
    return out.dump(2) + "\n";
}

std::string report_to_text(const std::vector<PathSpaceRow>& rows, std::size_t alpha, std::size_t beta,
                           Coefficients coeff)
{
    std::vector<std::string> header{"n", "chains", "morphisms", "components", "simplices", "betti"};
    if (coeff == Coefficients::integer)
        header.push_back("torsion");
    std::vector<std::vector<std::string>> table{header};
    for (const auto& r : rows) {
        std::vector<std::string> line{std::to_string(r.n), std::to_string(r.objects), std::to_string(r.morphisms),
                                      std::to_string(r.components), join(r.simplices), join(r.homology.betti)};
        if (coeff == Coefficients::integer)
            line.push_back(torsion_text(r.homology.torsion));
        table.push_back(std::move(line));
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& line : table)
        for (std::size_t c = 0; c < line.size(); ++c)
            width[c] = std::max(width[c], line[c].size());

    std::ostringstream out;
    out << "paths " << alpha << " -> " << beta << ", " << coeff_name(coeff)
        << " homology of the chain category nerve (up to homotopy)\n";
    for (const auto& line : table) {
        std::string text;
        for (std::size_t c = 0; c < line.size(); ++c) {
            std::string cell = line[c];
            const std::string pad(width[c] - cell.size(), ' ');
            text += (c ? "  " : "") + (c < 4 ? pad + cell : cell + pad);
        }
        while (!text.empty() && text.back() == ' ')
            text.pop_back();
        out << text << "\n";
    }
    if (rows.empty())
        out << "(no cube chains in range)\n";
    return out.str();
}

std::string complex_to_triplets(const ChainComplexZ& complex)
{
    std::ostringstream out;
    for (int k = 1; k <= complex.top(); ++k) {
        const auto& b = complex.boundary(k);
        out << "# d" << k << " " << complex.rank(k - 1) << " " << complex.rank(k) << " " << b.size() << "\n";
        for (const auto& e : b)
            out << e.row << " " << e.col << " " << e.value << "\n";
    }
    return out.str();
}

}  // namespace cubepaths
