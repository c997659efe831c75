#include "qbraid/rmatrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "qbraid/hecke.hpp"
#include "qbraid/parallel.hpp"

namespace qbraid {

namespace {

constexpr int kMaxIssues = 64;

// per-column extraction against the orthonormal coupled basis; the residual
// after reconstruction must vanish, otherwise the block does not close
template <class C, class BasisFn>
BasicMatrix<C> compute_core(Shape s, int n, const QCtx<C>& ctx, BasisFn basis,
                            double float_tol) {
    if (n < shape_min_n(s))
        throw std::invalid_argument(std::string("compute_rmatrix: shape [") +
                                    shape_text(s) + "] needs n >= " +
                                    std::to_string(shape_min_n(s)));
    auto classes = content_classes(s, n);
    BasicMatrix<C> m;
    m.shape = s;
    m.n = n;
    m.blocks.resize(classes.size());
    BraidWord rw = r_word(shape_sites(s));
    std::vector<std::exception_ptr> errs(classes.size());
    std::vector<double> resid(classes.size(), 0.0);
    parallel_for((long)classes.size(), [&](long i) {
        try {
            BlockT<C>& blk = m.blocks[i];
            blk.content = classes[i];
            blk.kets = basis(classes[i]);
            for (int col = 0; col < (int)blk.kets.size(); ++col) {
                State<C> img = apply_word(rw, blk.kets[col].expansion, ctx);
                State<C> recon;
                for (int row = 0; row < (int)blk.kets.size(); ++row) {
                    C v = inner(blk.kets[row].expansion, img);
                    if (coeff_is_zero(v)) continue;
                    blk.entries[{row, col}] = v;
                    recon.add_scaled(blk.kets[row].expansion, v);
                }
                double r = 0.0;
                if constexpr (std::is_same_v<C, Scalar>) {
                    if (!states_equal(img, recon))
                        throw std::logic_error(
                            "coupled basis does not close under R at column " +
                            blk.kets[col].pair_text() + ", content " +
                            ket_str(blk.content));
                } else {
                    r = state_resid(img, recon);
                    if (r > float_tol)
                        throw std::logic_error(
                            "float coupled basis does not close under R at " +
                            blk.kets[col].pair_text() + ", residual " +
                            std::to_string(r));
                }
                resid[i] = std::max(resid[i], r);
            }
        } catch (...) {
            errs[i] = std::current_exception();
        }
    });
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    for (double r : resid) m.completeness_resid = std::max(m.completeness_resid, r);
    return m;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string golden_dir() {
    if (const char* env = std::getenv("RMATRIX_GOLDEN_PATH")) return env;
    return QBRAID_GOLDEN_DIR;
}

// float coefficient drop threshold mirrors the exact pipeline's is_zero
constexpr double kFloatZero = 1e-13;

}  // namespace

LabeledMatrix compute_rmatrix(Shape s, int n) {
    QCtx<Scalar> ctx;
    return compute_core<Scalar>(
        s, n, ctx, [&](const Ket& c) { return coupled_pair_basis(s, c, n); },
        0.0);
}

BasicMatrix<double> compute_rmatrix_float(Shape s, int n, double q) {
    QCtx<double> ctx(q);
    auto m = compute_core<double>(
        s, n, ctx,
        [&](const Ket& c) { return coupled_pair_basis_float(s, c, n, q); },
        1e-9);
    for (auto& blk : m.blocks)
        for (auto it = blk.entries.begin(); it != blk.entries.end();)
            it = std::abs(it->second) <= kFloatZero ? blk.entries.erase(it)
                                                    : std::next(it);
    return m;
}

nlohmann::json matrix_json(const LabeledMatrix& m) {
    nlohmann::json blocks = nlohmann::json::array();
    for (auto& blk : m.blocks) {
        nlohmann::json labels = nlohmann::json::array();
        for (auto& k : blk.kets) labels.push_back(k.pair_text());
        nlohmann::json entries = nlohmann::json::array();
        for (auto& [rc, v] : blk.entries)
            entries.push_back({rc.first, rc.second, v.print()});
        blocks.push_back({{"content", blk.content},
                          {"rows", labels},
                          {"cols", labels},
                          {"entries", entries}});
    }
    return {{"shape", shape_text(m.shape)}, {"n", m.n}, {"blocks", blocks}};
}

std::vector<GoldenRelation> load_golden(Shape s) {
    std::string path = golden_dir() + "/table_" + shape_text(s) + ".txt";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("reference table not found: " + path);
    std::vector<GoldenRelation> rels;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(t);
        std::string part;
        while (std::getline(ss, part, '|')) fields.push_back(trim(part));
        if (fields.size() != 4 || fields[0] != shape_text(s))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed record");
        Scalar v = Scalar::parse(fields[3]);
        if (rels.empty() || rels.back().col != fields[1])
            rels.push_back({fields[1], {}});
        rels.back().rows.push_back({fields[2], v});
    }
    if (rels.empty()) throw std::runtime_error("empty reference table: " + path);
    return rels;
}

GoldenReport golden_compare(Shape s, int n) {
    auto rels = load_golden(s);
    LabeledMatrix m = compute_rmatrix(s, n);

    // column pair label -> (block, col index)
    std::map<std::string, std::pair<int, int>> colpos;
    for (int b = 0; b < (int)m.blocks.size(); ++b)
        for (int c = 0; c < (int)m.blocks[b].kets.size(); ++c)
            colpos[m.blocks[b].kets[c].pair_text()] = {b, c};

    GoldenReport rep;
    rep.shape = s;
    rep.n = n;
    for (auto& rel : rels) {
        GoldenVerdict verdict;
        verdict.col = rel.col;

        std::set<char> lset;
        auto collect = [&](const std::string& lbl) {
            for (char ch : lbl)
                if (ch >= 'i' && ch <= 'l') lset.insert(ch);
        };
        collect(rel.col);
        for (auto& r : rel.rows) collect(r.row);
        std::vector<char> letters(lset.begin(), lset.end());
        int k = (int)letters.size();

        // every ascending assignment of the letters into 1..n must agree;
        // the first (1..k) is the canonical instantiation recorded as evidence
        std::vector<int> pick(k);
        std::iota(pick.begin(), pick.end(), 1);
        bool first = true;
        while (true) {
            auto inst = [&](const std::string& lbl) {
                std::string out;
                for (char ch : lbl) {
                    auto it = lset.find(ch);
                    if (it != lset.end()) {
                        int r = (int)std::distance(lset.begin(), it);
                        out += std::to_string(pick[r]);
                    } else {
                        out += ch;
                    }
                }
                return out;
            };
            std::string coli = inst(rel.col);
            auto found = colpos.find(coli);
            if (found == colpos.end()) {
                verdict.issues.push_back(
                    {coli, "", "missing", "column not in computed basis"});
            } else {
                auto& blk = m.blocks[found->second.first];
                int col = found->second.second;
                std::map<std::string, const Scalar*> computed;
                for (auto& [rc, v] : blk.entries)
                    if (rc.second == col)
                        computed[blk.kets[rc.first].pair_text()] = &v;
                std::map<std::string, const Scalar*> listed;
                for (auto& r : rel.rows) listed[inst(r.row)] = &r.value;
                for (auto& [row, want] : listed) {
                    auto it = computed.find(row);
                    if (it == computed.end()) {
                        if ((int)verdict.issues.size() < kMaxIssues)
                            verdict.issues.push_back({coli, row, "missing",
                                                      "listed " + want->print()});
                    } else if (!(*it->second == *want)) {
                        if ((int)verdict.issues.size() < kMaxIssues)
                            verdict.issues.push_back(
                                {coli, row, "value",
                                 "listed " + want->print() + "; computed " +
                                     it->second->print()});
                    }
                }
                for (auto& [row, got] : computed)
                    if (!listed.count(row) && (int)verdict.issues.size() < kMaxIssues)
                        verdict.issues.push_back(
                            {coli, row, "extra", "computed " + got->print()});
                if (first)
                    for (auto& [row, got] : computed)
                        verdict.computed.push_back(row + " = " + got->print());
            }
            first = false;
            // next ascending assignment
            int i = k - 1;
            while (i >= 0 && pick[i] == n - (k - 1 - i)) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
        verdict.exact = verdict.issues.empty();
        if (verdict.exact) ++rep.exact_count;
        rep.relations.push_back(std::move(verdict));
    }
    return rep;
}

namespace {

template <class C>
std::pair<Dense<C>, Dense<C>> ybe_sides(const BasicMatrix<C>& m) {
    Dense<C> M = dense_pair_matrix(m);
    long t = (long)tableaux(m.shape, m.n).size();
    Dense<C> r12 = dense_kron(M, 1, t);
    Dense<C> r23 = dense_kron(M, t, 1);
    return {dense_mul(dense_mul(r12, r23), r12),
            dense_mul(dense_mul(r23, r12), r23)};
}

}  // namespace

CheckReport ybe_check_exact(Shape s, int n) {
    CheckReport rep;
    rep.relation = "R12*R23*R12 == R23*R12*R23";
    rep.space = std::string("shape [") + shape_text(s) + "], n=" +
                std::to_string(n) + ", exact";
    auto [lhs, rhs] = ybe_sides(compute_rmatrix(s, n));
    rep.cases = lhs.dim * lhs.dim;
    for (long r = 0; r < lhs.dim; ++r)
        for (long c = 0; c < lhs.dim; ++c)
            if (!(lhs.at(r, c) == rhs.at(r, c)) &&
                (int)rep.failures.size() < kMaxIssues)
                rep.failures.push_back({"(" + std::to_string(r) + "," +
                                            std::to_string(c) + ")",
                                        lhs.at(r, c).print(),
                                        rhs.at(r, c).print()});
    return rep;
}

CheckReport ybe_check_float(Shape s, int n, double q, double tol) {
    CheckReport rep;
    rep.relation = "R12*R23*R12 == R23*R12*R23";
    rep.space = std::string("shape [") + shape_text(s) + "], n=" +
                std::to_string(n) + ", q=" + std::to_string(q);
    rep.tol = tol;
    auto [lhs, rhs] = ybe_sides(compute_rmatrix_float(s, n, q));
    rep.cases = lhs.dim * lhs.dim;
    for (long r = 0; r < lhs.dim; ++r)
        for (long c = 0; c < lhs.dim; ++c) {
            double d = std::abs(lhs.at(r, c) - rhs.at(r, c));
            rep.max_resid = std::max(rep.max_resid, d);
            if (d >= tol && (int)rep.failures.size() < kMaxIssues)
                rep.failures.push_back({"(" + std::to_string(r) + "," +
                                            std::to_string(c) + ")",
                                        std::to_string(lhs.at(r, c)),
                                        std::to_string(rhs.at(r, c))});
        }
    return rep;
}

namespace {

// exact exchange sweep for the 2-site couplings: the half swap moves the
// coupling operator between factors and commutes with both applied at once
std::vector<CheckReport> intertwiner2(Shape s, int n) {
    QCtx<Scalar> ctx;
    BraidWord rw = r_word(2);
    const char* opname = s == Shape::s2 ? "sym" : "asym";
    auto op = [&](int o, const State<Scalar>& v) {
        return coupling_op(s, tableaux(s, n)[0], o, v, ctx);
    };
    auto kets = all_kets(n, 4);
    struct Rel {
        std::string name;
        std::function<State<Scalar>(const State<Scalar>&)> lhs, rhs;
    };
    std::vector<Rel> rels = {
        {std::string("R*") + opname + "(1) == " + opname + "(3)*R",
         [&](const State<Scalar>& v) { return apply_word(rw, op(1, v), ctx); },
         [&](const State<Scalar>& v) { return op(3, apply_word(rw, v, ctx)); }},
        {std::string("R*") + opname + "(3) == " + opname + "(1)*R",
         [&](const State<Scalar>& v) { return apply_word(rw, op(3, v), ctx); },
         [&](const State<Scalar>& v) { return op(1, apply_word(rw, v, ctx)); }},
        {std::string("R*") + opname + "(1)*" + opname + "(3) == " + opname +
             "(1)*" + opname + "(3)*R",
         [&](const State<Scalar>& v) {
             return apply_word(rw, op(1, op(3, v)), ctx);
         },
         [&](const State<Scalar>& v) {
             return op(1, op(3, apply_word(rw, v, ctx)));
         }}};
    std::vector<CheckReport> out;
    for (auto& rel : rels) {
        CheckReport rep;
        rep.relation = rel.name;
        rep.space = "4 sites, n=" + std::to_string(n) + ", exact";
        rep.cases = (long)kets.size();
        std::vector<int> bad(kets.size(), 0);
        parallel_for((long)kets.size(), [&](long i) {
            State<Scalar> v(kets[i], Scalar::one());
            if (!states_equal(rel.lhs(v), rel.rhs(v))) bad[i] = 1;
        });
        for (size_t i = 0; i < kets.size(); ++i)
            if (bad[i] && (int)rep.failures.size() < kMaxIssues) {
                State<Scalar> v(kets[i], Scalar::one());
                rep.failures.push_back({ket_str(kets[i]), rel.lhs(v).print(),
                                        rel.rhs(v).print()});
            }
        out.push_back(std::move(rep));
    }
    return out;
}

// float exchange sweep for the 3-site couplings on 6 sites
std::vector<CheckReport> intertwiner3(int n, double q, double tol) {
    QCtx<double> ctx(q);
    BraidWord rw = r_word(3);
    auto kets = all_kets(n, 6);
    auto b = [&](int p, int o, const State<double>& v) {
        return b_op(p, o, v, ctx);
    };

    CheckReport single;
    single.relation = "R*b_p(1) == b_p(4)*R, both directions";
    single.space = "6 sites, n=" + std::to_string(n) + ", q=" + std::to_string(q);
    single.tol = tol;
    single.cases = (long)kets.size() * 8;
    std::vector<double> worst(kets.size(), 0.0);
    parallel_for((long)kets.size(), [&](long i) {
        State<double> v(kets[i], 1.0);
        State<double> rv = apply_word(rw, v, ctx);
        for (int p = 0; p < 4; ++p) {
            worst[i] = std::max(
                worst[i], state_resid(apply_word(rw, b(p, 1, v), ctx), b(p, 4, rv)));
            worst[i] = std::max(
                worst[i], state_resid(apply_word(rw, b(p, 4, v), ctx), b(p, 1, rv)));
        }
    });
    for (size_t i = 0; i < kets.size(); ++i) {
        single.max_resid = std::max(single.max_resid, worst[i]);
        if (worst[i] >= tol && (int)single.failures.size() < kMaxIssues)
            single.failures.push_back(
                {ket_str(kets[i]), std::to_string(worst[i]), "0"});
    }

    CheckReport pair;
    pair.relation = "R*b_p(1)*b_r(4) == b_p(4)*b_r(1)*R";
    pair.space = single.space;
    pair.tol = tol;
    pair.cases = (long)kets.size() * 16;
    std::fill(worst.begin(), worst.end(), 0.0);
    parallel_for((long)kets.size(), [&](long i) {
        State<double> v(kets[i], 1.0);
        State<double> rv = apply_word(rw, v, ctx);
        for (int p = 0; p < 4; ++p)
            for (int r = 0; r < 4; ++r)
                worst[i] = std::max(
                    worst[i], state_resid(apply_word(rw, b(p, 1, b(r, 4, v)), ctx),
                                          b(p, 4, b(r, 1, rv))));
    });
    for (size_t i = 0; i < kets.size(); ++i) {
        pair.max_resid = std::max(pair.max_resid, worst[i]);
        if (worst[i] >= tol && (int)pair.failures.size() < kMaxIssues)
            pair.failures.push_back(
                {ket_str(kets[i]), std::to_string(worst[i]), "0"});
    }
    return {std::move(single), std::move(pair)};
}

}  // namespace

std::vector<CheckReport> intertwiner_check(Shape s, int n,
                                           std::vector<double> qs) {
    switch (s) {
        case Shape::s2:
        case Shape::s11:
            return intertwiner2(s, n);
        case Shape::s21: {
            std::vector<CheckReport> out;
            for (double q : qs)
                for (auto& rep : intertwiner3(n, q, 1e-9))
                    out.push_back(std::move(rep));
            return out;
        }
        default:
            throw std::invalid_argument(
                "intertwiner_check: shape has no coupling operator");
    }
}

namespace {

std::string pattern_key(const BlockT<Scalar>& blk, int row, int col) {
    const TableauLabel* labs[4] = {&blk.kets[row].left, &blk.kets[row].right,
                                   &blk.kets[col].left, &blk.kets[col].right};
    std::vector<int> letters;
    for (auto* l : labs)
        for (auto& r : l->rows) letters.insert(letters.end(), r.begin(), r.end());
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    std::map<int, int> ren;
    for (int i = 0; i < (int)letters.size(); ++i) ren[letters[i]] = i + 1;
    std::string key;
    for (auto* l : labs) {
        TableauLabel t = *l;
        for (auto& r : t.rows)
            for (int& x : r) x = ren.at(x);
        key += t.text();
        key += "|";
    }
    return key;
}

}  // namespace

CheckReport n_independence_check(Shape s, int n1, int n2) {
    CheckReport rep;
    rep.relation = "entries constant per letter-order pattern";
    rep.space = std::string("shape [") + shape_text(s) + "], n=" +
                std::to_string(n1) + " vs n=" + std::to_string(n2);
    std::map<std::string, std::pair<Scalar, std::string>> seen;
    for (int n : {n1, n2}) {
        LabeledMatrix m = compute_rmatrix(s, n);
        for (auto& blk : m.blocks)
            for (auto& [rc, v] : blk.entries) {
                ++rep.cases;
                std::string key = pattern_key(blk, rc.first, rc.second);
                std::string where = "n=" + std::to_string(n) + " " +
                                    blk.kets[rc.first].pair_text() + " <- " +
                                    blk.kets[rc.second].pair_text();
                auto it = seen.find(key);
                if (it == seen.end()) {
                    seen.emplace(key, std::make_pair(v, where));
                } else if (!(it->second.first == v) &&
                           (int)rep.failures.size() < kMaxIssues) {
                    rep.failures.push_back(
                        {key + " at " + it->second.second + " vs " + where,
                         it->second.first.print(), v.print()});
                }
            }
    }
    return rep;
}

}  // namespace qbraid
