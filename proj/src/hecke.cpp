#include "qbraid/hecke.hpp"

#include <functional>
#include <random>

#include "qbraid/parallel.hpp"

namespace qbraid {

std::vector<Ket> all_kets(int n, int sites) {
    std::vector<Ket> out;
    Ket k(sites, 1);
    while (true) {
        out.push_back(k);
        int p = sites - 1;
        while (p >= 0 && k[p] == n) k[p--] = 1;
        if (p < 0) break;
        ++k[p];
    }
    return out;
}

namespace {

constexpr int kMaxRecordedFailures = 32;

// run lhs/rhs over every ket in parallel and collect mismatches
template <class C, class F1, class F2>
void sweep(CheckReport& rep, const std::vector<Ket>& kets, F1&& lhs, F2&& rhs,
           const QCtx<C>& ctx) {
    size_t base = rep.failures.size();
    std::vector<CheckReport::Failure> fails(kets.size());
    std::vector<char> bad(kets.size(), 0);
    std::vector<double> resid(kets.size(), 0.0);
    parallel_for((long)kets.size(), [&](long i) {
        State<C> s(kets[i], ctx.one);
        State<C> a = lhs(s), b = rhs(s);
        if constexpr (std::is_same_v<C, Scalar>) {
            if (!states_equal(a, b)) {
                bad[i] = 1;
                fails[i] = {ket_str(kets[i]), a.print(), b.print()};
            }
        } else {
            double r = state_resid(a, b);
            resid[i] = r;
            if (rep.tol > 0 && r >= rep.tol) {
                bad[i] = 1;
                fails[i] = {ket_str(kets[i]), a.print(), b.print()};
            }
        }
    });
    for (size_t i = 0; i < kets.size(); ++i) {
        ++rep.cases;
        rep.max_resid = std::max(rep.max_resid, resid[i]);
        if (bad[i] && rep.failures.size() < base + kMaxRecordedFailures)
            rep.failures.push_back(std::move(fails[i]));
    }
}

template <class C>
CheckReport hecke_relations(int n, int sites, const QCtx<C>& ctx, double tol) {
    CheckReport rep;
    rep.relation = "generator-relations";
    rep.space = "n=" + std::to_string(n) + " sites=" + std::to_string(sites);
    rep.tol = tol;
    auto kets = all_kets(n, sites);
    using S = State<C>;
    for (int i = 1; i < sites; ++i) {
        // g_i^2 = (q - 1/q) g_i + 1
        sweep(
            rep, kets,
            [&](const S& s) { return apply_g(i, apply_g(i, s, ctx), ctx); },
            [&](const S& s) {
                S out = apply_g(i, s, ctx).scaled(ctx.d);
                out.add_scaled(s, ctx.one);
                return out;
            },
            ctx);
        // g_i g_i^{-1} = g_i^{-1} g_i = 1
        sweep(
            rep, kets,
            [&](const S& s) { return apply_g_inv(i, apply_g(i, s, ctx), ctx); },
            [&](const S& s) { return s; }, ctx);
        sweep(
            rep, kets,
            [&](const S& s) { return apply_g(i, apply_g_inv(i, s, ctx), ctx); },
            [&](const S& s) { return s; }, ctx);
    }
    for (int i = 1; i + 1 < sites; ++i) {
        // g_i g_{i+1} g_i = g_{i+1} g_i g_{i+1}
        sweep(
            rep, kets,
            [&](const S& s) {
                return apply_g(i, apply_g(i + 1, apply_g(i, s, ctx), ctx), ctx);
            },
            [&](const S& s) {
                return apply_g(i + 1, apply_g(i, apply_g(i + 1, s, ctx), ctx), ctx);
            },
            ctx);
    }
    for (int i = 1; i < sites; ++i)
        for (int j = i + 2; j < sites; ++j) {
            sweep(
                rep, kets,
                [&](const S& s) { return apply_g(i, apply_g(j, s, ctx), ctx); },
                [&](const S& s) { return apply_g(j, apply_g(i, s, ctx), ctx); },
                ctx);
        }
    return rep;
}

struct WTerm {
    BraidWord w;
    int dpow;  // power of (q - 1/q)
};

// R = r_word(2): R^2 in terms of shorter words
std::vector<WTerm> quad22_terms() {
    BraidWord R = r_word(2);
    std::vector<WTerm> t;
    t.push_back({concat(make_word({1, 3}), R), 2});
    t.push_back({R, 2});
    t.push_back({make_word({3, 1, 2, 1, 3}), 1});
    t.push_back({make_word({2, 1, 2}), 1});
    t.push_back({make_word({2, 3, 2}), 1});
    t.push_back({make_word({2}), 1});
    t.push_back({{}, 0});
    return t;
}

// R = r_word(3): R^2 in terms of shorter words
std::vector<WTerm> quad41_terms() {
    BraidWord R = r_word(3);
    std::vector<WTerm> t;
    t.push_back({concat(R, make_word({1, 2, 5, 4, 3})), 2});
    t.push_back({R, 3});
    t.push_back({concat(R, make_word({1, 2, 1, 5, 4, 5, 3})), 2});
    t.push_back({concat(make_word({2}), concat(R, make_word({2}))), 3});
    t.push_back({concat(make_word({5}), concat(R, make_word({4, 5, 1}))), 3});
    t.push_back({concat(R, make_word({1, 4})), 3});
    for (auto w : {make_word({2, 3, 4, 5, 4, 1, 2, 1, 3, 2}),
                   make_word({2, 3, 4, 5, 4, 3, 2, 4, 3, 4}),
                   make_word({2, 3, 4, 5, 4, 3, 2, 3}),
                   make_word({3, 1, 2, 1, 3, 4, 5, 4, 3, 2, 3, 1}),
                   make_word({3, 4, 5, 4, 1, 3, 2, 3, 4, 3, 5, 1}),
                   make_word({3, 4, 3, 5, 1, 2, 1, 4, 3, 4}),
                   make_word({3, 4, 1, 2, 3, 1, 2, 4, 3, 1}),
                   make_word({3, 4, 2, 1, 5, 2, 4, 3}),
                   make_word({3, 4, 2, 3, 5, 2, 4, 3}),
                   make_word({3, 4, 2, 5, 4, 3}),
                   make_word({3, 4, 2, 3, 1, 2, 4, 3}),
                   make_word({3, 2, 4, 3}),
                   make_word({5, 3, 4, 1, 2, 3, 4, 5, 2, 1}),
                   make_word({4, 3, 2, 4, 3, 4})})
        t.push_back({w, 2});
    for (auto w : {make_word({2, 3, 4, 5, 4, 3, 2}),
                   make_word({3, 4, 1, 2, 3, 2, 4, 3, 1}),
                   make_word({3, 4, 5, 4, 3}),
                   make_word({3, 4, 1, 2, 1, 4, 3}),
                   make_word({3, 4, 3}),
                   make_word({3}),
                   make_word({3, 2, 3}),
                   make_word({5, 4, 1, 2, 3, 4, 5, 2, 1}),
                   make_word({2, 3, 4, 3, 2})})
        t.push_back({w, 1});
    t.push_back({{}, 0});
    return t;
}

template <class C>
CheckReport quad_check(int n, const BraidWord& R, const std::vector<WTerm>& terms,
                       const char* relation, const QCtx<C>& ctx, double tol) {
    CheckReport rep;
    rep.relation = relation;
    int sites = 0;
    for (auto& g : R) sites = std::max(sites, g.index + 1);
    rep.space = "n=" + std::to_string(n) + " sites=" + std::to_string(sites);
    rep.tol = tol;
    std::vector<C> dp{ctx.one, ctx.d, ctx.d * ctx.d, ctx.d * ctx.d * ctx.d};
    auto kets = all_kets(n, sites);
    sweep(
        rep, kets,
        [&](const State<C>& s) { return apply_word(R, apply_word(R, s, ctx), ctx); },
        [&](const State<C>& s) {
            State<C> out;
            for (auto& t : terms) out.add_scaled(apply_word(t.w, s, ctx), dp[t.dpow]);
            return out;
        },
        ctx);
    return rep;
}

}  // namespace

CheckReport verify_hecke(int n, int sites) {
    return hecke_relations(n, sites, QCtx<Scalar>{}, 0.0);
}

CheckReport verify_random_braids(int n, int sites, int count, unsigned seed) {
    CheckReport rep;
    rep.relation = "word-inverse";
    rep.space = "n=" + std::to_string(n) + " sites=" + std::to_string(sites);
    QCtx<Scalar> ctx;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> len(1, 8), gen(1, sites - 1), flip(0, 1),
        letter(1, n);
    for (int c = 0; c < count; ++c) {
        BraidWord w;
        int L = len(rng);
        for (int t = 0; t < L; ++t) w.push_back({gen(rng), flip(rng) == 1});
        Ket k(sites);
        for (auto& x : k) x = letter(rng);
        State<Scalar> s(k, ctx.one);
        State<Scalar> back = apply_word(w, apply_word(inverse_word(w), s, ctx), ctx);
        ++rep.cases;
        if (!states_equal(back, s) &&
            rep.failures.size() < (size_t)kMaxRecordedFailures)
            rep.failures.push_back({ket_str(k), back.print(), s.print()});
    }
    return rep;
}

CheckReport verify_quadratic22(int n) {
    return quad_check(n, r_word(2), quad22_terms(), "halfswap2-quadratic",
                      QCtx<Scalar>{}, 0.0);
}

CheckReport verify_quadratic22_float(int n, double q) {
    return quad_check(n, r_word(2), quad22_terms(), "halfswap2-quadratic",
                      QCtx<double>{q}, 1e-10);
}

CheckReport verify_quadratic41_float(int n, double q) {
    return quad_check(n, r_word(3), quad41_terms(), "halfswap3-quadratic",
                      QCtx<double>{q}, 1e-9);
}

CheckReport verify_quadratic41(int n) {
    return quad_check(n, r_word(3), quad41_terms(), "halfswap3-quadratic",
                      QCtx<Scalar>{}, 0.0);
}

}  // namespace qbraid
