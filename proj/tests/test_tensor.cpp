#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qbraid/report.hpp"
#include "qbraid/state.hpp"

using namespace qbraid;

TEST_CASE("state accumulation prunes exact zeros") {
    State<Scalar> s;
    s.add_scaled({1, 2}, Scalar::qpow(1));
    s.add_scaled({1, 2}, -Scalar::qpow(1));
    CHECK(s.empty());
    s.add_scaled({1, 2}, Scalar::qnum(2));
    s.add_scaled({2, 1}, Scalar::one());
    CHECK(s.amp.size() == 2);
    CHECK(s.print() == "(q + q^-1)|1,2> + (1)|2,1>");
}

TEST_CASE("pairing is bilinear and diagonal on kets") {
    State<Scalar> a({1, 2}, Scalar::one());
    State<Scalar> b({2, 1}, Scalar::one());
    CHECK(inner(a, b).is_zero());
    CHECK(inner(a, a) == Scalar::one());
    State<Scalar> c = a.scaled(Scalar::qpow(2)) + b.scaled(Scalar::qnum(2));
    CHECK(inner(c, c) == Scalar::qpow(4) + Scalar::qnum(2) * Scalar::qnum(2));
    // bilinear, not conjugated: scaling either argument scales the pairing
    CHECK(inner(c.scaled(Scalar::qpow(-1)), a) == Scalar::qpow(1));
}

TEST_CASE("subtraction and equality") {
    State<Scalar> a({1, 1, 2}, Scalar::qnum(3));
    State<Scalar> b({1, 1, 2}, Scalar::qpow(2) + Scalar::one() + Scalar::qpow(-2));
    CHECK(states_equal(a, b));
    CHECK((a - b).empty());
    b.add_scaled({2, 1, 1}, Scalar::one());
    CHECK(!states_equal(a, b));
}

TEST_CASE("float residuals") {
    State<double> a({1, 2}, 1.0);
    State<double> b({1, 2}, 1.0 + 1e-13);
    b.add_scaled({2, 1}, 2e-13);
    CHECK(state_resid(a, b) == doctest::Approx(2e-13).epsilon(1e-3));
    CHECK(state_resid(a, a) == 0.0);
}

TEST_CASE("context lifts exact constants to floats") {
    QCtx<double> ctx(0.7);
    CHECK(ctx.lift(Scalar::qnum(2)) == doctest::Approx(0.7 + 1 / 0.7));
    CHECK(ctx.d == doctest::Approx(0.7 - 1 / 0.7));
    QCtx<Scalar> ex;
    CHECK(ex.lift(Scalar::qnum(2)) == Scalar::qnum(2));
    CHECK(ex.d == Scalar::qpow(1) - Scalar::qpow(-1));
}

TEST_CASE("state JSON round trip") {
    State<Scalar> s;
    s.add_scaled({1, 3, 2}, Scalar::qnum(2).div_qnum(3));
    s.add_scaled({3, 1, 2}, -Scalar::sqrt2() * Scalar::spow(1));
    auto j = state_to_json(s);
    CHECK(j.size() == 2);
    CHECK(j[0]["ket"] == nlohmann::json({1, 3, 2}));
    State<Scalar> back = state_from_json(j);
    CHECK(states_equal(s, back));
    State<double> f({1, 2}, 0.25);
    auto jf = state_to_json(f);
    CHECK(jf[0]["coeff"] == 0.25);
}
