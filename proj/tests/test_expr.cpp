#include <doctest.h>

#include <cmath>

#include "curv4/expr.hpp"
#include "oracles.hpp"

using namespace curv4;

namespace {
const ParamMap kNoParams;
}

TEST_CASE("parser evaluates simple expressions") {
    CHECK(eval_value(parse("x0 + 2*x1"), {1, 2, 0, 0}, kNoParams) == doctest::Approx(5.0));
    CHECK(eval_value(parse("sin(pi/2)"), {0, 0, 0, 0}, kNoParams) == doctest::Approx(1.0));
    CHECK(eval_value(parse("pi"), {0, 0, 0, 0}, kNoParams) == doctest::Approx(M_PI));

    const Jet2 j =
        eval_jet2(parse("4/(1 + x0^2 + x1^2 + x2^2 + x3^2)^2"), {0, 0, 0, 0}, kNoParams);
    CHECK(j.v == doctest::Approx(4.0));
    for (int i = 0; i < 4; ++i) CHECK(j.g[i] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("parser respects precedence and associativity") {
    // ^ binds above unary minus and is right-associative.
    CHECK(eval_value(parse("-x0^2"), {3, 0, 0, 0}, kNoParams) == doctest::Approx(-9.0));
    CHECK(eval_value(parse("2^3^2"), {0, 0, 0, 0}, kNoParams) == doctest::Approx(512.0));
    CHECK(eval_value(parse("2^-1"), {0, 0, 0, 0}, kNoParams) == doctest::Approx(0.5));
    CHECK(eval_value(parse("6/2/3"), {0, 0, 0, 0}, kNoParams) == doctest::Approx(1.0));
    CHECK(eval_value(parse("1 - 2 - 3"), {0, 0, 0, 0}, kNoParams) == doctest::Approx(-4.0));
    CHECK(eval_value(parse("2*3 + 4*5"), {0, 0, 0, 0}, kNoParams) == doctest::Approx(26.0));
}

TEST_CASE("parse errors carry byte offsets") {
    CHECK_THROWS_AS(parse("1 + "), parse_error);
    CHECK_THROWS_AS(parse("(x0 + 1"), parse_error);
    CHECK_THROWS_AS(parse("x0 @ x1"), parse_error);
    CHECK_THROWS_AS(parse("sin()"), parse_error);
    CHECK_THROWS_AS(parse("sin(x0, x1)"), parse_error);
    CHECK_THROWS_AS(parse("foo(x0)"), parse_error);
    try {
        parse("x0 + $");
    } catch (const parse_error& e) {
        CHECK(e.offset == 5);
    }

    ParseOptions po;
    po.param_whitelist = std::vector<std::string>{"r"};
    CHECK_NOTHROW(parse("r*x0", po));
    CHECK_THROWS_AS(parse("q*x0", po), parse_error);
}

TEST_CASE("evaluation reports domain violations instead of non-finite values") {
    CHECK_THROWS_AS(eval_value(parse("log(x0)"), {-1, 0, 0, 0}, kNoParams), domain_error);
    CHECK_THROWS_AS(eval_value(parse("log(x0)"), {0, 0, 0, 0}, kNoParams), domain_error);
    CHECK_THROWS_AS(eval_value(parse("sqrt(x0)"), {-2, 0, 0, 0}, kNoParams), domain_error);
    CHECK_THROWS_AS(eval_value(parse("1/x0"), {0, 0, 0, 0}, kNoParams), domain_error);
    CHECK_THROWS_AS(eval_value(parse("x0^-1"), {0, 0, 0, 0}, kNoParams), domain_error);
    CHECK_THROWS_AS(eval_value(parse("x0^0.5"), {-1, 0, 0, 0}, kNoParams), domain_error);
    CHECK_THROWS_AS(eval_jet2(parse("sqrt(x0)"), {0, 0, 0, 0}, kNoParams), domain_error);
    CHECK_THROWS_AS(eval_value(parse("missing + 1"), {0, 0, 0, 0}, kNoParams), input_error);
}

TEST_CASE("second-order jets match hand derivatives") {
    const Jet2 sq = eval_jet2(parse("x0^2"), {3, 0, 0, 0}, kNoParams);
    CHECK(sq.v == doctest::Approx(9.0));
    CHECK(sq.g[0] == doctest::Approx(6.0));
    CHECK(sq.hess(0, 0) == doctest::Approx(2.0));

    const Jet2 ex = eval_jet2(parse("exp(x1)"), {0, 0, 0, 0}, kNoParams);
    CHECK(ex.v == doctest::Approx(1.0));
    CHECK(ex.g[1] == doctest::Approx(1.0));
    CHECK(ex.hess(1, 1) == doctest::Approx(1.0));

    // Integer powers are exact.
    CHECK(eval_value(parse("x0^3"), {2, 0, 0, 0}, kNoParams) == 8.0);
    CHECK(eval_value(parse("x0^-2"), {2, 0, 0, 0}, kNoParams) == 0.25);
    CHECK(eval_value(parse("x0^0"), {5, 0, 0, 0}, kNoParams) == 1.0);
}

TEST_CASE("jets match the plain central-difference oracle at h = 1e-5") {
    const ExprPtr e = parse("sin(x0)*cos(x1)");
    const Point4 p{0.3, 0.7, 0, 0};
    const Jet2 j = eval_jet2(e, p, kNoParams);
    auto f = [&](const Point4& q) { return eval_value(e, q, kNoParams); };
    const double h = 1e-5;
    for (int i = 0; i < 4; ++i) {
        Point4 a = p, b = p;
        a[i] += h;
        b[i] -= h;
        const double fd = (f(a) - f(b)) / (2.0 * h);
        CHECK(std::abs(j.g[i] - fd) <= 1e-7 * (1.0 + std::abs(j.g[i])));
    }
    for (int i = 0; i < 4; ++i)
        for (int k = i; k < 4; ++k) {
            const double fd = curv4::testing::fd_second(f, p, i, k, 1e-3).value;
            CHECK(std::abs(j.hess(i, k) - fd) <= 1e-7 * (1.0 + std::abs(j.hess(i, k))));
        }
}

TEST_CASE("jet algebra is exact on sums and products of expression jets") {
    curv4::testing::RandomExpr gen(7);
    for (int n = 0; n < 50; ++n) {
        const Point4 p = gen.probe();
        const ExprPtr a = gen.safe(4, {p});
        const ExprPtr b = gen.safe(4, {p});
        const Jet2 ja = eval_jet2(a, p, kNoParams);
        const Jet2 jb = eval_jet2(b, p, kNoParams);

        const Jet2 sum = eval_jet2(Expr::make_binary(ExprKind::Add, a, b), p, kNoParams);
        const Jet2 prod = eval_jet2(Expr::make_binary(ExprKind::Mul, a, b), p, kNoParams);
        const Jet2 ja_jb = ja + jb;
        const Jet2 ja_times_jb = ja * jb;
        CHECK(sum.v == ja_jb.v);
        CHECK(prod.v == ja_times_jb.v);
        for (int i = 0; i < 4; ++i) {
            CHECK(sum.g[i] == ja_jb.g[i]);
            CHECK(prod.g[i] == ja_times_jb.g[i]);
        }
        for (int k = 0; k < 10; ++k) {
            CHECK(sum.h[k] == ja_jb.h[k]);
            CHECK(prod.h[k] == ja_times_jb.h[k]);
        }
    }
}

TEST_CASE("parse / unparse / reparse yields structurally identical trees") {
    curv4::testing::RandomExpr gen(11);
    for (int n = 0; n < 500; ++n) {
        const ExprPtr e = gen.gen(5);
        const std::string s = to_string(e);
        ExprPtr r;
        CAPTURE(s);
        REQUIRE_NOTHROW(r = parse(s));
        CHECK(expr_equal(e, r));
    }
}

TEST_CASE("1000 random expressions: jets match Richardson central differences") {
    // A sample counts only when every stencil self-reports convergence, so
    // ill-conditioned differencing (poles inside the stencil) can't inject
    // noise; a genuine jet bug would disagree on converged samples too.
    curv4::testing::RandomExpr gen(42);
    int checked = 0;
    long long converged_entries = 0;
    while (checked < 1000) {
        const Point4 p = gen.probe();
        const ExprPtr e = gen.safe(6, {p});
        const Jet2 j = eval_jet2(e, p, kNoParams);
        auto f = [&](const Point4& q) { return eval_value(e, q, kNoParams); };

        std::vector<std::pair<double, double>> pairs;  // (jet, fd)
        bool usable = true;
        try {
            for (int i = 0; i < 4 && usable; ++i) {
                const auto fd = curv4::testing::fd_partial(f, p, i, 1e-2);
                if (!fd.converged()) usable = false;
                pairs.emplace_back(j.g[i], fd.value);
            }
            for (int i = 0; i < 4 && usable; ++i)
                for (int k = i; k < 4 && usable; ++k) {
                    const auto fd = curv4::testing::fd_second(f, p, i, k, 1e-2);
                    if (!fd.converged()) usable = false;
                    pairs.emplace_back(j.hess(i, k), fd.value);
                }
        } catch (const error&) {
            usable = false;  // stencil left the expression's domain
        }
        if (!usable) continue;
        for (const auto& [jet, fd] : pairs) {
            CHECK(std::abs(jet - fd) <= 1e-6 * (1.0 + std::abs(jet)));
            ++converged_entries;
        }
        ++checked;
    }
    CHECK(converged_entries >= 14000);
}
