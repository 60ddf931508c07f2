#include <random>

#include "doctest.h"
#include "example_data.hpp"
#include "toric/error.hpp"
#include "toric/k3.hpp"
#include "toric/monodromy.hpp"

using namespace toric;

namespace {

UPoly C(long c) { return UPoly{GaussRat(c)}; }

// Discriminant of a*y^3 + b*y^2 + c*y + d by the closed formula.
UPoly cubic_discriminant(const RootFamily& f) {
    const UPoly &d = f.coeffs[0], &c = f.coeffs[1], &b = f.coeffs[2], &a = f.coeffs[3];
    UPoly out = mul(mul(b, b), mul(c, c));
    out = sub(out, mul(C(4), mul(a, mul(c, mul(c, c)))));
    out = sub(out, mul(C(4), mul(mul(b, mul(b, b)), d)));
    out = sub(out, mul(C(27), mul(mul(a, a), mul(d, d))));
    out = add(out, mul(C(18), mul(mul(a, b), mul(c, d))));
    return out;
}

Perm pair_perm(const Perm& a, const Perm& b) {
    Perm p = a;
    for (int v : b) p.push_back(v + static_cast<int>(a.size()));
    return p;
}

MonodromyMatrix M(long a, long b, long c, long d) {
    return {{{GaussRat(a), GaussRat(b)}, {GaussRat(c), GaussRat(d)}}};
}

MonodromyMatrix scale(const GaussRat& s, const MonodromyMatrix& m) {
    MonodromyMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = s * m[i][j];
    return r;
}

MonodromyMatrix inverse_unimodular(const MonodromyMatrix& m) {
    return {{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}};
}

}  // namespace

TEST_CASE("gaussian rationals and matrices parse") {
    CHECK(parse_gauss("3/2-2i") == GaussRat(Rat(3, 2), -2));
    CHECK(parse_gauss("-i") == GaussRat(0, -1));
    CHECK(parse_gauss("0.25+0.5i") == GaussRat(Rat(1, 4), Rat(1, 2)));
    CHECK(parse_gauss("7") == GaussRat(7));
    CHECK(GaussRat(Rat(3, 2), -2).to_string() == "3/2-2*i");
    MonodromyMatrix m = parse_matrix("0,i;-i,0");
    CHECK(m == scale(GaussRat(0, 1), M(0, 1, -1, 0)));
    CHECK(to_string(M(1, 2, 0, 1)) == "[1 2; 0 1]");
    CHECK_THROWS_AS(parse_matrix("1,2,3"), Error);
}

TEST_CASE("square root family") {
    PrecisionGuard g(128);
    RootFamily f = parse_family("y^2 - x");
    auto sing = singular_parameters(f);
    REQUIRE(sing.size() == 1);
    CHECK(abs(sing[0].value) < Real(1e-30));
    GaussRat base(Rat(-1, 2), Rat(1, 3));
    TrackResult r0 = track_roots(f, loop_around(f, base, to_cx(GaussRat(0))));
    CHECK(cycle_notation(r0.perm) == "(1 2)");
    TrackResult r1 = track_roots(f, loop_around(f, base, to_cx(GaussRat(1))));
    CHECK(is_identity(r1.perm));
    CHECK(r0.max_residual < Real(1e-30));

    CHECK(singular_parameters(parse_family("y^3 - 1")).empty());
    CHECK_THROWS_AS(singular_parameters(parse_family("(y - x)^2")), Error);
    try {
        singular_parameters(parse_family("y^2 - 2*x*y + x^2"));
    } catch (const Error& e) {
        CHECK(std::string(e.what()) == "non-reduced family");
    }
    // leading coefficient zeros are singular values
    auto lead = singular_parameters(parse_family("(x - 2)*y^2 - 1"));
    bool found = false;
    for (const auto& s : lead)
        if (s.leading && abs(s.value - to_cx(GaussRat(2))) < Real(1e-30)) found = true;
    CHECK(found);
}

TEST_CASE("loop validation") {
    PrecisionGuard g(128);
    RootFamily f = parse_family("y^2 - x*(x - 1)");
    auto sing = singular_parameters(f);
    Loop bad{GaussRat(Rat(1, 2), 0), to_cx(GaussRat(0)), Real(1), false};
    CHECK_THROWS_AS(validate_loop(f, bad, sing), Error);
    Loop through{GaussRat(-1), to_cx(GaussRat(2)), Real("0.1"), false};
    CHECK_THROWS_AS(validate_loop(f, through, sing), Error);
    Loop ok = loop_around(f, GaussRat(0, 1), to_cx(GaussRat(1)));
    CHECK_NOTHROW(validate_loop(f, ok, sing));
}

TEST_CASE("discriminant of the fixed-point cubics") {
    for (const char* text : {examples::kCubicPlus, examples::kCubicMinus}) {
        RootFamily f = parse_family(text);
        CHECK(discriminant(f) == cubic_discriminant(f));
    }
    RootFamily f = parse_family(examples::kCubicPlus);
    // -x^22 (x^2 + 1)(864 x^2 + x + 864) / 8
    UPoly expected = mul(UPoly{GaussRat(Rat(-1, 8))}, mul(UPoly{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1},
                                                           mul(UPoly{1, 0, 1}, UPoly{864, 1, 864})));
    CHECK(discriminant(f) == expected);

    // The squares of the roots of 864 x^2 + x + 864 are the two exceptional base values at xi0 = 1.
    FibreLocus loc = singular_fibre_locus(ParamScalar(1));
    Rat k(864 * 864);
    CHECK(loc.alpha + loc.beta == ParamScalar(Rat(-(2 * k - 1)) / k));
    CHECK(loc.alpha * loc.beta == ParamScalar(1));
}

TEST_CASE("singular values of the fixed-point cubic") {
    PrecisionGuard g(128);
    auto sing = singular_parameters(parse_family(examples::kCubicPlus));
    REQUIRE(sing.size() == 5);
    int near_zero = 0, near_i = 0, other = 0;
    for (const auto& s : sing) {
        Real r = abs(s.value);
        if (r < Real(1e-30)) ++near_zero;
        else if (abs(Real(s.value.re)) < Real(1e-30) && abs(Real(abs(s.value.im) - 1)) < Real(1e-30)) ++near_i;
        else {
            ++other;
            CHECK(abs(Real(r - 1)) < Real(1e-30));
            CHECK(abs(Real(s.value.re + Real(1) / 1728)) < Real(1e-30));
        }
    }
    CHECK(near_zero == 1);
    CHECK(near_i == 2);
    CHECK(other == 2);
}

TEST_CASE("fixed-point cubic monodromy table") {
    GaussRat base(Rat(-1, 10));
    RootFamily plus = parse_family(examples::kCubicPlus);
    RootFamily minus = parse_family(examples::kCubicMinus);

    PrecisionGuard g(128);
    std::vector<SingularValue> extra;
    for (const auto& s : singular_parameters(plus))
        if (abs(s.value) > Real("0.5") && abs(Real(s.value.re)) > Real(1e-30)) extra.push_back(s);
    REQUIRE(extra.size() == 2);

    struct Row {
        Cx center;
        bool infinity;
        std::vector<int> plus, minus;
    };
    auto neg = [](const Cx& z) { return Cx{-z.re, -z.im}; };
    // The sign of alpha' (and beta') is the one at which the first cubic is singular.
    std::vector<Row> table = {
        {to_cx(GaussRat(0)), false, {3}, {3}},
        {to_cx(GaussRat(0, 1)), false, {2}, {2}},
        {to_cx(GaussRat(0, -1)), false, {2}, {2}},
        {extra[0].value, false, {2}, {}},
        {neg(extra[0].value), false, {}, {2}},
        {extra[1].value, false, {2}, {}},
        {neg(extra[1].value), false, {}, {2}},
        {Cx{}, true, {3}, {3}},
    };
    std::vector<Perm> gens;
    for (const auto& row : table) {
        Loop lp = row.infinity ? loop_around_infinity(plus, base) : loop_around(plus, base, row.center);
        Loop lm = row.infinity ? loop_around_infinity(minus, base) : loop_around(minus, base, row.center);
        TrackResult rp = track_roots(plus, lp), rm = track_roots(minus, lm);
        CHECK(cycle_type(rp.perm) == row.plus);
        CHECK(cycle_type(rm.perm) == row.minus);
        CHECK(rp.max_residual < Real(1e-20));
        CHECK(rm.max_residual < Real(1e-20));
        gens.push_back(pair_perm(rp.perm, rm.perm));

        TrackOptions fine;
        fine.precision = 256;
        fine.max_step = 1.0 / 64;
        CHECK(track_roots(plus, lp, fine).perm == rp.perm);
        CHECK(track_roots(minus, lm, fine).perm == rm.perm);
    }
    CHECK(generated_group_order(gens) == 36);

    for (const RootFamily* f : {&plus, &minus}) {
        auto all = monodromy_all(*f, base);
        CHECK(all.size() == 6);
        Perm total = identity_perm(3);
        for (const auto& l : all) total = compose(total, l.result.perm);
        CHECK(is_identity(total));
    }
}

TEST_CASE("loop product is trivial on random families") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> coef(-3, 3);
    int checked = 0;
    while (checked < 100) {
        int n = 2 + static_cast<int>(rng() % 2);
        std::vector<UPoly> co(n + 1);
        for (int k = 0; k < n; ++k) {
            int dx = static_cast<int>(rng() % (n == 2 ? 3 : 2));
            for (int j = 0; j <= dx; ++j) co[k].push_back(GaussRat(coef(rng)));
        }
        co[n] = {GaussRat(1)};
        RootFamily f = make_family(co);
        if (discriminant(f).empty()) continue;
        GaussRat base(Rat(coef(rng), 7) + Rat(1, 13), Rat(coef(rng), 5) + Rat(1, 11));
        TrackOptions opt;
        opt.precision = 64;
        std::vector<LoopMonodromy> all;
        try {
            all = monodromy_all(f, base, opt);
        } catch (const Error& e) {
            if (e.code() == "invalid_loop" || e.code() == "singular_base") continue;
            throw;
        }
        Perm total = identity_perm(n);
        for (const auto& l : all) {
            total = compose(total, l.result.perm);
            CHECK(l.result.max_residual < Real(1e-10));
        }
        CHECK(is_identity(total));
        ++checked;
    }
}

TEST_CASE("permutation helpers") {
    Perm c3{1, 2, 0}, t{1, 0, 2};
    CHECK(cycle_notation(c3) == "(1 2 3)");
    CHECK(cycle_notation(identity_perm(3)) == "id");
    CHECK(cycle_type(c3) == std::vector<int>{3});
    CHECK(compose(c3, t) == Perm{0, 2, 1});
    CHECK(generated_group_order({c3, t}) == 6);
    CHECK(generated_group_order({c3}) == 3);
}

TEST_CASE("monodromy powers and fibre types") {
    GaussRat i(0, 1);
    MonodromyMatrix a = scale(i, M(0, 1, -1, 0));
    MonodromyMatrix b = M(1, 1, 0, 1);
    MonodromyMatrix c = scale(i, M(0, 1, -1, -1));

    // sixth powers by repeated multiplication
    MonodromyMatrix a6 = a, c6 = c;
    for (int k = 1; k < 6; ++k) {
        a6 = mat_mul(a6, a);
        c6 = mat_mul(c6, c);
    }
    CHECK(power_monodromy(a, 6) == a6);
    CHECK(power_monodromy(c, 6) == c6);

    CHECK(power_monodromy(a, 6) == M(1, 0, 0, 1));
    CHECK(power_monodromy(b, 2) == M(1, 2, 0, 1));
    CHECK(power_monodromy(c, 6) == M(-1, 0, 0, -1));
    CHECK(classify_kodaira(power_monodromy(a, 6)).name() == "I0");
    CHECK(classify_kodaira(power_monodromy(b, 2)).name() == "I2");
    CHECK(classify_kodaira(power_monodromy(c, 6)).name() == "I0*");
    CHECK(power_monodromy(c, 0) == M(1, 0, 0, 1));
    CHECK_THROWS_AS(power_monodromy(b, -1), Error);

    CHECK(classify_kodaira(M(1, 1, -1, 0)).name() == "II");
    CHECK(classify_kodaira(M(0, -1, 1, 1)).name() == "II*");
    CHECK(classify_kodaira(M(0, 1, -1, 0)).name() == "III");
    CHECK(classify_kodaira(M(0, -1, 1, 0)).name() == "III*");
    CHECK(classify_kodaira(M(0, 1, -1, -1)).name() == "IV");
    CHECK(classify_kodaira(M(-1, -1, 1, 0)).name() == "IV*");
    CHECK(classify_kodaira(M(-1, -3, 0, -1)).name() == "I3*");
    CHECK_THROWS_AS(classify_kodaira(M(2, 1, 1, 1)), Error);
    CHECK_THROWS_AS(classify_kodaira(M(1, 0, 0, -1)), Error);
    CHECK_THROWS_AS(classify_kodaira(a), Error);
}

TEST_CASE("determinant is multiplicative under powers") {
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> d(-4, 4), den(1, 3);
    for (int trial = 0; trial < 100; ++trial) {
        MonodromyMatrix m;
        for (auto& row : m)
            for (auto& e : row) e = GaussRat(Rat(d(rng), den(rng)), Rat(d(rng), den(rng)));
        int k = trial % 7;
        GaussRat dk(1);
        for (int j = 0; j < k; ++j) dk = dk * det(m);
        CHECK(det(power_monodromy(m, k)) == dk);
    }
}

TEST_CASE("fibre type is invariant under conjugation") {
    std::mt19937 rng(13);
    std::vector<MonodromyMatrix> reps = {M(1, 0, 0, 1),   M(-1, 0, 0, -1), M(1, 1, -1, 0), M(0, -1, 1, 1),
                                        M(0, 1, -1, 0),   M(0, -1, 1, 0),  M(0, 1, -1, -1), M(-1, -1, 1, 0)};
    for (int n = 1; n <= 5; ++n) {
        reps.push_back(M(1, n, 0, 1));
        reps.push_back(M(-1, -n, 0, -1));
    }
    MonodromyMatrix S = M(0, -1, 1, 0), T = M(1, 1, 0, 1), Ti = M(1, -1, 0, 1);
    for (int trial = 0; trial < 130; ++trial) {
        const MonodromyMatrix& m = reps[trial % reps.size()];
        MonodromyMatrix p = M(1, 0, 0, 1);
        int len = 1 + static_cast<int>(rng() % 8);
        for (int k = 0; k < len; ++k) {
            int pick = static_cast<int>(rng() % 3);
            p = mat_mul(p, pick == 0 ? S : pick == 1 ? T : Ti);
        }
        MonodromyMatrix conj = mat_mul(mat_mul(p, m), inverse_unimodular(p));
        KodairaFibre a = classify_kodaira(m), b = classify_kodaira(conj);
        CHECK(a.name() == b.name());
    }
}
