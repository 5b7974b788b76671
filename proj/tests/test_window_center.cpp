// Graded-center solver on dual-numbers homotopy-category windows: dimension
// tables over several fields, the canonical eta/zeta families and their exact
// multiplication table, evaluation and nilpotency of the degree-0 ideal,
// restriction compatibility between windows of different size, presentation
// matching, and extension along the truncation tower of the resolution of the
// simple module.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gcenter/matrix.hpp"
#include "gcenter/window.hpp"

using namespace gcenter;

namespace {

// eta_r: multiplication by x on the diagonal-r representative (x placed in
// the bottom degree of A_0^r), zero at every other object.
CenterElement canonical_eta(const KbprojWindow& w, int r) {
    CenterElement e = zero_center_element(w, 0, true);
    ChainMap xr = generator_morphism(w.algebra(), 'a', 0, r, 0, r);
    e.comps[static_cast<size_t>(r)] = w.hom(r, r, 0).coords(xr);
    return e;
}

// zeta_t: at each representative A_0^r with r >= t, the chain map into
// shift(A_0^r, t) whose component in degree i (i = t..r) is the sign
// (-1)^{t i + t(t-1)/2}.  The chain-map condition forces consecutive
// components to differ by (-1)^t; this particular normalization is the unique
// one (up to a global scalar per degree) with zeta_t zeta_t' = zeta_{t+t'}
// on the nose.  zeta_0 is the identity element.
CenterElement canonical_zeta(const KbprojWindow& w, int t, bool with_sign) {
    const SerialAlgebra& alg = w.algebra();
    const Field& F = alg.field();
    CenterElement e = zero_center_element(w, t, with_sign);
    for (int r = t; r < w.object_count(); ++r) {
        const Complex& x = w.object(r);
        ChainMap f = zero_map(alg, x, shift(alg, x, t));
        for (int i = t; i <= r; ++i) {
            long long sgn = ((t * i + t * (t - 1) / 2) % 2 == 0) ? 1 : -1;
            f.comps[static_cast<size_t>(i - f.lo)].at(0, 0) = alg.scalar(F.from_int(sgn));
        }
        e.comps[static_cast<size_t>(r)] = w.hom(r, r, t).coords(f);
    }
    return e;
}

std::vector<int> dim_table(const KbprojWindow& w, int lo, int hi, bool with_sign) {
    std::vector<int> dims;
    for (int t = lo; t <= hi; ++t) dims.push_back(solve_center(w, t, with_sign).dim());
    return dims;
}

// Rank of a stacked coordinate matrix, used to compare spans of families.
int family_rank(const Field& F, const std::vector<CenterElement>& fam) {
    if (fam.empty()) return 0;
    ExactMatrix m(F, static_cast<int>(fam.size()),
                  static_cast<int>(concat_coords(fam[0]).size()));
    for (size_t i = 0; i < fam.size(); ++i) {
        auto v = concat_coords(fam[i]);
        for (size_t j = 0; j < v.size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = v[j];
    }
    return rref(m).rank;
}

} // namespace

TEST_CASE("dimension tables over F_101: signed 10,0,1,0,1 and unsigned 10,1,1,1,1") {
    Field F = Field::fp(101);
    KbprojWindow w(F, 8, -2, 4);
    CHECK(w.object_count() == 9);
    CHECK(dim_table(w, -2, 4, true) == std::vector<int>{0, 0, 10, 0, 1, 0, 1});
    CHECK(dim_table(w, -2, 4, false) == std::vector<int>{0, 0, 10, 1, 1, 1, 1});
}

TEST_CASE("dimension tables depend on the characteristic exactly through the sign rule") {
    // char 2: the sign rule is vacuous, so the signed solve sees the full
    // zeta family in every positive degree.
    Field F2 = Field::fp(2);
    KbprojWindow w2(F2, 8, -2, 4);
    CHECK(dim_table(w2, -2, 4, true) == std::vector<int>{0, 0, 10, 1, 1, 1, 1});

    // Any odd characteristic behaves like F_101.
    Field F3 = Field::fp(3);
    KbprojWindow w3(F3, 8, 0, 4);
    CHECK(dim_table(w3, 0, 4, true) == std::vector<int>{10, 0, 1, 0, 1});

    // Exact rationals on a smaller window (degree-0 dim is 1 + (N+1)).
    Field Q = Field::rationals();
    KbprojWindow wq(Q, 4, 0, 2);
    CHECK(dim_table(wq, 0, 2, true) == std::vector<int>{6, 0, 1});
}

TEST_CASE("signed solutions embed in unsigned solutions (fewer equations)") {
    Field F = Field::fp(2);
    KbprojWindow w(F, 6, 0, 3);
    for (int t = 0; t <= 3; ++t) {
        CenterBasis s = solve_center(w, t, true);
        CenterBasis u = solve_center(w, t, false);
        REQUIRE(s.dim() == u.dim()); // char 2: the two spaces coincide
        for (const auto& e : s.elements) {
            CenterElement cast = e;
            cast.with_sign = false;
            CHECK(coords_of(u, cast).has_value());
        }
    }
}

TEST_CASE("negative degrees solve to zero on every window size") {
    Field F = Field::fp(101);
    for (int n : {3, 8}) {
        KbprojWindow w(F, n, -2, 0);
        for (int t : {-1, -2}) {
            CHECK(solve_center(w, t, true).dim() == 0);
            CHECK(solve_center(w, t, false).dim() == 0);
        }
    }
}

TEST_CASE("degree 0: unit plus one square-zero generator per diagonal") {
    Field F = Field::fp(101);
    KbprojWindow w(F, 8, 0, 4);
    CenterBasis b0 = solve_center(w, 0, true);
    REQUIRE(b0.dim() == 10);

    std::vector<CenterElement> fam;
    fam.push_back(identity_center_element(w));
    for (int r = 0; r <= 8; ++r) fam.push_back(canonical_eta(w, r));
    for (const auto& e : fam) {
        CHECK(verify_center_element(w, e));
        CHECK(coords_of(b0, e).has_value());
    }
    // The canonical family spans the full solution space.
    CHECK(family_rank(F, fam) == 10);

    // eta_r eta_r' = 0 for all pairs; the identity is the unit.
    for (int r = 0; r <= 8; ++r) {
        for (int rp = 0; rp <= 8; ++rp) {
            CenterElement p = multiply_elements(w, fam[static_cast<size_t>(r + 1)],
                                                fam[static_cast<size_t>(rp + 1)]);
            CHECK(center_element_is_zero(p));
        }
        CenterElement ue = multiply_elements(w, fam[0], fam[static_cast<size_t>(r + 1)]);
        CHECK(center_element_eq(w, ue, fam[static_cast<size_t>(r + 1)]));
    }

    NilpotencyVerdict v = nilpotency_check(w, {fam.begin() + 1, fam.end()}, 2);
    CHECK(v.nilpotent);
    NilpotencyVerdict bad = nilpotency_check(w, {identity_center_element(w)}, 3);
    CHECK_FALSE(bad.nilpotent);
    CHECK_FALSE(bad.witness.empty());
}

TEST_CASE("evaluation: eta_r lives on its own diagonal only") {
    Field F = Field::fp(101);
    KbprojWindow w(F, 8, 0, 2);
    for (int r = 0; r <= 8; ++r) {
        CenterElement er = canonical_eta(w, r);
        for (int rp = 0; rp <= 8; ++rp) {
            const auto& val = eval_at(er, rp);
            bool zero = true;
            for (const auto& c : val) zero = zero && F.is_zero(c);
            CHECK(zero == (rp != r));
        }
    }
    CenterElement one = identity_center_element(w);
    CHECK(eval_at(one, 3) == w.identity_coords(3));
}

TEST_CASE("evaluation at the stalk followed by End/rad kills exactly the ideal") {
    // End(A_0^0) = k id + k x.  An element lambda 1 + sum mu_r eta_r
    // evaluates at the stalk to lambda id + mu_0 x; reducing End modulo its
    // radical leaves lambda.  So the kernel of Z^0 -> End(stalk)/rad ~ k is
    // precisely the square-zero ideal spanned by the eta_r.
    Field F = Field::fp(101);
    KbprojWindow w(F, 8, 0, 2);
    std::vector<Scalar> id0 = w.identity_coords(0);
    ChainMap x0 = generator_morphism(w.algebra(), 'a', 0, 0, 0, 0);
    std::vector<Scalar> x0c = w.hom(0, 0, 0).coords(x0);
    REQUIRE(id0.size() == 2);

    auto in_radical = [&](const std::vector<Scalar>& v) {
        ExactMatrix m(F, 2, 2);
        for (int j = 0; j < 2; ++j) {
            m.at(0, j) = x0c[static_cast<size_t>(j)];
            m.at(1, j) = v[static_cast<size_t>(j)];
        }
        return rref(m).rank <= 1;
    };

    // The ideal maps into the radical...
    CenterElement mix = canonical_eta(w, 0);
    for (int r = 1; r <= 8; ++r)
        mix = add_center_elements(w, mix, scale_center_element(w, F.from_int(r + 1),
                                                               canonical_eta(w, r)));
    CHECK(in_radical(eval_at(canonical_eta(w, 0), 0)));
    CHECK(in_radical(eval_at(canonical_eta(w, 5), 0)));
    CHECK(in_radical(eval_at(mix, 0)));
    // ...and nothing with a unit component does.
    CHECK_FALSE(in_radical(id0));
    CenterElement shifted = add_center_elements(w, identity_center_element(w), mix);
    CHECK_FALSE(in_radical(eval_at(shifted, 0)));
}

TEST_CASE("zeta family: membership and exact multiplicativity") {
    Field F = Field::fp(101);
    KbprojWindow w(F, 8, 0, 4);

    std::map<int, CenterBasis> unsigned_bases;
    for (int t = 1; t <= 4; ++t) unsigned_bases.emplace(t, solve_center(w, t, false));

    std::vector<CenterElement> zeta(5);
    for (int t = 1; t <= 4; ++t) {
        zeta[static_cast<size_t>(t)] = canonical_zeta(w, t, false);
        CHECK(verify_center_element(w, zeta[static_cast<size_t>(t)]));
        auto c = coords_of(unsigned_bases.at(t), zeta[static_cast<size_t>(t)]);
        REQUIRE(c.has_value());
        CHECK_FALSE(F.is_zero((*c)[0])); // spans the one-dimensional space
    }

    // zeta_t zeta_t' = zeta_{t+t'} exactly, in both orders.
    for (int t = 1; t <= 3; ++t)
        for (int tp = 1; t + tp <= 4; ++tp) {
            CenterElement p = multiply_elements(w, zeta[static_cast<size_t>(t)],
                                                zeta[static_cast<size_t>(tp)]);
            CHECK(center_element_eq(w, p, zeta[static_cast<size_t>(t + tp)]));
        }

    // zeta_0 coincides with the identity element.
    CHECK(center_element_eq(w, canonical_zeta(w, 0, true), identity_center_element(w)));

    // zeta_t eta_r = eta_r zeta_t = 0.
    for (int t = 1; t <= 4; ++t)
        for (int r = 0; r <= 8; ++r) {
            CenterElement er = canonical_eta(w, r);
            CHECK(center_element_is_zero(
                multiply_elements(w, zeta[static_cast<size_t>(t)], er)));
            CHECK(center_element_is_zero(
                multiply_elements(w, er, zeta[static_cast<size_t>(t)])));
        }

    // The even-degree zetas are also the signed solutions.
    for (int t : {2, 4}) {
        CenterBasis bs = solve_center(w, t, true);
        CenterElement zs = canonical_zeta(w, t, true);
        auto c = coords_of(bs, zs);
        REQUIRE(c.has_value());
        CHECK_FALSE(F.is_zero((*c)[0]));
    }

    // Basis-level product: the multiplication table entry for
    // zeta_1 * zeta_1 in the degree-2 basis is nonzero.
    std::vector<Scalar> tab = multiply(w, unsigned_bases.at(1), 0,
                                       unsigned_bases.at(1), 0, unsigned_bases.at(2));
    REQUIRE(tab.size() == 1);
    CHECK_FALSE(F.is_zero(tab[0]));
}

TEST_CASE("zeta family over F_2 solves through the signed equations") {
    Field F = Field::fp(2);
    KbprojWindow w(F, 8, 0, 4);
    std::vector<CenterElement> zeta(5);
    for (int t = 1; t <= 4; ++t) {
        zeta[static_cast<size_t>(t)] = canonical_zeta(w, t, true);
        CenterBasis b = solve_center(w, t, true);
        REQUIRE(b.dim() == 1);
        CHECK(coords_of(b, zeta[static_cast<size_t>(t)]).has_value());
    }
    for (int t = 1; t <= 3; ++t)
        for (int tp = 1; t + tp <= 4; ++tp)
            CHECK(center_element_eq(
                w, multiply_elements(w, zeta[static_cast<size_t>(t)], zeta[static_cast<size_t>(tp)]),
                zeta[static_cast<size_t>(t + tp)]));
}

TEST_CASE("graded commutativity holds for every signed product pair") {
    // Over F_101 the signed center is concentrated in even degrees, over F_2
    // signs are invisible; in both cases a b = (-1)^{deg a deg b} b a must
    // hold on the nose for all computed basis vectors.
    for (long long p : {2LL, 101LL}) {
        Field F = Field::fp(p);
        KbprojWindow w(F, 6, 0, 4);
        std::map<int, CenterBasis> b;
        for (int t = 0; t <= 4; ++t) b.emplace(t, solve_center(w, t, true));
        for (int t1 = 0; t1 <= 2; ++t1)
            for (int t2 = 0; t1 + t2 <= 4; ++t2)
                for (const auto& a : b.at(t1).elements)
                    for (const auto& c : b.at(t2).elements) {
                        CenterElement ac = multiply_elements(w, a, c);
                        CenterElement ca = multiply_elements(w, c, a);
                        if ((t1 * t2) % 2 != 0)
                            ca = scale_center_element(w, F.from_int(-1), ca);
                        CHECK(center_element_eq(w, ac, ca));
                    }
    }
}

TEST_CASE("restrictions of big-window solutions solve the small window and back") {
    Field F = Field::fp(101);
    KbprojWindow w8(F, 8, 0, 4);
    KbprojWindow w4(F, 4, 0, 4);
    for (int t = 0; t <= 4; ++t) {
        for (bool sgn : {true, false}) {
            CenterBasis big = solve_center(w8, t, sgn);
            CenterBasis small = solve_center(w4, t, sgn);
            // Restricting a big solution to the shared objects solves the
            // small system (the small equations are a subset).
            for (const auto& e : big.elements) {
                CenterElement cut;
                cut.degree = t;
                cut.with_sign = sgn;
                cut.comps.assign(e.comps.begin(), e.comps.begin() + 5);
                CHECK(verify_center_element(w4, cut));
                CHECK(coords_of(small, cut).has_value());
            }
            // Every small solution is reproduced on the shared objects by a
            // combination of big solutions.
            for (const auto& e : small.elements)
                CHECK(match_restriction(big, e, 5).has_value());
        }
    }
}

TEST_CASE("presentation matcher recognizes the trivial-extension shape") {
    Field F = Field::fp(101);
    KbprojWindow w(F, 8, 0, 4);
    std::map<int, CenterBasis> bases;
    for (int t = 0; t <= 4; ++t) bases.emplace(t, solve_center(w, t, true));

    PresentationQuery q;
    q.kind = PresentationKind::DualNumbers;
    q.name = "T(k[zeta_2], prod k eta_r) on 9 diagonals";
    q.zeta_degree = 2;
    q.diagonal_count = 9;
    RingReport rep = match_presentation(w, bases, q);
    CHECK(rep.match);
    CHECK(rep.failure.empty());
    CHECK(rep.checks.size() >= 5);

    // char 2: the power generator sits in degree 1.
    Field F2 = Field::fp(2);
    KbprojWindow w2(F2, 8, 0, 4);
    std::map<int, CenterBasis> bases2;
    for (int t = 0; t <= 4; ++t) bases2.emplace(t, solve_center(w2, t, true));
    PresentationQuery q2 = q;
    q2.zeta_degree = 1;
    q2.name = "T(k[zeta_1], prod k eta_r) on 9 diagonals";
    CHECK(match_presentation(w2, bases2, q2).match);

    // Negative controls: wrong zeta degree, wrong diagonal count.
    PresentationQuery bad1 = q;
    bad1.zeta_degree = 1;
    RingReport r1 = match_presentation(w, bases, bad1);
    CHECK_FALSE(r1.match);
    CHECK_FALSE(r1.failure.empty());
    PresentationQuery bad2 = q;
    bad2.diagonal_count = 8;
    CHECK_FALSE(match_presentation(w, bases, bad2).match);
}

TEST_CASE("window without objects is flagged degenerate") {
    Field F = Field::fp(101);
    KbprojWindow w(F, -1, 0, 1);
    CHECK(w.object_count() == 0);
    CenterBasis b = solve_center(w, 0, true);
    CHECK(b.degenerate);
    CHECK(b.dim() == 0);
}

TEST_CASE("products outside the computed degree range refuse to extrapolate") {
    Field F = Field::fp(101);
    KbprojWindow w(F, 4, 0, 2);
    CenterElement z2 = canonical_zeta(w, 2, true);
    CHECK_THROWS_AS(multiply_elements(w, z2, z2), std::out_of_range);
    CHECK_THROWS_AS(solve_center(w, 3, true), std::out_of_range);
}

TEST_CASE("extension along the truncation tower: stabilization and classes") {
    Field F = Field::fp(101);
    KbprojWindow w(F, 8, 0, 4);
    const SerialAlgebra& alg = w.algebra();

    // The identity extends to the identity tower with class 1.
    ExtensionResult ri = extend_to_truncations(w, identity_center_element(w), 12);
    REQUIRE(ri.levels.size() == 13);
    CHECK(ri.stabilized);
    CHECK(ri.ext_class == F.one());
    for (int m : {0, 5, 12})
        CHECK(chain_map_eq(alg, ri.levels[static_cast<size_t>(m)],
                           identity_map(alg, interval_complex(alg, 0, m))));

    // eta_r acts by zero on the simple module: class 0, still stabilizing.
    for (int r : {0, 3, 8}) {
        ExtensionResult re = extend_to_truncations(w, canonical_eta(w, r), 12);
        CHECK(re.stabilized);
        CHECK(re.ext_class == F.zero());
    }

    // zeta_2 (signed) and zeta_1 (unsigned) hit nonzero Ext classes.
    ExtensionResult r2 = extend_to_truncations(w, canonical_zeta(w, 2, true), 12);
    CHECK(r2.stabilized);
    CHECK_FALSE(F.is_zero(r2.ext_class));
    ExtensionResult r1 = extend_to_truncations(w, canonical_zeta(w, 1, false), 12);
    CHECK(r1.stabilized);
    CHECK_FALSE(F.is_zero(r1.ext_class));

    // Each level is an honest chain map representing the element's value
    // inside the window.
    CenterElement z2 = canonical_zeta(w, 2, true);
    for (int m : {2, 5, 8}) {
        const ChainMap& lv = r2.levels[static_cast<size_t>(m)];
        CHECK(is_chain_map(alg, lv));
        CHECK(w.hom(m, m, 2).coords(lv) == z2.comps[static_cast<size_t>(m)]);
    }
}
