#include <doctest.h>

#include <fockbench/random.hpp>
#include <fockbench/wick.hpp>

#include "oracles.hpp"

using namespace fockbench;

namespace {

const HilbertSpec kReal4 = HilbertSpec::real_space(4);

FockVector apply_to_vacuum(const WickExpression& x, int cutoff) {
    return wick_apply(x, FockVector::vacuum(x.space, cutoff));
}

} // namespace

TEST_CASE("wick_apply on the vacuum gives the word vector") {
    const auto e = HVector::basis(kReal4, 0);
    auto v = apply_to_vacuum(WickExpression::generator(e), 3);
    CHECK(v.coeffs.size() == 1);
    CHECK(v.coeffs.at(FockWord{0}) == Complex(1.0));

    auto w = apply_to_vacuum(WickExpression::word({HVector::basis(kReal4, 0), HVector::basis(kReal4, 1)}), 3);
    CHECK(w.coeffs.size() == 1);
    CHECK(w.coeffs.at(FockWord{0, 1}) == Complex(1.0));
}

TEST_CASE("wick_apply of a 2-letter word on an orthogonal letter") {
    // f orthogonal to ebar_1 and ebar_2: only the all-creation Wick term acts
    const auto e1 = HVector::basis(kReal4, 0);
    const auto e2 = HVector::basis(kReal4, 1);
    const auto x = WickExpression::word({e1, e2});
    auto v = wick_apply(x, FockVector::word(kReal4, 3, {2}));
    CHECK(v.coeffs.size() == 1);
    CHECK(v.coeffs.at(FockWord{0, 1, 2}) == Complex(1.0));

    // and against the dense Wick-formula oracle for a non-orthogonal letter
    oracles::DenseFock dense(4, 3);
    const Eigen::MatrixXcd m =
        dense.wick_word({e1.coeffs, e2.coeffs}, kReal4.conj_perm);
    for (int col = 0; col < dense.size(); ++col) {
        const FockVector in = FockVector::word(kReal4, 3, dense.words[static_cast<size_t>(col)]);
        const FockVector out = wick_apply(x, in);
        for (int row = 0; row < dense.size(); ++row) {
            const FockVector rw = FockVector::word(kReal4, 3, dense.words[static_cast<size_t>(row)]);
            CHECK(std::abs(inner(out, rw) - m(row, col)) <= 1e-13);
        }
    }
}

TEST_CASE("wick_product concatenates orthogonal words") {
    const auto e1 = HVector::basis(kReal4, 0);
    const auto e2 = HVector::basis(kReal4, 1);
    const auto f = HVector::basis(kReal4, 2);
    const auto prod = wick_product(WickExpression::word({e1, e2}), WickExpression::generator(f));
    CHECK(prod.scalar == Complex(0.0));
    REQUIRE(prod.terms.size() == 1);
    CHECK(prod.terms[0].word.letters.size() == 3);
    CHECK(prod.terms[0].coeff == Complex(1.0));
}

TEST_CASE("wick_product of a real letter with itself") {
    const auto e = HVector::basis(kReal4, 0);
    const auto w = WickExpression::generator(e);
    const auto sq = wick_product(w, w);
    CHECK(sq.scalar == Complex(1.0));
    REQUIRE(sq.terms.size() == 1);
    CHECK(sq.terms[0].word.letters.size() == 2);
}

TEST_CASE("scalar term acts as the identity") {
    Rng rng(5);
    const auto x = random_expression(rng, kReal4, 3, 4);
    const auto one = WickExpression::identity(kReal4);
    const auto p = wick_product(one, x);
    const auto q = wick_product(x, one);
    // same trace and same vacuum image as x
    CHECK(std::abs(trace(p) - trace(x)) <= 1e-14);
    CHECK(std::abs(trace(q) - trace(x)) <= 1e-14);
    const auto vx = apply_to_vacuum(x, 4);
    CHECK((apply_to_vacuum(p, 4) - vx).norm() <= 1e-12);
    CHECK((apply_to_vacuum(q, 4) - vx).norm() <= 1e-12);
}

TEST_CASE("wick_adjoint reverses and conjugates") {
    const HilbertSpec grid = HilbertSpec::with_conjugation({0, 2, 1});
    const auto e1 = HVector::basis(grid, 1);
    const auto e2 = HVector::basis(grid, 0);
    const auto adj = wick_adjoint(WickExpression::word({e1, e2}));
    REQUIRE(adj.terms.size() == 1);
    const auto& letters = adj.terms[0].word.letters;
    REQUIRE(letters.size() == 2);
    CHECK(letters[0].coeffs[0] == Complex(1.0)); // ebar_2
    CHECK(letters[1].coeffs[2] == Complex(1.0)); // ebar_1

    // self-adjoint generator for a conjugation-fixed letter
    const auto r = wick_adjoint(WickExpression::generator(HVector::basis(kReal4, 2)));
    CHECK(r.terms[0].word.letters[0].coeffs[2] == Complex(1.0));

    Rng rng(9);
    const auto x = random_expression(rng, grid, 3, 4);
    const auto xadj2 = wick_adjoint(wick_adjoint(x));
    CHECK(std::abs(trace(xadj2 - x)) <= 1e-14);
    CHECK((apply_to_vacuum(xadj2 - x, 4)).norm() <= 1e-12);
}

TEST_CASE("vacuum trace on low powers of a generator") {
    const auto e = HVector::basis(kReal4, 0);
    const auto w = WickExpression::generator(e);
    CHECK(trace(WickExpression::identity(kReal4)) == Complex(1.0));

    const auto w2 = wick_product(w, w);
    const auto w4 = wick_product(w2, w2);
    // second and fourth moments of the semicircle law, frozen from quadrature
    const double m2 = oracles::semicircle_moment_quadrature(1.0, 2);
    const double m4 = oracles::semicircle_moment_quadrature(1.0, 4);
    CHECK(m2 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m4 == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(trace(w2) - Complex(m2)) <= 1e-9);
    CHECK(std::abs(trace(w4) - Complex(m4)) <= 1e-9);
}

TEST_CASE("semicircle moments match Catalan numbers and quadrature") {
    const auto e = HVector::basis(kReal4, 1);
    for (int k = 0; k <= 6; ++k) {
        const double even = semicircle_moment(e, 2 * k);
        CHECK(even == doctest::Approx(static_cast<double>(oracles::catalan(k))).epsilon(1e-12));
        if (k <= 4) // quadrature oracle: slower, keep the range modest
            CHECK(even == doctest::Approx(oracles::semicircle_moment_quadrature(1.0, 2 * k))
                              .epsilon(1e-8));
        CHECK(semicircle_moment(e, 2 * k + 1) == doctest::Approx(0.0).epsilon(1e-12));
    }

    // scaling: ||e|| = r multiplies the 2k-th moment by r^{2k}
    HVector scaled = HVector::zero(kReal4);
    scaled.coeffs[0] = 1.5;
    CHECK(semicircle_moment(scaled, 6) ==
          doctest::Approx(5.0 * std::pow(1.5, 6.0)).epsilon(1e-12));

    CHECK_THROWS_AS(semicircle_moment(e, 8, 3), ExactnessError);
    HVector complex_letter = HVector::zero(kReal4);
    complex_letter.coeffs[0] = Complex(0.0, 1.0);
    CHECK_THROWS_AS(semicircle_moment(complex_letter, 2), PreconditionError);
}

TEST_CASE("operator/symbol coherence on random expressions") {
    Rng rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        const auto x = random_expression(rng, kReal4, 3, 3);
        const auto y = random_expression(rng, kReal4, 3, 3);
        const auto xy = wick_product(x, y);
        const int L = 7; // head room: degree(x) + degree(y) + psi degree
        oracles::DenseFock dense(4, 1); // just for the word list of degree <= 1
        for (const auto& w : dense.words) {
            const FockVector psi = FockVector::word(kReal4, L, w);
            const FockVector lhs = wick_apply(xy, psi);
            const FockVector rhs = wick_apply(x, wick_apply(y, psi));
            CHECK((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
        }
    }
}

TEST_CASE("adjoint coherence and positivity") {
    Rng rng(43);
    for (int trial = 0; trial < 25; ++trial) {
        const auto x = random_expression(rng, kReal4, 3, 3);
        FockVector psi = FockVector::zero(kReal4, 7);
        FockVector phi = FockVector::zero(kReal4, 7);
        for (int i = 0; i < 6; ++i) {
            FockWord w;
            const int len = static_cast<int>(rng.integer(0, 3));
            for (int k = 0; k < len; ++k) w.push_back(static_cast<int>(rng.integer(0, 3)));
            psi.add_term(w, rng.cnormal());
            w.clear();
            const int len2 = static_cast<int>(rng.integer(0, 3));
            for (int k = 0; k < len2; ++k) w.push_back(static_cast<int>(rng.integer(0, 3)));
            phi.add_term(w, rng.cnormal());
        }
        const Complex lhs = inner(wick_apply(x, psi), phi);
        const Complex rhs = inner(psi, wick_apply(wick_adjoint(x), phi));
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + psi.norm() * phi.norm()));

        const Complex pos = trace(wick_product(wick_adjoint(x), x));
        CHECK(pos.real() >= -1e-12);
        CHECK(std::abs(pos.imag()) <= 1e-12);
        const double vac_sq = apply_to_vacuum(x, 4).squared_norm();
        CHECK(pos.real() == doctest::Approx(vac_sq).epsilon(1e-10));
    }
}

TEST_CASE("traciality on random degree <= 4 words") {
    Rng rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        const auto x = random_expression(rng, kReal4, 4, 2);
        const auto y = random_expression(rng, kReal4, 4, 2);
        const Complex a = trace(wick_product(x, y));
        const Complex b = trace(wick_product(y, x));
        CHECK(std::abs(a - b) <= 1e-10 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("freeness probes over orthogonal letters") {
    const auto e = HVector::basis(kReal4, 0);
    const auto f = HVector::basis(kReal4, 1);
    const auto we = WickExpression::generator(e);
    const auto wf = WickExpression::generator(f);
    const auto one = WickExpression::identity(kReal4);

    // centered squares: (W(e)^2 - 1)(W(f)^2 - 1)
    const auto ce = wick_product(we, we) - one;
    const auto cf = wick_product(wf, wf) - one;
    const std::vector<std::vector<WickExpression>> families{{we, ce}, {wf, cf}};

    CHECK(std::abs(freeness_probe(families, {{0, 1}, {1, 1}}, 8)) <= 1e-12);
    CHECK(std::abs(freeness_probe(families, {{0, 0}, {1, 0}, {0, 0}, {1, 0}}, 8)) <= 1e-12);

    // the colored non-crossing pairing count oracle agrees: the only pairing
    // of the pattern efef crosses, so the mixed moment vanishes
    CHECK(oracles::noncrossing_colored_pairings({0, 1, 0, 1}) == 0);
    CHECK(oracles::noncrossing_colored_pairings({0, 0, 1, 1}) == 1);
    const auto m = trace(wick_product(wick_product(we, we), wick_product(wf, wf)));
    CHECK(std::abs(m - Complex(1.0)) <= 1e-12);

    CHECK_THROWS_AS(freeness_probe(families, {{0, 0}, {0, 1}}, 8), PreconditionError);
    const std::vector<std::vector<WickExpression>> uncentered{{we}, {wick_product(wf, wf)}};
    CHECK_THROWS_AS(freeness_probe(uncentered, {{0, 0}, {1, 0}}, 8), PreconditionError);
    CHECK_THROWS_AS(freeness_probe(families, {{0, 1}, {1, 1}}, 3), PreconditionError);
}

TEST_CASE("mixed moments of orthonormal letters match colored pairing counts") {
    // tau(W(a_1) ... W(a_n)) counts color-matched non-crossing pairings
    const std::vector patterns = {
        std::vector<int>{0, 1, 1, 0},       std::vector<int>{0, 1, 0, 1},
        std::vector<int>{0, 0, 1, 1, 0, 0}, std::vector<int>{0, 1, 1, 2, 2, 0},
        std::vector<int>{0, 1, 2, 0, 1, 2}, std::vector<int>{1, 1, 1, 1, 0, 0},
        std::vector<int>{0, 1, 1, 1}};
    for (const auto& colors : patterns) {
        WickExpression prod = WickExpression::identity(kReal4);
        for (int c : colors)
            prod = wick_product(prod, WickExpression::generator(HVector::basis(kReal4, c)));
        const auto expected = static_cast<double>(oracles::noncrossing_colored_pairings(colors));
        CHECK(std::abs(trace(prod) - Complex(expected)) <= 1e-12);
    }
}

TEST_CASE("simplify merges scaled copies of a word") {
    const auto e = HVector::basis(kReal4, 0);
    HVector scaled = HVector::zero(kReal4);
    scaled.coeffs[0] = 2.0;
    WickExpression x = WickExpression::identity(kReal4, 0.0);
    x.terms.push_back(WickTerm{1.0, WickWord{{scaled, e}}});  // W(2e (x) e)
    x.terms.push_back(WickTerm{-2.0, WickWord{{e, e}}});      // -2 W(e (x) e)
    const auto s = simplify(x);
    CHECK(s.terms.empty());
    CHECK(s.scalar == Complex(0.0));
}
