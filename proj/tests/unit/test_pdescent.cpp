#include "doctest.h"
#include "corpus.hpp"
#include "ellsurf/pdescent.hpp"

using namespace test;

namespace {

const ConstantField F5 = ConstantField::prime(5);
const ConstantField F7 = ConstantField::prime(7);
const ConstantField F11 = ConstantField::prime(11);

// Depressed model and point shift, done by hand.
std::pair<WeierstrassModel, std::vector<CurvePoint>> depress(const WeierstrassModel& E, std::vector<CurvePoint> pts) {
    FieldElement s = E.c2() / constant(E.field(), 3);
    for (auto& P : pts)
        if (!P.is_zero()) P = CurvePoint(P.x() + s, P.y());
    return {E.depressed(), pts};
}

}  // namespace

TEST_CASE("Hasse data over F_5 for a4 = a6 = t") {
    HasseData h = hasse_data(short_curve("t", "t", F5));
    CHECK(h.A == F("2*t", F5));
    CHECK(h.M == XPoly::variable(F("0", F5)));
    CHECK(h.L == XPoly({F("t^2", F5), F("2*t^2", F5), F("t^2", F5), F("2*t", F5)}, F("0", F5)));
    CHECK(hasse_data(short_curve("0", "1", F5)).A.is_zero());
}

TEST_CASE("Hasse data re-expands on random short models") {
    std::mt19937_64 rng(51);
    for (ConstantField k : {F5, F7, F11}) {
        int done = 0;
        while (done < 20) {
            FieldElement a4 = random_element(rng, k, 2, 5), a6 = random_element(rng, k, 2, 5);
            if ((constant(k, 4) * a4 * a4 * a4 + constant(k, 27) * a6 * a6).is_zero()) continue;
            ++done;
            WeierstrassModel E = WeierstrassModel::short_form(a4, a6);
            HasseData h = hasse_data(E);
            const int p = static_cast<int>(k.characteristic());
            XPoly lhs = XPoly::monomial(F("1", k), p) * h.M + h.L;
            if (!h.A.is_zero()) lhs += XPoly::monomial(h.A, p - 1);
            CHECK(lhs == E.cubic().pow((k.characteristic() - 1) / 2));
            CHECK(h.L.degree() < p - 1);
            CHECK(h.M.degree() <= p - 3);
        }
    }
}

TEST_CASE("lambda over F_5") {
    WeierstrassModel E = short_curve("t", "t", F5);
    FieldElement j = F("2*t^3/(4*t^3 + 2*t^2)", F5);
    CHECK(E.j_invariant() == j);
    GradedSection lam = lambda_section(E);
    CHECK(lam.value == F("2", F5) * j.derivative() / j);
    CHECK(lam.weight == -2);
    CHECK(lam.diff_degree == 1);
    CHECK(divisor(lam).degree == -2 - 2 * deg_omega(E));
    CHECK_THROWS_AS(lambda_section(short_curve("1", "1", F5)), HypothesisError);
    CHECK_THROWS_AS(lambda_section(short_curve("t", "0", F5)), HypothesisError);
    CHECK_THROWS_AS(lambda_section(short_curve("0", "t", F5)), HypothesisError);
    CHECK_THROWS_AS(lambda_section(short_curve("t^5", "t^5 + 1", F5)), HypothesisError);
}

TEST_CASE("mu is additive and kills 2-torsion on biquadratic Legendre points") {
    for (ConstantField k : {F5, F7, F11}) {
        Biquadratic bq = biquadratic(k);
        REQUIRE(on_curve(bq.E, bq.P2));
        REQUIRE(on_curve(bq.E, bq.P3));
        FieldElement t = bq.cover.image;
        auto [E, pts] = depress(bq.E, {bq.P2, bq.P3, CurvePoint(F("0", k, "u"), F("0", k, "u")), CurvePoint(F("1", k, "u"), F("0", k, "u")),
                                       CurvePoint(t, F("0", k, "u"))});
        const CurvePoint &P2 = pts[0], &P3 = pts[1];
        for (std::size_t i = 2; i < 5; ++i) CHECK(mu(E, pts[i]).is_zero());
        FieldElement m2 = mu(E, P2), m3 = mu(E, P3);
        CHECK_FALSE(m2.is_zero());
        CHECK(mu(E, add(E, P2, P3)) == m2 + m3);
        CHECK(mu(E, negate(E, P2)) == -m2);
        CHECK(mu(E, add(E, P2, pts[2])) == m2);
        CHECK(mu(E, add(E, add(E, P3, pts[3]), pts[4])) == m3);
        CHECK(mu(E, scalar_mul(E, 2, P2)) == constant(E.field(), 2) * m2);
    }
}

TEST_CASE("mu kills p-multiples and prime-to-p torsion") {
    for (ConstantField k : {F5, F7}) {
        for (long c : {2L, 3L}) {
            PointFamily fam = tx_family(k, c);
            if (!on_curve(fam.E, fam.P)) continue;
            const long p = static_cast<long>(k.characteristic());
            CHECK(mu(fam.E, scalar_mul(fam.E, p, fam.P)).is_zero());
            CHECK(nu(fam.E, scalar_mul(fam.E, p, fam.P)).is_zero());
            CHECK(mu(fam.E, fam.P) != constant(k, 0));
        }
        Biquadratic bq = biquadratic(k);
        auto [E, pts] = depress(bq.E, {bq.P2, CurvePoint(F("0", k, "u"), F("0", k, "u"))});
        CHECK(mu(E, scalar_mul(E, 3, pts[1])).is_zero());
        CHECK(mu(E, add(E, pts[0], scalar_mul(E, 5, pts[1]))) == mu(E, pts[0]));
    }
}

TEST_CASE("mu does not depend on the derivation") {
    PointFamily fam = tx_family(F7, 2);
    REQUIRE(on_curve(fam.E, fam.P));
    FieldElement m = mu(fam.E, fam.P);
    CHECK(mu(fam.E, fam.P, Derivation{F("w^2 + 1", F7, "w")}) == m);
    CHECK(mu(fam.E, fam.P, Derivation{F("3/(w - 1)", F7, "w")}) == m);
}

TEST_CASE("tau expectations") {
    using Fam = KodairaType::Family;
    CHECK(tau_expectation({Fam::I, 0}, 5) == std::make_pair(0, false));
    CHECK(tau_expectation({Fam::I, 2}, 5) == std::make_pair(-1, true));
    CHECK(tau_expectation({Fam::I, 10}, 5) == std::make_pair(0, false));
    CHECK(tau_expectation({Fam::III, 0}, 5) == std::make_pair(-1, false));
    CHECK(tau_expectation({Fam::IStar, 0}, 5) == std::make_pair(-1, false));
    CHECK(tau_expectation({Fam::IStar, 5}, 5) == std::make_pair(-1, false));
    CHECK(tau_expectation({Fam::IStar, 1}, 5) == std::make_pair(-2, true));
    CHECK(tau_expectation({Fam::IIStar, 0}, 7) == std::make_pair(-2, false));
}

TEST_CASE("the tau table holds on curves of every reduction type") {
    struct Case {
        const char *a4, *a6;
        std::uint32_t p;
        const char* type;
    };
    const Case cases[] = {
        {"t", "t", 5, "II"},          {"t", "t^2 + t^3", 7, "III"},   {"t^2", "t^2", 7, "IV"},
        {"t^2", "t^3 + t^4", 7, "I0*"}, {"-3*t^2", "2*t^3 + t^4", 7, "I1*"}, {"-3*t^2", "2*t^3 + t^8 + t^9", 5, "I5*"},
        {"t^3", "t^4", 7, "IV*"},     {"t^3", "t^5", 7, "III*"},      {"t^4", "t^5", 7, "II*"},
        {"-3", "2 + t", 7, "I1"},      {"-3", "2 + t^5 + t^6", 5, "I5"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.type);
        ConstantField k = ConstantField::prime(c.p);
        WeierstrassModel E = short_curve(c.a4, c.a6, k);
        CHECK(kodaira_type(E, place("t", k)).to_string() == c.type);
        for (const auto& row : check_lemma_tau(E)) {
            CAPTURE(row.place.to_string("t"));
            CHECK(row.pass);
        }
    }
    auto rows = check_lemma_tau(legendre(F5).depressed());
    auto at_t = std::find_if(rows.begin(), rows.end(), [](const TauRow& r) { return r.place == place("t", F5); });
    REQUIRE(at_t != rows.end());
    CHECK(at_t->type.to_string() == "I2");
    CHECK(at_t->ell == -1);
    CHECK(at_t->expectation == "= -1");
    for (const auto& r : rows) {
        int bound = std::stoi(r.expectation.substr(r.expectation.find(' ') + 1));
        CHECK(r.pass == (r.expectation[0] == '=' ? r.ell == bound : r.ell >= bound));
    }
}

TEST_CASE("descent divisor and bound on semistable curves") {
    for (ConstantField k : {F5, F7, F11}) {
        CAPTURE(k.characteristic());
        LegendreOne ex = legendre_one(k);
        auto [E, pts] = depress(ex.E, {ex.P});
        REQUIRE(is_semistable(E));
        DescentDivisor dd = descent_divisor(E, pts[0], 30);
        CHECK(dd.Dprime.entries.empty());
        CHECK(dd.D.degree == static_cast<long>(k.characteristic() - 1) * dd.D0.degree);
        for (const auto& co : dd.component_orders)
            if (co.type.m == 2) CHECK(2 % co.order == 0);

        CharPBoundReport r = bound_report_charp(E, pts[0], 12);
        const long p = static_cast<long>(k.characteristic());
        CHECK(r.bound == p * (-2 - r.d) + (p - 1) * r.delta);
        CHECK(r.membership_holds);
        CHECK(r.bound_holds);
        CHECK(r.weighted <= r.bound);
        for (const auto& h : r.hits) CHECK(h.refined_holds);
        CHECK(r.nu_divisor.degree == -2 + (p - 2) * r.d);
    }
}

TEST_CASE("descent divisor picks up I_m places with p | m") {
    // I5 at t = 0 over F_5, P = (0, b) with b^2 = a6.
    WeierstrassModel E = short_curve("3", "(1 + t^5 + t^6)^2", F5);
    CurvePoint P(F("0", F5), F("1 + t^5 + t^6", F5));
    REQUIRE(on_curve(E, P));
    REQUIRE(kodaira_type(E, place("t", F5)).to_string() == "I5");
    DescentDivisor dd = descent_divisor(E, P, 30);
    for (const auto& e : dd.Dprime.entries) CHECK(kodaira_type(E, e.place).m % 5 == 0);
    CHECK_THROWS_AS(bound_report_charp(E, P, 12), HypothesisError);
}
