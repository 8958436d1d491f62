#include <set>

#include "doctest.h"
#include "corpus.hpp"
#include "ellsurf/maninmap.hpp"
#include "ellsurf/pdescent.hpp"

using namespace test;

namespace {

const ConstantField F5 = ConstantField::prime(5);
const ConstantField F7 = ConstantField::prime(7);

GradedSection a4_class(const WeierstrassModel& E) { return {E.a4(), 4, 0, E}; }
GradedSection a6_class(const WeierstrassModel& E) { return {E.a6(), 6, 0, E}; }

std::set<Place> places_of(const DivisorReport& a, const DivisorReport& b) {
    std::set<Place> out;
    for (const auto& e : a.entries) out.insert(e.place);
    for (const auto& e : b.entries) out.insert(e.place);
    return out;
}

// Every place where either divisor is nonzero gets the same order.
void check_same_divisor(const DivisorReport& a, const DivisorReport& b) {
    for (const Place& v : places_of(a, b)) CHECK(a.ord_at(v) == b.ord_at(v));
    CHECK(a.degree == b.degree);
}

// a4 -> c^4 a4, a6 -> c^6 a6 for the scalings c in {t, (t-1)^2, 3}.
std::vector<FieldElement> scalings(ConstantField k, const std::string& var) {
    return {F(var, k, var), F("(" + var + " - 1)^2", k, var), constant(k, 3)};
}

}  // namespace

TEST_CASE("ord of the a4 class removes the scaling") {
    WeierstrassModel E = short_curve("t^4", "t^6");
    GradedSection s = a4_class(E);
    CHECK(ord_section(s, place("t")) == 0);
    CHECK(divisor(s).identity_holds());
    CHECK(divisor(a6_class(E)).identity_holds());
}

TEST_CASE("dt has degree -2") {
    WeierstrassModel E = legendre();
    GradedSection dt{F("1"), 0, 1, E};
    DivisorReport D = divisor(dt);
    CHECK(D.degree == -2);
    CHECK(D.ord_at(place("inf")) == -2);
    CHECK(D.entries.size() == 1);
    CHECK_THROWS_AS(ord_section(GradedSection{F("0"), 0, 1, E}, place("t")), HypothesisError);
}

TEST_CASE("degree identity for lambda over F_5 and F_7") {
    for (ConstantField k : {F5, F7}) {
        WeierstrassModel E = short_curve("t", "t", k);
        DivisorReport D = divisor(lambda_section(E));
        CHECK(D.degree == -2 - 2 * deg_omega(E));
        CHECK(D.identity_holds());
    }
}

TEST_CASE("frames differ by a constant and do not change orders") {
    LegendreOne ex = legendre_one();
    PFOperator L = pullback_pf(find_pf(legendre(), 2), ex.cover);
    GradedSection M = manin_section(ex.E, L, ex.P);
    GradedSection H = M.in_frame(OmegaFrame::HalfDifferential);
    CHECK(H.value * constant(Q, 2) == M.value);
    CHECK(H.in_frame(OmegaFrame::Differential).value == M.value);
    check_same_divisor(divisor(M), divisor(H));
}

TEST_CASE("orders do not depend on the short model") {
    for (ConstantField k : {F5, F7}) {
        PointFamily fam = tx_family(k, 2);
        REQUIRE(on_curve(fam.E, fam.P));
        std::vector<GradedSection> base{a4_class(fam.E), a6_class(fam.E), lambda_section(fam.E), nu(fam.E, fam.P)};
        for (const FieldElement& c : scalings(k, "w")) {
            WeierstrassModel Ec = fam.E.scaled(c);
            std::vector<GradedSection> moved{a4_class(Ec), a6_class(Ec), lambda_section(Ec), nu(Ec, scale_point(fam.P, c))};
            for (std::size_t i = 0; i < base.size(); ++i) {
                CAPTURE(i);
                CHECK(moved[i].value == base[i].on_scaled_model(c).value);
                check_same_divisor(divisor(base[i]), divisor(moved[i]));
            }
        }
    }

    LegendreOne ex = legendre_one();
    WeierstrassModel E = ex.E.depressed();
    CurvePoint Pd = to_depressed(ex.E, ex.P);
    PFOperator L = pullback_pf(find_pf(legendre(), 2), ex.cover);
    auto Fd = find_witness(E, L.A, L.B, L.C, L.delta);
    REQUIRE(Fd.has_value());
    PFOperator Ld{L.A, L.B, L.C, *Fd, L.delta};
    GradedSection M = manin_section(E, Ld, Pd);
    for (const FieldElement& c : scalings(Q, "s")) {
        GradedSection Mc = manin_section(E.scaled(c), pf_for_scaled_model(E, Ld, c), scale_point(Pd, c));
        check_same_divisor(divisor(M), divisor(Mc));
        check_same_divisor(divisor(a4_class(E)), divisor(a4_class(E.scaled(c))));
        check_same_divisor(divisor(a6_class(E)), divisor(a6_class(E.scaled(c))));
    }
}

TEST_CASE("degree identity and multiplicativity") {
    PointFamily fam = tx_family(F7, 3);
    REQUIRE(on_curve(fam.E, fam.P));
    std::vector<GradedSection> secs{a4_class(fam.E), a6_class(fam.E), lambda_section(fam.E), nu(fam.E, fam.P),
                                    GradedSection{F("w^2 + 1", F7, "w"), 0, 1, fam.E}};
    for (const auto& s : secs) {
        DivisorReport D = divisor(s);
        CHECK(D.identity_holds());
        CHECK(D.expected_degree == -2 * s.diff_degree + s.weight * deg_omega(fam.E));
    }
    for (std::size_t i = 0; i < secs.size(); ++i)
        for (std::size_t j = i; j < secs.size(); ++j) {
            GradedSection prod = secs[i] * secs[j];
            CHECK(prod.weight == secs[i].weight + secs[j].weight);
            CHECK(prod.diff_degree == secs[i].diff_degree + secs[j].diff_degree);
            check_same_divisor(divisor(prod), divisor(secs[i]) + divisor(secs[j]));
        }
    CHECK_THROWS(secs[0] * GradedSection{F("1", F7, "w"), 0, 0, fam.E.scaled(F("w", F7, "w"))});
}

TEST_CASE("divisor reports split and scale") {
    DivisorReport D = make_divisor({{place("t"), 2}, {place("t - 1"), -1}, {place("inf"), -1}});
    CHECK(D.degree == 0);
    auto [zeros, poles] = D.split();
    CHECK(zeros.degree == 2);
    CHECK(poles.degree == 2);
    CHECK((3 * D).ord_at(place("t")) == 6);
    CHECK((D + D).ord_at(place("inf")) == -2);
    CHECK((D + (-1) * D).entries.empty());
}
