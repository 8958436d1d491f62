#ifndef ELLSURF_SECTIONS_HPP
#define ELLSURF_SECTIONS_HPP

#include <string>
#include <utility>
#include <vector>

#include "ellsurf/elliptic.hpp"

namespace ellsurf {

// Trivialization of omega used for the value of a section.
enum class OmegaFrame {
    HalfDifferential,  // dx/2y
    Differential,      // dx/y = 2 * dx/2y
};

// value * (dt)^m * (frame)^kappa, with value expressed in the coordinates of model.
// Under x' = u^2 x, y' = u^3 y the frame scales by 1/u, so the value scales by u^kappa.
struct GradedSection {
    FieldElement value;
    int weight = 0;       // kappa
    int diff_degree = 0;  // m
    WeierstrassModel model;
    OmegaFrame frame = OmegaFrame::HalfDifferential;

    bool is_zero() const { return value.is_zero(); }
    // The same section with its value expressed in the other frame.
    GradedSection in_frame(OmegaFrame f) const;
    // The same section with its value expressed on model.scaled(u).
    GradedSection on_scaled_model(const FieldElement& u) const;
};

// Product of sections on the same model; weights and differential degrees add.
GradedSection operator*(const GradedSection& a, const GradedSection& b);

// ord_v with the value rewritten on the v-minimal model, plus m * ord_v(dt).
// Throws HypothesisError for the zero section.
int ord_section(const GradedSection& s, const Place& v);

struct DivisorEntry {
    Place place;
    int ord;
};

struct DivisorReport {
    std::vector<DivisorEntry> entries;  // nonzero orders only, sorted by place
    long degree = 0;                    // sum of degree(v) * ord
    long expected_degree = 0;           // -2m + kappa * deg_omega; equals degree for sections

    int ord_at(const Place& v) const;
    bool identity_holds() const { return degree == expected_degree; }
    // Effective parts: (zeros, poles), both with nonnegative orders.
    std::pair<DivisorReport, DivisorReport> split() const;
};

DivisorReport make_divisor(std::vector<DivisorEntry> entries);
DivisorReport operator+(const DivisorReport& a, const DivisorReport& b);
DivisorReport operator*(int n, const DivisorReport& d);

// Places at which ord_section(s, .) can be nonzero.
std::vector<Place> section_candidate_places(const GradedSection& s);
DivisorReport divisor(const GradedSection& s);

}  // namespace ellsurf

#endif
