#include "ellsurf/sections.hpp"

#include <algorithm>
#include <map>

#include "ellsurf/error.hpp"

namespace ellsurf {

GradedSection GradedSection::in_frame(OmegaFrame f) const {
    if (f == frame) return *this;
    // (dx/y)^kappa = 2^kappa (dx/2y)^kappa
    FieldElement two_k = constant(model.field(), 2).pow(weight);
    GradedSection r = *this;
    r.frame = f;
    r.value = f == OmegaFrame::HalfDifferential ? value * two_k : value / two_k;
    return r;
}

GradedSection GradedSection::on_scaled_model(const FieldElement& u) const {
    GradedSection r = *this;
    r.model = model.scaled(u);
    r.value = value * u.pow(weight);
    return r;
}

GradedSection operator*(const GradedSection& a, const GradedSection& b) {
    if (!(a.model == b.model)) throw InputError("sections on different models");
    GradedSection bb = b.in_frame(a.frame);
    return GradedSection{a.value * bb.value, a.weight + b.weight, a.diff_degree + b.diff_degree, a.model, a.frame};
}

int ord_section(const GradedSection& s, const Place& v) {
    if (s.is_zero()) throw HypothesisError("nonzero section", "the section is identically zero");
    LocalMinimalModel local = minimal_model_at(s.model, v);
    return ord_at(s.value, v) + local.twist * s.weight + s.diff_degree * ord_dt(v);
}

int DivisorReport::ord_at(const Place& v) const {
    for (const auto& e : entries)
        if (e.place == v) return e.ord;
    return 0;
}

DivisorReport make_divisor(std::vector<DivisorEntry> entries) {
    std::map<Place, int> acc;
    for (auto& e : entries) acc[e.place] += e.ord;
    DivisorReport r;
    for (auto& [v, n] : acc) {
        if (n == 0) continue;
        r.entries.push_back({v, n});
        r.degree += static_cast<long>(v.degree()) * n;
    }
    return r;
}

DivisorReport operator+(const DivisorReport& a, const DivisorReport& b) {
    std::vector<DivisorEntry> all = a.entries;
    all.insert(all.end(), b.entries.begin(), b.entries.end());
    DivisorReport r = make_divisor(std::move(all));
    r.expected_degree = a.expected_degree + b.expected_degree;
    return r;
}

DivisorReport operator*(int n, const DivisorReport& d) {
    std::vector<DivisorEntry> all;
    for (const auto& e : d.entries) all.push_back({e.place, n * e.ord});
    DivisorReport r = make_divisor(std::move(all));
    r.expected_degree = n * d.expected_degree;
    return r;
}

std::pair<DivisorReport, DivisorReport> DivisorReport::split() const {
    std::vector<DivisorEntry> zeros, poles;
    for (const auto& e : entries) (e.ord > 0 ? zeros : poles).push_back({e.place, std::abs(e.ord)});
    DivisorReport z = make_divisor(std::move(zeros)), p = make_divisor(std::move(poles));
    z.expected_degree = z.degree;
    p.expected_degree = p.degree;
    return {z, p};
}

std::vector<Place> section_candidate_places(const GradedSection& s) {
    std::vector<Place> out = model_candidate_places(s.model);
    std::vector<Place> more = finite_support(s.value);
    out.insert(out.end(), more.begin(), more.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

DivisorReport divisor(const GradedSection& s) {
    std::vector<DivisorEntry> entries;
    for (const auto& v : section_candidate_places(s)) entries.push_back({v, ord_section(s, v)});
    DivisorReport r = make_divisor(std::move(entries));
    r.expected_degree = -2L * s.diff_degree + static_cast<long>(s.weight) * deg_omega(s.model);
    return r;
}

}  // namespace ellsurf
