#ifndef ELLSURF_CLI_MANIFEST_HPP
#define ELLSURF_CLI_MANIFEST_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellsurf/maninmap.hpp"

namespace ellsurf::cli {

// Key/value text with section headers:
//
//   [curve]
//   characteristic = 0
//   variable = "t"
//   f = "x*(x - 1)*(x - t)"
//
//   [cover]                       # optional chain, applied top to bottom
//   t = "2 - s^2/2"
//
//   [points]
//   P = "(2, s)"
//   Q = "3*P - O"                 # integer combinations of earlier points
//
//   [operator]                    # optional, over the base variable
//   A = "t*(1 - t)"
//   B = "1 - 2*t"
//   C = "-1/4"
//   F = "y/(2*(x - t)^2)"
//
//   [parameters]
//   n_max = 30
//   pole_bound = 4
//
// Values are double-quoted strings or bare integers; '#' starts a comment.
struct RawEntry {
    std::string key, value;
    int line;
};
struct RawSection {
    std::string name;
    std::vector<RawEntry> entries;
};
// Throws InputError with the offending line.
std::vector<RawSection> parse_sections(const std::string& text);

struct OperatorSpec {
    std::string A, B, C, F;
};

struct Manifest {
    ConstantField field;
    std::string base_variable;
    std::string variable;  // after the cover chain
    std::string curve_text;
    std::vector<std::pair<std::string, std::string>> cover_steps;
    std::vector<std::pair<std::string, std::string>> point_texts;
    std::optional<OperatorSpec> operator_text;
    int n_max = 30;
    int pole_bound = 4;

    // The curve over the base variable and after the cover; in characteristic p both are depressed.
    std::optional<WeierstrassModel> base_curve, curve;
    std::optional<CoverMap> cover;
    bool depressed = false;
    std::vector<std::pair<std::string, CurvePoint>> points;

    const WeierstrassModel& E() const { return *curve; }
    // Points on E(); throws InputError for an unknown name.
    const CurvePoint& point(const std::string& name) const;
    // The operator on E(): the given one transported along the cover, or find_pf on the base curve.
    PFOperator pf_operator() const;
};

Manifest parse_manifest(const std::string& text);
Manifest load_manifest(const std::string& path);

// CurveFunction in x, y and the variable; used for the witness F.
CurveFunction parse_curve_function(const std::string& text, const WeierstrassModel& E, const std::string& var);
std::string format_curve_function(const CurveFunction& g, const std::string& var);
std::string format_point(const CurvePoint& P, const std::string& var);

}  // namespace ellsurf::cli

#endif
