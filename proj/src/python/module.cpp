#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ellsurf/cli/commands.hpp"
#include "ellsurf/error.hpp"
#include "ellsurf/expr.hpp"
#include "ellsurf/pdescent.hpp"

namespace py = pybind11;
using namespace ellsurf;
using namespace ellsurf::cli;

namespace {

py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(to_json_text(j)); }

class Curve {
public:
    explicit Curve(const std::string& manifest_text) : m_(parse_manifest(manifest_text)) {}
    static Curve from_file(const std::filesystem::path& path) { return Curve(load_manifest(path.string())); }

    std::uint32_t characteristic() const { return m_.field.characteristic(); }
    const std::string& variable() const { return m_.variable; }
    bool depressed() const { return m_.depressed; }

    std::vector<std::string> point_names() const {
        std::vector<std::string> out;
        for (const auto& [name, P] : m_.points) out.push_back(name);
        return out;
    }
    std::string point(const std::string& name) const { return format_point(m_.point(name), m_.variable); }

    std::string j_invariant() const { return str(m_.E().j_invariant()); }
    std::string discriminant() const { return str(m_.E().discriminant()); }
    int deg_omega() const { return ellsurf::deg_omega(m_.E()); }
    bool semistable() const { return is_semistable(m_.E()); }

    py::dict pf_operator() const {
        PFOperator L = m_.pf_operator();
        py::dict d;
        d["A"] = str(L.A);
        d["B"] = str(L.B);
        d["C"] = str(L.C);
        d["F"] = format_curve_function(L.F, m_.variable);
        return d;
    }

    py::object manin(const std::string& name) const {
        return to_python(section_json(manin_section(m_.E(), m_.pf_operator(), m_.point(name)), m_.variable));
    }
    py::object manin_divisor(const std::string& name) const {
        GradedSection s = manin_section(m_.E(), m_.pf_operator(), m_.point(name));
        if (s.is_zero()) return py::none();
        return to_python(divisor_json(divisor(s), m_.variable));
    }
    std::string mu(const std::string& name) const { return str(ellsurf::mu(m_.E(), m_.point(name))); }

    py::list exceptional_set() const {
        py::list out;
        for (const auto& e : ellsurf::exceptional_set(m_.E()).places) {
            py::dict row = to_python(place_json(e.place, m_.variable));
            row["reason"] = to_string(e.reason);
            out.append(row);
        }
        return out;
    }

private:
    explicit Curve(Manifest m) : m_(std::move(m)) {}
    std::string str(const FieldElement& f) const { return format_field_element(f, m_.variable); }

    Manifest m_;
};

py::tuple run_command(const std::string& command, const std::string& text, std::optional<int> n_max,
                      std::optional<int> pole_bound, std::optional<std::string> point) {
    Outcome o = run(command, text, Options{n_max, pole_bound, point});
    return py::make_tuple(to_python(o.document), o.exit_code);
}

}  // namespace

PYBIND11_MODULE(_ellsurf, m) {
    m.doc() = "Exact Manin maps and tangency data for elliptic surfaces over the line";

    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
    static py::exception<HypothesisError> hypothesis_error(m, "HypothesisError", error.ptr());
    static py::exception<NotFound> not_found(m, "NotFound", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DivisionByZero& e) {
            PyErr_SetString(PyExc_ZeroDivisionError, e.what());
        } catch (const InputError& e) {
            input_error(e.what());
        } catch (const HypothesisError& e) {
            hypothesis_error(e.what());
        } catch (const NotFound& e) {
            not_found(e.what());
        } catch (const Error& e) {
            error(e.what());
        }
    });

    m.def("commands", &command_names, "Names accepted by run().");
    m.def("run", &run_command, py::arg("command"), py::arg("manifest"), py::arg("n_max") = py::none(),
          py::arg("pole_bound") = py::none(), py::arg("point") = py::none(),
          "Run a CLI command on manifest text; returns (document, exit_code).");

    py::class_<Curve>(m, "Curve")
        .def(py::init<const std::string&>(), py::arg("manifest"))
        .def_static("from_file", &Curve::from_file, py::arg("path"))
        .def_property_readonly("characteristic", &Curve::characteristic)
        .def_property_readonly("variable", &Curve::variable)
        .def_property_readonly("depressed", &Curve::depressed)
        .def_property_readonly("points", &Curve::point_names)
        .def("point", &Curve::point, py::arg("name"))
        .def("j_invariant", &Curve::j_invariant)
        .def("discriminant", &Curve::discriminant)
        .def("deg_omega", &Curve::deg_omega)
        .def("semistable", &Curve::semistable)
        .def("pf_operator", &Curve::pf_operator)
        .def("manin", &Curve::manin, py::arg("point"))
        .def("manin_divisor", &Curve::manin_divisor, py::arg("point"))
        .def("mu", &Curve::mu, py::arg("point"))
        .def("exceptional_set", &Curve::exceptional_set);
}
