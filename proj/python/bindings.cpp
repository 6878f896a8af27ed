// Python bindings for the divcard core: parsing, validation, completeness,
// privacy lint, emitters and the repository scanner.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "divcard/codes.hpp"
#include "divcard/emit.hpp"
#include "divcard/formatter.hpp"
#include "divcard/parser.hpp"
#include "divcard/scan.hpp"
#include "divcard/validate.hpp"

namespace py = pybind11;
using namespace divcard;

namespace {

py::dict spanDict(const SourceSpan& s) {
    py::dict d;
    d["file"] = s.file;
    d["start_line"] = s.startLine;
    d["start_col"] = s.startCol;
    d["end_line"] = s.endLine;
    d["end_col"] = s.endCol;
    return d;
}

py::dict diagnosticDict(const Diagnostic& d) {
    py::dict out;
    out["severity"] = d.severity == Severity::error ? "error" : "warning";
    out["code"] = d.code;
    out["message"] = d.message;
    out["span"] = spanDict(d.span);
    return out;
}

py::list diagnosticsList(const std::vector<Diagnostic>& diagnostics) {
    py::list out;
    for (const auto& d : diagnostics) out.append(diagnosticDict(d));
    return out;
}

template <typename T>
T unwrap(Result<T> result) {
    if (!result.ok()) throw py::value_error(result.error.code + ": " + result.error.message);
    return std::move(*result);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Software Diversity Card toolchain";

    py::class_<Card>(m, "Card")
        .def_property_readonly("project_name", [](const Card& c) { return c.projectName; })
        .def_property_readonly("description", [](const Card& c) { return c.description; })
        .def_property_readonly("team_count", [](const Card& c) { return c.teams.size(); })
        .def_property_readonly("participant_count",
                               [](const Card& c) { return c.participants.size(); })
        .def_property_readonly("ids", [](const Card& c) { return c.allIds(); })
        .def("format", [](const Card& c) { return formatCard(c); })
        .def("to_json", [](const Card& c) { return unwrap(emitJson(c)); })
        .def("to_markdown", [](const Card& c) { return unwrap(emitMarkdown(c)); })
        .def("validate",
             [](const Card& c) { return diagnosticsList(validate(c).diagnostics); })
        .def(
            "lint_privacy",
            [](const Card& c, int k) {
                py::list out;
                for (const auto& f : lintPrivacy(c, k)) {
                    py::dict d;
                    d["code"] = f.code;
                    d["subject"] = f.subject;
                    d["rationale"] = f.rationale;
                    out.append(d);
                }
                return out;
            },
            py::arg("k") = kDefaultPrivacyThreshold)
        .def("completeness",
             [](const Card& c) {
                 py::list out;
                 for (const auto& row : completeness(c).rows) {
                     py::dict d;
                     d["dimension"] = std::string(toToken(row.dimension));
                     d["populated_ratio"] = row.populatedRatio;
                     d["level"] = std::string(toToken(row.level));
                     d["note"] = row.note;
                     out.append(d);
                 }
                 return out;
             })
        .def("__eq__", [](const Card& a, const Card& b) { return a == b; })
        .def("__repr__", [](const Card& c) {
            return "<divcard.Card project=\"" + c.projectName + "\">";
        });

    m.def(
        "parse",
        [](const std::string& text, const std::string& filename) {
            auto result = parseCard(text, filename);
            return py::make_tuple(std::move(result.card),
                                  diagnosticsList(result.diagnostics));
        },
        py::arg("text"), py::arg("filename") = "<memory>",
        "Parse .divcard text; returns (card, diagnostics).");

    m.def("new_card",
          [](const std::string& name) { return unwrap(newEmptyCard(name)); });

    m.def("import_json", [](const std::string& text) { return unwrap(importJson(text)); });

    m.def("parse_date", [](const std::string& token) { return unwrap(parseDate(token)).toIso(); });

    m.def("lookup_country", [](const std::string& token) -> py::object {
        const auto* info = lookupCountry(token);
        if (!info) return py::none();
        return py::make_tuple(std::string(info->alpha2), std::string(info->name));
    });

    m.def("lookup_language", [](const std::string& token) -> py::object {
        const auto* info = lookupLanguage(token);
        if (!info) return py::none();
        return py::make_tuple(std::string(info->code), info->displayName());
    });

    m.def("match_community_file", [](const std::string& name) -> py::object {
        auto category = scan::matchCommunityFile(name);
        if (!category) return py::none();
        return py::str(std::string(scan::toToken(*category)));
    });

    m.def(
        "scan_path",
        [](const std::string& path, const std::string& collectedAt) {
            auto files = unwrap(scan::collectLocal(path));
            auto report = scan::makeReport(path, collectedAt, files,
                                           scan::classifyRule(files), scan::ScanBackend::rule);
            return scan::reportToJson(report);
        },
        py::arg("path"), py::arg("collected_at") = "1970-01-01T00:00:00Z",
        "Rule-scan a local repository; returns the report as JSON text.");

    m.def(
        "skeleton_from_path",
        [](const std::string& path, const std::string& projectName) {
            auto files = unwrap(scan::collectLocal(path));
            auto report =
                scan::makeReport(path, "1970-01-01T00:00:00Z", files, scan::classifyRule(files),
                                 scan::ScanBackend::rule);
            return formatCard(scan::skeletonCard(report, projectName));
        },
        py::arg("path"), py::arg("project_name"),
        "Scan a repository and render the skeleton card as .divcard text.");

    m.attr("PRIVACY_K_DEFAULT") = kDefaultPrivacyThreshold;
    m.attr("SCHEMA_VERSION") = kJsonSchemaVersion;
}
