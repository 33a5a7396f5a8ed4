#pragma once

// JSON presentation documents:
//   {"prime": 3, "dimension": 2, "variables": ["T1", "T2"], "generators": 1,
//    "relations": [["T1"], ["3*T2^2 - 1"]],
//    "skew": {"chi": 4}, "complex": false}

#include "iwasawa/module.hpp"
#include "iwasawa/skew.hpp"
#include "iwasawa/spectral.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace iwa {

/// Integer polynomial in the named variables; '*' optional, '^' for powers.
/// Throws ParseError with the offset into `text`.
Poly parse_polynomial(const std::string& text, const std::vector<std::string>& variables);

struct PresentationDocument {
    unsigned prime = 3;
    std::size_t dimension = 0;
    std::vector<std::string> variables;
    std::size_t generators = 0;
    PolyMatrix relations;
    std::optional<Integer> skew_chi;
    bool complex = false;
};

/// Throws ParseError on malformed JSON or field contents.
PresentationDocument parse_document(const std::string& text);
nlohmann::json document_json(const PresentationDocument& doc);
/// Canonical text: sorted keys, two-space indent, normalized polynomials.
std::string print_document(const PresentationDocument& doc);

PresentationDocument document_from(const ModulePresentation& m);
PresentationDocument document_from(const SkewModulePresentation& m);
PresentationDocument document_from(const PerfectComplex& c);

ModulePresentation to_module(const PresentationDocument& doc, TruncationWindow window = {});
SkewModulePresentation to_skew_module(const PresentationDocument& doc, TruncationWindow window = {});
PerfectComplex to_complex(const PresentationDocument& doc, TruncationWindow window = {});

}  // namespace iwa
