#pragma once

#include <string>
#include <string_view>

#include "rex/ast.hpp"

namespace rex {

enum class DiagnosticKind : std::uint8_t {
    Syntax,
    UnsupportedConstruct,
    NonBmpLiteral,
    BadLoopBounds,
};

struct ParseDiagnostics {
    std::size_t position = 0;  // byte offset into the pattern
    std::string message;
    DiagnosticKind kind = DiagnosticKind::Syntax;

    // "offset: kind: message"
    std::string render() const;
};

enum class Anchor : std::uint8_t {
    InputStart,      // \A
    InputEnd,        // \z
    InputEndLine,    // \Z
    LineStart,       // ^
    LineEnd,         // $
    WordBorder,      // \b
    NonWordBorder,   // \B
};

// Lookaround expansion of the standard anchors.
const Node* desugar_anchor(Builder& b, Anchor a);

// Parses the extended concrete syntax (literals, classes, loops, groups,
// lookarounds, anchors, plus '&' intersection and '~' complement) into a
// canonical node. Returns nullptr and fills diag on failure.
const Node* parse(Builder& b, std::string_view pattern, ParseDiagnostics* diag);

}  // namespace rex
