// Source spans and diagnostics shared by every stage of the pipeline.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace press {

/// 1-based, inclusive line range within one source file.
struct SourceSpan {
    int start_line = 1;
    int end_line = 1;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

inline SourceSpan line_span(int line) { return SourceSpan{line, line}; }

enum class Severity { info, warning, error };

inline const char* severity_name(Severity s) {
    switch (s) {
    case Severity::info: return "info";
    case Severity::warning: return "warning";
    case Severity::error: return "error";
    }
    return "error";
}

/// One problem found anywhere in the pipeline. `code` is a short stable
/// identifier (unknown-directive, bad-frontmatter, unclosed-fence, ...);
/// `source` is the file the span refers to, filled in by the caller that
/// knows it.
struct Diagnostic {
    Severity severity = Severity::warning;
    std::string code;
    std::string message;
    SourceSpan span;
    std::string source;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

inline Diagnostic make_error(std::string code, std::string message, SourceSpan span) {
    return Diagnostic{Severity::error, std::move(code), std::move(message), span, {}};
}

inline Diagnostic make_warning(std::string code, std::string message, SourceSpan span) {
    return Diagnostic{Severity::warning, std::move(code), std::move(message), span, {}};
}

inline Diagnostic make_info(std::string code, std::string message, SourceSpan span) {
    return Diagnostic{Severity::info, std::move(code), std::move(message), span, {}};
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

inline bool has_warnings(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::warning; });
}

/// Formats one diagnostic the way the CLI prints it: file:line: severity[code]: message
inline std::string format_diagnostic(const Diagnostic& d) {
    std::string out;
    out += d.source.empty() ? "<input>" : d.source;
    out += ':';
    out += std::to_string(d.span.start_line);
    out += ": ";
    out += severity_name(d.severity);
    out += '[';
    out += d.code;
    out += "]: ";
    out += d.message;
    return out;
}

inline void append_diags(std::vector<Diagnostic>& into, std::vector<Diagnostic> from) {
    for (auto& d : from)
        into.push_back(std::move(d));
}

}  // namespace press
