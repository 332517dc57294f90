#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace ratexp::cli {

/// One resolved invocation: which command, over which weight and label
/// domains, on which inputs, and how to print the result.
struct RunConfig {
    std::string command;
    std::string semiring = "int";         // boolean | int | rational | minplus
    std::string alphabet = "a,b";         // first (or only) alphabet, comma separated
    std::string alphabet2;                // nonempty selects the product monoid
    std::string expression;
    std::string expression2;              // equiv only
    std::string word;                     // eval only
    std::string letter;                   // derive only
    std::optional<std::size_t> max_len;
    std::string format = "text";          // text | json | dot
    bool keep_initial = false;            // derived: emit T_E instead of D_E
    std::string rational_star = "exact";  // exact | analytic
};

/// Exit status 0 on success/true, 1 on false/mismatch, 2 on usage,
/// parse, or validity errors (reported on `err`).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ratexp::cli
