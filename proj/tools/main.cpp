#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--file", "cannot read '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
}

}  // namespace

int main(int argc, char** argv) {
    ratexp::cli::RunConfig cfg;
    std::string file;
    long long max_len = -1;

    CLI::App app{"weighted rational expression compiler"};
    app.require_subcommand(1);
    app.add_option("--semiring", cfg.semiring, "boolean | int | rational | minplus")
        ->capture_default_str();
    app.add_option("--alphabet", cfg.alphabet, "letters of the (first) alphabet")
        ->capture_default_str();
    app.add_option("--alphabet2", cfg.alphabet2, "second alphabet; selects pair labels");
    auto* max_len_option =
        app.add_option("--max-len", max_len, "length bound for series commands");
    app.add_option("--format", cfg.format, "text | json | dot")->capture_default_str();
    app.add_option("--file", file, "read the expression from a file");
    app.add_option("--rational-star", cfg.rational_star,
                   "exact (star at 0 only) | analytic (1/(1-k))")
        ->capture_default_str();

    std::string expr, expr2, word;
    auto add_expr = [&](CLI::App* sub) {
        sub->add_option("EXPR", expr, "rational expression");
    };

    add_expr(app.add_subcommand("standard", "emit the position automaton"));
    auto* derived = app.add_subcommand("derived", "emit the derived-term automaton");
    add_expr(derived);
    derived->add_flag("--keep-initial", cfg.keep_initial,
                      "emit the standard derived-term automaton instead");
    add_expr(app.add_subcommand("terms", "list the derived terms"));
    auto* eval = app.add_subcommand("eval", "coefficient of a word");
    add_expr(eval);
    eval->add_option("WORD", word, "monoid element");
    add_expr(app.add_subcommand("series", "truncated series of the expression"));
    auto* derive = app.add_subcommand("derive", "derivation by a letter");
    add_expr(derive);
    derive->add_option("--letter", cfg.letter, "letter to derive by")->required();
    add_expr(app.add_subcommand("differential", "monomials of the differential"));
    add_expr(app.add_subcommand("reconcile", "compare derivation against the differential"));
    add_expr(app.add_subcommand("witness", "transfer matrix from the position automaton"));
    auto* equiv = app.add_subcommand("equiv", "bounded coefficient-wise equality");
    equiv->add_option("EXPR1", expr, "first expression");
    equiv->add_option("EXPR2", expr2, "second expression")->required();

    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
        cfg.command = app.get_subcommands().front()->get_name();
        cfg.expression = file.empty() ? expr : read_file(file);
        cfg.expression2 = expr2;
        cfg.word = word;
        if (max_len_option->count() > 0) {
            if (max_len < 0) {
                std::cerr << "error: --max-len must be >= 0\n";
                return 2;
            }
            cfg.max_len = static_cast<std::size_t>(max_len);
        }
        if (cfg.expression.empty()) {
            std::cerr << "error: no expression given (positional EXPR or --file)\n";
            return 2;
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    return ratexp::cli::run(cfg, std::cout, std::cerr);
}
