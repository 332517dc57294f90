#include "cli.hpp"

#include <ostream>
#include <sstream>
#include <vector>

#include "ratexp/derivation.hpp"
#include "ratexp/derived.hpp"
#include "ratexp/export.hpp"
#include "ratexp/series.hpp"
#include "ratexp/standard.hpp"

namespace ratexp::cli {

namespace {

std::vector<char> parse_letters(const std::string& spec) {
    std::vector<char> out;
    std::stringstream stream(spec);
    std::string part;
    while (std::getline(stream, part, ',')) {
        if (part.size() != 1)
            throw StructureError("alphabet letters must be single characters, got '" + part +
                                 "'");
        out.push_back(part[0]);
    }
    return out;
}

template <Semiring S, Monoid M>
std::size_t oracle_bound(const RunConfig& cfg, const M& monoid) {
    if (cfg.max_len) return *cfg.max_len;
    if constexpr (M::is_free) return monoid.letters().size() <= 2 ? 6 : 4;
    return 4;
}

template <Semiring S, Monoid M>
void emit_automaton(const RunConfig& cfg, const WeightedAutomaton<S, M>& aut,
                    std::ostream& out) {
    if (cfg.format == "json")
        out << to_json(aut).dump(2) << "\n";
    else if (cfg.format == "dot")
        out << to_dot(aut);
    else
        out << to_text(aut);
}

template <Semiring S, Monoid M>
const std::vector<char>& derivation_letters(const M& monoid) {
    if constexpr (M::is_free)
        return monoid.letters();
    else
        throw UnsupportedError("derivation is defined over free monoids only");
}

template <Semiring S, Monoid M>
int run_typed(const RunConfig& cfg, const M& monoid, std::ostream& out, std::ostream& err) {
    ExprPool<S, M> pool;
    auto e = parse(pool, monoid, cfg.expression);
    std::size_t bound = oracle_bound<S>(cfg, monoid);

    if (cfg.command == "standard") {
        emit_automaton(cfg, position_automaton<S, M>(e).aut, out);
        return 0;
    }
    if (cfg.command == "derived") {
        auto d = cfg.keep_initial ? standard_derived_term_automaton(pool, e)
                                  : derived_term_automaton(pool, e);
        emit_automaton(cfg, d.aut, out);
        return 0;
    }
    if (cfg.command == "terms") {
        for (auto k : derived_terms(pool, e)) out << print<S, M>(k) << "\n";
        return 0;
    }
    if (cfg.command == "eval") {
        auto word = monoid.parse_element(cfg.word);
        auto series = denote<S, M>(e, M::length(word));
        out << S::str(series.coeff(word)) << "\n";
        return 0;
    }
    if (cfg.command == "series") {
        auto series = denote<S, M>(e, bound);
        for (const auto& [m, w] : series.coeffs()) out << S::str(w) << "\t" << M::str(m) << "\n";
        return 0;
    }
    if (cfg.command == "derive") {
        if (cfg.letter.size() != 1)
            throw StructureError("--letter expects a single letter");
        auto combination = derive(pool, e, cfg.letter[0]);
        for (const auto& [t, w] : combination.entries())
            out << S::str(w) << "\t" << print<S, M>(t) << "\n";
        return 0;
    }
    if (cfg.command == "differential") {
        auto form = differential(pool, e);
        for (const auto& [t, p] : form.entries())
            for (const auto& [m, w] : p.terms())
                out << S::str(w) << "\t" << M::atom_str(m) << "\t" << print<S, M>(t) << "\n";
        return 0;
    }
    if (cfg.command == "reconcile") {
        bool all_ok = true;
        for (char letter : derivation_letters<S>(monoid)) {
            bool ok = reconcile(pool, e, letter);
            all_ok = all_ok && ok;
            out << letter << "\t" << (ok ? "ok" : "mismatch") << "\n";
        }
        return all_ok ? 0 : 1;
    }
    if (cfg.command == "witness") {
        auto d = derived_term_automaton(pool, e);
        auto s = position_automaton<S, M>(e);
        auto x = d.from_standard.template matrix<S>();
        bool conjugate = is_conjugate(s.aut, d.aut, x);
        if (cfg.format == "json") {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& row : x) {
                nlohmann::json line = nlohmann::json::array();
                for (const auto& w : row) line.push_back(S::str(w));
                rows.push_back(line);
            }
            out << nlohmann::json{{"transfer", rows}, {"conjugate", conjugate}}.dump(2) << "\n";
        } else {
            for (const auto& row : x) {
                for (std::size_t i = 0; i < row.size(); ++i)
                    out << (i ? "\t" : "") << S::str(row[i]);
                out << "\n";
            }
            out << "conjugate\t" << (conjugate ? "true" : "false") << "\n";
        }
        return conjugate ? 0 : 1;
    }
    if (cfg.command == "equiv") {
        auto other = parse(pool, monoid, cfg.expression2);
        auto lhs = denote<S, M>(e, bound);
        auto rhs = denote<S, M>(other, bound);
        for (const auto& m : monoid.enumerate_up_to(bound)) {
            if (!S::eq(lhs.coeff(m), rhs.coeff(m))) {
                out << "differ at " << M::str(m) << ": " << S::str(lhs.coeff(m)) << " vs "
                    << S::str(rhs.coeff(m)) << "\n";
                return 1;
            }
        }
        out << "equivalent up to length " << bound << "\n";
        return 0;
    }
    err << "error: unknown command '" << cfg.command << "'\n";
    return 2;
}

template <Semiring S>
int with_semiring(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto letters = parse_letters(cfg.alphabet);
    if (cfg.alphabet2.empty()) {
        FreeMonoid monoid(std::move(letters));
        return run_typed<S>(cfg, monoid, out, err);
    }
    ProductMonoid monoid(std::move(letters), parse_letters(cfg.alphabet2));
    return run_typed<S>(cfg, monoid, out, err);
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.semiring == "boolean") return with_semiring<BooleanSemiring>(cfg, out, err);
        if (cfg.semiring == "int") return with_semiring<IntegerSemiring>(cfg, out, err);
        if (cfg.semiring == "rational") {
            if (cfg.rational_star == "analytic")
                return with_semiring<AnalyticRationalSemiring>(cfg, out, err);
            if (cfg.rational_star == "exact")
                return with_semiring<RationalSemiring>(cfg, out, err);
            err << "error: unknown rational-star mode '" << cfg.rational_star << "'\n";
            return 2;
        }
        if (cfg.semiring == "minplus") return with_semiring<MinPlusSemiring>(cfg, out, err);
        err << "error: unknown semiring '" << cfg.semiring << "'\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace ratexp::cli
