#pragma once

#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "ratexp/errors.hpp"
#include "ratexp/monoid.hpp"
#include "ratexp/semiring.hpp"

namespace ratexp {

/// Immutable node of a weighted rational expression.  Nodes are interned:
/// only ExprPool creates them, and two structurally equal expressions are
/// the same pointer.  That pointer equality is the merge criterion used
/// throughout the derived-term construction.
template <Semiring S, Monoid M>
struct Expr {
    enum class Kind : unsigned char {
        zero,
        one,
        atom,
        left_scale,
        right_scale,
        sum,
        product,
        star,
    };

    Kind kind;
    typename M::Element element{};  // atom payload, length >= 1
    typename S::Weight scale{};     // left_scale / right_scale payload
    const Expr* left = nullptr;
    const Expr* right = nullptr;
};

template <Semiring S, Monoid M>
using ExprRef = const Expr<S, M>*;

/// Intern table and owner of expression nodes.  Concurrent reads are safe;
/// insertion is serialized by an internal mutex.
template <Semiring S, Monoid M>
class ExprPool {
public:
    using Node = Expr<S, M>;
    using Ref = const Node*;

    Ref zero() { return intern({Node::Kind::zero}, ""); }
    Ref one() { return intern({Node::Kind::one}, ""); }

    Ref atom(typename M::Element m) {
        if (M::length(m) == 0)
            throw StructureError("atom must have positive length");
        Node node{Node::Kind::atom};
        node.element = std::move(m);
        return intern(std::move(node), M::key(node.element));
    }

    Ref left_scale(typename S::Weight k, Ref child) {
        Node node{Node::Kind::left_scale};
        node.scale = std::move(k);
        node.left = child;
        return intern(std::move(node), S::str(node.scale));
    }

    Ref right_scale(Ref child, typename S::Weight k) {
        Node node{Node::Kind::right_scale};
        node.scale = std::move(k);
        node.left = child;
        return intern(std::move(node), S::str(node.scale));
    }

    Ref sum(Ref l, Ref r) {
        Node node{Node::Kind::sum};
        node.left = l;
        node.right = r;
        return intern(std::move(node), "");
    }

    Ref product(Ref l, Ref r) {
        Node node{Node::Kind::product};
        node.left = l;
        node.right = r;
        return intern(std::move(node), "");
    }

    Ref star(Ref child) {
        Node node{Node::Kind::star};
        node.left = child;
        return intern(std::move(node), "");
    }

private:
    using Key = std::tuple<unsigned char, const void*, const void*, std::string>;

    Ref intern(Node node, std::string payload) {
        Key key{static_cast<unsigned char>(node.kind), node.left, node.right,
                std::move(payload)};
        std::lock_guard<std::mutex> lock(mutex_);
        auto [it, inserted] = index_.try_emplace(std::move(key), nullptr);
        if (inserted) {
            nodes_.push_back(std::move(node));
            it->second = &nodes_.back();
        }
        return it->second;
    }

    std::deque<Node> nodes_;
    std::map<Key, Ref> index_;
    std::mutex mutex_;
};

/// Number of atom leaves.
template <Semiring S, Monoid M>
std::size_t literal_length(ExprRef<S, M> e) {
    using Kind = typename Expr<S, M>::Kind;
    switch (e->kind) {
        case Kind::zero:
        case Kind::one:
            return 0;
        case Kind::atom:
            return 1;
        case Kind::left_scale:
        case Kind::right_scale:
        case Kind::star:
            return literal_length<S, M>(e->left);
        case Kind::sum:
        case Kind::product:
            return literal_length<S, M>(e->left) + literal_length<S, M>(e->right);
    }
    return 0;
}

/// Constant term, or nullopt when the expression is not valid (some starred
/// subexpression has a non-starrable constant term).
template <Semiring S, Monoid M>
std::optional<typename S::Weight> constant_term(ExprRef<S, M> e) {
    using Kind = typename Expr<S, M>::Kind;
    switch (e->kind) {
        case Kind::zero:
            return S::zero();
        case Kind::one:
            return S::one();
        case Kind::atom:
            return S::zero();
        case Kind::left_scale: {
            auto c = constant_term<S, M>(e->left);
            if (!c) return std::nullopt;
            return S::mul(e->scale, *c);
        }
        case Kind::right_scale: {
            auto c = constant_term<S, M>(e->left);
            if (!c) return std::nullopt;
            return S::mul(*c, e->scale);
        }
        case Kind::sum: {
            auto l = constant_term<S, M>(e->left);
            auto r = constant_term<S, M>(e->right);
            if (!l || !r) return std::nullopt;
            return S::add(*l, *r);
        }
        case Kind::product: {
            auto l = constant_term<S, M>(e->left);
            auto r = constant_term<S, M>(e->right);
            if (!l || !r) return std::nullopt;
            return S::mul(*l, *r);
        }
        case Kind::star: {
            auto c = constant_term<S, M>(e->left);
            if (!c) return std::nullopt;
            return S::star(*c);
        }
    }
    return std::nullopt;
}

template <Semiring S, Monoid M>
bool valid(ExprRef<S, M> e) {
    return constant_term<S, M>(e).has_value();
}

// ---------------------------------------------------------------------------
// Printing.  Emits the same grammar the parser reads, so parse . print is
// the identity on interned nodes.  Precedence: + < . < <k>E < postfix.

namespace detail {

template <Semiring S, Monoid M>
void print_to(ExprRef<S, M> e, int min_prec, std::string& out) {
    using Kind = typename Expr<S, M>::Kind;
    auto wrap = [&](int prec, auto&& body) {
        bool parens = prec < min_prec;
        if (parens) out += '(';
        body();
        if (parens) out += ')';
    };
    switch (e->kind) {
        case Kind::zero:
            out += "\\z";
            return;
        case Kind::one:
            out += "\\e";
            return;
        case Kind::atom:
            out += M::atom_str(e->element);
            return;
        case Kind::sum:
            wrap(0, [&] {
                print_to<S, M>(e->left, 0, out);
                out += '+';
                print_to<S, M>(e->right, 1, out);
            });
            return;
        case Kind::product:
            wrap(1, [&] {
                print_to<S, M>(e->left, 1, out);
                out += '.';
                print_to<S, M>(e->right, 2, out);
            });
            return;
        case Kind::left_scale:
            wrap(2, [&] {
                out += '<';
                out += S::str(e->scale);
                out += '>';
                print_to<S, M>(e->left, 2, out);
            });
            return;
        case Kind::right_scale:
            wrap(3, [&] {
                print_to<S, M>(e->left, 3, out);
                out += '<';
                out += S::str(e->scale);
                out += '>';
            });
            return;
        case Kind::star:
            wrap(3, [&] {
                print_to<S, M>(e->left, 3, out);
                out += '*';
            });
            return;
    }
}

}  // namespace detail

template <Semiring S, Monoid M>
std::string print(ExprRef<S, M> e) {
    std::string out;
    detail::print_to<S, M>(e, 0, out);
    return out;
}

/// Throws ValidityError quoting the offending starred subexpression and its
/// non-starrable constant term.
template <Semiring S, Monoid M>
typename S::Weight require_valid(ExprRef<S, M> e) {
    using Kind = typename Expr<S, M>::Kind;
    if (e->kind == Kind::star) {
        auto c = require_valid<S, M>(e->left);
        auto starred = S::star(c);
        if (!starred)
            throw ValidityError("expression is not valid: constant term " + S::str(c) +
                                " of '" + print<S, M>(e->left) + "' is not starrable");
        return *starred;
    }
    switch (e->kind) {
        case Kind::zero:
            return S::zero();
        case Kind::one:
            return S::one();
        case Kind::atom:
            return S::zero();
        case Kind::left_scale:
            return S::mul(e->scale, require_valid<S, M>(e->left));
        case Kind::right_scale:
            return S::mul(require_valid<S, M>(e->left), e->scale);
        case Kind::sum:
            return S::add(require_valid<S, M>(e->left), require_valid<S, M>(e->right));
        case Kind::product:
            return S::mul(require_valid<S, M>(e->left), require_valid<S, M>(e->right));
        default:
            return S::zero();  // unreachable; star handled above
    }
}

// ---------------------------------------------------------------------------
// Parsing.
//
//   expr   := term ('+' term)*
//   term   := factor ('.'? factor)*
//   factor := '<' weight '>' factor | base ('*' | '<' weight '>')*
//   base   := '\z' | '\e' | atom | '(' expr ')'
//   atom   := letter | letter '|' letter | '(' word ('|' word)? ')'
//
// '\e' stands for an empty atom component in pair atoms.  A parenthesized
// group is read as an atom exactly when its content is a word, or a pair of
// words separated by '|'.

namespace detail {

template <Semiring S, Monoid M>
class Parser {
public:
    Parser(ExprPool<S, M>& pool, const M& monoid, std::string_view text)
        : pool_(pool), monoid_(monoid), text_(text) {}

    ExprRef<S, M> run() {
        auto e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) { throw ParseError(pos_, what); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char peek(std::size_t ahead) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    static bool is_word_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c));
    }
    bool starts_factor() const {
        char c = peek();
        return is_word_char(c) || c == '(' || c == '<' || c == '\\';
    }

    ExprRef<S, M> parse_expr() {
        auto e = parse_term();
        skip_ws();
        while (eat('+')) {
            e = pool_.sum(e, parse_term());
            skip_ws();
        }
        return e;
    }

    ExprRef<S, M> parse_term() {
        skip_ws();
        auto e = parse_factor();
        for (;;) {
            skip_ws();
            if (eat('.')) {
                e = pool_.product(e, parse_factor());
            } else if (starts_factor()) {
                e = pool_.product(e, parse_factor());
            } else {
                return e;
            }
        }
    }

    ExprRef<S, M> parse_factor() {
        skip_ws();
        if (peek() == '<') {
            auto k = parse_weight();
            return pool_.left_scale(k, parse_factor());
        }
        auto e = parse_base();
        for (;;) {
            skip_ws();
            if (eat('*')) {
                e = pool_.star(e);
            } else if (peek() == '<') {
                e = pool_.right_scale(e, parse_weight());
            } else {
                return e;
            }
        }
    }

    typename S::Weight parse_weight() {
        std::size_t start = pos_;
        if (!eat('<')) fail("expected '<'");
        auto end = text_.find('>', pos_);
        if (end == std::string_view::npos) fail("unterminated weight literal");
        auto literal = text_.substr(pos_, end - pos_);
        auto w = S::parse(literal);
        if (!w) {
            pos_ = start + 1;
            fail("invalid weight literal '" + std::string(literal) + "'");
        }
        pos_ = end + 1;
        return *w;
    }

    ExprRef<S, M> parse_base() {
        skip_ws();
        if (peek() == '\\') {
            if (peek(1) == 'z') {
                pos_ += 2;
                return pool_.zero();
            }
            if (peek(1) == 'e') {
                if (peek(2) == '|') {
                    return parse_pair_atom();
                }
                pos_ += 2;
                return pool_.one();
            }
            fail("expected \\z or \\e");
        }
        if (peek() == '(') return parse_group();
        if (is_word_char(peek())) {
            if (peek(1) == '|') return parse_pair_atom();
            std::size_t at = pos_;
            char letter = text_[pos_++];
            return make_atom({std::string(1, letter)}, at);
        }
        fail("expected expression");
    }

    // letter '|' letter with '\e' allowed on either side
    ExprRef<S, M> parse_pair_atom() {
        std::size_t at = pos_;
        auto component = [&]() -> std::string {
            if (peek() == '\\' && peek(1) == 'e') {
                pos_ += 2;
                return {};
            }
            if (!is_word_char(peek())) fail("expected letter or \\e");
            return std::string(1, text_[pos_++]);
        };
        std::string first = component();
        if (!eat('|')) fail("expected '|'");
        std::string second = component();
        return make_atom({first, second}, at);
    }

    // '(' ... ')': an atom when the content is word ('|' word)?, otherwise a
    // parenthesized expression.
    ExprRef<S, M> parse_group() {
        std::size_t at = pos_;
        std::size_t scan = pos_ + 1;
        std::vector<std::string> words;
        std::string current;
        bool atom_like = true;
        bool saw_bar = false;
        while (scan < text_.size() && text_[scan] != ')') {
            char c = text_[scan];
            if (is_word_char(c)) {
                current += c;
                ++scan;
            } else if (c == '\\' && scan + 1 < text_.size() && text_[scan + 1] == 'e') {
                scan += 2;
            } else if (c == '|' && !saw_bar) {
                saw_bar = true;
                words.push_back(std::move(current));
                current.clear();
                ++scan;
            } else {
                atom_like = false;
                break;
            }
        }
        if (atom_like && scan < text_.size()) {
            words.push_back(std::move(current));
            // A lone '(\e)' reads more naturally as a parenthesized unit.
            bool empty_single = !saw_bar && words[0].empty();
            if (!empty_single) {
                pos_ = scan + 1;
                return make_atom(words, at);
            }
        }
        ++pos_;  // '('
        auto e = parse_expr();
        skip_ws();
        if (!eat(')')) fail("expected ')'");
        return e;
    }

    ExprRef<S, M> make_atom(const std::vector<std::string>& words, std::size_t at) {
        auto check_letters = [&](const std::string& word, const std::vector<char>& letters) {
            for (char c : word)
                if (!std::binary_search(letters.begin(), letters.end(), c)) {
                    pos_ = at;
                    fail(std::string("letter '") + c + "' not in alphabet");
                }
        };
        typename M::Element element;
        if constexpr (M::is_free) {
            if (words.size() != 1) {
                pos_ = at;
                fail("pair atom over a free monoid");
            }
            check_letters(words[0], monoid_.letters());
            element = words[0];
        } else {
            check_letters(words[0], monoid_.first_letters());
            std::string second = words.size() > 1 ? words[1] : std::string{};
            check_letters(second, monoid_.second_letters());
            element = {words[0], second};
        }
        if (M::length(element) == 0) {
            pos_ = at;
            fail("atom must have positive length");
        }
        return pool_.atom(std::move(element));
    }

    ExprPool<S, M>& pool_;
    const M& monoid_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

template <Semiring S, Monoid M>
ExprRef<S, M> parse(ExprPool<S, M>& pool, const M& monoid, std::string_view text) {
    return detail::Parser<S, M>(pool, monoid, text).run();
}

}  // namespace ratexp
