#include "pcaforge/syntax.hpp"

#include <cctype>
#include <charconv>
#include <vector>

#include "pcaforge/named.hpp"
#include "pcaforge/stdlib.hpp"

namespace pcaforge {

namespace {

class Parser {
public:
    Parser(std::string_view text, const NameResolver& names) : text_(text), names_(names) {}

    Term run() {
        Term t = parse_app();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool starts_atom() {
        skip_space();
        if (pos_ >= text_.size()) {
            return false;
        }
        char c = text_[pos_];
        return c == 'S' || c == 'K' || c == 'I' || c == 'a' || c == 'x' || c == '#' || c == 'z' || c == '(' ||
               c == '$';
    }

    // Nested parentheses are the only source of recursion, so depth is bounded
    // by the input's bracket nesting rather than its length.
    Term parse_app() {
        if (!starts_atom()) {
            fail(pos_ >= text_.size() ? "unexpected end of input" : "expected a term");
        }
        Term t = parse_atom();
        while (starts_atom()) {
            t = Term::app(std::move(t), parse_atom());
        }
        return t;
    }

    std::uint32_t parse_nat() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a number");
        }
        std::uint32_t value = 0;
        auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || end != text_.data() + pos_) {
            pos_ = start;
            fail("number out of range");
        }
        return value;
    }

    void expect(std::string_view s) {
        skip_space();
        if (text_.substr(pos_, s.size()) != s) {
            fail("expected '" + std::string(s) + "'");
        }
        pos_ += s.size();
    }

    Term parse_zeta() {
        expect("[");
        std::vector<Perm::Pair> pairs;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ']') {
            ++pos_;
            return Term::oracle(Perm{});
        }
        const std::size_t start = pos_;
        while (true) {
            skip_space();
            std::uint32_t src = parse_nat();
            expect("->");
            skip_space();
            std::uint32_t dst = parse_nat();
            pairs.emplace_back(src, dst);
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == ',') {
                ++pos_;
                continue;
            }
            expect("]");
            break;
        }
        try {
            return Term::oracle(Perm::from_pairs(std::move(pairs)));
        } catch (const std::invalid_argument& e) {
            throw ParseError(start, e.what());
        }
    }

    Term parse_atom() {
        skip_space();
        const std::size_t start = pos_;
        char c = text_[pos_++];
        switch (c) {
            case 'S':
                return Term::s();
            case 'K':
                return Term::k();
            case 'I':
                return stdlib::identity();
            case 'a': {
                std::uint32_t i = parse_nat();
                if (i == 0) {
                    pos_ = start;
                    fail("atom indices start at 1");
                }
                return Term::atom(i);
            }
            case 'x':
                return Term::var(parse_nat());
            case '#':
                return numeral(parse_nat());
            case 'z':
                return parse_zeta();
            case '$': {
                std::size_t name_start = pos_;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                    ++pos_;
                }
                std::string_view name = text_.substr(name_start, pos_ - name_start);
                auto found = names_ ? names_(name) : lookup_named(name);
                if (!found) {
                    pos_ = start;
                    fail("unknown name $" + std::string(name));
                }
                return *found;
            }
            case '(': {
                Term t = parse_app();
                expect(")");
                return t;
            }
            default:
                pos_ = start;
                fail("unexpected '" + std::string(1, c) + "'");
        }
    }

    std::string_view text_;
    const NameResolver& names_;
    std::size_t pos_ = 0;
};

void print_leaf(const Term& t, std::string& out) {
    switch (t.kind()) {
        case TermKind::S:
            out += 'S';
            break;
        case TermKind::K:
            out += 'K';
            break;
        case TermKind::Var:
            out += 'x';
            out += std::to_string(t.index());
            break;
        case TermKind::Atom:
            out += 'a';
            out += std::to_string(t.index());
            break;
        case TermKind::Oracle: {
            std::string perm = to_string(t.perm());
            out += 'z';
            out += perm;
            break;
        }
        case TermKind::App:
            break;
    }
}

}  // namespace

Term parse(std::string_view text, const NameResolver& names) { return Parser(text, names).run(); }

std::string print(const Term& root, PrintOptions options) {
    // Work items: a term to emit, or a literal closing parenthesis.
    enum class Emit { Term, Space, Close };
    struct Item {
        const Term* term;
        Emit emit;
        bool wrap;
    };
    std::string out;
    std::vector<Item> stack{{&root, Emit::Term, false}};
    while (!stack.empty()) {
        Item item = stack.back();
        stack.pop_back();
        if (item.emit == Emit::Close) {
            out += ')';
            continue;
        }
        if (item.emit == Emit::Space) {
            out += ' ';
            continue;
        }
        const Term& t = *item.term;
        if (options.fold_numerals && t.is_app()) {
            if (auto n = numeral_value(t); n && *n > 0) {
                out += '#';
                out += std::to_string(*n);
                continue;
            }
        }
        if (!t.is_app()) {
            print_leaf(t, out);
            continue;
        }
        if (item.wrap) {
            out += '(';
            stack.push_back({nullptr, Emit::Close, false});
        }
        // Flatten the left spine: head a1 a2 ... an.
        std::vector<const Term*> args;
        const Term* head = &t;
        auto folds = [&](const Term& h) {
            if (!options.fold_numerals) {
                return false;
            }
            auto n = numeral_value(h);
            return n && *n > 0;
        };
        while (head->is_app() && (head == &t || !folds(*head))) {
            args.push_back(&head->right());
            head = &head->left();
        }
        for (const Term* arg : args) {
            stack.push_back({arg, Emit::Term, arg->is_app()});
            stack.push_back({nullptr, Emit::Space, false});
        }
        stack.push_back({head, Emit::Term, false});
    }
    return out;
}

}  // namespace pcaforge
