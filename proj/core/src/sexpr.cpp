#include "pcaforge/sexpr.hpp"

#include <charconv>
#include <map>

#include "pcaforge/reduce.hpp"

namespace pcaforge {

namespace sexpr {

Value symbol(std::string s) { return {Value::Kind::Symbol, std::move(s), {}, 0}; }
Value string(std::string s) { return {Value::Kind::String, std::move(s), {}, 0}; }
Value list(std::vector<Value> items) { return {Value::Kind::List, {}, std::move(items), 0}; }

namespace {

class Reader {
public:
    explicit Reader(std::string_view text) : s_(text) {}

    bool at_end() {
        skip();
        return i_ >= s_.size();
    }

    Value datum() {
        skip();
        if (i_ >= s_.size()) {
            throw ParseError(i_, "unexpected end of input");
        }
        std::size_t start = i_;
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            Value v = list({});
            v.position = start;
            while (true) {
                skip();
                if (i_ >= s_.size()) {
                    throw ParseError(start, "unclosed '('");
                }
                if (s_[i_] == ')') {
                    ++i_;
                    return v;
                }
                v.items.push_back(datum());
            }
        }
        if (c == ')') {
            throw ParseError(i_, "unexpected ')'");
        }
        if (c == '"') {
            ++i_;
            std::string out;
            while (i_ < s_.size() && s_[i_] != '"') {
                if (s_[i_] == '\\' && i_ + 1 < s_.size()) {
                    ++i_;
                }
                out.push_back(s_[i_++]);
            }
            if (i_ >= s_.size()) {
                throw ParseError(start, "unterminated string");
            }
            ++i_;
            Value v = string(std::move(out));
            v.position = start;
            return v;
        }
        while (i_ < s_.size() && !is_delim(s_[i_])) {
            ++i_;
        }
        Value v = symbol(std::string(s_.substr(start, i_ - start)));
        v.position = start;
        return v;
    }

private:
    static bool is_delim(char c) { return c == '(' || c == ')' || c == '"' || c == ';' || std::isspace(static_cast<unsigned char>(c)); }

    void skip() {
        while (i_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
                ++i_;
            } else if (s_[i_] == ';') {
                while (i_ < s_.size() && s_[i_] != '\n') {
                    ++i_;
                }
            } else {
                break;
            }
        }
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

}  // namespace

std::vector<Value> read_all(std::string_view text) {
    Reader r(text);
    std::vector<Value> out;
    while (!r.at_end()) {
        out.push_back(r.datum());
    }
    return out;
}

Value read_one(std::string_view text) {
    auto all = read_all(text);
    if (all.size() != 1) {
        throw ParseError(0, "expected exactly one datum, found " + std::to_string(all.size()));
    }
    return all[0];
}

std::string print(const Value& v) {
    switch (v.kind) {
        case Value::Kind::Symbol:
            return v.text;
        case Value::Kind::String: {
            std::string out = "\"";
            for (char c : v.text) {
                if (c == '"' || c == '\\') {
                    out.push_back('\\');
                }
                out.push_back(c);
            }
            return out + "\"";
        }
        case Value::Kind::List:
            break;
    }
    std::string out = "(";
    for (std::size_t i = 0; i < v.items.size(); ++i) {
        if (i) {
            out.push_back(' ');
        }
        out += print(v.items[i]);
    }
    return out + ")";
}

}  // namespace sexpr

using sexpr::Value;

namespace {

const PrintOptions kFold{.fold_numerals = true};

}  // namespace

Value to_sexpr(const RSet& a) {
    std::vector<Value> items{sexpr::symbol("rset")};
    for (const auto& e : a.elements()) {
        items.push_back(sexpr::list({sexpr::symbol("pair"), sexpr::string(print(e.realizer, kFold)), to_sexpr(e.child)}));
    }
    return sexpr::list(std::move(items));
}

Value to_sexpr(const LabeledRSet& a) {
    std::vector<Value> items{sexpr::symbol("lrset")};
    for (const auto& e : a.elements()) {
        items.push_back(sexpr::list({sexpr::symbol("labeled"), sexpr::symbol(std::to_string(e.label)),
                                     sexpr::string(print(e.realizer, kFold)), to_sexpr(e.child)}));
    }
    return sexpr::list(std::move(items));
}

Value to_sexpr(const Verdict& v) {
    std::vector<Value> items{sexpr::symbol("verdict")};
    switch (v.kind) {
        case Verdict::Kind::Realized:
            items.push_back(sexpr::symbol("REALIZED"));
            break;
        case Verdict::Kind::NotRealized:
            items.push_back(sexpr::symbol("NOT-REALIZED"));
            break;
        case Verdict::Kind::Unknown:
            items.push_back(sexpr::symbol("UNKNOWN"));
            items.push_back(sexpr::symbol(v.reason == Verdict::Reason::Budget ? "budget" : "approximate-fragment"));
            break;
    }
    auto field = [&](const char* name, std::uint64_t n) {
        items.push_back(sexpr::list({sexpr::symbol(name), sexpr::symbol(std::to_string(n))}));
    };
    field("cap", v.bounds.cap);
    if (v.bounds.candidates) {
        field("candidates", *v.bounds.candidates);
    }
    if (v.bounds.universe) {
        field("universe", *v.bounds.universe);
    }
    if (v.bounds.truncation) {
        field("truncation", *v.bounds.truncation);
    }
    return sexpr::list(std::move(items));
}

namespace {

std::uint64_t number(const Value& v, const char* what) {
    std::uint64_t n = 0;
    if (v.kind == Value::Kind::Symbol) {
        auto [end, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), n);
        if (ec == std::errc{} && end == v.text.data() + v.text.size() && !v.text.empty()) {
            return n;
        }
    }
    throw ParseError(v.position, std::string("expected a natural number for ") + what);
}

std::uint32_t number32(const Value& v, const char* what) {
    std::uint64_t n = number(v, what);
    if (n > 1'000'000) {
        throw ParseError(v.position, std::string(what) + " is too large");
    }
    return static_cast<std::uint32_t>(n);
}

void arity(const Value& v, std::size_t n, const char* form) {
    if (v.items.size() != n) {
        throw ParseError(v.position, std::string("(") + form + " ...) takes " + std::to_string(n - 1) + " argument(s)");
    }
}

}  // namespace

Verdict verdict_from_sexpr(const Value& v) {
    if (!v.is_form("verdict") || v.items.size() < 3) {
        throw ParseError(v.position, "expected (verdict ...)");
    }
    Verdict out;
    std::size_t i = 2;
    const Value& k = v.items[1];
    if (k.is_symbol("REALIZED")) {
        out.kind = Verdict::Kind::Realized;
    } else if (k.is_symbol("NOT-REALIZED")) {
        out.kind = Verdict::Kind::NotRealized;
    } else if (k.is_symbol("UNKNOWN")) {
        out.kind = Verdict::Kind::Unknown;
        const Value& r = v.items[2];
        if (r.is_symbol("budget")) {
            out.reason = Verdict::Reason::Budget;
        } else if (r.is_symbol("approximate-fragment")) {
            out.reason = Verdict::Reason::ApproximateFragment;
        } else {
            throw ParseError(r.position, "unknown reason");
        }
        i = 3;
    } else {
        throw ParseError(k.position, "unknown verdict");
    }
    for (; i < v.items.size(); ++i) {
        const Value& f = v.items[i];
        if (f.kind != Value::Kind::List || f.items.size() != 2 || f.items[0].kind != Value::Kind::Symbol) {
            throw ParseError(f.position, "expected (field n)");
        }
        std::uint64_t n = number(f.items[1], "bound");
        const std::string& name = f.items[0].text;
        if (name == "cap") {
            out.bounds.cap = n;
        } else if (name == "candidates") {
            out.bounds.candidates = n;
        } else if (name == "universe") {
            out.bounds.universe = n;
        } else if (name == "truncation") {
            out.bounds.truncation = static_cast<std::uint32_t>(n);
        } else {
            throw ParseError(f.position, "unknown bound '" + name + "'");
        }
    }
    return out;
}

RSet as_plain(const SetValue& v) {
    if (const auto* r = std::get_if<RSet>(&v)) {
        return *r;
    }
    return project(std::get<LabeledRSet>(v));
}

LabeledRSet as_labeled(const SetValue& v) {
    if (const auto* l = std::get_if<LabeledRSet>(&v)) {
        return *l;
    }
    return label_zero(std::get<RSet>(v));
}

std::vector<RSet> Document::plain_params() const {
    std::vector<RSet> out;
    for (const auto& v : values) {
        out.push_back(as_plain(v));
    }
    return out;
}

std::vector<LabeledRSet> Document::labeled_params() const {
    std::vector<LabeledRSet> out;
    for (const auto& v : values) {
        out.push_back(as_labeled(v));
    }
    return out;
}

namespace {

class DocumentReader {
public:
    DocumentReader(std::string_view text, std::uint64_t cap) : text_(text), cap_(cap) {}

    Document run() {
        for (const Value& form : sexpr::read_all(text_)) {
            if (form.is_form("define")) {
                arity(form, 3, "define");
                const Value& name = form.items[1];
                if (name.kind != Value::Kind::Symbol || name.text.empty() || name.text[0] == '%') {
                    throw ParseError(name.position, "define needs a plain symbol name");
                }
                if (index_.count(name.text)) {
                    throw ParseError(name.position, "'" + name.text + "' is already defined");
                }
                SetValue v = set(form.items[2]);
                add(name.text, std::move(v));
            } else if (form.is_form("check") || form.is_form("approx")) {
                doc_.queries.push_back(query(form));
            } else if (form.is_form("iplemma")) {
                arity(form, 5, "iplemma");
                Query q;
                q.kind = Query::Kind::IpLemma;
                q.a = param_of(form.items[1]);
                q.b = param_of(form.items[2]);
                q.realizer = term(form.items[3]);
                q.key = term(form.items[4]);
                q.source = sexpr::print(form);
                doc_.queries.push_back(std::move(q));
            } else {
                throw ParseError(form.position, "expected define, check, approx or iplemma");
            }
        }
        return std::move(doc_);
    }

private:
    std::uint32_t add(std::string name, SetValue v) {
        auto idx = static_cast<std::uint32_t>(doc_.values.size());
        index_.emplace(name, idx);
        doc_.names.push_back(std::move(name));
        doc_.values.push_back(std::move(v));
        return idx;
    }

    Term term(const Value& v) {
        if (v.kind != Value::Kind::String) {
            throw ParseError(v.position, "expected a quoted term");
        }
        try {
            return parse(v.text);
        } catch (const ParseError& e) {
            throw ParseError(v.position + 1 + e.position(), e.what());
        }
    }

    Term realizer(const Value& v) {
        Term t = term(v);
        if (t.is_normal()) {
            return t;
        }
        auto o = red(t, cap_);
        if (!o.reduced()) {
            throw ParseError(v.position, "set realizer has no normal form within cap " + std::to_string(cap_));
        }
        return o.value();
    }

    SetValue set(const Value& v) {
        if (v.kind == Value::Kind::Symbol) {
            auto it = index_.find(v.text);
            if (it == index_.end()) {
                throw ParseError(v.position, "undefined set '" + v.text + "'");
            }
            return doc_.values[it->second];
        }
        if (v.kind != Value::Kind::List || v.items.empty() || v.items[0].kind != Value::Kind::Symbol) {
            throw ParseError(v.position, "expected a set form");
        }
        const std::string& head = v.items[0].text;
        if (head == "rset") {
            std::vector<RElement> elems;
            for (std::size_t i = 1; i < v.items.size(); ++i) {
                const Value& p = v.items[i];
                if (!p.is_form("pair")) {
                    throw ParseError(p.position, "rset members are (pair \"term\" set)");
                }
                arity(p, 3, "pair");
                elems.push_back({realizer(p.items[1]), as_plain(set(p.items[2]))});
            }
            return RSet::of(std::move(elems));
        }
        if (head == "lrset") {
            std::vector<LElement> elems;
            for (std::size_t i = 1; i < v.items.size(); ++i) {
                const Value& p = v.items[i];
                if (!p.is_form("labeled")) {
                    throw ParseError(p.position, "lrset members are (labeled 0|1 \"term\" set)");
                }
                arity(p, 4, "labeled");
                std::uint64_t label = number(p.items[1], "label");
                if (label > 1) {
                    throw ParseError(p.items[1].position, "labels are 0 or 1");
                }
                elems.push_back({static_cast<std::uint8_t>(label), realizer(p.items[2]), as_labeled(set(p.items[3]))});
            }
            return LabeledRSet::of(std::move(elems));
        }
        if (head == "numeral") {
            arity(v, 2, "numeral");
            return canonical_numeral(number32(v.items[1], "numeral"));
        }
        if (head == "omega") {
            arity(v, 2, "omega");
            return omega_truncation(number32(v.items[1], "omega bound"));
        }
        if (head == "graph") {
            arity(v, 3, "graph");
            Term f = realizer(v.items[1]);
            try {
                return graph_rset(f, number32(v.items[2], "graph bound"), cap_);
            } catch (const std::invalid_argument& e) {
                throw ParseError(v.position, e.what());
            }
        }
        if (head == "opair") {
            arity(v, 3, "opair");
            SetValue a = set(v.items[1]);
            SetValue b = set(v.items[2]);
            if (std::holds_alternative<RSet>(a) && std::holds_alternative<RSet>(b)) {
                return ordered_pair(std::get<RSet>(a), std::get<RSet>(b));
            }
            return ordered_pair(as_labeled(a), as_labeled(b));
        }
        throw ParseError(v.position, "unknown set form '" + head + "'");
    }

    std::uint32_t param_of(const Value& v) {
        if (v.kind == Value::Kind::Symbol) {
            if (auto it = index_.find(v.text); it != index_.end()) {
                return it->second;
            }
        }
        return add("_" + std::to_string(anon_++), set(v));
    }

    SetExpr operand(const Value& v, std::uint32_t depth) {
        if (v.kind == Value::Kind::Symbol && !v.text.empty() && v.text[0] == '%') {
            std::uint32_t k = number32(symbol_tail(v), "bound variable");
            if (k >= depth) {
                throw ParseError(v.position, "bound variable " + v.text + " is not in scope");
            }
            return SetExpr::bound(k);
        }
        if (v.is_form("opair")) {
            arity(v, 3, "opair");
            return SetExpr::opair(operand(v.items[1], depth), operand(v.items[2], depth));
        }
        return SetExpr::param(param_of(v));
    }

    static Value symbol_tail(const Value& v) {
        Value t = v;
        t.text = v.text.substr(1);
        return t;
    }

    Formula formula(const Value& v, std::uint32_t depth) {
        if (v.kind != Value::Kind::List || v.items.empty() || v.items[0].kind != Value::Kind::Symbol) {
            throw ParseError(v.position, "expected a formula");
        }
        const std::string& h = v.items[0].text;
        if (h == "mem" || h == "eq") {
            arity(v, 3, h.c_str());
            SetExpr a = operand(v.items[1], depth);
            SetExpr b = operand(v.items[2], depth);
            return h == "mem" ? Formula::mem(a, b) : Formula::eq(a, b);
        }
        if (h == "and" || h == "or" || h == "implies") {
            arity(v, 3, h.c_str());
            Formula l = formula(v.items[1], depth);
            Formula r = formula(v.items[2], depth);
            return h == "and" ? Formula::conj(l, r) : h == "or" ? Formula::disj(l, r) : Formula::implies(l, r);
        }
        if (h == "not") {
            arity(v, 2, "not");
            return Formula::negate(formula(v.items[1], depth));
        }
        if (h == "bex" || h == "ball") {
            arity(v, 3, h.c_str());
            SetExpr bound = operand(v.items[1], depth);
            Formula body = formula(v.items[2], depth + 1);
            return h == "bex" ? Formula::bex(bound, body) : Formula::ball(bound, body);
        }
        if (h == "ex" || h == "all") {
            arity(v, 2, h.c_str());
            Formula body = formula(v.items[1], depth + 1);
            return h == "ex" ? Formula::ex(body) : Formula::all(body);
        }
        throw ParseError(v.position, "unknown connective '" + h + "'");
    }

    Query query(const Value& form) {
        Query q;
        bool approx = form.is_form("approx");
        q.kind = approx ? Query::Kind::Approx : Query::Kind::Check;
        if (form.items.size() < 3) {
            throw ParseError(form.position, "expected (check \"term\" formula)");
        }
        q.realizer = term(form.items[1]);
        q.formula = formula(form.items[2], 0);
        std::size_t i = 3;
        for (; approx && i < form.items.size(); ++i) {
            const Value& opt = form.items[i];
            if (opt.is_form("candidates")) {
                for (std::size_t j = 1; j < opt.items.size(); ++j) {
                    q.candidates.push_back(term(opt.items[j]));
                }
            } else if (opt.is_form("universe")) {
                for (std::size_t j = 1; j < opt.items.size(); ++j) {
                    q.universe.push_back(set(opt.items[j]));
                }
            } else {
                throw ParseError(opt.position, "approx options are (candidates ...) and (universe ...)");
            }
        }
        if (i != form.items.size()) {
            throw ParseError(form.items[i].position, "check takes a term and a formula");
        }
        q.source = sexpr::print(form);
        return q;
    }

    std::string_view text_;
    std::uint64_t cap_;
    Document doc_;
    std::map<std::string, std::uint32_t> index_;
    std::uint32_t anon_ = 0;
};

}  // namespace

Document read_document(std::string_view text, std::uint64_t cap) { return DocumentReader(text, cap).run(); }

}  // namespace pcaforge
