#include <doctest.h>

#include <cctype>
#include <map>
#include <set>

#include "refine/common/error.hpp"
#include "refine/logic/smtlib.hpp"
#include "support/support.hpp"

using namespace refine;
using namespace refine::logic;
using typesys::Declaration;
using typesys::VerificationCondition;

namespace {

LinearTerm v(const std::string& n) { return LinearTerm::var(n); }
LinearTerm c(std::int64_t k) { return LinearTerm::constant(k); }

VerificationCondition widen_vc() {
    VerificationCondition vc;
    vc.declarations = {{"n", BaseType::Nat}, {"x", BaseType::Nat}};
    vc.facts = {Predicate::compare(CmpOp::Lt, v("x"), v("n"))};
    vc.goal = Predicate::compare(CmpOp::Lt, v("x"), LinearTerm::add(v("n"), c(1)));
    return vc;
}

// A tiny reader for the emitted subset, independent of the printer.
struct Sx {
    std::string atom;
    std::vector<Sx> items;
    bool list = false;
};

class Reader {
public:
    explicit Reader(const std::string& s) : s_(s) {}
    bool done() {
        skip();
        return i_ >= s_.size();
    }
    Sx read() {
        skip();
        Sx x;
        if (s_[i_] == '(') {
            ++i_;
            x.list = true;
            for (skip(); s_[i_] != ')'; skip()) x.items.push_back(read());
            ++i_;
            return x;
        }
        if (s_[i_] == '|') {
            auto e = s_.find('|', i_ + 1);
            x.atom = s_.substr(i_ + 1, e - i_ - 1);
            i_ = e + 1;
            return x;
        }
        auto b = i_;
        while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')') ++i_;
        x.atom = s_.substr(b, i_ - b);
        return x;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
};

LinearTerm to_term(const Sx& x) {
    if (!x.list) {
        if (std::isdigit(static_cast<unsigned char>(x.atom[0]))) return c(std::stoll(x.atom));
        return v(x.atom);
    }
    const auto& op = x.items[0].atom;
    if (op == "+") return LinearTerm::add(to_term(x.items[1]), to_term(x.items[2]));
    if (op == "-" && x.items.size() == 3) return LinearTerm::sub(to_term(x.items[1]), to_term(x.items[2]));
    if (op == "-") {
        if (!x.items[1].list && std::isdigit(static_cast<unsigned char>(x.items[1].atom[0]))) {
            return c(-std::stoll(x.items[1].atom));
        }
        return LinearTerm::neg(to_term(x.items[1]));
    }
    if (op == "*") return LinearTerm::scale(to_term(x.items[1]).value, to_term(x.items[2]));
    FAIL("unexpected term " << op);
    return {};
}

bool is_boolean(const Sx& x, const std::map<std::string, bool>& is_bool);

Predicate to_pred(const Sx& x, const std::map<std::string, bool>& is_bool) {
    if (!x.list) {
        if (x.atom == "true" || x.atom == "false") return Predicate::truth(x.atom == "true");
        return Predicate::var(x.atom);
    }
    const auto& op = x.items[0].atom;
    auto sub = [&](int i) { return to_pred(x.items[i], is_bool); };
    if (op == "not") {
        const auto& inner = x.items[1];
        if (inner.list && inner.items[0].atom == "=" && !is_boolean(inner.items[1], is_bool)) {
            return Predicate::compare(CmpOp::Ne, to_term(inner.items[1]), to_term(inner.items[2]));
        }
        return Predicate::negate(sub(1));
    }
    if (op == "and") return Predicate::conj(sub(1), sub(2));
    if (op == "or") return Predicate::disj(sub(1), sub(2));
    if (op == "=>") return Predicate::implies(sub(1), sub(2));
    if (op == "=" && is_boolean(x.items[1], is_bool)) return Predicate::iff(sub(1), sub(2));
    static const std::map<std::string, CmpOp> cmps = {
        {"=", CmpOp::Eq}, {"<", CmpOp::Lt}, {"<=", CmpOp::Le}, {">", CmpOp::Gt}, {">=", CmpOp::Ge}};
    return Predicate::compare(cmps.at(op), to_term(x.items[1]), to_term(x.items[2]));
}

bool is_boolean(const Sx& x, const std::map<std::string, bool>& is_bool) {
    if (!x.list) {
        if (x.atom == "true" || x.atom == "false") return true;
        auto it = is_bool.find(x.atom);
        return it != is_bool.end() && it->second;
    }
    static const std::set<std::string> bool_ops = {"not", "and", "or", "=>", "=", "<", "<=", ">", ">="};
    return bool_ops.count(x.items[0].atom) != 0;
}

struct ParsedScript {
    std::vector<std::pair<std::string, std::string>> declared;
    std::vector<Sx> assertions;
    std::vector<std::string> commands;
};

ParsedScript read_script(const std::string& text) {
    ParsedScript out;
    Reader r(text);
    while (!r.done()) {
        auto cmd = r.read();
        const auto& head = cmd.items[0].atom;
        if (head == "declare-const") {
            out.declared.emplace_back(cmd.items[1].atom, cmd.items[2].atom);
        } else if (head == "assert") {
            out.assertions.push_back(cmd.items[1]);
        }
        out.commands.push_back(head);
    }
    return out;
}

void symbols_of(const Sx& x, std::set<std::string>& out) {
    static const std::set<std::string> keywords = {"not", "and", "or", "=>", "=", "<", "<=", ">", ">=",
                                                   "+",   "-",   "*",  "true", "false"};
    if (!x.list) {
        if (!x.atom.empty() && !std::isdigit(static_cast<unsigned char>(x.atom[0])) && keywords.count(x.atom) == 0) {
            out.insert(x.atom);
        }
        return;
    }
    for (const auto& i : x.items) symbols_of(i, out);
}

} // namespace

TEST_CASE("print: predicate s-expressions") {
    CHECK(print_predicate(Predicate::compare(CmpOp::Lt, v("x"), LinearTerm::add(v("n"), c(1)))) == "(< x (+ n 1))");
    CHECK(print_predicate(Predicate::truth(true)) == "true");
    CHECK(print_predicate(Predicate::compare(CmpOp::Le, LinearTerm::add(LinearTerm::scale(2, v("x")), c(3)), v("y"))) ==
          "(<= (+ (* 2 x) 3) y)");
    CHECK(print_predicate(Predicate::compare(CmpOp::Ne, v("a"), v("b"))) == "(not (= a b))");
    CHECK(print_term(c(-4)) == "(- 4)");
    CHECK(print_term(LinearTerm::sub(v("a"), v("b"))) == "(- a b)");
    CHECK(print_predicate(Predicate::iff(Predicate::var("p"), Predicate::truth(false))) == "(= p false)");
}

TEST_CASE("print: symbols that need quoting") {
    CHECK(smt_symbol("x!3") == "x!3");
    CHECK(smt_symbol("k'") == "|k'|");
    CHECK(smt_symbol("acc") == "acc");
}

TEST_CASE("render: infix predicates with renaming") {
    auto p = Predicate::conj(Predicate::compare(CmpOp::Lt, v("x!2"), LinearTerm::add(v("n"), c(1))),
                             Predicate::negate(Predicate::var("b")));
    CHECK(render_predicate(p) == "x!2 < n + 1 && !b");
    CHECK(render_predicate(p, [](const std::string& n) { return n == "x!2" ? std::string("x") : n; }) ==
          "x < n + 1 && !b");
    CHECK(render_term(LinearTerm::sub(v("a"), LinearTerm::add(v("b"), c(1)))) == "a - (b + 1)");
}

TEST_CASE("translate: the widening VC, byte-exact") {
    const std::string expected =
        "(set-logic QF_LIA)\n(declare-const n Int)\n(declare-const x Int)\n(assert (>= n 0))\n(assert (>= x 0))\n"
        "(assert (< x n))\n(assert (not (< x (+ n 1))))\n(check-sat)\n(get-model)\n";
    CHECK(translate_vc(widen_vc()).text() == expected);
    CHECK(testing::read_text(testing::golden_path("fin_widen.vc1.smt2")) == expected);
}

TEST_CASE("translate: empty context") {
    VerificationCondition vc;
    vc.goal = Predicate::truth(true);
    CHECK(translate_vc(vc).text() == "(set-logic QF_LIA)\n(assert (not true))\n(check-sat)\n(get-model)\n");
}

TEST_CASE("translate: Bool declarations and undeclared symbols") {
    VerificationCondition vc;
    vc.declarations = {{"b", BaseType::Bool}, {"i", BaseType::Int}};
    vc.goal = Predicate::implies(Predicate::var("b"), Predicate::compare(CmpOp::Gt, v("i"), c(0)));
    CHECK(translate_vc(vc).text() ==
          "(set-logic QF_LIA)\n(declare-const b Bool)\n(declare-const i Int)\n(assert (not (=> b (> i 0))))\n"
          "(check-sat)\n(get-model)\n");
    vc.goal = Predicate::compare(CmpOp::Gt, v("ghost"), c(0));
    CHECK_THROWS_AS(translate_vc(vc), Error);
    vc.goal = Predicate::var("i");
    CHECK_THROWS_AS(translate_vc(vc), Error);
}

TEST_CASE("property: scripts are deterministic, complete, and end with the negated goal") {
    testing::VcGenerator gen(4242);
    for (int i = 0; i < 500; ++i) {
        auto vc = gen.next();
        auto script = translate_vc(vc);
        auto text = script.text();
        CHECK(translate_vc(vc).text() == text);

        auto parsed = read_script(text);
        std::set<std::string> declared;
        std::map<std::string, bool> is_bool;
        for (const auto& [name, sort] : parsed.declared) {
            declared.insert(name);
            is_bool[name] = sort == "Bool";
        }
        std::set<std::string> used;
        for (const auto& a : parsed.assertions) symbols_of(a, used);
        for (const auto& s : used) CHECK(declared.count(s) == 1);

        REQUIRE(!parsed.assertions.empty());
        const auto& last = parsed.assertions.back();
        REQUIRE(last.list);
        CHECK(last.items[0].atom == "not");
        CHECK(print_predicate(to_pred(last.items[1], is_bool)) == print_predicate(vc.goal));

        // One `(>= x 0)` per Nat declaration, in declaration order, before the facts.
        std::vector<std::string> nats;
        for (const auto& d : vc.declarations) {
            if (d.base == BaseType::Nat) nats.push_back(d.name);
        }
        REQUIRE(parsed.assertions.size() == nats.size() + vc.facts.size() + 1);
        for (std::size_t k = 0; k < nats.size(); ++k) {
            const auto& a = parsed.assertions[k];
            CHECK(a.items[0].atom == ">=");
            CHECK(a.items[1].atom == nats[k]);
            CHECK(a.items[2].atom == "0");
        }
        std::vector<std::string> tail(parsed.commands.end() - 2, parsed.commands.end());
        CHECK(tail == std::vector<std::string>{"check-sat", "get-model"});
    }
}
