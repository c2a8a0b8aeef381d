#include "refine/logic/predicate.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>

namespace refine::logic {

LinearTerm LinearTerm::var(std::string name) {
    LinearTerm t;
    t.op = Op::Var;
    t.name = std::move(name);
    return t;
}

LinearTerm LinearTerm::constant(std::int64_t value) {
    LinearTerm t;
    t.op = Op::Const;
    t.value = value;
    return t;
}

LinearTerm LinearTerm::add(LinearTerm lhs, LinearTerm rhs) {
    LinearTerm t;
    t.op = Op::Add;
    t.args = {std::move(lhs), std::move(rhs)};
    return t;
}

LinearTerm LinearTerm::sub(LinearTerm lhs, LinearTerm rhs) {
    LinearTerm t;
    t.op = Op::Sub;
    t.args = {std::move(lhs), std::move(rhs)};
    return t;
}

LinearTerm LinearTerm::neg(LinearTerm operand) {
    LinearTerm t;
    t.op = Op::Neg;
    t.args = {std::move(operand)};
    return t;
}

LinearTerm LinearTerm::scale(std::int64_t coefficient, LinearTerm operand) {
    LinearTerm t;
    t.op = Op::Scale;
    t.value = coefficient;
    t.args = {std::move(operand)};
    return t;
}

Predicate Predicate::truth(bool value) {
    Predicate p;
    p.kind = Kind::Const;
    p.value = value;
    return p;
}

Predicate Predicate::var(std::string name) {
    Predicate p;
    p.kind = Kind::Var;
    p.name = std::move(name);
    return p;
}

Predicate Predicate::compare(CmpOp op, LinearTerm lhs, LinearTerm rhs) {
    Predicate p;
    p.kind = Kind::Cmp;
    p.cmp = op;
    p.terms = {std::move(lhs), std::move(rhs)};
    return p;
}

Predicate Predicate::negate(Predicate operand) {
    Predicate p;
    p.kind = Kind::Not;
    p.args = {std::move(operand)};
    return p;
}

namespace {

Predicate binary(Predicate::Kind kind, Predicate lhs, Predicate rhs) {
    Predicate p;
    p.kind = kind;
    p.args = {std::move(lhs), std::move(rhs)};
    return p;
}

void accumulate(const LinearTerm& t, std::int64_t factor, LinearForm& form) {
    switch (t.op) {
    case LinearTerm::Op::Var: {
        auto it = std::find_if(form.coefficients.begin(), form.coefficients.end(),
                               [&](const auto& entry) { return entry.first == t.name; });
        if (it == form.coefficients.end()) {
            form.coefficients.emplace_back(t.name, factor);
        } else {
            it->second += factor;
        }
        return;
    }
    case LinearTerm::Op::Const:
        form.constant += factor * t.value;
        return;
    case LinearTerm::Op::Add:
        accumulate(t.args[0], factor, form);
        accumulate(t.args[1], factor, form);
        return;
    case LinearTerm::Op::Sub:
        accumulate(t.args[0], factor, form);
        accumulate(t.args[1], -factor, form);
        return;
    case LinearTerm::Op::Neg:
        accumulate(t.args[0], -factor, form);
        return;
    case LinearTerm::Op::Scale:
        accumulate(t.args[0], factor * t.value, form);
        return;
    }
}

void collect(const LinearTerm& t, std::vector<std::pair<std::string, Sort>>& out,
             std::set<std::string>& seen) {
    if (t.op == LinearTerm::Op::Var) {
        if (seen.insert(t.name).second) out.emplace_back(t.name, Sort::Int);
        return;
    }
    for (const auto& a : t.args) collect(a, out, seen);
}

void collect(const Predicate& p, std::vector<std::pair<std::string, Sort>>& out,
             std::set<std::string>& seen) {
    if (p.kind == Predicate::Kind::Var) {
        if (seen.insert(p.name).second) out.emplace_back(p.name, Sort::Bool);
        return;
    }
    for (const auto& t : p.terms) collect(t, out, seen);
    for (const auto& a : p.args) collect(a, out, seen);
}

std::string smt_int(std::int64_t v) {
    if (v == std::numeric_limits<std::int64_t>::min()) return "(- 9223372036854775808)";
    if (v < 0) return "(- " + std::to_string(-v) + ")";
    return std::to_string(v);
}

std::string_view smt_op(CmpOp op) {
    switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "distinct";  // printed as (not (= ..)) instead
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    }
    return "?";
}

std::string_view surface_op(CmpOp op) {
    switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "/=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    }
    return "?";
}

std::string name_of(const std::string& n, const NameMap& names) {
    return names ? names(n) : n;
}

// Precedence levels: 1 additive, 2 scaled, 3 negated, 4 atom.
std::string render_term_at(const LinearTerm& t, int context, const NameMap& names) {
    std::string out;
    int level = 4;
    switch (t.op) {
    case LinearTerm::Op::Var:
        out = name_of(t.name, names);
        break;
    case LinearTerm::Op::Const:
        out = std::to_string(t.value);
        if (t.value < 0) level = 3;
        break;
    case LinearTerm::Op::Add:
    case LinearTerm::Op::Sub:
        level = 1;
        out = render_term_at(t.args[0], 1, names) + (t.op == LinearTerm::Op::Add ? " + " : " - ") +
              render_term_at(t.args[1], 2, names);
        break;
    case LinearTerm::Op::Neg:
        level = 3;
        out = "-" + render_term_at(t.args[0], 4, names);
        break;
    case LinearTerm::Op::Scale:
        level = 2;
        out = std::to_string(t.value) + " * " + render_term_at(t.args[0], 3, names);
        break;
    }
    return level < context ? "(" + out + ")" : out;
}

// Precedence levels: 1 implication, 2 disjunction, 3 conjunction, 4 negation, 5 atom.
std::string render_pred_at(const Predicate& p, int context, const NameMap& names) {
    std::string out;
    int level = 5;
    switch (p.kind) {
    case Predicate::Kind::Const:
        out = p.value ? "true" : "false";
        break;
    case Predicate::Kind::Var:
        out = name_of(p.name, names);
        break;
    case Predicate::Kind::Cmp:
        out = render_term_at(p.terms[0], 1, names) + " " + std::string(surface_op(p.cmp)) + " " +
              render_term_at(p.terms[1], 1, names);
        break;
    case Predicate::Kind::Iff:
        out = render_pred_at(p.args[0], 6, names) + " == " + render_pred_at(p.args[1], 6, names);
        break;
    case Predicate::Kind::Not:
        level = 4;
        out = "!" + render_pred_at(p.args[0], 5, names);
        break;
    case Predicate::Kind::And:
        level = 3;
        out = render_pred_at(p.args[0], 3, names) + " && " + render_pred_at(p.args[1], 4, names);
        break;
    case Predicate::Kind::Or:
        level = 2;
        out = render_pred_at(p.args[0], 2, names) + " || " + render_pred_at(p.args[1], 3, names);
        break;
    case Predicate::Kind::Implies:
        level = 1;
        out = render_pred_at(p.args[0], 2, names) + " => " + render_pred_at(p.args[1], 1, names);
        break;
    }
    // Relations are non-associative: an operand of == at level 6 is
    // parenthesized unless it is atomic.
    if (p.kind == Predicate::Kind::Const || p.kind == Predicate::Kind::Var) return out;
    return level < context ? "(" + out + ")" : out;
}

} // namespace

Predicate Predicate::conj(Predicate lhs, Predicate rhs) {
    return binary(Kind::And, std::move(lhs), std::move(rhs));
}
Predicate Predicate::disj(Predicate lhs, Predicate rhs) {
    return binary(Kind::Or, std::move(lhs), std::move(rhs));
}
Predicate Predicate::implies(Predicate lhs, Predicate rhs) {
    return binary(Kind::Implies, std::move(lhs), std::move(rhs));
}
Predicate Predicate::iff(Predicate lhs, Predicate rhs) {
    return binary(Kind::Iff, std::move(lhs), std::move(rhs));
}

LinearForm normalize(const LinearTerm& term) {
    LinearForm form;
    accumulate(term, 1, form);
    return form;
}

LinearTerm substitute(const LinearTerm& term, const Substitution& subst) {
    if (term.op == LinearTerm::Op::Var) {
        auto it = subst.find(term.name);
        return it == subst.end() ? term : it->second;
    }
    LinearTerm out = term;
    for (auto& a : out.args) a = substitute(a, subst);
    return out;
}

Predicate substitute(const Predicate& pred, const Substitution& subst) {
    if (pred.kind == Predicate::Kind::Var) {
        auto it = subst.find(pred.name);
        if (it != subst.end() && it->second.op == LinearTerm::Op::Var) {
            return Predicate::var(it->second.name);
        }
        return pred;
    }
    Predicate out = pred;
    for (auto& t : out.terms) t = substitute(t, subst);
    for (auto& a : out.args) a = substitute(a, subst);
    return out;
}

std::vector<std::pair<std::string, Sort>> free_symbols(const Predicate& pred) {
    std::vector<std::pair<std::string, Sort>> out;
    std::set<std::string> seen;
    collect(pred, out, seen);
    return out;
}

std::string smt_symbol(const std::string& name) {
    static const std::string extra = "~!@$%^&*_-+=<>.?/";
    bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0]));
    for (char c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && extra.find(c) == std::string::npos) simple = false;
    }
    return simple ? name : "|" + name + "|";
}

std::string print_term(const LinearTerm& t) {
    switch (t.op) {
    case LinearTerm::Op::Var: return smt_symbol(t.name);
    case LinearTerm::Op::Const: return smt_int(t.value);
    case LinearTerm::Op::Add:
        return "(+ " + print_term(t.args[0]) + " " + print_term(t.args[1]) + ")";
    case LinearTerm::Op::Sub:
        return "(- " + print_term(t.args[0]) + " " + print_term(t.args[1]) + ")";
    case LinearTerm::Op::Neg: return "(- " + print_term(t.args[0]) + ")";
    case LinearTerm::Op::Scale:
        return "(* " + smt_int(t.value) + " " + print_term(t.args[0]) + ")";
    }
    return "";
}

std::string print_predicate(const Predicate& p) {
    switch (p.kind) {
    case Predicate::Kind::Const: return p.value ? "true" : "false";
    case Predicate::Kind::Var: return smt_symbol(p.name);
    case Predicate::Kind::Cmp: {
        auto lhs = print_term(p.terms[0]);
        auto rhs = print_term(p.terms[1]);
        if (p.cmp == CmpOp::Ne) return "(not (= " + lhs + " " + rhs + "))";
        return "(" + std::string(smt_op(p.cmp)) + " " + lhs + " " + rhs + ")";
    }
    case Predicate::Kind::Not: return "(not " + print_predicate(p.args[0]) + ")";
    case Predicate::Kind::And:
        return "(and " + print_predicate(p.args[0]) + " " + print_predicate(p.args[1]) + ")";
    case Predicate::Kind::Or:
        return "(or " + print_predicate(p.args[0]) + " " + print_predicate(p.args[1]) + ")";
    case Predicate::Kind::Implies:
        return "(=> " + print_predicate(p.args[0]) + " " + print_predicate(p.args[1]) + ")";
    case Predicate::Kind::Iff:
        return "(= " + print_predicate(p.args[0]) + " " + print_predicate(p.args[1]) + ")";
    }
    return "";
}

std::string render_term(const LinearTerm& term, const NameMap& names) {
    return render_term_at(term, 0, names);
}

std::string render_predicate(const Predicate& pred, const NameMap& names) {
    return render_pred_at(pred, 0, names);
}

} // namespace refine::logic
