#include "refine/solver/oracle.hpp"

#include <atomic>
#include <limits>
#include <stdexcept>

#include "refine/common/error.hpp"

namespace refine::solver {

using logic::CmpOp;
using logic::LinearTerm;
using logic::Predicate;

namespace {

const ModelValue& lookup(const Model& model, const std::string& name) {
    auto it = model.find(name);
    if (it == model.end()) throw Error(ErrorKind::MissingVariable, "no value for '" + name + "'");
    return it->second;
}

bool compare(CmpOp op, std::int64_t a, std::int64_t b) {
    switch (op) {
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return a != b;
    case CmpOp::Lt: return a < b;
    case CmpOp::Le: return a <= b;
    case CmpOp::Gt: return a > b;
    case CmpOp::Ge: return a >= b;
    }
    return false;
}

void check_size(const typesys::VerificationCondition& vc) {
    if (vc.declarations.size() > kOracleMaxVariables) {
        throw Error(ErrorKind::TooManyVariables, "oracle supports at most " + std::to_string(kOracleMaxVariables) +
                                                     " variables, VC has " +
                                                     std::to_string(vc.declarations.size()));
    }
}

struct Range {
    std::int64_t lo;
    std::int64_t hi;
};

Range range_of(BaseType base, std::int64_t bound) {
    switch (base) {
    case BaseType::Nat: return {0, bound};
    case BaseType::Int: return {-bound, bound};
    case BaseType::Bool: return {0, 1};
    }
    return {0, 0};
}

ModelValue as_value(BaseType base, std::int64_t raw) {
    if (base == BaseType::Bool) return raw != 0;
    return raw;
}

} // namespace

std::int64_t eval_term_ground(const LinearTerm& t, const Model& model) {
    switch (t.op) {
    case LinearTerm::Op::Var: {
        const auto& v = lookup(model, t.name);
        if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
        throw Error(ErrorKind::MissingVariable, "'" + t.name + "' is Bool but used as Int");
    }
    case LinearTerm::Op::Const: return t.value;
    case LinearTerm::Op::Add: return eval_term_ground(t.args[0], model) + eval_term_ground(t.args[1], model);
    case LinearTerm::Op::Sub: return eval_term_ground(t.args[0], model) - eval_term_ground(t.args[1], model);
    case LinearTerm::Op::Neg: return -eval_term_ground(t.args[0], model);
    case LinearTerm::Op::Scale: return t.value * eval_term_ground(t.args[0], model);
    }
    return 0;
}

bool eval_predicate_ground(const Predicate& p, const Model& model) {
    switch (p.kind) {
    case Predicate::Kind::Const: return p.value;
    case Predicate::Kind::Var: {
        const auto& v = lookup(model, p.name);
        if (const auto* b = std::get_if<bool>(&v)) return *b;
        throw Error(ErrorKind::MissingVariable, "'" + p.name + "' is Int but used as Bool");
    }
    case Predicate::Kind::Cmp:
        return compare(p.cmp, eval_term_ground(p.terms[0], model), eval_term_ground(p.terms[1], model));
    case Predicate::Kind::Not: return !eval_predicate_ground(p.args[0], model);
    case Predicate::Kind::And: return eval_predicate_ground(p.args[0], model) && eval_predicate_ground(p.args[1], model);
    case Predicate::Kind::Or: return eval_predicate_ground(p.args[0], model) || eval_predicate_ground(p.args[1], model);
    case Predicate::Kind::Implies:
        return !eval_predicate_ground(p.args[0], model) || eval_predicate_ground(p.args[1], model);
    case Predicate::Kind::Iff: return eval_predicate_ground(p.args[0], model) == eval_predicate_ground(p.args[1], model);
    }
    return false;
}

Verdict brute_force_serial(const typesys::VerificationCondition& vc, std::int64_t bound) {
    check_size(vc);
    const auto& decls = vc.declarations;
    std::vector<Range> ranges;
    std::vector<std::int64_t> current;
    for (const auto& d : decls) {
        ranges.push_back(range_of(d.base, bound));
        current.push_back(ranges.back().lo);
    }
    for (;;) {
        Model m;
        for (std::size_t i = 0; i < decls.size(); ++i) m[decls[i].name] = as_value(decls[i].base, current[i]);
        bool hypotheses = true;
        for (const auto& f : vc.facts) {
            if (!eval_predicate_ground(f, m)) {
                hypotheses = false;
                break;
            }
        }
        if (hypotheses && !eval_predicate_ground(vc.goal, m)) return Verdict::invalid(std::move(m));
        // Odometer: the last declaration moves fastest.
        std::size_t i = decls.size();
        while (i > 0) {
            --i;
            if (current[i] < ranges[i].hi) {
                ++current[i];
                break;
            }
            current[i] = ranges[i].lo;
            if (i == 0) return Verdict::valid(true);
        }
        if (decls.empty()) return Verdict::valid(true);
    }
}

// ---------------------------------------------------------------------------
// Compiled kernel: hypotheses /\ !goal as postfix code over variable slots.

namespace {

enum class Code : std::uint8_t { Const, Slot, Add, Sub, Neg, Scale, Cmp, Not, And, Or, Implies, Iff };

struct Instr {
    Code code;
    CmpOp cmp = CmpOp::Eq;
    std::int64_t value = 0;  // Const, Scale coefficient, Slot index
};

class Compiler {
public:
    explicit Compiler(const std::vector<typesys::Declaration>& decls) : decls_(decls) {}

    void term(const LinearTerm& t) {
        switch (t.op) {
        case LinearTerm::Op::Var: emit(Code::Slot, slot(t.name, false)); return;
        case LinearTerm::Op::Const: emit(Code::Const, t.value); return;
        case LinearTerm::Op::Add: binary(t, Code::Add); return;
        case LinearTerm::Op::Sub: binary(t, Code::Sub); return;
        case LinearTerm::Op::Neg:
            term(t.args[0]);
            emit(Code::Neg);
            return;
        case LinearTerm::Op::Scale:
            term(t.args[0]);
            emit(Code::Scale, t.value);
            return;
        }
    }

    void pred(const Predicate& p) {
        switch (p.kind) {
        case Predicate::Kind::Const: emit(Code::Const, p.value ? 1 : 0); return;
        case Predicate::Kind::Var: emit(Code::Slot, slot(p.name, true)); return;
        case Predicate::Kind::Cmp:
            term(p.terms[0]);
            term(p.terms[1]);
            code_.push_back({Code::Cmp, p.cmp, 0});
            return;
        case Predicate::Kind::Not:
            pred(p.args[0]);
            emit(Code::Not);
            return;
        case Predicate::Kind::And: pred_binary(p, Code::And); return;
        case Predicate::Kind::Or: pred_binary(p, Code::Or); return;
        case Predicate::Kind::Implies: pred_binary(p, Code::Implies); return;
        case Predicate::Kind::Iff: pred_binary(p, Code::Iff); return;
        }
    }

    void emit(Code c, std::int64_t value = 0) { code_.push_back({c, CmpOp::Eq, value}); }
    std::vector<Instr> take() { return std::move(code_); }

private:
    const std::vector<typesys::Declaration>& decls_;
    std::vector<Instr> code_;

    std::int64_t slot(const std::string& name, bool boolean) const {
        for (std::size_t i = 0; i < decls_.size(); ++i) {
            if (decls_[i].name == name) {
                if ((decls_[i].base == BaseType::Bool) != boolean) {
                    throw Error(ErrorKind::MissingVariable, "'" + name + "' used at the wrong sort");
                }
                return static_cast<std::int64_t>(i);
            }
        }
        throw Error(ErrorKind::MissingVariable, "no value for '" + name + "'");
    }

    void binary(const LinearTerm& t, Code c) {
        term(t.args[0]);
        term(t.args[1]);
        emit(c);
    }

    void pred_binary(const Predicate& p, Code c) {
        pred(p.args[0]);
        pred(p.args[1]);
        emit(c);
    }
};

bool run(const std::vector<Instr>& code, const std::int64_t* slots, std::int64_t* stack) {
    std::size_t sp = 0;
    for (const auto& in : code) {
        switch (in.code) {
        case Code::Const: stack[sp++] = in.value; break;
        case Code::Slot: stack[sp++] = slots[in.value]; break;
        case Code::Add: --sp; stack[sp - 1] += stack[sp]; break;
        case Code::Sub: --sp; stack[sp - 1] -= stack[sp]; break;
        case Code::Neg: stack[sp - 1] = -stack[sp - 1]; break;
        case Code::Scale: stack[sp - 1] *= in.value; break;
        case Code::Cmp: --sp; stack[sp - 1] = compare(in.cmp, stack[sp - 1], stack[sp]) ? 1 : 0; break;
        case Code::Not: stack[sp - 1] = stack[sp - 1] != 0 ? 0 : 1; break;
        case Code::And: --sp; stack[sp - 1] = (stack[sp - 1] != 0 && stack[sp] != 0) ? 1 : 0; break;
        case Code::Or: --sp; stack[sp - 1] = (stack[sp - 1] != 0 || stack[sp] != 0) ? 1 : 0; break;
        case Code::Implies: --sp; stack[sp - 1] = (stack[sp - 1] == 0 || stack[sp] != 0) ? 1 : 0; break;
        case Code::Iff: --sp; stack[sp - 1] = ((stack[sp - 1] != 0) == (stack[sp] != 0)) ? 1 : 0; break;
        }
    }
    return stack[0] != 0;
}

} // namespace

Verdict brute_force(const typesys::VerificationCondition& vc, std::int64_t bound) {
    check_size(vc);
    const auto& decls = vc.declarations;

    Compiler compiler(decls);
    compiler.emit(Code::Const, 1);
    for (const auto& f : vc.facts) {
        compiler.pred(f);
        compiler.emit(Code::And);
    }
    compiler.pred(vc.goal);
    compiler.emit(Code::Not);
    compiler.emit(Code::And);
    const auto code = compiler.take();

    std::vector<Range> ranges;
    std::vector<std::uint64_t> radix;
    std::uint64_t total = 1;
    for (const auto& d : decls) {
        ranges.push_back(range_of(d.base, bound));
        radix.push_back(static_cast<std::uint64_t>(ranges.back().hi - ranges.back().lo + 1));
        total *= radix.back();
    }
    const std::size_t n = decls.size();
    const std::size_t stack_size = code.size() + 1;

    // Smallest failing index in lexicographic order; `total` means none.
    std::atomic<std::uint64_t> best{total};
    const auto total_signed = static_cast<std::int64_t>(total);

#pragma omp parallel
    {
        std::vector<std::int64_t> slots(n);
        std::vector<std::int64_t> stack(stack_size);
#pragma omp for schedule(static, 4096)
        for (std::int64_t k = 0; k < total_signed; ++k) {
            const auto index = static_cast<std::uint64_t>(k);
            if (index >= best.load(std::memory_order_relaxed)) continue;
            auto rest = index;
            for (std::size_t i = n; i > 0; --i) {
                slots[i - 1] = ranges[i - 1].lo + static_cast<std::int64_t>(rest % radix[i - 1]);
                rest /= radix[i - 1];
            }
            if (run(code, slots.data(), stack.data())) {
                auto seen = best.load(std::memory_order_relaxed);
                while (index < seen && !best.compare_exchange_weak(seen, index, std::memory_order_relaxed)) {
                }
            }
        }
    }

    auto found = best.load();
    if (found == total) return Verdict::valid(true);
    Model m;
    auto rest = found;
    for (std::size_t i = n; i > 0; --i) {
        m[decls[i - 1].name] =
            as_value(decls[i - 1].base, ranges[i - 1].lo + static_cast<std::int64_t>(rest % radix[i - 1]));
        rest /= radix[i - 1];
    }
    return Verdict::invalid(std::move(m));
}

} // namespace refine::solver
