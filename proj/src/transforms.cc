// transforms.cc -- storage simulations at level 2

#include "hoca/transforms.hh"

#include "hoca/error.hh"

#include <map>
#include <string>

namespace hoca {

namespace {

enum class StepKind { Pop, InvPush, Push, Inc, Dec, Id };

/// One restricted operation of the input, after splitting push(γ,f).
struct Step {
    StateId from = 0;
    TestMask care = 0;
    TestMask value = 0;
    StateId to = 0;
    StepKind kind = StepKind::Id;
    Symbol symbol = kBottom;
    std::size_t source = 0; ///< input transition index
};

const OpId& inc_op() {
    static const OpId op = OpId::push_sym(kBottom);
    return op;
}
const OpId& dec_op() {
    static const OpId op = OpId::pop();
    return op;
}

std::size_t line_of(const std::vector<std::size_t>* lines, std::size_t i) {
    return lines && i < lines->size() ? (*lines)[i] : i + 1;
}

/// Inner counter operation as a step kind.
std::optional<StepKind> counter_step(const OpId& f) {
    switch (f.kind()) {
    case OpKind::PushSym:
        return StepKind::Inc;
    case OpKind::Pop:
        return StepKind::Dec;
    case OpKind::Id:
        return StepKind::Id;
    default:
        return std::nullopt;
    }
}

void check_input(const StorageAutomaton& a, StorageKind level2, const char* pass) {
    const StorageExpr& e = a.storage();
    if (e.kind() != level2 || !e.inner().is_counter())
        throw IllTyped(std::string(pass) + ": unexpected storage " + to_string(e));
    if (a.is_alternating())
        throw IllTyped(std::string(pass) + ": universal states are not supported");
}

/// Copies the states of `a` into `out` (same ids) and splits every
/// transition into restricted steps, adding one state per split.
std::vector<Step> restricted_steps(const StorageAutomaton& a, StorageAutomaton& out,
                                   const std::vector<std::size_t>* lines) {
    for (StateId q = 0; q < a.num_states(); ++q)
        out.add_state(a.state_name(q));
    out.set_initial(a.initial());
    out.set_final(a.final_state());

    std::vector<Step> steps;
    const StorageExpr& e = a.storage();
    for (std::size_t i = 0; i < a.transitions().size(); ++i) {
        const Transition& t = a.transitions()[i];
        const OpId& op = t.op;
        auto bad = [&] { return UnsupportedOp(to_string(e, op), line_of(lines, i)); };
        Step s{t.from, t.care, t.value, t.to, StepKind::Id, kBottom, i};
        switch (op.kind()) {
        case OpKind::Pop:
            s.kind = StepKind::Pop;
            break;
        case OpKind::InvPush:
            s.kind = StepKind::InvPush;
            s.symbol = op.symbol();
            break;
        case OpKind::Id:
            break;
        case OpKind::Stay: {
            auto k = counter_step(op.inner());
            if (!k)
                throw bad();
            s.kind = *k;
            break;
        }
        case OpKind::Push: {
            s.kind = StepKind::Push;
            s.symbol = op.symbol();
            auto k = counter_step(op.inner());
            if (!k)
                throw bad();
            if (*k != StepKind::Id) {
                const StateId mid = out.add_state(out.fresh_name("t" + std::to_string(i) + ".split"));
                s.to = mid;
                steps.push_back(s);
                s = Step{mid, 0, 0, t.to, *k, kBottom, i};
            }
            break;
        }
        default:
            throw bad();
        }
        steps.push_back(s);
    }
    return steps;
}

/// Adds a chain from `from` to `to` performing `ops`; the first transition
/// carries `tests`. Intermediate states are named base.1, base.2, ...
void chain(StorageAutomaton& out, StateId from, const std::vector<TestLiteral>& tests, const std::vector<OpId>& ops,
           StateId to, const std::string& base) {
    if (ops.empty()) {
        out.add_transition(from, tests, to, OpId::id());
        return;
    }
    StateId cur = from;
    for (std::size_t k = 0; k < ops.size(); ++k) {
        const StateId next =
            k + 1 == ops.size() ? to : out.add_state(out.fresh_name(base + "." + std::to_string(k + 1)));
        out.add_transition(cur, k == 0 ? tests : std::vector<TestLiteral>{}, next, ops[k]);
        cur = next;
    }
}

// ---------------------------------------------------------------------------
// Symbol elimination

/// Mod-3 code of an input symbol; `_` is 2.
unsigned code_of(Symbol s) { return (s + 2) % 3; }
Symbol symbol_of(unsigned code) { return (code + 1) % 3; }

} // namespace

StorageAutomaton eliminate_level2_symbols(const StorageAutomaton& a, const std::vector<std::size_t>* lines) {
    check_input(a, StorageKind::Pushdown, "symbol elimination");
    const StorageExpr& in = a.storage();
    if (in.alphabet().size() > 3)
        throw IllTyped("symbol elimination needs at most three symbols, got " + to_string(in));

    StorageAutomaton out(StorageExpr::pushdown({"_"}, StorageExpr::zcounter()));
    const std::vector<Step> steps = restricted_steps(a, out, lines);
    for (const Step& s : steps)
        if (s.kind == StepKind::InvPush)
            throw UnsupportedOp(to_string(in, OpId::inv_push(s.symbol)), line_of(lines, s.source));

    const OpId push_copy = OpId::push(kBottom), pop = OpId::pop(), inc = OpId::stay(inc_op()),
               dec = OpId::stay(dec_op());
    const TestLiteral zero{TestId::empty().wrapped(), true}, nonzero{TestId::empty().wrapped(), false};
    auto repeat = [](const OpId& op, std::size_t n) { return std::vector<OpId>(n, op); };

    std::map<StateId, std::vector<const Step*>> by_state;
    for (const Step& s : steps)
        by_state[s.from].push_back(&s);

    for (const auto& [q, qsteps] : by_state) {
        const std::string name = out.state_name(q);
        // Copy the top entry and count the copy down modulo 3.
        StateId mod[3], sym[3];
        for (unsigned i = 0; i < 3; ++i)
            mod[i] = out.add_state(out.fresh_name(name + ".mod" + std::to_string(i)));
        for (unsigned i = 0; i < 3; ++i)
            sym[i] = out.add_state(out.fresh_name(name + ".sym" + std::to_string(i)));
        out.add_transition(q, {}, mod[0], push_copy);
        for (unsigned i = 0; i < 3; ++i) {
            out.add_transition(mod[i], {nonzero}, mod[(i + 1) % 3], dec);
            out.add_transition(mod[i], {zero}, sym[i], pop);
        }
        for (unsigned i = 0; i < 3; ++i) {
            const Symbol sigma = symbol_of(i);
            if (sigma >= in.alphabet().size())
                continue;
            // Decrement by the code, test for zero, restore.
            StateId probe = sym[i];
            if (i > 0) {
                probe = out.add_state(out.fresh_name(name + ".sym" + std::to_string(i) + ".probe"));
                chain(out, sym[i], {}, repeat(dec, i), probe, name + ".sym" + std::to_string(i) + ".d");
            }
            for (const bool empty : {true, false}) {
                const std::string tag = std::to_string(i) + (empty ? "z" : "n");
                const StateId at = out.add_state(out.fresh_name(name + ".at" + tag));
                chain(out, probe, {empty ? zero : nonzero}, repeat(inc, i), at, name + ".at" + tag + ".r");

                StorageConfig sample = StorageConfig::of_stack({StackEntry{kBottom, StorageConfig::counter(0)}});
                if (sigma == kBottom)
                    sample.stack.back().inner = StorageConfig::counter(empty ? 0 : 1);
                else
                    sample.stack.push_back(StackEntry{sigma, StorageConfig::counter(empty ? 0 : 1)});
                const TestMask outcome = test_mask(in, sample);

                for (const Step* s : qsteps) {
                    if ((outcome & s->care) != s->value)
                        continue;
                    std::vector<OpId> ops;
                    switch (s->kind) {
                    case StepKind::Pop:
                        ops = {pop};
                        break;
                    case StepKind::Push:
                        ops = {push_copy};
                        for (const OpId& op : repeat(dec, i))
                            ops.push_back(op);
                        for (const OpId& op : repeat(inc, code_of(s->symbol)))
                            ops.push_back(op);
                        break;
                    case StepKind::Inc:
                        ops = repeat(inc, 3);
                        break;
                    case StepKind::Dec:
                        ops = repeat(dec, 3);
                        break;
                    default:
                        ops = {OpId::id()};
                        break;
                    }
                    chain(out, at, {}, ops, s->to, "t" + std::to_string(s->source) + "." + tag);
                }
            }
        }
    }

    // The bottom entry starts at 3*0 + code(_).
    const StateId init = out.add_state(out.fresh_name("init"));
    chain(out, init, {}, {inc, inc}, a.initial(), "init");
    out.set_initial(init);
    return out;
}

// ---------------------------------------------------------------------------
// Pop and inverse push
//
// A logical entry (γ, x) pushed on an entry with inner y is stored as a
// base block for γ, followed by one undo block per counter update since the
// push, in reduced form: an update that reverses the topmost undo block
// removes it instead. Every storage entry of a block carries the current
// inner value, so inner tests read the logical top directly. Blocks are
// written over {_,0,1} with a top digit in {0,1}, which keeps `_` on top
// exactly when the logical stack has height one.

namespace {

enum Annotation : unsigned { Base = 0, UndoInc = 1, UndoDec = 2 };

constexpr int kNoBlock = -1;

class BlockCoder {
public:
    explicit BlockCoder(std::size_t symbols) : symbols_(symbols), width_(block_width(symbols)) {}

    std::size_t width() const { return width_; }
    std::size_t blocks() const { return 3 * symbols_; }
    static int block(Symbol gamma, Annotation a) { return static_cast<int>(3 * gamma + a); }
    static Symbol symbol(int k) { return static_cast<Symbol>(k / 3); }
    static Annotation annotation(int k) { return static_cast<Annotation>(k % 3); }

    /// Output symbols of block k, top first.
    std::vector<Symbol> digits(int k) const {
        std::vector<Symbol> d{static_cast<Symbol>(1 + k % 2)};
        for (int r = k / 2; d.size() < width_; r /= 3)
            d.push_back(static_cast<Symbol>(r % 3));
        return d;
    }
    /// Inverse of digits(), or kNoBlock.
    int decode(const std::vector<Symbol>& d) const {
        int r = 0;
        for (std::size_t i = d.size(); i-- > 1;)
            r = 3 * r + static_cast<int>(d[i]);
        const int k = 2 * r + static_cast<int>(d[0]) - 1;
        return k >= 0 && static_cast<std::size_t>(k) < blocks() ? k : kNoBlock;
    }

private:
    std::size_t symbols_;
    std::size_t width_;
};

class AnnotatedBuilder {
public:
    AnnotatedBuilder(StorageAutomaton& out, const BlockCoder& coder, bool output_has_pop)
        : out_(out), coder_(coder), has_pop_(output_has_pop) {}

    /// States at which the top block of `u` has been read and restored,
    /// keyed by block (kNoBlock: the logical stack has height one).
    const std::map<int, StateId>& reader(StateId u) {
        auto it = readers_.find(u);
        if (it != readers_.end())
            return it->second;
        std::map<int, StateId>& at = readers_[u];
        read(u, u, {}, at);
        return at;
    }

    std::vector<OpId> push_block(int k, const OpId& f) const {
        const std::vector<Symbol> d = coder_.digits(k);
        std::vector<OpId> ops;
        for (std::size_t i = d.size(); i-- > 0;)
            ops.push_back(i + 1 == d.size() ? OpId::push(d[i], f) : OpId::push(d[i]));
        return ops;
    }

    /// Removes block k, undoing its counter update first when it has one.
    std::vector<OpId> remove_block(int k) const {
        const std::vector<Symbol> d = coder_.digits(k);
        std::vector<OpId> ops;
        for (std::size_t i = 0; i < d.size(); ++i) {
            const bool last = i + 1 == d.size();
            if (has_pop_) {
                ops.push_back(OpId::pop());
                continue;
            }
            if (last && BlockCoder::annotation(k) != Base)
                ops.push_back(OpId::stay(BlockCoder::annotation(k) == UndoInc ? inc_op() : dec_op()));
            ops.push_back(OpId::inv_push(d[i]));
        }
        return ops;
    }

private:
    void read(StateId u, StateId cur, const std::vector<Symbol>& prefix, std::map<int, StateId>& at) {
        const std::string base = out_.state_name(u) + ".read";
        for (Symbol s = 0; s < 3; ++s) {
            const TestLiteral top{TestId::top(s), true};
            if (prefix.empty() && s == kBottom) {
                at[kNoBlock] = out_.add_state(out_.fresh_name(base + "_"));
                out_.add_transition(cur, {top}, at[kNoBlock], OpId::id());
                continue;
            }
            std::vector<Symbol> seen = prefix;
            seen.push_back(s);
            std::string tag;
            for (Symbol d : seen)
                tag += static_cast<char>('0' + d);
            if (seen.size() < coder_.width()) {
                const StateId next = out_.add_state(out_.fresh_name(base + tag));
                out_.add_transition(cur, {top}, next, has_pop_ ? OpId::pop() : OpId::inv_push(s));
                read(u, next, seen, at);
                continue;
            }
            const int k = coder_.decode(seen);
            if (k == kNoBlock)
                continue;
            at[k] = out_.add_state(out_.fresh_name(out_.state_name(u) + ".at" + std::to_string(k)));
            std::vector<OpId> restore;
            for (std::size_t i = prefix.size(); i-- > 0;)
                restore.push_back(OpId::push(prefix[i]));
            chain(out_, cur, {top}, restore, at[k], base + tag + ".r");
        }
    }

    StorageAutomaton& out_;
    const BlockCoder& coder_;
    bool has_pop_;
    std::map<StateId, std::map<int, StateId>> readers_;
};

StorageAutomaton annotate(const StorageAutomaton& a, const std::vector<std::size_t>* lines, bool to_inv) {
    check_input(a, to_inv ? StorageKind::Pushdown : StorageKind::PushdownInv,
                to_inv ? "pop to inverse push" : "inverse push to pop");
    const StorageExpr& in = a.storage();
    const StorageExpr inner = in.inner();
    StorageAutomaton out(to_inv ? StorageExpr::pushdown_inv({"_", "0", "1"}, inner)
                                : StorageExpr::pushdown({"_", "0", "1"}, inner));
    const std::vector<Step> steps = restricted_steps(a, out, lines);
    const BlockCoder coder(in.alphabet().size());
    AnnotatedBuilder b(out, coder, !to_inv);

    for (const Step& s : steps) {
        if (s.kind == (to_inv ? StepKind::InvPush : StepKind::Pop))
            throw UnsupportedOp(to_string(in, s.kind == StepKind::Pop ? OpId::pop() : OpId::inv_push(s.symbol)),
                                line_of(lines, s.source));
        // Top tests are settled by the block; inner tests carry over.
        std::vector<TestLiteral> inner_tests;
        std::vector<TestLiteral> top_tests;
        for (const TestLiteral& lit : constrained_tests(in, Transition{s.from, s.care, s.value, s.to, OpId::id()}))
            (lit.test.depth == 0 ? top_tests : inner_tests).push_back(lit);
        auto top_ok = [&](Symbol gamma) {
            for (const TestLiteral& lit : top_tests)
                if ((lit.test.symbol == gamma) != lit.value)
                    return false;
            return true;
        };
        const std::string base = "t" + std::to_string(s.source);
        std::optional<StateId> unwind;

        for (const auto& [k, at] : b.reader(s.from)) {
            const Symbol gamma = k == kNoBlock ? kBottom : BlockCoder::symbol(k);
            if (!top_ok(gamma))
                continue;
            const std::string tag = base + ".at" + (k == kNoBlock ? std::string("_") : std::to_string(k));
            switch (s.kind) {
            case StepKind::Push:
                chain(out, at, inner_tests, b.push_block(BlockCoder::block(s.symbol, Base), OpId::id()), s.to, tag);
                break;
            case StepKind::Inc:
            case StepKind::Dec: {
                const bool inc = s.kind == StepKind::Inc;
                if (k != kNoBlock && BlockCoder::annotation(k) == (inc ? UndoInc : UndoDec)) {
                    // In the pop output the update need not be applied: the
                    // block is popped whole.
                    chain(out, at, inner_tests, b.remove_block(k), s.to, tag);
                } else {
                    const int undo = BlockCoder::block(gamma, inc ? UndoDec : UndoInc);
                    chain(out, at, inner_tests, b.push_block(undo, inc ? inc_op() : dec_op()), s.to, tag);
                }
                break;
            }
            case StepKind::Id:
                out.add_transition(at, inner_tests, s.to, OpId::id());
                break;
            case StepKind::InvPush:
                if (k != kNoBlock && k == BlockCoder::block(s.symbol, Base))
                    chain(out, at, inner_tests, b.remove_block(k), s.to, tag);
                break;
            case StepKind::Pop:
                if (k == kNoBlock)
                    break;
                if (!unwind)
                    unwind = out.add_state(out.fresh_name(base + ".unwind"));
                out.add_transition(at, inner_tests, *unwind, OpId::id());
                break;
            }
        }
        if (!unwind)
            continue;
        // Undo the updates of the top entry one block at a time, then drop
        // its base block.
        for (const auto& [k, at] : b.reader(*unwind)) {
            if (k == kNoBlock)
                continue;
            const bool base_block = BlockCoder::annotation(k) == Base;
            chain(out, at, {}, b.remove_block(k), base_block ? s.to : *unwind,
                  base + ".unwind" + std::to_string(k));
        }
    }
    return out;
}

} // namespace

std::size_t block_width(std::size_t symbols) {
    // 2 * 3^(w-1) blocks fit: the top digit avoids `_`.
    std::size_t w = 1;
    for (std::size_t capacity = 2; capacity < 3 * symbols; capacity *= 3)
        ++w;
    return w;
}

StorageAutomaton pop_to_invpush(const StorageAutomaton& a, const std::vector<std::size_t>* lines) {
    return annotate(a, lines, true);
}

StorageAutomaton invpush_to_pop(const StorageAutomaton& a, const std::vector<std::size_t>* lines) {
    return annotate(a, lines, false);
}

} // namespace hoca
