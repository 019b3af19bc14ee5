// hoca2.cc -- level-2 counter automata, normalization and run classification

#include "hoca/hoca2.hh"

#include "hoca/error.hh"
#include "text.hh"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hoca {

std::size_t L2ConfigurationHash::operator()(const L2Configuration& c) const noexcept {
    std::size_t h = c.state;
    for (const L2Entry& e : c.stack)
        h = h * 1000003u ^ (e.symbol * 7919u + e.counter);
    return h;
}

Hocs2::Hocs2(std::vector<std::string> alphabet)
    : alphabet_(StorageExpr::pushdown(std::move(alphabet), StorageExpr::counter()).alphabet()) {}

Symbol Hocs2::symbol(std::string_view name) const {
    auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
    if (it == alphabet_.end())
        throw UnknownSymbol(std::string(name));
    return static_cast<Symbol>(it - alphabet_.begin());
}

StorageExpr Hocs2::storage() const { return StorageExpr::pushdown(alphabet_, StorageExpr::counter()); }

StateId Hocs2::add_state(const std::string& name) {
    if (has_state(name))
        throw Error("duplicate state '" + name + "'");
    states_.push_back(name);
    return static_cast<StateId>(states_.size() - 1);
}

StateId Hocs2::state_id(std::string_view name) const {
    auto it = std::find(states_.begin(), states_.end(), name);
    if (it == states_.end())
        throw UnknownState(std::string(name));
    return static_cast<StateId>(it - states_.begin());
}

bool Hocs2::has_state(std::string_view name) const {
    return std::find(states_.begin(), states_.end(), name) != states_.end();
}

std::string Hocs2::fresh_name(const std::string& base) const {
    if (!has_state(base))
        return base;
    for (std::size_t i = 1;; ++i) {
        std::string candidate = base + "'" + std::to_string(i);
        if (!has_state(candidate))
            return candidate;
    }
}

void Hocs2::add_transition(const L2Transition& t) {
    if (t.from >= states_.size() || t.to >= states_.size())
        throw UnknownState(std::to_string(std::max(t.from, t.to)));
    if (t.top >= alphabet_.size() || (t.op.kind == L2OpKind::Push && t.op.symbol >= alphabet_.size()))
        throw UnknownSymbol(std::to_string(std::max(t.top, t.op.symbol)));
    transitions_.push_back(t);
}

std::size_t height(const L2Config& c) { return c.size(); }

std::optional<L2Config> apply(const L2Op& op, const L2Config& c) {
    L2Config out = c;
    switch (op.kind) {
    case L2OpKind::Pop:
        if (c.size() < 2)
            return std::nullopt;
        out.pop_back();
        return out;
    case L2OpKind::Push:
        out.push_back(L2Entry{op.symbol, c.back().counter});
        return out;
    case L2OpKind::Inc:
        ++out.back().counter;
        return out;
    case L2OpKind::Dec:
        if (c.back().counter == 0)
            return std::nullopt;
        --out.back().counter;
        return out;
    case L2OpKind::Nop:
        return out;
    }
    return std::nullopt;
}

std::vector<L2Successor> successors(const Hocs2& a, const L2Configuration& c) {
    std::vector<L2Successor> out;
    const Symbol top = c.stack.back().symbol;
    const auto& ts = a.transitions();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i].from != c.state || ts[i].top != top)
            continue;
        if (auto next = apply(ts[i].op, c.stack))
            out.push_back(L2Successor{i, L2Configuration{ts[i].to, std::move(*next)}});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conversion from generic automata

namespace {

bool is_pc_storage(const StorageExpr& e) {
    return e.kind() == StorageKind::Pushdown && e.inner().kind() == StorageKind::Counter;
}

/// Top symbols σ at which a generic transition over P_Σ(C) can fire.
std::vector<Symbol> firing_symbols(const StorageExpr& e, const Transition& t) {
    std::vector<Symbol> out;
    const auto n = static_cast<unsigned>(e.alphabet().size());
    for (Symbol s = 0; s < n; ++s) {
        // Outcome: Top(s) at level 2, and the inner Top(_) which always holds.
        const TestMask outcome = (TestMask{1} << s) | (TestMask{1} << n);
        if (t.matches(outcome))
            out.push_back(s);
    }
    return out;
}

/// The restricted instruction for a generic op, if it is one.
std::optional<L2Op> restricted(const OpId& op) {
    switch (op.kind()) {
    case OpKind::Pop:
        return L2Op::pop();
    case OpKind::Id:
        return L2Op::nop();
    case OpKind::Push:
        if (op.is_plain_push())
            return L2Op::push(op.symbol());
        return std::nullopt;
    case OpKind::Stay:
        switch (op.inner().kind()) {
        case OpKind::PushSym:
            return L2Op::inc();
        case OpKind::Pop:
            return L2Op::dec();
        case OpKind::Id:
            return L2Op::nop();
        default:
            return std::nullopt;
        }
    default:
        return std::nullopt;
    }
}

Hocs2 skeleton(const StorageAutomaton& aut) {
    Hocs2 a(aut.storage().alphabet());
    for (StateId s = 0; s < aut.num_states(); ++s)
        a.add_state(aut.state_name(s));
    a.set_initial(aut.initial());
    return a;
}

/// Rejects, with its line, the first transition whose operation is not
/// one of the restricted forms. Runs before type checking so that nested
/// stays are reported as unsupported rather than ill-typed.
void check_restricted_syntax(std::string_view input) {
    auto lines = text::lines(input);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string_view line = text::trim(text::strip_comment(lines[ln]));
        std::string_view key, value;
        if (line.empty() || !text::split_key(line, key, value) || key != "trans")
            continue;
        text::Cursor cur(value);
        try {
            cur.ident();
            if (cur.accept('[')) {
                auto close = cur.rest().find(']');
                if (close == std::string_view::npos)
                    continue;
                cur.set_pos(cur.pos() + close + 1);
            }
            std::string op = cur.ident();
            if (cur.peek() == '(') {
                cur.expect('(');
                op += "(" + std::string(cur.balanced()) + ")";
            }
            std::string compact;
            for (char c : op)
                if (!std::isspace(static_cast<unsigned char>(c)))
                    compact += c;
            const bool plain_push = compact.rfind("push(", 0) == 0 && compact.find_first_of(",()", 5) == compact.size() - 1;
            if (compact == "pop" || compact == "id" || compact == "stay(pushsym(_))" || compact == "stay(pop)" ||
                compact == "stay(id)" || plain_push)
                continue;
            throw UnsupportedOp(compact, ln + 1);
        } catch (const SyntaxError&) {
            continue; // reported with context by the full parser
        }
    }
}

} // namespace

Hocs2 parse_hocs2(std::string_view text) {
    check_restricted_syntax(text);
    std::vector<std::size_t> lines;
    StorageAutomaton aut = parse_automaton(text, &lines);
    if (!is_pc_storage(aut.storage()))
        throw IllTyped("expected storage P{...}(C), got " + to_string(aut.storage()));
    Hocs2 a = skeleton(aut);
    for (std::size_t i = 0; i < aut.transitions().size(); ++i) {
        const Transition& t = aut.transitions()[i];
        auto op = restricted(t.op);
        if (!op)
            throw UnsupportedOp(to_string(aut.storage(), t.op), lines[i]);
        for (Symbol s : firing_symbols(aut.storage(), t))
            a.add_transition(L2Transition{t.from, s, *op, t.to});
    }
    return a;
}

StorageAutomaton to_generic(const Hocs2& a) {
    StorageAutomaton aut(a.storage());
    for (StateId s = 0; s < a.num_states(); ++s)
        aut.add_state(a.state_name(s));
    aut.set_initial(a.initial());
    for (const L2Transition& t : a.transitions()) {
        OpId op;
        switch (t.op.kind) {
        case L2OpKind::Pop:
            op = OpId::pop();
            break;
        case L2OpKind::Push:
            op = OpId::push(t.op.symbol);
            break;
        case L2OpKind::Inc:
            op = OpId::stay(OpId::push_sym(kBottom));
            break;
        case L2OpKind::Dec:
            op = OpId::stay(OpId::pop());
            break;
        case L2OpKind::Nop:
            op = OpId::id();
            break;
        }
        aut.add_transition(t.from, {TestLiteral{TestId::top(t.top), true}}, t.to, op);
    }
    return aut;
}

StorageConfig to_storage(const L2Config& c) {
    std::vector<StackEntry> entries;
    for (const L2Entry& e : c)
        entries.push_back(StackEntry{e.symbol, StorageConfig::counter(e.counter)});
    return StorageConfig::of_stack(std::move(entries));
}

L2Config from_storage(const StorageConfig& c) {
    L2Config out;
    for (const StackEntry& e : c.stack)
        out.push_back(L2Entry{e.symbol, e.inner.count});
    return out;
}

Normalized normalize(const Hocs2& input, StateId q) {
    Hocs2 a = input;
    const StateId drain = a.add_state(a.fresh_name("drain"));
    for (Symbol s = 0; s < a.num_symbols(); ++s) {
        a.add_transition({q, s, L2Op::nop(), drain});
        a.add_transition({drain, s, L2Op::pop(), drain});
        a.add_transition({drain, s, L2Op::dec(), drain});
    }
    return Normalized{std::move(a), drain};
}

Normalized normalize(const StorageAutomaton& aut, StateId q) {
    if (!is_pc_storage(aut.storage()))
        throw IllTyped("normalization expects storage P{...}(C), got " + to_string(aut.storage()));
    Hocs2 a = skeleton(aut);
    for (std::size_t i = 0; i < aut.transitions().size(); ++i) {
        const Transition& t = aut.transitions()[i];
        const auto symbols = firing_symbols(aut.storage(), t);
        if (symbols.empty())
            continue;
        if (auto op = restricted(t.op)) {
            for (Symbol s : symbols)
                a.add_transition({t.from, s, *op, t.to});
            continue;
        }
        // push(γ,f): push γ into an intermediate state, then apply f there.
        if (t.op.kind() != OpKind::Push)
            throw IllTyped("unexpected operation " + to_string(aut.storage(), t.op));
        auto f = restricted(OpId::stay(t.op.inner()));
        if (!f)
            throw IllTyped("unexpected operation " + to_string(aut.storage(), t.op));
        const StateId mid = a.add_state(a.fresh_name(aut.state_name(t.from) + ".t" + std::to_string(i)));
        for (Symbol s : symbols)
            a.add_transition({t.from, s, L2Op::push(t.op.symbol()), mid});
        a.add_transition({mid, t.op.symbol(), *f, t.to});
    }
    return normalize(a, q);
}

// ---------------------------------------------------------------------------
// Text forms

std::string to_string(const Hocs2& a, const L2Op& op) {
    switch (op.kind) {
    case L2OpKind::Pop:
        return "pop";
    case L2OpKind::Push:
        return "push(" + a.symbol_name(op.symbol) + ")";
    case L2OpKind::Inc:
        return "stay(pushsym(_))";
    case L2OpKind::Dec:
        return "stay(pop)";
    case L2OpKind::Nop:
        return "id";
    }
    return "?";
}

std::string to_string(const Hocs2& a) {
    std::ostringstream out;
    out << "storage: P{";
    for (std::size_t i = 0; i < a.num_symbols(); ++i)
        out << (i ? "," : "") << a.symbol_name(static_cast<Symbol>(i));
    out << "}(C)\nstates:";
    for (StateId s = 0; s < a.num_states(); ++s)
        out << ' ' << a.state_name(s);
    out << "\ninitial: " << a.state_name(a.initial()) << "\n";
    for (const L2Transition& t : a.transitions())
        out << "trans: " << a.state_name(t.from) << " [top=" << a.symbol_name(t.top) << "] " << to_string(a, t.op)
            << ' ' << a.state_name(t.to) << "\n";
    return out.str();
}

L2Config parse_l2_config(const Hocs2& a, std::string_view s) {
    text::Cursor cur(s);
    L2Config out;
    while (!cur.at_end()) {
        cur.expect('(');
        Symbol sym = a.symbol(cur.ident());
        cur.expect(',');
        std::uint64_t n = cur.number();
        cur.expect(')');
        out.push_back(L2Entry{sym, n});
    }
    if (out.empty())
        throw SyntaxError("empty configuration", 0);
    return out;
}

std::string to_string(const Hocs2& a, const L2Config& c) {
    std::string out;
    for (const L2Entry& e : c)
        out += "(" + a.symbol_name(e.symbol) + "," + std::to_string(e.counter) + ")";
    return out;
}

L2Configuration parse_l2_configuration(const Hocs2& a, std::string_view s) {
    text::Cursor cur(s);
    cur.expect('(');
    StateId q = a.state_id(cur.ident());
    cur.expect(',');
    std::string_view body = cur.balanced();
    cur.expect(')');
    if (!cur.at_end())
        cur.fail("trailing input after configuration");
    return L2Configuration{q, parse_l2_config(a, body)};
}

std::string to_string(const Hocs2& a, const L2Configuration& c) {
    return "(" + a.state_name(c.state) + "," + to_string(a, c.stack) + ")";
}

// ---------------------------------------------------------------------------
// Runs

void validate(const Hocs2& a, const L2Trace& t) {
    if (t.configs.size() != t.transitions.size() + 1)
        throw InvalidTrace("a trace has one more configuration than transitions");
    if (t.configs.front().stack.empty())
        throw InvalidTrace("empty storage configuration");
    for (std::size_t i = 0; i < t.transitions.size(); ++i) {
        if (t.transitions[i] >= a.transitions().size())
            throw InvalidTrace("transition index out of range at step " + std::to_string(i));
        const L2Transition& tr = a.transitions()[t.transitions[i]];
        const L2Configuration& c = t.configs[i];
        auto next = c.stack.empty() || c.state != tr.from || c.stack.back().symbol != tr.top
                        ? std::nullopt
                        : apply(tr.op, c.stack);
        if (!next || t.configs[i + 1] != L2Configuration{tr.to, *next})
            throw InvalidTrace("step " + std::to_string(i) + " is not a transition of the automaton");
    }
}

RunClass classify_run(const Hocs2& a, const L2Trace& t, std::size_t base_height) {
    validate(a, t);
    const L2Config& start = t.configs.front().stack;
    if (start.size() != base_height || base_height < 1)
        return RunClass::Neither;
    const L2Config prefix(start.begin(), start.end() - 1);
    const L2Config& end = t.configs.back().stack;
    for (std::size_t i = 0; i + 1 < t.configs.size(); ++i)
        if (t.configs[i].stack == prefix)
            return RunClass::Neither;
    if (end == prefix)
        return RunClass::Return;
    if (end == start)
        return RunClass::Loop;
    return RunClass::Neither;
}

std::string dump_trace(const Hocs2& a, const L2Trace& t) {
    std::string out;
    for (const L2Configuration& c : t.configs)
        out += a.state_name(c.state) + " | " + to_string(a, c.stack) + "\n";
    return out;
}

} // namespace hoca
