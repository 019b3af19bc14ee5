// summaries.cc -- return tables, the level-1 simulation and the summary DFA

#include "hoca/summaries.hh"

#include "hoca/error.hh"

#include <algorithm>
#include <map>
#include <sstream>

namespace hoca {

Bounds bounds(std::size_t num_symbols, std::size_t num_states) {
    const std::uint64_t s = num_symbols, q = num_states;
    return Bounds{s * q * q, s * s * q * q * q * q, 2 * s * q * q};
}

Bounds bounds(const Hocs2& a) { return bounds(a.num_symbols(), a.num_states()); }

ReturnTable::ReturnTable(std::size_t num_symbols, std::size_t num_states, std::uint32_t h0)
    : symbols_(num_symbols), states_(num_states), h0_(h0), a_(num_symbols * num_states * num_states, kInfinity) {}

void ReturnTable::set(Symbol s, StateId p, StateId q, std::uint32_t v) {
    if (v != kInfinity && v > h0_)
        throw IllFormedTable("table entry " + std::to_string(v) + " exceeds h0 = " + std::to_string(h0_));
    a_.at(index(s, p, q)) = v;
}

bool ret_query(const ReturnTable& t, Symbol s, StateId p, StateId q, std::uint64_t i) {
    const std::uint32_t a = t.get(s, p, q);
    return a != kInfinity && i >= a;
}

PdsState pda_state(const Hocs2& a, StateId q, Symbol s) {
    return static_cast<PdsState>(q * a.num_symbols() + s);
}

std::vector<StackSym> counter_stack(std::uint32_t h0, std::uint64_t n) {
    std::vector<StackSym> stack;
    stack.reserve(n + 1);
    for (std::uint64_t j = n + 1; j-- > 0;)
        stack.push_back(j > h0 ? h0 + 1 : static_cast<StackSym>(j));
    return stack;
}

Pds generate_pda(const Hocs2& a, const ReturnTable& table) {
    if (table.num_symbols() != a.num_symbols() || table.num_states() != a.num_states())
        throw IllFormedTable("table dimensions do not match the automaton");
    const std::uint32_t h0 = table.h0();
    const StackSym inf = h0 + 1;
    Pds pds;
    for (StateId q = 0; q < a.num_states(); ++q)
        for (Symbol s = 0; s < a.num_symbols(); ++s)
            pds.add_state("(" + a.state_name(q) + "," + a.symbol_name(s) + ")");
    for (std::uint32_t i = 0; i <= h0; ++i)
        pds.add_symbol("_" + std::to_string(i));
    pds.add_symbol("_inf");

    for (const L2Transition& t : a.transitions()) {
        const PdsState from = pda_state(a, t.from, t.top);
        const PdsState to = pda_state(a, t.to, t.top);
        switch (t.op.kind) {
        case L2OpKind::Dec:
            // ⊥_0 is never popped: it stands for counter 0.
            for (StackSym x = 1; x <= inf; ++x)
                pds.add_rule(from, x, to, {});
            break;
        case L2OpKind::Inc:
            for (StackSym x = 0; x < h0; ++x)
                pds.add_rule(from, x, to, {x + 1, x});
            pds.add_rule(from, h0, to, {inf, h0});
            pds.add_rule(from, inf, to, {inf, inf});
            break;
        case L2OpKind::Nop:
            for (StackSym x = 0; x <= inf; ++x)
                pds.add_rule(from, x, to, {x});
            break;
        case L2OpKind::Push:
            for (StateId r = 0; r < a.num_states(); ++r) {
                const std::uint32_t v = table.get(t.op.symbol, t.to, r);
                if (v == kInfinity)
                    continue;
                const PdsState back = pda_state(a, r, t.top);
                for (StackSym x = v; x <= inf; ++x)
                    pds.add_rule(from, x, back, {x});
            }
            break;
        case L2OpKind::Pop:
            break; // a return of the current entry, handled by the caller
        }
    }
    return pds;
}

namespace {

/// For the pre* automaton `b`, the least i such that b accepts ⊥_i ... ⊥_0
/// from each state, or kInfinity. Suffix sets B_j (states accepting
/// ⊥_j ... ⊥_0) are computed for j = 0..h0.
std::vector<std::uint32_t> least_accepted_counters(const PAutomaton& b, std::uint32_t h0) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> by_symbol(h0 + 2);
    for (std::size_t s = 0; s < b.num_states(); ++s)
        for (const auto& [x, t] : b.out(s))
            by_symbol[x].emplace_back(s, t);
    std::vector<bool> current(b.num_states());
    for (std::size_t s = 0; s < b.num_states(); ++s)
        current[s] = b.is_accepting(s);
    std::vector<std::uint32_t> least(b.num_states(), kInfinity);
    for (std::uint32_t j = 0; j <= h0; ++j) {
        std::vector<bool> next(b.num_states(), false);
        for (const auto& [s, t] : by_symbol[j])
            if (current[t])
                next[s] = true;
        for (std::size_t s = 0; s < b.num_states(); ++s)
            if (next[s] && least[s] == kInfinity)
                least[s] = j;
        current = std::move(next);
    }
    return least;
}

ReturnTable sweep(const Hocs2& a, const ReturnTable& table) {
    const Pds pds = generate_pda(a, table);
    ReturnTable next(a.num_symbols(), a.num_states(), table.h0());
    // Pop transitions grouped by the (state, symbol) they fire from.
    std::map<PdsState, std::vector<const L2Transition*>> pops;
    for (const L2Transition& t : a.transitions())
        if (t.op.kind == L2OpKind::Pop)
            pops[pda_state(a, t.from, t.top)].push_back(&t);
    for (const auto& [target, ts] : pops) {
        const Symbol s = ts.front()->top;
        const auto least = least_accepted_counters(pre_star(pds, any_stack(pds, target)), table.h0());
        for (StateId p = 0; p < a.num_states(); ++p) {
            const std::uint32_t v = least[pda_state(a, p, s)];
            if (v == kInfinity)
                continue;
            for (const L2Transition* t : ts)
                if (v < next.get(s, p, t->to))
                    next.set(s, p, t->to, v);
        }
    }
    return next;
}

} // namespace

TableRun compute_return_table(const Hocs2& a, const TableOptions& options) {
    const Bounds b = bounds(a);
    if (b.h0 >= kInfinity)
        throw IllFormedTable("automaton too large for a return table");
    TableRun run{ReturnTable(a.num_symbols(), a.num_states(), static_cast<std::uint32_t>(b.h0)), 0, {}};
    if (options.keep_history)
        run.history.push_back(run.table);
    for (std::uint64_t k = 0; k <= b.k0; ++k) {
        ReturnTable next = sweep(a, run.table);
        ++run.sweeps;
        const bool fixpoint = next == run.table;
        run.table = std::move(next);
        if (options.keep_history)
            run.history.push_back(run.table);
        if (fixpoint && options.early_stop)
            break;
    }
    return run;
}

bool reach_hoca(const Hocs2& a, StateId target, const ReturnTable& table) {
    if (target == a.initial())
        return true;
    const Pds pds = generate_pda(a, table);
    const PdsConfig start{pda_state(a, a.initial(), kBottom), counter_stack(table.h0(), 0)};
    return reach_pda(pds, start, pda_state(a, target, kBottom));
}

bool reach_hoca(const Hocs2& a, StateId target) {
    if (target == a.initial())
        return true;
    return reach_hoca(a, target, compute_return_table(a).table);
}

StatePairs ret_set(const Hocs2& a, const ReturnTable& table, Symbol s, std::uint64_t i) {
    StatePairs out;
    for (StateId p = 0; p < a.num_states(); ++p)
        for (StateId q = 0; q < a.num_states(); ++q)
            if (ret_query(table, s, p, q, i))
                out.emplace(p, q);
    return out;
}

namespace {

StatePairs loops_with(const Hocs2& a, const Pds& pds, std::uint32_t h0, Symbol s, std::uint64_t i) {
    StatePairs out;
    const auto stack = counter_stack(h0, i);
    for (StateId q2 = 0; q2 < a.num_states(); ++q2) {
        const PAutomaton pre = pre_star(pds, singleton(pds, PdsConfig{pda_state(a, q2, s), stack}));
        for (StateId q = 0; q < a.num_states(); ++q)
            if (q == q2 || pre.accepts(PdsConfig{pda_state(a, q, s), stack}))
                out.emplace(q, q2);
    }
    return out;
}

} // namespace

StatePairs loops_query(const Hocs2& a, const ReturnTable& table, Symbol s, std::uint64_t i) {
    const Bounds b = bounds(a);
    return loops_with(a, generate_pda(a, table), table.h0(), s, std::min<std::uint64_t>(i, b.n0));
}

std::size_t SummaryDfa::state_after(std::uint64_t n) const {
    std::size_t state = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
        const std::size_t following = next[state];
        if (following == state)
            break;
        state = following;
    }
    return state;
}

SummaryDfa build_summary_dfa(const Hocs2& a, const ReturnTable& table) {
    const Bounds b = bounds(a);
    const Pds pds = generate_pda(a, table);
    SummaryDfa dfa;
    for (std::uint64_t i = 0; i <= b.n0; ++i) {
        SummaryValue v;
        for (Symbol s = 0; s < a.num_symbols(); ++s) {
            v.ret.push_back(ret_set(a, table, s, i));
            v.loops.push_back(loops_with(a, pds, table.h0(), s, i));
        }
        dfa.chain.push_back(std::move(v));
    }
    // Two positions of the chain are equivalent iff their futures agree,
    // i.e. iff both lie in the final constant segment.
    std::size_t stable = dfa.chain.size() - 1;
    while (stable > 0 && dfa.chain[stable - 1] == dfa.chain.back())
        --stable;
    for (std::size_t i = 0; i <= stable; ++i) {
        dfa.values.push_back(dfa.chain[i]);
        dfa.next.push_back(i < stable ? i + 1 : i);
    }
    return dfa;
}

SummaryDfa build_summary_dfa(const Hocs2& a) { return build_summary_dfa(a, compute_return_table(a).table); }

std::string to_string(const Hocs2& a, const ReturnTable& t) {
    std::ostringstream out;
    for (Symbol s = 0; s < a.num_symbols(); ++s)
        for (StateId p = 0; p < a.num_states(); ++p)
            for (StateId q = 0; q < a.num_states(); ++q) {
                const std::uint32_t v = t.get(s, p, q);
                out << a.symbol_name(s) << ' ' << a.state_name(p) << ' ' << a.state_name(q) << ' '
                    << (v == kInfinity ? std::string("inf") : std::to_string(v)) << "\n";
            }
    return out.str();
}

std::string to_string(const Hocs2& a, const SummaryValue& v) {
    auto pairs = [&](const StatePairs& ps) {
        std::string out = "{";
        bool first = true;
        for (const auto& [p, q] : ps) {
            out += (first ? "" : ",") + std::string("(") + a.state_name(p) + "," + a.state_name(q) + ")";
            first = false;
        }
        return out + "}";
    };
    std::string out;
    for (Symbol s = 0; s < a.num_symbols(); ++s) {
        if (s)
            out += " ";
        out += a.symbol_name(s) + ":ret=" + pairs(v.ret[s]) + ",loops=" + pairs(v.loops[s]);
    }
    return out;
}

} // namespace hoca
