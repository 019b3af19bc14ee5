// oracle.cc -- bounded explicit-state searches

#include "hoca/oracle.hh"

#include "hoca/error.hh"
#include "text.hh"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace hoca {

Caps Caps::doubled() const {
    Caps c = *this;
    for (auto& h : c.max_height)
        h *= 2;
    c.max_counter = std::max<std::uint64_t>(1, c.max_counter * 2);
    c.max_steps *= 2;
    return c;
}

namespace {

bool admits_rec(const Caps& caps, const StorageExpr& e, const StorageConfig& c, std::size_t level) {
    if (e.is_counter())
        return c.count <= caps.max_counter;
    if (!caps.max_height.empty()) {
        const std::size_t limit = caps.max_height[std::min(level, caps.max_height.size() - 1)];
        if (c.stack.size() > limit)
            return false;
    }
    for (const StackEntry& entry : c.stack)
        if (!admits_rec(caps, e.inner(), entry.inner, level + 1))
            return false;
    return true;
}

/// The explored part of the configuration graph.
struct Graph {
    std::vector<Configuration> nodes;
    std::vector<std::size_t> parent;
    std::vector<std::size_t> via;
    std::vector<std::size_t> depth;
    std::vector<std::vector<std::size_t>> succ;
    std::vector<bool> expanded;
    std::unordered_map<Configuration, std::size_t, ConfigurationHash> index;
    bool pruned = false;
    bool budget_exhausted = false;

    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    Trace trace_to(std::size_t node) const {
        Trace t;
        for (std::size_t n = node; n != kNone; n = parent[n]) {
            t.configs.push_back(nodes[n]);
            if (parent[n] != kNone)
                t.transitions.push_back(via[n]);
        }
        std::reverse(t.configs.begin(), t.configs.end());
        std::reverse(t.transitions.begin(), t.transitions.end());
        return t;
    }
};

/// Breadth-first exploration. Stops early when `stop(node)` holds for a
/// discovered node and returns its index.
template <class Stop>
std::size_t explore(const StorageAutomaton& aut, const Caps& caps, Graph& g, bool keep_edges, Stop stop) {
    auto add = [&](Configuration c, std::size_t parent, std::size_t via, std::size_t depth) {
        auto [it, inserted] = g.index.emplace(c, g.nodes.size());
        if (inserted) {
            g.nodes.push_back(std::move(c));
            g.parent.push_back(parent);
            g.via.push_back(via);
            g.depth.push_back(depth);
            g.succ.emplace_back();
            g.expanded.push_back(false);
        }
        return std::pair{it->second, inserted};
    };
    auto [root, _] = add(aut.initial_configuration(), Graph::kNone, 0, 0);
    if (stop(root))
        return root;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
        std::size_t n = queue.front();
        queue.pop_front();
        if (g.depth[n] >= caps.max_steps) {
            g.pruned = true;
            continue;
        }
        g.expanded[n] = true;
        const Configuration current = g.nodes[n];
        for (Successor& s : successors(aut, current)) {
            if (!caps.admits(aut.storage(), s.config.storage)) {
                g.pruned = true;
                continue;
            }
            if (g.nodes.size() >= caps.max_configs && !g.index.count(s.config)) {
                g.budget_exhausted = true;
                continue;
            }
            auto [m, fresh] = add(std::move(s.config), n, s.transition, g.depth[n] + 1);
            if (keep_edges)
                g.succ[n].push_back(m);
            if (fresh) {
                if (stop(m))
                    return m;
                queue.push_back(m);
            }
        }
    }
    return Graph::kNone;
}

} // namespace

bool Caps::admits(const StorageExpr& e, const StorageConfig& c) const { return admits_rec(*this, e, c, 0); }

namespace {

template <class Pred>
OracleResult reach_where(const StorageAutomaton& aut, const Caps& caps, Pred pred) {
    Graph g;
    std::size_t hit = explore(aut, caps, g, false, [&](std::size_t n) { return pred(g.nodes[n]); });
    OracleResult r;
    r.explored = g.nodes.size();
    r.pruned = g.pruned;
    r.budget_exhausted = g.budget_exhausted;
    if (hit != Graph::kNone) {
        r.verdict = OracleVerdict::Reachable;
        r.trace = g.trace_to(hit);
    }
    return r;
}

} // namespace

OracleResult reach_oracle(const StorageAutomaton& aut, StateId target, const Caps& caps) {
    return reach_where(aut, caps, [&](const Configuration& c) { return c.state == target; });
}

OracleResult reach_config_oracle(const StorageAutomaton& aut, const Configuration& target, const Caps& caps) {
    return reach_where(aut, caps, [&](const Configuration& c) { return c == target; });
}

OracleResult alt_reach_oracle(const StorageAutomaton& aut, StateId target, const Caps& caps) {
    Graph g;
    explore(aut, caps, g, true, [](std::size_t) { return false; });
    const std::size_t n = g.nodes.size();
    // Deduplicate successor lists: two transitions may lead to the same
    // configuration.
    std::vector<std::vector<std::size_t>> pred(n);
    std::vector<std::size_t> pending(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        auto& s = g.succ[v];
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        pending[v] = s.size();
        for (std::size_t w : s)
            pred[w].push_back(v);
    }
    std::vector<bool> win(n, false);
    std::deque<std::size_t> work;
    for (std::size_t v = 0; v < n; ++v)
        if (g.nodes[v].state == target) {
            win[v] = true;
            work.push_back(v);
        }
    while (!work.empty()) {
        std::size_t w = work.front();
        work.pop_front();
        for (std::size_t v : pred[w]) {
            if (win[v])
                continue;
            if (aut.mode(g.nodes[v].state) == Mode::Existential) {
                win[v] = true;
                work.push_back(v);
            } else if (--pending[v] == 0) {
                win[v] = true;
                work.push_back(v);
            }
        }
    }
    OracleResult r;
    r.explored = n;
    r.pruned = g.pruned;
    r.budget_exhausted = g.budget_exhausted;
    if (win[0]) {
        r.verdict = OracleVerdict::Reachable;
        // For the all-existential case a shortest witness exists; report the
        // BFS path to the nearest target configuration.
        std::size_t best = Graph::kNone;
        for (std::size_t v = 0; v < n; ++v)
            if (g.nodes[v].state == target && (best == Graph::kNone || g.depth[v] < g.depth[best]))
                best = v;
        if (!aut.is_alternating() && best != Graph::kNone)
            r.trace = g.trace_to(best);
        else
            r.trace.configs.push_back(g.nodes[0]);
    }
    return r;
}

bool replay(const StorageAutomaton& aut, const Trace& trace) {
    if (trace.configs.size() != trace.transitions.size() + 1)
        return false;
    for (std::size_t i = 0; i < trace.transitions.size(); ++i) {
        bool ok = false;
        for (const Successor& s : successors(aut, trace.configs[i]))
            if (s.transition == trace.transitions[i] && s.config == trace.configs[i + 1])
                ok = true;
        if (!ok)
            return false;
    }
    return true;
}

namespace {

template <class Oracle>
StabilizedResult stabilize(Oracle oracle, const Caps& base) {
    StabilizedResult out;
    Caps caps = base;
    for (int round = 0; round < 3; ++round) {
        OracleResult r = oracle(caps);
        out.caps = caps;
        out.result = r;
        if (r.reachable()) {
            out.verdict = Verdict::Reachable;
            return out;
        }
        if (r.exhaustive()) {
            out.verdict = Verdict::Unreachable;
            return out;
        }
        if (r.budget_exhausted) {
            out.verdict = Verdict::Unknown;
            return out;
        }
        caps = caps.doubled();
    }
    // Both doublings agree on NotFoundWithinCaps.
    out.verdict = Verdict::Unreachable;
    return out;
}

} // namespace

StabilizedResult reach_stabilized(const StorageAutomaton& aut, StateId target, const Caps& base) {
    return stabilize([&](const Caps& c) { return reach_oracle(aut, target, c); }, base);
}

StabilizedResult reach_config_stabilized(const StorageAutomaton& aut, const Configuration& target,
                                         const Caps& base) {
    return stabilize([&](const Caps& c) { return reach_config_oracle(aut, target, c); }, base);
}

StabilizedResult alt_reach_stabilized(const StorageAutomaton& aut, StateId target, const Caps& base) {
    return stabilize([&](const Caps& c) { return alt_reach_oracle(aut, target, c); }, base);
}

ReachableStates reachable_states(const StorageAutomaton& aut, const Caps& caps) {
    Graph g;
    explore(aut, caps, g, false, [](std::size_t) { return false; });
    ReachableStates out;
    for (const Configuration& c : g.nodes)
        out.states.insert(c.state);
    out.exhaustive = !g.pruned && !g.budget_exhausted;
    return out;
}

// ---------------------------------------------------------------------------
// VAL(S)

std::vector<ValLetter> parse_val_sequence(const StorageExpr& e, std::string_view s) {
    std::vector<ValLetter> out;
    for (const std::string& token : text::split_ws(s)) {
        ValLetter letter;
        const bool looks_like_test = token.rfind("top", 0) == 0 || token.rfind("empty", 0) == 0 ||
                                     token.rfind("inner", 0) == 0;
        if (looks_like_test) {
            letter.is_test = true;
            letter.test = parse_test_literal(e, token);
        } else {
            letter.op = parse_op(e, token);
        }
        out.push_back(std::move(letter));
    }
    return out;
}

std::string to_string(const StorageExpr& e, const std::vector<ValLetter>& seq) {
    std::string out;
    for (const ValLetter& l : seq) {
        if (!out.empty())
            out += ' ';
        out += l.is_test ? to_string(e, l.test) : to_string(e, l.op);
    }
    return out;
}

bool val_check(const StorageExpr& e, const std::vector<ValLetter>& seq) {
    StorageConfig c = initial_config(e);
    for (const ValLetter& l : seq) {
        if (l.is_test) {
            if (eval_test(e, l.test.test, c) != l.test.value)
                return false;
            continue;
        }
        auto next = apply_op(e, l.op, c);
        if (!next)
            return false;
        c = std::move(*next);
    }
    return true;
}

StorageAutomaton val_automaton(const StorageExpr& e, const std::vector<ValLetter>& seq) {
    StorageAutomaton aut(e);
    for (std::size_t i = 0; i <= seq.size(); ++i)
        aut.add_state("v" + std::to_string(i));
    aut.set_initial(0);
    aut.set_final(static_cast<StateId>(seq.size()));
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const auto from = static_cast<StateId>(i);
        const auto to = static_cast<StateId>(i + 1);
        if (seq[i].is_test)
            aut.add_transition(from, {seq[i].test}, to, OpId::id());
        else
            aut.add_transition(from, {}, to, seq[i].op);
    }
    return aut;
}

bool val_check_via_reach(const StorageExpr& e, const std::vector<ValLetter>& seq) {
    StorageAutomaton aut = val_automaton(e, seq);
    Caps caps;
    caps.max_height = {seq.size() + 1};
    caps.max_counter = seq.size() + 1;
    caps.max_steps = seq.size() + 1;
    return reach_oracle(aut, aut.final_state(), caps).reachable();
}

} // namespace hoca
