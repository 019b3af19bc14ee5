// acceptance.cc -- end-to-end acceptance run, one PASS/FAIL line per criterion
//
// Every threshold below is fixed here; the binary exits 1 if any line fails.

#include "hoca/oracle.hh"
#include "hoca/pds.hh"
#include "hoca/summaries.hh"
#include "hoca/transforms.hh"
#include "hoca/trees.hh"
#include "support/explicit.hh"
#include "support/random.hh"

#include <chrono>
#include <cstdio>
#include <deque>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace hoca;
using namespace hoca::testing;

namespace {

// Tolerances.
constexpr double kMinVerdictRate = 0.95;
constexpr double kOracleBudgetSeconds = 300;
constexpr double kScalingRatio = 64; // (32/16)^6
constexpr double kScalingBudgetSeconds = 120;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    /// Records a failed check; the first few are echoed in the detail.
    void fail(const std::string& what) {
        if (violations++ < 3)
            detail << " [" << what << "]";
        pass = false;
    }
    int violations = 0;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s %2d %-22s %.1fs %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), seconds_since(t0),
                o.detail.str().c_str());
    std::fflush(stdout);
    failures += !o.pass;
}

std::string pairs(const Pairs& p) {
    std::string out;
    for (const auto& [x, y] : p)
        out += "(" + std::to_string(x) + "," + std::to_string(y) + ")";
    return out;
}

Hocs2 small_instance(Rng& rng) { return random_hocs2(rng, 1 + pick(rng, 3), 1 + pick(rng, 2), 2 + pick(rng, 9)); }

// 1 -------------------------------------------------------------------------

void oracle_equivalence(Outcome& o) {
    Rng rng(1001);
    Caps caps;
    caps.max_height = {4};
    caps.max_counter = 6;
    caps.max_steps = 96;
    caps.max_configs = 100000;
    const int n = 500;
    int decided = 0, positive = 0;
    const auto t0 = Clock::now();
    for (int i = 0; i < n; ++i) {
        Hocs2 a = random_hocs2(rng, 1 + pick(rng, 4), 1 + pick(rng, 3), 1 + pick(rng, 12));
        const StateId q = static_cast<StateId>(pick(rng, a.num_states()));
        const auto oracle = reach_stabilized(to_generic(a), q, caps);
        if (oracle.verdict == Verdict::Unknown)
            continue;
        ++decided;
        const Normalized norm = normalize(a, q);
        const bool mine = reach_hoca(norm.automaton, norm.drain);
        positive += mine;
        if (mine != (oracle.verdict == Verdict::Reachable))
            o.fail("disagreement:\n" + to_string(a) + "target " + a.state_name(q));
    }
    const double rate = static_cast<double>(decided) / n;
    const double t = seconds_since(t0);
    o.detail << "instances=" << n << " decided=" << decided << " rate=" << rate << " reachable=" << positive
             << " time=" << t << "s";
    if (rate < kMinVerdictRate)
        o.fail("verdict rate below " + std::to_string(kMinVerdictRate));
    if (t > kOracleBudgetSeconds)
        o.fail("over time budget");
}

// 2 -------------------------------------------------------------------------

void counter_stabilization(Outcome& o) {
    Rng rng(1002);
    const int n = 100, max_k = 6;
    std::size_t checks = 0;
    for (int i = 0; i < n; ++i) {
        Hocs2 a = small_instance(rng);
        const Bounds b = bounds(a);
        EntryOracle oracle(a, b.n0 + 16);
        for (Symbol s = 0; s < a.num_symbols(); ++s) {
            for (int k = 0; k <= std::min<int>(max_k, static_cast<int>(b.k0)); ++k)
                for (std::uint64_t m = b.h0 + 1; m <= b.h0 + 4; ++m, ++checks)
                    if (oracle.ret(k, s, m) != oracle.ret(k, s, b.h0))
                        o.fail("ret_" + std::to_string(k) + " changes at m=" + std::to_string(m));
            const Pairs base = oracle.loops_inf(s, b.n0);
            for (std::uint64_t m = b.n0 + 1; m <= b.n0 + 3; ++m, ++checks)
                if (oracle.loops_inf(s, m) != base)
                    o.fail("loops changes at m=" + std::to_string(m));
        }
    }
    o.detail << "instances=" << n << " comparisons=" << checks << " violations=" << o.violations;
}

// 3 -------------------------------------------------------------------------

/// q0..q{d-1} each push a; q{d} pops: the return from q0 to q{d} needs
/// d nested entries, so ret_d is the first level containing it.
Hocs2 nested_instance(std::size_t d) {
    Hocs2 a({"_", "a"});
    for (std::size_t i = 0; i <= d; ++i)
        a.add_state("q" + std::to_string(i));
    for (std::size_t i = 0; i < d; ++i)
        a.add_transition({static_cast<StateId>(i), 1, L2Op::push(1), static_cast<StateId>(i + 1)});
    a.add_transition({static_cast<StateId>(d), 1, L2Op::pop(), static_cast<StateId>(d)});
    return a;
}

void height_stabilization(Outcome& o) {
    Rng rng(1002); // the same class and instances as criterion 2
    const int n = 100, crafted = 5, truncate = 6;
    int truncated = 0;
    std::map<int, int> levels;
    for (int i = 0; i < n + crafted; ++i) {
        Hocs2 a = i < n ? small_instance(rng) : nested_instance(static_cast<std::size_t>(i - n + 1));
        const Bounds b = bounds(a);
        EntryOracle oracle(a, b.n0 + 16);
        // Once ret_f = ret_{f+1} everywhere, all higher levels agree too, so
        // comparing at max(f, 6) stands in for k0 when k0 is larger.
        const int f = oracle.fixpoint_level();
        ++levels[f];
        if (static_cast<std::uint64_t>(f) > b.k0)
            o.fail("fixpoint level " + std::to_string(f) + " above k0");
        int k = static_cast<int>(b.k0);
        if (b.k0 > static_cast<std::uint64_t>(truncate)) {
            k = std::max(f, truncate);
            ++truncated;
        }
        for (Symbol s = 0; s < a.num_symbols(); ++s)
            for (std::uint64_t m = 0; m <= b.h0 + 4; ++m)
                if (oracle.ret(k, s, m) != oracle.ret(k + 1, s, m))
                    o.fail("ret_" + std::to_string(k) + " != ret_" + std::to_string(k + 1) + " " +
                           pairs(oracle.ret(k, s, m)) + " vs " + pairs(oracle.ret(k + 1, s, m)));
    }
    o.detail << "instances=" << n << "+" << crafted << " truncated=" << truncated << " fixpoint_levels={";
    for (const auto& [level, count] : levels)
        o.detail << level << ":" << count << " ";
    o.detail << "} violations=" << o.violations;
}

// 4 -------------------------------------------------------------------------

void table_semantics(Outcome& o) {
    Rng rng(1004);
    const int n = 100;
    std::size_t checks = 0;
    for (int i = 0; i < n; ++i) {
        Hocs2 a = small_instance(rng);
        const Bounds b = bounds(a);
        const ReturnTable table = compute_return_table(a).table;
        EntryOracle oracle(a, b.h0 + 12);
        for (Symbol s = 0; s < a.num_symbols(); ++s)
            for (std::uint64_t m = 0; m <= b.h0 + 2; ++m) {
                const Pairs& ret = oracle.ret_inf(s, m);
                for (StateId p = 0; p < a.num_states(); ++p)
                    for (StateId q = 0; q < a.num_states(); ++q, ++checks)
                        if (ret_query(table, s, p, q, m) != (ret.count({p, q}) > 0))
                            o.fail("entry (" + a.symbol_name(s) + "," + std::to_string(p) + "," + std::to_string(q) +
                                   "," + std::to_string(m) + ")");
            }
    }
    o.detail << "instances=" << n << " queries=" << checks << " mismatches=" << o.violations;
}

// 5 -------------------------------------------------------------------------

using Node = std::pair<PdsState, std::vector<StackSym>>;

std::set<Node> bounded_closure(const Pds& pds, const std::set<Node>& seed, std::size_t cap, bool forward) {
    std::set<Node> seen = seed;
    std::deque<Node> work(seed.begin(), seed.end());
    while (!work.empty()) {
        Node cur = work.front();
        work.pop_front();
        std::vector<Node> next;
        if (forward) {
            for (PdsConfig& c : pds.step(PdsConfig{cur.first, cur.second}))
                next.emplace_back(c.state, std::move(c.stack));
        } else {
            for (const PdsRule& r : pds.rules()) {
                const auto& w = cur.second;
                if (r.to != cur.first || w.size() < r.push.size() ||
                    !std::equal(r.push.begin(), r.push.end(), w.begin()))
                    continue;
                std::vector<StackSym> v{r.top};
                v.insert(v.end(), w.begin() + static_cast<std::ptrdiff_t>(r.push.size()), w.end());
                next.emplace_back(r.from, std::move(v));
            }
        }
        for (Node& x : next)
            if (x.second.size() <= cap && seen.insert(x).second)
                work.push_back(std::move(x));
    }
    return seen;
}

void saturation(Outcome& o) {
    Rng rng(1005);
    const int n = 300;
    // Search with two cells of slack above the compared length: rules push
    // at most two symbols, so every run between short stacks fits.
    const std::size_t len = 6, cap = 8;
    std::size_t checks = 0;
    for (int i = 0; i < n; ++i) {
        Pds pds = random_pds(rng, 1 + pick(rng, 3), 1 + pick(rng, 3), pick(rng, 7));
        PAutomaton b = random_pautomaton(rng, pds, pick(rng, 3), 2 + pick(rng, 6));
        std::vector<PdsConfig> configs;
        for (PdsState p = 0; p < pds.num_states(); ++p)
            configs.push_back(PdsConfig{p, {}});
        for (PdsConfig& c : all_pds_configs(pds, len))
            configs.push_back(std::move(c));
        std::set<Node> seed;
        for (PdsState p = 0; p < pds.num_states(); ++p)
            if (b.accepts(PdsConfig{p, {}}))
                seed.emplace(p, std::vector<StackSym>{});
        for (const PdsConfig& c : all_pds_configs(pds, cap))
            if (nfa_accepts(b, c))
                seed.emplace(c.state, c.stack);
        const auto back = bounded_closure(pds, seed, cap, false);
        const auto fwd = bounded_closure(pds, seed, cap, true);
        const PAutomaton pre = pre_star(pds, b);
        const PAutomaton post = post_star(pds, b);
        for (const PdsConfig& c : configs) {
            checks += 2;
            if (pre.accepts(c) != (back.count({c.state, c.stack}) > 0))
                o.fail("pre* instance " + std::to_string(i));
            if (post.accepts(c) != (fwd.count({c.state, c.stack}) > 0))
                o.fail("post* instance " + std::to_string(i));
        }
    }
    o.detail << "systems=" << n << " memberships=" << checks << " mismatches=" << o.violations;
}

// 6 -------------------------------------------------------------------------

/// A return from p on (a,m) exists iff m >= k: k forced decrements, then
/// a pop. Pushing a from q on the bottom entry turns this into a loop.
Hocs2 threshold_instance(std::size_t k) {
    Hocs2 a({"_", "a"});
    const StateId q = a.add_state("q"), p = a.add_state("p");
    StateId cur = p;
    for (std::size_t i = 1; i <= k; ++i) {
        const StateId next = a.add_state("s" + std::to_string(i));
        a.add_transition({cur, 1, L2Op::dec(), next});
        cur = next;
    }
    const StateId r = a.add_state("r");
    a.add_transition({cur, 1, L2Op::pop(), r});
    a.add_transition({q, kBottom, L2Op::push(1), p});
    return a;
}

void summary_dfa(Outcome& o) {
    Rng rng(1006);
    const int n = 50, crafted = 5;
    std::map<std::size_t, int> sizes;
    for (int i = 0; i < n + crafted; ++i) {
        Hocs2 a = i < n ? small_instance(rng) : threshold_instance(static_cast<std::size_t>(i - n + 1));
        const Bounds b = bounds(a);
        const SummaryDfa dfa = build_summary_dfa(a);
        ++sizes[dfa.values.size()];
        if (dfa.values.size() > 2 * (a.num_symbols() * a.num_states() * a.num_states() + 1))
            o.fail("DFA with " + std::to_string(dfa.values.size()) + " states");
        EntryOracle oracle(a, b.n0 + 12);
        for (std::uint64_t m = 0; m <= b.n0 + 3; ++m) {
            const SummaryValue& v = dfa.value_after(m);
            for (Symbol s = 0; s < a.num_symbols(); ++s)
                if (v.ret[s] != oracle.ret_inf(s, m) || v.loops[s] != oracle.loops_inf(s, m))
                    o.fail("value after _^" + std::to_string(m));
        }
    }
    o.detail << "instances=" << n << "+" << crafted << " dfa_sizes={";
    for (const auto& [size, count] : sizes)
        o.detail << size << ":" << count << " ";
    o.detail << "} mismatches=" << o.violations;
}

// 7 -------------------------------------------------------------------------

void leaves(const BinTree& t, std::size_t lefts, std::vector<std::pair<std::string, std::size_t>>& out) {
    if (t.is_leaf()) {
        out.emplace_back(t.label, lefts);
        return;
    }
    if (t.left)
        leaves(*t.left, lefts + 1, out);
    if (t.right)
        leaves(*t.right, lefts, out);
}

void encoding(Outcome& o) {
    const std::vector<std::string> symbols{"_", "a"};
    std::vector<NamedConfiguration> layer, all;
    for (std::uint64_t c = 0; c <= 4; ++c)
        layer.push_back(NamedConfiguration{"q", {{"_", c}}});
    for (std::size_t h = 1; h <= 3; ++h) {
        all.insert(all.end(), layer.begin(), layer.end());
        std::vector<NamedConfiguration> next;
        for (const auto& c : layer)
            for (const auto& s : symbols)
                for (std::uint64_t v = 0; v <= 4; ++v) {
                    auto d = c;
                    d.stack.emplace_back(s, v);
                    next.push_back(std::move(d));
                }
        layer = std::move(next);
    }
    for (const auto& c : all) {
        const BinTree t = encode(c);
        if (!(decode(t) == c) || !(decode(parse_tree(to_string(t))) == c))
            o.fail("round trip of " + to_string(c));
        std::vector<std::pair<std::string, std::size_t>> got, want;
        leaves(t, 0, got);
        for (const auto& [s, v] : c.stack)
            want.emplace_back(s, v + 2);
        if (got != want)
            o.fail("leaf laws for " + to_string(c));
    }
    const std::string figure = "q(_(_(_(a,_(a,-)),-),_(a,_(_(b,-),-))),-)";
    const std::string got = to_string(encode(parse_named_configuration("(q,(a,2)(a,2)(a,0)(b,1))")));
    if (got != figure)
        o.fail("figure encodes to " + got);
    o.detail << "configurations=" << all.size() << " violations=" << o.violations;
}

// 8 -------------------------------------------------------------------------

struct Stable {
    std::set<StateId> states;
    bool decided = false;
};

Stable stable_states(const StorageAutomaton& a, Caps caps, std::size_t original) {
    std::set<StateId> prev;
    Stable out;
    for (int round = 0; round < 3; ++round) {
        ReachableStates r = reachable_states(a, caps);
        std::set<StateId> cur;
        for (StateId q : r.states)
            if (q < original)
                cur.insert(q);
        out.states = cur;
        if (r.exhaustive || (round > 0 && cur == prev)) {
            out.decided = true;
            return out;
        }
        prev = std::move(cur);
        caps = caps.doubled();
    }
    return out;
}

Caps make_caps(std::size_t height, std::uint64_t counter, std::size_t steps, std::size_t configs) {
    Caps caps;
    caps.max_height = {height};
    caps.max_counter = counter;
    caps.max_steps = steps;
    caps.max_configs = configs;
    return caps;
}

StorageAutomaton random_restricted(Rng& rng, const StorageExpr& e, std::size_t states, std::size_t transitions) {
    StorageAutomaton a(e);
    for (std::size_t q = 0; q < states; ++q)
        a.add_state("q" + std::to_string(q));
    const Symbol n = static_cast<Symbol>(e.alphabet().size());
    const bool inv = e.kind() == StorageKind::PushdownInv;
    const bool zero_test = e.inner().kind() == StorageKind::ZCounter;
    const OpId inner[3] = {OpId::push_sym(kBottom), OpId::pop(), OpId::id()};
    for (std::size_t i = 0; i < transitions; ++i) {
        OpId op;
        switch (pick(rng, 6)) {
        case 0:
            op = inv ? OpId::inv_push(static_cast<Symbol>(pick(rng, n))) : OpId::pop();
            break;
        case 1:
            op = OpId::push(static_cast<Symbol>(pick(rng, n)));
            break;
        case 2:
            op = OpId::push(static_cast<Symbol>(pick(rng, n)), inner[pick(rng, 2)]);
            break;
        case 3:
        case 4:
            op = OpId::stay(inner[pick(rng, 3)]);
            break;
        default:
            op = OpId::id();
        }
        std::vector<TestLiteral> tests;
        if (coin(rng, 0.6))
            tests.push_back(TestLiteral{TestId::top(static_cast<Symbol>(pick(rng, n))), coin(rng, 0.8)});
        if (zero_test && coin(rng, 0.4))
            tests.push_back(TestLiteral{TestId::empty().wrapped(), coin(rng)});
        const StateId from = coin(rng, 0.4) ? 0 : static_cast<StateId>(pick(rng, states));
        a.add_transition(from, tests, static_cast<StateId>(pick(rng, states)), op);
    }
    return a;
}

struct PassTally {
    int runs = 0;
    int decided = 0;
    int nontrivial = 0;
};

void compare(Outcome& o, const std::string& pass, const StorageAutomaton& in, const StorageAutomaton& out,
             const Caps& out_caps, PassTally& t) {
    ++t.runs;
    const Stable lhs = stable_states(in, make_caps(3, 3, 40, 20000), in.num_states());
    if (!lhs.decided)
        return;
    const Stable rhs = stable_states(out, out_caps, in.num_states());
    if (!rhs.decided)
        return;
    ++t.decided;
    t.nontrivial += lhs.states.size() > 1;
    if (lhs.states != rhs.states)
        o.fail(pass + ":\n" + to_string(in));
}

void transforms(Outcome& o) {
    Rng rng(1008);
    auto annotated = [](std::size_t w) { return make_caps(1 + 6 * w, 3, 800, 100000); };
    PassTally elim, pop, inv, round;
    const StorageExpr elim_types[2] = {parse_storage("P{_,0,1}(C)"), parse_storage("P{_,0,1}(Z)")};
    const StorageExpr pop_types[2] = {parse_storage("P{_,a}(Z)"), parse_storage("P{_,a,b}(C)")};
    const StorageExpr inv_types[2] = {parse_storage("Pinv{_,a}(C)"), parse_storage("Pinv{_,a,b}(Z)")};
    for (int i = 0; i < 200; ++i) {
        StorageAutomaton e = random_restricted(rng, elim_types[i % 2], 1 + pick(rng, 3), 1 + pick(rng, 8));
        compare(o, "elim-symbols", e, eliminate_level2_symbols(e), make_caps(4, 11, 960, 200000), elim);
        StorageAutomaton p = random_restricted(rng, pop_types[i % 2], 1 + pick(rng, 3), 1 + pick(rng, 8));
        const std::size_t w = block_width(p.storage().alphabet().size());
        compare(o, "pop-to-invpush", p, pop_to_invpush(p), annotated(w), pop);
        StorageAutomaton v = random_restricted(rng, inv_types[i % 2], 1 + pick(rng, 3), 1 + pick(rng, 8));
        compare(o, "invpush-to-pop", v, invpush_to_pop(v), annotated(w), inv);
    }
    for (int i = 0; i < 100; ++i) {
        StorageAutomaton a = random_restricted(rng, parse_storage("P{_,a}(Z)"), 1 + pick(rng, 3), 1 + pick(rng, 6));
        compare(o, "round trip", a, invpush_to_pop(pop_to_invpush(a)), annotated(6), round);
    }
    auto line = [&](const char* name, const PassTally& t) {
        o.detail << name << "=" << t.decided << "/" << t.runs << "(nontrivial " << t.nontrivial << ") ";
    };
    line("elim", elim);
    line("pop", pop);
    line("invpush", inv);
    line("roundtrip", round);
    o.detail << "mismatches=" << o.violations;
    // Agreement is over decided instances; the minimum counts are pinned.
    if (elim.decided < 200 * 9 / 10 || pop.decided < 200 * 9 / 10 || inv.decided < 200 * 9 / 10 ||
        round.decided < 100 * 9 / 10)
        o.fail("too few decided instances");
}

// 9 -------------------------------------------------------------------------

/// A ring of n states over {_,a}: counting steps everywhere, a push on
/// every second state and one pop per eight states.
Hocs2 template_instance(std::size_t n) {
    Hocs2 a({"_", "a"});
    for (std::size_t i = 0; i < n; ++i)
        a.add_state("q" + std::to_string(i));
    const Symbol s = a.symbol("a");
    auto q = [&](std::size_t i) { return static_cast<StateId>(i % n); };
    for (std::size_t i = 0; i < n; ++i) {
        a.add_transition({q(i), kBottom, L2Op::inc(), q(i + 1)});
        a.add_transition({q(i), s, L2Op::dec(), q(i + 1)});
        if (i % 2 == 0)
            a.add_transition({q(i), kBottom, L2Op::push(s), q(i + 1)});
        if (i % 8 == 3)
            a.add_transition({q(i), s, L2Op::pop(), q(i + 2)});
    }
    return a;
}

void scaling(Outcome& o) {
    const auto t0 = Clock::now();
    std::map<std::size_t, double> times;
    for (std::size_t n : {4, 8, 16, 32}) {
        const Hocs2 a = template_instance(n);
        const auto t = Clock::now();
        const Normalized norm = normalize(a, static_cast<StateId>(n - 1));
        const bool r = reach_hoca(norm.automaton, norm.drain);
        times[n] = std::max(seconds_since(t), 1e-4);
        o.detail << "Q=" << n << ":" << times[n] << "s" << (r ? "+" : "-") << " ";
    }
    const double ratio = times[32] / times[16];
    const double total = seconds_since(t0);
    o.detail << "ratio32/16=" << ratio << " total=" << total << "s";
    if (ratio > kScalingRatio)
        o.fail("ratio above bound");
    if (total > kScalingBudgetSeconds)
        o.fail("over time budget");
}

// 10 ------------------------------------------------------------------------

void val(Outcome& o) {
    Rng rng(1010);
    int valid = 0, total = 0;
    for (const char* s : {"Z", "P{_,0,1}(C)"}) {
        const StorageExpr e = parse_storage(s);
        for (int i = 0; i < 1000; ++i, ++total) {
            const auto word = random_val_word(rng, e, 20);
            const bool direct = val_check(e, word);
            valid += direct;
            if (direct != val_check_via_reach(e, word))
                o.fail(std::string(s) + ": " + to_string(e, word));
        }
    }
    o.detail << "words=" << total << " valid=" << valid << " mismatches=" << o.violations;
}

// 11 ------------------------------------------------------------------------

void alternating(Outcome& o) {
    Rng rng(1011);
    const StorageExpr types[2] = {parse_storage("P{_,1}(Z)"), parse_storage("Z")};
    const Caps caps = make_caps(3, 3, 16, 100000);
    int positive = 0;
    for (int i = 0; i < 500; ++i) {
        const StorageAutomaton a = random_automaton(rng, types[i % 2], 1 + pick(rng, 4), 1 + pick(rng, 8), false);
        const StateId q = static_cast<StateId>(pick(rng, a.num_states()));
        const OracleResult alt = alt_reach_oracle(a, q, caps);
        const OracleResult plain = reach_oracle(a, q, caps);
        positive += plain.reachable();
        if (alt.reachable() != plain.reachable())
            o.fail("existential instance " + std::to_string(i));
    }
    const Caps ex = make_caps(4, 8, 64, 10000);
    const auto inapplicable = parse_automaton("storage: Z\nstates: q0 q1\nmode: q0 universal\n"
                                              "trans: q0 pushsym(_) q1\ntrans: q0 pop q1\n");
    if (!alt_reach_oracle(inapplicable, inapplicable.state_id("q1"), ex).reachable())
        o.fail("universal state with one applicable transition");
    const auto dead = parse_automaton("storage: Z\nstates: q0 live dead goal\nmode: q0 universal\n"
                                      "trans: q0 pushsym(_) live\ntrans: q0 id dead\ntrans: live id goal\n");
    if (alt_reach_oracle(dead, dead.state_id("goal"), ex).reachable())
        o.fail("universal branch into a dead state");
    const auto stuck = parse_automaton("storage: Z\nstates: q0 goal\nmode: q0 universal\n");
    if (alt_reach_oracle(stuck, stuck.state_id("goal"), ex).reachable())
        o.fail("universal state without successors");
    o.detail << "instances=500 reachable=" << positive << " mismatches=" << o.violations;
}

} // namespace

int main() {
    report(1, "oracle-equivalence", oracle_equivalence);
    report(2, "counter-stabilization", counter_stabilization);
    report(3, "height-stabilization", height_stabilization);
    report(4, "table-semantics", table_semantics);
    report(5, "prestar-poststar", saturation);
    report(6, "summary-dfa", summary_dfa);
    report(7, "encoding", encoding);
    report(8, "transforms", transforms);
    report(9, "polynomial-scaling", scaling);
    report(10, "val", val);
    report(11, "alternating-oracle", alternating);
    return failures == 0 ? 0 : 1;
}
