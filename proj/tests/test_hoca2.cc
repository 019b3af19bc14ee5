// test_hoca2.cc -- level-2 automata, normalization and run classification

#include "catch_amalgamated.hpp"

#include "hoca/error.hh"
#include "hoca/hoca2.hh"
#include "hoca/oracle.hh"
#include "support/explicit.hh"
#include "support/random.hh"

using namespace hoca;
using namespace hoca::testing;

namespace {

L2Trace run_of(const Hocs2& a, L2Configuration start, const std::vector<std::size_t>& transitions) {
    L2Trace t{{start}, {}};
    for (std::size_t i : transitions) {
        const L2Transition& tr = a.transitions()[i];
        L2Configuration next{tr.to, *hoca::apply(tr.op, t.configs.back().stack)};
        t.configs.push_back(next);
        t.transitions.push_back(i);
    }
    return t;
}

/// Replays transition indices from `start`; nullopt when one is inapplicable.
std::optional<L2Trace> replay_from(const Hocs2& a, const L2Configuration& start, const std::vector<std::size_t>& ts) {
    L2Trace t{{start}, {}};
    for (std::size_t i : ts) {
        bool found = false;
        for (L2Successor& s : successors(a, t.configs.back()))
            if (s.transition == i) {
                t.configs.push_back(s.config);
                t.transitions.push_back(i);
                found = true;
                break;
            }
        if (!found)
            return std::nullopt;
    }
    return t;
}

Caps small_caps() {
    Caps caps;
    caps.max_height = {4};
    caps.max_counter = 5;
    caps.max_steps = 64;
    caps.max_configs = 60000;
    return caps;
}

} // namespace

TEST_CASE("parse_hocs2 accepts restricted operations") {
    auto a = parse_hocs2("storage: P{_,0,1}(C)\nstates: q0 q1\ninitial: q0\ntrans: q0 [top=_] push(1) q1\n");
    REQUIRE(a.transitions().size() == 1);
    CHECK(a.transitions()[0] == L2Transition{0, kBottom, L2Op::push(a.symbol("1")), 1});

    auto empty = parse_hocs2("storage: P{_,0,1}(C)\nstates: q0\n");
    CHECK(empty.transitions().empty());

    // A don't-care top test yields one transition per symbol.
    auto wide = parse_hocs2("storage: P{_,0,1}(C)\ntrans: q0 stay(pushsym(_)) q0\ntrans: q0 [top!=0] stay(pop) q0\n");
    CHECK(wide.transitions().size() == 5);
}

TEST_CASE("parse_hocs2 rejects unrestricted operations") {
    try {
        parse_hocs2("storage: P{_,0,1}(C)\nstates: q0 q1\n\ntrans: q0 [top=_] stay(stay(pop)) q1\n");
        FAIL("expected UnsupportedOp");
    } catch (const UnsupportedOp& e) {
        CHECK(e.line() == 4);
        CHECK(e.op() == "stay(stay(pop))");
        CHECK(std::string(e.what()).find("normaliz") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_hocs2("storage: P{_,1}(C)\ntrans: q0 push(1,pushsym(_)) q1\n"), UnsupportedOp);
    CHECK_THROWS_AS(parse_hocs2("storage: P{_,1}(Z)\ntrans: q0 pop q1\n"), IllTyped);
    CHECK_THROWS_AS(parse_hocs2("storage: P{_,1}(C)\ntrans: q0 push(7) q1\n"), UnknownSymbol);
}

TEST_CASE("height") {
    Hocs2 a({"_", "a", "b"});
    CHECK(height(parse_l2_config(a, "(_,0)")) == 1);
    CHECK(height(parse_l2_config(a, "(_,0)(a,5)")) == 2);
    CHECK(height(parse_l2_config(a, "(a,2)(a,2)(a,0)(b,1)")) == 4);
}

TEST_CASE("level-2 semantics agree with the generic storage semantics") {
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        Hocs2 a = random_hocs2(rng, 3, 3, 10);
        StorageAutomaton g = to_generic(a);
        Caps caps = small_caps();
        for (StateId q = 0; q < a.num_states(); ++q) {
            // Same successor sets from a handful of configurations.
            for (const char* cfg : {"(_,0)", "(_,2)(a,0)", "(_,1)(b,3)(a,1)"}) {
                L2Configuration c{q, parse_l2_config(a, cfg)};
                auto mine = successors(a, c);
                auto theirs = successors(g, Configuration{q, to_storage(c.stack)});
                REQUIRE(mine.size() == theirs.size());
                for (std::size_t k = 0; k < mine.size(); ++k) {
                    CHECK(mine[k].transition == theirs[k].transition);
                    CHECK(to_storage(mine[k].config.stack) == theirs[k].config.storage);
                    CHECK(mine[k].config.state == theirs[k].config.state);
                }
            }
        }
        (void)caps;
    }
}

TEST_CASE("normalize adds only the drain gadget to restricted automata") {
    Hocs2 a({"_", "1"});
    a.add_state("q0");
    a.add_state("q1");
    a.add_transition({0, kBottom, L2Op::push(1), 1});
    auto n = normalize(a, 1);
    CHECK(n.automaton.num_states() == 3);
    CHECK(n.automaton.state_name(n.drain) == "drain");
    CHECK(n.automaton.transitions().size() == 1 + 3 * 2);
    std::size_t nops = 0;
    for (const L2Transition& t : n.automaton.transitions())
        if (t.op.kind == L2OpKind::Nop) {
            CHECK(t.from == 1);
            CHECK(t.to == n.drain);
            ++nops;
        }
    CHECK(nops == 2);
}

TEST_CASE("normalize splits a push with a counter operation") {
    auto aut = parse_automaton("storage: P{_,1}(C)\nstates: q0 q1\ntrans: q0 [top=_] push(1,pushsym(_)) q1\n");
    auto n = normalize(aut, 1);
    const Hocs2& a = n.automaton;
    std::vector<L2Transition> body;
    for (const L2Transition& t : a.transitions())
        if (t.from != n.drain && t.to != n.drain)
            body.push_back(t);
    REQUIRE(body.size() == 2);
    CHECK(body[0].from == 0);
    CHECK(body[0].op == L2Op::push(1));
    CHECK(body[1].from == body[0].to);
    CHECK(body[1].top == 1);
    CHECK(body[1].op == L2Op::inc());
    CHECK(body[1].to == 1);
    CHECK(a.num_states() == 4);
}

TEST_CASE("normalize preserves reachability of the chosen state") {
    Rng rng(17);
    auto e = parse_storage("P{_,a}(C)");
    int decided = 0;
    for (int i = 0; i < 200; ++i) {
        StorageAutomaton aut = random_automaton(rng, e, 1 + pick(rng, 4), 1 + pick(rng, 6), false);
        const StateId q = static_cast<StateId>(pick(rng, aut.num_states()));
        auto n = normalize(aut, q);
        StorageAutomaton out = to_generic(n.automaton);
        Configuration goal{n.drain, to_storage(L2Config{L2Entry{}})};
        auto lhs = reach_stabilized(aut, q, small_caps());
        auto rhs = reach_config_stabilized(out, goal, small_caps());
        if (lhs.verdict == Verdict::Unknown || rhs.verdict == Verdict::Unknown)
            continue;
        ++decided;
        CHECK(lhs.verdict == rhs.verdict);
    }
    CHECK(decided >= 180);
}

TEST_CASE("classify_run on hand-built runs") {
    Hocs2 a({"_", "1"});
    a.add_state("q");
    a.add_state("q'");
    a.add_state("r");
    a.add_state("s");
    a.add_transition({0, 1, L2Op::pop(), 1});          // 0
    a.add_transition({1, kBottom, L2Op::push(1), 2});  // 1
    a.add_transition({2, 1, L2Op::nop(), 3});          // 2

    L2Configuration start{0, parse_l2_config(a, "(_,0)(1,2)")};
    auto ret = run_of(a, start, {0});
    CHECK(to_string(a, ret.configs.back()) == "(q',(_,0))");
    CHECK(classify_run(a, ret, 2) == RunClass::Return);

    L2Trace empty{{L2Configuration{0, parse_l2_config(a, "(_,0)")}}, {}};
    CHECK(classify_run(a, empty, 1) == RunClass::Loop);

    // Pops to the prefix, pushes the entry back and idles: ends on the
    // start storage but visited the prefix.
    L2Configuration zero{0, parse_l2_config(a, "(_,0)(1,0)")};
    auto dip = run_of(a, zero, {0, 1, 2});
    CHECK(dip.configs.back().stack == zero.stack);
    CHECK(classify_run(a, dip, 2) == RunClass::Neither);
    CHECK(classify_run(a, run_of(a, zero, {0, 1}), 2) == RunClass::Neither);

    L2Trace bogus = ret;
    bogus.configs.back().state = 2;
    CHECK_THROWS_AS(classify_run(a, bogus, 2), InvalidTrace);
    CHECK(dump_trace(a, ret) == "q | (_,0)(1,2)\nq' | (_,0)\n");
}

TEST_CASE("run classification ignores the prefix below the base height") {
    Rng rng(23);
    int classified = 0;
    for (int i = 0; i < 300; ++i) {
        Hocs2 a = random_hocs2(rng, 3, 2, 10);
        L2Configuration start{static_cast<StateId>(pick(rng, 3)), {L2Entry{kBottom, 0}, L2Entry{1, pick(rng, 3)}}};
        // A random walk from start.
        L2Trace t{{start}, {}};
        for (int step = 0; step < 8; ++step) {
            auto next = successors(a, t.configs.back());
            if (next.empty())
                break;
            auto& s = next[pick(rng, next.size())];
            t.configs.push_back(s.config);
            t.transitions.push_back(s.transition);
        }
        const RunClass base = classify_run(a, t, 2);
        classified += base != RunClass::Neither;
        // Insert a fresh bottom entry under every configuration.
        L2Trace lifted = t;
        for (auto& c : lifted.configs)
            c.stack.insert(c.stack.begin(), L2Entry{1, 4});
        if (!replay_from(a, lifted.configs.front(), t.transitions))
            continue; // the walk relied on the bottom entry
        CHECK(classify_run(a, lifted, 3) == base);
    }
    CHECK(classified > 0);
}

TEST_CASE("runs are monotone in the top counter") {
    Rng rng(29);
    for (int i = 0; i < 300; ++i) {
        Hocs2 a = random_hocs2(rng, 3, 2, 10);
        const std::uint64_t n = pick(rng, 4);
        L2Configuration start{static_cast<StateId>(pick(rng, 3)), {L2Entry{kBottom, 1}, L2Entry{1, n}}};
        L2Trace t{{start}, {}};
        for (int step = 0; step < 10; ++step) {
            auto next = successors(a, t.configs.back());
            if (next.empty())
                break;
            auto& s = next[pick(rng, next.size())];
            t.configs.push_back(s.config);
            t.transitions.push_back(s.transition);
        }
        // The run may only use the start entry and entries above it.
        bool stays = true;
        std::uint64_t m = std::numeric_limits<std::uint64_t>::max();
        for (const auto& c : t.configs) {
            stays = stays && c.stack.size() >= 2;
            m = std::min(m, c.stack.back().counter);
        }
        if (!stays)
            continue;
        for (std::uint64_t n2 : {n - m, n, n + 1, n + 2}) {
            L2Configuration other = start;
            other.stack.back().counter = n2;
            auto again = replay_from(a, other, t.transitions);
            REQUIRE(again);
            for (std::size_t k = 0; k < t.configs.size(); ++k)
                CHECK(again->configs[k].state == t.configs[k].state);
        }
    }
}

TEST_CASE("return sets grow with the counter") {
    Rng rng(31);
    for (int i = 0; i < 40; ++i) {
        Hocs2 a = random_hocs2(rng, 1 + pick(rng, 3), 2, 8);
        EntryOracle oracle(a, 16);
        for (int k = 0; k <= 3; ++k)
            for (Symbol s = 0; s < 2; ++s)
                for (std::uint64_t m1 = 0; m1 <= 6; ++m1)
                    for (std::uint64_t m2 = m1; m2 <= 6; ++m2) {
                        const Pairs& lo = oracle.ret(k, s, m1);
                        const Pairs& hi = oracle.ret(k, s, m2);
                        CHECK(std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()));
                    }
    }
}

TEST_CASE("the entry oracle agrees with raw configuration search") {
    Rng rng(37);
    for (int i = 0; i < 60; ++i) {
        Hocs2 a = random_hocs2(rng, 1 + pick(rng, 3), 2, 8);
        EntryOracle oracle(a, 12);
        for (int k = 0; k <= 2; ++k)
            for (Symbol s = 0; s < 2; ++s)
                for (std::uint64_t m = 0; m <= 3; ++m)
                    CHECK(oracle.ret(k, s, m) == raw_returns(a, k, s, m, 12));
    }
}

TEST_CASE("configuration literals round-trip") {
    Hocs2 a({"_", "a", "b"});
    a.add_state("q");
    auto c = parse_l2_configuration(a, "(q,(_,0)(a,5)(b,12))");
    CHECK(to_string(a, c) == "(q,(_,0)(a,5)(b,12))");
    CHECK_THROWS_AS(parse_l2_configuration(a, "(q,)"), SyntaxError);
    CHECK_THROWS_AS(parse_l2_configuration(a, "(r,(_,0))"), UnknownState);
}
