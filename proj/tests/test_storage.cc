// test_storage.cc -- storage algebra, automata and the explicit oracles

#include "catch_amalgamated.hpp"

#include "hoca/error.hh"
#include "hoca/oracle.hh"
#include "support/random.hh"

using namespace hoca;
using namespace hoca::testing;

namespace {

// Reference semantics with counters kept literally as stacks of bottom
// symbols, so that the n <-> bottom^(n+1) identification is checked too.
struct Ref {
    std::vector<std::pair<Symbol, Ref>> stack; // pushdown levels
    std::size_t bottoms = 1;                   // counter levels
    bool operator==(const Ref&) const = default;
};

Ref to_ref(const StorageExpr& e, const StorageConfig& c) {
    Ref r;
    if (e.is_counter()) {
        r.bottoms = c.count + 1;
        return r;
    }
    for (const StackEntry& entry : c.stack)
        r.stack.emplace_back(entry.symbol, to_ref(e.inner(), entry.inner));
    return r;
}

std::optional<Ref> ref_apply(const StorageExpr& e, const OpId& f, const Ref& x) {
    if (f.kind() == OpKind::Id)
        return x;
    Ref y = x;
    if (e.is_counter()) {
        if (f.kind() == OpKind::PushSym) {
            ++y.bottoms;
            return y;
        }
        if (y.bottoms == 1)
            return std::nullopt;
        --y.bottoms;
        return y;
    }
    auto& top = y.stack.back();
    switch (f.kind()) {
    case OpKind::Pop:
        if (y.stack.size() == 1)
            return std::nullopt;
        y.stack.pop_back();
        return y;
    case OpKind::Push: {
        auto inner = ref_apply(e.inner(), f.inner(), top.second);
        if (!inner)
            return std::nullopt;
        y.stack.emplace_back(f.symbol(), *inner);
        return y;
    }
    case OpKind::Stay: {
        auto inner = ref_apply(e.inner(), f.inner(), top.second);
        if (!inner)
            return std::nullopt;
        top.second = *inner;
        return y;
    }
    case OpKind::InvPush: {
        // Defined iff the configuration is push_{γ,id} of the shorter one.
        if (y.stack.size() < 2)
            return std::nullopt;
        Ref below = y;
        below.stack.pop_back();
        Ref pushed = below;
        pushed.stack.emplace_back(f.symbol(), below.stack.back().second);
        if (!(pushed == x))
            return std::nullopt;
        return below;
    }
    default:
        return std::nullopt;
    }
}

StorageAutomaton one_transition(const char* storage, const char* trans) {
    return parse_automaton(std::string("storage: ") + storage + "\nstates: q0 q1\ninitial: q0\nfinal: q1\ntrans: " +
                           trans + "\n");
}

} // namespace

TEST_CASE("storage expressions parse and print") {
    CHECK(parse_storage("Z").kind() == StorageKind::ZCounter);
    CHECK(parse_storage("C").kind() == StorageKind::Counter);
    auto p = parse_storage("P{_,0,1}(C)");
    CHECK(p.kind() == StorageKind::Pushdown);
    CHECK(p.alphabet() == std::vector<std::string>{"_", "0", "1"});
    CHECK(p.inner().kind() == StorageKind::Counter);
    auto inv = parse_storage("Pinv{_,0,1}(Z)");
    CHECK(inv.kind() == StorageKind::PushdownInv);
    CHECK(inv.inner().kind() == StorageKind::ZCounter);
    for (const char* s : {"C", "Z", "P{_,0,1}(C)", "Pinv{_,a}(P{_,b}(Z))"})
        CHECK(to_string(parse_storage(s)) == s);
    // The bottom symbol is moved to the front.
    CHECK(to_string(parse_storage("P{1,_}(C)")) == "P{_,1}(C)");
}

TEST_CASE("malformed storage expressions are rejected") {
    CHECK_THROWS_AS(parse_storage("P{_,0(C)"), SyntaxError);
    CHECK_THROWS_AS(parse_storage("Q"), SyntaxError);
    CHECK_THROWS_AS(parse_storage("P{0,1}(C)"), SyntaxError);
    CHECK_THROWS_AS(parse_storage("P{_,_}(C)"), SyntaxError);
    CHECK_THROWS_AS(StorageExpr::pushdown({"0", "1"}, StorageExpr::counter()), IllTyped);
}

TEST_CASE("apply_op on the documented examples") {
    auto c = StorageExpr::counter();
    CHECK_FALSE(apply_op(c, OpId::pop(), StorageConfig::counter(0)));

    auto p = parse_storage("P{_,0,1}(C)");
    auto r = apply_op(p, parse_op(p, "push(1)"), parse_config(p, "(_,0)"));
    REQUIRE(r);
    CHECK(to_string(p, *r) == "(_,0)(1,0)");

    auto inv = parse_storage("Pinv{_}(C)");
    auto ok = apply_op(inv, parse_op(inv, "invpush(_)"), parse_config(inv, "(_,3)(_,3)"));
    REQUIRE(ok);
    CHECK(to_string(inv, *ok) == "(_,3)");
    CHECK_FALSE(apply_op(inv, parse_op(inv, "invpush(_)"), parse_config(inv, "(_,3)(_,2)")));
}

TEST_CASE("eval_test on the documented examples") {
    auto z = StorageExpr::zcounter();
    CHECK(eval_test(z, TestId::empty(), StorageConfig::counter(0)));
    CHECK_FALSE(eval_test(z, TestId::empty(), StorageConfig::counter(2)));

    auto pc = parse_storage("P{_,0,1}(C)");
    CHECK(eval_test(pc, TestId::top(pc.symbol("1")), parse_config(pc, "(_,2)(1,0)")));
    CHECK(eval_test(pc, TestId::top(kBottom).wrapped(), parse_config(pc, "(_,2)(1,0)")));

    auto pz = parse_storage("P{_,0,1}(Z)");
    CHECK(eval_test(pz, TestId::empty().wrapped(), parse_config(pz, "(_,2)(1,0)")));
    CHECK_FALSE(eval_test(pz, TestId::empty().wrapped(), parse_config(pz, "(_,0)(1,2)")));
}

TEST_CASE("test_mask agrees with eval_test") {
    for (const char* s : {"Z", "P{_,0,1}(Z)", "Pinv{_,a}(P{_,b}(C))"}) {
        auto e = parse_storage(s);
        for (const StorageConfig& c : all_configs(e, 2, 2)) {
            TestMask m = test_mask(e, c);
            for (std::size_t i = 0; i < e.tests().size(); ++i)
                CHECK(((m >> i) & 1) == eval_test(e, e.tests()[i], c));
        }
    }
}

TEST_CASE("partial semantics match a unary reference model") {
    for (const char* s : {"C", "Z", "P{_,0,1}(C)", "Pinv{_,1}(Z)", "P{_,1}(P{_,1}(C))", "Pinv{_}(P{_,1}(C))"}) {
        auto e = parse_storage(s);
        const auto configs = all_configs(e, e.depth() >= 2 ? 2 : 4, e.depth() >= 2 ? 1 : 4);
        const auto ops = all_ops(e, 2);
        for (const StorageConfig& c : configs) {
            REQUIRE(well_typed(e, c));
            for (const OpId& f : ops) {
                auto got = apply_op(e, f, c);
                auto want = ref_apply(e, f, to_ref(e, c));
                REQUIRE(got.has_value() == want.has_value());
                if (got) {
                    CHECK(to_ref(e, *got) == *want);
                    CHECK(apply_op(e, f, c) == got); // pure
                }
            }
        }
    }
}

TEST_CASE("pop is not an operation of the inverse-push pushdown") {
    auto inv = parse_storage("Pinv{_,1}(C)");
    CHECK_FALSE(well_typed(inv, OpId::pop()));
    CHECK_THROWS_AS(parse_automaton("storage: Pinv{_,1}(C)\ntrans: q0 pop q1\n"), IllTyped);
    CHECK_FALSE(well_typed(parse_storage("P{_,1}(C)"), OpId::inv_push(1)));
    CHECK_FALSE(well_typed(StorageExpr::counter(), TestId::empty()));
}

TEST_CASE("ops, tests and configs round-trip through text") {
    auto e = parse_storage("P{_,0,1}(P{_,a}(Z))");
    for (const OpId& f : all_ops(e, 2))
        CHECK(parse_op(e, to_string(e, f)) == f);
    for (const TestId& t : e.tests())
        for (bool v : {true, false}) {
            auto lit = parse_test_literal(e, to_string(e, TestLiteral{t, v}));
            CHECK(lit.test == t);
            CHECK(lit.value == v);
        }
    for (const StorageConfig& c : all_configs(e, 2, 1))
        CHECK(parse_config(e, to_string(e, c)) == c);
}

TEST_CASE("successors follow declaration order and applicability") {
    auto e = parse_storage("P{_,0,1}(C)");
    StorageAutomaton none(e);
    none.add_state("q0");
    CHECK(successors(none, none.initial_configuration()).empty());

    auto aut = parse_automaton("storage: P{_,0,1}(C)\n"
                               "trans: q0 [top=_, inner(top=_)] pop q1\n"
                               "trans: q0 [top=1] id q1\n"
                               "trans: q0 id q2\n");
    auto at = [&](const char* cfg) {
        return successors(aut, Configuration{aut.state_id("q0"), parse_config(e, cfg)});
    };
    auto s1 = at("(_,0)");
    REQUIRE(s1.size() == 1);
    CHECK(s1[0].transition == 2);
    auto s2 = at("(_,0)(_,2)");
    REQUIRE(s2.size() == 2);
    CHECK(s2[0].transition == 0);
    CHECK(to_string(aut, s2[0].config) == "(q1,(_,0))");
}

TEST_CASE("don't-care tests expand to total vectors") {
    auto aut = parse_automaton("storage: P{_,1}(Z)\ntrans: q0 [top=1] pop q1\n");
    auto all = aut.expanded_transitions();
    // tests: top=_, top=1, inner(top=_), inner(empty); one fixed, three free
    CHECK(all.size() == 8);
    for (const Transition& t : all)
        CHECK(t.care == 0b1111);
    auto contradictory = parse_automaton("storage: Z\ntrans: q0 [empty=true, empty=false] id q1\n");
    CHECK(contradictory.transitions().empty());
}

TEST_CASE("automaton files round-trip") {
    const char* text = "storage: P{_,0,1}(C)\n"
                       "states: q0 q1 q2\n"
                       "initial: q0\n"
                       "final: q2\n"
                       "mode: q1 universal            # optional; default existential\n"
                       "trans: q0 [top=_ ] push(1) q1  # tests in brackets\n"
                       "trans: q1 [top=1] stay(pop) q1\n"
                       "trans: q1 [top=1] pop q2\n";
    auto aut = parse_automaton(text);
    CHECK(aut.num_states() == 3);
    CHECK(aut.mode(1) == Mode::Universal);
    CHECK(aut.final_state() == 2);
    auto again = parse_automaton(to_string(aut));
    CHECK(to_string(again) == to_string(aut));
    CHECK_THROWS_AS(parse_automaton("storage: C\nstates: q0\ntrans: q0 id q9\n"), UnknownState);
    CHECK_THROWS_AS(parse_automaton("storage: P{_,0}(C)\ntrans: q0 push(7) q1\n"), UnknownSymbol);
    CHECK_THROWS_AS(parse_automaton("trans: q0 id q1\n"), SyntaxError);
}

TEST_CASE("reach_oracle basics") {
    auto aut = one_transition("C", "q0 pushsym(_) q1");
    Caps caps;
    auto r = reach_oracle(aut, aut.state_id("q1"), caps);
    REQUIRE(r.reachable());
    CHECK(r.trace.length() == 1);
    CHECK(replay(aut, r.trace));

    auto zero = reach_oracle(aut, aut.state_id("q0"), caps);
    REQUIRE(zero.reachable());
    CHECK(zero.trace.length() == 0);
}

TEST_CASE("reach_oracle on a push-then-drain automaton") {
    // Push a symbol, raise its counter twice, drain it, pop back.
    auto aut = parse_automaton("storage: P{_,1}(C)\n"
                               "trans: q0 [top=_] push(1) q1\n"
                               "trans: q1 [top=1] stay(pushsym(_)) q1\n"
                               "trans: q1 [top=1] stay(pop) q2\n"
                               "trans: q2 [top=1] pop q3\n");
    Caps caps;
    auto r = reach_oracle(aut, aut.state_id("q3"), caps);
    REQUIRE(r.reachable());
    CHECK(r.trace.length() == 4); // push, inc, dec, pop
    CHECK(replay(aut, r.trace));
}

TEST_CASE("NotFoundWithinCaps is honest about pruning") {
    // q1 needs the counter at 5; caps of 3 cannot see it.
    auto aut = parse_automaton("storage: Z\n"
                               "trans: q0 pushsym(_) q0\n"
                               "trans: q0 pop q2\n"
                               "trans: q2 pop q3\n"
                               "trans: q3 pop q4\n"
                               "trans: q4 pop q5\n"
                               "trans: q5 pop q1\n");
    Caps small;
    small.max_counter = 3;
    auto r = reach_oracle(aut, aut.state_id("q1"), small);
    CHECK_FALSE(r.reachable());
    CHECK_FALSE(r.exhaustive());
    Caps big = small.doubled();
    CHECK(reach_oracle(aut, aut.state_id("q1"), big).reachable());
    CHECK(reach_stabilized(aut, aut.state_id("q1"), small).verdict == Verdict::Reachable);

    auto finite = parse_automaton("storage: Z\ntrans: q0 pushsym(_) q1\ntrans: q1 [empty=true] id q2\n");
    auto f = reach_oracle(finite, finite.state_id("q2"), small);
    CHECK_FALSE(f.reachable());
    CHECK(f.exhaustive());
    CHECK(reach_stabilized(finite, finite.state_id("q2"), small).verdict == Verdict::Unreachable);
}

TEST_CASE("oracle is monotone in caps") {
    Rng rng(11);
    auto e = parse_storage("P{_,1}(Z)");
    for (int i = 0; i < 100; ++i) {
        auto aut = random_automaton(rng, e, 3, 6, false);
        Caps caps;
        caps.max_height = {2};
        caps.max_counter = 2;
        caps.max_steps = 8;
        auto small = reach_oracle(aut, aut.final_state(), caps);
        auto large = reach_oracle(aut, aut.final_state(), caps.doubled());
        if (small.reachable()) {
            CHECK(large.reachable());
            CHECK(large.trace.length() <= small.trace.length());
            CHECK(replay(aut, small.trace));
        }
    }
}

TEST_CASE("alternating oracle: universal choice over applicable transitions") {
    auto aut = parse_automaton("storage: Z\n"
                               "mode: q0 universal\n"
                               "trans: q0 pushsym(_) q1\n"
                               "trans: q0 pop q1\n");
    Caps caps;
    // pop is inapplicable at counter 0, so inc is the only successor.
    CHECK(alt_reach_oracle(aut, aut.state_id("q1"), caps).reachable());

    auto dead = parse_automaton("storage: Z\n"
                                "states: q0 live dead goal\n"
                                "mode: q0 universal\n"
                                "trans: q0 pushsym(_) live\n"
                                "trans: q0 id dead\n"
                                "trans: live id goal\n");
    CHECK_FALSE(alt_reach_oracle(dead, dead.state_id("goal"), caps).reachable());
    CHECK(reach_oracle(dead, dead.state_id("goal"), caps).reachable());

    auto stuck = parse_automaton("storage: Z\nstates: q0 goal\nmode: q0 universal\n");
    CHECK_FALSE(alt_reach_oracle(stuck, stuck.state_id("goal"), caps).reachable());
}

TEST_CASE("alternating oracle coincides with the plain one without universal states") {
    Rng rng(7);
    auto e = parse_storage("P{_,1}(Z)");
    Caps caps;
    caps.max_height = {3};
    caps.max_counter = 3;
    caps.max_steps = 16;
    for (int i = 0; i < 100; ++i) {
        auto aut = random_automaton(rng, e, 4, 8, false);
        CHECK(alt_reach_oracle(aut, aut.final_state(), caps).reachable() ==
              reach_oracle(aut, aut.final_state(), caps).reachable());
    }
}

TEST_CASE("val_check on the documented examples") {
    auto z = StorageExpr::zcounter();
    CHECK(val_check(z, parse_val_sequence(z, "pushsym(_) empty=false pop empty=true")));
    CHECK_FALSE(val_check(z, parse_val_sequence(z, "pop")));
    auto p = parse_storage("P{_,0,1}(C)");
    CHECK_FALSE(val_check(p, parse_val_sequence(p, "push(1) top=1 pop top=1")));
    CHECK(val_check(p, parse_val_sequence(p, "push(1) top=1 pop top=_")));
    CHECK(val_check(p, {}));
}

TEST_CASE("val_check agrees with reachability in the VAL automaton") {
    Rng rng(3);
    for (const char* s : {"Z", "P{_,0,1}(C)"}) {
        auto e = parse_storage(s);
        for (int i = 0; i < 200; ++i) {
            auto word = random_val_word(rng, e, 20);
            CHECK(val_check(e, word) == val_check_via_reach(e, word));
            CHECK(parse_val_sequence(e, to_string(e, word)).size() == word.size());
        }
    }
}
