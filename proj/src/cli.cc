// cli.cc -- command-line front end

#include "hoca/cli.hh"

#include "hoca/error.hh"
#include "hoca/hoca2.hh"
#include "hoca/oracle.hh"
#include "hoca/regnotions.hh"
#include "hoca/regreach.hh"
#include "hoca/summaries.hh"
#include "hoca/transforms.hh"
#include "hoca/trees.hh"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace hoca {

namespace {

enum class LogLevel { Off, Info, Debug };

LogLevel log_level() {
    const char* v = std::getenv("HOCA_LOG");
    if (!v)
        return LogLevel::Off;
    const std::string s(v);
    if (s == "debug")
        return LogLevel::Debug;
    if (s == "info")
        return LogLevel::Info;
    return LogLevel::Off;
}

/// Results as `key<TAB>value` lines in machine mode, prose otherwise.
class Reporter {
public:
    Reporter(std::ostream& out, std::ostream& err, bool machine)
        : out_(out), err_(err), machine_(machine), level_(log_level()) {}

    bool machine() const { return machine_; }
    std::ostream& out() { return out_; }
    void kv(const std::string& key, const std::string& value) {
        if (machine_)
            out_ << key << '\t' << value << '\n';
    }
    void human(const std::string& line) {
        if (!machine_)
            out_ << line << '\n';
    }
    void info(const std::string& msg) {
        if (level_ != LogLevel::Off)
            err_ << "hoca: " << msg << '\n';
    }
    void debug(const std::string& msg) {
        if (level_ == LogLevel::Debug)
            err_ << "hoca: " << msg << '\n';
    }

private:
    std::ostream& out_;
    std::ostream& err_;
    bool machine_;
    LogLevel level_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Options {
    std::string file;
    std::string target;
    std::size_t max_height = 0;
    std::uint64_t max_counter = 0;
    std::size_t max_steps = 0;
    std::string set_file;
    std::string pass;
    std::string query;
    std::string storage;
    std::string sequence;
    std::string text;
    bool machine = false;
};

StateId target_state(const StorageAutomaton& aut, const Options& o) {
    return o.target.empty() ? aut.final_state() : aut.state_id(o.target);
}

int cmd_reach(const Options& o, Reporter& r) {
    std::vector<std::size_t> lines;
    StorageAutomaton aut = parse_automaton(read_file(o.file), &lines);
    const StateId q = target_state(aut, o);
    if (aut.is_alternating())
        throw IllTyped("reach handles existential automata only (use 'oracle')");
    const auto start = std::chrono::steady_clock::now();
    Normalized n = normalize(aut, q);
    r.debug("normalized: " + std::to_string(n.automaton.num_states()) + " states, " +
            std::to_string(n.automaton.transitions().size()) + " transitions");
    const bool yes = reach_hoca(n.automaton, n.drain);
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    r.info("reach_hoca took " + std::to_string(ms) + " ms");
    r.kv("target", aut.state_name(q));
    r.kv("verdict", yes ? "reachable" : "unreachable");
    r.human(yes ? "REACHABLE" : "UNREACHABLE");
    return yes ? kPositive : kNegative;
}

Caps oracle_caps(const Options& o) {
    Caps caps;
    if (o.max_height)
        caps.max_height = {o.max_height};
    if (o.max_counter)
        caps.max_counter = o.max_counter;
    if (o.max_steps)
        caps.max_steps = o.max_steps;
    return caps;
}

int cmd_oracle(const Options& o, Reporter& r) {
    StorageAutomaton aut = parse_automaton(read_file(o.file));
    const StateId q = target_state(aut, o);
    const Caps caps = oracle_caps(o);
    const bool alt = aut.is_alternating();
    OracleResult res = alt ? alt_reach_oracle(aut, q, caps) : reach_oracle(aut, q, caps);
    r.info("explored " + std::to_string(res.explored) + " configurations");
    r.kv("target", aut.state_name(q));
    r.kv("mode", alt ? "alternating" : "existential");
    r.kv("explored", std::to_string(res.explored));
    if (res.reachable()) {
        r.kv("verdict", "reachable");
        if (!alt)
            r.kv("steps", std::to_string(res.trace.length()));
        r.human("REACHABLE");
        if (!alt && !r.machine())
            for (const Configuration& c : res.trace.configs)
                r.out() << "  " << to_string(aut, c) << '\n';
        return kPositive;
    }
    if (res.exhaustive()) {
        r.kv("verdict", "unreachable");
        r.human("UNREACHABLE (the bounded graph was explored completely)");
        return kNegative;
    }
    r.kv("verdict", "not-found-within-caps");
    r.human("NOT FOUND WITHIN CAPS");
    return kNotWithinCaps;
}

int cmd_table(const Options& o, Reporter& r) {
    Hocs2 a = parse_hocs2(read_file(o.file));
    TableRun run = compute_return_table(a);
    r.info(std::to_string(run.sweeps) + " sweeps");
    const Bounds b = bounds(a);
    r.kv("h0", std::to_string(b.h0));
    r.kv("k0", std::to_string(b.k0));
    r.kv("sweeps", std::to_string(run.sweeps));
    std::istringstream rows(to_string(a, run.table));
    for (std::string line; std::getline(rows, line);) {
        r.kv("entry", line);
        r.human(line);
    }
    return kPositive;
}

int cmd_summary_dfa(const Options& o, Reporter& r) {
    Hocs2 a = parse_hocs2(read_file(o.file));
    SummaryDfa dfa = build_summary_dfa(a);
    if (!o.query.empty()) {
        std::uint64_t n = 0;
        try {
            std::size_t used = 0;
            n = std::stoull(o.query, &used);
            if (used != o.query.size())
                throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw SyntaxError("--query expects a counter value, got '" + o.query + "'", 0);
        }
        const std::size_t s = dfa.state_after(n);
        r.kv("state", std::to_string(s));
        r.kv("value", to_string(a, dfa.values[s]));
        r.human("after _^" + std::to_string(n) + ": state " + std::to_string(s));
        r.human("  " + to_string(a, dfa.values[s]));
        return kPositive;
    }
    r.kv("n0", std::to_string(bounds(a).n0));
    r.human("M_0 .. M_" + std::to_string(dfa.chain.size() - 1) + ":");
    for (std::size_t i = 0; i < dfa.chain.size(); ++i) {
        r.kv("chain." + std::to_string(i), to_string(a, dfa.chain[i]));
        r.human("  M_" + std::to_string(i) + " = " + to_string(a, dfa.chain[i]));
    }
    r.kv("states", std::to_string(dfa.values.size()));
    r.human("automaton with " + std::to_string(dfa.values.size()) + " states (start 0):");
    for (std::size_t s = 0; s < dfa.values.size(); ++s) {
        r.kv("state." + std::to_string(s), "next=" + std::to_string(dfa.next[s]) + " " + to_string(a, dfa.values[s]));
        r.human("  " + std::to_string(s) + " -_-> " + std::to_string(dfa.next[s]) + "  " + to_string(a, dfa.values[s]));
    }
    return kPositive;
}

int cmd_encode(const Options& o, Reporter& r) {
    const std::string t = to_string(encode(parse_named_configuration(o.text)));
    r.kv("tree", t);
    r.human(t);
    return kPositive;
}

int cmd_decode(const Options& o, Reporter& r) {
    const std::string c = to_string(decode(parse_tree(o.text)));
    r.kv("config", c);
    r.human(c);
    return kPositive;
}

int cmd_regreach(const Options& o, Reporter& r, bool backward) {
    Hocs2 a = parse_hocs2(read_file(o.file));
    TreeAutomaton set = parse_tree_automaton(read_file(o.set_file));
    RegCaps caps;
    if (o.max_height)
        caps.max_height = o.max_height;
    if (o.max_counter)
        caps.max_counter = o.max_counter;
    RegReachResult res = backward ? bounded_pre_star(a, set, caps) : bounded_post_star(a, set, caps);
    r.info(std::to_string(res.members().size()) + " members within caps");
    r.kv("caps", "height=" + std::to_string(caps.max_height) + " counter=" + std::to_string(caps.max_counter));
    if (o.query.empty()) {
        r.kv("members", std::to_string(res.members().size()));
        r.human(std::to_string(res.members().size()) + " configurations within caps:");
        for (const L2Configuration& c : res.members()) {
            r.kv("member", to_string(a, c));
            r.human("  " + to_string(a, c));
        }
        return kPositive;
    }
    const L2Configuration c = parse_l2_configuration(a, o.query);
    RegAnswer ans = res.query(c);
    r.kv("query", to_string(a, c));
    if (ans.verdict != Membership::In) {
        r.kv("verdict", "not-within-caps");
        r.human("NOT A MEMBER WITHIN CAPS");
        return kNotWithinCaps;
    }
    std::string run;
    for (const L2Configuration& x : ans.witness->configs)
        run += (run.empty() ? "" : " ") + to_string(a, x);
    r.kv("verdict", "in");
    r.kv("witness", run);
    r.human("IN");
    r.human("  witness: " + run);
    return kPositive;
}

int cmd_transform(const Options& o, Reporter& r) {
    std::vector<std::size_t> lines;
    StorageAutomaton aut = parse_automaton(read_file(o.file), &lines);
    StorageAutomaton out = o.pass == "elim-symbols"     ? eliminate_level2_symbols(aut, &lines)
                           : o.pass == "pop-to-invpush" ? pop_to_invpush(aut, &lines)
                                                        : invpush_to_pop(aut, &lines);
    r.info(std::to_string(aut.num_states()) + " states in, " + std::to_string(out.num_states()) + " out");
    r.out() << to_string(out);
    return kPositive;
}

int cmd_val(const Options& o, Reporter& r) {
    const StorageExpr e = parse_storage(o.storage);
    const bool ok = val_check(e, parse_val_sequence(e, o.sequence));
    r.kv("valid", ok ? "true" : "false");
    r.human(ok ? "VALID" : "INVALID");
    return ok ? kPositive : kNegative;
}

int cmd_two_store(const Options& o, Reporter& r) {
    TwoStoreAutomaton a = parse_two_store(read_file(o.file));
    const bool ok = two_store_membership(a, parse_named_configuration(o.query));
    r.kv("accepted", ok ? "true" : "false");
    r.human(ok ? "ACCEPTED" : "REJECTED");
    return ok ? kPositive : kNegative;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reachability for level-2 counter automata", "hoca"};
    app.require_subcommand(1);
    Options o;

    auto machine = [&](CLI::App* sub) { sub->add_flag("--machine", o.machine, "key<TAB>value output"); };
    auto caps = [&](CLI::App* sub, bool steps) {
        sub->add_option("--max-height", o.max_height, "stack height cap")->check(CLI::PositiveNumber);
        sub->add_option("--max-counter", o.max_counter, "counter cap")->check(CLI::PositiveNumber);
        if (steps)
            sub->add_option("--max-steps", o.max_steps, "run length cap")->check(CLI::PositiveNumber);
    };

    CLI::App* reach = app.add_subcommand("reach", "control-state reachability (exact)");
    reach->add_option("FILE", o.file, "automaton over P{...}(C)")->required();
    reach->add_option("--target", o.target, "target state (default: the final state)");
    machine(reach);

    CLI::App* oracle = app.add_subcommand("oracle", "bounded explicit search, alternating if the file has universal states");
    oracle->add_option("FILE", o.file, "automaton over any storage type")->required();
    oracle->add_option("--target", o.target, "target state (default: the final state)");
    caps(oracle, true);
    machine(oracle);

    CLI::App* table = app.add_subcommand("table", "return table, one 'symbol p q value' line per entry");
    table->add_option("FILE", o.file, "restricted automaton over P{...}(C)")->required();
    machine(table);

    CLI::App* sdfa = app.add_subcommand("summary-dfa", "word automaton of return and loop summaries");
    sdfa->add_option("FILE", o.file, "restricted automaton over P{...}(C)")->required();
    sdfa->add_option("--query", o.query, "counter value n: print the state after _^n");
    machine(sdfa);

    CLI::App* enc = app.add_subcommand("encode", "tree encoding of a configuration");
    enc->add_option("CONFIG", o.text, "(q,(σ,n)...)")->required();
    machine(enc);

    CLI::App* dec = app.add_subcommand("decode", "configuration encoded by a tree");
    dec->add_option("TREE", o.text, "q(...,-)")->required();
    machine(dec);

    CLI::App* pre = app.add_subcommand("prestar", "bounded pre* of a tree-automatic set");
    CLI::App* post = app.add_subcommand("poststar", "bounded post* of a tree-automatic set");
    for (CLI::App* sub : {pre, post}) {
        sub->add_option("FILE", o.file, "restricted automaton over P{...}(C)")->required();
        sub->add_option("--set", o.set_file, "tree automaton file")->required();
        sub->add_option("--query", o.query, "configuration (q,(σ,n)...); without it all members are listed");
        caps(sub, false);
        machine(sub);
    }

    CLI::App* tr = app.add_subcommand("transform", "storage simulation pass, prints the new automaton");
    tr->add_option("FILE", o.file, "input automaton")->required();
    tr->add_option("--pass", o.pass, "pass name")
        ->required()
        ->check(CLI::IsMember({"elim-symbols", "pop-to-invpush", "invpush-to-pop"}));

    CLI::App* val = app.add_subcommand("val", "membership of a word in VAL(S)");
    val->add_option("STORAGE", o.storage, "storage type, e.g. P{_,0,1}(C)")->required();
    val->add_option("WORD", o.sequence, "operations and test letters separated by spaces")->required();
    machine(val);

    CLI::App* ts = app.add_subcommand("two-store", "2-store automaton membership");
    ts->add_option("FILE", o.file, "2-store automaton file")->required();
    ts->add_option("--query", o.query, "configuration (q,(σ,n)...)")->required();
    machine(ts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPositive;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPositive;
    } catch (const CLI::ParseError& e) {
        err << "hoca: " << e.what() << '\n';
        return kUsage;
    }

    Reporter r(out, err, o.machine);
    try {
        if (*reach)
            return cmd_reach(o, r);
        if (*oracle)
            return cmd_oracle(o, r);
        if (*table)
            return cmd_table(o, r);
        if (*sdfa)
            return cmd_summary_dfa(o, r);
        if (*enc)
            return cmd_encode(o, r);
        if (*dec)
            return cmd_decode(o, r);
        if (*pre)
            return cmd_regreach(o, r, true);
        if (*post)
            return cmd_regreach(o, r, false);
        if (*tr)
            return cmd_transform(o, r);
        if (*val)
            return cmd_val(o, r);
        if (*ts)
            return cmd_two_store(o, r);
    } catch (const std::exception& e) {
        err << "hoca: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace hoca
