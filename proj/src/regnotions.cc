// regnotions.cc -- alternating unary automata and 2-store automata

#include "hoca/regnotions.hh"

#include "hoca/error.hh"
#include "text.hh"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace hoca {

std::size_t UnaryAfa::add_state(const std::string& state, Mode mode, bool accept) {
    if (std::find(states.begin(), states.end(), state) != states.end())
        throw Error("duplicate state '" + state + "' in automaton '" + name + "'");
    states.push_back(state);
    modes.push_back(mode);
    accepting.push_back(accept);
    next.emplace_back();
    return states.size() - 1;
}

std::size_t UnaryAfa::state_id(std::string_view state) const {
    auto it = std::find(states.begin(), states.end(), state);
    if (it == states.end())
        throw UnknownState(std::string(state));
    return static_cast<std::size_t>(it - states.begin());
}

void UnaryAfa::add_transition(std::size_t from, std::size_t to) { next.at(from).push_back(to); }

bool afa_unary_membership(const UnaryAfa& afa, std::uint64_t m) {
    if (afa.states.empty())
        return false;
    // acc[s]: s accepts the j letters still to be read.
    std::vector<bool> acc = afa.accepting, step(afa.states.size());
    for (std::uint64_t j = 1; j <= m; ++j) {
        for (std::size_t s = 0; s < afa.states.size(); ++s) {
            const auto& succ = afa.next[s];
            if (afa.modes[s] == Mode::Universal)
                step[s] = std::all_of(succ.begin(), succ.end(), [&](std::size_t t) { return acc[t]; });
            else
                step[s] = std::any_of(succ.begin(), succ.end(), [&](std::size_t t) { return acc[t]; });
        }
        if (step == acc)
            break; // a fixpoint: every longer word gives the same answer
        acc.swap(step);
    }
    return acc[afa.initial];
}

UnaryAfa modulo_afa(const std::string& name, std::uint64_t p) {
    if (p == 0)
        throw Error("modulus must be positive");
    UnaryAfa a;
    a.name = name;
    for (std::uint64_t i = 0; i < p; ++i)
        a.add_state("r" + std::to_string(i), Mode::Existential, i == 0);
    // Reading ⊥ from r_i moves to r_{i-1}: r_i accepts ⊥^m iff m = i mod p.
    for (std::uint64_t i = 0; i < p; ++i)
        a.add_transition(i, (i + p - 1) % p);
    return a;
}

std::size_t TwoStoreAutomaton::add_state(const std::string& name, Mode mode) {
    if (std::find(states_.begin(), states_.end(), name) != states_.end())
        throw Error("duplicate state '" + name + "'");
    states_.push_back(name);
    modes_.push_back(mode);
    accepting_.push_back(false);
    return states_.size() - 1;
}

std::size_t TwoStoreAutomaton::state_id(std::string_view name) const {
    auto it = std::find(states_.begin(), states_.end(), name);
    if (it == states_.end())
        throw UnknownState(std::string(name));
    return static_cast<std::size_t>(it - states_.begin());
}

std::size_t TwoStoreAutomaton::add_afa(UnaryAfa afa) {
    for (const UnaryAfa& b : afas_)
        if (b.name == afa.name)
            throw Error("duplicate automaton '" + afa.name + "'");
    afas_.push_back(std::move(afa));
    return afas_.size() - 1;
}

std::size_t TwoStoreAutomaton::afa_id(std::string_view name) const {
    for (std::size_t i = 0; i < afas_.size(); ++i)
        if (afas_[i].name == name)
            return i;
    throw Error("unknown automaton '" + std::string(name) + "'");
}

void TwoStoreAutomaton::add_transition(const TwoStoreTransition& t) {
    if (t.from >= states_.size() || t.to >= states_.size())
        throw UnknownState(std::to_string(std::max(t.from, t.to)));
    if (std::find(symbols.begin(), symbols.end(), t.symbol) == symbols.end())
        throw UnknownSymbol(t.symbol);
    if (t.afa >= afas_.size())
        throw Error("unknown automaton #" + std::to_string(t.afa));
    transitions_.push_back(t);
}

bool two_store_membership(const TwoStoreAutomaton& a, const NamedConfiguration& c) {
    const std::size_t start = a.state_id(c.state);
    // memo[k][q]: q accepts the bottom k entries.
    const std::size_t h = c.stack.size();
    std::vector<std::vector<bool>> memo(h + 1, std::vector<bool>(a.num_states()));
    for (std::size_t q = 0; q < a.num_states(); ++q)
        memo[0][q] = a.is_accepting(q);
    std::map<std::pair<std::size_t, std::uint64_t>, bool> afa_memo;
    auto afa_accepts = [&](std::size_t b, std::uint64_t m) {
        auto [it, fresh] = afa_memo.try_emplace({b, m}, false);
        if (fresh)
            it->second = afa_unary_membership(a.afas()[b], m);
        return it->second;
    };
    for (std::size_t k = 1; k <= h; ++k) {
        const auto& [tau, m] = c.stack[k - 1];
        for (std::size_t q = 0; q < a.num_states(); ++q) {
            const bool universal = a.mode(q) == Mode::Universal;
            bool result = universal;
            for (const TwoStoreTransition& t : a.transitions()) {
                if (t.from != q || t.symbol != tau)
                    continue;
                const bool ok = afa_accepts(t.afa, m) && memo[k - 1][t.to];
                if (ok != universal) {
                    result = ok;
                    break;
                }
            }
            memo[k][q] = result;
        }
    }
    return memo[h][start];
}

TwoStoreAutomaton divisibility_two_store(const std::vector<std::uint64_t>& primes) {
    TwoStoreAutomaton a;
    const std::size_t n = primes.size();
    for (std::size_t i = n + 1; i-- > 0;)
        a.add_state("s" + std::to_string(i));
    // States were added s_n first: s_i has id n - i.
    a.set_accepting(n);
    for (std::size_t i = n; i >= 1; --i) {
        const std::uint64_t p = primes[i - 1];
        const std::string name = "mod" + std::to_string(p);
        std::size_t b;
        try {
            b = a.afa_id(name);
        } catch (const Error&) {
            b = a.add_afa(modulo_afa(name, p));
        }
        a.add_transition(TwoStoreTransition{n - i, "_", b, n - i + 1});
    }
    return a;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

Mode parse_mode_word(const std::string& w, std::size_t line) {
    if (w == "universal")
        return Mode::Universal;
    if (w == "existential")
        return Mode::Existential;
    throw SyntaxError("mode must be 'universal' or 'existential'", line);
}

/// Parses the body of one `afa` block (lines [first, last)).
UnaryAfa parse_afa_block(const std::string& name, const std::vector<std::string_view>& lines, std::size_t first,
                         std::size_t last) {
    UnaryAfa b;
    b.name = name;
    std::optional<std::string> initial;
    for (std::size_t ln = first; ln < last; ++ln) {
        const std::size_t line_no = ln + 1;
        std::string_view line = text::trim(text::strip_comment(lines[ln]));
        if (line.empty())
            continue;
        std::string_view key, value;
        if (!text::split_key(line, key, value))
            throw SyntaxError("expected 'key: value' in automaton '" + name + "'", line_no);
        auto words = text::split_ws(value);
        if (key == "states") {
            for (const auto& w : words)
                b.add_state(w);
        } else if (key == "initial") {
            if (words.size() != 1)
                throw SyntaxError("expected one initial state", line_no);
            initial = words[0];
        } else if (key == "final") {
            for (const auto& w : words)
                b.accepting.at(b.state_id(w)) = true;
        } else if (key == "mode") {
            if (words.size() != 2)
                throw SyntaxError("expected 'mode: <state> universal|existential'", line_no);
            b.modes.at(b.state_id(words[0])) = parse_mode_word(words[1], line_no);
        } else if (key == "trans") {
            if (words.size() != 2)
                throw SyntaxError("expected 'trans: <state> <state>'", line_no);
            b.add_transition(b.state_id(words[0]), b.state_id(words[1]));
        } else {
            throw SyntaxError("unknown key '" + std::string(key) + "'", line_no);
        }
    }
    if (b.states.empty())
        throw SyntaxError("automaton '" + name + "' has no states", first);
    b.initial = initial ? b.state_id(*initial) : 0;
    return b;
}

} // namespace

TwoStoreAutomaton parse_two_store(std::string_view input) {
    TwoStoreAutomaton a;
    const auto lines = text::lines(input);
    bool declared = false;
    struct Pending {
        std::string from, symbol, afa, to;
        std::size_t line;
    };
    std::vector<Pending> pending;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const std::size_t line_no = ln + 1;
        std::string_view line = text::trim(text::strip_comment(lines[ln]));
        if (line.empty())
            continue;
        auto words = text::split_ws(line);
        if (words[0] == "afa") {
            if (words.size() != 2)
                throw SyntaxError("expected 'afa <name>'", line_no);
            std::size_t end = ln + 1;
            while (end < lines.size() && text::trim(text::strip_comment(lines[end])) != "end")
                ++end;
            if (end == lines.size())
                throw SyntaxError("automaton '" + words[1] + "' lacks 'end'", line_no);
            a.add_afa(parse_afa_block(words[1], lines, ln + 1, end));
            ln = end;
            continue;
        }
        std::string_view key, value;
        if (!text::split_key(line, key, value))
            throw SyntaxError("expected 'key: value'", line_no);
        words = text::split_ws(value);
        if (key == "symbols") {
            if (declared || !a.transitions().empty() || !pending.empty())
                throw SyntaxError("symbols must precede states and transitions", line_no);
            if (std::find(words.begin(), words.end(), std::string(kBottomName)) == words.end())
                throw SyntaxError("the alphabet must contain '_'", line_no);
            a.symbols = words;
        } else if (key == "states") {
            for (const auto& w : words)
                a.add_state(w);
            declared = true;
        } else if (key == "final") {
            for (const auto& w : words)
                a.set_accepting(a.state_id(w));
        } else if (key == "mode") {
            if (words.size() != 2)
                throw SyntaxError("expected 'mode: <state> universal|existential'", line_no);
            a.set_mode(a.state_id(words[0]), parse_mode_word(words[1], line_no));
        } else if (key == "trans") {
            text::Cursor cur(value);
            Pending p;
            p.line = line_no;
            try {
                p.from = cur.ident();
                cur.expect('(');
                p.symbol = cur.ident();
                cur.expect(',');
                p.afa = cur.ident();
                cur.expect(')');
                p.to = cur.ident();
                if (!cur.at_end())
                    cur.fail("trailing input");
            } catch (const SyntaxError& e) {
                throw SyntaxError(std::string("bad transition: ") + e.what(), line_no);
            }
            pending.push_back(std::move(p));
        } else {
            throw SyntaxError("unknown key '" + std::string(key) + "'", line_no);
        }
    }
    // Automata may be declared after the transitions that use them.
    for (const Pending& p : pending) {
        std::size_t b;
        try {
            b = a.afa_id(p.afa);
        } catch (const Error&) {
            throw SyntaxError("unknown automaton '" + p.afa + "'", p.line);
        }
        a.add_transition(TwoStoreTransition{a.state_id(p.from), p.symbol, b, a.state_id(p.to)});
    }
    if (a.num_states() == 0)
        throw SyntaxError("automaton has no states", 1);
    return a;
}

std::string to_string(const TwoStoreAutomaton& a) {
    std::ostringstream out;
    out << "symbols:";
    for (const auto& s : a.symbols)
        out << ' ' << s;
    out << "\nstates:";
    for (std::size_t q = 0; q < a.num_states(); ++q)
        out << ' ' << a.state_name(q);
    out << "\nfinal:";
    for (std::size_t q = 0; q < a.num_states(); ++q)
        if (a.is_accepting(q))
            out << ' ' << a.state_name(q);
    out << "\n";
    for (std::size_t q = 0; q < a.num_states(); ++q)
        if (a.mode(q) == Mode::Universal)
            out << "mode: " << a.state_name(q) << " universal\n";
    for (const UnaryAfa& b : a.afas()) {
        out << "afa " << b.name << "\n  states:";
        for (const auto& s : b.states)
            out << ' ' << s;
        out << "\n  initial: " << b.states[b.initial] << "\n  final:";
        for (std::size_t s = 0; s < b.states.size(); ++s)
            if (b.accepting[s])
                out << ' ' << b.states[s];
        out << "\n";
        for (std::size_t s = 0; s < b.states.size(); ++s)
            if (b.modes[s] == Mode::Universal)
                out << "  mode: " << b.states[s] << " universal\n";
        for (std::size_t s = 0; s < b.states.size(); ++s)
            for (std::size_t t : b.next[s])
                out << "  trans: " << b.states[s] << ' ' << b.states[t] << "\n";
        out << "end\n";
    }
    for (const TwoStoreTransition& t : a.transitions())
        out << "trans: " << a.state_name(t.from) << " (" << t.symbol << ", " << a.afas()[t.afa].name << ") "
            << a.state_name(t.to) << "\n";
    return out.str();
}

} // namespace hoca
