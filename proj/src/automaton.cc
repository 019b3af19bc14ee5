// automaton.cc -- storage automata, successor relation and text format

#include "hoca/automaton.hh"

#include "hoca/error.hh"
#include "text.hh"

#include <algorithm>
#include <optional>
#include <sstream>

namespace hoca {

StorageAutomaton::StorageAutomaton(StorageExpr storage) : storage_(std::move(storage)) {}

StateId StorageAutomaton::add_state(const std::string& name, Mode mode) {
    if (has_state(name))
        throw Error("duplicate state '" + name + "'");
    states_.push_back(name);
    modes_.push_back(mode);
    return static_cast<StateId>(states_.size() - 1);
}

StateId StorageAutomaton::state(const std::string& name) {
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (states_[i] == name)
            return static_cast<StateId>(i);
    return add_state(name);
}

StateId StorageAutomaton::state_id(std::string_view name) const {
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (states_[i] == name)
            return static_cast<StateId>(i);
    throw UnknownState(std::string(name));
}

bool StorageAutomaton::has_state(std::string_view name) const {
    return std::find(states_.begin(), states_.end(), name) != states_.end();
}

std::string StorageAutomaton::fresh_name(const std::string& base) const {
    if (!has_state(base))
        return base;
    for (std::size_t i = 1;; ++i) {
        std::string candidate = base + "'" + std::to_string(i);
        if (!has_state(candidate))
            return candidate;
    }
}

bool StorageAutomaton::is_alternating() const {
    return std::find(modes_.begin(), modes_.end(), Mode::Universal) != modes_.end();
}

void StorageAutomaton::add_transition(StateId from, const std::vector<TestLiteral>& tests, StateId to,
                                      const OpId& op) {
    if (!well_typed(storage_, op))
        throw IllTyped("operation not available on storage " + to_string(storage_));
    Transition t;
    t.from = from;
    t.to = to;
    t.op = op;
    for (const TestLiteral& lit : tests) {
        const TestMask bit = TestMask{1} << storage_.test_index(lit.test);
        if ((t.care & bit) && ((t.value & bit) != 0) != lit.value) {
            // Contradictory constraints: the transition can never fire.
            return;
        }
        t.care |= bit;
        if (lit.value)
            t.value |= bit;
    }
    transitions_.push_back(std::move(t));
}

void StorageAutomaton::add_transition(const Transition& t) {
    if (t.from >= states_.size() || t.to >= states_.size())
        throw UnknownState(std::to_string(std::max(t.from, t.to)));
    if (!well_typed(storage_, t.op))
        throw IllTyped("operation not available on storage " + to_string(storage_));
    transitions_.push_back(t);
}

std::vector<Transition> StorageAutomaton::expanded_transitions() const {
    const std::size_t n = storage_.tests().size();
    const TestMask all = n == 64 ? ~TestMask{0} : ((TestMask{1} << n) - 1);
    std::vector<Transition> out;
    for (const Transition& t : transitions_) {
        const TestMask free = all & ~t.care;
        // Enumerate all submasks of `free`.
        TestMask sub = free;
        while (true) {
            Transition e = t;
            e.care = all;
            e.value = t.value | sub;
            out.push_back(e);
            if (sub == 0)
                break;
            sub = (sub - 1) & free;
        }
    }
    return out;
}

std::vector<Successor> successors(const StorageAutomaton& aut, const Configuration& c) {
    std::vector<Successor> out;
    const TestMask outcome = test_mask(aut.storage(), c.storage);
    const auto& ts = aut.transitions();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const Transition& t = ts[i];
        if (t.from != c.state || !t.matches(outcome))
            continue;
        auto next = apply_op(aut.storage(), t.op, c.storage);
        if (!next)
            continue;
        out.push_back(Successor{i, Configuration{t.to, std::move(*next)}});
    }
    return out;
}

std::vector<TestLiteral> constrained_tests(const StorageExpr& e, const Transition& t) {
    std::vector<TestLiteral> out;
    for (std::size_t i = 0; i < e.tests().size(); ++i) {
        const TestMask bit = TestMask{1} << i;
        if (t.care & bit)
            out.push_back(TestLiteral{e.tests()[i], (t.value & bit) != 0});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

/// Reads an operation term (identifier plus optional balanced argument list).
std::string read_op_text(text::Cursor& cur) {
    std::string word = cur.ident();
    if (cur.peek() == '(') {
        cur.expect('(');
        std::string_view args = cur.balanced();
        cur.expect(')');
        return word + "(" + std::string(args) + ")";
    }
    return word;
}

std::vector<TestLiteral> parse_test_list(const StorageExpr& e, std::string_view body) {
    std::vector<TestLiteral> out;
    text::Cursor cur(body);
    while (!cur.at_end()) {
        if (cur.accept(','))
            continue;
        std::size_t start = cur.pos();
        std::string word = cur.ident();
        std::string lit_text = word;
        if (cur.peek() == '(') {
            cur.expect('(');
            lit_text += "(" + std::string(cur.balanced()) + ")";
            cur.expect(')');
        } else if (cur.accept("!=")) {
            lit_text += "!=" + cur.ident();
        } else if (cur.accept('=')) {
            lit_text += "=" + cur.ident();
        }
        (void)start;
        out.push_back(parse_test_literal(e, lit_text));
    }
    return out;
}

Mode parse_mode(const std::string& word, std::size_t line) {
    if (word == "universal")
        return Mode::Universal;
    if (word == "existential")
        return Mode::Existential;
    throw SyntaxError("mode must be 'universal' or 'existential'", line);
}

} // namespace

StorageAutomaton parse_automaton(std::string_view input, std::vector<std::size_t>* transition_lines) {
    std::optional<StorageAutomaton> aut;
    bool declared_states = false;
    std::optional<std::string> initial, final_state;
    auto lines = text::lines(input);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const std::size_t line_no = ln + 1;
        std::string_view line = text::trim(text::strip_comment(lines[ln]));
        if (line.empty())
            continue;
        std::string_view key, value;
        if (!text::split_key(line, key, value))
            throw SyntaxError("expected 'key: value'", line_no);
        try {
            if (key == "storage") {
                if (aut)
                    throw SyntaxError("storage declared twice", line_no);
                aut.emplace(parse_storage(value));
                continue;
            }
            if (!aut)
                throw SyntaxError("the first declaration must be 'storage:'", line_no);
            auto lookup = [&](const std::string& name) -> StateId {
                if (declared_states)
                    return aut->state_id(name);
                return aut->state(name);
            };
            if (key == "states") {
                for (const std::string& name : text::split_ws(value))
                    aut->add_state(name);
                declared_states = true;
            } else if (key == "initial") {
                initial = std::string(value);
                lookup(*initial);
            } else if (key == "final") {
                final_state = std::string(value);
                lookup(*final_state);
            } else if (key == "mode") {
                auto words = text::split_ws(value);
                if (words.size() != 2)
                    throw SyntaxError("expected 'mode: <state> universal|existential'", line_no);
                aut->set_mode(lookup(words[0]), parse_mode(words[1], line_no));
            } else if (key == "trans") {
                text::Cursor cur(value);
                StateId from = lookup(cur.ident());
                std::vector<TestLiteral> tests;
                if (cur.accept('[')) {
                    std::string_view rest = cur.rest();
                    auto close = rest.find(']');
                    if (close == std::string_view::npos)
                        throw SyntaxError("missing ']'", line_no);
                    tests = parse_test_list(aut->storage(), rest.substr(0, close));
                    cur.set_pos(cur.pos() + close + 1);
                }
                std::string op_text = read_op_text(cur);
                OpId op = parse_op(aut->storage(), op_text);
                StateId to = lookup(cur.ident());
                if (!cur.at_end())
                    throw SyntaxError("trailing input in transition", line_no);
                const std::size_t before = aut->transitions().size();
                aut->add_transition(from, tests, to, op);
                if (transition_lines && aut->transitions().size() > before)
                    transition_lines->push_back(line_no);
            } else {
                throw SyntaxError("unknown key '" + std::string(key) + "'", line_no);
            }
        } catch (const SyntaxError& err) {
            if (err.position() == line_no)
                throw;
            throw SyntaxError(std::string("line ") + std::to_string(line_no) + ": " + err.what(), line_no);
        } catch (const UnknownState&) {
            throw;
        }
    }
    if (!aut)
        throw SyntaxError("missing 'storage:' declaration", 1);
    if (aut->num_states() == 0)
        throw SyntaxError("automaton has no states", 1);
    if (initial)
        aut->set_initial(aut->state_id(*initial));
    aut->set_final(final_state ? aut->state_id(*final_state) : aut->initial());
    return std::move(*aut);
}

std::string to_string(const StorageAutomaton& aut) {
    std::ostringstream out;
    const StorageExpr& e = aut.storage();
    out << "storage: " << to_string(e) << "\n";
    out << "states:";
    for (StateId s = 0; s < aut.num_states(); ++s)
        out << ' ' << aut.state_name(s);
    out << "\n";
    out << "initial: " << aut.state_name(aut.initial()) << "\n";
    out << "final: " << aut.state_name(aut.final_state()) << "\n";
    for (StateId s = 0; s < aut.num_states(); ++s)
        if (aut.mode(s) == Mode::Universal)
            out << "mode: " << aut.state_name(s) << " universal\n";
    for (const Transition& t : aut.transitions()) {
        out << "trans: " << aut.state_name(t.from) << " [";
        bool first = true;
        for (const TestLiteral& lit : constrained_tests(e, t)) {
            out << (first ? "" : " ") << to_string(e, lit);
            first = false;
        }
        out << "] " << to_string(e, t.op) << ' ' << aut.state_name(t.to) << "\n";
    }
    return out.str();
}

std::string to_string(const StorageAutomaton& aut, const Configuration& c) {
    return "(" + aut.state_name(c.state) + "," + to_string(aut.storage(), c.storage) + ")";
}

Configuration parse_configuration(const StorageAutomaton& aut, std::string_view s) {
    text::Cursor cur(s);
    cur.expect('(');
    StateId q = aut.state_id(cur.ident());
    cur.expect(',');
    std::string_view body = cur.balanced();
    cur.expect(')');
    if (!cur.at_end())
        cur.fail("trailing input after configuration");
    return Configuration{q, parse_config(aut.storage(), body)};
}

} // namespace hoca
