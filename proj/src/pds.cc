// pds.cc -- pre* and post* saturation for pushdown systems

#include "hoca/pds.hh"

#include "hoca/error.hh"
#include "text.hh"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>

namespace hoca {

PdsState Pds::add_state(const std::string& name) {
    if (std::find(states_.begin(), states_.end(), name) != states_.end())
        throw Error("duplicate control state '" + name + "'");
    states_.push_back(name);
    return static_cast<PdsState>(states_.size() - 1);
}

PdsState Pds::state(const std::string& name) {
    auto it = std::find(states_.begin(), states_.end(), name);
    if (it != states_.end())
        return static_cast<PdsState>(it - states_.begin());
    return add_state(name);
}

PdsState Pds::state_id(std::string_view name) const {
    auto it = std::find(states_.begin(), states_.end(), name);
    if (it == states_.end())
        throw UnknownState(std::string(name));
    return static_cast<PdsState>(it - states_.begin());
}

StackSym Pds::add_symbol(const std::string& name) {
    if (std::find(symbols_.begin(), symbols_.end(), name) != symbols_.end())
        throw Error("duplicate stack symbol '" + name + "'");
    symbols_.push_back(name);
    return static_cast<StackSym>(symbols_.size() - 1);
}

StackSym Pds::symbol(const std::string& name) {
    auto it = std::find(symbols_.begin(), symbols_.end(), name);
    if (it != symbols_.end())
        return static_cast<StackSym>(it - symbols_.begin());
    return add_symbol(name);
}

StackSym Pds::symbol_id(std::string_view name) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), name);
    if (it == symbols_.end())
        throw UnknownSymbol(std::string(name));
    return static_cast<StackSym>(it - symbols_.begin());
}

void Pds::add_rule(PdsState from, StackSym top, PdsState to, const std::vector<StackSym>& push) {
    if (from >= states_.size() || to >= states_.size())
        throw UnknownState(std::to_string(std::max(from, to)));
    for (StackSym s : push)
        if (s >= symbols_.size())
            throw UnknownSymbol(std::to_string(s));
    if (push.size() <= 2) {
        rules_.push_back(PdsRule{from, top, to, push});
        return;
    }
    // (p,a) -> (q, w1 w2 ... wn): push wn-1 wn first, then grow the top
    // through fresh states until w1 is on top.
    PdsState current = add_state("%" + std::to_string(states_.size()));
    rules_.push_back(PdsRule{from, top, current, {push[push.size() - 2], push.back()}});
    for (std::size_t i = push.size() - 2; i-- > 0;) {
        PdsState next = i == 0 ? to : add_state("%" + std::to_string(states_.size()));
        rules_.push_back(PdsRule{current, push[i + 1], next, {push[i], push[i + 1]}});
        current = next;
    }
}

std::vector<PdsConfig> Pds::step(const PdsConfig& c) const {
    std::vector<PdsConfig> out;
    if (c.stack.empty())
        return out;
    for (const PdsRule& r : rules_) {
        if (r.from != c.state || r.top != c.stack.front())
            continue;
        PdsConfig next{r.to, r.push};
        next.stack.insert(next.stack.end(), c.stack.begin() + 1, c.stack.end());
        out.push_back(std::move(next));
    }
    return out;
}

Pds parse_pds(std::string_view input) {
    Pds pds;
    auto lines = text::lines(input);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string_view line = text::trim(text::strip_comment(lines[ln]));
        if (line.empty())
            continue;
        std::string_view key, value;
        if (!text::split_key(line, key, value))
            throw SyntaxError("expected 'key: value'", ln + 1);
        auto words = text::split_ws(value);
        if (key == "states") {
            for (const auto& w : words)
                pds.state(w);
        } else if (key == "symbols") {
            for (const auto& w : words)
                pds.symbol(w);
        } else if (key == "rule") {
            auto arrow = std::find(words.begin(), words.end(), "->");
            if (arrow - words.begin() != 2 || words.end() - arrow < 2)
                throw SyntaxError("expected 'rule: p a -> q w'", ln + 1);
            PdsState from = pds.state(words[0]);
            StackSym top = pds.symbol(words[1]);
            PdsState to = pds.state(arrow[1]);
            std::vector<StackSym> push;
            for (auto it = arrow + 2; it != words.end(); ++it)
                if (*it != "-")
                    push.push_back(pds.symbol(*it));
            pds.add_rule(from, top, to, push);
        } else {
            throw SyntaxError("unknown key '" + std::string(key) + "'", ln + 1);
        }
    }
    return pds;
}

std::string to_string(const Pds& pds) {
    std::ostringstream out;
    out << "states:";
    for (PdsState s = 0; s < pds.num_states(); ++s)
        out << ' ' << pds.state_name(s);
    out << "\nsymbols:";
    for (StackSym s = 0; s < pds.num_symbols(); ++s)
        out << ' ' << pds.symbol_name(s);
    out << "\n";
    for (const PdsRule& r : pds.rules()) {
        out << "rule: " << pds.state_name(r.from) << ' ' << pds.symbol_name(r.top) << " -> "
            << pds.state_name(r.to);
        if (r.push.empty())
            out << " -";
        for (StackSym s : r.push)
            out << ' ' << pds.symbol_name(s);
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// PAutomaton

PAutomaton::PAutomaton(std::size_t num_control)
    : num_control_(num_control), out_(num_control), accepting_(num_control, false) {}

std::size_t PAutomaton::add_state() {
    out_.emplace_back();
    accepting_.push_back(false);
    return out_.size() - 1;
}

void PAutomaton::add_transition(std::size_t from, StackSym a, std::size_t to) {
    if (from >= out_.size() || to >= out_.size())
        throw Error("P-automaton transition between unknown states");
    out_[from].emplace(a, to);
}

bool PAutomaton::has_transition(std::size_t from, StackSym a, std::size_t to) const {
    return out_.at(from).count({a, to}) > 0;
}

std::size_t PAutomaton::num_transitions() const {
    std::size_t n = 0;
    for (const auto& o : out_)
        n += o.size();
    return n;
}

void PAutomaton::set_accepting(std::size_t s, bool accepting) { accepting_.at(s) = accepting; }

std::set<std::size_t> PAutomaton::run(std::size_t start, const std::vector<StackSym>& word) const {
    std::set<std::size_t> current{start};
    for (StackSym a : word) {
        std::set<std::size_t> next;
        for (std::size_t s : current) {
            auto it = out_[s].lower_bound({a, 0});
            for (; it != out_[s].end() && it->first == a; ++it)
                next.insert(it->second);
        }
        current = std::move(next);
        if (current.empty())
            break;
    }
    return current;
}

bool PAutomaton::accepts(const PdsConfig& c) const {
    if (c.state >= num_control_)
        return false;
    for (std::size_t s : run(c.state, c.stack))
        if (accepting_[s])
            return true;
    return false;
}

bool PAutomaton::standard_form() const {
    for (const auto& o : out_)
        for (const auto& [a, t] : o)
            if (t < num_control_)
                return false;
    return true;
}

PAutomaton to_standard_form(const PAutomaton& b) {
    if (b.standard_form())
        return b;
    // Every control state p gets a copy p' that takes over the incoming
    // transitions; p keeps its outgoing ones.
    PAutomaton out(b.num_control());
    std::vector<std::size_t> image(b.num_states());
    for (std::size_t s = 0; s < b.num_states(); ++s)
        image[s] = s < b.num_control() ? out.add_state() : out.add_state();
    for (std::size_t s = 0; s < b.num_states(); ++s) {
        out.set_accepting(image[s], b.is_accepting(s));
        if (s < b.num_control())
            out.set_accepting(s, b.is_accepting(s));
        for (const auto& [a, t] : b.out(s)) {
            out.add_transition(image[s], a, image[t]);
            if (s < b.num_control())
                out.add_transition(s, a, image[t]);
        }
    }
    return out;
}

PAutomaton any_stack(const Pds& pds, PdsState target) {
    PAutomaton b(pds.num_states());
    const std::size_t sink = b.add_state();
    b.set_accepting(target);
    b.set_accepting(sink);
    for (StackSym a = 0; a < pds.num_symbols(); ++a) {
        b.add_transition(target, a, sink);
        b.add_transition(sink, a, sink);
    }
    return b;
}

PAutomaton singleton(const Pds& pds, const PdsConfig& c) {
    PAutomaton b(pds.num_states());
    std::size_t current = c.state;
    for (StackSym a : c.stack) {
        std::size_t next = b.add_state();
        b.add_transition(current, a, next);
        current = next;
    }
    b.set_accepting(current);
    return b;
}

PAutomaton pre_star(const Pds& pds, const PAutomaton& input) {
    PAutomaton b = to_standard_form(input);
    using Trans = std::tuple<std::size_t, StackSym, std::size_t>;
    std::deque<Trans> work;
    for (std::size_t s = 0; s < b.num_states(); ++s)
        for (const auto& [a, t] : b.out(s))
            work.emplace_back(s, a, t);
    PAutomaton rel(b.num_control());
    for (std::size_t s = b.num_control(); s < b.num_states(); ++s)
        rel.add_state();
    for (std::size_t s = 0; s < b.num_states(); ++s)
        rel.set_accepting(s, b.is_accepting(s));

    // Rules indexed by the (state, symbol) they produce on top.
    std::map<std::pair<PdsState, StackSym>, std::vector<const PdsRule*>> by_head;
    for (const PdsRule& r : pds.rules()) {
        if (r.push.empty())
            work.emplace_back(r.from, r.top, r.to);
        else
            by_head[{r.to, r.push[0]}].push_back(&r);
    }
    // Derived rules (p1,γ1) -> (q',γ2) from two-symbol pushes, by head.
    std::map<std::pair<std::size_t, StackSym>, std::vector<std::pair<PdsState, StackSym>>> derived;

    while (!work.empty()) {
        auto [q, g, q2] = work.front();
        work.pop_front();
        if (rel.has_transition(q, g, q2))
            continue;
        rel.add_transition(q, g, q2);
        if (q < b.num_control()) {
            if (auto it = by_head.find({static_cast<PdsState>(q), g}); it != by_head.end()) {
                for (const PdsRule* r : it->second) {
                    if (r->push.size() == 1) {
                        work.emplace_back(r->from, r->top, q2);
                    } else {
                        derived[{q2, r->push[1]}].emplace_back(r->from, r->top);
                        for (std::size_t q3 : rel.run(q2, {r->push[1]}))
                            work.emplace_back(r->from, r->top, q3);
                    }
                }
            }
        }
        if (auto it = derived.find({q, g}); it != derived.end())
            for (const auto& [p1, g1] : it->second)
                work.emplace_back(p1, g1, q2);
    }
    return rel;
}

PAutomaton post_star(const Pds& pds, const PAutomaton& input) {
    PAutomaton b = to_standard_form(input);
    constexpr StackSym kEps = static_cast<StackSym>(-1);
    using Trans = std::tuple<std::size_t, StackSym, std::size_t>;

    PAutomaton rel(b.num_control());
    for (std::size_t s = b.num_control(); s < b.num_states(); ++s)
        rel.add_state();
    for (std::size_t s = 0; s < b.num_states(); ++s)
        rel.set_accepting(s, b.is_accepting(s));

    // One fresh state per (target, new top) of a two-symbol push.
    std::map<std::pair<PdsState, StackSym>, std::size_t> mid;
    for (const PdsRule& r : pds.rules())
        if (r.push.size() == 2 && !mid.count({r.to, r.push[0]}))
            mid[{r.to, r.push[0]}] = rel.add_state();

    std::deque<Trans> work;
    for (std::size_t s = 0; s < b.num_states(); ++s)
        for (const auto& [a, t] : b.out(s)) {
            if (s < b.num_control())
                work.emplace_back(s, a, t);
            else
                rel.add_transition(s, a, t);
        }
    // epsilon[q] = control states p with p -ε-> q.
    std::vector<std::set<std::size_t>> eps_into(rel.num_states());
    std::set<std::pair<std::size_t, std::size_t>> eps;

    while (!work.empty()) {
        auto [p, g, q] = work.front();
        work.pop_front();
        if (g == kEps) {
            if (!eps.insert({p, q}).second)
                continue;
            eps_into[q].insert(p);
            for (const auto& [a, t] : rel.out(q))
                work.emplace_back(p, a, t);
            continue;
        }
        if (rel.has_transition(p, g, q))
            continue;
        rel.add_transition(p, g, q);
        if (p >= b.num_control())
            continue;
        for (const PdsRule& r : pds.rules()) {
            if (r.from != p || r.top != g)
                continue;
            if (r.push.empty()) {
                work.emplace_back(r.to, kEps, q);
            } else if (r.push.size() == 1) {
                work.emplace_back(r.to, r.push[0], q);
            } else {
                const std::size_t m = mid.at({r.to, r.push[0]});
                work.emplace_back(r.to, r.push[0], m);
                if (!rel.has_transition(m, r.push[1], q)) {
                    rel.add_transition(m, r.push[1], q);
                    for (std::size_t p2 : eps_into[m])
                        work.emplace_back(p2, r.push[1], q);
                }
            }
        }
    }
    // Eliminate ε: they only leave control states and enter other states.
    for (const auto& [p, q] : eps) {
        for (const auto& [a, t] : rel.out(q))
            rel.add_transition(p, a, t);
        if (rel.is_accepting(q))
            rel.set_accepting(p);
    }
    return rel;
}

bool reach_pda(const Pds& pds, const PdsConfig& c, PdsState target) {
    if (c.state == target)
        return true;
    return pre_star(pds, any_stack(pds, target)).accepts(c);
}

bool reach_pda_config(const Pds& pds, const PdsConfig& c1, const PdsConfig& c2) {
    if (c1 == c2)
        return true;
    return pre_star(pds, singleton(pds, c2)).accepts(c1);
}

bool intersects(const PAutomaton& a, const PAutomaton& b) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::deque<std::pair<std::size_t, std::size_t>> work;
    const std::size_t n = std::min(a.num_control(), b.num_control());
    for (std::size_t p = 0; p < n; ++p) {
        seen.insert({p, p});
        work.emplace_back(p, p);
    }
    while (!work.empty()) {
        auto [s, t] = work.front();
        work.pop_front();
        if (a.is_accepting(s) && b.is_accepting(t))
            return true;
        for (const auto& [x, s2] : a.out(s)) {
            auto it = b.out(t).lower_bound({x, 0});
            for (; it != b.out(t).end() && it->first == x; ++it)
                if (seen.insert({s2, it->second}).second)
                    work.emplace_back(s2, it->second);
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Text forms

PAutomaton parse_pautomaton(const Pds& pds, std::string_view input) {
    PAutomaton b(pds.num_states());
    std::map<std::string, std::size_t, std::less<>> names;
    for (PdsState s = 0; s < pds.num_states(); ++s)
        names[pds.state_name(s)] = s;
    auto state = [&](const std::string& name) {
        auto it = names.find(name);
        if (it != names.end())
            return it->second;
        std::size_t s = b.add_state();
        names[name] = s;
        return s;
    };
    auto lines = text::lines(input);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string line(text::trim(text::strip_comment(lines[ln])));
        if (line.empty())
            continue;
        std::replace(line.begin(), line.end(), ':', ' ');
        auto words = text::split_ws(line);
        if (words[0] == "pa-state") {
            for (std::size_t i = 1; i < words.size(); ++i)
                state(words[i]);
        } else if (words[0] == "pa-accept") {
            for (std::size_t i = 1; i < words.size(); ++i)
                b.set_accepting(state(words[i]));
        } else if (words[0] == "pa-trans") {
            if (words.size() != 5 || words[3] != "->")
                throw SyntaxError("expected 'pa-trans: s a -> t'", ln + 1);
            b.add_transition(state(words[1]), pds.symbol_id(words[2]), state(words[4]));
        } else {
            throw SyntaxError("unknown declaration '" + words[0] + "'", ln + 1);
        }
    }
    return b;
}

std::string to_string(const Pds& pds, const PAutomaton& b) {
    auto name = [&](std::size_t s) {
        return s < pds.num_states() ? pds.state_name(static_cast<PdsState>(s)) : "s" + std::to_string(s);
    };
    std::ostringstream out;
    for (std::size_t s = pds.num_states(); s < b.num_states(); ++s)
        out << "pa-state " << name(s) << "\n";
    for (std::size_t s = 0; s < b.num_states(); ++s)
        if (b.is_accepting(s))
            out << "pa-accept " << name(s) << "\n";
    for (std::size_t s = 0; s < b.num_states(); ++s)
        for (const auto& [a, t] : b.out(s))
            out << "pa-trans: " << name(s) << ' ' << pds.symbol_name(a) << " -> " << name(t) << "\n";
    return out.str();
}

PdsConfig parse_pds_config(const Pds& pds, std::string_view s) {
    auto words = text::split_ws(s);
    if (words.empty())
        throw SyntaxError("empty configuration", 0);
    PdsConfig c{pds.state_id(words[0]), {}};
    for (std::size_t i = 1; i < words.size(); ++i)
        c.stack.push_back(pds.symbol_id(words[i]));
    return c;
}

std::string to_string(const Pds& pds, const PdsConfig& c) {
    std::string out = pds.state_name(c.state);
    for (StackSym a : c.stack)
        out += " " + pds.symbol_name(a);
    return out;
}

} // namespace hoca
