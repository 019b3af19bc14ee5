// trees.cc -- tree encoding of level-2 configurations and tree automata

#include "hoca/trees.hh"

#include "hoca/error.hh"
#include "text.hh"

#include <algorithm>
#include <sstream>

namespace hoca {

BinTree::BinTree(const BinTree& other)
    : label(other.label), left(other.left ? std::make_unique<BinTree>(*other.left) : nullptr),
      right(other.right ? std::make_unique<BinTree>(*other.right) : nullptr) {}

BinTree& BinTree::operator=(const BinTree& other) {
    if (this != &other)
        *this = BinTree(other);
    return *this;
}

std::size_t BinTree::size() const noexcept {
    return 1 + (left ? left->size() : 0) + (right ? right->size() : 0);
}

bool BinTree::operator==(const BinTree& other) const {
    auto same = [](const std::unique_ptr<BinTree>& x, const std::unique_ptr<BinTree>& y) {
        return x ? (y && *x == *y) : !y;
    };
    return label == other.label && same(left, other.left) && same(right, other.right);
}

namespace {

std::unique_ptr<BinTree> parse_child(text::Cursor& in);

BinTree parse_node(text::Cursor& in) {
    BinTree t(in.ident());
    if (in.accept('(')) {
        t.left = parse_child(in);
        in.expect(',');
        t.right = parse_child(in);
        in.expect(')');
    }
    return t;
}

std::unique_ptr<BinTree> parse_child(text::Cursor& in) {
    if (in.accept('-'))
        return nullptr;
    return std::make_unique<BinTree>(parse_node(in));
}

void print(const BinTree& t, std::string& out) {
    out += t.label;
    if (t.is_leaf())
        return;
    out += '(';
    if (t.left)
        print(*t.left, out);
    else
        out += '-';
    out += ',';
    if (t.right)
        print(*t.right, out);
    else
        out += '-';
    out += ')';
}

} // namespace

BinTree parse_tree(std::string_view s) {
    text::Cursor in(s);
    BinTree t = parse_node(in);
    if (!in.at_end())
        in.fail("trailing input after tree");
    return t;
}

std::string to_string(const BinTree& t) {
    std::string out;
    print(t, out);
    return out;
}

namespace {

using Entries = std::vector<std::pair<std::string, std::uint64_t>>;

/// E of entries [first, last) with every counter lowered by `d`.
std::unique_ptr<BinTree> encode_range(const Entries& p, std::size_t first, std::size_t last, std::uint64_t d) {
    if (first == last)
        return nullptr;
    if (p[first].second == d)
        return std::make_unique<BinTree>("_", std::make_unique<BinTree>(p[first].first),
                                         encode_range(p, first + 1, last, d));
    std::size_t j = first;
    while (j < last && p[j].second > d)
        ++j;
    return std::make_unique<BinTree>("_", encode_range(p, first, j, d + 1), encode_range(p, j, last, d));
}

Entries decode_range(const BinTree& t, const std::string& pos) {
    if (t.is_leaf())
        throw InvalidEncoding("leaf '" + t.label + "' where a stack encoding is expected", pos);
    if (t.label != "_")
        throw InvalidEncoding("inner node labelled '" + t.label + "'", pos);
    if (!t.left)
        throw InvalidEncoding("missing left child", pos);
    Entries out;
    if (t.left->is_leaf()) {
        out.emplace_back(t.left->label, 0);
    } else {
        out = decode_range(*t.left, pos + "0");
        for (auto& e : out)
            ++e.second;
    }
    if (t.right) {
        Entries rest = decode_range(*t.right, pos + "1");
        // After a raised block the next entry must have counter 0, or the
        // block would not be maximal.
        if (!t.left->is_leaf() && rest.front().second != 0)
            throw InvalidEncoding("raised block is not maximal", pos + "1");
        out.insert(out.end(), rest.begin(), rest.end());
    }
    return out;
}

} // namespace

NamedConfiguration parse_named_configuration(std::string_view s) {
    text::Cursor cur(s);
    cur.expect('(');
    NamedConfiguration out{cur.ident(), {}};
    cur.expect(',');
    do {
        cur.expect('(');
        std::string sym = cur.ident();
        cur.expect(',');
        out.stack.emplace_back(std::move(sym), cur.number());
        cur.expect(')');
    } while (cur.peek() == '(');
    cur.expect(')');
    if (!cur.at_end())
        cur.fail("trailing input after configuration");
    return out;
}

std::string to_string(const NamedConfiguration& c) {
    std::string out = "(" + c.state + ",";
    for (const auto& [s, n] : c.stack)
        out += "(" + s + "," + std::to_string(n) + ")";
    return out + ")";
}

BinTree encode(const NamedConfiguration& c) {
    BinTree root(c.state);
    root.left = encode_range(c.stack, 0, c.stack.size(), 0);
    return root;
}

NamedConfiguration named(const Hocs2& a, const L2Configuration& c) {
    NamedConfiguration out{a.state_name(c.state), {}};
    for (const L2Entry& e : c.stack)
        out.stack.emplace_back(a.symbol_name(e.symbol), e.counter);
    return out;
}

BinTree encode(const Hocs2& a, const L2Configuration& c) { return encode(named(a, c)); }

NamedConfiguration decode(const BinTree& t) {
    if (t.is_leaf())
        throw InvalidEncoding("leaf '" + t.label + "' at the root", "");
    if (t.right)
        throw InvalidEncoding("root has a right child", "");
    if (!t.left)
        throw InvalidEncoding("root has no left child", "");
    NamedConfiguration c{t.label, decode_range(*t.left, "0")};
    if (c.stack.front().first != "_")
        throw InvalidEncoding("bottom entry must carry '_'", "0");
    return c;
}

L2Configuration decode(const Hocs2& a, const BinTree& t) {
    NamedConfiguration c = decode(t);
    L2Configuration out{a.state_id(c.state), {}};
    for (const auto& [s, n] : c.stack)
        out.stack.push_back(L2Entry{a.symbol(s), n});
    return out;
}

TreeAutomaton::State TreeAutomaton::add_state(const std::string& name) {
    names_.push_back(name);
    accepting_.push_back(false);
    return names_.size() - 1;
}

TreeAutomaton::State TreeAutomaton::state(const std::string& name) {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it != names_.end())
        return static_cast<State>(it - names_.begin());
    return add_state(name);
}

void TreeAutomaton::add_leaf(const std::string& label, State to) {
    auto& v = leaves_[label];
    if (std::find(v.begin(), v.end(), to) == v.end())
        v.push_back(to);
}

void TreeAutomaton::add_node(const std::string& label, Child left, Child right, State to) {
    if (!left && !right) {
        add_leaf(label, to);
        return;
    }
    Node n{label, left, right, to};
    if (std::find(nodes_.begin(), nodes_.end(), n) == nodes_.end())
        nodes_.push_back(n);
}

void TreeAutomaton::set_accepting(State s, bool accepting) { accepting_.at(s) = accepting; }

std::vector<bool> TreeAutomaton::run(const BinTree& t) const {
    std::vector<bool> out(num_states(), false);
    if (t.is_leaf()) {
        auto it = leaves_.find(t.label);
        if (it != leaves_.end())
            for (State s : it->second)
                out[s] = true;
        return out;
    }
    std::vector<bool> l, r;
    if (t.left)
        l = run(*t.left);
    if (t.right)
        r = run(*t.right);
    auto fits = [](const std::unique_ptr<BinTree>& child, const Child& c, const std::vector<bool>& states) {
        return child ? (c && states[*c]) : !c;
    };
    for (const Node& n : nodes_)
        if (n.label == t.label && fits(t.left, n.left, l) && fits(t.right, n.right, r))
            out[n.to] = true;
    return out;
}

bool TreeAutomaton::accepts(const BinTree& t) const {
    auto states = run(t);
    for (State s = 0; s < num_states(); ++s)
        if (states[s] && accepting_[s])
            return true;
    return false;
}

bool ta_membership(const TreeAutomaton& ta, const BinTree& t) { return ta.accepts(t); }

TreeAutomaton ta_intersect(const TreeAutomaton& a, const TreeAutomaton& b) {
    TreeAutomaton out;
    const std::size_t nb = b.num_states();
    for (std::size_t i = 0; i < a.num_states(); ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            auto s = out.add_state(a.state_name(i) + "*" + b.state_name(j));
            out.set_accepting(s, a.is_accepting(i) && b.is_accepting(j));
        }
    auto pair = [&](const TreeAutomaton::Child& x, const TreeAutomaton::Child& y) -> std::optional<TreeAutomaton::Child> {
        if (x.has_value() != y.has_value())
            return std::nullopt;
        return x ? TreeAutomaton::Child(*x * nb + *y) : TreeAutomaton::Child();
    };
    for (const auto& [label, xs] : a.leaves()) {
        auto it = b.leaves().find(label);
        if (it == b.leaves().end())
            continue;
        for (auto x : xs)
            for (auto y : it->second)
                out.add_leaf(label, x * nb + y);
    }
    for (const auto& m : a.nodes())
        for (const auto& n : b.nodes()) {
            if (m.label != n.label)
                continue;
            auto l = pair(m.left, n.left), r = pair(m.right, n.right);
            if (l && r)
                out.add_node(m.label, *l, *r, m.to * nb + n.to);
        }
    return out;
}

TreeAutomaton ta_union(const TreeAutomaton& a, const TreeAutomaton& b) {
    TreeAutomaton out;
    for (const TreeAutomaton* part : {&a, &b}) {
        const std::size_t base = out.num_states();
        const std::string tag = part == &a ? "1." : "2.";
        for (std::size_t s = 0; s < part->num_states(); ++s) {
            out.add_state(tag + part->state_name(s));
            out.set_accepting(base + s, part->is_accepting(s));
        }
        auto shift = [&](const TreeAutomaton::Child& c) {
            return c ? TreeAutomaton::Child(*c + base) : TreeAutomaton::Child();
        };
        for (const auto& [label, ss] : part->leaves())
            for (auto s : ss)
                out.add_leaf(label, s + base);
        for (const auto& n : part->nodes())
            out.add_node(n.label, shift(n.left), shift(n.right), n.to + base);
    }
    return out;
}

std::optional<BinTree> ta_emptiness(const TreeAutomaton& ta) {
    std::vector<std::optional<BinTree>> witness(ta.num_states());
    for (const auto& [label, ss] : ta.leaves())
        for (auto s : ss)
            if (!witness[s])
                witness[s] = BinTree(label);
    // Round r only combines witnesses from earlier rounds, so every witness
    // has the least height possible for its state.
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<std::optional<BinTree>> next = witness;
        for (const auto& n : ta.nodes()) {
            if (next[n.to])
                continue;
            auto ok = [&](const TreeAutomaton::Child& c) { return !c || witness[*c].has_value(); };
            if (!ok(n.left) || !ok(n.right))
                continue;
            auto child = [&](const TreeAutomaton::Child& c) {
                return c ? std::make_unique<BinTree>(*witness[*c]) : std::unique_ptr<BinTree>();
            };
            next[n.to] = BinTree(n.label, child(n.left), child(n.right));
            changed = true;
        }
        witness = std::move(next);
        for (std::size_t s = 0; s < ta.num_states(); ++s)
            if (witness[s] && ta.is_accepting(s))
                return witness[s];
    }
    for (std::size_t s = 0; s < ta.num_states(); ++s)
        if (witness[s] && ta.is_accepting(s))
            return witness[s];
    return std::nullopt;
}

TreeAutomaton validity_ta(const std::vector<std::string>& symbols, const std::vector<std::string>& states) {
    // For both values of "the first entry carries _": a leaf, a stack whose
    // first counter is zero, a stack whose first counter is positive.
    TreeAutomaton ta;
    using Child = TreeAutomaton::Child;
    TreeAutomaton::State leaf[2], zero[2], pos[2];
    for (int b : {0, 1}) {
        const std::string tag = b ? "_" : "";
        leaf[b] = ta.add_state("leaf" + tag);
        zero[b] = ta.add_state("zero" + tag);
        pos[b] = ta.add_state("pos" + tag);
    }
    const auto root = ta.add_state("root");
    ta.set_accepting(root);
    for (const auto& s : symbols)
        ta.add_leaf(s, leaf[s == "_"]);
    const std::vector<Child> any_rest{Child(), zero[0], zero[1], pos[0], pos[1]};
    const std::vector<Child> zero_rest{Child(), zero[0], zero[1]};
    for (int b : {0, 1}) {
        for (Child rest : any_rest)
            ta.add_node("_", leaf[b], rest, zero[b]);
        for (auto block : {zero[b], pos[b]})
            for (Child rest : zero_rest)
                ta.add_node("_", block, rest, pos[b]);
    }
    for (const auto& q : states)
        for (auto block : {zero[1], pos[1]})
            ta.add_node(q, block, Child(), root);
    return ta;
}

TreeAutomaton validity_ta(const Hocs2& a) {
    std::vector<std::string> states;
    for (StateId q = 0; q < a.num_states(); ++q)
        states.push_back(a.state_name(q));
    return validity_ta(a.alphabet(), states);
}

namespace {

TreeAutomaton::State singleton_rec(TreeAutomaton& ta, const BinTree& t) {
    if (t.is_leaf()) {
        auto s = ta.add_state("n" + std::to_string(ta.num_states()));
        ta.add_leaf(t.label, s);
        return s;
    }
    TreeAutomaton::Child l, r;
    if (t.left)
        l = singleton_rec(ta, *t.left);
    if (t.right)
        r = singleton_rec(ta, *t.right);
    auto s = ta.add_state("n" + std::to_string(ta.num_states()));
    ta.add_node(t.label, l, r, s);
    return s;
}

} // namespace

TreeAutomaton singleton_ta(const BinTree& t) {
    TreeAutomaton ta;
    ta.set_accepting(singleton_rec(ta, t));
    return ta;
}

TreeAutomaton parse_tree_automaton(std::string_view input) {
    TreeAutomaton ta;
    auto lines = text::lines(input);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string line(text::trim(text::strip_comment(lines[ln])));
        for (char& c : line)
            if (c == '(' || c == ')' || c == ',' || c == ':')
                c = ' ';
        auto w = text::split_ws(line);
        if (w.empty())
            continue;
        auto child = [&](const std::string& s) {
            return s == "-" ? TreeAutomaton::Child() : TreeAutomaton::Child(ta.state(s));
        };
        if (w[0] == "ta-state") {
            for (std::size_t i = 1; i < w.size(); ++i)
                ta.state(w[i]);
        } else if (w[0] == "ta-accept") {
            for (std::size_t i = 1; i < w.size(); ++i)
                ta.set_accepting(ta.state(w[i]));
        } else if (w[0] == "ta-leaf") {
            if (w.size() != 4 || w[2] != "->")
                throw SyntaxError("expected 'ta-leaf a -> s'", ln + 1);
            ta.add_leaf(w[1], ta.state(w[3]));
        } else if (w[0] == "ta-node") {
            if (w.size() != 6 || w[4] != "->")
                throw SyntaxError("expected 'ta-node l (s1, s2) -> s'", ln + 1);
            auto l = child(w[2]), r = child(w[3]);
            ta.add_node(w[1], l, r, ta.state(w[5]));
        } else {
            throw SyntaxError("unknown directive '" + w[0] + "'", ln + 1);
        }
    }
    return ta;
}

std::string to_string(const TreeAutomaton& ta) {
    std::ostringstream out;
    for (std::size_t s = 0; s < ta.num_states(); ++s)
        out << "ta-state " << ta.state_name(s) << "\n";
    for (std::size_t s = 0; s < ta.num_states(); ++s)
        if (ta.is_accepting(s))
            out << "ta-accept " << ta.state_name(s) << "\n";
    for (const auto& [label, ss] : ta.leaves())
        for (auto s : ss)
            out << "ta-leaf " << label << " -> " << ta.state_name(s) << "\n";
    auto child = [&](const TreeAutomaton::Child& c) { return c ? ta.state_name(*c) : std::string("-"); };
    for (const auto& n : ta.nodes())
        out << "ta-node " << n.label << " (" << child(n.left) << ", " << child(n.right) << ") -> "
            << ta.state_name(n.to) << "\n";
    return out.str();
}

} // namespace hoca
