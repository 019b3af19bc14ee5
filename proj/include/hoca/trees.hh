// trees.hh -- tree encoding of level-2 configurations and tree automata
//
// For p = (σ1,v1)...(σm,vm), if v1 = 0 the tree is _(σ1, E(rest)).
// Otherwise, with j maximal such that v1..vj >= 1, it is
// _(E(p_l), E(p_r)) where p_l = (σ1,v1-1)...(σj,vj-1) and p_r is the rest.
// A configuration (q,p) becomes q(E(p), -). A leaf is a node without
// children; internal nodes other than the root are labelled `_`.

#ifndef HOCA_TREES_HH
#define HOCA_TREES_HH

#include "hoca/hoca2.hh"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hoca {

struct BinTree {
    std::string label;
    std::unique_ptr<BinTree> left;
    std::unique_ptr<BinTree> right;

    BinTree() = default;
    explicit BinTree(std::string l) : label(std::move(l)) {}
    BinTree(std::string l, std::unique_ptr<BinTree> a, std::unique_ptr<BinTree> b)
        : label(std::move(l)), left(std::move(a)), right(std::move(b)) {}
    BinTree(const BinTree& other);
    BinTree& operator=(const BinTree& other);
    BinTree(BinTree&&) noexcept = default;
    BinTree& operator=(BinTree&&) noexcept = default;

    bool is_leaf() const noexcept { return !left && !right; }
    std::size_t size() const noexcept;
    bool operator==(const BinTree& other) const;
};

/// `q(T,-)`, `_(T1,T2)`, leaf `a`, absent child `-`. `a(-,-)` reads as a leaf.
BinTree parse_tree(std::string_view text);
std::string to_string(const BinTree& t);

/// A configuration by names, so that trees can be decoded without an
/// automaton at hand.
struct NamedConfiguration {
    std::string state;
    std::vector<std::pair<std::string, std::uint64_t>> stack; ///< bottom first

    bool operator==(const NamedConfiguration&) const = default;
};

/// `(q,(σ1,v1)...(σm,vm))`.
NamedConfiguration parse_named_configuration(std::string_view text);
std::string to_string(const NamedConfiguration& c);

BinTree encode(const NamedConfiguration& c);
BinTree encode(const Hocs2& a, const L2Configuration& c);
/// Left inverse of encode. Throws InvalidEncoding naming the offending node.
NamedConfiguration decode(const BinTree& t);
/// As above, resolving names in `a` (UnknownState / UnknownSymbol).
L2Configuration decode(const Hocs2& a, const BinTree& t);

NamedConfiguration named(const Hocs2& a, const L2Configuration& c);

/// Bottom-up nondeterministic tree automaton. Children range over states
/// and the absent marker.
class TreeAutomaton {
public:
    using State = std::size_t;
    using Child = std::optional<State>; ///< nullopt = absent child

    struct Node {
        std::string label;
        Child left;
        Child right;
        State to = 0;

        bool operator==(const Node&) const = default;
    };

    State add_state(const std::string& name);
    /// Returns the id of `name`, adding it if unknown.
    State state(const std::string& name);
    const std::string& state_name(State s) const { return names_.at(s); }
    std::size_t num_states() const noexcept { return names_.size(); }

    void add_leaf(const std::string& label, State to);
    /// A node with both children absent is stored as a leaf rule.
    void add_node(const std::string& label, Child left, Child right, State to);
    void set_accepting(State s, bool accepting = true);
    bool is_accepting(State s) const { return accepting_.at(s); }

    const std::map<std::string, std::vector<State>>& leaves() const noexcept { return leaves_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }

    /// States reachable at the root of `t`.
    std::vector<bool> run(const BinTree& t) const;
    bool accepts(const BinTree& t) const;

private:
    std::vector<std::string> names_;
    std::vector<bool> accepting_;
    std::map<std::string, std::vector<State>> leaves_;
    std::vector<Node> nodes_;
};

bool ta_membership(const TreeAutomaton& ta, const BinTree& t);
TreeAutomaton ta_intersect(const TreeAutomaton& a, const TreeAutomaton& b);
TreeAutomaton ta_union(const TreeAutomaton& a, const TreeAutomaton& b);
/// A smallest-height accepted tree, or nullopt if the language is empty.
std::optional<BinTree> ta_emptiness(const TreeAutomaton& ta);

/// Accepts exactly the encodings of configurations with a state in
/// `states` over stack alphabet `symbols` whose bottom entry carries `_`.
TreeAutomaton validity_ta(const std::vector<std::string>& symbols, const std::vector<std::string>& states);
TreeAutomaton validity_ta(const Hocs2& a);

/// Accepts exactly `t`.
TreeAutomaton singleton_ta(const BinTree& t);

/// `ta-state s`, `ta-accept s`, `ta-leaf a -> s`, `ta-node _ (s1, s2) -> s`.
TreeAutomaton parse_tree_automaton(std::string_view text);
std::string to_string(const TreeAutomaton& ta);

} // namespace hoca

#endif
