// pds.hh -- pushdown systems and saturation of regular configuration sets
//
// Stacks are written top first: stack[0] is the topmost symbol. A
// PAutomaton reads a stack from the top, starting in the state that
// carries the configuration's control state.

#ifndef HOCA_PDS_HH
#define HOCA_PDS_HH

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hoca {

using PdsState = std::uint32_t;
using StackSym = std::uint32_t;

/// (from, top) -> (to, push), with push.size() <= 2 and push[0] the new top.
struct PdsRule {
    PdsState from = 0;
    StackSym top = 0;
    PdsState to = 0;
    std::vector<StackSym> push;

    bool operator==(const PdsRule&) const = default;
};

struct PdsConfig {
    PdsState state = 0;
    std::vector<StackSym> stack; ///< top first

    bool operator==(const PdsConfig&) const = default;
};

class Pds {
public:
    PdsState add_state(const std::string& name);
    /// Returns the id of `name`, adding it if unknown.
    PdsState state(const std::string& name);
    PdsState state_id(std::string_view name) const; // throws UnknownState
    const std::string& state_name(PdsState s) const { return states_.at(s); }
    std::size_t num_states() const noexcept { return states_.size(); }

    StackSym add_symbol(const std::string& name);
    StackSym symbol(const std::string& name);
    StackSym symbol_id(std::string_view name) const; // throws UnknownSymbol
    const std::string& symbol_name(StackSym s) const { return symbols_.at(s); }
    std::size_t num_symbols() const noexcept { return symbols_.size(); }

    /// Words longer than two are split through fresh intermediate states.
    void add_rule(PdsState from, StackSym top, PdsState to, const std::vector<StackSym>& push);
    const std::vector<PdsRule>& rules() const noexcept { return rules_; }

    /// Configurations reachable in one step, in rule order.
    std::vector<PdsConfig> step(const PdsConfig& c) const;

private:
    std::vector<std::string> states_;
    std::vector<std::string> symbols_;
    std::vector<PdsRule> rules_;
};

/// `rule: p a -> q b c`, with `-` for the empty word.
Pds parse_pds(std::string_view text);
std::string to_string(const Pds& pds);

/// A finite automaton over the stack alphabet. States 0..num_control-1 are
/// the control states of the pushdown system.
class PAutomaton {
public:
    explicit PAutomaton(std::size_t num_control = 0);

    std::size_t num_control() const noexcept { return num_control_; }
    std::size_t num_states() const noexcept { return out_.size(); }
    std::size_t add_state();

    void add_transition(std::size_t from, StackSym a, std::size_t to);
    bool has_transition(std::size_t from, StackSym a, std::size_t to) const;
    /// Outgoing (symbol, target) pairs, sorted.
    const std::set<std::pair<StackSym, std::size_t>>& out(std::size_t s) const { return out_.at(s); }
    std::size_t num_transitions() const;

    void set_accepting(std::size_t s, bool accepting = true);
    bool is_accepting(std::size_t s) const { return accepting_.at(s); }

    /// States reached from `start` after reading `word`.
    std::set<std::size_t> run(std::size_t start, const std::vector<StackSym>& word) const;
    bool accepts(const PdsConfig& c) const;

    /// True iff no transition enters a control state.
    bool standard_form() const;

private:
    std::size_t num_control_;
    std::vector<std::set<std::pair<StackSym, std::size_t>>> out_;
    std::vector<bool> accepting_;
};

/// Equivalent automaton without transitions into control states.
PAutomaton to_standard_form(const PAutomaton& b);

/// All configurations with control state `target` (any stack).
PAutomaton any_stack(const Pds& pds, PdsState target);
/// Exactly the configuration `c`.
PAutomaton singleton(const Pds& pds, const PdsConfig& c);

PAutomaton pre_star(const Pds& pds, const PAutomaton& b);
PAutomaton post_star(const Pds& pds, const PAutomaton& b);

/// Some configuration with control state `target` is reachable from `c`.
bool reach_pda(const Pds& pds, const PdsConfig& c, PdsState target);
/// c2 is reachable from c1.
bool reach_pda_config(const Pds& pds, const PdsConfig& c1, const PdsConfig& c2);

/// Nonemptiness of L(a) ∩ L(b) for automata over the same system.
bool intersects(const PAutomaton& a, const PAutomaton& b);

/// `pa-state s`, `pa-accept s`, `pa-trans: s a -> t`. Names of control
/// states of `pds` denote those states; other names are fresh states.
PAutomaton parse_pautomaton(const Pds& pds, std::string_view text);
std::string to_string(const Pds& pds, const PAutomaton& b);

PdsConfig parse_pds_config(const Pds& pds, std::string_view text); ///< `p a b c`, top first
std::string to_string(const Pds& pds, const PdsConfig& c);

} // namespace hoca

#endif
