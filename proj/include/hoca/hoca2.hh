// hoca2.hh -- level-2 counter automata with a restricted instruction set
//
// Storage is P_Σ(C): a nonempty stack of (symbol, counter) entries. The
// instruction set is pop, push of a symbol copying the top counter,
// increment and decrement of the top counter, and the identity.

#ifndef HOCA_HOCA2_HH
#define HOCA_HOCA2_HH

#include "hoca/automaton.hh"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hoca {

enum class L2OpKind { Pop, Push, Inc, Dec, Nop };

struct L2Op {
    L2OpKind kind = L2OpKind::Nop;
    Symbol symbol = kBottom; ///< pushed symbol, for Push only

    static L2Op pop() { return {L2OpKind::Pop, kBottom}; }
    static L2Op push(Symbol s) { return {L2OpKind::Push, s}; }
    static L2Op inc() { return {L2OpKind::Inc, kBottom}; }
    static L2Op dec() { return {L2OpKind::Dec, kBottom}; }
    static L2Op nop() { return {L2OpKind::Nop, kBottom}; }

    bool operator==(const L2Op&) const = default;
};

struct L2Transition {
    StateId from = 0;
    Symbol top = kBottom;
    L2Op op;
    StateId to = 0;

    bool operator==(const L2Transition&) const = default;
};

struct L2Entry {
    Symbol symbol = kBottom;
    std::uint64_t counter = 0;

    bool operator==(const L2Entry&) const = default;
};

/// Bottom entry first; never empty.
using L2Config = std::vector<L2Entry>;

struct L2Configuration {
    StateId state = 0;
    L2Config stack;

    bool operator==(const L2Configuration&) const = default;
};

struct L2ConfigurationHash {
    std::size_t operator()(const L2Configuration& c) const noexcept;
};

class Hocs2 {
public:
    /// `alphabet` must contain "_"; it is moved to the front.
    explicit Hocs2(std::vector<std::string> alphabet);

    const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
    std::size_t num_symbols() const noexcept { return alphabet_.size(); }
    Symbol symbol(std::string_view name) const; // throws UnknownSymbol
    const std::string& symbol_name(Symbol s) const { return alphabet_.at(s); }
    StorageExpr storage() const;

    StateId add_state(const std::string& name);
    StateId state_id(std::string_view name) const; // throws UnknownState
    bool has_state(std::string_view name) const;
    std::string fresh_name(const std::string& base) const;
    const std::string& state_name(StateId s) const { return states_.at(s); }
    std::size_t num_states() const noexcept { return states_.size(); }

    StateId initial() const noexcept { return initial_; }
    void set_initial(StateId s) { initial_ = s; }

    void add_transition(const L2Transition& t);
    const std::vector<L2Transition>& transitions() const noexcept { return transitions_; }

    L2Configuration initial_configuration() const { return {initial_, L2Config{L2Entry{}}}; }

private:
    std::vector<std::string> alphabet_;
    std::vector<std::string> states_;
    StateId initial_ = 0;
    std::vector<L2Transition> transitions_;
};

std::size_t height(const L2Config& c);

/// Partial semantics of one instruction.
std::optional<L2Config> apply(const L2Op& op, const L2Config& c);

struct L2Successor {
    std::size_t transition = 0;
    L2Configuration config;
};
std::vector<L2Successor> successors(const Hocs2& a, const L2Configuration& c);

/// Reads an automaton file over `P{...}(C)` whose transitions use only
/// pop, push(σ), stay(pushsym(_)), stay(pop), stay(id) and id. Don't-care
/// top tests expand to one transition per matching symbol.
Hocs2 parse_hocs2(std::string_view text);
std::string to_string(const Hocs2& a);
std::string to_string(const Hocs2& a, const L2Op& op);

/// The same automaton as a generic storage automaton; transition i of the
/// result corresponds to transition i of `a`.
StorageAutomaton to_generic(const Hocs2& a);
StorageConfig to_storage(const L2Config& c);
L2Config from_storage(const StorageConfig& c);

struct Normalized {
    Hocs2 automaton;
    StateId drain = 0; ///< the fresh state whose (drain,(_,0)) encodes "q reached"
};

/// Rewrites any P_Σ(C) automaton into the restricted instruction set and
/// appends the drain gadget for `q`: q is reachable in `aut` iff the full
/// configuration (drain,(_,0)) is reachable in the result.
Normalized normalize(const StorageAutomaton& aut, StateId q);
/// Gadget only, for automata that are already restricted.
Normalized normalize(const Hocs2& a, StateId q);

/// `(σ,n)(σ,n)...`, symbols by name.
L2Config parse_l2_config(const Hocs2& a, std::string_view text);
std::string to_string(const Hocs2& a, const L2Config& c);
/// `(q,<config>)`.
L2Configuration parse_l2_configuration(const Hocs2& a, std::string_view text);
std::string to_string(const Hocs2& a, const L2Configuration& c);

struct L2Trace {
    std::vector<L2Configuration> configs;
    std::vector<std::size_t> transitions;
};

/// Throws InvalidTrace unless `t` is a run of `a`.
void validate(const Hocs2& a, const L2Trace& t);

enum class RunClass { Return, Loop, Neither };

/// Classifies a run that starts at height `base_height`. A return ends one
/// entry lower, on the prefix below the start's top entry, and visits that
/// prefix only at its end. A loop ends on the start's storage and never
/// visits the prefix.
RunClass classify_run(const Hocs2& a, const L2Trace& t, std::size_t base_height);

/// One `state | config` line per configuration.
std::string dump_trace(const Hocs2& a, const L2Trace& t);

} // namespace hoca

#endif
