// automaton.hh -- automata over an arbitrary storage type and their text format

#ifndef HOCA_AUTOMATON_HH
#define HOCA_AUTOMATON_HH

#include "hoca/storage.hh"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hoca {

using StateId = std::uint32_t;

enum class Mode { Existential, Universal };

/// One transition (q, R, p, f). The test vector R is stored as a pair of
/// masks: the transition stands for every total vector that agrees with
/// `value` on the bits of `care`. A transition with `care` covering all
/// tests is a single element of Q x {true,false}^T x Q x F.
struct Transition {
    StateId from = 0;
    TestMask care = 0;
    TestMask value = 0;
    StateId to = 0;
    OpId op;

    bool matches(TestMask outcome) const noexcept { return (outcome & care) == value; }
};

struct Configuration {
    StateId state = 0;
    StorageConfig storage;

    bool operator==(const Configuration&) const = default;
};

struct ConfigurationHash {
    std::size_t operator()(const Configuration& c) const noexcept {
        return StorageConfigHash{}(c.storage) * 31 + c.state;
    }
};

class StorageAutomaton {
public:
    explicit StorageAutomaton(StorageExpr storage);

    const StorageExpr& storage() const noexcept { return storage_; }

    StateId add_state(const std::string& name, Mode mode = Mode::Existential);
    /// Returns the id of `name`, adding a fresh state if it is unknown.
    StateId state(const std::string& name);
    StateId state_id(std::string_view name) const; // throws UnknownState
    bool has_state(std::string_view name) const;
    /// A name not yet used, derived from `base`.
    std::string fresh_name(const std::string& base) const;
    const std::string& state_name(StateId s) const { return states_.at(s); }
    std::size_t num_states() const noexcept { return states_.size(); }

    Mode mode(StateId s) const { return modes_.at(s); }
    void set_mode(StateId s, Mode m) { modes_.at(s) = m; }
    bool is_alternating() const;

    StateId initial() const noexcept { return initial_; }
    StateId final_state() const noexcept { return final_; }
    void set_initial(StateId s) { initial_ = s; }
    void set_final(StateId s) { final_ = s; }

    /// Adds a transition; `tests` may leave tests unconstrained.
    void add_transition(StateId from, const std::vector<TestLiteral>& tests, StateId to, const OpId& op);
    void add_transition(const Transition& t);
    const std::vector<Transition>& transitions() const noexcept { return transitions_; }

    /// The literal transition relation: every transition expanded to
    /// total test vectors.
    std::vector<Transition> expanded_transitions() const;

    Configuration initial_configuration() const { return {initial_, initial_config(storage_)}; }

private:
    StorageExpr storage_;
    std::vector<std::string> states_;
    std::vector<Mode> modes_;
    StateId initial_ = 0;
    StateId final_ = 0;
    std::vector<Transition> transitions_;
};

struct Successor {
    std::size_t transition = 0; ///< index into transitions()
    Configuration config;
};

/// Applicable transitions at `c` with their results, in declaration order.
std::vector<Successor> successors(const StorageAutomaton& aut, const Configuration& c);

/// Line-oriented text format (see README). When `transition_lines` is
/// given it receives the source line of every stored transition.
StorageAutomaton parse_automaton(std::string_view text, std::vector<std::size_t>* transition_lines = nullptr);
std::string to_string(const StorageAutomaton& aut);

/// The test literals a transition constrains, in test order.
std::vector<TestLiteral> constrained_tests(const StorageExpr& e, const Transition& t);

std::string to_string(const StorageAutomaton& aut, const Configuration& c);
/// `(q,<storage config>)`.
Configuration parse_configuration(const StorageAutomaton& aut, std::string_view text);

} // namespace hoca

#endif
