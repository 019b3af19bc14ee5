// oracle.hh -- bounded explicit-state exploration of storage automata
//
// These searches are the reference every symbolic algorithm in the library
// is checked against. They never claim unreachability on their own: a
// NotFoundWithinCaps result only says that no witness exists inside the
// explored, cap-bounded part of the configuration graph.

#ifndef HOCA_ORACLE_HH
#define HOCA_ORACLE_HH

#include "hoca/automaton.hh"

#include <cstdint>
#include <set>
#include <string_view>
#include <vector>

namespace hoca {

struct Caps {
    /// Maximal stack height per nesting level, outermost first. Levels
    /// beyond the end reuse the last entry; an empty vector means unbounded.
    std::vector<std::size_t> max_height{4};
    std::uint64_t max_counter = 8;
    /// Maximal length of explored runs.
    std::size_t max_steps = 256;
    /// Budget on the number of distinct configurations visited.
    std::size_t max_configs = 400000;

    Caps doubled() const;
    bool admits(const StorageExpr& e, const StorageConfig& c) const;
};

struct Trace {
    std::vector<Configuration> configs;   ///< configs.size() == transitions.size() + 1
    std::vector<std::size_t> transitions; ///< indices into the automaton's transitions

    std::size_t length() const noexcept { return transitions.size(); }
};

enum class OracleVerdict { Reachable, NotFoundWithinCaps };

struct OracleResult {
    OracleVerdict verdict = OracleVerdict::NotFoundWithinCaps;
    Trace trace;                 ///< a shortest witness when Reachable
    bool pruned = false;         ///< some successor was cut off by a cap
    bool budget_exhausted = false;
    std::size_t explored = 0;

    bool reachable() const noexcept { return verdict == OracleVerdict::Reachable; }
    /// Nothing was cut off, so NotFoundWithinCaps is a proof of unreachability.
    bool exhaustive() const noexcept { return !pruned && !budget_exhausted; }
};

/// Breadth-first search from the initial configuration for any
/// configuration with control state `target`.
OracleResult reach_oracle(const StorageAutomaton& aut, StateId target, const Caps& caps);

/// Breadth-first search for one exact configuration.
OracleResult reach_config_oracle(const StorageAutomaton& aut, const Configuration& target, const Caps& caps);

/// Alternating reachability on the cap-bounded configuration graph: the
/// least set containing target configurations, existential configurations
/// with a winning successor, and universal configurations that have at
/// least one successor and only winning successors. Successors removed by
/// caps count as absent, so a universal configuration can win only because
/// a losing successor was cut off; trust Reachable only when exhaustive()
/// or when no state is universal.
OracleResult alt_reach_oracle(const StorageAutomaton& aut, StateId target, const Caps& caps);

/// Checks that `trace` is a run of `aut`.
bool replay(const StorageAutomaton& aut, const Trace& trace);

enum class Verdict { Reachable, Unreachable, Unknown };

struct StabilizedResult {
    Verdict verdict = Verdict::Unknown;
    Caps caps;           ///< caps of the deciding run
    OracleResult result; ///< the deciding run
};

/// Runs the oracle at `base`, then at two successive doublings of all caps.
/// Reachable as soon as any run finds a witness; Unreachable when a run was
/// exhaustive or both doublings agree on NotFoundWithinCaps; Unknown when
/// the configuration budget ran out before that.
StabilizedResult reach_stabilized(const StorageAutomaton& aut, StateId target, const Caps& base);
StabilizedResult reach_config_stabilized(const StorageAutomaton& aut, const Configuration& target,
                                         const Caps& base);
StabilizedResult alt_reach_stabilized(const StorageAutomaton& aut, StateId target, const Caps& base);

/// Control states occurring in the cap-bounded reachable graph.
struct ReachableStates {
    std::set<StateId> states;
    bool exhaustive = false;
};
ReachableStates reachable_states(const StorageAutomaton& aut, const Caps& caps);

/// A letter of VAL(S): an operation or a test restricted to one outcome.
struct ValLetter {
    bool is_test = false;
    OpId op;
    TestLiteral test;
};

std::vector<ValLetter> parse_val_sequence(const StorageExpr& e, std::string_view text);
std::string to_string(const StorageExpr& e, const std::vector<ValLetter>& seq);

/// True iff the sequence is defined on the initial configuration.
bool val_check(const StorageExpr& e, const std::vector<ValLetter>& seq);

/// Product of the one-state VAL(S) automaton with the word `seq`: states
/// v0..vn, where step i carries the i-th letter (every test vector for an
/// operation, the matching half of the vectors for a test letter). The
/// word is in VAL(S) iff the last state is reachable.
StorageAutomaton val_automaton(const StorageExpr& e, const std::vector<ValLetter>& seq);
bool val_check_via_reach(const StorageExpr& e, const std::vector<ValLetter>& seq);

} // namespace hoca

#endif
