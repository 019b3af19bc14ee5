// summaries.hh -- return tables, the level-1 simulation and the summary DFA
//
// For a restricted level-2 automaton A, a_{σ,p,q} is the least top counter
// i such that A has a return from state p on an entry (σ,i) to state q.
// Given the table, A is simulated inside one entry by a pushdown system
// whose stack ⊥_0 ⊥_1 ... ⊥_n encodes the counter n, with every symbol
// above ⊥_{h0} collapsed into ⊥_∞; a push followed by a return becomes a
// stack-preserving step.

#ifndef HOCA_SUMMARIES_HH
#define HOCA_SUMMARIES_HH

#include "hoca/hoca2.hh"
#include "hoca/pds.hh"

#include <cstdint>
#include <limits>
#include <set>
#include <utility>
#include <vector>

namespace hoca {

struct Bounds {
    std::uint64_t h0 = 0; ///< counter value above which returns stabilize
    std::uint64_t k0 = 0; ///< height increase above which returns stabilize
    std::uint64_t n0 = 0; ///< counter value above which loops stabilize
};

Bounds bounds(std::size_t num_symbols, std::size_t num_states);
Bounds bounds(const Hocs2& a);

inline constexpr std::uint32_t kInfinity = std::numeric_limits<std::uint32_t>::max();

class ReturnTable {
public:
    ReturnTable(std::size_t num_symbols, std::size_t num_states, std::uint32_t h0);

    std::size_t num_symbols() const noexcept { return symbols_; }
    std::size_t num_states() const noexcept { return states_; }
    std::uint32_t h0() const noexcept { return h0_; }

    std::uint32_t get(Symbol s, StateId p, StateId q) const { return a_.at(index(s, p, q)); }
    /// Values above h0 other than kInfinity throw IllFormedTable.
    void set(Symbol s, StateId p, StateId q, std::uint32_t v);

    bool operator==(const ReturnTable&) const = default;

private:
    std::size_t index(Symbol s, StateId p, StateId q) const { return (s * states_ + p) * states_ + q; }

    std::size_t symbols_;
    std::size_t states_;
    std::uint32_t h0_;
    std::vector<std::uint32_t> a_;
};

/// (p,q) ∈ ret_∞((σ,i)) iff i >= a_{σ,p,q}.
bool ret_query(const ReturnTable& t, Symbol s, StateId p, StateId q, std::uint64_t i);

/// Control state (q,σ) of the simulating system.
PdsState pda_state(const Hocs2& a, StateId q, Symbol s);
/// ⊥_0 ... ⊥_n as a top-first stack (symbols above h0 become ⊥_∞).
std::vector<StackSym> counter_stack(std::uint32_t h0, std::uint64_t n);

/// The level-1 system for `a` under `table`: states Q×Σ, stack alphabet
/// ⊥_0..⊥_{h0},⊥_∞ (ids 0..h0+1).
Pds generate_pda(const Hocs2& a, const ReturnTable& table);

struct TableOptions {
    /// Stop at the first sweep that changes nothing.
    bool early_stop = true;
    /// Keep the table after every sweep.
    bool keep_history = false;
};

struct TableRun {
    ReturnTable table;
    std::size_t sweeps = 0;
    /// history[j] is the table after j sweeps; history[0] is all-infinite.
    std::vector<ReturnTable> history;
};

/// Iterates the sweep: sweep j fills the table for returns that raise the
/// height by at most j-1. Runs k0+1 sweeps unless stopped at a fixpoint.
TableRun compute_return_table(const Hocs2& a, const TableOptions& options = {});

/// Control state `target` is reachable at the bottom entry of `a`. With a
/// drain state from normalize this is plain control-state reachability.
bool reach_hoca(const Hocs2& a, StateId target);
bool reach_hoca(const Hocs2& a, StateId target, const ReturnTable& table);

using StatePairs = std::set<std::pair<StateId, StateId>>;

/// ret_∞((σ,i)) from the table.
StatePairs ret_set(const Hocs2& a, const ReturnTable& table, Symbol s, std::uint64_t i);
/// loops_∞((σ,i)); counters above n0 use n0.
StatePairs loops_query(const Hocs2& a, const ReturnTable& table, Symbol s, std::uint64_t i);

struct SummaryValue {
    std::vector<StatePairs> ret;   ///< indexed by symbol
    std::vector<StatePairs> loops; ///< indexed by symbol

    bool operator==(const SummaryValue&) const = default;
};

/// Deterministic automaton over {⊥}: after reading ⊥^n it is in a state
/// whose value is (ret_∞((σ,n)), loops_∞((σ,n)))_σ.
struct SummaryDfa {
    std::vector<SummaryValue> chain; ///< M_0 .. M_{n0}
    std::vector<SummaryValue> values; ///< states of the minimal automaton
    std::vector<std::size_t> next;    ///< successor of each state on ⊥

    std::size_t state_after(std::uint64_t n) const;
    const SummaryValue& value_after(std::uint64_t n) const { return values[state_after(n)]; }
};

SummaryDfa build_summary_dfa(const Hocs2& a);
SummaryDfa build_summary_dfa(const Hocs2& a, const ReturnTable& table);

std::string to_string(const Hocs2& a, const ReturnTable& t);
std::string to_string(const Hocs2& a, const SummaryValue& v);

} // namespace hoca

#endif
