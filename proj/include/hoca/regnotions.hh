// regnotions.hh -- alternating unary automata and 2-store automata
//
// A 2-store automaton reads a level-2 configuration one entry at a time,
// from the top entry down. Each transition is labelled with a stack symbol
// and a unary alternating automaton that must accept ⊥^m for the counter m
// of the entry being read.

#ifndef HOCA_REGNOTIONS_HH
#define HOCA_REGNOTIONS_HH

#include "hoca/automaton.hh"
#include "hoca/trees.hh"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hoca {

/// Alternating automaton over the one-letter alphabet {⊥}.
struct UnaryAfa {
    std::string name;
    std::vector<std::string> states;
    std::vector<Mode> modes;
    std::vector<bool> accepting;
    std::vector<std::vector<std::size_t>> next; ///< successors on ⊥
    std::size_t initial = 0;

    std::size_t add_state(const std::string& state, Mode mode = Mode::Existential, bool accept = false);
    std::size_t state_id(std::string_view state) const; // throws UnknownState
    void add_transition(std::size_t from, std::size_t to);
};

/// Whether the automaton accepts ⊥^m. A universal state without successors
/// accepts every nonempty suffix.
bool afa_unary_membership(const UnaryAfa& afa, std::uint64_t m);

/// Accepts ⊥^m exactly when p divides m (a p-cycle), p >= 1.
UnaryAfa modulo_afa(const std::string& name, std::uint64_t p);

struct TwoStoreTransition {
    std::size_t from = 0;
    std::string symbol;
    std::size_t afa = 0;
    std::size_t to = 0;
};

class TwoStoreAutomaton {
public:
    /// The stack alphabet, bottom symbol included.
    std::vector<std::string> symbols{"_", "0", "1"};

    std::size_t add_state(const std::string& name, Mode mode = Mode::Existential);
    std::size_t state_id(std::string_view name) const; // throws UnknownState
    const std::string& state_name(std::size_t q) const { return states_.at(q); }
    std::size_t num_states() const noexcept { return states_.size(); }
    Mode mode(std::size_t q) const { return modes_.at(q); }
    void set_mode(std::size_t q, Mode m) { modes_.at(q) = m; }
    bool is_accepting(std::size_t q) const { return accepting_.at(q); }
    void set_accepting(std::size_t q, bool accept = true) { accepting_.at(q) = accept; }

    std::size_t add_afa(UnaryAfa afa);
    std::size_t afa_id(std::string_view name) const; // throws Error
    const std::vector<UnaryAfa>& afas() const noexcept { return afas_; }

    /// Throws UnknownSymbol for a symbol outside `symbols`.
    void add_transition(const TwoStoreTransition& t);
    const std::vector<TwoStoreTransition>& transitions() const noexcept { return transitions_; }

private:
    std::vector<std::string> states_;
    std::vector<Mode> modes_;
    std::vector<bool> accepting_;
    std::vector<UnaryAfa> afas_;
    std::vector<TwoStoreTransition> transitions_;
};

/// Acceptance of (q, stack): the empty remainder accepts in final states;
/// otherwise the top entry (τ,m) is consumed by one (existential) or every
/// (universal) transition labelled τ whose automaton accepts ⊥^m, and the
/// rest is read from the target state. A universal state without such
/// transitions accepts vacuously.
bool two_store_membership(const TwoStoreAutomaton& a, const NamedConfiguration& c);

/// States s_n, ..., s_0 with s_i --(_, mod p_i)--> s_{i-1} and s_0 final.
/// From s_n it accepts (_,v1)...(_,vn) iff p_i divides v_i for every i.
TwoStoreAutomaton divisibility_two_store(const std::vector<std::uint64_t>& primes);

/// Text format:
///   symbols: _ 0 1        (optional)
///   states: q r           final: r        mode: q universal
///   afa even
///     states: a b   initial: a   final: a   trans: a b   trans: b a
///   end
///   trans: q (_, even) r
TwoStoreAutomaton parse_two_store(std::string_view text);
std::string to_string(const TwoStoreAutomaton& a);

} // namespace hoca

#endif
