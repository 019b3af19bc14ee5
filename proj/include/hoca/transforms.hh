// transforms.hh -- storage simulations at level 2
//
// Each pass takes an automaton over a pushdown of counters and returns an
// automaton over a different storage type that reaches the same original
// control states. Original states keep their names and ids; everything
// added is auxiliary and named after the state or transition it serves.
//
// Accepted operations: pop, push(γ), push(γ,f), stay(f), id, plus
// invpush(γ) where the input storage has it, with f one of pushsym(_)
// (increment), pop (decrement) or id. push(γ,f) is split into push(γ)
// followed by stay(f).

#ifndef HOCA_TRANSFORMS_HH
#define HOCA_TRANSFORMS_HH

#include "hoca/automaton.hh"

#include <cstddef>
#include <vector>

namespace hoca {

/// P{_,0,1}(Z) (or P(C), at most three symbols) to P{_}(Z). The top counter
/// n of an entry with symbol σ is stored as 3n + code(σ), with code(_) = 2
/// and the other symbols 0 and 1 in alphabet order; the code is recovered
/// by counting a copy of the entry down modulo 3.
/// `lines`, when given, maps transitions to source lines for diagnostics.
StorageAutomaton eliminate_level2_symbols(const StorageAutomaton& a, const std::vector<std::size_t>* lines = nullptr);

/// P_Σ(S) to P_inv{_,0,1}(S) for a counter S. The stack records the reduced
/// sequence of pushes and counter updates that produced it, so that a pop
/// becomes a series of undos each ending in an inverse push.
StorageAutomaton pop_to_invpush(const StorageAutomaton& a, const std::vector<std::size_t>* lines = nullptr);

/// P_inv,Σ(S) to P{_,0,1}(S) for a counter S, with the same stack
/// representation; invpush(γ) becomes a pop of an unmodified γ entry.
StorageAutomaton invpush_to_pop(const StorageAutomaton& a, const std::vector<std::size_t>* lines = nullptr);

/// Entries per annotated symbol in the two passes above for an input
/// alphabet of `symbols` letters (bottom included).
std::size_t block_width(std::size_t symbols);

} // namespace hoca

#endif
