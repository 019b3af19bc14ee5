// regreach.hh -- bounded regular reachability for level-2 counter automata
//
// Sets of configurations are given by tree automata over encodings. Both
// directions explore the finite graph of configurations within caps
// (height and counter bounds); a configuration outside the explored part
// is reported as NotWithinCaps, never as "not a member".

#ifndef HOCA_REGREACH_HH
#define HOCA_REGREACH_HH

#include "hoca/hoca2.hh"
#include "hoca/summaries.hh"
#include "hoca/trees.hh"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace hoca {

struct RegCaps {
    std::size_t max_height = 3;
    std::uint64_t max_counter = 4;

    bool admits(const L2Config& c) const;
};

enum class Membership { In, NotWithinCaps };

struct RegAnswer {
    L2Configuration config;
    Membership verdict = Membership::NotWithinCaps;
    /// For pre*: from `config` to a member of C. For post*: from a member
    /// of C to `config`.
    std::optional<L2Trace> witness;
};

class RegReachResult {
public:
    RegCaps caps;

    bool contains(const L2Configuration& c) const { return link_.count(c) > 0; }
    RegAnswer query(const L2Configuration& c) const;
    /// All members within the caps, in discovery order.
    const std::vector<L2Configuration>& members() const noexcept { return members_; }

private:
    friend RegReachResult bounded_pre_star(const Hocs2&, const TreeAutomaton&, const RegCaps&);
    friend RegReachResult bounded_post_star(const Hocs2&, const TreeAutomaton&, const RegCaps&);

    struct Link {
        std::optional<L2Configuration> other; ///< next (pre) or previous (post) configuration
        std::size_t transition = 0;
    };
    bool backward_ = true;
    std::vector<L2Configuration> members_;
    std::unordered_map<L2Configuration, Link, L2ConfigurationHash> link_;
};

/// Every configuration within `caps` over the alphabet and states of `a`.
std::vector<L2Configuration> all_configurations(const Hocs2& a, const RegCaps& caps);

/// Configurations within caps that reach an element of L(C) by a run that
/// stays within caps.
RegReachResult bounded_pre_star(const Hocs2& a, const TreeAutomaton& c, const RegCaps& caps);
/// Configurations within caps reachable from an element of L(C) within caps
/// by a run that stays within caps.
RegReachResult bounded_post_star(const Hocs2& a, const TreeAutomaton& c, const RegCaps& caps);

/// The deterministic word automaton of return and loop summaries.
SummaryDfa summary_interface(const Hocs2& a);

} // namespace hoca

#endif
