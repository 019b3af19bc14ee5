// regreach.cc -- bounded regular reachability for level-2 counter automata

#include "hoca/regreach.hh"

#include <algorithm>
#include <deque>

namespace hoca {

bool RegCaps::admits(const L2Config& c) const {
    if (c.size() > max_height)
        return false;
    for (const L2Entry& e : c)
        if (e.counter > max_counter)
            return false;
    return true;
}

std::vector<L2Configuration> all_configurations(const Hocs2& a, const RegCaps& caps) {
    std::vector<L2Config> stacks, layer;
    for (std::uint64_t n = 0; n <= caps.max_counter; ++n)
        layer.push_back(L2Config{L2Entry{kBottom, n}});
    for (std::size_t h = 1; h <= caps.max_height && !layer.empty(); ++h) {
        stacks.insert(stacks.end(), layer.begin(), layer.end());
        if (h == caps.max_height)
            break;
        std::vector<L2Config> next;
        for (const L2Config& c : layer)
            for (Symbol s = 0; s < a.num_symbols(); ++s)
                for (std::uint64_t n = 0; n <= caps.max_counter; ++n) {
                    L2Config d = c;
                    d.push_back(L2Entry{s, n});
                    next.push_back(std::move(d));
                }
        layer = std::move(next);
    }
    std::vector<L2Configuration> out;
    out.reserve(stacks.size() * a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q)
        for (const L2Config& c : stacks)
            out.push_back(L2Configuration{q, c});
    return out;
}

RegAnswer RegReachResult::query(const L2Configuration& c) const {
    RegAnswer out{c, Membership::NotWithinCaps, std::nullopt};
    auto it = link_.find(c);
    if (it == link_.end())
        return out;
    out.verdict = Membership::In;
    L2Trace t{{c}, {}};
    for (const Link* l = &it->second; l->other; l = &link_.at(*l->other)) {
        t.configs.push_back(*l->other);
        t.transitions.push_back(l->transition);
    }
    if (!backward_) {
        std::reverse(t.configs.begin(), t.configs.end());
        std::reverse(t.transitions.begin(), t.transitions.end());
    }
    out.witness = std::move(t);
    return out;
}

namespace {

std::vector<L2Configuration> seeds(const Hocs2& a, const TreeAutomaton& c, const std::vector<L2Configuration>& all) {
    std::vector<L2Configuration> out;
    for (const L2Configuration& x : all)
        if (c.accepts(encode(a, x)))
            out.push_back(x);
    return out;
}

} // namespace

RegReachResult bounded_pre_star(const Hocs2& a, const TreeAutomaton& c, const RegCaps& caps) {
    RegReachResult r;
    r.caps = caps;
    r.backward_ = true;
    const auto all = all_configurations(a, caps);
    using Edge = std::pair<L2Configuration, std::size_t>;
    std::unordered_map<L2Configuration, std::vector<Edge>, L2ConfigurationHash> preds;
    for (const L2Configuration& x : all)
        for (L2Successor& s : successors(a, x))
            if (caps.admits(s.config.stack))
                preds[s.config].emplace_back(x, s.transition);
    std::deque<L2Configuration> work;
    for (const L2Configuration& x : seeds(a, c, all)) {
        r.link_.emplace(x, RegReachResult::Link{});
        r.members_.push_back(x);
        work.push_back(x);
    }
    while (!work.empty()) {
        L2Configuration y = std::move(work.front());
        work.pop_front();
        auto it = preds.find(y);
        if (it == preds.end())
            continue;
        for (const auto& [x, t] : it->second)
            if (r.link_.emplace(x, RegReachResult::Link{y, t}).second) {
                r.members_.push_back(x);
                work.push_back(x);
            }
    }
    return r;
}

RegReachResult bounded_post_star(const Hocs2& a, const TreeAutomaton& c, const RegCaps& caps) {
    RegReachResult r;
    r.caps = caps;
    r.backward_ = false;
    std::deque<L2Configuration> work;
    for (const L2Configuration& x : seeds(a, c, all_configurations(a, caps))) {
        r.link_.emplace(x, RegReachResult::Link{});
        r.members_.push_back(x);
        work.push_back(x);
    }
    while (!work.empty()) {
        L2Configuration x = std::move(work.front());
        work.pop_front();
        for (L2Successor& s : successors(a, x))
            if (caps.admits(s.config.stack) && r.link_.emplace(s.config, RegReachResult::Link{x, s.transition}).second) {
                r.members_.push_back(s.config);
                work.push_back(std::move(s.config));
            }
    }
    return r;
}

SummaryDfa summary_interface(const Hocs2& a) { return build_summary_dfa(a); }

} // namespace hoca
