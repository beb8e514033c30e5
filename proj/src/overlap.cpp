#include "semchan/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semchan {

namespace {

AtomSet set_minus(const AtomSet& a, const AtomSet& b) {
    AtomSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

AtomSet set_and(const AtomSet& a, const AtomSet& b) {
    AtomSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

bool subset(const AtomSet& a, const AtomSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

OverlapDecomposition overlap(const KnowledgeBase& sender, const AtomSet& receiver_vocab,
                             const ProofSystem& ps, std::uint64_t guard) {
    OverlapDecomposition d;
    d.common = set_and(sender.atoms, receiver_vocab);
    d.lost = set_minus(sender.atoms, receiver_vocab);
    d.surplus = set_minus(receiver_vocab, sender.atoms);
    const AtomSet core = extract_core(sender, ps, guard).core;
    d.preserved_core = set_and(core, receiver_vocab);
    d.lost_core = set_minus(core, receiver_vocab);
    const AtomSet cn = closure(sender.atoms, ps, guard);
    d.derivable_surplus = set_and(d.surplus, cn);
    d.nonderivable_surplus = set_minus(d.surplus, cn);
    return d;
}

PairFeasibility feasibility(const KnowledgeBase& sender, const AtomSet& receiver_vocab,
                            const ProofSystem& ps, std::uint64_t guard) {
    PairFeasibility out;
    const AtomSet core = extract_core(sender, ps, guard).core;
    out.f1 = subset(core, closure(receiver_vocab, ps, guard));
    out.f1_strong = subset(core, receiver_vocab);
    out.f2 = set_minus(set_minus(receiver_vocab, sender.atoms), closure(sender.atoms, ps, guard)).empty();
    out.f_cn = closure_fidelity(sender.atoms, receiver_vocab, ps, guard);
    out.closure_fidelity_one = out.f_cn == Ratio::of(1, 1);
    // f1 ∧ f2 ⇔ equal closures; keep both routes and insist they agree.
    if ((out.f1 && out.f2) != out.closure_fidelity_one)
        throw std::logic_error("feasibility: predicate route disagrees with exact fidelity");
    return out;
}

BlocklengthEstimate blocklengths(const KnowledgeBase& sender, const AtomSet& receiver_vocab,
                                 double capacity_bits, const ProofSystem& ps,
                                 std::uint64_t guard) {
    if (!(capacity_bits > 0.0)) throw std::invalid_argument("blocklengths: capacity must be positive");
    BlocklengthEstimate out;
    out.capacity_bits = capacity_bits;
    const OverlapDecomposition d = overlap(sender, receiver_vocab, ps, guard);
    const PairFeasibility f = feasibility(sender, receiver_vocab, ps, guard);
    if (d.lost.empty())
        out.n_hamming.value = std::log2(static_cast<double>(sender.atoms.size())) / capacity_bits;
    else
        out.n_hamming.reason = "vocabulary-loss";
    if (f.f1_strong && f.f2) {
        const std::size_t a = extract_core(sender, ps, guard).atomicity;
        out.n_closure.value = std::log2(static_cast<double>(a)) / capacity_bits;
    } else {
        out.n_closure.reason = "closure-infeasible";
    }
    if (out.n_hamming.value && out.n_closure.value)
        out.ratio = *out.n_closure.value / *out.n_hamming.value;
    return out;
}

AtomSet min_vocabulary(const KnowledgeBase& sender, const ProofSystem& ps, std::uint64_t guard) {
    return extract_core(sender, ps, guard).core;
}

BroadcastAnalysis broadcast_analysis(const KnowledgeBase& sender,
                                     const std::vector<AtomSet>& receiver_vocabs,
                                     double capacity_bits, const ProofSystem& ps,
                                     std::uint64_t guard) {
    if (!(capacity_bits > 0.0))
        throw std::invalid_argument("broadcast_analysis: capacity must be positive");
    BroadcastAnalysis out;
    out.capacity_bits = capacity_bits;
    bool all_ok = true;
    for (std::size_t i = 0; i < receiver_vocabs.size(); ++i) {
        BroadcastAnalysis::Receiver r;
        r.feasibility = feasibility(sender, receiver_vocabs[i], ps, guard);
        r.bottleneck = !r.feasibility.f1;
        if (r.bottleneck)
            out.bottlenecks.push_back(i);
        else if (!(r.feasibility.f1_strong && r.feasibility.f2))
            all_ok = false;
        out.receivers.push_back(std::move(r));
    }
    if (all_ok) {
        const std::size_t a = extract_core(sender, ps, guard).atomicity;
        out.n_closure.value = std::log2(static_cast<double>(a)) / capacity_bits;
    } else {
        out.n_closure.reason = "closure-infeasible";
    }
    return out;
}

} // namespace semchan
