#include "semchan/semantic_channel.hpp"

#include <algorithm>
#include <stdexcept>

#include "semchan/distortion.hpp"

namespace semchan {

std::vector<std::string> carrier_labels(std::size_t size) {
    std::vector<std::string> out;
    out.reserve(size);
    for (std::size_t i = 0; i < size; ++i) out.push_back(std::to_string(i));
    return out;
}

Kernel canonical_injection_encoder(const KnowledgeBase& sender, std::size_t carrier_size) {
    if (sender.atoms.size() > carrier_size)
        throw std::invalid_argument("encoder: carrier smaller than the sender state space");
    std::map<std::string, std::string> f;
    std::size_t i = 0;
    for (const auto& a : sender.atoms) f[a.str()] = std::to_string(i++);
    return deterministic_kernel(f, atom_labels(sender.atoms), carrier_labels(carrier_size));
}

Kernel nearest_closure_decoder(const KnowledgeBase& sender, const AtomSet& receiver_vocab,
                               std::size_t carrier_size, const ProofSystem& ps,
                               std::uint64_t guard) {
    if (sender.atoms.empty() || receiver_vocab.empty())
        throw std::invalid_argument("decoder: empty state space");
    const std::vector<GroundAtom> senders(sender.atoms.begin(), sender.atoms.end());
    std::map<std::string, std::string> f;
    for (std::size_t y = 0; y < carrier_size; ++y) {
        const GroundAtom& s = y < senders.size() ? senders[y] : senders.front();
        if (receiver_vocab.count(s)) {
            f[std::to_string(y)] = s.str();
            continue;
        }
        // Nearest stored receiver state under closure distortion over the
        // sender base; ties resolve to the canonically first candidate.
        const GroundAtom* best = nullptr;
        Ratio best_d;
        for (const auto& cand : receiver_vocab) {
            const Ratio d = d_closure(s, cand, sender.atoms, ps, guard);
            if (!best || d.value() < best_d.value() - 1e-15) {
                best = &cand;
                best_d = d;
            }
        }
        f[std::to_string(y)] = best->str();
    }
    return deterministic_kernel(f, carrier_labels(carrier_size), atom_labels(receiver_vocab));
}

SemanticChannel build_semantic_channel(const KnowledgeBase& sender,
                                       const AtomSet& receiver_vocab,
                                       const Kernel& enc, const Kernel& w,
                                       const Kernel& dec) {
    if (enc.input_space != atom_labels(sender.atoms))
        throw std::invalid_argument("semantic channel: encoder input is not the sender space");
    if (dec.output_space != atom_labels(receiver_vocab))
        throw std::invalid_argument("semantic channel: decoder output is not the receiver space");
    Kernel end_to_end = compose(compose(enc, w), dec);

    AtomSet lost, spurious;
    std::set_difference(sender.atoms.begin(), sender.atoms.end(), receiver_vocab.begin(),
                        receiver_vocab.end(), std::inserter(lost, lost.end()));
    std::set_difference(receiver_vocab.begin(), receiver_vocab.end(), sender.atoms.begin(),
                        sender.atoms.end(), std::inserter(spurious, spurious.end()));
    return {sender, receiver_vocab, std::move(end_to_end), std::move(lost), std::move(spurious)};
}

} // namespace semchan
