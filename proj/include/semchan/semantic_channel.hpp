#pragma once

#include "semchan/core.hpp"
#include "semchan/kernel.hpp"

namespace semchan {

// End-to-end channel between stored semantic states: sender KB, receiver
// vocabulary, the composite kernel, and the induced noise pair.
struct SemanticChannel {
    KnowledgeBase sender_kb;
    AtomSet receiver_vocab;
    Kernel end_to_end; // sender atoms (canonical) -> receiver vocab (canonical)
    AtomSet lost;      // sender \ receiver_vocab
    AtomSet spurious;  // receiver_vocab \ sender
};

// Composes encoder, carrier, and decoder; validates the space chain and that
// the end spaces are exactly the canonical atom labels of the two KBs.
SemanticChannel build_semantic_channel(const KnowledgeBase& sender,
                                       const AtomSet& receiver_vocab,
                                       const Kernel& enc, const Kernel& w,
                                       const Kernel& dec);

// Carrier symbol labels "0".."size-1".
std::vector<std::string> carrier_labels(std::size_t size);

// Fixed deterministic injection: i-th sender atom (canonical order) -> symbol
// "i". Requires |sender| <= carrier_size.
Kernel canonical_injection_encoder(const KnowledgeBase& sender, std::size_t carrier_size);

// Deterministic decode rule for a receiver vocabulary:
//   s := the sender atom the symbol encodes, or the canonical-first sender
//        atom when the symbol is outside the encoder image;
//   emit s when the receiver stores it, otherwise the receiver state closest
//   to s in closure distortion over the sender base (canonical tie-break).
Kernel nearest_closure_decoder(const KnowledgeBase& sender, const AtomSet& receiver_vocab,
                               std::size_t carrier_size, const ProofSystem& ps,
                               std::uint64_t guard = kDefaultGuard);

} // namespace semchan
