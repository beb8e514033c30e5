#include "semchan/invariants.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace semchan {

NoisePairIndices noise_pair_indices(const SemanticChannel& chan, const AtomSet& core) {
    const Kernel& k = chan.end_to_end;
    NoisePairIndices out;
    out.p_cap.resize(k.input_space.size(), 0.0);
    out.p_plus.resize(k.input_space.size(), 0.0);

    const auto spur_labels = atom_labels(chan.spurious);
    const std::set<std::string> spur(spur_labels.begin(), spur_labels.end());
    for (std::size_t i = 0; i < k.input_space.size(); ++i) {
        for (std::size_t j = 0; j < k.output_space.size(); ++j) {
            const double v = k.at(i, j);
            (spur.count(k.output_space[j]) ? out.p_plus[i] : out.p_cap[i]) += v;
        }
        out.psi_plus = std::max(out.psi_plus, out.p_plus[i]);
    }

    // Core self-preservation: zero as soon as any core element is lost.
    bool core_intact = true;
    for (const auto& a : core)
        if (chan.lost.count(a)) core_intact = false;
    if (core_intact && !core.empty()) {
        double phi = 1.0;
        for (const auto& a : core) {
            const std::size_t i = k.in_index(a.str());
            const std::size_t j = k.out_index(a.str());
            const double self = k.at(i, j);
            out.pi[a.str()] = self;
            phi = std::min(phi, self);
        }
        out.phi_atom = phi;
    } else {
        out.phi_atom = 0.0;
        for (const auto& a : core)
            if (!chan.lost.count(a))
                out.pi[a.str()] = k.at(k.in_index(a.str()), k.out_index(a.str()));
    }
    return out;
}

QualityIndices quality_indices(const SemanticChannel& chan, const ProofSystem& ps,
                               std::uint64_t guard) {
    const AtomSet& sender = chan.sender_kb.atoms;
    const CoreAnalysis core = extract_core(chan.sender_kb, ps, guard);
    const DistortionMatrix cn =
        closure_matrix(sender, chan.receiver_vocab, sender, ps, guard);
    const DistortionMatrix dd =
        depth_matrix(sender, chan.receiver_vocab, core.core, core.max_depth, ps, guard);
    const Distribution uniform = Distribution::uniform(chan.end_to_end.input_space);
    const ExpectedDistortion e_cn = expected_distortion(chan, uniform, cn);
    const ExpectedDistortion e_dd = expected_distortion(chan, uniform, dd);

    QualityIndices out;
    double worst_cn = -1.0, worst_dd = -1.0;
    for (std::size_t i = 0; i < e_cn.per_input.size(); ++i) {
        if (e_cn.per_input[i] > worst_cn) {
            worst_cn = e_cn.per_input[i];
            out.worst_fidelity_input = chan.end_to_end.input_space[i];
        }
        if (e_dd.per_input[i] > worst_dd) {
            worst_dd = e_dd.per_input[i];
            out.worst_depth_input = chan.end_to_end.input_space[i];
        }
    }
    out.fidelity_index = 1.0 - worst_cn;
    out.depth_expansion = worst_dd;
    return out;
}

StructuralShifts structural_shifts(const KnowledgeBase& sender, const AtomSet& receiver_vocab,
                                   const ProofSystem& ps, std::uint64_t guard) {
    const CoreAnalysis s = extract_core(sender, ps, guard);
    const CoreAnalysis r = extract_core(KnowledgeBase{receiver_vocab}, ps, guard);
    return {static_cast<int>(r.atomicity) - static_cast<int>(s.atomicity),
            r.max_depth - s.max_depth};
}

InvariantReport invariant_report(const SemanticChannel& chan, const ProofSystem& ps,
                                 const Kernel& w, const Distribution& p_source,
                                 std::uint64_t guard) {
    InvariantReport rep;
    const CoreAnalysis core = extract_core(chan.sender_kb, ps, guard);
    rep.atomicity = core.atomicity;
    rep.max_depth = core.max_depth;
    rep.rho_atom = core_preservation_ratio(chan.sender_kb, chan.receiver_vocab, ps, guard);
    rep.f_cn = closure_fidelity(chan.sender_kb.atoms, chan.receiver_vocab, ps, guard);

    const NoisePairIndices noise = noise_pair_indices(chan, core.core);
    rep.phi_atom = noise.phi_atom;
    rep.psi_plus = noise.psi_plus;
    rep.p_cap = noise.p_cap;
    rep.p_plus = noise.p_plus;
    rep.pi = noise.pi;

    const QualityIndices quality = quality_indices(chan, ps, guard);
    rep.fidelity_index = quality.fidelity_index;
    rep.depth_expansion = quality.depth_expansion;

    const StructuralShifts shifts = structural_shifts(chan.sender_kb, chan.receiver_vocab, ps, guard);
    rep.delta_A = shifts.delta_A;
    rep.delta_Dd = shifts.delta_Dd;

    rep.shannon_capacity = shannon_capacity(w).bits;
    const auto sender_labels = atom_labels(chan.sender_kb.atoms);
    const auto receiver_labels = atom_labels(chan.receiver_vocab);
    const SemanticCapacityResult sc =
        semantic_capacity(sender_labels, receiver_labels, w,
                          EnablingMap::full(sender_labels, w.input_space),
                          EnablingMap::full(w.output_space, receiver_labels));
    rep.semantic_capacity = sc.bits;
    switch (sc.mode) {
        case SemanticCapacityResult::Mode::exact_enumeration:
            rep.semantic_capacity_mode = "exact_enumeration";
            break;
        case SemanticCapacityResult::Mode::equality_theorem:
            rep.semantic_capacity_mode = "equality_theorem";
            break;
        case SemanticCapacityResult::Mode::full_enabling_shortcut:
            rep.semantic_capacity_mode = "full_enabling_shortcut";
            break;
    }

    rep.semantic_mi = mutual_information(joint(p_source, chan.end_to_end));

    const DistortionMatrix h = hamming_matrix(chan.sender_kb.atoms, chan.receiver_vocab);
    const double eps = expected_distortion(chan, p_source, h).total;
    rep.fano_lower = fano_lower_bound(entropy(p_source), std::min(eps, 1.0),
                                      chan.receiver_vocab.size());
    return rep;
}

nlohmann::json InvariantReport::to_json() const {
    nlohmann::json j;
    j["atomicity"] = atomicity;
    j["max_depth"] = max_depth;
    j["rho_atom"] = {{"num", rho_atom.num}, {"den", rho_atom.den}, {"value", rho_atom.value()}};
    j["f_cn"] = {{"num", f_cn.num}, {"den", f_cn.den}, {"value", f_cn.value()}};
    j["phi_atom"] = phi_atom;
    j["psi_plus"] = psi_plus;
    j["p_cap"] = p_cap;
    j["p_plus"] = p_plus;
    j["pi"] = pi;
    j["fidelity_index"] = fidelity_index;
    j["depth_expansion"] = depth_expansion;
    j["delta_A"] = delta_A;
    j["delta_Dd"] = delta_Dd;
    j["shannon_capacity"] = shannon_capacity;
    j["semantic_capacity"] = semantic_capacity;
    j["semantic_capacity_mode"] = semantic_capacity_mode;
    j["semantic_mi"] = semantic_mi;
    j["fano_lower"] = fano_lower;
    return j;
}

std::string InvariantReport::to_csv() const {
    std::ostringstream os;
    os << "atomicity,max_depth,rho_atom,f_cn,phi_atom,psi_plus,fidelity_index,"
          "depth_expansion,delta_A,delta_Dd,shannon_capacity,semantic_capacity,"
          "semantic_capacity_mode,semantic_mi,fano_lower\n";
    os << atomicity << ',' << max_depth << ',' << rho_atom.str() << ',' << f_cn.str() << ','
       << phi_atom << ',' << psi_plus << ',' << fidelity_index << ',' << depth_expansion << ','
       << delta_A << ',' << delta_Dd << ',' << shannon_capacity << ',' << semantic_capacity << ','
       << semantic_capacity_mode << ',' << semantic_mi << ',' << fano_lower << '\n';
    return os.str();
}

} // namespace semchan
