#include "semchan/distortion.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "semchan/closure.hpp"

namespace semchan {

DistortionWeights::DistortionWeights(double a, double b, double g) : alpha(a), beta(b), gamma(g) {
    if (!(a >= 0.0) || !(b >= 0.0) || !(g >= 0.0))
        throw std::invalid_argument("distortion weights must be nonnegative");
    if (std::abs(a + b + g - 1.0) > 1e-12)
        throw std::invalid_argument("distortion weights must sum to 1");
}

double d_hamming(const GroundAtom& s, const GroundAtom& s_hat) {
    return s == s_hat ? 0.0 : 1.0;
}

namespace {

std::string set_signature(const AtomSet& xs) {
    std::ostringstream os;
    for (const auto& x : xs) os << x.str() << '\x1f';
    return os.str();
}

std::string rules_signature(const ProofSystem& ps) {
    std::ostringstream os;
    for (const auto& r : ps.rules) os << r.str() << '\x1f';
    return os.str();
}

// Closure cache for substitution experiments: many (s, s_hat) pairs revisit
// the same perturbed base.
class ClosureMemo {
public:
    const AtomSet& get(const AtomSet& gamma, const ProofSystem& ps, std::uint64_t guard) {
        auto key = set_signature(gamma);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        return memo_.emplace(std::move(key), closure(gamma, ps, guard)).first->second;
    }

private:
    std::unordered_map<std::string, AtomSet> memo_;
};

Ratio jaccard_distance(const AtomSet& a, const AtomSet& b) {
    std::size_t inter = 0;
    for (const auto& x : a) inter += b.count(x);
    const std::size_t uni = a.size() + b.size() - inter;
    if (uni == 0) return Ratio::of(0, 1); // both closures empty: no disagreement
    return Ratio::of(static_cast<std::int64_t>(uni - inter), static_cast<std::int64_t>(uni));
}

Ratio d_closure_memo(const GroundAtom& s, const GroundAtom& s_hat, const AtomSet& base,
                     const ProofSystem& ps, std::uint64_t guard, ClosureMemo& memo) {
    AtomSet with_s = base;
    with_s.erase(s);
    AtomSet with_hat = with_s;
    with_s.insert(s);
    with_hat.insert(s_hat);
    return jaccard_distance(memo.get(with_s, ps, guard), memo.get(with_hat, ps, guard));
}

double d_depth_impl(const GroundAtom& s, const GroundAtom& s_hat, const AtomSet& core,
                    int d_max, const ProofSystem& ps, std::uint64_t guard) {
    const auto ds = derivation_depth(s, core, ps, guard);
    const auto dh = derivation_depth(s_hat, core, ps, guard);
    if (!dh || !ds) return 1.0; // either side outside the derivable cone
    const double denom = std::max(d_max, 1);
    return std::min(std::abs(*ds - *dh) / denom, 1.0);
}

std::mutex g_matrix_mutex;
std::unordered_map<std::string, DistortionMatrix> g_matrix_memo;

template <typename Fill>
DistortionMatrix cached_matrix(const std::string& key, DistortionKind kind,
                               const AtomSet& sender, const AtomSet& receiver_vocab,
                               Fill fill) {
    {
        std::lock_guard<std::mutex> lock(g_matrix_mutex);
        auto it = g_matrix_memo.find(key);
        if (it != g_matrix_memo.end()) return it->second;
    }
    DistortionMatrix m{kind, atom_labels(sender), atom_labels(receiver_vocab), {}};
    m.v.reserve(sender.size() * receiver_vocab.size());
    for (const auto& s : sender)
        for (const auto& t : receiver_vocab) m.v.push_back(fill(s, t));
    std::lock_guard<std::mutex> lock(g_matrix_mutex);
    return g_matrix_memo.emplace(key, std::move(m)).first->second;
}

} // namespace

Ratio d_closure(const GroundAtom& s, const GroundAtom& s_hat, const AtomSet& base,
                const ProofSystem& ps, std::uint64_t guard) {
    ClosureMemo memo;
    return d_closure_memo(s, s_hat, base, ps, guard, memo);
}

double d_depth(const GroundAtom& s, const GroundAtom& s_hat, const AtomSet& core,
               int d_max, const ProofSystem& ps, std::uint64_t guard) {
    return d_depth_impl(s, s_hat, core, d_max, ps, guard);
}

double d_composite(const GroundAtom& s, const GroundAtom& s_hat,
                   const DistortionWeights& w, const AtomSet& base,
                   const AtomSet& core, int d_max, const ProofSystem& ps,
                   std::uint64_t guard) {
    return w.alpha * d_hamming(s, s_hat) + w.beta * d_closure(s, s_hat, base, ps, guard).value() +
           w.gamma * d_depth(s, s_hat, core, d_max, ps, guard);
}

DistortionMatrix hamming_matrix(const AtomSet& sender, const AtomSet& receiver_vocab) {
    DistortionMatrix m{DistortionKind::hamming, atom_labels(sender), atom_labels(receiver_vocab), {}};
    m.v.reserve(sender.size() * receiver_vocab.size());
    for (const auto& s : sender)
        for (const auto& t : receiver_vocab) m.v.push_back(d_hamming(s, t));
    return m;
}

DistortionMatrix closure_matrix(const AtomSet& sender, const AtomSet& receiver_vocab,
                                const AtomSet& base, const ProofSystem& ps,
                                std::uint64_t guard) {
    const std::string key = "Cn|" + set_signature(sender) + "|" + set_signature(receiver_vocab) +
                            "|" + set_signature(base) + "|" + rules_signature(ps);
    ClosureMemo memo;
    return cached_matrix(key, DistortionKind::closure, sender, receiver_vocab,
                         [&](const GroundAtom& s, const GroundAtom& t) {
                             return d_closure_memo(s, t, base, ps, guard, memo).value();
                         });
}

DistortionMatrix depth_matrix(const AtomSet& sender, const AtomSet& receiver_vocab,
                              const AtomSet& core, int d_max, const ProofSystem& ps,
                              std::uint64_t guard) {
    const std::string key = "Dd|" + std::to_string(d_max) + "|" + set_signature(sender) + "|" +
                            set_signature(receiver_vocab) + "|" + set_signature(core) + "|" +
                            rules_signature(ps);
    return cached_matrix(key, DistortionKind::depth, sender, receiver_vocab,
                         [&](const GroundAtom& s, const GroundAtom& t) {
                             return d_depth_impl(s, t, core, d_max, ps, guard);
                         });
}

DistortionMatrix composite_matrix(const AtomSet& sender, const AtomSet& receiver_vocab,
                                  const DistortionWeights& w, const AtomSet& base,
                                  const AtomSet& core, int d_max, const ProofSystem& ps,
                                  std::uint64_t guard) {
    const DistortionMatrix h = hamming_matrix(sender, receiver_vocab);
    const DistortionMatrix c = closure_matrix(sender, receiver_vocab, base, ps, guard);
    const DistortionMatrix d = depth_matrix(sender, receiver_vocab, core, d_max, ps, guard);
    DistortionMatrix m{DistortionKind::composite, h.row_labels, h.col_labels, {}};
    m.v.resize(h.v.size());
    for (std::size_t i = 0; i < m.v.size(); ++i)
        m.v[i] = w.alpha * h.v[i] + w.beta * c.v[i] + w.gamma * d.v[i];
    return m;
}

ExpectedDistortion expected_distortion(const SemanticChannel& chan,
                                       const Distribution& p_source,
                                       const DistortionMatrix& d) {
    const Kernel& k = chan.end_to_end;
    if (p_source.space != k.input_space || d.row_labels != k.input_space ||
        d.col_labels != k.output_space)
        throw std::invalid_argument("expected_distortion: space mismatch");
    ExpectedDistortion out;
    out.per_input.resize(k.input_space.size(), 0.0);
    for (std::size_t i = 0; i < k.input_space.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k.output_space.size(); ++j) acc += k.at(i, j) * d.at(i, j);
        out.per_input[i] = acc;
        out.total += p_source.mass[i] * acc;
    }
    return out;
}

HammingSplit hamming_decomposition(const SemanticChannel& chan, const Distribution& p_source) {
    const Kernel& k = chan.end_to_end;
    if (p_source.space != k.input_space)
        throw std::invalid_argument("hamming_decomposition: source space mismatch");
    const auto spurious = atom_labels(chan.spurious);
    const std::set<std::string> spur(spurious.begin(), spurious.end());
    HammingSplit split;
    for (std::size_t i = 0; i < k.input_space.size(); ++i)
        for (std::size_t j = 0; j < k.output_space.size(); ++j) {
            if (k.output_space[j] == k.input_space[i]) continue;
            const double mass = p_source.mass[i] * k.at(i, j);
            if (spur.count(k.output_space[j]))
                split.spurious += mass;
            else
                split.within += mass;
        }
    split.total = split.within + split.spurious;
    return split;
}

} // namespace semchan
