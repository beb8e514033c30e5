#include "semchan/coding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "semchan/rng.hpp"

namespace semchan {

namespace {

// Per-row sampling tables for a kernel.
std::vector<std::vector<double>> row_cdfs(const Kernel& w) {
    std::vector<std::vector<double>> cdfs(w.input_space.size());
    for (std::size_t x = 0; x < w.input_space.size(); ++x) {
        double acc = 0.0;
        for (std::size_t y = 0; y < w.output_space.size(); ++y) {
            acc += w.at(x, y);
            cdfs[x].push_back(acc);
        }
        cdfs[x].back() = 1.0; // guard the top bin against rounding
    }
    return cdfs;
}

std::size_t sample(const std::vector<double>& cdf, double u) {
    // first bin whose cumulative mass exceeds u; u < 1 = cdf.back() always hits
    return static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
}

std::vector<double> log_likelihood_table(const Kernel& w) {
    std::vector<double> lw(w.input_space.size() * w.output_space.size());
    for (std::size_t x = 0; x < w.input_space.size(); ++x)
        for (std::size_t y = 0; y < w.output_space.size(); ++y)
            lw[x * w.output_space.size() + y] =
                w.at(x, y) > 0.0 ? std::log(w.at(x, y)) : -std::numeric_limits<double>::infinity();
    return lw;
}

// ML decode of a received tuple to a core-element index. Likelihood ties
// (within 1e-9 in log space) resolve to the canonically first candidate.
std::size_t ml_decode(const std::vector<std::size_t>& received, const BlockCode& code,
                      const std::vector<double>& lw, std::size_t ny) {
    std::size_t best = 0;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < code.core_elements.size(); ++c) {
        const auto& cw = code.encode.at(code.core_elements[c]);
        double ll = 0.0;
        for (std::size_t k = 0; k < received.size(); ++k) ll += lw[cw[k] * ny + received[k]];
        if (ll > best_ll + 1e-9) {
            best_ll = ll;
            best = c;
        }
    }
    return best;
}

// Closure-error indicator: substituting the decoded core element for the
// message changes the deductive closure.
std::vector<char> closure_error_table(const BlockCode& code, const AtomSet& base,
                                      const ProofSystem& ps, std::uint64_t guard) {
    std::vector<char> err(code.message_set.size() * code.core_elements.size());
    for (std::size_t m = 0; m < code.message_set.size(); ++m)
        for (std::size_t c = 0; c < code.core_elements.size(); ++c)
            err[m * code.core_elements.size() + c] =
                d_closure(code.message_set[m], code.core_elements[c], base, ps, guard).num != 0;
    return err;
}

} // namespace

BlockCode build_two_layer_code(const KnowledgeBase& sender, const AtomSet& receiver_vocab,
                               const Kernel& w, int n, std::uint64_t seed,
                               const ProofSystem& ps, std::uint64_t guard) {
    if (n < 1) throw std::invalid_argument("block code: n must be at least 1");
    const CoreAnalysis core = extract_core(sender, ps, guard);
    AtomSet missing;
    for (const auto& a : core.core)
        if (!receiver_vocab.count(a)) missing.insert(a);
    if (!missing.empty()) {
        std::ostringstream os;
        os << "block code: receiver vocabulary misses core elements:";
        for (const auto& a : missing) os << ' ' << a.str();
        throw std::invalid_argument(os.str());
    }

    BlockCode code;
    code.message_set.assign(sender.atoms.begin(), sender.atoms.end());
    code.core_elements.assign(core.core.begin(), core.core.end());
    code.anchor = code.core_elements.front();
    code.n = n;
    code.seed = seed;
    code.rate = std::log2(static_cast<double>(code.message_set.size())) / n;

    const Distribution opt = shannon_capacity(w).input;
    std::vector<double> cdf;
    double acc = 0.0;
    for (double m : opt.mass) cdf.push_back(acc += m);
    cdf.back() = 1.0;

    std::vector<std::vector<std::size_t>> words;
    for (std::size_t m = 0; m < code.core_elements.size(); ++m) {
        std::vector<std::size_t> cw(n);
        bool placed = false;
        for (std::uint64_t attempt = 0; attempt < 100 && !placed; ++attempt) {
            for (int k = 0; k < n; ++k)
                cw[static_cast<std::size_t>(k)] = sample(
                    cdf, rng::u01({seed, rng::kPurposeCodewords, m, static_cast<std::uint64_t>(k),
                                   attempt}));
            placed = std::find(words.begin(), words.end(), cw) == words.end();
        }
        if (!placed) throw std::runtime_error("block code: codeword collisions persisted");
        words.push_back(cw);
        code.encode[code.core_elements[m]] = cw;
    }
    const auto& anchor_word = code.encode.at(code.anchor);
    for (const auto& msg : code.message_set)
        if (!code.encode.count(msg)) code.encode[msg] = anchor_word;
    return code;
}

SimResult simulate(const BlockCode& code, const Kernel& w, long trials, std::uint64_t seed,
                   const ProofSystem& ps, std::uint64_t guard) {
    if (trials < 1) throw std::invalid_argument("simulate: trials must be positive");
    const auto cdfs = row_cdfs(w);
    const auto lw = log_likelihood_table(w);
    const std::size_t ny = w.output_space.size();
    const auto cn_err = closure_error_table(code, /*base=*/AtomSet(code.message_set.begin(),
                                                                  code.message_set.end()),
                                            ps, guard);

    std::set<GroundAtom> core_set(code.core_elements.begin(), code.core_elements.end());
    SimResult res;
    res.n = code.n;
    res.trials = trials;
    res.seed = seed;

    std::vector<std::size_t> received(static_cast<std::size_t>(code.n));
    for (std::size_t m = 0; m < code.message_set.size(); ++m) {
        const auto& cw = code.encode.at(code.message_set[m]);
        const bool is_core = core_set.count(code.message_set[m]) != 0;
        const std::size_t self =
            is_core ? static_cast<std::size_t>(
                          std::find(code.core_elements.begin(), code.core_elements.end(),
                                    code.message_set[m]) -
                          code.core_elements.begin())
                    : 0;
        long ham_errors = 0, cn_errors = 0;
        for (long t = 0; t < trials; ++t) {
            for (std::size_t k = 0; k < received.size(); ++k)
                received[k] = sample(cdfs[cw[k]],
                                     rng::u01({seed, rng::kPurposeChannel, m,
                                               static_cast<std::uint64_t>(t), k}));
            const std::size_t decoded = ml_decode(received, code, lw, ny);
            if (is_core && decoded != self) ++ham_errors;
            if (cn_err[m * code.core_elements.size() + decoded]) ++cn_errors;
        }
        if (is_core)
            res.p_e_hat = std::max(res.p_e_hat, static_cast<double>(ham_errors) / trials);
        else
            res.redundant_closure_errors += cn_errors;
        res.p_e_cn_hat = std::max(res.p_e_cn_hat, static_cast<double>(cn_errors) / trials);
    }
    res.ci_halfwidth =
        1.96 * std::sqrt(res.p_e_cn_hat * (1.0 - res.p_e_cn_hat) / static_cast<double>(trials));
    return res;
}

std::string SimResult::csv_header() { return "n,trials,p_e,p_e_cn,ci,seed"; }

std::string SimResult::to_csv_row() const {
    std::ostringstream os;
    os.precision(17);
    os << n << ',' << trials << ',' << p_e_hat << ',' << p_e_cn_hat << ',' << ci_halfwidth << ','
       << seed;
    return os.str();
}

ConverseCheck converse_check(const BlockCode& code, const Kernel& w, double eps_hat,
                             double ba_tol) {
    if (!(eps_hat >= 0.0) || eps_hat >= 1.0)
        throw std::invalid_argument("converse_check: eps_hat must lie in [0,1)");
    ConverseCheck out;
    out.lhs_bits = std::log2(static_cast<double>(code.core_elements.size()));
    const double c = shannon_capacity(w, ba_tol).bits;
    out.rhs_bits = (code.n * c + 1.0) / (1.0 - eps_hat);
    out.slack = out.rhs_bits - out.lhs_bits;
    out.ok = out.lhs_bits <= out.rhs_bits + 1e-12;
    return out;
}

InducedChannel induced_semantic_channel(const BlockCode& code, const Kernel& w,
                                        const AtomSet& receiver_vocab,
                                        const KnowledgeBase& sender,
                                        std::uint64_t mc_trials, std::uint64_t seed) {
    const auto lw = log_likelihood_table(w);
    const std::size_t ny = w.output_space.size();
    const auto receiver_labels = atom_labels(receiver_vocab);
    std::map<std::string, std::size_t> col;
    for (std::size_t j = 0; j < receiver_labels.size(); ++j) col[receiver_labels[j]] = j;

    double tuple_count = 1.0;
    for (int k = 0; k < code.n; ++k) tuple_count *= static_cast<double>(ny);
    const bool exact = tuple_count <= 4096.0;

    std::vector<double> m(code.message_set.size() * receiver_labels.size(), 0.0);
    std::vector<std::size_t> received(static_cast<std::size_t>(code.n));
    for (std::size_t mi = 0; mi < code.message_set.size(); ++mi) {
        const auto& cw = code.encode.at(code.message_set[mi]);
        auto land = [&](std::size_t core_idx, double mass) {
            m[mi * receiver_labels.size() + col.at(code.core_elements[core_idx].str())] += mass;
        };
        if (exact) {
            std::fill(received.begin(), received.end(), 0);
            for (;;) {
                double p = 1.0;
                for (std::size_t k = 0; k < received.size(); ++k) p *= w.at(cw[k], received[k]);
                if (p > 0.0) land(ml_decode(received, code, lw, ny), p);
                std::size_t k = 0;
                while (k < received.size() && ++received[k] == ny) received[k++] = 0;
                if (k == received.size()) break;
            }
        } else {
            const auto cdfs = row_cdfs(w);
            for (std::uint64_t t = 0; t < mc_trials; ++t) {
                for (std::size_t k = 0; k < received.size(); ++k)
                    received[k] = sample(cdfs[cw[k]], rng::u01({seed, rng::kPurposeInduced, mi, t, k}));
                land(ml_decode(received, code, lw, ny), 1.0 / static_cast<double>(mc_trials));
            }
        }
    }

    AtomSet lost, spurious;
    std::set_difference(sender.atoms.begin(), sender.atoms.end(), receiver_vocab.begin(),
                        receiver_vocab.end(), std::inserter(lost, lost.end()));
    std::set_difference(receiver_vocab.begin(), receiver_vocab.end(), sender.atoms.begin(),
                        sender.atoms.end(), std::inserter(spurious, spurious.end()));
    return {SemanticChannel{sender, receiver_vocab,
                            Kernel(atom_labels(sender.atoms), receiver_labels, std::move(m)),
                            std::move(lost), std::move(spurious)},
            exact, exact ? 0.0 : 1.96 * std::sqrt(0.25 / static_cast<double>(mc_trials))};
}

} // namespace semchan
