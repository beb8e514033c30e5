#pragma once

// Independent end-to-end oracle: rebuilds the full pipeline — canonical
// injection, q-ary symmetric carrier, nearest-closure decode rule — from
// scratch on top of the naive closure oracle, then reads the kernel-dependent
// indices straight off the explicit matrix. Shares no code with the engine
// beyond the atom container.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "naive_closure.hpp"

namespace oracle {

struct Frac {
    std::int64_t num = 0, den = 1;

    bool operator<(const Frac& o) const { return num * o.den < o.num * den; }
    bool operator==(const Frac& o) const { return num * o.den == o.num * den; }
    double value() const { return double(num) / double(den); }
};

// Jaccard distance of the substituted closures, as an exact fraction.
inline Frac d_cn(const semchan::GroundAtom& s, const semchan::GroundAtom& t,
                 const semchan::AtomSet& base, const semchan::ProofSystem& ps) {
    semchan::AtomSet bs = base, bt = base;
    bs.erase(s);
    bt.erase(s);
    bs.insert(s);
    bt.insert(t);
    const auto cs = naive_closure(bs, ps);
    const auto ct = naive_closure(bt, ps);
    std::int64_t inter = 0;
    for (const auto& a : cs) inter += ct.count(a) ? 1 : 0;
    const std::int64_t uni = std::int64_t(cs.size() + ct.size()) - inter;
    if (uni == 0) return {0, 1};
    return {uni - inter, uni};
}

struct E2E {
    std::vector<std::string> sender_labels;   // lexicographically sorted
    std::vector<std::string> receiver_labels; // lexicographically sorted
    std::vector<std::vector<double>> m;       // |sender| x |receiver|
    double psi_plus = 0.0;
    double fidelity = 1.0;       // 1 - worst per-input expected closure distortion
    double depth_expansion = 0.0; // worst per-input expected depth distortion
    double i_sem_bits = 0.0;     // uniform source
};

inline E2E end_to_end(const semchan::AtomSet& sender, const semchan::AtomSet& receiver,
                      const semchan::ProofSystem& ps, int q, double p) {
    E2E r;
    std::vector<semchan::GroundAtom> ss(sender.begin(), sender.end());
    std::vector<semchan::GroundAtom> rs(receiver.begin(), receiver.end());
    std::sort(ss.begin(), ss.end(),
              [](const auto& a, const auto& b) { return a.str() < b.str(); });
    std::sort(rs.begin(), rs.end(),
              [](const auto& a, const auto& b) { return a.str() < b.str(); });
    for (const auto& a : ss) r.sender_labels.push_back(a.str());
    for (const auto& a : rs) r.receiver_labels.push_back(a.str());

    // Decode rule, re-derived: symbol -> intended sender atom -> stored-or-
    // closest receiver atom, exact-fraction comparison, lexicographic ties.
    std::vector<std::size_t> dec(static_cast<std::size_t>(q));
    for (int y = 0; y < q; ++y) {
        const semchan::GroundAtom& s =
            ss[static_cast<std::size_t>(y) < ss.size() ? static_cast<std::size_t>(y) : 0];
        std::size_t best = rs.size();
        for (std::size_t j = 0; j < rs.size(); ++j) {
            if (rs[j] == s) {
                best = j;
                break;
            }
        }
        if (best == rs.size()) {
            Frac best_d{2, 1};
            for (std::size_t j = 0; j < rs.size(); ++j) {
                const Frac dj = d_cn(s, rs[j], sender, ps);
                if (dj < best_d) {
                    best_d = dj;
                    best = j;
                }
            }
        }
        dec[static_cast<std::size_t>(y)] = best;
    }

    // M[s][t] = sum over carrier symbols of W(y | enc(s)) [dec(y) = t].
    r.m.assign(ss.size(), std::vector<double>(rs.size(), 0.0));
    for (std::size_t i = 0; i < ss.size(); ++i)
        for (int y = 0; y < q; ++y) {
            const double w = (static_cast<std::size_t>(y) == i) ? 1.0 - p : p / (q - 1);
            r.m[i][dec[static_cast<std::size_t>(y)]] += w;
        }

    // Spurious mass and worst-case expectations.
    const semchan::AtomSet sset(ss.begin(), ss.end());
    const auto core = naive_core(sender, ps);
    int dmax = 0;
    std::map<semchan::GroundAtom, int> depth;
    for (const auto& a : sender) {
        depth[a] = *naive_depth(a, core, ps);
        dmax = std::max(dmax, depth[a]);
    }
    for (std::size_t i = 0; i < ss.size(); ++i) {
        double spur = 0.0, ecn = 0.0, edd = 0.0;
        for (std::size_t j = 0; j < rs.size(); ++j) {
            if (!sset.count(rs[j])) spur += r.m[i][j];
            ecn += r.m[i][j] * d_cn(ss[i], rs[j], sender, ps).value();
            const auto dj = naive_depth(rs[j], core, ps);
            const double ddd =
                dj ? std::min(std::abs(depth[ss[i]] - *dj) / double(std::max(dmax, 1)), 1.0)
                   : 1.0;
            edd += r.m[i][j] * ddd;
        }
        r.psi_plus = std::max(r.psi_plus, spur);
        r.fidelity = std::min(r.fidelity, 1.0 - ecn);
        r.depth_expansion = std::max(r.depth_expansion, edd);
    }

    // I(X;Y) = H(Y) - H(Y|X) under the uniform source, in bits.
    const double px = 1.0 / double(ss.size());
    std::vector<double> py(rs.size(), 0.0);
    double h_y_given_x = 0.0;
    for (std::size_t i = 0; i < ss.size(); ++i)
        for (std::size_t j = 0; j < rs.size(); ++j) {
            py[j] += px * r.m[i][j];
            if (r.m[i][j] > 0.0) h_y_given_x -= px * r.m[i][j] * std::log2(r.m[i][j]);
        }
    double h_y = 0.0;
    for (double v : py)
        if (v > 0.0) h_y -= v * std::log2(v);
    r.i_sem_bits = h_y - h_y_given_x;
    return r;
}

} // namespace oracle
