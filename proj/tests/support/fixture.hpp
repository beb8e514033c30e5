#pragma once

// Shared access to the shipped worked-example data files and the standard
// q=10, p=0.1 pipeline over them.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "semchan/semantic_channel.hpp"

namespace fixture {

inline std::string data_dir() { return SEMCHAN_DATA_DIR; }

inline std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("fixture: cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct Example {
    semchan::KnowledgeBase sender, r2, r2p, r3;
    semchan::ProofSystem ps;
    semchan::Kernel w;

    Example()
        : w(semchan::q_symmetric_channel(10, 0.1)) {
        auto load = [](const std::string& name) {
            return semchan::parse_kb(slurp(data_dir() + "/" + name));
        };
        auto [s, sp] = load("sender1.kb");
        sender = s;
        ps = sp;
        r2 = load("receiver2.kb").first;
        r2p = load("receiver2p.kb").first;
        r3 = load("receiver3.kb").first;
    }
};

inline const Example& example() {
    static Example e;
    return e;
}

// The standard pipeline: canonical injection into 10 carrier symbols, the
// q-ary symmetric carrier, nearest-closure decoding into the vocabulary.
inline semchan::SemanticChannel pipeline(const semchan::AtomSet& receiver_vocab) {
    const Example& e = example();
    auto enc = semchan::canonical_injection_encoder(e.sender, 10);
    auto dec = semchan::nearest_closure_decoder(e.sender, receiver_vocab, 10, e.ps);
    return semchan::build_semantic_channel(e.sender, receiver_vocab, enc, e.w, dec);
}

inline semchan::GroundAtom edge(const std::string& x, const std::string& y) {
    return {"Edge", {x, y}};
}
inline semchan::GroundAtom path(const std::string& x, const std::string& y) {
    return {"Path", {x, y}};
}

} // namespace fixture
