#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "semchan/closure.hpp"
#include "semchan/core.hpp"
#include "semchan/errors.hpp"
#include "support/fixture.hpp"
#include "support/naive_closure.hpp"
#include "support/random_gen.hpp"

using namespace semchan;
using fixture::edge;
using fixture::path;

namespace {

AtomSet atoms_of(std::initializer_list<GroundAtom> xs) { return AtomSet(xs); }

} // namespace

TEST_CASE("parser round-trips the shipped files bit-exactly") {
    for (const char* name : {"sender1.kb", "receiver2.kb", "receiver2p.kb", "receiver3.kb"}) {
        const std::string text = fixture::slurp(fixture::data_dir() + "/" + name);
        auto [kb, ps] = parse_kb(text);
        const std::string canon = serialize_kb(kb, ps);
        auto [kb2, ps2] = parse_kb(canon);
        CHECK(kb2.atoms == kb.atoms);
        CHECK(ps2.rules == ps.rules);
        CHECK(serialize_kb(kb2, ps2) == canon);
    }
}

TEST_CASE("parser accepts comments, odd whitespace, and duplicate lines") {
    auto [kb, ps] = parse_kb("% header\n  Edge( a , b ).  % trailing\nEdge(a,b).\n"
                             "Path(X,Y)\n  :- Edge(X,Y).\nPath(X,Y) :- Edge(X,Y).\n");
    CHECK(kb.atoms == atoms_of({edge("a", "b")}));
    CHECK(ps.rules.size() == 1);
}

TEST_CASE("parser rejects malformed input with positions") {
    CHECK_THROWS_AS(parse_kb("Edge(a,b)"), parse_error);       // missing period
    CHECK_THROWS_AS(parse_kb("Edge(a b)."), parse_error);      // missing comma
    CHECK_THROWS_AS(parse_kb("Edge(X,b)."), parse_error);      // non-ground fact
    CHECK_THROWS_AS(parse_kb("(a,b)."), parse_error);          // missing predicate
    CHECK_THROWS_AS(parse_kb("Path(X,Y) :- Edge(X,X)."), parse_error); // range leak
    try {
        parse_kb("Edge(a,b).\nEdge(a,c).\nEdge(q,r)");
        CHECK(false);
    } catch (const parse_error& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("lowercase initial means constant, uppercase initial means variable") {
    auto [kb, ps] = parse_kb("Edge(a,b).\nPath(X,b) :- Edge(X,b).\n");
    CHECK(kb.atoms.size() == 1);
    REQUIRE(ps.rules.size() == 1);
    CHECK(ps.rules[0].head.terms[0].is_var);
    CHECK_FALSE(ps.rules[0].head.terms[1].is_var);
    CHECK(closure(kb.atoms, ps).count(path("a", "b")));
}

TEST_CASE("Rule::make validates body presence and range restriction") {
    const Term X{true, "X"}, Y{true, "Y"};
    CHECK_THROWS_AS(Rule::make({"Path", {X, Y}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Rule::make({"Path", {X, Y}}, {AtomPattern{"Edge", {X, X}}}),
                    std::invalid_argument);
}

TEST_CASE("worked-example closure is the stored eight atoms plus the two derived paths") {
    const auto& e = fixture::example();
    const AtomSet cn = closure(e.sender.atoms, e.ps);
    AtomSet want = e.sender.atoms;
    want.insert(path("a", "c"));
    want.insert(path("b", "d"));
    CHECK(cn.size() == 10);
    CHECK(cn == want);
}

TEST_CASE("closure strata over the extracted core match the three-round table") {
    const auto& e = fixture::example();
    const auto core = extract_core(e.sender, e.ps);
    const auto st = closure_strata(core.core, e.ps);
    REQUIRE(st.frontiers.size() == 3);
    CHECK(st.frontiers[0] ==
          atoms_of({edge("a", "b"), edge("a", "c"), edge("b", "c"), edge("c", "d")}));
    CHECK(st.frontiers[1] ==
          atoms_of({path("a", "b"), path("a", "c"), path("b", "c"), path("c", "d")}));
    CHECK(st.frontiers[2] == atoms_of({path("a", "d"), path("b", "d")}));
    CHECK(st.rounds == 2);
    for (const auto& [atom, depth] : st.stratum)
        CHECK(st.frontiers[static_cast<std::size_t>(depth)].count(atom) == 1);
}

TEST_CASE("closure agrees with the naive full-grounding oracle on random KBs") {
    std::mt19937 g(2026);
    for (int i = 0; i < 250; ++i) {
        const auto ps = gen::random_ps(g);
        const auto base = gen::random_atoms(g);
        CHECK(closure(base, ps) == oracle::naive_closure(base, ps));
    }
}

TEST_CASE("closure operator: inclusion, idempotence, monotonicity") {
    std::mt19937 g(7);
    for (int i = 0; i < 250; ++i) {
        const auto ps = gen::random_ps(g);
        const auto a = gen::random_atoms(g);
        const auto cn_a = closure(a, ps);

        // Cn1: a subset of Cn(a).
        CHECK(std::includes(cn_a.begin(), cn_a.end(), a.begin(), a.end()));

        // Cn2: monotone under base growth.
        AtomSet b = a;
        for (const auto& x : gen::random_atoms(g, 0.1)) b.insert(x);
        const auto cn_b = closure(b, ps);
        CHECK(std::includes(cn_b.begin(), cn_b.end(), cn_a.begin(), cn_a.end()));

        // Cn3: idempotent.
        CHECK(closure(cn_a, ps) == cn_a);
    }
}

TEST_CASE("derivation depth matches the naive round oracle and the frozen example") {
    const auto& e = fixture::example();
    const auto core = extract_core(e.sender, e.ps).core;
    CHECK(derivation_depth(edge("a", "b"), core, e.ps) == 0);
    CHECK(derivation_depth(path("a", "c"), core, e.ps) == 1);
    CHECK(derivation_depth(path("a", "d"), core, e.ps) == 2);
    CHECK(derivation_depth(path("b", "d"), core, e.ps) == 2);
    CHECK_FALSE(derivation_depth(edge("d", "a"), core, e.ps).has_value());
    CHECK_FALSE(derivation_depth(path("d", "a"), core, e.ps).has_value());

    std::mt19937 g(11);
    for (int i = 0; i < 200; ++i) {
        const auto ps = gen::random_ps(g);
        const auto base = gen::random_atoms(g);
        const GroundAtom probe{"Path", {gen::consts()[static_cast<std::size_t>(gen::rand_int(g, 0, 3))],
                                        gen::consts()[static_cast<std::size_t>(gen::rand_int(g, 0, 3))]}};
        CHECK(derivation_depth(probe, base, ps) == oracle::naive_depth(probe, base, ps));
    }
}

TEST_CASE("derivation depth is monotone under base growth") {
    std::mt19937 g(13);
    int informative = 0;
    for (int i = 0; i < 300; ++i) {
        const auto ps = gen::random_ps(g);
        const auto small = gen::random_atoms(g);
        AtomSet big = small;
        for (const auto& x : gen::random_atoms(g, 0.15)) big.insert(x);
        const GroundAtom probe{"Path", {gen::consts()[static_cast<std::size_t>(gen::rand_int(g, 0, 3))],
                                        gen::consts()[static_cast<std::size_t>(gen::rand_int(g, 0, 3))]}};
        const auto d_small = derivation_depth(probe, small, ps);
        const auto d_big = derivation_depth(probe, big, ps);
        if (d_small) {
            REQUIRE(d_big.has_value());
            CHECK(*d_big <= *d_small);
            ++informative;
        }
    }
    CHECK(informative >= 50); // the suite exercised real derivations
}

TEST_CASE("herbrand size and the evaluation guard") {
    const auto& e = fixture::example();
    CHECK(herbrand_size(e.sender.atoms, e.ps) == 32); // 2 binary predicates over 4 constants
    CHECK(herbrand_size(e.sender.atoms, e.ps, 10) == 11); // saturates at cap+1
    CHECK_THROWS_AS(closure(e.sender.atoms, e.ps, 4), guard_error);
    CHECK_THROWS_AS(closure_strata(e.sender.atoms, e.ps, 4), guard_error);
    CHECK_THROWS_AS(derivation_depth(path("a", "d"), e.sender.atoms, e.ps, 4), guard_error);
}

TEST_CASE("worked-example core is the four edges with the frozen depth profile") {
    const auto& e = fixture::example();
    const auto core = extract_core(e.sender, e.ps);
    CHECK(core.core ==
          atoms_of({edge("a", "b"), edge("a", "c"), edge("b", "c"), edge("c", "d")}));
    CHECK(core.shortcuts ==
          atoms_of({path("a", "b"), path("a", "d"), path("b", "c"), path("c", "d")}));
    CHECK(core.atomicity == 4);
    CHECK(core.max_depth == 2);
    CHECK(core.depth_by_atom.at(edge("a", "b")) == 0);
    CHECK(core.depth_by_atom.at(path("a", "b")) == 1);
    CHECK(core.depth_by_atom.at(path("a", "d")) == 2);
}

TEST_CASE("receiver cores: the 4-cycle reaches depth 3, the other two depth 2") {
    const auto& e = fixture::example();
    const auto c2 = extract_core(e.r2, e.ps);
    CHECK(c2.core == atoms_of({edge("a", "b"), edge("b", "c"), edge("c", "d"), edge("d", "a")}));
    CHECK(c2.max_depth == 3);
    CHECK(extract_core(e.r2p, e.ps).max_depth == 2);
    CHECK(extract_core(e.r3, e.ps).max_depth == 2);
    CHECK(extract_core(e.r2p, e.ps).atomicity == 4);
    CHECK(extract_core(e.r3, e.ps).atomicity == 4);
}

TEST_CASE("core extraction: closure equivalence and irredundancy on random KBs") {
    std::mt19937 g(17);
    for (int i = 0; i < 250; ++i) {
        const auto ps = gen::random_ps(g);
        KnowledgeBase kb{gen::random_atoms(g)};
        const auto core = extract_core(kb, ps);

        CHECK(closure(core.core, ps) == closure(kb.atoms, ps));
        for (const auto& s : core.core) {
            AtomSet rest = core.core;
            rest.erase(s);
            CHECK_FALSE(closure(rest, ps).count(s));
        }
        CHECK(core.atomicity == static_cast<int>(core.core.size()));
        for (const auto& s : kb.atoms) {
            REQUIRE(core.depth_by_atom.count(s));
            CHECK(core.depth_by_atom.at(s) <= core.max_depth);
        }
    }
}

TEST_CASE("closure fidelity: frozen pair values and the empty convention") {
    const auto& e = fixture::example();
    CHECK(closure_fidelity(e.sender.atoms, e.r2.atoms, e.ps) == Ratio{3, 7});
    CHECK(closure_fidelity(e.sender.atoms, e.r2p.atoms, e.ps) == Ratio{1, 1});
    CHECK(closure_fidelity(e.sender.atoms, e.r3.atoms, e.ps) == Ratio{1, 1});
    CHECK(closure_fidelity({}, {}, e.ps) == Ratio{1, 1}); // 0/0 := 1
    CHECK(closure_fidelity(e.sender.atoms, e.sender.atoms, e.ps) == Ratio{1, 1});
}

TEST_CASE("core preservation ratio against the three receivers") {
    const auto& e = fixture::example();
    CHECK(core_preservation_ratio(e.sender, e.r2.atoms, e.ps) == Ratio{3, 4});
    CHECK(core_preservation_ratio(e.sender, e.r2p.atoms, e.ps) == Ratio{1, 1});
    CHECK(core_preservation_ratio(e.sender, e.r3.atoms, e.ps) == Ratio{1, 1});
}

TEST_CASE("perturb applies loss and spurious additions, rejecting bad sets") {
    const auto& e = fixture::example();
    const auto out = perturb(e.sender, atoms_of({edge("a", "c")}), atoms_of({edge("d", "a")}));
    CHECK(out.atoms.size() == 8);
    CHECK(out.atoms.count(edge("d", "a")) == 1);
    CHECK(out.atoms.count(edge("a", "c")) == 0);
    CHECK_THROWS_AS(perturb(e.sender, atoms_of({edge("d", "a")}), {}), std::invalid_argument);
    CHECK_THROWS_AS(perturb(e.sender, {}, atoms_of({edge("a", "b")})), std::invalid_argument);
}
