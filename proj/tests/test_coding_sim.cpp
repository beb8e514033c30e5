#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "semchan/coding.hpp"
#include "semchan/rng.hpp"
#include "support/fixture.hpp"

using namespace semchan;
using fixture::edge;
using fixture::path;

TEST_CASE("counter-based rng is pure, ordered, and in range") {
    CHECK(rng::keyed({1, 2, 3}) == rng::keyed({1, 2, 3}));
    CHECK(rng::keyed({1, 2, 3}) != rng::keyed({1, 3, 2}));
    CHECK(rng::keyed({1}) != rng::keyed({2}));
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const double u = rng::u01({42, i});
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("two-layer code: layout, anchor reuse, and determinism") {
    const auto& e = fixture::example();
    const auto code = build_two_layer_code(e.sender, e.r2p.atoms, e.w, 3, 7, e.ps);

    CHECK(code.n == 3);
    CHECK(code.seed == 7);
    CHECK(code.message_set.size() == 8);
    CHECK(code.core_elements.size() == 4);
    CHECK(code.anchor == edge("a", "b"));
    CHECK(code.rate == doctest::Approx(3.0 / 3.0).epsilon(1e-15));
    CHECK(code.message_set.front() == edge("a", "b"));
    CHECK(code.message_set.back() == path("c", "d"));

    // Core codewords are distinct n-tuples; redundant messages ride the anchor.
    std::set<std::vector<std::size_t>> words;
    for (const auto& m : code.core_elements) {
        const auto& cw = code.encode.at(m);
        CHECK(cw.size() == 3);
        words.insert(cw);
    }
    CHECK(words.size() == 4);
    for (const auto& m : {path("a", "b"), path("a", "d"), path("b", "c"), path("c", "d")})
        CHECK(code.encode.at(m) == code.encode.at(code.anchor));

    const auto again = build_two_layer_code(e.sender, e.r2p.atoms, e.w, 3, 7, e.ps);
    CHECK(again.encode == code.encode);
    const auto other = build_two_layer_code(e.sender, e.r2p.atoms, e.w, 3, 8, e.ps);
    CHECK(other.encode != code.encode);

    CHECK_THROWS_AS(build_two_layer_code(e.sender, e.r2p.atoms, e.w, 0, 7, e.ps),
                    std::invalid_argument);
}

TEST_CASE("two-layer code refuses receivers that lost part of the core") {
    const auto& e = fixture::example();
    try {
        build_two_layer_code(e.sender, e.r2.atoms, e.w, 2, 7, e.ps);
        CHECK(false);
    } catch (const std::invalid_argument& ex) {
        CHECK(std::string(ex.what()).find("Edge(a,c)") != std::string::npos);
    }
}

TEST_CASE("codeword collisions: redraws succeed in a tight space, fail in an impossible one") {
    const auto& e = fixture::example();
    const auto w2 = q_symmetric_channel(2, 0.1);
    // Four core codewords over exactly four binary pairs: redraws must find
    // the free slots.
    const auto tight = build_two_layer_code(e.sender, e.r2p.atoms, w2, 2, 7, e.ps);
    std::set<std::vector<std::size_t>> words;
    for (const auto& m : tight.core_elements) words.insert(tight.encode.at(m));
    CHECK(words.size() == 4);
    // Four codewords over two singleton tuples cannot exist.
    CHECK_THROWS_AS(build_two_layer_code(e.sender, e.r2p.atoms, w2, 1, 7, e.ps),
                    std::runtime_error);
}

TEST_CASE("simulation is bit-identical per seed and matches the n=1 exact analysis") {
    const auto& e = fixture::example();
    const auto code = build_two_layer_code(e.sender, e.r2p.atoms, e.w, 1, 7, e.ps);
    const auto r1 = simulate(code, e.w, 20000, 7, e.ps);
    const auto r2 = simulate(code, e.w, 20000, 7, e.ps);
    CHECK(r1.p_e_hat == r2.p_e_hat);
    CHECK(r1.p_e_cn_hat == r2.p_e_cn_hat);
    CHECK(r1.to_csv_row() == r2.to_csv_row());
    CHECK(r1.redundant_closure_errors == 0);

    // Exact n=1 analysis: ties decode to the anchor, so the anchor errs only
    // into the three other codewords (3/90) while every other core message
    // errs on nine symbols (9/90). The maximum is 0.1.
    CHECK(std::abs(r1.p_e_hat - 0.1) <= 5.0 * r1.ci_halfwidth);
    CHECK(r1.p_e_cn_hat == r1.p_e_hat); // every core decode error is a closure error here

    const auto r3 = simulate(code, e.w, 20000, 8, e.ps);
    CHECK(r3.p_e_hat != r1.p_e_hat);
    CHECK_THROWS_AS(simulate(code, e.w, 0, 7, e.ps), std::invalid_argument);
}

TEST_CASE("simulation csv row carries the frozen header shape") {
    const auto& e = fixture::example();
    const auto code = build_two_layer_code(e.sender, e.r2p.atoms, e.w, 2, 7, e.ps);
    const auto r = simulate(code, e.w, 1000, 7, e.ps);
    CHECK(SimResult::csv_header() == "n,trials,p_e,p_e_cn,ci,seed");
    const std::string row = r.to_csv_row();
    CHECK(row.rfind("2,1000,", 0) == 0);
    CHECK(row.find(",7") != std::string::npos);
}

TEST_CASE("error rates improve with blocklength and satisfy the converse bound") {
    const auto& e = fixture::example();
    double prev = 1.0;
    for (int n = 1; n <= 4; ++n) {
        const auto code = build_two_layer_code(e.sender, e.r2p.atoms, e.w, n, 7, e.ps);
        const auto r = simulate(code, e.w, 20000, 7, e.ps);
        CHECK(r.p_e_cn_hat <= r.p_e_hat + 1e-12);
        CHECK(r.p_e_cn_hat < prev);
        prev = r.p_e_cn_hat;
        CHECK(r.redundant_closure_errors == 0);

        const auto conv = converse_check(code, e.w, r.p_e_hat);
        CHECK(conv.ok);
        CHECK(conv.lhs_bits == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(conv.rhs_bits ==
              doctest::Approx((n * q_symmetric_capacity(10, 0.1) + 1.0) / (1.0 - r.p_e_hat))
                  .epsilon(1e-9));
        CHECK(conv.slack == doctest::Approx(conv.rhs_bits - conv.lhs_bits).epsilon(1e-12));
    }
    CHECK_THROWS_AS(converse_check(build_two_layer_code(e.sender, e.r2p.atoms, e.w, 1, 7, e.ps),
                                   e.w, 1.0),
                    std::invalid_argument);
}

TEST_CASE("induced channel: exact enumeration at small n, Monte Carlo beyond") {
    const auto& e = fixture::example();
    const auto code1 = build_two_layer_code(e.sender, e.r2p.atoms, e.w, 1, 7, e.ps);
    const auto ind1 = induced_semantic_channel(code1, e.w, e.r2p.atoms, e.sender);
    CHECK(ind1.exact);
    CHECK(ind1.mc_ci == 0.0);
    const auto& k1 = ind1.chan.end_to_end;
    CHECK(k1.input_space.size() == 8);
    CHECK(k1.output_space.size() == 9);

    // All mass decodes into the core; n=1 self-probabilities are exact.
    const std::set<std::string> core_labels = {"Edge(a,b)", "Edge(a,c)", "Edge(b,c)",
                                               "Edge(c,d)"};
    for (std::size_t i = 0; i < k1.input_space.size(); ++i)
        for (std::size_t j = 0; j < k1.output_space.size(); ++j)
            if (!core_labels.count(k1.output_space[j])) CHECK(k1.at(i, j) == 0.0);
    CHECK(k1.at(k1.in_index("Edge(a,b)"), k1.out_index("Edge(a,b)")) ==
          doctest::Approx(29.0 / 30.0).epsilon(1e-12));
    CHECK(k1.at(k1.in_index("Edge(b,c)"), k1.out_index("Edge(b,c)")) ==
          doctest::Approx(0.9).epsilon(1e-12));
    CHECK(k1.at(k1.in_index("Path(a,d)"), k1.out_index("Edge(a,b)")) ==
          doctest::Approx(29.0 / 30.0).epsilon(1e-12));

    // Monte Carlo rows at n = 4 still form a kernel and stay near the
    // simulated error rates.
    const auto code4 = build_two_layer_code(e.sender, e.r2p.atoms, e.w, 4, 7, e.ps);
    const auto ind4 = induced_semantic_channel(code4, e.w, e.r2p.atoms, e.sender, 50000, 7);
    CHECK_FALSE(ind4.exact);
    CHECK(ind4.mc_ci > 0.0);
    for (std::size_t i = 0; i < ind4.chan.end_to_end.input_space.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < ind4.chan.end_to_end.output_space.size(); ++j)
            s += ind4.chan.end_to_end.at(i, j);
        CHECK(std::abs(s - 1.0) <= 1e-12);
    }
}

TEST_CASE("exact induced channel predicts the simulated closure-error maxima") {
    const auto& e = fixture::example();
    const auto code = build_two_layer_code(e.sender, e.r2p.atoms, e.w, 2, 7, e.ps);
    const auto ind = induced_semantic_channel(code, e.w, e.r2p.atoms, e.sender);
    REQUIRE(ind.exact);
    const auto& k = ind.chan.end_to_end;

    double exact_pe_cn = 0.0;
    for (std::size_t i = 0; i < k.input_space.size(); ++i) {
        double err = 0.0;
        for (std::size_t j = 0; j < k.output_space.size(); ++j) {
            if (k.at(i, j) == 0.0) continue;
            const GroundAtom s = *parse_kb(k.input_space[i] + ".").first.atoms.begin();
            const GroundAtom t = *parse_kb(k.output_space[j] + ".").first.atoms.begin();
            if (d_closure(s, t, e.sender.atoms, e.ps).num != 0) err += k.at(i, j);
        }
        exact_pe_cn = std::max(exact_pe_cn, err);
    }

    const auto sim = simulate(code, e.w, 20000, 7, e.ps);
    CHECK(std::abs(sim.p_e_cn_hat - exact_pe_cn) <= 5.0 * sim.ci_halfwidth + 1e-9);
}
