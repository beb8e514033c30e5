#include "semchan/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "semchan/coding.hpp"
#include "semchan/errors.hpp"
#include "semchan/overlap.hpp"
#include "semchan/rng.hpp"

#ifndef SEMCHAN_DATA_DIR
#define SEMCHAN_DATA_DIR "data"
#endif

namespace semchan::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string fmt3(double x) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << x;
    return os.str();
}

std::string ratio_str(const Ratio& r) { return r.str() + " (" + fmt3(r.value()) + ")"; }

json ratio_json(const Ratio& r) {
    return json{{"num", r.num}, {"den", r.den}, {"value", r.value()}};
}

std::string join(const std::vector<std::string>& xs, const char* sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += xs[i];
    }
    return out;
}

// Sender + receivers with one proof system: rules are unioned across every
// loaded file and deduped.
struct Loaded {
    KnowledgeBase sender;
    std::vector<std::pair<std::string, KnowledgeBase>> receivers;
    ProofSystem ps;
};

Loaded load_inputs(const RunConfig& cfg) {
    Loaded l;
    std::set<Rule> rules;
    auto absorb = [&](const std::string& path) {
        auto [kb, ps] = parse_kb(read_file(path));
        rules.insert(ps.rules.begin(), ps.rules.end());
        return kb;
    };
    l.sender = absorb(cfg.kb_path);
    for (const auto& r : cfg.receiver_paths) l.receivers.emplace_back(r, absorb(r));
    l.ps.rules.assign(rules.begin(), rules.end());
    return l;
}

struct ChannelSpec {
    Kernel w;
    std::size_t carrier_size = 0;
    std::string encoder = "canonical_injection";
    std::string decoder = "nearest_closure";
    bool q_symmetric = false;
    int q = 0;
    double p = 0.0;
};

ChannelSpec load_channel(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw parse_error(path + ": " + e.what(), 0, 0);
    }
    try {
        const json& carrier = j.at("carrier");
        const std::string type = carrier.at("type").get<std::string>();
        if (type == "q_symmetric") {
            const int q = carrier.at("q").get<int>();
            const double p = carrier.at("p").get<double>();
            ChannelSpec spec{q_symmetric_channel(q, p),
                             j.value("carrier_size", static_cast<std::size_t>(q)),
                             j.value("encoder", std::string("canonical_injection")),
                             j.value("decoder", std::string("nearest_closure")),
                             true,
                             q,
                             p};
            if (spec.carrier_size != spec.w.input_space.size())
                throw std::invalid_argument("carrier_size must match the carrier alphabet");
            return spec;
        }
        if (type == "matrix") {
            const auto inputs = carrier.at("inputs").get<std::vector<std::string>>();
            const auto outputs = carrier.at("outputs").get<std::vector<std::string>>();
            std::vector<double> m;
            for (const auto& row : carrier.at("rows"))
                for (const auto& v : row) m.push_back(v.get<double>());
            ChannelSpec spec{Kernel(inputs, outputs, m),
                             j.value("carrier_size", inputs.size()),
                             j.value("encoder", std::string("canonical_injection")),
                             j.value("decoder", std::string("nearest_closure")),
                             false,
                             0,
                             0.0};
            if (spec.carrier_size != inputs.size())
                throw std::invalid_argument("carrier_size must match the carrier alphabet");
            return spec;
        }
        throw std::invalid_argument("unknown carrier type: " + type);
    } catch (const json::exception& e) {
        throw parse_error(path + ": " + e.what(), 0, 0);
    } catch (const std::invalid_argument& e) {
        throw parse_error(path + ": " + e.what(), 0, 0);
    }
}

struct Pipeline {
    Kernel enc, dec;
    SemanticChannel chan;
};

Pipeline build_pipeline(const KnowledgeBase& sender, const AtomSet& vocab,
                        const ChannelSpec& spec, const ProofSystem& ps, std::uint64_t guard) {
    if (spec.encoder != "canonical_injection")
        throw parse_error("unsupported encoder: " + spec.encoder, 0, 0);
    if (spec.decoder != "nearest_closure")
        throw parse_error("unsupported decoder: " + spec.decoder, 0, 0);
    Kernel enc = canonical_injection_encoder(sender, spec.carrier_size);
    Kernel dec = nearest_closure_decoder(sender, vocab, spec.carrier_size, ps, guard);
    SemanticChannel chan = build_semantic_channel(sender, vocab, enc, spec.w, dec);
    return {std::move(enc), std::move(dec), std::move(chan)};
}

int need(std::ostream& err, bool cond, const char* what) {
    if (cond) return kExitOk;
    err << "usage: missing " << what << "\n";
    return kExitUsage;
}

// --- analyze -----------------------------------------------------------

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (int rc = need(err, !cfg.kb_path.empty(), "--kb")) return rc;
    const Loaded l = load_inputs(cfg);
    const ClosureStrata cs = closure_strata(l.sender.atoms, l.ps, cfg.guard);
    const CoreAnalysis core = extract_core(l.sender, l.ps, cfg.guard);

    if (cfg.format == "json") {
        json j;
        j["stored"] = atom_labels(l.sender.atoms);
        j["closure"] = atom_labels(cs.atoms);
        j["closure_size"] = cs.atoms.size();
        j["core"] = atom_labels(core.core);
        j["shortcuts"] = atom_labels(core.shortcuts);
        j["atomicity"] = core.atomicity;
        j["max_depth"] = core.max_depth;
        json depths = json::object();
        for (const auto& [a, d] : core.depth_by_atom) depths[a.str()] = d;
        j["depth_by_atom"] = depths;
        json strata = json::array();
        for (const auto& f : cs.frontiers) strata.push_back(atom_labels(f));
        j["strata"] = strata;
        out << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "key,value\n";
        out << "stored_atoms," << l.sender.atoms.size() << "\n";
        out << "closure_size," << cs.atoms.size() << "\n";
        out << "atomicity," << core.atomicity << "\n";
        out << "max_depth," << core.max_depth << "\n";
        std::vector<std::string> sizes;
        for (const auto& f : cs.frontiers) sizes.push_back(std::to_string(f.size()));
        out << "strata_sizes," << join(sizes, ";") << "\n";
    } else {
        out << "stored atoms: " << l.sender.atoms.size() << "\n";
        out << "closure size: " << cs.atoms.size() << "\n";
        out << "atomicity: " << core.atomicity << "\n";
        out << "max depth: " << core.max_depth << "\n";
        out << "core: " << join(atom_labels(core.core)) << "\n";
        out << "shortcuts: " << join(atom_labels(core.shortcuts)) << "\n";
        for (std::size_t i = 0; i < cs.frontiers.size(); ++i)
            out << "stratum " << i << " (" << cs.frontiers[i].size()
                << "): " << join(atom_labels(cs.frontiers[i])) << "\n";
    }
    return kExitOk;
}

// --- overlap -----------------------------------------------------------

json feasibility_json(const PairFeasibility& f) {
    return json{{"f1", f.f1},
                {"f1_strong", f.f1_strong},
                {"f2", f.f2},
                {"closure_fidelity_one", f.closure_fidelity_one},
                {"f_cn", ratio_json(f.f_cn)}};
}

json blocklength_json(const MaybeBlocklength& b) {
    json j;
    if (b.value)
        j["value"] = *b.value;
    else
        j["undefined"] = b.reason;
    return j;
}

std::string blocklength_str(const MaybeBlocklength& b) {
    return b.value ? fmt3(*b.value) : "undefined (" + b.reason + ")";
}

int cmd_overlap(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (int rc = need(err, !cfg.kb_path.empty(), "--kb")) return rc;
    if (int rc = need(err, !cfg.receiver_paths.empty(), "--receiver")) return rc;
    const Loaded l = load_inputs(cfg);
    std::optional<double> capacity;
    if (!cfg.channel_path.empty())
        capacity = shannon_capacity(load_channel(cfg.channel_path).w, cfg.tol).bits;

    static const char* kCountNames[7] = {"common",    "lost",      "surplus",
                                         "core_common", "core_lost", "surplus_derivable",
                                         "surplus_novel"};

    json jout;
    jout["receivers"] = json::array();
    if (cfg.format == "csv") {
        out << "receiver,common,lost,surplus,core_common,core_lost,surplus_derivable,"
               "surplus_novel,f1,f1_strong,f2,f_cn,rho_atom\n";
    }
    std::vector<AtomSet> vocabs;
    for (const auto& [path, kb] : l.receivers) {
        vocabs.push_back(kb.atoms);
        const OverlapDecomposition d = overlap(l.sender, kb.atoms, l.ps, cfg.guard);
        const PairFeasibility f = feasibility(l.sender, kb.atoms, l.ps, cfg.guard);
        const Ratio rho = core_preservation_ratio(l.sender, kb.atoms, l.ps, cfg.guard);
        const auto counts = d.counts();
        if (cfg.format == "json") {
            json r;
            r["path"] = path;
            for (int i = 0; i < 7; ++i) r["counts"][kCountNames[i]] = counts[i];
            r["feasibility"] = feasibility_json(f);
            r["rho_atom"] = ratio_json(rho);
            if (capacity) {
                const BlocklengthEstimate b =
                    blocklengths(l.sender, kb.atoms, *capacity, l.ps, cfg.guard);
                r["n_hamming"] = blocklength_json(b.n_hamming);
                r["n_closure"] = blocklength_json(b.n_closure);
                if (b.ratio) r["ratio"] = *b.ratio;
            }
            jout["receivers"].push_back(r);
        } else if (cfg.format == "csv") {
            out << path;
            for (int i = 0; i < 7; ++i) out << ',' << counts[i];
            out << ',' << f.f1 << ',' << f.f1_strong << ',' << f.f2 << ',' << f.f_cn.str() << ','
                << rho.str() << "\n";
        } else {
            out << "receiver: " << path << "\n";
            out << " ";
            for (int i = 0; i < 7; ++i) out << " " << kCountNames[i] << " " << counts[i];
            out << "\n";
            out << "  f1 " << (f.f1 ? "true" : "false") << "  f1_strong "
                << (f.f1_strong ? "true" : "false") << "  f2 " << (f.f2 ? "true" : "false")
                << "  closure_fidelity " << ratio_str(f.f_cn) << "\n";
            out << "  rho_atom " << ratio_str(rho) << "\n";
            if (capacity) {
                const BlocklengthEstimate b =
                    blocklengths(l.sender, kb.atoms, *capacity, l.ps, cfg.guard);
                out << "  n_hamming " << blocklength_str(b.n_hamming) << "  n_closure "
                    << blocklength_str(b.n_closure);
                if (b.ratio) out << "  ratio " << fmt3(*b.ratio);
                out << "\n";
            }
        }
    }
    if (capacity) {
        const BroadcastAnalysis bc =
            broadcast_analysis(l.sender, vocabs, *capacity, l.ps, cfg.guard);
        if (cfg.format == "json") {
            json b;
            b["capacity_bits"] = *capacity;
            b["bottlenecks"] = bc.bottlenecks;
            b["n_closure"] = blocklength_json(bc.n_closure);
            jout["broadcast"] = b;
        } else if (cfg.format == "text") {
            out << "broadcast: capacity " << fmt3(*capacity) << " bits; bottlenecks:";
            if (bc.bottlenecks.empty()) out << " none";
            for (std::size_t i : bc.bottlenecks) out << " " << l.receivers[i].first;
            out << "; shared n_closure " << blocklength_str(bc.n_closure) << "\n";
        }
    }
    if (cfg.format == "json") out << jout.dump(2) << "\n";
    return kExitOk;
}

// --- invariants --------------------------------------------------------

int cmd_invariants(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (int rc = need(err, !cfg.kb_path.empty(), "--kb")) return rc;
    if (int rc = need(err, !cfg.receiver_paths.empty(), "--receiver")) return rc;
    if (int rc = need(err, !cfg.channel_path.empty(), "--channel")) return rc;
    const Loaded l = load_inputs(cfg);
    const ChannelSpec spec = load_channel(cfg.channel_path);
    const Distribution uniform = Distribution::uniform(atom_labels(l.sender.atoms));

    json jout = json::array();
    bool csv_header_done = false;
    for (const auto& [path, kb] : l.receivers) {
        const Pipeline pipe = build_pipeline(l.sender, kb.atoms, spec, l.ps, cfg.guard);
        const InvariantReport rep =
            invariant_report(pipe.chan, l.ps, spec.w, uniform, cfg.guard);
        if (cfg.format == "json") {
            json r = rep.to_json();
            r["receiver"] = path;
            jout.push_back(r);
        } else if (cfg.format == "csv") {
            const std::string csv = rep.to_csv();
            const auto nl = csv.find('\n');
            if (!csv_header_done) {
                out << "receiver," << csv.substr(0, nl + 1);
                csv_header_done = true;
            }
            out << path << ',' << csv.substr(nl + 1);
        } else {
            out << "receiver: " << path << "\n";
            out << "  atomicity " << rep.atomicity << "  max_depth " << rep.max_depth << "\n";
            out << "  rho_atom " << ratio_str(rep.rho_atom) << "  closure_fidelity "
                << ratio_str(rep.f_cn) << "\n";
            out << "  phi_atom " << fmt3(rep.phi_atom) << "  psi_plus " << fmt3(rep.psi_plus)
                << "\n";
            out << "  fidelity_index " << fmt3(rep.fidelity_index) << "  depth_expansion "
                << fmt3(rep.depth_expansion) << "\n";
            out << "  delta_A " << rep.delta_A << "  delta_Dd " << rep.delta_Dd << "\n";
            out << "  carrier_capacity " << fmt3(rep.shannon_capacity) << "  semantic_capacity "
                << fmt3(rep.semantic_capacity) << " (" << rep.semantic_capacity_mode << ")\n";
            out << "  semantic_mi " << fmt3(rep.semantic_mi) << "  fano_lower "
                << fmt3(rep.fano_lower) << "\n";
        }
    }
    if (cfg.format == "json") out << jout.dump(2) << "\n";
    return kExitOk;
}

// --- capacity ----------------------------------------------------------

int cmd_capacity(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (int rc = need(err, !cfg.channel_path.empty(), "--channel")) return rc;
    const ChannelSpec spec = load_channel(cfg.channel_path);
    const CapacityResult cap = shannon_capacity(spec.w, cfg.tol);

    std::optional<SemanticCapacityResult> sem;
    if (!cfg.kb_path.empty() && !cfg.receiver_paths.empty()) {
        const Loaded l = load_inputs(cfg);
        const auto s_labels = atom_labels(l.sender.atoms);
        const auto r_labels = atom_labels(l.receivers.front().second.atoms);
        sem = semantic_capacity(s_labels, r_labels, spec.w,
                                EnablingMap::full(s_labels, spec.w.input_space),
                                EnablingMap::full(spec.w.output_space, r_labels));
    }

    if (cfg.format == "json") {
        json j;
        j["capacity_bits"] = cap.bits;
        j["iterations"] = cap.iterations;
        j["gap_bits"] = cap.gap_bits;
        if (spec.q_symmetric) j["closed_form_bits"] = q_symmetric_capacity(spec.q, spec.p);
        if (sem) {
            j["semantic_capacity_bits"] = sem->bits;
            j["semantic_capacity_mode"] =
                sem->mode == SemanticCapacityResult::Mode::exact_enumeration ? "exact_enumeration"
                : sem->mode == SemanticCapacityResult::Mode::equality_theorem
                    ? "equality_theorem"
                    : "full_enabling_shortcut";
            j["semantic_capacity_note"] = sem->note;
        }
        out << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "key,value\n";
        out << "capacity_bits," << std::setprecision(17) << cap.bits << "\n";
        out << "iterations," << cap.iterations << "\n";
        if (spec.q_symmetric)
            out << "closed_form_bits," << q_symmetric_capacity(spec.q, spec.p) << "\n";
        if (sem) out << "semantic_capacity_bits," << sem->bits << "\n";
    } else {
        out << "carrier capacity: " << fmt3(cap.bits) << " bits (" << cap.iterations
            << " iterations, gap " << cap.gap_bits << ")\n";
        if (spec.q_symmetric)
            out << "closed form: " << fmt3(q_symmetric_capacity(spec.q, spec.p)) << " bits\n";
        if (sem) out << "semantic capacity: " << fmt3(sem->bits) << " bits — " << sem->note << "\n";
    }
    return kExitOk;
}

// --- simulate ----------------------------------------------------------

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (int rc = need(err, !cfg.kb_path.empty(), "--kb")) return rc;
    if (int rc = need(err, !cfg.receiver_paths.empty(), "--receiver")) return rc;
    if (int rc = need(err, !cfg.channel_path.empty(), "--channel")) return rc;
    const Loaded l = load_inputs(cfg);
    const ChannelSpec spec = load_channel(cfg.channel_path);
    const AtomSet& vocab = l.receivers.front().second.atoms;

    json jout = json::array();
    if (cfg.format == "csv") out << SimResult::csv_header() << "\n";
    for (int n : cfg.block_lengths) {
        const BlockCode code =
            build_two_layer_code(l.sender, vocab, spec.w, n, cfg.seed, l.ps, cfg.guard);
        const SimResult res = simulate(code, spec.w, cfg.trials, cfg.seed, l.ps, cfg.guard);
        std::optional<ConverseCheck> conv;
        if (res.p_e_hat < 1.0) conv = converse_check(code, spec.w, res.p_e_hat);
        if (cfg.format == "json") {
            json r;
            r["n"] = res.n;
            r["trials"] = res.trials;
            r["rate"] = code.rate;
            r["p_e"] = res.p_e_hat;
            r["p_e_cn"] = res.p_e_cn_hat;
            r["ci"] = res.ci_halfwidth;
            r["seed"] = res.seed;
            r["redundant_closure_errors"] = res.redundant_closure_errors;
            if (conv)
                r["converse"] = json{{"ok", conv->ok},
                                     {"lhs_bits", conv->lhs_bits},
                                     {"rhs_bits", conv->rhs_bits},
                                     {"slack", conv->slack}};
            jout.push_back(r);
        } else if (cfg.format == "csv") {
            out << res.to_csv_row() << "\n";
        } else {
            out << "n=" << res.n << " trials=" << res.trials << " p_e=" << fmt3(res.p_e_hat)
                << " p_e_cn=" << fmt3(res.p_e_cn_hat) << " ci=" << fmt3(res.ci_halfwidth)
                << " redundant_cn_errors=" << res.redundant_closure_errors;
            if (conv)
                out << " converse: " << fmt3(conv->lhs_bits) << " <= " << fmt3(conv->rhs_bits)
                    << (conv->ok ? " ok" : " VIOLATED");
            out << "\n";
        }
    }
    if (cfg.format == "json") out << jout.dump(2) << "\n";
    return kExitOk;
}

// --- example -----------------------------------------------------------

struct GoldenCheck {
    std::string name;
    std::string expected;
    std::string actual;
    bool ok = false;
};

template <typename T>
void check_eq(std::vector<GoldenCheck>& gs, const std::string& name, const T& expected,
              const T& actual) {
    std::ostringstream e, a;
    e << expected;
    a << actual;
    gs.push_back({name, e.str(), a.str(), expected == actual});
}

void check_near(std::vector<GoldenCheck>& gs, const std::string& name, double expected,
                double actual, double tol) {
    std::ostringstream e, a;
    e << std::setprecision(12) << expected;
    a << std::setprecision(12) << actual;
    gs.push_back({name, e.str(), a.str(), std::abs(expected - actual) <= tol});
}

int cmd_example(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::string dir = cfg.data_dir.empty() ? SEMCHAN_DATA_DIR : cfg.data_dir;
    RunConfig local = cfg;
    local.kb_path = dir + "/sender1.kb";
    local.receiver_paths = {dir + "/receiver2.kb", dir + "/receiver2p.kb", dir + "/receiver3.kb"};
    local.channel_path = dir + "/channel_q10.json";
    const Loaded l = load_inputs(local);
    const ChannelSpec spec = load_channel(local.channel_path);

    const ClosureStrata cs = closure_strata(l.sender.atoms, l.ps, cfg.guard);
    const CoreAnalysis core = extract_core(l.sender, l.ps, cfg.guard);
    const double cap = shannon_capacity(spec.w, cfg.tol).bits;

    std::vector<GoldenCheck> gs;
    check_eq(gs, "closure_size", std::size_t{10}, cs.atoms.size());
    check_eq(gs, "atomicity", 4, core.atomicity);
    check_eq(gs, "max_depth", 2, core.max_depth);
    {
        // strata of the derivation from the irredundant core
        const ClosureStrata core_cs = closure_strata(core.core, l.ps, cfg.guard);
        std::vector<std::size_t> sizes;
        for (const auto& f : core_cs.frontiers) sizes.push_back(f.size());
        check_eq(gs, "strata_sizes", std::string("4;4;2"), [&] {
            std::string s;
            for (std::size_t i = 0; i < sizes.size(); ++i)
                s += (i ? ";" : "") + std::to_string(sizes[i]);
            return s;
        }());
    }
    check_eq(gs, "core", std::string("Edge(a,b) Edge(a,c) Edge(b,c) Edge(c,d)"),
             join(atom_labels(core.core)));

    const std::array<std::array<std::size_t, 7>, 3> expected_counts = {{
        {7, 1, 2, 3, 1, 1, 1},
        {8, 0, 1, 4, 0, 1, 0},
        {4, 4, 2, 4, 0, 2, 0},
    }};
    const std::array<Ratio, 3> expected_fcn = {Ratio::of(3, 7), Ratio::of(1, 1), Ratio::of(1, 1)};
    const std::array<Ratio, 3> expected_rho = {Ratio::of(3, 4), Ratio::of(1, 1), Ratio::of(1, 1)};
    const std::array<std::pair<int, int>, 3> expected_shift = {{{0, 1}, {0, 0}, {0, 0}}};
    const std::array<double, 3> expected_phi = {0.0, 0.9, 0.9};

    std::vector<AtomSet> vocabs;
    for (std::size_t i = 0; i < l.receivers.size(); ++i) {
        const auto& [path, kb] = l.receivers[i];
        vocabs.push_back(kb.atoms);
        const std::string label = i == 0 ? "r2" : i == 1 ? "r2p" : "r3";
        const OverlapDecomposition d = overlap(l.sender, kb.atoms, l.ps, cfg.guard);
        {
            std::ostringstream e, a;
            for (std::size_t k = 0; k < 7; ++k) {
                e << (k ? "," : "") << expected_counts[i][k];
                a << (k ? "," : "") << d.counts()[k];
            }
            gs.push_back({label + ".counts", e.str(), a.str(), e.str() == a.str()});
        }
        const PairFeasibility f = feasibility(l.sender, kb.atoms, l.ps, cfg.guard);
        check_eq(gs, label + ".f_cn", expected_fcn[i].str(), f.f_cn.str());
        check_eq(gs, label + ".rho_atom", expected_rho[i].str(),
                 core_preservation_ratio(l.sender, kb.atoms, l.ps, cfg.guard).str());
        const StructuralShifts sh = structural_shifts(l.sender, kb.atoms, l.ps, cfg.guard);
        check_eq(gs, label + ".delta_A", expected_shift[i].first, sh.delta_A);
        check_eq(gs, label + ".delta_Dd", expected_shift[i].second, sh.delta_Dd);

        const Pipeline pipe = build_pipeline(l.sender, kb.atoms, spec, l.ps, cfg.guard);
        const NoisePairIndices noise = noise_pair_indices(pipe.chan, core.core);
        check_near(gs, label + ".phi_atom", expected_phi[i], noise.phi_atom, 1e-9);
        check_near(gs, label + ".psi_plus", 0.0, noise.psi_plus, 1e-12);
    }

    check_near(gs, "carrier_capacity", q_symmetric_capacity(spec.q, spec.p), cap, 1e-6);

    const BlocklengthEstimate b2p =
        blocklengths(l.sender, l.receivers[1].second.atoms, cap, l.ps, cfg.guard);
    check_eq(gs, "r2p.n_hamming_defined", true, b2p.n_hamming.value.has_value());
    check_eq(gs, "r2p.n_closure_defined", true, b2p.n_closure.value.has_value());
    if (b2p.n_hamming.value) check_near(gs, "r2p.n_hamming", 3.0 / cap, *b2p.n_hamming.value, 1e-9);
    if (b2p.n_closure.value) check_near(gs, "r2p.n_closure", 2.0 / cap, *b2p.n_closure.value, 1e-9);
    if (b2p.ratio) check_near(gs, "r2p.ratio", 2.0 / 3.0, *b2p.ratio, 1e-9);

    const BroadcastAnalysis bc = broadcast_analysis(l.sender, vocabs, cap, l.ps, cfg.guard);
    check_eq(gs, "broadcast.bottlenecks", std::string("0"), [&] {
        std::string s;
        for (std::size_t i = 0; i < bc.bottlenecks.size(); ++i)
            s += (i ? "," : "") + std::to_string(bc.bottlenecks[i]);
        return s;
    }());
    check_eq(gs, "broadcast.n_closure_defined", true, bc.n_closure.value.has_value());
    if (bc.n_closure.value)
        check_near(gs, "broadcast.n_closure", 2.0 / cap, *bc.n_closure.value, 1e-9);

    // Coding runs against the superset receiver, which holds the whole core.
    std::vector<SimResult> sims;
    for (int n : cfg.block_lengths) {
        const BlockCode code = build_two_layer_code(l.sender, l.receivers[1].second.atoms, spec.w,
                                                    n, cfg.seed, l.ps, cfg.guard);
        sims.push_back(simulate(code, spec.w, cfg.trials, cfg.seed, l.ps, cfg.guard));
        check_eq(gs, "sim.n" + std::to_string(n) + ".redundant_closure_errors", 0L,
                 sims.back().redundant_closure_errors);
    }

    if (cfg.format == "json") {
        json j;
        j["checks"] = json::array();
        for (const auto& g : gs)
            j["checks"].push_back(
                {{"name", g.name}, {"expected", g.expected}, {"actual", g.actual}, {"ok", g.ok}});
        json sim = json::array();
        for (const auto& r : sims)
            sim.push_back({{"n", r.n},
                           {"trials", r.trials},
                           {"p_e", r.p_e_hat},
                           {"p_e_cn", r.p_e_cn_hat},
                           {"ci", r.ci_halfwidth},
                           {"seed", r.seed}});
        j["simulation"] = sim;
        out << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "check,expected,actual,ok\n";
        for (const auto& g : gs)
            out << g.name << ',' << g.expected << ',' << g.actual << ',' << (g.ok ? 1 : 0) << "\n";
    } else {
        for (const auto& g : gs)
            out << (g.ok ? "[ok]      " : "[MISMATCH] ") << g.name << ": expected " << g.expected
                << ", got " << g.actual << "\n";
        out << SimResult::csv_header() << "\n";
        for (const auto& r : sims) out << r.to_csv_row() << "\n";
    }

    for (const auto& g : gs)
        if (!g.ok) {
            err << "golden mismatch: " << g.name << " expected " << g.expected << " got "
                << g.actual << "\n";
            return kExitGoldenMismatch;
        }
    return kExitOk;
}

} // namespace

RunConfig::RunConfig() : guard(kDefaultGuard) {
    if (const char* g = std::getenv("SEMCHAN_GUARD")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(g, &end, 10);
        if (end && *end == '\0' && v > 0) guard = v;
    }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text") {
            err << "usage: unknown format: " << cfg.format << "\n";
            return kExitUsage;
        }
        if (cfg.command == "analyze") return cmd_analyze(cfg, out, err);
        if (cfg.command == "overlap") return cmd_overlap(cfg, out, err);
        if (cfg.command == "invariants") return cmd_invariants(cfg, out, err);
        if (cfg.command == "capacity") return cmd_capacity(cfg, out, err);
        if (cfg.command == "simulate") return cmd_simulate(cfg, out, err);
        if (cfg.command == "example") return cmd_example(cfg, out, err);
        err << "usage: unknown command: " << cfg.command << "\n";
        return kExitUsage;
    } catch (const parse_error& e) {
        err << "parse error";
        if (e.line() > 0) {
            err << " at line " << e.line();
            if (e.col() > 0) err << ", col " << e.col();
        }
        err << ": " << e.what() << "\n";
        return kExitParse;
    } catch (const guard_error& e) {
        err << "guard exceeded: " << e.what() << "\n";
        return kExitGuard;
    } catch (const convergence_error& e) {
        err << "no convergence: " << e.what() << " (gap " << e.gap() << ")\n";
        return kExitGuard;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace semchan::cli
