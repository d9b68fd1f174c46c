#pragma once

// The abelcp command line: validate | analyze | descend | graded | demo.
// Exit codes: 0 pass, 1 mathematical failure, 2 I/O or format error, 3 budget exhausted.

#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "abelcp/crossed_product.hpp"
#include "abelcp/error.hpp"
#include "abelcp/extension_lab.hpp"
#include "abelcp/graded_val.hpp"
#include "abelcp/io.hpp"
#include "abelcp/twisted_poly.hpp"

#ifndef ABELCP_FIXTURE_DIR
#define ABELCP_FIXTURE_DIR "fixtures"
#endif

namespace abelcp::cli {

enum ExitCode : int { kPass = 0, kMathFailure = 1, kIoFailure = 2, kBudgetExhausted = 3 };

struct RunConfig {
    std::string command;
    std::string fixture;
    std::string composite;
    std::string witness;
    std::string fixture_dir = ABELCP_FIXTURE_DIR;
    long budget_l = -1;  // maximum number of candidates; negative means the full default set
    long exponent = 0;
    std::uint64_t seed = 0x5eed;
    std::string format = "table";
};

struct Row {
    std::string check;
    std::string status;  // PASS, FAIL, WARN, INFO, EXHAUSTED
    std::string detail;
};

struct Section {
    std::string title;
    std::vector<Row> rows;
};

class Output {
public:
    Section& section(std::string title) {
        sections_.push_back({std::move(title), {}});
        return sections_.back();
    }

    static void add(Section& s, std::string check, bool ok, std::string detail = {}) {
        s.rows.push_back({std::move(check), ok ? "PASS" : "FAIL", std::move(detail)});
    }
    static void info(Section& s, std::string check, std::string detail) {
        s.rows.push_back({std::move(check), "INFO", std::move(detail)});
    }

    bool any_failure() const {
        for (const auto& s : sections_)
            for (const auto& r : s.rows)
                if (r.status == "FAIL") return true;
        return false;
    }

    const std::vector<Section>& sections() const { return sections_; }

    void render(std::ostream& out, const RunConfig& cfg, int code) const {
        if (cfg.format == "report") {
            nlohmann::json secs = nlohmann::json::array();
            for (const auto& s : sections_) {
                nlohmann::json rows = nlohmann::json::array();
                for (const auto& r : s.rows) rows.push_back({{"check", r.check}, {"status", r.status}, {"detail", r.detail}});
                secs.push_back({{"title", s.title}, {"rows", std::move(rows)}});
            }
            nlohmann::json doc{{"schema", "abelcp/report/1"},
                               {"command", cfg.command},
                               {"seed", cfg.seed},
                               {"config",
                                {{"fixture", cfg.fixture},
                                 {"composite", cfg.composite},
                                 {"witness", cfg.witness},
                                 {"budget_l", cfg.budget_l},
                                 {"exponent", cfg.exponent}}},
                               {"sections", std::move(secs)},
                               {"exit", code}};
            out << doc.dump(2) << '\n';
            return;
        }
        out << "abelcp " << cfg.command << " (seed " << cfg.seed << ")\n";
        for (const auto& s : sections_) {
            out << "\n== " << s.title << " ==\n";
            for (const auto& r : s.rows) {
                out << "  [" << r.status << "] " << r.check;
                if (!r.detail.empty()) out << ": " << r.detail;
                out << '\n';
            }
        }
        out << "\nexit " << code << '\n';
    }

private:
    std::vector<Section> sections_;
};

inline std::string format_witness(const GaloisExtension& K, const StrongDegeneracyWitness& W) {
    std::string s = "m=" + to_string(W.m) + ", l=" + K.format(W.l) + ", x=(";
    for (std::size_t i = 0; i < W.x.size(); ++i) s += (i ? ", " : "") + K.format(W.x[i]);
    return s + ")";
}

inline std::string format_pair(const GaloisExtension& K, const DegeneracyPairWitness& W) {
    return "m=" + to_string(W.m) + ", n=" + to_string(W.n) + ", a=" + K.format(W.a) + ", b=" + K.format(W.b);
}

inline std::vector<FieldElement> candidates_for(const GaloisExtension& K, const RunConfig& cfg) {
    auto c = default_candidates(K);
    if (cfg.budget_l >= 0 && static_cast<std::size_t>(cfg.budget_l) < c.size()) c.resize(static_cast<std::size_t>(cfg.budget_l));
    return c;
}

/// The prime p when G is a p-group, else 0.
inline long group_prime(const GroupShape& G) {
    for (long p = 2; p <= static_cast<long>(G.size()); ++p)
        if (is_prime(p) && G.size() % static_cast<std::size_t>(p) == 0) return G.is_p_group(p) ? p : 0;
    return 0;
}

// ---------------------------------------------------------------------------

inline void report_witness_chain(Section& s, const CrossedProductAlgebra& A, const StrongDegeneracyWitness& W,
                                 const std::string& label) {
    const auto& K = A.ext();
    const bool ok = check_strong_witness(A, W);
    Output::add(s, label + " check", ok, format_witness(K, W));
    if (!ok) return;
    const long q = A.group().order_of(W.m);
    const auto y = witness_to_central_element(A, W);
    const auto yq = A.pow(y, q);
    Output::add(s, label + " central element", A.is_central(yq) && !A.is_central(y),
                A.format(y) + ", power " + std::to_string(q) + " = " + A.format(yq));
    const auto back = central_element_to_witness(A, W.l, W.m);
    Output::add(s, label + " round trip", check_strong_witness(A, back), format_witness(K, back));
}

inline int cmd_validate(const RunConfig& cfg, Output& out) {
    const auto fx = io::load_fixture(cfg.fixture);
    const auto& K = *fx.field;
    auto& fs = out.section("field " + fx.name);
    FieldValidationOptions opts;
    opts.seed = cfg.seed;
    const auto frep = K.validate(opts);
    for (const auto& c : frep.checks) Output::add(fs, c.name, c.passed, c.detail);
    if (!frep.passed()) return kMathFailure;

    auto& rs = out.section("relations");
    ValidationReport rrep;
    try {
        rrep = validate_relations(K, fx.cocycle);
    } catch (const Error& e) {
        Output::add(rs, "nonzero entries", false, e.what());
        return kMathFailure;
    }
    for (const auto& c : rrep.checks) {
        if (c.advisory)
            rs.rows.push_back({c.name, c.passed ? "PASS" : "WARN", c.detail});
        else
            Output::add(rs, c.name, c.passed, c.detail);
    }
    if (!rrep.passed()) return kMathFailure;

    const CrossedProductAlgebra A(fx.field, fx.cocycle);
    std::string failure;
    const auto triples = A.verify_cocycle_identity(&failure);
    Output::add(rs, "cocycle identity", failure.empty(),
                failure.empty() ? std::to_string(triples) + " triples" : failure);

    if (!cfg.composite.empty()) {
        auto& cs = out.section("composite");
        const auto data = io::load_composite(cfg.composite);
        try {
            const CompositeExtension comp(fx.field, data);
            for (const auto& c : comp.report().checks) Output::add(cs, c.name, c.passed, c.detail);
        } catch (const Error& e) {
            Output::add(cs, "composite", false, e.what());
        }
    }
    return out.any_failure() ? kMathFailure : kPass;
}

inline std::optional<StrongDegeneracyWitness> base_witness_from_file(const RunConfig& cfg, const GaloisExtension& K) {
    if (cfg.witness.empty()) return std::nullopt;
    const auto wf = io::load_witness_file(cfg.witness);
    if (wf.over != "base") fail(ErrorKind::MalformedInput, "analyze expects a witness over the base field");
    return io::witness_from(K, wf.witness);
}

inline int cmd_analyze(const RunConfig& cfg, Output& out) {
    const auto fx = io::load_fixture(cfg.fixture);
    const auto extra = base_witness_from_file(cfg, *fx.field);
    const auto A = std::make_shared<const CrossedProductAlgebra>(fx.field, fx.cocycle);
    const auto& K = A->ext();
    const auto& G = A->group();
    const auto cands = candidates_for(K, cfg);

    auto& ss = out.section("strong degeneracy " + fx.name);
    if (G.is_cyclic()) {
        Output::add(ss, "precondition", false, "G must be noncyclic for degeneracy APIs");
        return kMathFailure;
    }
    const auto found = search_strong_degeneracy(*A, cands);
    Output::info(ss, "search space", std::to_string(found.exponents_scanned) + " prime-order exponents x " +
                                         std::to_string(cands.size()) + " candidates, " +
                                         std::to_string(found.pairs_tested) + " pairs tested");
    if (found.witness) {
        Output::add(ss, "strongly degenerate", true, "witness " + format_witness(K, *found.witness));
        report_witness_chain(ss, *A, *found.witness, "found witness");
    } else {
        ss.rows.push_back({"search", "EXHAUSTED", kExhaustionDisclaimer});
    }

    std::vector<StrongDegeneracyWitness> stored = fx.witnesses;
    if (extra) stored.push_back(*extra);
    if (!stored.empty()) {
        auto& ws = out.section("stored witnesses");
        for (std::size_t i = 0; i < stored.size(); ++i)
            report_witness_chain(ws, *A, stored[i], "witness " + std::to_string(i + 1));
    }

    auto& ps = out.section("degeneracy pairs");
    const auto pairs = search_pair_degeneracy(*A, cands, cands.size() * cands.size());
    if (pairs.witness)
        Output::add(ps, pairs.used_rank2_criterion ? "u_12 in I[G]K*" : "pair witness", true, format_pair(K, *pairs.witness));
    else
        ps.rows.push_back({"pair search", "EXHAUSTED", kExhaustionDisclaimer});
    for (const auto& W : stored) {
        if (!check_strong_witness(*A, W)) continue;
        const auto P = strong_to_pair_witness(*A, W);
        Output::add(ps, "pair from strong witness", check_pair_witness(*A, P), format_pair(K, P));
    }

    auto& gs = out.section("generic crossed product");
    const long p = group_prime(G);
    if (p == 0) {
        Output::info(gs, "skipped", "G is not a p-group");
    } else {
        const TwistedRing R(A);
        const auto mono = monomial_p_central_search(R, p, cands);
        if (mono.monomial)
            Output::add(gs, "p-power central monomial", true,
                        R.format(*mono.monomial) + ", power " + std::to_string(p) + " = " +
                            R.format(R.reduce(R.pow(*mono.monomial, p))));
        else
            gs.rows.push_back({"monomial search", "EXHAUSTED", kExhaustionDisclaimer});
        for (const auto& W : stored) {
            if (G.order_of(W.m) != p || !check_strong_witness(*A, W)) continue;
            const auto t = R.monomial(W.l, to_exponents(W.m));
            Output::add(gs, "witness image", R.is_p_power_central(t, p),
                        R.format(t) + ", power " + std::to_string(p) + " = " + R.format(R.reduce(R.pow(t, p))));
        }
    }

    if (out.any_failure()) return kMathFailure;
    return found.witness ? kPass : kBudgetExhausted;
}

inline int cmd_descend(const RunConfig& cfg, Output& out) {
    if (cfg.witness.empty()) fail(ErrorKind::MalformedInput, "descend needs --witness");
    if (cfg.exponent <= 0) fail(ErrorKind::MalformedInput, "descend needs --exponent e > 0");
    const auto wf = io::load_witness_file(cfg.witness);
    const auto fx = cfg.fixture.empty() ? wf.fixture : io::load_fixture(cfg.fixture);
    std::optional<io::CompositeData> cd = wf.composite;
    if (!cfg.composite.empty()) cd = io::load_composite(cfg.composite);
    if (!cd) fail(ErrorKind::MalformedInput, "descend needs a composite (--composite or inside the witness file)");

    auto& s = out.section("descent " + fx.name + " along " + cd->name);
    const auto base = std::make_shared<const CrossedProductAlgebra>(fx.field, fx.cocycle);
    std::optional<CompositeExtension> comp;
    try {
        comp.emplace(fx.field, *cd);
    } catch (const Error& e) {
        Output::add(s, "stage 1 (composite)", false, e.what());
        Output::info(s, "aborted", "stage 1 (composite)");
        return kMathFailure;
    }
    Output::info(s, "composite", "[KE:K] = " + std::to_string(comp->t()) + ", dim KE = " + std::to_string(comp->KE().dim()));
    StrongDegeneracyWitness W;
    if (wf.over == "composite") {
        W = io::witness_from(comp->KE(), wf.witness);
    } else {
        W = io::witness_from(*fx.field, wf.witness);
        W.l = comp->embed(W.l);
        for (auto& x : W.x) x = comp->embed(x);
    }
    const auto rep = descend_chain(*comp, *base, W, cfg.exponent);
    for (std::size_t i = 0; i < rep.stages.size(); ++i)
        Output::add(s, "stage " + std::to_string(i + 1) + " (" + rep.stages[i].name + ")", rep.stages[i].passed,
                    rep.stages[i].detail);
    if (!rep.passed()) {
        const auto& last = rep.stages.back();
        Output::info(s, "aborted", "stage " + std::to_string(rep.stages.size()) + " (" + last.name + ")");
        return kMathFailure;
    }
    const auto& Kb = base->ext();
    Output::info(s, "descended witness", format_witness(Kb, *rep.descended));
    Output::info(s, "powered witness", format_witness(Kb, *rep.powered));
    if (const auto g = comp->norm_by_group(W.l))
        Output::add(s, "norm cross-check", *g == comp->norm(W.l), "determinant and Galois-product norms of l");
    Output::info(s, "not constructed", kDescentGap);
    return kPass;
}

inline int cmd_graded(const RunConfig& cfg, Output& out) {
    const auto fx = io::load_fixture(cfg.fixture);
    const auto A = std::make_shared<const CrossedProductAlgebra>(fx.field, fx.cocycle);
    const GradedContext ctx(A);
    const auto& K = A->ext();
    const auto& G = A->group();

    auto& ss = out.section("semiramification " + fx.name);
    SemiramificationReport sr;
    try {
        sr = semiramification_report(ctx);
    } catch (const Error& e) {
        Output::add(ss, "rejected", false, e.what());
        return kMathFailure;
    }
    Output::add(ss, "[D-bar:F-bar] = |Gamma_D:Gamma_F| = sqrt([D:F])", sr.passed,
                std::to_string(sr.residue_degree) + " = " + std::to_string(sr.value_index) + " = sqrt(" +
                    std::to_string(sr.algebra_dimension) + ")");
    Output::add(ss, "theta bijective", sr.theta_bijective);
    Output::add(ss, "theta additive", sr.theta_additive);
    Output::info(ss, "defectless", "assumed");

    auto& ts = out.section("theta");
    for (std::size_t i = 1; i < G.size(); ++i) {
        const auto g = G.element(i);
        const auto v = ctx.value_of(ctx.make(K.one(), g));
        Output::info(ts, "v(z^" + to_string(g) + ") = " + to_string(v), "theta = sigma^" + to_string(ctx.theta(v)));
    }

    auto& rs = out.section("residue cocycle");
    const auto res = ctx.residue_cocycle(ctx.standard_scalings());
    Output::add(rs, "relations", res.relations.passed());
    Output::add(rs, "round trip to (u, b)", res.data == A->cocycle());

    auto& is = out.section("prime power central homogeneous elements");
    for (std::size_t i = 0; i < fx.witnesses.size(); ++i) {
        const auto& W = fx.witnesses[i];
        if (!check_strong_witness(*A, W)) {
            Output::add(is, "witness " + std::to_string(i + 1), false, "does not check");
            continue;
        }
        const auto h = ctx.from_witness(W);
        const long q = G.order_of(W.m);
        const auto rep = ctx.qpower_central_check(h, q);
        Output::add(is, "witness " + std::to_string(i + 1) + " image", rep.central && !rep.in_gamma_F,
                    "value " + to_string(rep.value) + (rep.in_gamma_F ? " in" : " not in") + " Gamma_F, power " +
                        std::to_string(q) + " central: " + (rep.central ? "yes" : "no"));
        const auto back = ctx.to_witness(h);
        Output::add(is, "witness " + std::to_string(i + 1) + " back", check_strong_witness(*A, back), format_witness(K, back));
    }
    const auto audit = qpower_central_audit(ctx, candidates_for(K, cfg), cfg.budget_l < 0 ? 1000 : static_cast<std::size_t>(cfg.budget_l));
    if (audit.found)
        Output::info(is, "audit", "found " + K.format(audit.found->alpha) + " g(z^" + to_string(audit.found->m) + ") after " +
                                      std::to_string(audit.tested) + " tests");
    else
        Output::info(is, "audit", kAuditDisclaimer);

    auto& ps = out.section("commuting homogeneous pairs");
    for (std::size_t i = 0; i < fx.pairs.size(); ++i) {
        const auto& p = fx.pairs[i];
        const auto h1 = ctx.make(p.h1.alpha, p.h1.m, p.h1.w);
        const auto h2 = ctx.make(p.h2.alpha, p.h2.m, p.h2.w);
        const auto rep = ctx.pair_degeneracy_check(h1, h2);
        const DegeneracyPairWitness induced{ctx.theta(ctx.value_of(h1)), ctx.theta(ctx.value_of(h2)), K.inv(h2.alpha), h1.alpha};
        const bool agree = rep.degenerate == check_pair_witness(*A, induced);
        std::string detail = std::string(rep.noncyclic ? "noncyclic" : "cyclic") + ", " + (rep.commute ? "commuting" : "not commuting");
        if (rep.witness) detail += ", witness " + format_pair(K, *rep.witness);
        Output::add(ps, "pair " + std::to_string(i + 1), agree, detail);
    }
    return out.any_failure() ? kMathFailure : kPass;
}

inline int dispatch(const RunConfig& cfg, Output& out);

inline int cmd_demo(const RunConfig& cfg, Output& out) {
    int worst = kPass;
    auto run = [&](RunConfig sub) {
        sub.seed = cfg.seed;
        sub.budget_l = cfg.budget_l;
        const int code = dispatch(sub, out);
        if (code == kMathFailure || code == kIoFailure) worst = std::max(worst, code);
    };
    const std::string d = cfg.fixture_dir + "/";
    for (const char* name : {"instance_b.json", "instance_b3.json"}) {
        for (const char* cmd : {"validate", "analyze", "graded"}) {
            RunConfig sub;
            sub.command = cmd;
            sub.fixture = d + name;
            run(sub);
        }
    }
    RunConfig b;
    b.command = "descend";
    b.witness = d + "witness_b_cbrt2.json";
    b.exponent = 2;
    run(b);
    RunConfig b3;
    b3.command = "descend";
    b3.witness = d + "witness_b3_sqrt5.json";
    b3.exponent = 3;
    run(b3);
    return worst;
}

/// Runs one command; library errors become rows and exit codes.
inline int dispatch(const RunConfig& cfg, Output& out) {
    try {
        if (cfg.command == "validate") return cmd_validate(cfg, out);
        if (cfg.command == "analyze") return cmd_analyze(cfg, out);
        if (cfg.command == "descend") return cmd_descend(cfg, out);
        if (cfg.command == "graded") return cmd_graded(cfg, out);
        if (cfg.command == "demo") return cmd_demo(cfg, out);
        fail(ErrorKind::MalformedInput, "unknown command '" + cfg.command + "'");
    } catch (const Error& e) {
        auto& s = out.section("error");
        Output::add(s, cfg.command, false, e.what());
        return (e.kind() == ErrorKind::Io || e.kind() == ErrorKind::MalformedInput) ? kIoFailure : kMathFailure;
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact workbench for abelian crossed products", "abelcp"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "Seed for sampled checks")->capture_default_str();
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"table", "report"}))->capture_default_str();
    app.add_option("--budget-l", cfg.budget_l, "Maximum number of candidate elements l");
    app.add_option("--fixture-dir", cfg.fixture_dir, "Fixture directory for demo")->capture_default_str();

    auto* validate = app.add_subcommand("validate", "Validate a fixture's field and relations");
    validate->add_option("--fixture", cfg.fixture)->required();
    validate->add_option("--composite", cfg.composite);

    auto* analyze = app.add_subcommand("analyze", "Search for degeneracy witnesses");
    analyze->add_option("--fixture", cfg.fixture)->required();
    analyze->add_option("--witness", cfg.witness);
    analyze->add_option("--budget-l", cfg.budget_l);

    auto* descend = app.add_subcommand("descend", "Norm descent of a witness along a composite");
    descend->add_option("--fixture", cfg.fixture);
    descend->add_option("--composite", cfg.composite);
    descend->add_option("--witness", cfg.witness)->required();
    descend->add_option("--exponent,-e", cfg.exponent, "Exponent e of the algebra")->required();

    auto* graded = app.add_subcommand("graded", "Audit the graded skeleton");
    graded->add_option("--fixture", cfg.fixture)->required();
    graded->add_option("--budget-l", cfg.budget_l);

    auto* demo = app.add_subcommand("demo", "Run the shipped fixtures end to end");

    for (auto* sub : {validate, analyze, descend, graded, demo}) {
        sub->add_option("--seed", cfg.seed);
        sub->add_option("--format", cfg.format)->check(CLI::IsMember({"table", "report"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kIoFailure;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    Output output;
    const int code = dispatch(cfg, output);
    output.render(out, cfg, code);
    return code;
}

}  // namespace abelcp::cli
