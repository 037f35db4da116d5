#include "relcalc/cli.hpp"

#include <ostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "relcalc/errors.hpp"
#include "relcalc/io.hpp"

namespace relcalc {

namespace {

using io::Json;

struct Config {
    std::string format = "text";
    std::vector<std::string> inputs;
    std::string c;
    std::string kind;
    std::string output;
    std::string width = "1/64";
    std::size_t count = 200;
    std::string dims = "2..6";
    std::uint64_t seed = 0;
    std::size_t dim = 3;
};

std::string show(const Vector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
    return out + ")";
}

std::string show_pair(const Vector& el, std::size_t n) {
    const Vector f(el.begin(), el.begin() + static_cast<long>(n));
    const Vector g(el.begin() + static_cast<long>(n), el.end());
    return "{" + show(f) + ", " + show(g) + "}";
}

std::string show(const Subspace& w) {
    std::string out = "dim " + std::to_string(w.dim());
    for (const auto& v : w.vectors()) out += " " + show(v);
    return out;
}

Rational option_rational(const std::string& text, const char* flag) {
    try {
        return parse_rational(text);
    } catch (const ParseError& e) {
        throw ParseError(std::string(flag) + ": " + e.what());
    }
}

LinearRelation load(const std::string& path) {
    try {
        return io::relation_from_json(io::read_file(path));
    } catch (const ParseError& e) {
        const std::string what = e.what();
        if (what.rfind(path, 0) == 0) throw;
        throw ParseError(path + ": " + what);
    }
}

// A certified lower bound: the given one, or the lower end of the interval.
Rational bound_for(const LinearRelation& s, const Config& cfg) {
    if (!cfg.c.empty()) return option_rational(cfg.c, "--c");
    const QuadraticForm t = form_of_relation(s);
    if (t.domain().is_zero()) return Rational(0);
    return bound_bisect(t, option_rational(cfg.width, "--width")).lower;
}

void emit(std::ostream& out, const Config& cfg, const Json& j, const std::string& text) {
    if (cfg.format == "json") {
        out << io::dump(j);
    } else {
        out << text;
    }
}

int cmd_analyze(const Config& cfg, std::ostream& out) {
    const LinearRelation s = load(cfg.inputs.at(0));
    const RelationParts p = parts(s);
    const bool square = s.is_square();
    const bool sym = square && is_symmetric(s);
    const bool sa = square && is_selfadjoint(s);
    const bool w0 = square && numerical_range_zero(s);

    Json j;
    j["from"] = io::space_to_json(s.from());
    j["to"] = io::space_to_json(s.to());
    j["graph_dim"] = s.dim();
    j["parts"] = Json{{"dom", io::subspace_to_json(p.dom)},
                      {"ran", io::subspace_to_json(p.ran)},
                      {"ker", io::subspace_to_json(p.ker)},
                      {"mul", io::subspace_to_json(p.mul)}};
    j["symmetric"] = sym;
    j["selfadjoint"] = sa;
    j["numerical_range_zero"] = w0;

    std::string text = "relation: dim " + std::to_string(s.from().dim()) + " -> dim " + std::to_string(s.to().dim()) +
                       ", graph dim " + std::to_string(s.dim()) + "\n";
    text += "dom " + show(p.dom) + "\nran " + show(p.ran) + "\nker " + show(p.ker) + "\nmul " + show(p.mul) + "\n";
    text += std::string("symmetric: ") + (sym ? "true" : "false") + "\n";
    text += std::string("selfadjoint: ") + (sa ? "true" : "false") + "\n";
    text += std::string("W(S) = {0}: ") + (w0 ? "true" : "false") + "\n";

    const QuadraticForm t = sym ? form_of_relation(s) : QuadraticForm();
    if (sym && !t.domain().is_zero()) {
        const BoundInterval b = bound_bisect(t, option_rational(cfg.width, "--width"));
        j["bound"] = Json{{"lower", io::rational_to_json(b.lower)},
                          {"upper", io::rational_to_json(b.upper)},
                          {"exact", b.exact},
                          {"gamma_approximate", b.approximate}};
        text += "lower bound: certified " + to_string(b.lower) + ", fails at " + to_string(b.upper) +
                (b.exact ? " (exact bound " + to_string(b.lower) + ")" : "") + "\n";
        std::ostringstream est;
        est << b.approximate;
        text += "gamma estimate (approximate): " + est.str() + "\n";
    } else {
        j["bound"] = nullptr;
        text += sym ? "lower bound: none (dom S = {0})\n" : "lower bound: not defined (not symmetric)\n";
    }
    emit(out, cfg, j, text);
    return exit_ok;
}

const std::vector<std::string>& asserted(const std::string& kind) {
    static const std::vector<std::string> fri = {
        "friedrichs-product-equals-adjoint-route", "friedrichs-product-equals-weak-route", "selfadjoint",
        "extends-input", "bounded-below-by-c", "mul-equals-mul-adjoint"};
    static const std::vector<std::string> kre = {
        "krein-product-equals-weak-route", "krein-product-equals-inverse-route", "krein-product-equals-closure-route",
        "selfadjoint", "extends-input", "bounded-below-by-c", "mul-equals-range-intersection"};
    static const std::vector<std::string> wfri = [] {
        auto v = fri;
        v.push_back("weak-equals-full");
        return v;
    }();
    static const std::vector<std::string> wkre = [] {
        auto v = kre;
        v.push_back("weak-equals-full");
        return v;
    }();
    if (kind == "friedrichs") return fri;
    if (kind == "krein") return kre;
    if (kind == "weak-friedrichs") return wfri;
    return wkre;
}

int cmd_extend(const Config& cfg, std::ostream& out) {
    const LinearRelation s = load(cfg.inputs.at(0));
    const Rational c = bound_for(s, cfg);
    LinearRelation x;
    if (cfg.kind == "friedrichs") {
        x = friedrichs(s, c);
    } else if (cfg.kind == "krein") {
        x = krein(s, c);
    } else if (cfg.kind == "weak-friedrichs") {
        x = weak_friedrichs(s, c);
    } else {
        x = weak_krein(s, c);
    }
    Json j;
    j["kind"] = cfg.kind;
    j["c"] = io::rational_to_json(c);
    j["asserted"] = asserted(cfg.kind);
    std::string text = cfg.kind + " extension at c = " + to_string(c) + "\n";
    for (const auto& name : asserted(cfg.kind)) text += "  asserted " + name + "\n";
    if (!cfg.output.empty()) {
        io::write_file(cfg.output, io::relation_to_json(x));
        j["output"] = cfg.output;
        text += "written to " + cfg.output + "\n";
    } else {
        j["relation"] = io::relation_to_json(x);
        text += "graph basis:\n";
        for (const auto& v : x.graph().vectors()) text += "  " + show_pair(v, x.from().dim()) + "\n";
    }
    emit(out, cfg, j, text);
    return exit_ok;
}

int cmd_order(const Config& cfg, std::ostream& out) {
    const LinearRelation h = load(cfg.inputs.at(0));
    const LinearRelation k = load(cfg.inputs.at(1));
    const OrderResult hk = order_leq(h, k);
    const OrderResult kh = order_leq(k, h);
    const std::string verdict = hk.leq && kh.leq ? "equal" : hk.leq ? "leq" : kh.leq ? "geq" : "incomparable";
    Json j;
    j["order"] = verdict;
    emit(out, cfg, j, verdict + "\n");
    return exit_ok;
}

int cmd_extremal(const Config& cfg, std::ostream& out) {
    const LinearRelation h = load(cfg.inputs.at(0));
    const LinearRelation s = load(cfg.inputs.at(1));
    const Rational c = option_rational(cfg.c, "--c");
    const ExtremalDetail d = extremal_detail(h, s, c, friedrichs(s, c), krein(s, c));
    if (d.definitional != d.sandwich) throw CrossCheckError("extremality tests disagree");
    Json j;
    j["extremal"] = d.definitional;
    std::string text = std::string("extremal: ") + (d.definitional ? "true" : "false") + "\n";
    if (!d.definitional) {
        j["witness"] = io::vector_to_json(d.witness);
        j["value"] = io::rational_to_json(d.witness_value);
        text += "witness f = " + show(d.witness) + ", value " + to_string(d.witness_value) + "\n";
    }
    emit(out, cfg, j, text);
    return exit_ok;
}

std::string instance_text(const InstanceReport& r) {
    std::size_t passed = 0;
    for (const auto& c : r.checks) passed += c.passed ? 1 : 0;
    std::string text = "instance " + std::to_string(r.index) + " (dim " + std::to_string(r.spec.dim) + ", seed " +
                       std::to_string(r.spec.seed) + ", c = " + to_string(r.c) + "): " + std::to_string(passed) + "/" +
                       std::to_string(r.checks.size()) + " checks passed\n";
    for (const auto& c : r.checks) {
        if (c.passed) continue;
        text += "  FAILED " + c.name + ": " + (c.witness ? c.witness->detail : "") + "\n";
        if (!c.witness) continue;
        for (const auto& [label, v] : c.witness->vectors) text += "    " + label + " " + show(v) + "\n";
        for (const auto& [label, rel] : c.witness->relations) {
            text += "    " + label + ":";
            for (const auto& v : rel.graph().vectors()) text += " " + show_pair(v, rel.from().dim());
            text += "\n";
        }
    }
    return text;
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
    static const std::regex pattern(R"(^([0-9]+)\.\.([0-9]+)$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) throw ParseError("--dims: expected A..B, got \"" + text + "\"");
    const std::size_t lo = std::stoul(m[1].str());
    const std::size_t hi = std::stoul(m[2].str());
    if (lo < 2 || hi < lo) throw ParseError("--dims: need 2 <= A <= B");
    return {lo, hi};
}

int cmd_check(const Config& cfg, std::ostream& out) {
    SuiteReport report;
    if (!cfg.inputs.empty()) {
        const LinearRelation s = load(cfg.inputs.at(0));
        if (!is_symmetric(s)) throw PreconditionError("check: relation is not symmetric");
        InstanceReport r;
        r.spec.dim = s.from().dim();
        r.spec.seed = cfg.seed;
        r.s = s;
        r.c = bound_for(s, cfg);
        if (!is_nonneg_above(s, r.c).holds) {
            const auto bad = is_nonneg_above(s, r.c);
            throw CertificationError("lower bound " + to_string(r.c) + " fails on the graph",
                                     Vector(bad.witness.begin(), bad.witness.begin() + static_cast<long>(r.spec.dim)),
                                     bad.witness);
        }
        VerifyOptions opts;
        opts.seed = cfg.seed;
        r.checks = verify_all(s, r.c, opts);
        report.instances.push_back(std::move(r));
    } else {
        const auto [lo, hi] = parse_dims(cfg.dims);
        report = run_suite(cfg.count, lo, hi, cfg.seed);
    }
    const Json j = io::suite_to_json(report);
    if (!cfg.output.empty()) io::write_file(cfg.output, j);
    if (cfg.format == "json") {
        if (cfg.output.empty()) out << io::dump(j);
    } else {
        for (const auto& r : report.instances)
            if (!r.passed() || !cfg.inputs.empty()) out << instance_text(r);
    }
    out << report.summary() << "\n";
    return report.failures() == 0 ? exit_ok : exit_check_failed;
}

int cmd_random(const Config& cfg, std::ostream& out) {
    if (cfg.dim < 1) throw PreconditionError("random: --dim must be positive");
    const Instance inst = random_semibounded(spec_for(cfg.seed, cfg.dim));
    const Json rel = io::relation_to_json(inst.s);
    if (cfg.output.empty()) {
        out << io::dump(rel);
        return exit_ok;
    }
    io::write_file(cfg.output, rel);
    Json j;
    j["output"] = cfg.output;
    j["dim"] = cfg.dim;
    j["seed"] = cfg.seed;
    j["c"] = io::rational_to_json(inst.c);
    emit(out, cfg, j, "written to " + cfg.output + " (certified bound c = " + to_string(inst.c) + ")\n");
    return exit_ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Exact computations with linear relations and their semibounded selfadjoint extensions", "relcalc"};
    app.fallthrough();
    app.require_subcommand(1, 1);
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));

    auto* analyze = app.add_subcommand("analyze", "Parts, predicates and the certified lower bound of a relation");
    analyze->add_option("file", cfg.inputs, "Relation file")->required()->expected(1);
    analyze->add_option("--width", cfg.width, "Width of the bound interval");

    auto* extend = app.add_subcommand("extend", "Write an extremal extension");
    extend->add_option("file", cfg.inputs, "Relation file")->required()->expected(1);
    extend->add_option("--kind", cfg.kind, "Extension kind")
        ->required()
        ->check(CLI::IsMember({"friedrichs", "krein", "weak-friedrichs", "weak-krein"}));
    extend->add_option("--c", cfg.c, "Lower bound p/q (default: certified lower end of the bound interval)");
    extend->add_option("-o,--output", cfg.output, "Output relation file");

    auto* order = app.add_subcommand("order", "Compare two selfadjoint relations");
    order->add_option("files", cfg.inputs, "H and K")->required()->expected(2);

    auto* extremal = app.add_subcommand("extremal", "Decide whether H is an extremal extension of S");
    extremal->add_option("files", cfg.inputs, "H and S")->required()->expected(2);
    extremal->add_option("--c", cfg.c, "Lower bound p/q")->required();

    auto* check = app.add_subcommand("check", "Run the verification suite on a file or on random instances");
    check->add_option("file", cfg.inputs, "Relation file")->expected(0, 1);
    check->add_option("--count", cfg.count, "Number of random instances");
    check->add_option("--dims", cfg.dims, "Dimension range A..B");
    check->add_option("--seed", cfg.seed, "First seed");
    check->add_option("--c", cfg.c, "Lower bound for a file (default: certified lower end)");
    check->add_option("-o,--output", cfg.output, "Write the JSON report here");

    auto* random = app.add_subcommand("random", "Write a random symmetric semibounded relation");
    random->add_option("--dim", cfg.dim, "Dimension")->required();
    random->add_option("--seed", cfg.seed, "Seed")->required();
    random->add_option("-o,--output", cfg.output, "Output relation file");

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        app.exit(e, out, err);
        return exit_parse;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(cfg, out);
        if (extend->parsed()) return cmd_extend(cfg, out);
        if (order->parsed()) return cmd_order(cfg, out);
        if (extremal->parsed()) return cmd_extremal(cfg, out);
        if (check->parsed()) return cmd_check(cfg, out);
        return cmd_random(cfg, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return exit_precondition;
    } catch (const CertificationError& e) {
        err << "bound certification failed: " << e.what() << "\n";
        if (!e.graph_element().empty()) {
            err << "witness " << show_pair(e.graph_element(), e.graph_element().size() / 2) << "\n";
        } else if (!e.witness().empty()) {
            err << "witness " << show(e.witness()) << "\n";
        }
        return exit_bound;
    } catch (const CrossCheckError& e) {
        err << "cross-check failed: " << e.what() << "\n";
        return exit_check_failed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_check_failed;
    }
}

}  // namespace relcalc
