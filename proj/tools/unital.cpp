// Copyright 2026 The unital Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// unital: command-line front end for the finite-geometry toolkit.
//
//   unital field-info --q 9
//   unital make-unital --kind bm --q 3 --a 3 --b 1 --out u.json
//   unital verify-unital --in u.json
//   unital census --kind bm-vs-hermitian --q 4 --threads 0
//
// Exit codes: 0 success, 1 a check or assertion failed, 2 bad input.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "unital/unital.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    std::string subcommand;
    int p = 0;
    int t = 0;
    std::uint64_t q = 0;
    int n = 2;
    int r = 2;
    std::uint64_t seed = unital::kDefaultSeed;
    std::size_t samples = 200;
    std::size_t hermitian_samples = 20;
    unsigned threads = 1;
    std::string out;
    std::string format = "json";
    bool timing = false;

    ordered_json to_json() const {
        // threads and the output path never change report content, so they
        // stay out of the embedded config.
        return ordered_json{{"subcommand", subcommand}, {"p", p},         {"t", t},
                            {"q", q},                   {"n", n},         {"r", r},
                            {"seed", seed},             {"samples", samples}, {"hermitian_samples", hermitian_samples},
                            {"format", format}};
    }
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Fills p, t, q from whichever of --q or --p/--t was given.
void resolve_field(RunConfig& cfg) {
    if (cfg.q != 0) {
        const auto [p, t] = unital::prime_power(cfg.q);
        if (cfg.p != 0 && cfg.p != p) throw UsageError("--p disagrees with --q");
        if (cfg.t != 0 && cfg.t != t) throw UsageError("--t disagrees with --q");
        cfg.p = p;
        cfg.t = t;
        return;
    }
    if (cfg.p == 0) throw UsageError("give --q or --p (with --t)");
    if (cfg.t == 0) cfg.t = 1;
    if (!unital::detail::is_prime(static_cast<std::uint64_t>(cfg.p))) throw UsageError("--p must be prime");
    cfg.q = unital::detail::ipow(static_cast<std::uint64_t>(cfg.p), static_cast<unsigned>(cfg.t));
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + cfg.out);
    f << text;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

unital::CensusOptions census_options(const RunConfig& cfg) {
    unital::CensusOptions o;
    o.p = cfg.p;
    o.t = cfg.t;
    o.n = cfg.n;
    o.samples = cfg.samples;
    o.hermitian_samples = cfg.hermitian_samples;
    o.seed = cfg.seed;
    o.threads = cfg.threads;
    return o;
}

std::string field_label(const unital::Field& f) {
    std::ostringstream os;
    os << "GF(" << f.p() << "^" << f.degree() << ")";
    return os.str();
}

// ---------------------------------------------------------------------------

int cmd_field_info(const RunConfig& cfg) {
    const auto f = unital::make_field(cfg.p, cfg.t);
    ordered_json j;
    j["config"] = cfg.to_json();
    j["field"] = field_label(*f);
    j["p"] = f->p();
    j["degree"] = f->degree();
    j["size"] = f->size();
    j["q"] = f->q();
    j["modulus"] = f->modulus();
    j["generator"] = f->generator().code;
    auto& sub = j["subfield_elements"] = ordered_json::array();
    for (auto e : f->subfield_elements()) sub.push_back(e.code);
    emit(cfg, dump(j));
    return 0;
}

int cmd_enum(const RunConfig& cfg, const std::string& what) {
    const auto field = unital::make_field(cfg.p, cfg.t);
    std::ostringstream csv;
    ordered_json j;
    j["config"] = cfg.to_json();
    j["config"]["what"] = what;
    auto& rows = j["rows"] = ordered_json::array();
    if (what == "points") {
        const auto space = unital::make_space(cfg.n, field);
        csv << "index,coords\n";
        for (std::uint32_t i = 0; i < space->num_points(); ++i) {
            auto c = ordered_json::array();
            std::string cs;
            for (auto e : space->coords(i)) {
                c.push_back(e.code);
                cs += (cs.empty() ? "" : " ") + std::to_string(e.code);
            }
            rows.push_back({{"index", i}, {"coords", c}});
            csv << i << ',' << cs << '\n';
        }
    } else if (what == "lines") {
        const auto space = unital::make_space(cfg.n, field);
        const auto& table = space->subspaces(2);
        csv << "index,points\n";
        for (std::size_t i = 0; i < table.size(); ++i) {
            const auto pts = table.points_of(i);
            std::string ps;
            for (auto pt : pts) ps += (ps.empty() ? "" : " ") + std::to_string(pt);
            rows.push_back({{"index", i}, {"points", std::vector<std::uint32_t>(pts.begin(), pts.end())}});
            csv << i << ',' << ps << '\n';
        }
    } else if (what == "monomials") {
        const unital::FieldShape fs{cfg.p, cfg.t};
        csv << "exponents,lambda,s,alpha\n";
        for (const auto& m : unital::enum_basis_monomials(cfg.n, fs)) {
            ordered_json row{{"exponents", m.exponents}};
            std::string es, ls, ss;
            for (auto b : m.exponents) es += (es.empty() ? "" : " ") + std::to_string(b);
            if (!m.is_constant()) {
                const auto tt = unital::type_of(m, fs);
                row["lambda"] = tt.lambda;
                row["s"] = tt.s;
                for (int v : tt.lambda) ls += (ls.empty() ? "" : " ") + std::to_string(v);
                for (int v : tt.s) ss += (ss.empty() ? "" : " ") + std::to_string(v);
            }
            const int alpha = unital::invariant_exponent(m, fs, cfg.r);
            row["alpha"] = alpha;
            rows.push_back(row);
            csv << es << ',' << ls << ',' << ss << ',' << alpha << '\n';
        }
    } else {
        throw UsageError("enum: expected points, lines or monomials");
    }
    j["count"] = rows.size();
    emit(cfg, cfg.format == "csv" ? csv.str() : dump(j));
    return 0;
}

int cmd_make_unital(const RunConfig& cfg, const std::string& kind, std::optional<std::uint32_t> a, std::optional<std::uint32_t> b,
                    bool random) {
    const auto space = unital::make_space(2, unital::make_field(cfg.p, cfg.t));
    const auto& f = space->field();
    ordered_json desc;
    std::optional<unital::PointSet> S;
    if (kind == "bm") {
        if (!a || !b) throw UsageError("make-unital --kind bm needs --a and --b");
        if (*a >= f.size() || *b >= f.size()) throw UsageError("--a/--b must be element codes below " + std::to_string(f.size()));
        const unital::BMParams prm{unital::Elem{*a}, unital::Elem{*b}};
        S = unital::bm_unital(space, prm);
        desc = {{"kind", "bm"}, {"a", *a}, {"b", *b}, {"hermitian_case", unital::bm_is_hermitian_case(f, prm)}};
    } else if (kind == "hermitian") {
        if (random) {
            auto ls = unital::seeded_hermitian(space, cfg.seed);
            S = std::move(ls.points);
            desc = {{"kind", ls.descriptor.kind}, {"params", ls.descriptor.params}};
        } else {
            S = unital::hermitian_variety(space, unital::HermitianForm::canonical(space->field_ptr(), 2));
            desc = {{"kind", "hermitian-canonical"}};
        }
    } else {
        throw UsageError("make-unital: --kind must be bm or hermitian");
    }
    auto j = unital::pointset_to_json(*S);
    j["construction"] = desc;
    j["config"] = cfg.to_json();
    emit(cfg, dump(j));
    return 0;
}

int cmd_verify_unital(const RunConfig& cfg, const std::string& in) {
    std::ifstream f(in);
    if (!f) throw UsageError("cannot read " + in);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad point set file: ") + e.what());
    }
    const auto S = unital::pointset_from_json(j);
    const auto prof = unital::is_unital_embedded(S);
    ordered_json out;
    out["config"] = cfg.to_json();
    out["input"] = in;
    out["is_unital"] = prof.is_unital;
    out["set_size"] = prof.set_size;
    out["tangents"] = prof.tangents;
    out["secants"] = prof.secants;
    ordered_json hist = ordered_json::object();
    for (const auto& [size, count] : prof.line_histogram) hist[std::to_string(size)] = count;
    out["line_histogram"] = hist;
    if (!prof.diagnostic.empty()) out["diagnostic"] = prof.diagnostic;
    bool ok = prof.is_unital;
    if (ok) {
        const auto blocks = unital::blocks_of(S);
        out["design"] = {{"v", S.size()}, {"b", blocks.size()}, {"k", blocks.empty() ? 0 : blocks.front().size()}, {"lambda", 1}};
        const int t = S.space()->field().t();
        const bool prop = unital::check_property_I(S.complement(), 2, t);
        out["complement_property_I"] = prop;
        ok = prop;
        const auto form = unital::fit_hermitian_form(S);
        out["hermitian_form_found"] = form.has_value();
    }
    emit(cfg, dump(out));
    if (!ok) std::cerr << "verify-unital: " << (prof.diagnostic.empty() ? "check failed" : prof.diagnostic) << "\n";
    return ok ? 0 : kExitFail;
}

int cmd_invariants(const RunConfig& cfg, bool verify_snf) {
    const unital::FieldShape fs{cfg.p, cfg.t};
    if (cfg.r < 2 || cfg.r > cfg.n) throw UsageError("--r must satisfy 2 <= r <= n");
    const auto monomials = unital::enum_basis_monomials(cfg.n, fs);
    ordered_json j;
    j["config"] = cfg.to_json();
    auto& rows = j["rows"] = ordered_json::array();
    std::ostringstream csv;
    csv << "exponents,s,alpha\n";
    std::vector<int> predicted;
    for (const auto& m : monomials) {
        const int alpha = unital::invariant_exponent(m, fs, cfg.r);
        predicted.push_back(alpha);
        ordered_json row{{"exponents", m.exponents}, {"alpha", alpha}};
        std::string es, ss;
        for (auto b : m.exponents) es += (es.empty() ? "" : " ") + std::to_string(b);
        if (!m.is_constant()) {
            const auto s = unital::type_of(m, fs).s;
            row["s"] = s;
            for (int v : s) ss += (ss.empty() ? "" : " ") + std::to_string(v);
        }
        rows.push_back(row);
        csv << es << ',' << ss << ',' << alpha << '\n';
    }
    std::sort(predicted.begin(), predicted.end());
    std::map<int, std::size_t> hist;
    for (int a : predicted) ++hist[a];
    ordered_json mh = ordered_json::object();
    for (const auto& [a, c] : hist) mh[std::to_string(a)] = c;
    j["row_count"] = rows.size();
    j["predicted_multiset"] = mh;
    bool ok = true;
    if (verify_snf) {
        const auto space = unital::make_space(cfg.n, unital::make_field(cfg.p, cfg.t));
        const auto A = unital::incidence_matrix(*space, static_cast<std::size_t>(cfg.r)).dense();
        const auto snf = unital::snf_valuation_multiset(A, static_cast<unsigned long>(cfg.p));
        ok = snf == predicted;
        std::map<int, std::size_t> sh;
        for (int a : snf) ++sh[a];
        ordered_json so = ordered_json::object();
        for (const auto& [a, c] : sh) so[std::to_string(a)] = c;
        j["snf_multiset"] = so;
        j["snf_match"] = ok;
        std::cerr << "invariants: SNF oracle " << (ok ? "matches" : "DOES NOT match") << " the formula (" << snf.size() << " divisors, "
                  << predicted.size() << " predicted)\n";
    }
    emit(cfg, cfg.format == "csv" ? csv.str() : dump(j));
    return ok ? 0 : kExitFail;
}

int cmd_census(const RunConfig& cfg, const std::string& kind, const std::vector<std::string>& unital_files) {
    auto o = census_options(cfg);
    unital::CensusReport rep;
    if (kind == "kestenband") {
        rep = unital::kestenband_census(o);
    } else if (kind == "bm-vs-hermitian") {
        rep = unital::bm_vs_hermitian_census(o);
    } else if (kind == "general") {
        std::vector<unital::LabelledSet> source;
        unital::SpacePtr space;
        for (const auto& path : unital_files) {
            std::ifstream f(path);
            if (!f) throw UsageError("cannot read " + path);
            nlohmann::json j;
            f >> j;
            auto S = unital::pointset_from_json(j, space);
            space = S.space();
            source.push_back({{"file", {{"path", path}}}, std::move(S)});
        }
        try {
            rep = unital::general_unital_congruence(o, std::move(source));
        } catch (const unital::NotAUnital& e) {
            std::cerr << "census: " << e.what() << "\n";
            return kExitFail;
        }
    } else if (kind == "hermitian-pairs") {
        rep = unital::hermitian_pair_divisibility(o);
    } else if (kind == "nonhermitian-scan") {
        rep = unital::nonhermitian_pair_scan(o);
    } else {
        throw UsageError("unknown census kind " + kind);
    }
    rep.config["run"] = cfg.to_json();
    emit(cfg, cfg.format == "csv" ? unital::to_csv(rep, cfg.timing) : unital::to_json(rep, cfg.timing).dump(2) + "\n");

    for (const auto& a : rep.assertions)
        std::cerr << (a.passed() ? "PASS " : (a.enforced ? "FAIL " : "INFO ")) << a.name << " (" << a.checked - a.failures << "/" << a.checked
                  << ")\n";
    std::cerr << rep.kind << ": " << rep.records.size() << " records\n";
    if (!rep.passed()) {
        if (const auto* r = rep.first_failure()) std::cerr << "first failing record: " << unital::to_json(*r).dump() << "\n";
        return kExitFail;
    }
    return 0;
}

int cmd_charfn_check(const RunConfig& cfg, int ell, int k) {
    const auto field = unital::make_field(cfg.p, cfg.t);
    if (ell < 1) throw UsageError("--ell must be positive");
    if (k == 0) k = 2 * ell * cfg.t;
    const auto ring = unital::make_ring(field, k);
    const auto space = unital::make_space(cfg.n, field);
    const auto H = unital::hermitian_variety(space, unital::HermitianForm::canonical(field, cfg.n));
    const int e = 2 * ell * cfg.t;
    std::size_t on = 0, off = 0, bad = 0;
    std::optional<std::uint32_t> first_bad;
    for (std::uint32_t i = 0; i < space->num_points(); ++i) {
        const auto v = ring->herm_char_value(space->coords(i), ell);
        const bool in = H.contains(i);
        const bool ok = ring->congruent(v, in ? 0 : 1, e);
        (in ? on : off)++;
        if (!ok) {
            ++bad;
            if (!first_bad) first_bad = i;
        }
    }
    ordered_json j;
    j["config"] = cfg.to_json();
    j["config"]["ell"] = ell;
    j["config"]["k"] = k;
    j["modulus"] = "p^" + std::to_string(e);
    j["points"] = space->num_points();
    j["on_hermitian"] = on;
    j["off_hermitian"] = off;
    j["mismatches"] = bad;
    if (first_bad) j["first_mismatch"] = *first_bad;
    emit(cfg, dump(j));
    return bad == 0 ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-geometry toolkit: unitals, Hermitian varieties, p-adic invariants"};
    app.set_version_flag("--version", std::string(UNITAL_VERSION));
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_field = [&](CLI::App* sub) {
        sub->add_option("--p", cfg.p, "characteristic")->check(CLI::PositiveNumber);
        sub->add_option("--t", cfg.t, "q = p^t")->check(CLI::PositiveNumber);
        sub->add_option("--q", cfg.q, "prime power q (field GF(q^2))");
    };
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    auto* field_info = app.add_subcommand("field-info", "field parameters and modulus");
    add_field(field_info);
    add_out(field_info);

    std::string what;
    auto* en = app.add_subcommand("enum", "enumerate points, lines or basis monomials");
    en->add_option("what", what, "points|lines|monomials")->required()->check(CLI::IsMember({"points", "lines", "monomials"}));
    add_field(en);
    en->add_option("--n", cfg.n, "projective dimension")->check(CLI::Range(1, 8));
    en->add_option("--r", cfg.r, "subspace dimension for alpha")->check(CLI::Range(2, 9));
    add_out(en);

    std::string kind;
    std::optional<std::uint32_t> a, b;
    bool random = false;
    auto* mk = app.add_subcommand("make-unital", "build a unital in PG(2, q^2) and write it as JSON");
    mk->add_option("--kind", kind, "bm|hermitian")->required()->check(CLI::IsMember({"bm", "hermitian"}));
    add_field(mk);
    mk->add_option("--a", a, "B-M parameter a (integer element code)");
    mk->add_option("--b", b, "B-M parameter b (integer element code)");
    mk->add_flag("--random", random, "random Hermitian form from --seed instead of the canonical one");
    mk->add_option("--seed", cfg.seed, "random seed");
    add_out(mk);

    std::string in;
    auto* ver = app.add_subcommand("verify-unital", "check a point set file for the unital axioms");
    ver->add_option("--in", in, "point set JSON")->required();
    add_out(ver);

    bool verify_snf = false;
    auto* inv = app.add_subcommand("invariants", "predicted p-adic invariants of the point/subspace incidence");
    add_field(inv);
    inv->add_option("--n", cfg.n, "projective dimension")->check(CLI::Range(1, 8));
    inv->add_option("--r", cfg.r, "subspace dimension")->check(CLI::Range(2, 9));
    inv->add_flag("--verify-snf", verify_snf, "compare against exact Smith normal form");
    add_out(inv);

    std::vector<std::string> unital_files;
    auto* cen = app.add_subcommand("census", "intersection censuses");
    cen->add_option("--kind", kind, "kestenband|bm-vs-hermitian|general|hermitian-pairs|nonhermitian-scan")
        ->required()
        ->check(CLI::IsMember({"kestenband", "bm-vs-hermitian", "general", "hermitian-pairs", "nonhermitian-scan"}));
    add_field(cen);
    cen->add_option("--n", cfg.n, "projective dimension (hermitian-pairs)")->check(CLI::Range(2, 4));
    cen->add_option("--samples", cfg.samples, "sampled pairs");
    cen->add_option("--hermitian-samples", cfg.hermitian_samples, "random Hermitian unitals besides the canonical one");
    cen->add_option("--seed", cfg.seed, "random seed");
    cen->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
    cen->add_option("--unital", unital_files, "point set file(s) for --kind general");
    cen->add_flag("--timing", cfg.timing, "include per-record timing in the report");
    add_out(cen);

    int ell = 1, k = 0;
    auto* cf = app.add_subcommand("charfn-check", "Galois-ring characteristic function of the Hermitian variety");
    add_field(cf);
    cf->add_option("--n", cfg.n, "projective dimension")->check(CLI::Range(1, 4));
    cf->add_option("--ell", ell, "congruence level");
    cf->add_option("--k", k, "ring precision (default 2*ell*t)");
    add_out(cf);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        auto* sub = app.get_subcommands().front();
        cfg.subcommand = sub->get_name();
        if (sub == ver) return cmd_verify_unital(cfg, in);
        resolve_field(cfg);
        if (sub == field_info) return cmd_field_info(cfg);
        if (sub == en) return cmd_enum(cfg, what);
        if (sub == mk) return cmd_make_unital(cfg, kind, a, b, random);
        if (sub == inv) return cmd_invariants(cfg, verify_snf);
        if (sub == cen) return cmd_census(cfg, kind, unital_files);
        if (sub == cf) return cmd_charfn_check(cfg, ell, k);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
