#include "experiment.hpp"

#include "selmer/bklpr.hpp"
#include "selmer/eigendist.hpp"
#include "selmer/hurwitz.hpp"
#include "selmer/topology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace selmer::cli {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    return out;
}

int64_t to_int(const std::string& field, const std::string& v) {
    try {
        size_t pos = 0;
        long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw SpecError(field, "expected an integer, got '" + v + "'");
    }
}

struct Params {
    const ExperimentSpec& s;
    bool has(const std::string& k) const { return s.params.count(k) > 0; }
    std::string str(const std::string& k, const std::string& def = "") const {
        auto it = s.params.find(k);
        return it == s.params.end() ? def : it->second;
    }
    int64_t integer(const std::string& k) const {
        if (!has(k)) throw SpecError(k, "required");
        return to_int(k, str(k));
    }
    int64_t integer(const std::string& k, int64_t def) const { return has(k) ? to_int(k, str(k)) : def; }
    int64_t bounded(const std::string& k, int64_t def, int64_t lo, int64_t hi) const {
        int64_t v = integer(k, def);
        if (v < lo || v > hi) throw SpecError(k, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return v;
    }
    Modulus modulus(const std::string& k = "nu") const {
        int64_t v = integer(k);
        try {
            return Modulus(v);
        } catch (const std::invalid_argument& e) {
            throw SpecError(k, e.what());
        }
    }
    bool exhaustive() const { return str("mode", "exhaustive") == "exhaustive"; }
    uint64_t samples() const { return static_cast<uint64_t>(integer("samples")); }
    uint64_t seed() const { return static_cast<uint64_t>(integer("seed")); }
};

FiniteModule parse_module(const std::string& field, const std::string& text) {
    std::string t = trim(text);
    if (t.empty() || t == "0" || t == "trivial") return {};
    std::vector<int64_t> orders;
    for (auto& part : split(t, '+')) {
        if (part.rfind("Z/", 0) != 0) throw SpecError(field, "expected summands like Z/9+Z/3, got '" + part + "'");
        orders.push_back(to_int(field, part.substr(2)));
    }
    try {
        return FiniteModule::from_orders(orders);
    } catch (const std::invalid_argument& e) {
        throw SpecError(field, e.what());
    }
}

// "a,b;c,d|e,f;g,h" -> list of matrices over Z/nu
std::vector<ModMatrix> parse_matrices(const std::string& field, const std::string& text, int64_t nu) {
    std::vector<ModMatrix> out;
    if (trim(text).empty()) return out;
    for (auto& m : split(text, '|')) {
        std::vector<std::vector<int64_t>> rows;
        for (auto& row : split(m, ';')) {
            std::vector<int64_t> r;
            for (auto& x : split(row, ',')) r.push_back(to_int(field, x));
            rows.push_back(r);
        }
        for (auto& r : rows)
            if (r.size() != rows.size()) throw SpecError(field, "matrices must be square");
        out.push_back(ModMatrix::from_rows(rows, nu));
    }
    return out;
}

QuadSpace space_from(const Params& p) {
    Modulus nu = p.modulus();
    std::vector<int64_t> diag;
    if (p.has("diag")) {
        for (auto& x : split(p.str("diag"), ',')) diag.push_back(to_int("diag", x));
    } else {
        diag.assign(p.bounded("rank", 3, 1, 12), 1);
    }
    try {
        return QuadSpace::diagonal(diag, nu.nu());
    } catch (const std::invalid_argument& e) {
        throw SpecError("diag", e.what());
    }
}

Population population_from(const Params& p, const QuadSpace& sp) {
    std::string m = p.str("model", "all");
    if (m == "all") return Population::all();
    if (m == "so") return Population::special();
    if (m == "omega") return Population::label(CosetLabel::Omega, sp.modulus().omega());
    try {
        return Population::label(parse_coset_label(m), sp.modulus().omega());
    } catch (const std::invalid_argument&) {
        throw SpecError("model", "expected all|so|omega|A|B|C");
    }
}

json rational_map(const std::map<int, Rational>& m) {
    json j = json::object();
    for (auto& [k, v] : m) j[std::to_string(k)] = to_string(v);
    return j;
}

Outcome kernel_dist(const Params& p) {
    QuadSpace sp = space_from(p);
    Population pop = population_from(p, sp);
    SamplingMode mode = p.exhaustive() ? SamplingMode::exact() : SamplingMode::monte_carlo(p.samples(), p.seed());
    ModuleDistribution d = kernel_distribution(sp, pop, mode);
    Outcome o;
    o.exact = d.is_exact();
    o.rejections = d.rejections();
    o.result = json{{"population", pop.name()}, {"distribution", to_json(d)}};
    if (sp.modulus().omega() == 1 && sp.modulus().factors()[0].second == 1) {
        int64_t l = sp.nu();
        o.result["dimension_distribution"] = rational_map(dimension_distribution(d, l));
        o.result["generating_function"] = to_json(generating_function(d, l));
    }
    return o;
}

BklprVariant variant_from(const Params& p) {
    try {
        return parse_bklpr_variant(p.str("model", "full"));
    } catch (const std::invalid_argument&) {
        throw SpecError("model", "expected full|parity0|parity1");
    }
}

Outcome bklpr(const Params& p) {
    Modulus nu = p.modulus();
    int n = static_cast<int>(p.bounded("n", 6, 1, 64));
    SamplingMode mode = p.exhaustive() ? SamplingMode::exact() : SamplingMode::monte_carlo(p.samples(), p.seed());
    BklprRef ref = bklpr_distribution(nu, n, variant_from(p), mode);
    Outcome o;
    o.exact = ref.dist.is_exact();
    o.rejections = ref.dist.rejections();
    o.result = json{{"variant", to_string(ref.variant)}, {"n", n}, {"distribution", to_json(ref.dist)}};
    return o;
}

Outcome moments(const Params& p) {
    Modulus nu = p.modulus();
    if (nu.omega() != 1) throw SpecError("nu", "moments need a prime power");
    int64_t l = nu.factors()[0].first;
    int j = nu.factors()[0].second;
    int n = static_cast<int>(p.bounded("n", 2, 1, 64));
    FiniteModule h = parse_module("H", p.str("H", "Z/" + std::to_string(l)));
    if (!h.fits(nu)) throw SpecError("H", "must be annihilated by nu");
    Outcome o;
    Rational fin = finite_n_moment(l, j, n, h);
    o.result = json{{"H", h.str()},
                    {"n", n},
                    {"finite_n_moment", to_string(fin)},
                    {"sym2_order", to_json(sym2_order(h))},
                    {"limit", to_json(sym2_order(h))}};
    if (!p.exhaustive()) {
        BklprRef ref = bklpr_distribution(nu, n, BklprVariant::Full, SamplingMode::monte_carlo(p.samples(), p.seed()));
        SampleStats st = count_statistics(ref.dist, h, MapKind::Surj);
        o.exact = false;
        o.rejections = ref.dist.rejections();
        o.result["mc_surj_mean"] = st.mean;
        o.result["mc_surj_stderr"] = st.stderr_;
        o.result["samples"] = st.n;
    }
    return o;
}

Outcome coset_check(const Params& p) {
    QuadSpace sp = space_from(p);
    if (sp.modulus().omega() != 1 || sp.modulus().factors()[0].second != 1) throw SpecError("nu", "coset-check needs a prime");
    CosetIdentityReport rep = coset_identity_check(sp);
    Outcome o;
    o.result = to_json(rep);
    o.result["status"] = rep.all_hold() ? "all identities hold" : "identity failure";
    o.check_failed = !rep.all_hold();
    return o;
}

Outcome torsor(const Params& p) {
    Modulus nu = p.modulus();
    TorsorSpec s{nu, static_cast<int>(p.bounded("r", 1, 1, 4)), static_cast<int>(p.bounded("g", 0, 0, 4)), {}, {}, 0};
    s.n = static_cast<int>(p.integer("n"));
    if (s.n <= 0 || s.n % 2) throw SpecError("n", "must be positive and even");
    s.handles = parse_matrices("handles", p.str("handles"), nu.nu());
    s.fixed = parse_matrices("fixed", p.str("fixed"), nu.nu());
    if (static_cast<int>(s.handles.size()) != 2 * s.genus) throw SpecError("handles", "need 2g matrices");
    for (auto& m : s.handles)
        if (m.rows() != 2 * s.r) throw SpecError("handles", "matrices must be 2r x 2r");
    for (auto& m : s.fixed)
        if (m.rows() != 2 * s.r) throw SpecError("fixed", "matrices must be 2r x 2r");
    TorsorCount t = torsor_count(s);
    Outcome o;
    o.result = json{{"linear_algebra", to_json(t)}};
    o.check_failed = !t.matches;
    if (p.exhaustive()) {
        TorsorCount b = torsor_count_brute_force(s);
        o.result["brute_force"] = to_json(b);
        o.check_failed = o.check_failed || b.count != t.count;
    }
    return o;
}

Outcome orbits(const Params& p) {
    Modulus nu = p.modulus();
    int r = static_cast<int>(p.bounded("r", 1, 1, 2));
    if (p.integer("g", 0) != 0) throw SpecError("g", "orbit enumeration supports genus 0 only");
    int n = static_cast<int>(p.bounded("n", 2, 1, 6));
    bool slides = p.integer("slides", 0) != 0;
    auto fixed = parse_matrices("fixed", p.str("fixed"), nu.nu());
    AffSymp G(nu, r);
    auto cls = G.branch_class();
    std::vector<std::vector<int64_t>> vecs{{}};
    for (int i = 0; i < 2 * r; ++i) {
        std::vector<std::vector<int64_t>> next;
        for (auto& v : vecs)
            for (int64_t x = 0; x < nu.nu(); ++x) {
                auto w = v;
                w.push_back(x);
                next.push_back(w);
            }
        vecs = next;
    }
    BigInt est = big_pow(static_cast<int64_t>(cls.size()), n);
    for (size_t k = 0; k + 1 < fixed.size(); ++k) est *= static_cast<int64_t>(vecs.size());
    if (est > 5'000'000) throw BudgetExceeded("orbits", est, 5'000'000);
    std::vector<NielsenDatum> data;
    std::vector<size_t> bi(n, 0);
    std::vector<std::vector<std::vector<int64_t>>> images;  // admissible vectors per non-final fixed puncture
    for (size_t k = 0; k + 1 < fixed.size(); ++k) {
        std::set<std::vector<int64_t>> img;
        ModMatrix one_minus = ModMatrix::identity(2 * r, nu.nu()) - fixed[k];
        for (auto& u : vecs) img.insert(one_minus.apply(u));
        images.emplace_back(img.begin(), img.end());
    }
    std::vector<size_t> fi(images.size(), 0);
    std::function<void(size_t)> rec_fixed;
    std::function<void(int)> rec_branch = [&](int i) {
        if (i == n) {
            rec_fixed(0);
            return;
        }
        for (size_t c = 0; c < cls.size(); ++c) {
            bi[i] = c;
            rec_branch(i + 1);
        }
    };
    rec_fixed = [&](size_t k) {
        if (k == images.size()) {
            NielsenDatum d;
            for (int i = 0; i < n; ++i) d.branch.push_back(cls[bi[i]]);
            for (size_t q = 0; q < images.size(); ++q) d.fixed.push_back(G.make(fixed[q], {images[q][fi[q]]}));
            if (!fixed.empty()) d.fixed.push_back(G.inverse(surface_product(G, d)));
            if (!fixed.empty() && !(d.fixed.back().M == fixed.back())) return;
            if (validate(G, d).empty()) data.push_back(std::move(d));
            return;
        }
        for (size_t c = 0; c < images[k].size(); ++c) {
            fi[k] = c;
            rec_fixed(k + 1);
        }
    };
    rec_branch(0);
    OrbitReport rep = orbit_count(G, data, standard_moves(n, static_cast<int>(fixed.size()), slides));
    Outcome o;
    json j = to_json(rep);
    if (rep.representatives.size() > 50) j.erase("representatives");
    o.result = json{{"data", data.size()}, {"orbits", j}};
    return o;
}

Outcome burnside_kind(const Params& p) {
    QuadSpace sp = space_from(p);
    FiniteModule h = parse_module("H", p.str("H", "Z/" + std::to_string(sp.modulus().factors()[0].first)));
    std::string model = p.str("model", "O");
    auto all = enumerate_orthogonal(sp);
    std::vector<OrthoElement> G;
    for (auto& g : all) {
        if (model == "O")
            G.push_back(g);
        else if (model == "SO") {
            if (coset_signature(sp, g).dickson == std::vector<uint8_t>(sp.modulus().omega(), 0)) G.push_back(g);
        } else if (model == "omega") {
            if (omega_member(sp, g)) G.push_back(g);
        } else {
            throw SpecError("model", "expected O|SO|omega");
        }
    }
    Rational b = burnside_components(G, h);
    BigInt direct = hom_orbits_direct(G, h);
    Outcome o;
    o.result = json{{"group", model}, {"group_order", G.size()}, {"H", h.str()}, {"burnside", to_string(b)}, {"union_find", to_json(direct)}};
    o.check_failed = b != Rational(direct);
    return o;
}

Outcome cells_kind(const Params& p) {
    int g = static_cast<int>(p.bounded("g", 0, 0, 8)), f = static_cast<int>(p.bounded("f", 0, 0, 8));
    int n = static_cast<int>(p.bounded("n", 2, 0, 16));
    auto c = enumerate_cells(g, f, n);
    int top = 0;
    for (auto& t : c) top = std::max(top, t.dimension());
    Outcome o;
    o.result = json{{"count", c.size()}, {"closed_form", to_json(cell_count_closed_form(g, f, n))},
                    {"bound", to_json(cell_bound(g, f, n))}, {"top_dimension", top}};
    if (c.size() <= 64) {
        json list = json::array();
        for (auto& t : c) list.push_back(json{{"b", t.b}, {"P", t.P}, {"v", t.v}, {"w", t.w}, {"dimension", t.dimension()}});
        o.result["tuples"] = list;
    }
    o.check_failed = BigInt(c.size()) != cell_count_closed_form(g, f, n);
    return o;
}

Outcome ring_scan(const Params& p) {
    Modulus nu = p.modulus();
    int r = static_cast<int>(p.bounded("r", 1, 1, 2));
    int N = static_cast<int>(p.bounded("degree", 6, 1, 10));
    int D = static_cast<int>(p.bounded("D", 1, 1, 8));
    int window = static_cast<int>(p.bounded("window", std::min(N, 6), 0, N));
    AffSymp G(nu, r);
    auto cls = G.branch_class();
    GradedOrbitRing R = GradedOrbitRing::build(rack_from_class(G, cls), N);
    std::vector<uint64_t> orders;
    for (auto& g : cls) orders.push_back(G.order(g));
    Outcome o;
    o.result = json{{"ring", to_json(R)}};
    try {
        UOperator U = u_operator(R, D, orders);
        StabilizationReport sc = stabilization_scan(R, U);
        o.result["U"] = to_json(U);
        o.result["scan"] = to_json(sc);
    } catch (const std::invalid_argument& e) {
        o.result["U_error"] = e.what();
    }
    int64_t fp = p.integer("field", 0);
    KComplexReport K = k_complex(R, window, fp ? Field::mod(fp) : Field::rationals());
    o.result["k_complex"] = to_json(K);
    o.check_failed = !K.d_squared_zero;
    return o;
}

Outcome compare(const Params& p) {
    Modulus nu = p.modulus();
    if (nu.omega() != 1 || nu.factors()[0].second != 1) throw SpecError("nu", "compare needs a prime");
    int64_t l = nu.nu();
    int n = static_cast<int>(p.bounded("n", 6, 1, 32));
    uint64_t N = p.samples(), seed = p.seed();
    ModuleDistribution a0 = alternating_distribution(2 * n, l, 1, N, seed);
    ModuleDistribution a1raw = alternating_distribution(2 * n + 1, l, 1, N, seed + 2);
    ModuleDistribution a1(ModuleDistribution::Mode::Empirical);
    for (auto& [m, c] : a1raw.counts()) a1.add_sample(m.direct_sum(FiniteModule::cyclic(l)), c);
    ModuleDistribution g0 = ogr_elementary_distribution(l, n, BklprVariant::Parity0);
    ModuleDistribution g1 = ogr_elementary_distribution(l, n, BklprVariant::Parity1);
    Outcome o;
    o.exact = false;
    o.rejections = a0.rejections() + a1raw.rejections();
    o.result = json{{"n", n},
                    {"even", {{"d0", static_cast<double>(tv_distance(a0, g0, 0))}, {"d1", static_cast<double>(tv_distance(a0, g0, 1))}}},
                    {"odd", {{"d0", static_cast<double>(tv_distance(a1, g1, 0))}, {"d1", static_cast<double>(tv_distance(a1, g1, 1))}}}};
    return o;
}

}  // namespace

const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> k = {"kernel-dist", "bklpr", "moments", "coset-check", "torsor-count",
                                               "orbits",      "burnside", "cells", "ring-scan",   "compare"};
    return k;
}

ExperimentSpec ExperimentSpec::parse(const std::string& text) {
    ExperimentSpec s;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw SpecError("line " + std::to_string(lineno), "expected key=value");
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (k.empty()) throw SpecError("line " + std::to_string(lineno), "empty key");
        if (k == "kind")
            s.kind = v;
        else if (k == "output")
            s.output = v;
        else if (!s.params.emplace(k, v).second)
            throw SpecError(k, "given twice");
    }
    return s;
}

std::string ExperimentSpec::canonical() const {
    std::string out = "kind=" + kind + "\n";
    for (auto& [k, v] : params) out += k + "=" + v + "\n";  // std::map keeps keys sorted
    return out;
}

json ExperimentSpec::to_json() const {
    json j{{"kind", kind}};
    for (auto& [k, v] : params) j[k] = v;
    if (!output.empty()) j["output"] = output;
    return j;
}

void normalize(ExperimentSpec& s) {
    auto& k = experiment_kinds();
    if (s.kind.empty()) throw SpecError("kind", "required");
    if (std::find(k.begin(), k.end(), s.kind) == k.end()) throw SpecError("kind", "unknown kind '" + s.kind + "'");
    static const std::map<std::string, std::set<std::string>> allowed = {
        {"kernel-dist", {"nu", "rank", "diag", "model", "mode", "samples", "seed"}},
        {"bklpr", {"nu", "n", "model", "mode", "samples", "seed"}},
        {"moments", {"nu", "n", "H", "mode", "samples", "seed"}},
        {"coset-check", {"nu", "rank", "diag"}},
        {"torsor-count", {"nu", "r", "g", "n", "handles", "fixed", "mode"}},
        {"orbits", {"nu", "r", "g", "n", "fixed", "slides"}},
        {"burnside", {"nu", "rank", "diag", "model", "H"}},
        {"cells", {"g", "f", "n"}},
        {"ring-scan", {"nu", "r", "degree", "D", "window", "field"}},
        {"compare", {"nu", "n", "samples", "seed"}},
    };
    const auto& ok = allowed.at(s.kind);
    for (auto& [key, v] : s.params)
        if (key != "sweep" && !ok.count(key)) throw SpecError(key, "not a parameter of kind " + s.kind);
    bool sampled = ok.count("samples") > 0;
    if (ok.count("mode")) {
        std::string m = s.params.count("mode") ? s.params["mode"] : "exhaustive";
        if (m == "mc" || m == "monte-carlo") m = "mc";
        if (m != "exhaustive" && m != "mc") throw SpecError("mode", "expected exhaustive|mc");
        s.params["mode"] = m;
        sampled = sampled && (m == "mc" || s.kind == "compare");
    }
    if (s.kind == "compare") sampled = true;
    if (sampled) {
        if (!s.params.count("samples")) s.params["samples"] = "100000";
        if (!s.params.count("seed")) s.params["seed"] = "1729";
        if (to_int("samples", s.params["samples"]) <= 0) throw SpecError("samples", "must be positive");
        to_int("seed", s.params["seed"]);
    } else {
        s.params.erase("samples");
        s.params.erase("seed");
    }
}

Outcome run_point(const ExperimentSpec& spec) {
    Params p{spec};
    const std::string& k = spec.kind;
    if (k == "kernel-dist") return kernel_dist(p);
    if (k == "bklpr") return bklpr(p);
    if (k == "moments") return moments(p);
    if (k == "coset-check") return coset_check(p);
    if (k == "torsor-count") return torsor(p);
    if (k == "orbits") return orbits(p);
    if (k == "burnside") return burnside_kind(p);
    if (k == "cells") return cells_kind(p);
    if (k == "ring-scan") return ring_scan(p);
    if (k == "compare") return compare(p);
    throw SpecError("kind", "unknown kind '" + k + "'");
}

}  // namespace selmer::cli
