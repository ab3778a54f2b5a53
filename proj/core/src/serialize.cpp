#include "selmer/serialize.hpp"

namespace selmer {

json to_json(const BigInt& x) { return x.str(); }
json to_json(const Rational& x) { return to_string(x); }

json to_json(const FiniteModule& m) {
    json j = json::object();
    for (auto& [l, p] : m.parts()) j[std::to_string(l)] = p.parts;
    return j;
}

FiniteModule module_from_json(const json& j) {
    std::map<int64_t, Partition> parts;
    for (auto& [k, v] : j.items()) parts.emplace(std::stoll(k), Partition(v.get<std::vector<int>>()));
    return FiniteModule(std::move(parts));
}

json to_json(const ModuleDistribution& d) {
    json j;
    j["mode"] = d.is_exact() ? "exact" : "empirical";
    if (!d.is_exact()) {
        j["samples"] = d.samples();
        j["seed"] = d.seed();
        j["rejections"] = d.rejections();
    }
    json support = json::array();
    for (auto& [m, p] : d.probabilities()) {
        json e{{"module", m.str()}, {"parts", to_json(m)}, {"probability", to_string(p)}};
        if (!d.is_exact()) e["count"] = d.counts().at(m);
        support.push_back(std::move(e));
    }
    j["support"] = std::move(support);
    return j;
}

ModuleDistribution distribution_from_json(const json& j) {
    if (j.at("mode") == "exact") {
        std::map<FiniteModule, Rational> w;
        for (auto& e : j.at("support")) w[module_from_json(e.at("parts"))] = parse_rational(e.at("probability"));
        return ModuleDistribution::exact(std::move(w));
    }
    ModuleDistribution d(ModuleDistribution::Mode::Empirical);
    for (auto& e : j.at("support")) d.add_sample(module_from_json(e.at("parts")), e.at("count").get<uint64_t>());
    d.set_seed(j.value("seed", uint64_t{0}));
    d.add_rejections(j.value("rejections", uint64_t{0}));
    return d;
}

json to_json(const RationalPoly& p) {
    json j = json::array();
    for (auto& c : p.coeffs()) j.push_back(to_string(c));
    return j;
}

json to_json(const ModMatrix& m) { return json{{"mod", m.mod()}, {"rows", m.to_rows()}}; }

json to_json(const AspElement& e) { return json{{"M", e.M.to_rows()}, {"mod", e.M.mod()}, {"v", e.v}}; }

json to_json(const NielsenDatum& d) {
    auto list = [](const std::vector<AspElement>& xs) {
        json a = json::array();
        for (auto& x : xs) a.push_back(to_json(x));
        return a;
    };
    return json{{"genus", d.genus}, {"handles", list(d.handles)}, {"fixed", list(d.fixed)}, {"branch", list(d.branch)}};
}

json to_json(const OrbitReport& r) {
    json reps = json::array();
    for (auto& d : r.representatives) reps.push_back(to_json(d));
    return json{{"count", r.count}, {"sizes", r.sizes}, {"representatives", reps}};
}

json to_json(const TorsorCount& t) {
    return json{{"solutions", to_json(t.solutions)}, {"stabilizer", to_json(t.stabilizer)},
                {"count", to_json(t.count)},         {"formula", to_json(t.formula)},
                {"exponent", t.exponent},            {"sum_drop", t.sum_drop},
                {"base_relation_ok", t.base_relation_ok}, {"free_action", t.free_action},
                {"matches", t.matches}};
}

namespace {
json identity_json(const IdentityCheck& c) {
    return json{{"name", c.name}, {"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}, {"holds", c.holds},
                {"offending_coefficient", c.offending_coefficient}};
}
}  // namespace

json to_json(const CosetIdentityReport& r) {
    json gf = json::object();
    for (auto& [label, p] : r.gf) gf[to_string(label)] = to_json(p);
    json ids = json::array(), sup = json::array();
    for (auto& c : r.identities) ids.push_back(identity_json(c));
    for (auto& c : r.supplementary) sup.push_back(identity_json(c));
    return json{{"l", r.l},
                {"dim", r.dim},
                {"group_order", to_json(r.group_order)},
                {"omega_order", to_json(r.omega_order)},
                {"generating_functions", gf},
                {"identities", ids},
                {"supplementary", sup},
                {"all_hold", r.all_hold()}};
}

json to_json(const GradedOrbitRing& ring) {
    json deg = json::array();
    for (int n = 0; n <= ring.max_degree(); ++n) {
        std::vector<uint64_t> sizes;
        for (int i = 0; i < ring.basis_size(n); ++i) sizes.push_back(ring.orbit_size(n, i));
        deg.push_back(json{{"degree", n}, {"basis_size", ring.basis_size(n)}, {"orbit_sizes", sizes}});
    }
    return json{{"class_size", ring.rack().size}, {"max_degree", ring.max_degree()}, {"degrees", deg}};
}

json to_json(const UOperator& U) {
    json terms = json::array();
    for (auto [t, c] : U.terms) terms.push_back(json{{"orbit", t}, {"coefficient", c}});
    json mats = json::array();
    for (size_t n = 0; n < U.matrices.size(); ++n) {
        json cols = json::array();
        for (auto& col : U.matrices[n].cols) {
            json c = json::array();
            for (auto& [i, x] : col) c.push_back(json{i, to_string(x)});
            cols.push_back(std::move(c));
        }
        mats.push_back(json{{"source_degree", n}, {"rows", U.matrices[n].rows}, {"columns", cols}});
    }
    return json{{"D", U.D}, {"degree", U.degree}, {"terms", terms}, {"matrices", mats}};
}

json to_json(const StabilizationReport& r) {
    json rows = json::array();
    for (auto& x : r.rows)
        rows.push_back(json{{"n", x.n}, {"source", x.source}, {"target", x.target}, {"rank", x.rank},
                            {"kernel", x.kernel}, {"cokernel", x.cokernel}, {"bijective", x.bijective}});
    return json{{"rows", rows},
                {"first_bijective", r.first_bijective},
                {"bijective_after_first", r.bijective_after_first},
                {"threshold", r.threshold},
                {"central", r.central}};
}

json to_json(const KComplexReport& r) {
    return json{{"max_degree", r.max_degree},
                {"field", r.field.exact() ? std::string("Q") : "F_" + std::to_string(r.field.p)},
                {"dim_k0", r.dim_k0},
                {"dim_k1", r.dim_k1},
                {"dim_k2", r.dim_k2},
                {"rank_d1", r.rank_d1},
                {"rank_d2", r.rank_d2},
                {"h0", r.h0},
                {"h1", r.h1},
                {"d_squared_zero", r.d_squared_zero},
                {"h0_concentrated", r.h0_concentrated},
                {"h1_top_degree", r.h1_top_degree},
                {"h1_finite_in_window", r.h1_finite_in_window},
                {"right_action_zero", r.right_action_zero},
                {"failures", r.failures}};
}

}  // namespace selmer
