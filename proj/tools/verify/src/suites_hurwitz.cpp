#include "selmer/hurwitz.hpp"
#include "suite_util.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace selmer::verify::detail {

namespace {

ModMatrix mat2(int64_t a, int64_t b, int64_t c, int64_t d, int64_t nu) { return ModMatrix::from_rows({{a, b}, {c, d}}, nu); }

ModMatrix puncture_matrix(int drop_target, int64_t nu) {
    switch (drop_target) {
        case 0: return ModMatrix::identity(2, nu);
        case 1: return mat2(1, 1, 0, 1, nu);
        default: return mat2(0, 1, -1, 0, nu);
    }
}

std::vector<ModMatrix> sl2(int64_t p) {
    std::vector<ModMatrix> out;
    for (int64_t a = 0; a < p; ++a)
        for (int64_t b = 0; b < p; ++b)
            for (int64_t c = 0; c < p; ++c)
                for (int64_t d = 0; d < p; ++d)
                    if (mod_reduce(a * d - b * c, p) == 1) out.push_back(mat2(a, b, c, d, p));
    return out;
}

std::vector<std::vector<int64_t>> all_vectors(int dim, int64_t nu) {
    std::vector<std::vector<int64_t>> out{{}};
    for (int i = 0; i < dim; ++i) {
        std::vector<std::vector<int64_t>> next;
        for (auto& v : out)
            for (int64_t x = 0; x < nu; ++x) {
                auto w = v;
                w.push_back(x);
                next.push_back(std::move(w));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

void torsor_counts(SuiteReport& r, const Options&) {
    Stopwatch sw;
    const Modulus nu(3);
    const ModMatrix A = mat2(1, 1, 0, 1, 3), B = mat2(1, 0, 1, 1, 3);
    const ModMatrix comm = A * B * inverse(A) * inverse(B);
    for (int g : {0, 1})
        for (int n : {2, 4})
            for (int d : {0, 1, 2}) {
                TorsorSpec s{nu, 1, g, {}, {}, n};
                ModMatrix T = puncture_matrix(d, 3);
                if (g == 1) s.handles = {A, B};
                ModMatrix pre = g == 1 ? comm * T : T;
                s.fixed = {T, inverse(pre)};
                TorsorCount lin = torsor_count(s);
                TorsorCount brute = torsor_count_brute_force(s);
                std::string name = cat("g=", g, " n=", n, " drop(T)=", d, " sum drop=", lin.sum_drop);
                r.checks.push_back(check(name + ": linear algebra = closed form", lin.base_relation_ok && lin.matches,
                                         cat(lin.count, " vs 3^", lin.exponent, " = ", lin.formula)));
                r.checks.push_back(check(name + ": brute force = linear algebra",
                                         brute.count == lin.count && brute.solutions == lin.solutions,
                                         cat("brute ", brute.count, " classes from ", brute.solutions,
                                             " solutions; linear ", lin.count, " from ", lin.solutions)));
            }
    {
        // one fixed puncture with trivial inertia on a torus: 3^{(2g-2+n)2r} = 81
        TorsorSpec s{nu, 1, 1, {ModMatrix::identity(2, 3), ModMatrix::identity(2, 3)}, {ModMatrix::identity(2, 3)}, 2};
        TorsorCount lin = torsor_count(s), brute = torsor_count_brute_force(s);
        r.checks.push_back(check("g=1 n=2 single trivial puncture = 81", lin.count == 81 && brute.count == 81,
                                 cat("linear ", lin.count, ", brute ", brute.count)));
    }
    double s = sw.seconds();
    r.checks.push_back(check("runtime < 60 s", s < 60.0, cat(s, " s")));
}

void braid_invariance(SuiteReport& r, const Options& o) {
    const Modulus nu(3);
    AffSymp G(nu, 1);
    auto cls = G.branch_class();
    auto mats = sl2(3);
    auto vecs = all_vectors(2, 3);
    const ModMatrix I = ModMatrix::identity(2, 3);

    auto apply_all = [&](const NielsenDatum& d, uint64_t& moves, uint64_t& broken, uint64_t& nontrivial, bool slides) {
        std::vector<NielsenDatum> images;
        for (auto& mv : standard_moves(static_cast<int>(d.branch.size()), static_cast<int>(d.fixed.size()), slides))
            images.push_back(braid_act(G, mv, d));
        for (int i = 0; i + 1 < static_cast<int>(d.branch.size()); ++i)
            images.push_back(braid_act_inverse_half_twist(G, i, d));
        for (auto& im : images) {
            ++moves;
            if (!validate(G, im).empty()) ++broken;
            if (!(im == d)) ++nontrivial;
        }
    };

    // exhaustive: g = 0, n = 2, up to two fixed punctures with any matrix parts
    std::vector<NielsenDatum> data;
    for (auto& g1 : cls)
        for (auto& g2 : cls) {
            NielsenDatum d{0, {}, {}, {g1, g2}};
            if (validate(G, d).empty()) data.push_back(d);
            for (auto& M : mats) {
                std::set<std::vector<int64_t>> img;
                for (auto& u : vecs) img.insert((I - M).apply(u));
                for (auto& v : img) {
                    NielsenDatum e{0, {}, {G.make(M, {v})}, {g1, g2}};
                    AspElement last = G.inverse(surface_product(G, e));
                    e.fixed.push_back(last);
                    if (validate(G, e).empty()) data.push_back(e);
                }
            }
        }
    std::sort(data.begin(), data.end(), [](auto& a, auto& b) { return a.key() < b.key(); });
    data.erase(std::unique(data.begin(), data.end()), data.end());
    uint64_t moves = 0, broken = 0, nontrivial = 0;
    for (auto& d : data) apply_all(d, moves, broken, nontrivial, true);
    r.checks.push_back(check("exhaustive (3,1,0,2): every move preserves the constraints", broken == 0 && moves > 0,
                             cat(data.size(), " data, ", moves, " move images, ", broken, " invalid, ", nontrivial,
                                 " nontrivial")));
    std::vector<NielsenDatum> two;
    for (auto& d : data)
        if (d.fixed.size() == 2) two.push_back(d);
    OrbitReport orb = orbit_count(G, two, standard_moves(2, 2, true));
    r.checks.push_back(check("exhaustive (3,1,0,2): set closed under moves", orb.count > 0,
                             cat(orb.count, " orbits on ", two.size(), " two-puncture data"), false));

    // random data at n = 4: genus 0 with slides, genus 1 with half twists
    std::mt19937_64 rng(o.seed);
    auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };
    const uint64_t target = 10'000;
    for (int genus : {0, 1}) {
        uint64_t made = 0, tries = 0;
        moves = broken = nontrivial = 0;
        while (made < target) {
            ++tries;
            NielsenDatum d;
            d.genus = genus;
            for (int i = 0; i < 2 * genus; ++i) d.handles.push_back(G.make(mats[pick(mats.size())], {vecs[pick(vecs.size())]}));
            for (int i = 0; i < 4; ++i) d.branch.push_back(cls[pick(cls.size())]);
            ModMatrix M = mats[pick(mats.size())];
            d.fixed.push_back(G.make(M, {(I - M).apply(vecs[pick(vecs.size())])}));
            d.fixed.push_back(G.inverse(surface_product(G, d)));
            if (!validate(G, d).empty()) continue;  // last puncture violates the extension condition
            ++made;
            apply_all(d, moves, broken, nontrivial, genus == 0);
        }
        r.checks.push_back(check(cat("random n=4 genus ", genus, ": every move preserves the constraints"), broken == 0,
                                 cat(made, " data (", tries, " drawn), ", moves, " move images, ", broken, " invalid, ",
                                     nontrivial, " nontrivial")));
    }
}

}  // namespace selmer::verify::detail
