#include "selmer/eigendist.hpp"
#include "selmer/hurwitz.hpp"
#include "selmer/quadspace.hpp"
#include "selmer/verify/oracles.hpp"
#include "suite_util.hpp"

#include <cmath>

namespace selmer::verify::detail {

namespace {

std::string diag_name(const std::vector<int64_t>& d, int64_t nu) {
    std::string s = "diag(";
    for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")/Z" + std::to_string(nu);
}

}  // namespace

void parity_law(SuiteReport& r, const Options&) {
    Stopwatch sw;
    const std::vector<std::pair<std::vector<int64_t>, int64_t>> spaces = {
        {{1, 1, 1}, 3}, {{1, 1, 1, 1}, 3}, {{1, 1, 1, 2}, 3}, {{1, 1, 1, 1, 1}, 3}, {{1, 1, 1}, 5},
    };
    for (auto& [d, l] : spaces) {
        QuadSpace sp = QuadSpace::diagonal(d, l);
        uint64_t count = 0, violations = 0;
        const int rk = sp.rank();
        for_each_orthogonal(sp, [&](const OrthoElement& g) {
            ++count;
            int kerdim = rk - rank_mod_prime(g.m - ModMatrix::identity(rk, l), l);
            int D = dickson(sp, g)[0];
            if (((kerdim - rk + D) % 2 + 2) % 2 != 0) ++violations;
        });
        BigInt expect = orthogonal_group_order(sp);
        r.checks.push_back(check(cat("enumerate ", diag_name(d, l)), BigInt(count) == expect,
                                 cat("|O| = ", count, ", closed form ", expect)));
        r.checks.push_back(check(cat("parity law ", diag_name(d, l)), violations == 0,
                                 cat(violations, " violations over ", count, " elements")));
    }
    QuadSpace small = QuadSpace::diagonal({1, 1, 1}, 3);
    uint64_t naive = oracle::orthogonal_count_naive(small);
    r.checks.push_back(check("naive matrix scan diag(1,1,1)/Z3", BigInt(naive) == orthogonal_group_order(small),
                             cat(naive, " orthogonal matrices among 3^9")));
    double s = sw.seconds();
    r.checks.push_back(check("runtime < 120 s", s < 120.0, cat(s, " s")));
}

void index_law(SuiteReport& r, const Options& o) {
    for (int64_t nu : {3, 5, 9, 15}) {
        QuadSpace sp = QuadSpace::diagonal({1, 1, 1}, nu);
        Modulus mod(nu);
        uint64_t count = 0, omega = 0;
        for_each_orthogonal(sp, [&](const OrthoElement& g) {
            ++count;
            omega += omega_member(sp, g);
        });
        BigInt lifted = orthogonal_group_order(sp);
        r.checks.push_back(check(cat("lifting count nu=", nu), BigInt(count) == lifted,
                                 cat("enumerated ", count, ", closed form ", lifted)));
        const uint64_t want = ipow(4, mod.omega());
        bool exact = omega > 0 && count % omega == 0 && count / omega == want;
        r.checks.push_back(check(cat("index nu=", nu), exact,
                                 cat("|O|/|Omega| = ", count, "/", omega, " (want ", want, ")")));
        // sampled membership rate
        const uint64_t N = std::max<uint64_t>(o.samples / 5, 1000);
        OrthoSampler sampler(sp, o.seed + static_cast<uint64_t>(nu));
        uint64_t hits = 0;
        for (uint64_t i = 0; i < N; ++i) hits += omega_member(sp, sampler.sample());
        double p = 1.0 / static_cast<double>(want), rate = static_cast<double>(hits) / static_cast<double>(N);
        double sigma = std::sqrt(p * (1 - p) / static_cast<double>(N));
        double z = (rate - p) / sigma;
        r.checks.push_back(check(cat("sampled Omega rate nu=", nu), std::fabs(z) <= 3.0,
                                 cat("rate ", rate, " vs ", p, " over ", N, " samples, z = ", z)));
    }
}

void coset_identities(SuiteReport& r, const Options&) {
    Stopwatch sw;
    const std::vector<std::pair<std::vector<int64_t>, int64_t>> spaces = {
        {{1, 1, 1}, 3}, {{1, 1, 2}, 3}, {{1, 1, 1, 1}, 3}, {{1, 1, 1, 2}, 3}, {{1, 1, 1, 1, 1}, 3}, {{1, 1, 1}, 5},
    };
    for (auto& [d, l] : spaces) {
        QuadSpace sp = QuadSpace::diagonal(d, l);
        CosetIdentityReport rep = coset_identity_check(sp);
        for (auto& id : rep.identities)
            r.checks.push_back(check(cat(diag_name(d, l), ": ", id.name), id.holds,
                                     id.holds ? "exact coefficient-wise equality"
                                              : cat("lhs ", id.lhs.str(), " vs rhs ", id.rhs.str(), ", first mismatch at t^",
                                                    id.offending_coefficient)));
        for (auto& id : rep.supplementary)
            r.checks.push_back(check(cat(diag_name(d, l), ": [supplementary] ", id.name), id.holds,
                                     cat("lhs ", id.lhs.str(), ", rhs ", id.rhs.str()), false));
    }
    double s = sw.seconds();
    r.checks.push_back(check("runtime < 300 s", s < 300.0, cat(s, " s")));
}

void average_size(SuiteReport& r, const Options& o) {
    QuadSpace sp = QuadSpace::diagonal(std::vector<int64_t>(8, 1), 3);
    ModuleDistribution d = kernel_distribution(sp, Population::all(), SamplingMode::monte_carlo(o.samples, o.seed));
    SampleStats st = count_statistics(d, FiniteModule::cyclic(3), MapKind::Hom);
    double z = (st.mean - 4.0) / st.stderr_;
    r.checks.push_back(check("E[#Hom(X, Z/3)] = 4 at rank 8", std::fabs(z) <= 3.0,
                             cat("mean ", st.mean, " +- ", st.stderr_, " (n = ", st.n, "), z = ", z)));
    // exact small-rank companion: Burnside gives the number of O-orbits on V
    QuadSpace sp4 = QuadSpace::diagonal({1, 1, 1, 1}, 3);
    auto group = enumerate_orthogonal(sp4);
    Rational b = burnside_components(group, FiniteModule::cyclic(3));
    r.checks.push_back(check("exact E[#Hom(X, Z/3)] at rank 4", b == 4, cat("value ", to_string(b)), false));
}

void burnside(SuiteReport& r, const Options&) {
    QuadSpace sp = QuadSpace::diagonal({1, 1, 1}, 3);
    auto all = enumerate_orthogonal(sp);
    std::vector<OrthoElement> so, omega;
    for (auto& g : all) {
        if (det_mod_prime(g.m, 3) == 1) so.push_back(g);
        if (omega_member(sp, g)) omega.push_back(g);
    }
    const std::vector<std::pair<std::string, const std::vector<OrthoElement>*>> groups = {
        {"Omega", &omega}, {"SO", &so}, {"O", &all}};
    for (auto& [name, G] : groups)
        for (const FiniteModule& h : {FiniteModule::cyclic(3), FiniteModule::elementary(3, 2)}) {
            Rational b = burnside_components(*G, h);
            BigInt direct = hom_orbits_direct(*G, h);
            r.checks.push_back(check(cat(name, " (order ", G->size(), "), H = ", h.str()), b == Rational(direct),
                                     cat("Burnside ", to_string(b), ", union-find ", direct)));
        }
}

}  // namespace selmer::verify::detail
