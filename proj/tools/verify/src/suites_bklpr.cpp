#include "selmer/bklpr.hpp"
#include "selmer/eigendist.hpp"
#include "selmer/verify/oracles.hpp"
#include "suite_util.hpp"

#include <cmath>

namespace selmer::verify::detail {

void moments(SuiteReport& r, const Options& o) {
    // (a) closed form for #Sym^2 H against a presentation computed from scratch
    {
        const Modulus nu(729LL * 625 * 343);
        auto hs = modules_up_to(nu, 729);
        size_t bad = 0;
        std::string first;
        for (auto& h : hs) {
            BigInt a = sym2_order(h), b = oracle::sym2_order_presentation(h);
            if (a != b) {
                if (!bad) first = cat(h.str(), ": ", a, " vs ", b);
                ++bad;
            }
        }
        r.checks.push_back(check("sym2_order vs presentation, all H of odd order <= 3^6 (primes 3,5,7)", bad == 0,
                                 bad ? cat(bad, " mismatches, first ", first) : cat(hs.size(), " modules agree")));
    }
    // (b) finite-n moment against all pairs of maximal isotropics
    for (auto [l, j, n] : std::vector<std::tuple<int64_t, int, int>>{{3, 1, 1}, {3, 1, 2}, {5, 1, 1}})
        for (int k = 0; k <= n + 1; ++k) {
            FiniteModule h = k ? FiniteModule::elementary(l, k) : FiniteModule();
            Rational closed = finite_n_moment(l, j, n, h);
            Rational brute = oracle::isotropic_pair_moment(l, j, n, h);
            r.checks.push_back(check(cat("finite_n_moment (l,j,n)=(", l, ",", j, ",", n, ") H=", h.str()), closed == brute,
                                     cat("closed form ", to_string(closed), ", enumeration ", to_string(brute))));
        }
    // (c) Monte-Carlo E[#Surj(X, H)] against #Sym^2 H
    for (int64_t nuv : {3, 9, 15}) {
        Modulus nu(nuv);
        BklprRef ref = bklpr_distribution(nu, 8, BklprVariant::Full, SamplingMode::monte_carlo(o.samples, o.seed));
        for (auto& h : modules_up_to(nu, 81)) {
            if (h.is_trivial()) continue;
            SampleStats st = count_statistics(ref.dist, h, MapKind::Surj);
            double want = static_cast<double>(sym2_order(h));
            double z = st.stderr_ > 0 ? (st.mean - want) / st.stderr_ : (st.mean == want ? 0.0 : INFINITY);
            r.checks.push_back(check(cat("MC E[#Surj] nu=", nuv, " H=", h.str()), std::fabs(z) <= 3.0,
                                     cat("mean ", st.mean, " +- ", st.stderr_, " vs #Sym2 ", want, ", z = ", z)));
        }
    }
}

namespace {

ModuleDistribution add_cyclic(const ModuleDistribution& d, int64_t l) {
    ModuleDistribution out(ModuleDistribution::Mode::Empirical);
    for (auto& [m, c] : d.counts()) out.add_sample(m.direct_sum(FiniteModule::cyclic(l)), c);
    out.set_seed(d.seed());
    out.add_rejections(d.rejections());
    return out;
}

// Crude standard error of an empirical m-TV distance: sum of per-atom binomial errors.
double tv_sigma(const ModuleDistribution& d, int m) {
    double s = 0;
    const double N = static_cast<double>(d.samples());
    for (auto& [k, c] : d.counts()) {
        double p = static_cast<double>(c) / N;
        s += std::pow(static_cast<double>(k.order()), m) * std::sqrt(p * (1 - p) / N);
    }
    return s;
}

}  // namespace

void model_agreement(SuiteReport& r, const Options& o) {
    const int64_t l = 3;
    const int n = 6;
    // parity 0: alternating 12x12 vs Grassmannian with even intersection dimension
    {
        ModuleDistribution alt = alternating_distribution(2 * n, l, 1, o.samples, o.seed);
        BklprRef og = bklpr_distribution(Modulus(l), n, BklprVariant::Parity0, SamplingMode::monte_carlo(o.samples, o.seed + 1));
        double d0 = to_double(tv_distance(alt, og.dist, 0));
        r.checks.push_back(check("d0(alternating m=12, OGr n=6 even) <= 0.05", d0 <= 0.05,
                                 cat("d0 = ", d0, " (", alt.rejections(), " alternating rejections)")));
    }
    // parity 1: alternating 13x13 torsion plus Z/3 vs odd intersections
    {
        ModuleDistribution alt = add_cyclic(alternating_distribution(2 * n + 1, l, 1, o.samples, o.seed + 2), l);
        BklprRef og = bklpr_distribution(Modulus(l), n, BklprVariant::Parity1, SamplingMode::monte_carlo(o.samples, o.seed + 3));
        double d0 = to_double(tv_distance(alt, og.dist, 0));
        r.checks.push_back(check("d0(alternating m=13 + Z/3, OGr n=6 odd) <= 0.05", d0 <= 0.05, cat("d0 = ", d0)));
    }
    // m-TV probes against a deep Grassmannian reference
    ModuleDistribution ref = ogr_elementary_distribution(l, 40, BklprVariant::Full);
    for (int m : {0, 1}) {
        std::vector<double> exact;
        for (int k = 2; k <= 6; ++k) exact.push_back(to_double(tv_distance(ogr_elementary_distribution(l, k, BklprVariant::Full), ref, m)));
        bool dec = true;
        for (size_t i = 1; i < exact.size(); ++i) dec = dec && exact[i] < exact[i - 1];
        std::string seq;
        for (double x : exact) seq += cat(x, " ");
        r.checks.push_back(check(cat("d", m, " OGr_n -> limit decreasing, n=2..6"), dec, seq));

        // orthogonal kernel distributions: exact through rank 5, sampled at rank 6
        std::vector<double> val, sig;
        for (int k = 2; k <= 6; ++k) {
            QuadSpace sp = QuadSpace::diagonal(std::vector<int64_t>(k, 1), l);
            SamplingMode mode = k <= 5 ? SamplingMode::exact() : SamplingMode::monte_carlo(o.samples, o.seed + 10 + k);
            ModuleDistribution d = kernel_distribution(sp, Population::all(), mode);
            val.push_back(to_double(tv_distance(d, ref, m)));
            sig.push_back(d.is_exact() ? 0.0 : tv_sigma(d, m));
        }
        bool ok = true;
        std::string s2;
        for (size_t i = 0; i < val.size(); ++i) {
            s2 += cat(val[i], sig[i] > 0 ? cat("+-", sig[i]) : "", " ");
            if (i && val[i] > val[i - 1] + 3 * (sig[i] + sig[i - 1])) ok = false;
        }
        r.checks.push_back(check(cat("d", m, " ker(g-1), O_n(F3) -> limit non-increasing within 3 sigma, n=2..6"), ok, s2));
    }
}

}  // namespace selmer::verify::detail
