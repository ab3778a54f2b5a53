#include "selmer/eigendist.hpp"

#include <cmath>

namespace selmer {

ModuleDistribution ModuleDistribution::exact(std::map<FiniteModule, Rational> weights) {
    ModuleDistribution d(Mode::Exact);
    for (auto& [m, w] : weights)
        if (w != 0) d.weights_[m] = w;
    d.validate();
    return d;
}

ModuleDistribution ModuleDistribution::from_counts(const std::map<FiniteModule, BigInt>& counts) {
    BigInt total = 0;
    for (auto& [m, c] : counts) total += c;
    if (total == 0) throw std::invalid_argument("from_counts: empty distribution");
    std::map<FiniteModule, Rational> w;
    for (auto& [m, c] : counts)
        if (c != 0) w[m] = Rational(c, total);
    return exact(std::move(w));
}

void ModuleDistribution::add_sample(const FiniteModule& m, uint64_t k) {
    if (mode_ != Mode::Empirical) throw std::logic_error("add_sample on exact distribution");
    counts_[m] += k;
    samples_ += k;
}

void ModuleDistribution::merge(const ModuleDistribution& o) {
    if (mode_ != Mode::Empirical || o.mode_ != Mode::Empirical) throw std::logic_error("merge: empirical only");
    for (auto& [m, c] : o.counts_) counts_[m] += c;
    samples_ += o.samples_;
    rejections_ += o.rejections_;
}

Rational ModuleDistribution::probability(const FiniteModule& m) const {
    if (mode_ == Mode::Exact) {
        auto it = weights_.find(m);
        return it == weights_.end() ? Rational(0) : it->second;
    }
    auto it = counts_.find(m);
    if (it == counts_.end() || samples_ == 0) return 0;
    return Rational(BigInt(it->second), BigInt(samples_));
}

std::map<FiniteModule, Rational> ModuleDistribution::probabilities() const {
    if (mode_ == Mode::Exact) return weights_;
    std::map<FiniteModule, Rational> out;
    for (auto& [m, c] : counts_) out[m] = Rational(BigInt(c), BigInt(samples_));
    return out;
}

std::vector<FiniteModule> ModuleDistribution::support() const {
    std::vector<FiniteModule> out;
    if (mode_ == Mode::Exact)
        for (auto& [m, w] : weights_) out.push_back(m);
    else
        for (auto& [m, c] : counts_) out.push_back(m);
    return out;
}

void ModuleDistribution::validate() const {
    if (mode_ == Mode::Exact) {
        Rational s = 0;
        for (auto& [m, w] : weights_) {
            if (w <= 0) throw InvariantViolation("distribution weight not positive at " + m.str());
            s += w;
        }
        if (s != 1) throw InvariantViolation("exact distribution sums to " + to_string(s));
    } else {
        uint64_t s = 0;
        for (auto& [m, c] : counts_) {
            if (c == 0) throw InvariantViolation("empirical count zero at " + m.str());
            s += c;
        }
        if (s != samples_) throw InvariantViolation("empirical counts do not sum to N");
    }
}

bool Population::contains(const QuadSpace& space, const OrthoElement& g) const {
    switch (kind) {
        case Kind::All: return true;
        case Kind::SO: {
            for (auto b : dickson(space, g))
                if (b) return false;
            return true;
        }
        case Kind::Coset: return coset_signature(space, g) == coset;
        case Kind::Explicit:
            for (auto& e : elements)
                if (e == g) return true;
            return false;
    }
    return false;
}

std::string Population::name() const {
    switch (kind) {
        case Kind::All: return "O";
        case Kind::SO: return "SO";
        case Kind::Coset: return coset.label();
        case Kind::Explicit: return "explicit(" + std::to_string(elements.size()) + ")";
    }
    return "?";
}

namespace {

FiniteModule fixed_module(const OrthoElement& g) {
    return kernel_module(g.m - ModMatrix::identity(g.m.rows(), g.m.mod()));
}

}  // namespace

ModuleDistribution kernel_distribution(const QuadSpace& space, const Population& pop, const SamplingMode& mode) {
    if (mode.exhaustive) {
        std::map<FiniteModule, BigInt> counts;
        if (pop.kind == Population::Kind::Explicit) {
            if (pop.elements.empty()) throw std::invalid_argument("kernel_distribution: empty element list");
            for (auto& g : pop.elements) counts[fixed_module(g)] += 1;
        } else {
            for_each_orthogonal(space, [&](const OrthoElement& g) {
                if (pop.contains(space, g)) counts[fixed_module(g)] += 1;
            }, mode.budget);
        }
        if (counts.empty()) throw InvariantViolation("kernel_distribution: empty population " + pop.name());
        return ModuleDistribution::from_counts(counts);
    }
    ModuleDistribution d(ModuleDistribution::Mode::Empirical);
    d.set_seed(mode.seed);
    if (pop.kind == Population::Kind::Explicit) {
        if (pop.elements.empty()) throw std::invalid_argument("kernel_distribution: empty element list");
        std::mt19937_64 rng(mode.seed);
        std::uniform_int_distribution<size_t> pick(0, pop.elements.size() - 1);
        for (uint64_t i = 0; i < mode.samples; ++i) d.add_sample(fixed_module(pop.elements[pick(rng)]));
        return d;
    }
    OrthoSampler sampler(space, mode.seed);
    uint64_t rejected = 0;
    for (uint64_t i = 0; i < mode.samples; ++i) {
        OrthoElement g;
        if (pop.kind == Population::Kind::Coset) {
            g = sampler.sample(pop.coset);
        } else {
            while (true) {
                g = sampler.sample();
                if (pop.contains(space, g)) break;
                ++rejected;
            }
        }
        d.add_sample(fixed_module(g));
    }
    d.add_rejections(rejected + sampler.rejections());
    return d;
}

std::map<int, Rational> dimension_distribution(const ModuleDistribution& d, int64_t l) {
    std::map<int, Rational> out;
    for (auto& [m, p] : d.probabilities()) out[m.rank_at(l)] += p;
    return out;
}

RationalPoly generating_function(const ModuleDistribution& d, int64_t l) {
    RationalPoly g;
    for (auto& [k, p] : dimension_distribution(d, l)) g = g + RationalPoly::monomial(p, k);
    return g;
}

Rational tv_distance(const ModuleDistribution& x, const ModuleDistribution& y, int m) {
    auto px = x.probabilities(), py = y.probabilities();
    std::map<FiniteModule, Rational> diff = px;
    for (auto& [k, p] : py) diff[k] -= p;
    Rational total = 0;
    for (auto& [k, v] : diff) {
        if (v == 0) continue;
        Rational w = Rational(boost::multiprecision::pow(k.order(), static_cast<unsigned>(m)));
        total += w * (v < 0 ? -v : v);
    }
    return total;
}

Rational expected_count(const ModuleDistribution& d, const FiniteModule& h, MapKind kind) {
    Rational e = 0;
    for (auto& [k, p] : d.probabilities()) e += p * Rational(count_maps(k, h, kind));
    return e;
}

SampleStats count_statistics(const ModuleDistribution& d, const FiniteModule& h, MapKind kind) {
    SampleStats st;
    if (d.is_exact()) {
        st.mean = static_cast<double>(expected_count(d, h, kind));
        return st;
    }
    st.n = d.samples();
    if (st.n == 0) return st;
    double s1 = 0, s2 = 0;
    for (auto& [k, c] : d.counts()) {
        double v = static_cast<double>(count_maps(k, h, kind));
        s1 += v * static_cast<double>(c);
        s2 += v * v * static_cast<double>(c);
    }
    double n = static_cast<double>(st.n);
    st.mean = s1 / n;
    double var = st.n > 1 ? (s2 - n * st.mean * st.mean) / (n - 1) : 0;
    st.stderr_ = std::sqrt(std::max(var, 0.0) / n);
    return st;
}

std::vector<PointComparison> compare_to_reference(const ModuleDistribution& emp, const ModuleDistribution& ref) {
    std::map<FiniteModule, std::pair<double, double>> pts;
    for (auto& [m, p] : emp.probabilities()) pts[m].first = static_cast<double>(p);
    for (auto& [m, p] : ref.probabilities()) pts[m].second = static_cast<double>(p);
    double n = static_cast<double>(emp.samples());
    std::vector<PointComparison> out;
    for (auto& [m, op] : pts) {
        auto [o, e] = op;
        double sd = std::sqrt(std::max(e * (1 - e), 1e-300) / std::max(n, 1.0));
        out.push_back({m, o, e, (o - e) / sd});
    }
    return out;
}

bool CosetIdentityReport::all_hold() const {
    for (auto& c : identities)
        if (!c.holds) return false;
    return true;
}

namespace {

IdentityCheck make_check(std::string name, const RationalPoly& lhs, const RationalPoly& rhs) {
    IdentityCheck c{std::move(name), lhs, rhs, lhs == rhs, -1};
    if (!c.holds) {
        int deg = std::max(lhs.degree(), rhs.degree());
        for (int i = 0; i <= deg; ++i)
            if (lhs.coeff(i) != rhs.coeff(i)) {
                c.offending_coefficient = i;
                break;
            }
    }
    return c;
}

RationalPoly even_product(int64_t l, int from, int to) {
    RationalPoly p = RationalPoly::constant(1);
    for (int i = from; i <= to; ++i) p = p * RationalPoly({-rat_pow(l, 2 * i), Rational(0), Rational(1)});
    return p;
}

}  // namespace

CosetIdentityReport coset_identity_check(const QuadSpace& space, const BigInt& budget) {
    if (space.modulus().omega() != 1 || space.modulus().factors()[0].second != 1)
        throw std::invalid_argument("coset_identity_check: nu must be prime");
    const int64_t l = space.nu();
    const int dim = space.rank();
    std::map<CosetLabel, std::map<int, BigInt>> hist;
    std::map<CosetLabel, BigInt> sizes;
    BigInt total = 0;
    for_each_orthogonal(space, [&](const OrthoElement& g) {
        CosetSignature sig = coset_signature(space, g);
        CosetLabel lab = static_cast<CosetLabel>(sig.dickson[0] * 2 + sig.spinor[0]);
        int k = dim - rank_mod_prime(g.m - ModMatrix::identity(dim, l), l);
        hist[lab][k] += 1;
        sizes[lab] += 1;
        total += 1;
    }, budget);

    CosetIdentityReport rep;
    rep.l = l;
    rep.dim = dim;
    rep.group_order = total;
    rep.omega_order = sizes[CosetLabel::Omega];
    for (CosetLabel lab : {CosetLabel::Omega, CosetLabel::A, CosetLabel::B, CosetLabel::C}) {
        if (sizes[lab] == 0) throw InvariantViolation("coset_identity_check: empty coset " + to_string(lab));
        RationalPoly g;
        for (auto& [k, c] : hist[lab]) g = g + RationalPoly::monomial(Rational(c, sizes[lab]), k);
        rep.gf[lab] = g;
    }
    const Rational inv_omega(BigInt(1), rep.omega_order);
    auto& G = rep.gf;
    RationalPoly bc = G[CosetLabel::B] - G[CosetLabel::C];
    RationalPoly oa = G[CosetLabel::Omega] - G[CosetLabel::A];
    if (dim % 2 == 0) {
        int s = dim / 2;
        rep.identities.push_back(make_check("G_B = G_C", bc, RationalPoly()));
        rep.identities.push_back(make_check("G_Omega - G_A = prod_{i=0}^{s-1}(t^2-l^{2i})/#Omega", oa,
                                            even_product(l, 0, s - 1) * inv_omega));
    } else {
        int s = dim / 2;
        int sgn = legendre(-1, l);
        rep.identities.push_back(make_check("G_B - G_C = 2 sgn(-1) l^s/#Omega prod_{i=1}^{s-1}(t^2-l^{2i})", bc,
                                            even_product(l, 1, s - 1) * (Rational(2 * sgn) * rat_pow(l, s) * inv_omega)));
        rep.identities.push_back(make_check("G_Omega - G_A = t/#Omega prod_{i=0}^{s-1}(t^2-l^{2i})", oa,
                                            RationalPoly::monomial(inv_omega, 1) * even_product(l, 0, s - 1)));
        int64_t disc = det_mod_prime(space.gram(), l);
        if ((s + 1) % 2) disc = l - disc;
        int eta = legendre(disc, l);
        rep.supplementary.push_back(make_check("G_B - G_C = eta((-1)^{s+1} disc) l^s/#Omega prod_{i=0}^{s-1}(t^2-l^{2i})",
                                               bc, even_product(l, 0, s - 1) * (Rational(eta) * rat_pow(l, s) * inv_omega)));
    }
    return rep;
}

}  // namespace selmer
