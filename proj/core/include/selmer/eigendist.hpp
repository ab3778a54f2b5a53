#pragma once

#include "selmer/modmath.hpp"
#include "selmer/polynomial.hpp"
#include "selmer/quadspace.hpp"

#include <map>
#include <string>
#include <vector>

namespace selmer {

// Finitely supported distribution on module isomorphism classes.
class ModuleDistribution {
public:
    enum class Mode { Exact, Empirical };

    ModuleDistribution() = default;
    explicit ModuleDistribution(Mode mode) : mode_(mode) {}

    static ModuleDistribution exact(std::map<FiniteModule, Rational> weights);
    static ModuleDistribution point_mass(const FiniteModule& m) { return exact({{m, Rational(1)}}); }
    // Normalises nonnegative integer weights into an exact distribution.
    static ModuleDistribution from_counts(const std::map<FiniteModule, BigInt>& counts);

    Mode mode() const { return mode_; }
    bool is_exact() const { return mode_ == Mode::Exact; }

    void add_sample(const FiniteModule& m, uint64_t k = 1);
    void merge(const ModuleDistribution& o);  // empirical only

    uint64_t samples() const { return samples_; }
    uint64_t seed() const { return seed_; }
    uint64_t rejections() const { return rejections_; }
    void set_seed(uint64_t s) { seed_ = s; }
    void add_rejections(uint64_t r) { rejections_ += r; }

    Rational probability(const FiniteModule& m) const;
    std::map<FiniteModule, Rational> probabilities() const;
    const std::map<FiniteModule, Rational>& weights() const { return weights_; }
    const std::map<FiniteModule, uint64_t>& counts() const { return counts_; }
    std::vector<FiniteModule> support() const;

    void validate() const;  // throws InvariantViolation

private:
    Mode mode_ = Mode::Exact;
    std::map<FiniteModule, Rational> weights_;
    std::map<FiniteModule, uint64_t> counts_;
    uint64_t samples_ = 0;
    uint64_t seed_ = 0;
    uint64_t rejections_ = 0;
};

struct Population {
    enum class Kind { All, SO, Coset, Explicit };
    Kind kind = Kind::All;
    CosetSignature coset;
    std::vector<OrthoElement> elements;

    static Population all() { return {}; }
    static Population special() { return {Kind::SO, {}, {}}; }
    static Population coset_of(const CosetSignature& c) { return {Kind::Coset, c, {}}; }
    static Population label(CosetLabel l, int omega) { return coset_of(uniform_signature(l, omega)); }
    static Population explicit_list(std::vector<OrthoElement> e) { return {Kind::Explicit, {}, std::move(e)}; }
    bool contains(const QuadSpace& space, const OrthoElement& g) const;
    std::string name() const;
};

struct SamplingMode {
    bool exhaustive = true;
    uint64_t samples = 0;
    uint64_t seed = 0;
    BigInt budget = 5'000'000;

    static SamplingMode exact(BigInt budget = 5'000'000) { return {true, 0, 0, std::move(budget)}; }
    static SamplingMode monte_carlo(uint64_t n, uint64_t seed) { return {false, n, seed, 0}; }
};

ModuleDistribution kernel_distribution(const QuadSpace& space, const Population& pop, const SamplingMode& mode);

// Mod-l dimension marginal.
std::map<int, Rational> dimension_distribution(const ModuleDistribution& d, int64_t l);
RationalPoly generating_function(const ModuleDistribution& d, int64_t l);

Rational tv_distance(const ModuleDistribution& x, const ModuleDistribution& y, int m);

Rational expected_count(const ModuleDistribution& d, const FiniteModule& h, MapKind kind);

// Mean and standard error of count_maps(X, H) under an empirical distribution.
struct SampleStats {
    double mean = 0, stderr_ = 0;
    uint64_t n = 0;
};
SampleStats count_statistics(const ModuleDistribution& d, const FiniteModule& h, MapKind kind);

struct PointComparison {
    FiniteModule module;
    double observed = 0, expected = 0, z = 0;
};
// z-score per support point of the union of supports (empirical vs exact reference).
std::vector<PointComparison> compare_to_reference(const ModuleDistribution& empirical, const ModuleDistribution& ref);

struct IdentityCheck {
    std::string name;
    RationalPoly lhs, rhs;
    bool holds = false;
    int offending_coefficient = -1;
};

struct CosetIdentityReport {
    int64_t l = 0;
    int dim = 0;
    BigInt group_order, omega_order;
    std::map<CosetLabel, RationalPoly> gf;
    std::vector<IdentityCheck> identities;     // as stated
    std::vector<IdentityCheck> supplementary;  // reflection-line form of odd B - C
    bool all_hold() const;
};

CosetIdentityReport coset_identity_check(const QuadSpace& space, const BigInt& budget = 5'000'000);

}  // namespace selmer
