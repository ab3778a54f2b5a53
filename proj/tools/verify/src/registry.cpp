#include "suite_util.hpp"

#include <functional>
#include <stdexcept>

namespace selmer::verify {

bool SuiteReport::pass() const {
    for (auto& c : checks)
        if (c.gating && !c.pass) return false;
    return true;
}

std::string SuiteReport::summary() const {
    int total = 0, ok = 0;
    for (auto& c : checks)
        if (c.gating) {
            ++total;
            ok += c.pass;
        }
    return detail::cat(ok, "/", total, " checks");
}

namespace {

struct Entry {
    SuiteInfo info;
    std::function<void(SuiteReport&, const Options&)> body;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r = {
        {{"parity-law", 1, "dim ker(g - 1) mod 2 = rank - Dickson(g), exhaustive over small O(Q)"}, detail::parity_law},
        {{"index-law", 2, "|O| / |Omega| = 4^omega(nu), enumeration plus sampled membership rates"}, detail::index_law},
        {{"coset-identities", 3, "coset generating-function identities, exact"}, detail::coset_identities},
        {{"moments", 4, "#Sym^2 H, finite-n moments and Monte-Carlo E[#Surj]"}, detail::moments},
        {{"average-size", 5, "E[#Hom(ker(g - 1), Z/3)] = 4 at rank 8"}, detail::average_size},
        {{"torsor-counts", 6, "torsor class counts: linear algebra = closed form = brute force"}, detail::torsor_counts},
        {{"burnside", 7, "Burnside averages equal union-find orbit counts"}, detail::burnside},
        {{"braid-invariance", 8, "braid moves preserve the Nielsen constraints"}, detail::braid_invariance},
        {{"cells", 9, "cell tuple enumeration vs closed form and 2^(2g+f+n) bound"}, detail::cells},
        {{"stability", 10, "orbit ring, U-operator scan and K-complex homology"}, detail::stability},
        {{"model-agreement", 11, "alternating-cokernel vs Grassmannian model, m-TV probes"}, detail::model_agreement},
    };
    return r;
}

}  // namespace

const std::vector<SuiteInfo>& suites() {
    static const std::vector<SuiteInfo> s = [] {
        std::vector<SuiteInfo> out;
        for (auto& e : registry()) out.push_back(e.info);
        return out;
    }();
    return s;
}

const SuiteInfo* find_suite(const std::string& key) {
    for (auto& s : suites())
        if (s.name == key || std::to_string(s.criterion) == key) return &s;
    return nullptr;
}

SuiteReport run_suite(const std::string& name, const Options& opt) {
    for (auto& e : registry()) {
        if (e.info.name != name && std::to_string(e.info.criterion) != name) continue;
        SuiteReport r;
        r.suite = e.info.name;
        r.criterion = e.info.criterion;
        detail::Stopwatch sw;
        e.body(r, opt);
        r.seconds = sw.seconds();
        return r;
    }
    std::string known;
    for (auto& s : suites()) known += (known.empty() ? "" : ", ") + s.name;
    throw std::invalid_argument("unknown suite '" + name + "'; available: " + known);
}

}  // namespace selmer::verify
