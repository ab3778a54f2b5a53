#include "selmer/topology.hpp"
#include "suite_util.hpp"

namespace selmer::verify::detail {

void cells(SuiteReport& r, const Options&) {
    size_t configs = 0, bad_count = 0, bad_bound = 0, bad_top = 0;
    std::string first;
    for (int g = 0; g <= 2; ++g)
        for (int f = 0; f <= 2; ++f)
            for (int n = 0; n <= 8; ++n) {
                ++configs;
                auto cellsv = enumerate_cells(g, f, n);
                BigInt closed = cell_count_closed_form(g, f, n);
                if (BigInt(cellsv.size()) != closed) {
                    if (first.empty()) first = cat("(", g, ",", f, ",", n, "): ", cellsv.size(), " vs ", closed);
                    ++bad_count;
                }
                if (BigInt(cellsv.size()) > cell_bound(g, f, n)) ++bad_bound;
                int top = -1;
                size_t at_top = 0;
                bool top_shape = true;
                for (auto& c : cellsv) {
                    if (c.dimension() > top) {
                        top = c.dimension();
                        at_top = 0;
                    }
                    if (c.dimension() == top) ++at_top;
                }
                for (auto& c : cellsv)
                    if (c.dimension() == top && n > 0)
                        top_shape = top_shape && c.b == n &&
                                    std::all_of(c.P.begin(), c.P.end(), [](int x) { return x == 1; });
                if (top != 2 * n || !top_shape || (n > 0 && at_top != 1)) ++bad_top;
            }
    r.checks.push_back(check("cell count = binomial closed form, g,f <= 2, n <= 8", bad_count == 0,
                             bad_count ? cat(bad_count, " mismatches, first ", first) : cat(configs, " configurations")));
    r.checks.push_back(check("cell count <= 2^(2g+f+n)", bad_bound == 0, cat(bad_bound, " violations")));
    r.checks.push_back(check("top cell dimension 2n, unique, all P_i = 1", bad_top == 0, cat(bad_top, " violations")));
    auto small = enumerate_cells(0, 0, 2);
    r.checks.push_back(check("(0,0,2) gives (1,(2)) and (2,(1,1))",
                             small.size() == 2 && small[0].b == 1 && small[0].P == std::vector<int>{2} && small[1].b == 2,
                             cat(small.size(), " tuples")));
}

namespace {

// Derived once at first construction; kept as regression values.
const std::vector<int> kBasisSizes = {1, 9, 33, 63, 71, 72, 72, 72, 72};
const std::vector<int> kH1 = {0, 0, 0, 0, 0, 0, 0};
constexpr int kUThreshold = 5;

}  // namespace

void stability(SuiteReport& r, const Options&) {
    const int N = 8;      // U has degree 2, so the scan R_n -> R_{n+2} needs two extra degrees
    const int window = 6;  // K-complex window
    AffSymp G(Modulus(3), 1);
    auto cls = G.branch_class();
    Rack rack = rack_from_class(G, cls);
    r.checks.push_back(check("class is a rack", is_rack(rack), cat(rack.size, " elements")));
    GradedOrbitRing R = GradedOrbitRing::build(rack, N);
    std::vector<int> sizes;
    for (int n = 0; n <= N; ++n) sizes.push_back(R.basis_size(n));
    std::string ss;
    for (int x : sizes) ss += cat(x, " ");
    r.checks.push_back(check("orbit basis sizes (regression)", sizes == kBasisSizes, ss));
    r.checks.push_back(check("product well defined through degree 6", R.well_defined(window)));
    r.checks.push_back(check("associative on degree <= 2 triples", R.associative(2)));

    std::vector<uint64_t> orders;
    bool all_two = true;
    for (auto& g : cls) {
        orders.push_back(G.order(g));
        all_two = all_two && orders.back() == 2;
    }
    r.checks.push_back(check("ord(g) = 2 on the class", all_two));
    UOperator U = u_operator(R, 1, orders);
    r.checks.push_back(check("deg U = 2 for D = 1", U.degree == 2, cat("degree ", U.degree)));
    StabilizationReport sc = stabilization_scan(R, U);
    std::string rows;
    for (auto& row : sc.rows) rows += cat("n=", row.n, ":", row.source, "->", row.target, " ker ", row.kernel, " coker ", row.cokernel, "; ");
    r.checks.push_back(check("U bijective on every scanned degree past the first bijective one",
                             sc.first_bijective >= 0 && sc.bijective_after_first, rows));
    r.checks.push_back(check("U threshold (regression)", sc.threshold == kUThreshold, cat("threshold ", sc.threshold)));
    r.checks.push_back(check("U commutes with degree-one generators", sc.central));

    KComplexReport K = k_complex(R, window);
    r.checks.push_back(check("d1 d2 = 0 in every degree", K.d_squared_zero));
    std::string h0, h1;
    for (int x : K.h0) h0 += cat(x, " ");
    for (int x : K.h1) h1 += cat(x, " ");
    r.checks.push_back(check("H0 concentrated in degree 0", K.h0_concentrated, h0));
    r.checks.push_back(check("deg H1 finite in the window", K.h1_finite_in_window, cat("H1 dims ", h1, "top ", K.h1_top_degree)));
    r.checks.push_back(check("H1 dims (regression)", K.h1 == kH1, h1));
    r.checks.push_back(check("degree-one classes act by zero on H0, H1", K.right_action_zero,
                             K.failures.empty() ? "" : K.failures.front()));
    KComplexReport K7 = k_complex(R, window, Field::mod(7));
    r.checks.push_back(check("F_7 rerun matches Q", K7.h0 == K.h0 && K7.h1 == K.h1, "", false));
}

}  // namespace selmer::verify::detail
