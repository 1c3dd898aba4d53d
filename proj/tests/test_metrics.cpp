#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "ifacelint/metrics.hpp"
#include "oracle.hpp"
#include "random_model.hpp"

using namespace ifacelint;

namespace {

bool close(double a, double b, double tol = 1e-12) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= tol * scale;
}

const InterfaceMetrics& row(const std::vector<InterfaceMetrics>& rows,
                            const std::string& iface) {
    for (const auto& m : rows) {
        if (m.iface == iface) return m;
    }
    REQUIRE(false);
    return rows.front();
}

} // namespace

TEST_CASE("iuc: perfect cohesion, mixed clients, clientless") {
    InterfaceDecl iface;
    iface.ref = {"", "I"};
    iface.methods = {fixtures::im("void", "a"), fixtures::im("void", "b"),
                     fixtures::im("void", "c"), fixtures::im("void", "d")};
    ClassDecl full, partial;
    full.ref = {"", "Full"};
    partial.ref = {"", "Partial"};

    SUBCASE("one client using all four methods scores 1.0") {
        CodeModel model = CodeModel::build({iface}, {full},
                                           {fixtures::call("Full", "I", "a", 0),
                                            fixtures::call("Full", "I", "b", 0),
                                            fixtures::call("Full", "I", "c", 0),
                                            fixtures::call("Full", "I", "d", 0)},
                                           0);
        CHECK(iuc(model, "I") == 1.0);
    }
    SUBCASE("clients using 4/4 and 1/4 average to 0.625") {
        CodeModel model = CodeModel::build({iface}, {full, partial},
                                           {fixtures::call("Full", "I", "a", 0),
                                            fixtures::call("Full", "I", "b", 0),
                                            fixtures::call("Full", "I", "c", 0),
                                            fixtures::call("Full", "I", "d", 0),
                                            fixtures::call("Partial", "I", "a", 0)},
                                           0);
        CHECK(iuc(model, "I") == 0.625);
    }
    SUBCASE("no clients means undefined, not zero") {
        CodeModel model = CodeModel::build({iface}, {full}, {}, 0);
        CHECK_FALSE(iuc(model, "I").has_value());
    }
}

TEST_CASE("per-interface metrics on the collection pair") {
    FilteredModel filtered =
        apply_filters(fixtures::collections_pair().build(), FilterConfig{});
    AnomalySet anomalies = detect_anomalies(filtered);
    auto rows = interface_metrics(filtered, anomalies);
    REQUIRE(rows.size() == 2);

    const auto& set_row = row(rows, "jcf.Set");
    CHECK(set_row.size == 13);
    CHECK(set_row.dm == 3);
    CHECK(set_row.rdm == 3.0 / 13.0);
    CHECK_FALSE(set_row.um.has_value()); // no implementations: exempt
    CHECK_FALSE(set_row.iuc.has_value());
    CHECK(set_row.client_count == 0);

    const auto& map_row = row(rows, "jcf.Map");
    CHECK(map_row.size == 12);
    CHECK(map_row.dm == 3);
}

TEST_CASE("per-interface metrics on the download manager") {
    FilteredModel filtered =
        apply_filters(fixtures::download_manager().build(), FilterConfig{});
    AnomalySet anomalies = detect_anomalies(filtered);
    auto rows = interface_metrics(filtered, anomalies);
    const auto& m = row(rows, "plugins.download.DownloadManager");
    CHECK(m.size == 31);
    CHECK(m.dm == 0);
    CHECK(m.rdm == 0.0);
    REQUIRE(m.um.has_value());
    CHECK(*m.um == 8);
    CHECK(*m.num == 7);
    CHECK(*m.rum == 8.0 / 31.0);
    CHECK(m.client_count == 3);
    REQUIRE(m.iuc.has_value());
    // clients reach 8, 8 and 7 of the 31 declarations
    CHECK(close(*m.iuc, (8.0 / 31.0 + 8.0 / 31.0 + 7.0 / 31.0) / 3.0, 1e-15));
}

TEST_CASE("system metrics: collection pair") {
    FilteredModel filtered =
        apply_filters(fixtures::collections_pair().build(), FilterConfig{});
    AnomalySet anomalies = detect_anomalies(filtered);
    auto rows = interface_metrics(filtered, anomalies);
    SystemMetrics sys = system_metrics(filtered, anomalies, rows);
    CHECK(sys.total_interface_methods == 25);
    CHECK(sys.sdm == 6);
    CHECK(sys.distinct_dup_signatures == 3);
    CHECK(sys.reim == 3);
    CHECK(sys.rsdm == 6.0 / 25.0);
    CHECK(sys.sum == 0);
    CHECK(sys.snum == 0);
}

TEST_CASE("system metrics: request quadruple incl. shared implementations") {
    FilteredModel filtered =
        apply_filters(fixtures::disk_request_quadruple().build(), FilterConfig{});
    AnomalySet anomalies = detect_anomalies(filtered);
    auto rows = interface_metrics(filtered, anomalies);
    SystemMetrics sys = system_metrics(filtered, anomalies, rows);
    CHECK(sys.total_interface_methods == 14);
    CHECK(sys.sdm == 12);
    CHECK(sys.distinct_dup_signatures == 3);
    CHECK(sys.reim == 9);
    // the read-request implementation serves two interfaces per method
    CHECK(sys.shared_impl_count == 3);
    CHECK(sys.dup_impl_count == 6);
    CHECK(sys.shared_impl_ratio == 0.5);
}

TEST_CASE("system metrics: never-used implementation line counts") {
    CodeModel model = fixtures::download_manager().build();
    FilteredModel filtered = apply_filters(model, FilterConfig{});
    AnomalySet anomalies = detect_anomalies(filtered);
    auto rows = interface_metrics(filtered, anomalies);
    SystemMetrics sys = system_metrics(filtered, anomalies, rows);
    // 47 lines in the primary implementation class, 7 one-liners in the other
    CHECK(sys.nulc == 54);
    CHECK(sys.rnulc == 54.0 / 4200.0);

    const std::string iface = "plugins.download.DownloadManager";
    const std::string primary = "pluginsimpl.local.download.DownloadManagerImpl";
    const InterfaceDecl& decl = filtered.model.interface_at(iface);
    const auto& never = anomalies.usage.never_used.at(iface);
    long primary_share = 0;
    for (std::size_t d = 0; d < decl.methods.size(); ++d) {
        if (!never.count(decl.methods[d].signature.text())) continue;
        for (const auto& mref : filtered.model.overriding_methods(iface, d)) {
            if (mref.owner == primary) {
                primary_share += filtered.model.method_at(mref).loc;
            }
        }
    }
    CHECK(primary_share == 47);
}

TEST_CASE("pearson: exact anchors") {
    const std::vector<double> x123 = {1, 2, 3};
    CHECK(pearson(x123, x123) == 1.0);
    const std::vector<double> neg = {-1, -2, -3};
    CHECK(pearson(x123, neg) == -1.0);

    // frozen from the exact product-moment evaluation:
    // cov = 3, var_x = var_y = 5, r = 3/5
    const std::vector<double> xs = {1, 2, 3, 4};
    const std::vector<double> ys = {2, 1, 4, 3};
    CHECK(pearson(xs, ys) == 0.6);

    CHECK_FALSE(pearson(std::vector<double>{1.0}, std::vector<double>{2.0}).has_value());
    const std::vector<double> flat = {5, 5, 5};
    CHECK_FALSE(pearson(flat, x123).has_value());
    CHECK_THROWS_AS((void)pearson(x123, xs), Error);
}

TEST_CASE("spearman: rank anchors") {
    const std::vector<double> xs = {1, 2, 3, 4};
    const std::vector<double> curved = {1, 8, 27, 256}; // strictly increasing
    CHECK(spearman(xs, curved) == 1.0);
    const std::vector<double> reversed = {9, 7, 5, 1};
    CHECK(spearman(xs, reversed) == -1.0);

    // frozen from the exact mean-rank evaluation: tied xs give rank
    // covariance 0, so the coefficient is exactly 0
    const std::vector<double> tied = {1, 1, 2};
    const std::vector<double> ys = {3, 5, 4};
    CHECK(spearman(tied, ys) == 0.0);
}

TEST_CASE("fractional ranks average ties") {
    const std::vector<double> values = {10, 20, 20, 30};
    CHECK(fractional_ranks(values) == std::vector<double>{1.0, 2.5, 2.5, 4.0});
    const std::vector<double> all_tied = {7, 7, 7};
    CHECK(fractional_ranks(all_tied) == std::vector<double>{2.0, 2.0, 2.0});
}

TEST_CASE("coefficients match the exact-arithmetic oracle on random vectors") {
    std::mt19937_64 rng(60601);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    std::uniform_int_distribution<int> length(2, 40);
    std::uniform_int_distribution<int> coarse(0, 1);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = length(rng);
        std::vector<double> xs(n), ys(n);
        for (int i = 0; i < n; ++i) {
            // mix continuous values with coarse ones so ties occur
            xs[i] = coarse(rng) ? std::floor(value(rng)) : value(rng);
            ys[i] = coarse(rng) ? std::floor(value(rng)) : value(rng);
        }
        auto p = pearson(xs, ys);
        auto p_want = oracle::pearson_exact(xs, ys);
        REQUIRE(p.has_value() == p_want.has_value());
        if (p) CHECK(close(*p, *p_want));
        auto s = spearman(xs, ys);
        auto s_want = oracle::spearman_exact(xs, ys);
        REQUIRE(s.has_value() == s_want.has_value());
        if (s) CHECK(close(*s, *s_want));
    }
}

TEST_CASE("pearson of an affine image is the slope's sign") {
    // exact when the mean divisions stay dyadic (power-of-two n with integer
    // data); within 1e-12 otherwise
    std::mt19937_64 rng(818);
    std::uniform_int_distribution<int> small(-20, 20);
    const int sizes[] = {2, 4, 8, 16, 32, 3, 5, 7, 15, 21};
    for (int trial = 0; trial < 200; ++trial) {
        const int n = sizes[trial % 10];
        const bool dyadic = (n & (n - 1)) == 0;
        std::vector<double> xs(n), ys(n);
        int a = 0;
        while (a == 0) a = small(rng) % 6;
        const int b = small(rng);
        bool varied = false;
        for (int i = 0; i < n; ++i) {
            xs[i] = small(rng);
            if (xs[i] != xs[0]) varied = true;
            ys[i] = a * xs[i] + b;
        }
        if (!varied) continue;
        auto r = pearson(xs, ys);
        const double want = a > 0 ? 1.0 : -1.0;
        REQUIRE(r.has_value());
        if (dyadic) {
            CHECK(*r == want);
        } else {
            CHECK(close(*r, want));
        }
    }
}

TEST_CASE("spearman is invariant under strictly monotone transforms") {
    std::mt19937_64 rng(55500);
    std::uniform_real_distribution<double> value(-4.0, 4.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 20);
        std::vector<double> xs(n), ys(n), cubed(n), expd(n);
        for (int i = 0; i < n; ++i) {
            xs[i] = value(rng);
            ys[i] = value(rng);
            cubed[i] = xs[i] * xs[i] * xs[i];
            expd[i] = std::exp(ys[i]);
        }
        auto base = spearman(xs, ys);
        auto x_transformed = spearman(cubed, ys);
        auto y_transformed = spearman(xs, expd);
        CHECK(base == x_transformed);
        CHECK(base == y_transformed);
    }
}

TEST_CASE("correlate: constructed samples and undefined cases") {
    auto metric = [](int um, double iuc_value) {
        InterfaceMetrics m;
        m.iface = "i" + std::to_string(um);
        m.size = 8;
        m.um = um;
        m.num = 0;
        m.rum = um / 8.0;
        m.iuc = iuc_value;
        m.client_count = 1;
        return m;
    };

    SUBCASE("strictly decreasing iuc against um correlates at -1") {
        std::vector<InterfaceMetrics> rows = {metric(0, 1.0), metric(1, 0.875),
                                              metric(2, 0.75), metric(3, 0.625)};
        CorrelationReport report = correlate(rows);
        const CorrelationEntry* um = report.find("um*iuc");
        REQUIRE(um != nullptr);
        CHECK(um->n == 4);
        CHECK(um->pearson == -1.0);
        CHECK(um->spearman == -1.0);
    }
    SUBCASE("zero variance is undefined") {
        std::vector<InterfaceMetrics> rows = {metric(0, 0.5), metric(1, 0.5),
                                              metric(2, 0.5)};
        CorrelationReport report = correlate(rows);
        CHECK_FALSE(report.find("um*iuc")->pearson.has_value());
        CHECK_FALSE(report.find("um*iuc")->spearman.has_value());
        CHECK(report.find("um*iuc")->n == 3);
    }
    SUBCASE("undefined iuc and exempt counts shrink the samples") {
        std::vector<InterfaceMetrics> rows = {metric(0, 1.0), metric(1, 0.5)};
        rows.push_back(InterfaceMetrics{"clientless", 4, 0, 0, 0, 0.0,
                                        std::optional<double>(0.0),
                                        std::nullopt, 0});
        InterfaceMetrics exempt;
        exempt.iface = "exempt";
        exempt.size = 4;
        exempt.iuc = 0.9;
        rows.push_back(exempt);
        CorrelationReport report = correlate(rows);
        CHECK(report.find("um*iuc")->n == 2);  // exempt and clientless drop out
        CHECK(report.find("dm*iuc")->n == 3);  // only clientless drops out
    }
}

TEST_CASE("system ratio orderings hold on random models") {
    std::mt19937_64 rng(909090);
    for (int trial = 0; trial < 80; ++trial) {
        auto raw = testgen::random_model(rng, 24, 80);
        CodeModel model =
            CodeModel::build(raw.interfaces, raw.classes, raw.calls, raw.system_loc);
        FilteredModel filtered = FilteredModel::passthrough(std::move(model));
        AnomalySet anomalies = detect_anomalies(filtered);
        auto rows = interface_metrics(filtered, anomalies);
        SystemMetrics sys = system_metrics(filtered, anomalies, rows);
        CHECK(sys.rsnum <= sys.rsum + 1e-15);
        CHECK(sys.rsum <= 1.0);
        CHECK(sys.rreim <= sys.rsdm + 1e-15);
        CHECK(sys.rsdm <= 1.0);
        CHECK(sys.reim >= 0);
        CHECK((sys.reim == 0) == anomalies.clone_groups.empty());
    }
}

TEST_CASE("deleting all but one member of every clone group removes duplication") {
    std::mt19937_64 rng(13579);
    for (int trial = 0; trial < 60; ++trial) {
        auto raw = testgen::random_model(rng, 20, 10);
        CodeModel model =
            CodeModel::build(raw.interfaces, raw.classes, raw.calls, raw.system_loc);
        auto groups = find_clone_groups(model);
        if (groups.empty()) continue;

        std::vector<InterfaceDecl> interfaces;
        for (const auto& [key, decl] : model.interfaces()) interfaces.push_back(decl);
        for (const auto& group : groups) {
            // keep the declaration in the lexicographically first interface
            for (std::size_t k = 1; k < group.interfaces.size(); ++k) {
                for (auto& decl : interfaces) {
                    if (decl.ref.qualified() != group.interfaces[k]) continue;
                    std::erase_if(decl.methods, [&](const MethodDecl& m) {
                        return m.signature == group.signature;
                    });
                }
            }
        }
        std::vector<ClassDecl> classes;
        for (const auto& [key, decl] : model.classes()) classes.push_back(decl);
        CodeModel pruned =
            CodeModel::build(interfaces, classes, model.calls(), model.system_loc());
        FilteredModel filtered = FilteredModel::passthrough(std::move(pruned));
        AnomalySet anomalies = detect_anomalies(filtered);
        auto rows = interface_metrics(filtered, anomalies);
        SystemMetrics sys = system_metrics(filtered, anomalies, rows);
        CHECK(sys.sdm == 0);
        CHECK(sys.reim == 0);
    }
}

TEST_CASE("system metrics equal the brute-force oracle on random models") {
    std::mt19937_64 rng(24680);
    for (int trial = 0; trial < 80; ++trial) {
        auto raw = testgen::random_model(rng, 24, 80);
        const int min_impl = trial % 3;
        CodeModel model =
            CodeModel::build(raw.interfaces, raw.classes, raw.calls, raw.system_loc);
        FilterConfig config{.exclude_tests = false,
                            .exclude_markers = false,
                            .min_implementations = min_impl,
                            .treat_as_library = false};
        FilteredModel filtered = FilteredModel::passthrough(std::move(model), config);
        AnomalySet anomalies = detect_anomalies(filtered);
        auto rows = interface_metrics(filtered, anomalies);
        SystemMetrics sys = system_metrics(filtered, anomalies, rows);
        auto want = oracle::system_numbers(raw, min_impl);

        CHECK(sys.total_interface_methods == want.total_interface_methods);
        CHECK(sys.sdm == want.sdm);
        CHECK(sys.sum == want.sum);
        CHECK(sys.snum == want.snum);
        CHECK(sys.distinct_dup_signatures == want.distinct_dup_signatures);
        CHECK(sys.reim == want.reim);
        CHECK(sys.nulc == want.nulc);
        CHECK(sys.shared_impl_count == want.shared_impl_count);
        CHECK(sys.dup_impl_count == want.dup_impl_count);
        CHECK(close(sys.rsdm, want.rsdm));
        CHECK(close(sys.rsum, want.rsum));
        CHECK(close(sys.rsnum, want.rsnum));
        CHECK(close(sys.rreim, want.rreim));
        CHECK(close(sys.rnulc, want.rnulc));
        CHECK(close(sys.shared_impl_ratio, want.shared_impl_ratio));

        // per-interface usage cohesion against the oracle
        for (const auto& [iface, _] : filtered.model.interfaces()) {
            auto got = iuc(filtered.model, iface);
            auto want_iuc = oracle::iuc(raw, iface);
            REQUIRE(got.has_value() == want_iuc.has_value());
            if (got) CHECK(close(*got, *want_iuc));
        }
    }
}
