#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "relcalc/errors.hpp"
#include "relcalc/harness.hpp"

using namespace relcalc;
using namespace fixtures;

namespace {

std::string failed_names(const std::vector<CheckResult>& checks) {
    std::string out;
    for (const auto& r : checks)
        if (!r.passed) out += r.name + " (" + (r.witness ? r.witness->detail : "") + ") ";
    return out;
}

bool all_passed(const std::vector<CheckResult>& checks) { return failed_names(checks).empty(); }

}  // namespace

TEST_CASE("rng is deterministic and in range") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng r(7);
    for (int i = 0; i < 200; ++i) {
        const Rational q = r.rational(4);
        CHECK(abs(q.get_num()) <= 4);
        CHECK(q.get_den() <= 4);
        const long v = r.range(-2, 3);
        CHECK(v >= -2);
        CHECK(v <= 3);
    }
}

TEST_CASE("generator examples") {
    SUBCASE("rank one graph in dimension 2") {
        const Instance inst = random_semibounded({2, 0, 0, 1});
        CHECK(inst.s.dim() <= 1);
        CHECK(is_symmetric(inst.s));
        CHECK(certify_lower_bound(form_of_relation(inst.s), inst.c).ok());
    }
    SUBCASE("multivalued ambient part") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Instance inst = random_semibounded({3, seed, 1, 2});
            CHECK_FALSE(mul(adjoint(inst.s)).is_zero());
            CHECK_FALSE(mul(friedrichs(inst.s, inst.c)).is_zero());
        }
    }
    SUBCASE("full restriction is selfadjoint") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Instance inst = random_semibounded({3, seed, 0, 3});
            if (inst.s.dim() < 3) continue;  // dependent random combination
            CHECK(is_selfadjoint(inst.s));
            CHECK(friedrichs(inst.s, inst.c) == inst.s);
        }
    }
    CHECK_THROWS_AS(random_semibounded({2, 0, 3, 1}), PreconditionError);
}

TEST_CASE("generator soundness and determinism") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const InstanceSpec spec = spec_for(seed, 2 + seed % 5);
        CHECK(spec.restrict_dim <= spec.dim);
        CHECK(spec.mul_dim <= spec.dim);
        const Instance a = random_semibounded(spec);
        const Instance b = random_semibounded(spec);
        CHECK(a.s == b.s);
        CHECK(a.c == b.c);
        CHECK(is_symmetric(a.s));
        CHECK(certify_lower_bound(form_of_relation(a.s), a.c).ok());
    }
}

TEST_CASE("planted element makes mul J nontrivial") {
    int planted = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        InstanceSpec spec{4, seed, 1, 2};
        spec.form_kernel_dim = 1;
        spec.through_mul = true;
        const Instance inst = random_semibounded(spec);
        const Subspace n = intersect(ran(shift(inst.s, -inst.c)), mul(adjoint(inst.s)));
        if (!n.is_zero()) ++planted;
        const auto q = repmap_ldl(form_of_relation(inst.s), inst.c);
        CHECK(mul(companion(inst.s, q)) == n);
    }
    CHECK(planted == 40);
}

TEST_CASE("numerical range zero generator") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = random_numrange_zero(2 + seed % 4, seed);
        CHECK(is_symmetric(s));
        CHECK(numerical_range_zero(s));
    }
}

TEST_CASE("sampled extensions") {
    Rng rng(3);
    const auto s = orthogonal_pair();
    for (int i = 0; i < 5; ++i) {
        const auto h = random_selfadjoint_extension(s, rng);
        CHECK(is_selfadjoint(h));
        CHECK(h.contains(s));
    }
    const auto bad = engineered_non_extremal(s, 0, 3, rng);
    CHECK(bad.size() >= 3);
    for (const auto& h : bad) {
        CHECK(is_selfadjoint(h));
        CHECK(h.contains(s));
        CHECK_FALSE(is_nonneg_above(h, 0).holds);
        CHECK_FALSE(extremal_check(h, s, 0));
    }
    const auto sa = matrix_operator(RatMatrix{{2, 1}, {1, 2}});
    CHECK(engineered_non_extremal(sa, 0, 3, rng).empty());
}

TEST_CASE("sample_extremal") {
    SUBCASE("no gap gives only the Friedrichs extension") {
        const auto s = matrix_operator(RatMatrix{{2, 1}, {1, 2}});
        const auto list = sample_extremal(s, 0, 10, 1);
        REQUIRE(list.size() == 1);
        CHECK(list[0] == friedrichs(s, 0));
    }
    SUBCASE("gap one reaches exactly the two endpoints") {
        const auto s = rank_one();
        const auto list = sample_extremal(s, 0, 10, 1);
        REQUIRE(list.size() == 2);
        CHECK(list[0] == friedrichs(s, 0));
        CHECK(list[1] == krein(s, 0));
    }
    SUBCASE("gap two has a continuum") {
        const auto s = diagonal_restriction();
        const auto list = sample_extremal(s, 0, 10, 5);
        CHECK(list.size() >= 3);
        for (const auto& x : list) CHECK(extremal_check(x, s, 0));
    }
}

TEST_CASE("verify_all on fixtures") {
    CHECK(check_registry().size() >= 22);
    const auto r1 = verify_all(rank_one(), 0);
    CHECK_MESSAGE(all_passed(r1), failed_names(r1));
    const auto r2 = verify_all(orthogonal_pair(), 0);
    CHECK_MESSAGE(all_passed(r2), failed_names(r2));
    const auto r3 = verify_all(diagonal_restriction(), 0);
    CHECK_MESSAGE(all_passed(r3), failed_names(r3));
    const auto r4 = verify_all(rank_one(), 2);
    CHECK_MESSAGE(all_passed(r4), failed_names(r4));
}

TEST_CASE("corrupted Krein graph is caught") {
    const auto s = rank_one();
    VerifyOptions opts;
    opts.bundle = compute_bundle(s, 0);
    opts.bundle->krein = opts.bundle->friedrichs;
    const auto results = verify_all(s, 0, opts);
    bool seen = false;
    for (const auto& r : results) {
        if (!r.passed) CHECK(r.witness.has_value());
        if (r.name == "codding-identity") {
            seen = true;
            CHECK_FALSE(r.passed);
            REQUIRE(r.witness.has_value());
            CHECK_FALSE(r.witness->relations.empty());
            CHECK_FALSE(r.witness->vectors.empty());
        }
    }
    CHECK(seen);
}

TEST_CASE("non-symmetric input fails every check with a witness") {
    const InnerProductSpace q2(2);
    const auto t = LinearRelation::from_pairs(q2, q2, {{{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}});
    for (const auto& r : verify_all(t, 0)) {
        CHECK_FALSE(r.passed);
        CHECK(r.witness.has_value());
    }
}

TEST_CASE("suite completeness") {
    // the invariants of the relations, forms and extensions modules; adding
    // one here without a registered check fails this test
    const std::set<std::string> expected = {
        "relations.involution",
        "relations.exchange",
        "relations.parts-duality",
        "relations.compose-associative",
        "relations.regular-singular",
        "relations.shift-roundtrip",
        "forms.certificate",
        "forms.repmap-independence",
        "forms.dual-pair",
        "forms.mul-companion",
        "forms.domJstar-criterion",
        "forms.extends-form",
        "forms.adjoint-form-identity",
        "forms.inverse-duality",
        "extensions.extension",
        "extensions.translation-invariance",
        "extensions.inverse-duality",
        "extensions.mul-parts",
        "extensions.order",
        "extensions.extremality-equivalence",
        "extensions.numrange-zero",
        "extensions.repmap-independence",
        "extensions.friedrichs-half",
        "extensions.krein-half",
        "harness.generator-soundness",
    };
    const auto& catalog = invariant_catalog();
    CHECK(std::set<std::string>(catalog.begin(), catalog.end()) == expected);
    std::set<std::string> covered, names;
    for (const auto& info : check_registry()) {
        CHECK(names.insert(info.name).second);
        for (const auto& id : info.invariants) {
            CHECK_MESSAGE(expected.count(id) == 1, id);
            covered.insert(id);
        }
    }
    for (const auto& id : expected) CHECK_MESSAGE(covered.count(id) == 1, id);
}

TEST_CASE("suite is deterministic across thread counts") {
    const SuiteReport a = run_suite(12, 2, 4, 100, 1);
    const SuiteReport b = run_suite(12, 2, 4, 100, 4);
    CHECK(a.summary() == "12/12 instances, 0 failures");
    REQUIRE(a.instances.size() == b.instances.size());
    for (std::size_t i = 0; i < a.instances.size(); ++i) {
        const auto& x = a.instances[i];
        const auto& y = b.instances[i];
        CHECK(x.index == i);
        CHECK(x.s == y.s);
        CHECK(x.c == y.c);
        REQUIRE(x.checks.size() == y.checks.size());
        for (std::size_t k = 0; k < x.checks.size(); ++k) CHECK(x.checks[k].passed == y.checks[k].passed);
        CHECK_MESSAGE(x.passed(), failed_names(x.checks));
    }
}
