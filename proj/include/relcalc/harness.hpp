#pragma once

#include <cstdint>
#include <string>

#include "relcalc/extensions.hpp"

namespace relcalc {

/// splitmix64; the whole harness draws from this so that instances are
/// identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// uniform in [0, n)
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(next() % n); }
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::size_t>(hi - lo + 1))); }
    /// p/q with |p| <= bound, 1 <= q <= bound
    Rational rational(int bound);

private:
    std::uint64_t state_;
};

struct InstanceSpec {
    std::size_t dim = 2;
    std::uint64_t seed = 0;
    std::size_t mul_dim = 0;       ///< multivalued part of the ambient selfadjoint relation
    std::size_t restrict_dim = 1;  ///< graph dimension of S
    int entry_bound = 4;
    std::size_t form_kernel_dim = 0;  ///< rank deficiency of the generated form
    bool through_mul = false;         ///< plant an element making ran(S - c) ∩ mul S* nontrivial
};

/// Parameters of instance `seed` in dimension `dim`, derived from the seed.
InstanceSpec spec_for(std::uint64_t seed, std::size_t dim);

struct Instance {
    InstanceSpec spec;
    LinearRelation s;
    Rational c;
};

/// Restriction of a random selfadjoint relation bounded below by c.
Instance random_semibounded(const InstanceSpec& spec);

/// Symmetric S with dom S ⊥ ran S.
LinearRelation random_numrange_zero(std::size_t dim, std::uint64_t seed);

/// Random selfadjoint extension of a symmetric S by Lagrangian completion.
LinearRelation random_selfadjoint_extension(const LinearRelation& s, Rng& rng);
/// Selfadjoint extensions that are not bounded below by c (so not extremal).
/// Empty when S is selfadjoint.
std::vector<LinearRelation> engineered_non_extremal(const LinearRelation& s, const Rational& c, std::size_t count,
                                                    Rng& rng);
/// Extremal extensions from random domains between dom S and dom J_c*.
std::vector<LinearRelation> sample_extremal(const LinearRelation& s, const Rational& c, std::size_t count,
                                            std::uint64_t seed);

struct Witness {
    std::string detail;
    std::vector<std::pair<std::string, Vector>> vectors;
    std::vector<std::pair<std::string, LinearRelation>> relations;
};

struct CheckResult {
    std::string name;
    bool passed = true;
    std::optional<Witness> witness;
};

/// Objects shared by the checks. Computed by plain routes so a corrupted
/// bundle can be injected for testing the checks themselves.
struct ExtensionBundle {
    RepresentingMap q_ldl;
    RepresentingMap q_quotient;
    LinearRelation companion;           ///< from q_ldl
    LinearRelation companion_quotient;  ///< from q_quotient
    LinearRelation friedrichs;
    LinearRelation krein;
};
ExtensionBundle compute_bundle(const LinearRelation& s, const Rational& c);

struct CheckInfo {
    std::string name;
    std::vector<std::string> invariants;
};
/// Every check verify_all runs, with the invariants it covers.
const std::vector<CheckInfo>& check_registry();
/// Identifiers of every invariant of the relations, forms and extensions
/// modules plus the generator soundness property.
const std::vector<std::string>& invariant_catalog();

struct VerifyOptions {
    std::uint64_t seed = 0;  ///< drives sampled extensions and probe vectors
    std::size_t probes = 10;
    std::size_t random_extensions = 3;
    std::size_t engineered = 3;
    std::size_t extremal_samples = 4;
    std::optional<ExtensionBundle> bundle;  ///< override for fault injection
};

/// Runs every registered check on (S, c). Never throws for failed checks.
std::vector<CheckResult> verify_all(const LinearRelation& s, const Rational& c, const VerifyOptions& opts = {});

struct InstanceReport {
    std::size_t index = 0;
    InstanceSpec spec;
    LinearRelation s;
    Rational c;
    std::vector<CheckResult> checks;
    bool passed() const;
};

struct SuiteReport {
    std::vector<InstanceReport> instances;
    std::size_t failures() const;
    std::string summary() const;
};

/// Thread count from RELCALC_THREADS, else the hardware concurrency.
std::size_t harness_threads();

/// Instances seed, seed+1, ... cycling through dims lo..hi.
SuiteReport run_suite(std::size_t count, std::size_t dim_lo, std::size_t dim_hi, std::uint64_t seed,
                      std::size_t threads = harness_threads());

}  // namespace relcalc
