#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperfoil/fields.hpp"
#include "hyperfoil/geometry.hpp"

namespace hyperfoil {

/// One first-order commutation identity of the vector-field algebra,
/// checked as left side minus right side on sample points.
struct IdentitySpec {
    std::string id;
    std::string description;
    bool exterior_only = false;  // omega-coefficient identities sampled at r >= t/2
    /// Residual fields for every index combination of the identity.
    std::vector<ScalarField> (*residuals)(const ScalarField& f);
};

const std::vector<IdentitySpec>& commutator_identities();

/// Deterministic sample points in the slab T1 <= sqrt(t^2-r^2) <= T2 of the
/// truncated cone, with t > r > 0; exterior_only restricts to r >= t/2.
std::vector<SpacetimePoint> sample_slab_points(int n, uint64_t seed, double T1, double T2,
                                               bool exterior_only);

/// Max |lhs - rhs| of the named identity over the samples.
double check_commutator(const std::string& identity_id, const ScalarField& f,
                        std::span<const SpacetimePoint> pts);

struct IdentityResult {
    std::string id;
    double max_residual = 0.0;
    int points = 0;
    bool pass = false;
};

struct BatteryConfig {
    int points_per_identity = 100;
    double tolerance = 1e-10;
    uint64_t seed = 0;
    double T1 = 2.0, T2 = 10.0;
};

std::vector<IdentityResult> run_commutator_battery(std::span<const ScalarField> fields,
                                                   const BatteryConfig& cfg);

/// Default test-function family used by the battery and the CLI.
std::vector<ScalarField> default_test_fields();

/// Measured smallest constant for the higher-order commutator inequalities.
/// |H^I D u| <= |D H^I u| + C * (sum of lower-order terms), maximized over
/// samples and multi-indices of exact length `order`.
struct BoundMeasurement {
    double measured_C = 0.0;
    bool finite = true;
    int combos = 0;
};

/// inequality_id is one of "H-partial", "H-par_b", "H-T/t", "H-tangential".
BoundMeasurement check_commutator_bound(const std::string& inequality_id, const ScalarField& f,
                                        int order, std::span<const SpacetimePoint> pts);

/// Deviation of the printed near-cone approximation
/// |(nd_i - db_i) u| ~ |T omega^i / (2t)| |(T/t) d_t u| from the exact factor
/// (informational; the exact identity is part of the battery).
double near_cone_approximation_deviation(const ScalarField& f,
                                         std::span<const SpacetimePoint> pts);

}  // namespace hyperfoil
