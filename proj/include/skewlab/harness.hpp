#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "skewlab/pair_analysis.hpp"
#include "skewlab/sampling.hpp"
#include "skewlab/skew.hpp"

namespace skewlab {

enum class InequalityId {
    HEISENBERG_21,
    SCHRODINGER,
    LUO_23,
    THM21_WYD,
    THM22_GWYD,
    THM23_TILDE,
    THM31_FGH,
    COR41_PAIR,
    CHAIN_24,
    CHAIN_25,
    CHAIN_27,
    NAIVE_WY_SHOULD_FAIL,
};

std::string_view to_string(InequalityId id);
std::optional<InequalityId> inequality_from_string(std::string_view name);

/// False only for NAIVE_WY_SHOULD_FAIL, whose violations are expected.
bool theorem_backed(InequalityId id);

/// Parameters for a single evaluation. `triple` must outlive the call.
struct InequalityParams {
    std::optional<double> alpha;
    std::optional<double> beta;
    const TripleAnalysis* triple = nullptr;
};

struct SampleRecord {
    InequalityId id = InequalityId::HEISENBERG_21;
    std::size_t n = 0;
    std::uint64_t sample_index = 0;
    std::optional<double> alpha;
    std::optional<double> beta;
    ComplexMatrix rho, a, b;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // lhs - rhs
    bool pass = false;
};

nlohmann::json to_json_value(const SampleRecord& r);

/// pass <=> margin >= -slack * max(|lhs|, |rhs|, 1)
bool within_slack(double lhs, double rhs, double slack);

/// Evaluates one inequality instance. For the chain ids the record holds the
/// tightest link over both observables (lhs = upper member, rhs = lower).
/// Throws PreconditionError when the parameters fall outside the id's regime.
SampleRecord evaluate_inequality(InequalityId id, const DensityMatrix& rho, const HermitianMatrix& a,
                                 const HermitianMatrix& b, const InequalityParams& params,
                                 double slack = 1e-9);

enum class GwydRegime { Low, High, Both };

/// One entry of a campaign: an inequality with fixed or sampled parameters.
struct InequalitySpec {
    InequalityId id = InequalityId::HEISENBERG_21;
    std::string label;
    std::optional<double> alpha;
    std::optional<double> beta;
    GwydRegime regime = GwydRegime::Both;
    std::optional<TripleAnalysis> triple;
    nlohmann::json triple_spec;
};

/// Draws the per-sample parameters (alpha, beta) for a spec: fixed values
/// pass through, missing ones are sampled uniformly over the valid regime.
InequalityParams resolve_params(const InequalitySpec& spec, RngStream& rng);

struct CampaignConfig {
    std::uint64_t seed = 0;
    std::vector<std::size_t> dims;
    std::size_t samples_per_dim = 0;
    std::vector<InequalitySpec> inequalities;
    double positivity_mix = 1e-3;
    double slack = 1e-9;
    double observable_scale = 1.0;
    // When set, violations of NAIVE_WY_SHOULD_FAIL count as failures.
    bool assert_all_pass = false;
    std::optional<std::string> output_json;
    std::optional<std::string> output_csv;
    nlohmann::json source;
};

/// Parses and validates a campaign document; all problems are reported as
/// ConfigError before any sampling happens. Unknown keys are rejected.
CampaignConfig campaign_config_from_json(const nlohmann::json& j);

InequalitySpec make_spec(InequalityId id, std::string label = {});

/// Validates a programmatically built config the same way the parser does.
void validate_config(const CampaignConfig& c);

/// Echo of a config as JSON (used for hashing when `source` is empty).
nlohmann::json config_echo(const CampaignConfig& c);

/// (rho, A, B) for sample `index` of dimension n; depends only on the
/// arguments, never on evaluation order.
struct Sample {
    DensityMatrix rho;
    HermitianMatrix a;
    HermitianMatrix b;
};

Sample draw_sample(std::uint64_t seed, std::size_t n, std::uint64_t index, double positivity_mix,
                   double observable_scale);

struct SampleRow {
    std::size_t entry = 0;
    std::size_t n = 0;
    std::uint64_t index = 0;
    double lhs = 0.0, rhs = 0.0, margin = 0.0;
    bool pass = false;
};

struct InequalitySummary {
    InequalityId id = InequalityId::HEISENBERG_21;
    std::string label;
    bool theorem_backed = true;
    std::size_t samples = 0;
    std::size_t violations = 0;
    double min_margin = 0.0;
    std::optional<SampleRecord> worst;
};

struct CampaignReport {
    nlohmann::json config;
    std::string config_hash;
    std::vector<InequalitySummary> entries;
    std::vector<SampleRow> rows;
    double wall_time_s = 0.0;

    std::size_t theorem_violations() const;
    std::size_t informational_violations() const;
};

/// Runs every (entry, dim, sample) evaluation on up to `workers` threads.
/// The report is identical for any worker count.
CampaignReport run_campaign(const CampaignConfig& config, unsigned workers = 1);

nlohmann::json to_json_value(const CampaignReport& r, const CampaignConfig& config);
void write_csv(std::ostream& os, const CampaignReport& r);

/// 64-bit FNV-1a of the canonical dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& j);

struct CounterexampleQuery {
    InequalitySpec spec;
    std::size_t n = 2;
    std::uint64_t budget = 10000;
    std::uint64_t seed = 0;
    std::uint64_t start = 0;
    double positivity_mix = 1e-3;
    double observable_scale = 1.0;
    double slack = 1e-9;
    // A sample counts once margin < -max(threshold, slack * scale).
    double threshold = 0.0;
};

struct CounterexampleResult {
    std::optional<SampleRecord> found;
    std::uint64_t tried = 0;
};

/// Returns the first sample (in index order from `start`) that violates the
/// inequality, or an empty result once the budget is exhausted.
CounterexampleResult search_counterexample(const CounterexampleQuery& q);

}  // namespace skewlab
