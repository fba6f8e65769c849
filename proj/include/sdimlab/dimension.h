#pragma once

#include "sdimlab/cover.h"
#include "sdimlab/geom.h"
#include "sdimlab/ifs.h"
#include "sdimlab/rational.h"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sdimlab {

/// One scale of a profile. ratio_* = -ln(count)/ln(eps), and 0 when the
/// count is at most 1.
struct ScaleRow {
    Rational epsilon;
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
    double ratio_lower = 0;
    double ratio_upper = 0;
    /// Lower bound restricted to points above the truncation guard, so it
    /// also bounds S_eps of the untruncated continuum.
    std::optional<std::uint64_t> guarded_lower;
};

double scale_ratio(std::uint64_t count, double epsilon);
ScaleRow make_row(Rational epsilon, std::uint64_t lower, std::uint64_t upper);

struct DimensionProfile {
    std::vector<ScaleRow> rows;  // strictly decreasing epsilon
    std::string source;
    std::optional<unsigned> K;
};

/// start * factor^j for j = 0 .. steps-1. Requires start > 0, 0 < factor < 1.
std::vector<Rational> geometric_schedule(const Rational& start, const Rational& factor, unsigned steps);

/// D 2^-j for j = 1..10, with D the graph diameter when it is rational and
/// otherwise the largest multiple of 2^-30 below it.
std::vector<Rational> default_schedule(const PLGraph& g);

struct SweepOptions {
    SeparationOptions separation;
    CoverOptions cover;
    /// Also compute a guarded lower bound per row.
    std::optional<GuardRequest> guard;
    /// Re-check every certificate with the independent verifiers.
    bool verify = true;
    /// Compute rows concurrently.
    bool parallel = true;
};

/// One row per epsilon from cover::s_bounds. Throws InvalidArgument when the
/// schedule is empty, not strictly decreasing or not positive, and
/// std::logic_error if a certificate fails verification or the profile
/// breaks cross-scale consistency.
DimensionProfile sweep(const PLGraph& g, const std::vector<Rational>& schedule, const SweepOptions& opts = {});

/// Rows from the IFS cover bound n^k at each epsilon (all in (0, D]). The
/// lower column holds the trivial bound 1.
DimensionProfile ifs_profile(const IFSSpec& s, double D, const std::vector<double>& schedule);

/// lower(eps2) <= upper(eps1) whenever eps1 <= eps2, lower <= upper per row,
/// and ratio_lower <= ratio_upper (10^-12 slack) for eps < 1.
bool cross_scale_consistent(const DimensionProfile& p);

struct SdimEstimate {
    double low = 0;
    double high = 0;
};

/// Max of each ratio column over the finest third of the rows. A finite-scale
/// stand-in for the limsup, not a converged dimension. Throws TooFewScales
/// below 3 rows.
SdimEstimate sdim_estimate(const DimensionProfile& p);

/// Header epsilon_num,epsilon_den,lower,upper,ratio_lower,ratio_upper, plus
/// guarded_lower when any row has one.
std::string profile_csv(const DimensionProfile& p);

struct Theorem2Row {
    double epsilon = 0;
    std::uint64_t k = 0;
    std::string count;  // n^k, exact decimal
    double ratio = 0;   // -ln(n^k)/ln(eps)
    bool pass = false;
};

struct Theorem2Report {
    std::string name;
    std::uint64_t n = 0;
    double lambda = 0;
    double bound = 0;
    double delta = 0;
    double D = 0;
    K0 k0;
    std::vector<Theorem2Row> rows;
    bool all_pass = true;
    std::string note;

    std::string to_text() const;
};

/// Checks -ln(n^k)/ln(eps) < bound + delta at eps_j = eps0 lambda^(j/2),
/// j = 0 .. scales-1, all at or below eps0. For n = 1 the bound is 0 and every
/// row passes; D = 0 yields no rows.
Theorem2Report theorem2_report(const IFSSpec& s, double delta, unsigned scales, double D);

}  // namespace sdimlab
