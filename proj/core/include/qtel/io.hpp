#pragma once

#include <map>
#include <string>
#include <vector>

#include "qtel/canonical.hpp"
#include "qtel/figures.hpp"
#include "qtel/state.hpp"

namespace qtel {

/// Parses a state file: either {"matrix": [[[re,im] x4] x4]} or
/// {"family": "werner"|"bell_diagonal"|"pure_schmidt"|"example1"|"example2",
///  "params": {...}}. Schema errors identify the offending matrix entry.
DensityMatrix load_state_json(const std::string& text);
DensityMatrix load_state_file(const std::string& path);

/// Builds a family state from its wire name and parameter map.
/// Families: werner {p0}, bell_diagonal {p0,p1,p2,p3}, bell_rank2 {p0},
/// pure_schmidt {a,b} or {a2} or {b2}, example1 {p}, example2 {p}.
DensityMatrix make_family_state(const std::string& family,
                                const std::map<std::string, double>& params);

/// Parses "k1=v1,k2=v2" into a parameter map.
std::map<std::string, double> parse_params(const std::string& text);

const char* branch_name(Branch b);

/// Report as a JSON object with 15-significant-digit numbers. When cf is
/// given, a "canonical" block with u1, u2, the signed diagonal, and the
/// eigenvalues of the symmetrized correlation matrix is appended.
std::string report_json(const TeleportationReport& r);
std::string report_json(const TeleportationReport& r, const CanonicalForm& cf,
                        const Mat3r& t);

enum class SweepFamily { Werner, BellRank2, PureSchmidt, XStateRank3, XStateRank4 };

/// One-parameter family sweep over an inclusive linear grid.
struct SweepSpec {
  SweepFamily family;
  double start;
  double stop;
  int steps;
};

struct SweepRow {
  double param;
  TeleportationReport report;
};

SweepFamily sweep_family_from_name(const std::string& name);
const char* sweep_param_name(SweepFamily family);
DensityMatrix sweep_state(SweepFamily family, double param);

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// CSV with header param,F,Delta,useful,universal,det_t,s1,s2,s3;
/// 10 significant digits, '.' decimals, '\n' line endings.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Number formatted with the given significant digits (locale-independent).
std::string format_sig(double value, int digits);

}  // namespace qtel
