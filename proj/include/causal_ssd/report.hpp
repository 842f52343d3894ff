#ifndef CAUSAL_SSD_REPORT_HPP
#define CAUSAL_SSD_REPORT_HPP

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "causal_ssd/config.hpp"
#include "causal_ssd/harness.hpp"
#include "causal_ssd/ssd.hpp"

namespace causal_ssd {

// printf "%.17g"; "inf"/"nan" spelled out.
std::string format_double(double x);

// Single-line JSON object of the run configuration.
std::string config_json(const RunConfig& config);

// "# config: {...}" line placed at the top of CSV outputs.
std::string config_comment(const RunConfig& config);

// Components -> candidate sequences -> per-target edges, with n*_u, N* and the BOS flag.
std::string plan_document(const CpdagPlan& plan, const RunConfig& config);

std::string two_node_report_document(const TwoNodeReport& report, const RunConfig& config);

// Columns n,p_h0,p0_dc,p0_inc,p0_mis,p1_dc,p1_inc,p1_mis,overall_dc,se.
void write_dce_csv(std::ostream& out, std::span<const DceProbabilities> rows);

// Same with a leading k column.
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> rows);

// Columns k,zeta,n_star (empty when not reached).
void write_optimal_n_csv(std::ostream& out, std::span<const OptimalNPoint> rows);

// Columns truth,n,moderate,strong,moderate_mc,strong_mc,draws.
void write_evidence_csv(std::ostream& out, std::span<const EvidenceRow> rows);

// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace causal_ssd

#endif // CAUSAL_SSD_REPORT_HPP
