// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fdband/bootstrap_bands.hpp"
#include "fdband/change_measure.hpp"
#include "fdband/curve_stats.hpp"
#include "fdband/phase_plane.hpp"
#include "fdband/smoother.hpp"

#include <string>

// CSV writers. Numbers use the shortest round-trip representation, so equal
// values always produce identical bytes. Metadata lines start with '#'.

namespace fdband {

/// `# label: ...` then `day,value`.
std::string grid_function_csv(const GridFunction& f);
/// Reads grid_function_csv output back. Throws ParseError.
GridFunction parse_grid_function_csv(std::string_view text);

/// Metadata header (level, B, seed, block years) then `day,lower,center,upper`.
std::string band_csv(const ConfidenceBand& band);

/// `day,area,velocity,acceleration`.
std::string phase_curve_csv(const PhaseCurve& curve);
/// JSON array of {month, day, grid_index}.
std::string month_anchor_json(const PhaseCurve& curve);

/// `day,change_fraction` (or `day,change_percent`); undefined points are `NA`.
std::string change_curve_csv(const ChangeCurve& curve, bool percent = false);

/// `year,c1,...,cp`.
std::string coefficients_csv(const CurveEnsemble& ensemble);

/// `p,mse_hat,first_diff`; the first row has an empty first_diff.
std::string mse_profile_csv(const MseProfile& profile);

/// `day,<label 1>,<label 2>,...`; every column must share the first grid.
std::string grid_table_csv(const std::vector<GridFunction>& columns, const std::string& comment = {});

}  // namespace fdband
