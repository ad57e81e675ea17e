#pragma once

#include <string>
#include <vector>

#include "rvcontrib/rv.hpp"

namespace rvc {

/// SVG contribution plot: one polyline vertex per variable against its index,
/// plus a single horizontal rule at the threshold when one is attached.
/// Output bytes depend only on the profile.
std::string contribution_plot_svg(const ContributionProfile& profile);
void render_contribution_plot(const ContributionProfile& profile,
                              const std::string& path);

/// SVG bar profile of one variable's powered correlations across responses.
std::string response_profile_svg(const std::string& variable,
                                 const std::vector<std::string>& response_names,
                                 const std::vector<double>& values, int alpha);
void render_response_profile(const std::string& variable,
                             const std::vector<std::string>& response_names,
                             const std::vector<double>& values, int alpha,
                             const std::string& path);

}  // namespace rvc
