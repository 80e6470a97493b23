#pragma once

#include "ial/harness.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ial {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitIo = 2;

// Overlays a flat JSON document onto `defaults`. Keys: d_z d_x s_f s_g sigma_x
// sigma_y n delta sweep_param sweep_values estimators replicates base_seed
// metric cv_folds threads record_timing. Unknown keys and wrong types throw
// std::invalid_argument. Does not validate the result.
ExperimentConfig parse_config_json(std::string_view text, ExperimentConfig defaults);

// {phi_passive, phi_active_upper, phi_active_lower, dominating_terms}; throws
// std::invalid_argument on an invalid spec.
std::string rates_json(const ProblemSpec& spec);

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

} // namespace ial
