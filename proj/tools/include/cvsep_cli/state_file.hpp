#pragma once

#include <istream>
#include <string>
#include <string_view>

#include "cvsep/state_spec.hpp"

namespace cvsep::cli {

// Flat key = value text, '#' starts a comment. Keys:
//   family   ghz_like | w_like | indicator | annihilated_ghz   (required)
//   p        mixing weight in [0, 1]                             (required)
//   sigma, epsilon, shift, beta   as the family needs
//   noise    gaussian | box      (default: box for indicator, else gaussian)
//   delta    noise width         (required when p < 1)
//   operator position | ladder   (annihilated_ghz only)
//
// Errors are kParseError with "<source>:<line>: <field>: <message>".
StateSpec parse_state(std::istream& in, std::string_view source = "<input>");
StateSpec load_state_file(const std::string& path);

/// Inverse of parse_state, with full-precision numbers.
std::string format_state(const StateSpec& spec);

}  // namespace cvsep::cli
