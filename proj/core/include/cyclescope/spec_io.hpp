#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cyclescope/system.hpp"

namespace cyclescope {

// PerturbationSpec from JSON of the form
//   {"n": int, "a": [[i, j, value], ...], "b": [[i, j, value], ...]}
// where a holds the coefficients of f and b those of g. Repeated (i, j) entries add.
// Throws ParseError on malformed input and DomainError on a degree above n.
PerturbationSpec parse_spec_json(std::string_view text);
PerturbationSpec load_spec(const std::filesystem::path& path);

std::string spec_to_json(const PerturbationSpec& spec);

}  // namespace cyclescope
