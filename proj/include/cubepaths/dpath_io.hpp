#pragma once

#include "cubepaths/dpath.hpp"

#include <string>
#include <string_view>

namespace cubepaths {

// `.dpath` files: a JSON list of segments
//   [{"carrier": [dim, index], "breaks": [["t", ["x1", ...]], ...]}, ...]
// with every rational written as a "p/q" string (plain integers as "p").
// Times are local to each segment.

DPath read_dpath(std::string_view text, std::shared_ptr<const PrecubicalSet> complex);
std::string write_dpath(const DPath& path);

// Reparametrizations: {"breaks": [["t", "phi(t)"], ...]}
Reparam read_reparam(std::string_view text);
std::string write_reparam(const Reparam& phi);

}  // namespace cubepaths
