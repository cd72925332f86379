#pragma once

#include "cubepaths/pcset.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace cubepaths {

/**
 * `.pcs` files are JSON:
 *
 *   {"dims": [n0, n1, ...],
 *    "faces": {"<dim>": [[[f_1^0, f_1^1], ..., [f_d^0, f_d^1]], ...], ...},
 *    "labels": {"<dim>": {"<index>": "text"}}}
 *
 * Face entries index the next lower dimension. "labels" is optional.
 */
PrecubicalSet read_pcs(std::string_view text);

/// Deterministic output: fixed key order, one cell per line.
std::string write_pcs(const PrecubicalSet& k);

PrecubicalSet load_pcs(const std::filesystem::path& path);
void save_pcs(const std::filesystem::path& path, const PrecubicalSet& k);

/// Line and column (1-based) of a byte offset inside text.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset);

}  // namespace cubepaths
