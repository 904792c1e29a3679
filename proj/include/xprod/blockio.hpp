#pragma once

// Binary and JSON serialization of block matrices. Both formats record the
// window (group name, radius, ball-ordering version) and refuse to load
// against a different one. Round trips are bit-exact.

#include <iosfwd>

#include <nlohmann/json.hpp>

#include "xprod/crossed.hpp"

namespace xprod {

inline constexpr std::uint32_t kBlockFormatVersion = 1;

void write_binary(std::ostream& out, const BlockMatrix& x);
/// Throws DomainError on a malformed stream or a window mismatch.
BlockMatrix read_binary(std::istream& in, const CrossedContext& ctx);

nlohmann::ordered_json to_json(const BlockMatrix& x);
BlockMatrix block_matrix_from_json(const nlohmann::ordered_json& j, const CrossedContext& ctx);

}  // namespace xprod
