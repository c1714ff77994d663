#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mpmcs/encoder.hpp"

namespace mpmcs {

// Weighted CNF text:
//   c <comment>                      (optional, before the header)
//   p wcnf <vars> <clauses> <top>
//   <weight> <lit> ... <lit> 0      (one clause per line; weight == top is hard)
// Hard clauses keep their stored order; soft clauses are written sorted by
// their first literal's variable (stable), which for encoder output is
// ascending event-variable order. Emission is deterministic byte for byte.
std::string emit_wcnf(const WcnfInstance& instance,
                      const std::vector<std::string>& comments = {});
void save_wcnf(const WcnfInstance& instance, const std::filesystem::path& path,
               const std::vector<std::string>& comments = {});

// Strict parser: one header, one clause per line terminated by 0, weights in
// [1, top], literals within the declared variable range, clause count equal
// to the declared count. ParseError carries the offending line number.
WcnfInstance parse_wcnf(const std::string& text);
WcnfInstance load_wcnf(const std::filesystem::path& path);

}  // namespace mpmcs
