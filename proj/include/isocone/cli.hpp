#pragma once

// Subcommand dispatch behind the isocone executable. Reports are plain
// "key: value" text with exact rationals; only the quadrature lines carry
// floating point.

#include "isocone/flat.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace isocone {

struct JobConfig {
    std::vector<std::string> command;  // e.g. {"cone", "member"} or {"fixtures", "lshape_h2"}
    std::string input;
    std::string output;                // empty: standard output
    std::string tangents;              // surface symplectic-check only
    std::optional<std::size_t> sample; // nullopt: all choice vectors
    std::optional<std::uint64_t> seed;
    int depth = 5;
    std::optional<Cx> rotate;
};

// "all" or "sample:N" with N >= 1.
std::optional<std::size_t> parse_choices(const std::string& text);
// "a+bi", "a-bi", "a", "bi" with rational a, b.
Cx parse_gaussian(const std::string& text);

// Exit codes: 0 success, 1 domain error, 2 parse or I/O error.
int run(const JobConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace isocone
