/**
 * @file  cli.hpp
 * @brief Command-line front end. Every subcommand is an adapter from text
 *        arguments to one module call and back to JSON or CSV.
 *
 * Exit codes: 0 success, 1 domain error (e.g. NotPlanar), 2 usage error.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ppps::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ppps::cli
