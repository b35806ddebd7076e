#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "riemsimplex/mesh_io.hpp"

namespace riemsimplex {

struct CommandResult {
  int code = 0;
  std::string text;
};

CommandResult certify_command(const MeshDocument& doc, int oracle_samples, std::uint64_t seed);
CommandResult triangulate_command(const MeshDocument& doc, double t0, const std::string& variant,
                                  int cover_samples, std::uint64_t seed, const std::string& format = "json");
CommandResult distort_command(const MeshDocument& doc, double t0, int pairs, std::uint64_t seed,
                              const std::string& format = "json");
CommandResult karcher_command(const MeshDocument& doc, const std::vector<double>& weights, int extra_samples,
                              std::uint64_t seed);
CommandResult generate_command(const std::string& kind, int level, int n, std::vector<double> periods,
                               double radius, double perturb, std::uint64_t seed);
CommandResult property_suite_command(int samples, int oracle_samples, std::uint64_t seed,
                                     const std::string& format = "json");

// Exit codes: 0 all verdicts positive, 1 some verdict negative, 2 input error.
// args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace riemsimplex
