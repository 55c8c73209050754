#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "toric_cy/lattice_cone.hpp"

namespace toric_cy::cli {

enum ExitCode : int { Ok = 0, Negative = 1, InputError = 2, SolverFailure = 3 };

/// Exit code for a library error.
int exit_code_for(Errc code) noexcept;

/// Reads {"dim": d, "normals": [[...], ...], "name": "..."}. A path of the
/// form "fixture:<name>" loads a bundled fixture instead.
GoodCone load_cone(const std::string& path);
GoodCone parse_cone_json(const std::string& text, const std::string& origin);

/// "1,2/3,0.5" -> exact rationals.
RationalVector parse_vector(const std::string& text);

/// Runs one invocation; args exclude the program name. JSON goes to out,
/// human-readable diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toric_cy::cli
