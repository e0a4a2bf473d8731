#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Batch command-line front end.
//
//   semirel spectrum      --alpha A --n-max N
//   semirel perturbation  --spin zero|half --alpha A [--n N] [--l L] [--j J] [--basis B]
//   semirel salpeter      --alpha A --l L --basis N [--mu MU] [--nodes Q] [--levels K]
//   semirel scaling       --alphas a1,a2,... --l L --basis N [--mu-factor F]
//   semirel pauli-check
//
// Common flags: --mass, --branch particle|antiparticle, --format csv|json,
// --output PATH, --config PATH (JSON object whose keys are flag names without
// the leading dashes; "command" may name the subcommand; explicit flags win).
//
// Exit codes: 0 success, 1 failed check or internal error, 2 invalid input,
// 3 supercritical coupling, 4 solver did not converge.
namespace semirel::cli {

inline constexpr const char* kSchemaVersion = "semirel-cli/1";

/// args excludes the program name. Data goes to `out` (or --output),
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semirel::cli
