#ifndef REDACT_CLI_HPP_
#define REDACT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace redact::cli {

// Runs one CLI invocation. JSON lines go to out, diagnostics to err.
// Returns 0 on success, 1 on verification/operation failure, 2 on usage
// errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace redact::cli

#endif
