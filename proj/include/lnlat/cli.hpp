#ifndef LNLAT_CLI_HPP
#define LNLAT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace lnlat {

/// Runs one toolkit command (ln, ld, lc, stone, branch, radicals,
/// fixed-points, verify) with the given flags, writing artifacts to `out`
/// (or the --out file) and diagnostics to `err`.  Returns the process exit
/// code: 0 success, 1 property violation, 2 input error, 3 budget exceeded.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace lnlat

#endif
