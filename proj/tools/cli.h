#pragma once

// Command-line front end. run() is the whole tool; main() only forwards argv
// so the commands can be exercised in-process.

#include <ostream>
#include <string>
#include <vector>

#include "gasket/algebraic.h"

namespace gasket::cli {

enum ExitCode : int { kOk = 0, kError = 1, kNegative = 2 };

/// omega:<m>, rational:<p>/<q>, lambda-star, real:<decimal>
Parameter parse_lambda(const std::string& token);
/// golden, inv-omega:<m>, pisot:<1..4>, rational:<p>/<q>, real:<decimal>
Parameter parse_theta(const std::string& token);

/// Rows m = 2..9 and the limit row, five decimals.
std::string table1_csv();
/// d = 2..6 against m = 2..6 and lambda = 1/2.
std::string table2_csv(int grid_decimals = 2, int half_decimals = 3);

/// Fields quoted per RFC 4180 when needed; rows end in CRLF.
std::string csv_row(const std::vector<std::string>& fields);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gasket::cli
