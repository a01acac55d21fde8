#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aqubo::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kInputError = 2,
  kCapacityError = 3,
};

/// Runs one command line (without the program name) and returns its exit
/// code. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// CSV for the scaling figures: 1 ancillas per clause over k, 2 matrix size
/// on complete digraphs, 3 matrix size with |E| = 4|V|.
void write_scaling_csv(std::ostream& out, int figure, unsigned first,
                       unsigned last);

}  // namespace aqubo::cli
