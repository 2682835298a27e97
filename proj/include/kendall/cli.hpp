#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "kendall/step_distribution.hpp"

namespace kendall::cli {

// Raised on malformed distribution specs and grids; position points at the
// offending character of the input token.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar: two-point:x=1.0 | pareto:p=2.0 | uniform | mixture:p=0.5 |
// table:<path to two-column CSV (t, F(t)) with strictly increasing t > 0>.
StepDistribution parse_dist_spec(const std::string& spec);

// "a:b:n" -> n equally spaced points from a to b inclusive; n >= 2, a < b.
std::vector<double> parse_grid(const std::string& spec);

// Comma-separated positive integers ("2,5,10").
std::vector<int> parse_int_list(const std::string& spec);

// Dispatch a full command line. Exit status: 0 success, 1 verification
// failure, 2 usage error. Usage errors print a one-line diagnostic naming
// the offending token on err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kendall::cli
