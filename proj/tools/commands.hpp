#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace randnet::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitCostGuard = 3,
  kExitNumerical = 4,
};

/// A computed value that is not finite or leaves its valid range.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest n the exact rational path accepts.
inline constexpr int kExactMaxN = 30;
/// Largest n the floating-point path accepts.
inline constexpr int kFloatMaxN = 1000;
/// Upper limit on Monte Carlo work, samples * n^2.
inline constexpr double kMonteCarloWorkLimit = 1e13;
inline constexpr int kDynamicMaxSteps = 1000000;
inline constexpr int kStaticMaxSteps = 100000;

/// Parses argv-style arguments (without the program name), writes artifacts to
/// `out` or the --out path and diagnostics to `err`. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// v rounded half away from zero to `decimals` digits after the point.
std::string round_decimal(const mpq_class& v, int decimals);

/// %.{digits}g rendering used for every floating-point CSV cell.
std::string format_significant(double v, int digits);

/// Output file name for one p of `pc curve --out DIR`: "2/3" -> "pc_curve_p2-3.csv".
std::string curve_file_name(std::string_view p_text);

}  // namespace randnet::cli
