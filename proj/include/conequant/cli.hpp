#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conequant/cone_lie.hpp"
#include "conequant/report.hpp"

namespace conequant {

/// Exit codes of run_command.
enum ExitCode { exit_ok = 0, exit_check_failed = 1, exit_usage = 2 };

/// Bad flags, unreadable files, malformed config values.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Flat key=value file; '#' starts a comment, blank lines are ignored.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Quadratic form file: one row of rationals per line (a/b or decimals), and
/// optionally a line "w c1 ... cn" giving the covector (default: last coordinate).
struct FormSpec {
  ExactMatrix gram;
  std::optional<Vector> w;
};
FormSpec read_form_file(const std::string& path);
Scalar parse_rational(const std::string& token);

/// The symbolic verification suite for one pointed Lorentzian space.
Report verify_suite(const Plqs& plqs);

/// Full command-line entry point; argv[0] excluded.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conequant
