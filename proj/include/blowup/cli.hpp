#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace blowup::cli {

enum class Format { csv, json_lines };

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kIoError = 1;
inline constexpr int kSolverFailure = 2;
inline constexpr int kVerifyFailure = 3;
inline constexpr int kUsage = 64;

/// %.17g; nan and inf spelled as such.
std::string format_double(double x);

using Cell = std::variant<double, long long, bool, std::string>;

/// Buffered table in CSV (header line first) or JSON lines (one object per row).
/// Lines end in '\n' only.
class Table {
 public:
  Table(Format format, std::vector<std::string> columns);
  void add(const std::vector<Cell>& row);
  const std::string& text() const { return text_; }

 private:
  Format format_;
  std::vector<std::string> columns_;
  std::string text_;
};

/// "-" writes to `out`, anything else names a file. False on I/O failure.
bool write_output(const std::string& path, const std::string& text, std::ostream& out, std::ostream& err);

struct SweepOptions {
  double h_inv_min = 0.1;
  double h_inv_max = 6.0;
  int steps = 60;
  unsigned threads = 0;
  std::string out = "-";
  Format format = Format::csv;
};

struct SolveSigmaOptions {
  double h = 1.0;
  double tol = 1e-12;
  std::string out = "-";
  Format format = Format::csv;
};

struct SolveHOptions {
  double p = 5.0;
  double tol = 1e-11;
  std::string out = "-";
  Format format = Format::csv;
};

struct ProfileOptions {
  std::optional<double> p;
  std::optional<double> h;
  double z_max = 20.0;
  double z_min = 1e-3;
  int samples = 200;  // per side
  double tol = 1e-12;
  std::string out = "-";
  std::string sidecar;  // empty: <out>.jsonl, or none when out is "-"
  Format format = Format::csv;
};

struct VerifyOptions {
  std::string level = "fast";
  std::vector<std::string> groups;  // empty: all groups of the level
  double tamper_sigma = 0.0;
  unsigned threads = 0;
  std::string out = "-";
  Format format = Format::csv;
};

struct AsymptoticsOptions {
  double alpha = 0.5;
  double h_inv_min = 10.0;
  double h_inv_max = 40.0;
  int steps = 3;
  double tol = 1e-9;
  std::string out = "-";
  Format format = Format::csv;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err);
int cmd_solve_sigma(const SolveSigmaOptions& o, std::ostream& out, std::ostream& err);
int cmd_solve_h(const SolveHOptions& o, std::ostream& out, std::ostream& err);
int cmd_profile(const ProfileOptions& o, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err);
int cmd_asymptotics(const AsymptoticsOptions& o, std::ostream& out, std::ostream& err);

/// Verification groups in run order for a level ("fast" or "full").
std::vector<std::string> verify_groups(const std::string& level);

/// Parses argv and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace blowup::cli
