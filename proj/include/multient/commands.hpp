#pragma once

// The `ent` subcommands as library functions. Each returns the process exit
// code: 0 success, 2 input error, 3 numeric or solver failure.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace multient {

struct RunConfig {
  unsigned threads = 0;  // 0: ENT_THREADS, else hardware concurrency
  std::uint64_t seed = 0;
  double solver_residual = 1e-10;
  int max_restarts = 32;
  double class_eps = 1e-9;  // tolerance-mode classification
};

// Resolves RunConfig::threads; throws InputError for a malformed ENT_THREADS.
unsigned resolve_threads(unsigned requested);

struct MeasureOptions {
  std::string state_path;
  std::string named;
  std::vector<std::string> params;  // "key=value", value like 0.5, -1.2i, 0.3+0.4i
  int n = 0;
  int d = 0;
  std::string measures = "gme_ame,scott";
  std::string out_path;
};

struct WeylOptions {
  std::string mode = "sweep";  // sweep | edge
  std::string edge = "local_cnot";
  long samples = 100;
  std::string csv_path;  // empty: stdout
};

struct PermOptions {
  int d = 2;
  std::string measures = "gme_ame";
  std::string enphase = "none";
  std::string csv_path;
  std::string classes_path;
  std::string audit_path;
};

struct CatalogOptions {
  bool list = false;
  std::string emit;
  std::vector<std::string> params;
  int n = 0;
  int d = 0;
  std::string out_path;  // empty: stdout
};

int cmd_measure(const MeasureOptions& opts, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_weyl(const WeylOptions& opts, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_perm(const PermOptions& opts, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_catalog(const CatalogOptions& opts, const RunConfig& cfg, std::ostream& out, std::ostream& err);

// "0.5", "-2", "1.5i", "-i", "0.3+0.4i", "1e-3-2e-1i".
std::optional<std::complex<double>> parse_complex(const std::string& text);

}  // namespace multient
