#pragma once

// End-to-end certificate runs: surface -> enumeration -> graphs -> ladders -> slices,
// with deterministic file output.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sconn/certificate.hpp"
#include "sconn/ladders.hpp"
#include "sconn/quasitree.hpp"
#include "sconn/surface.hpp"

namespace sconn {

enum ExitCode : int {
  kExitPass = 0,
  kExitInternal = 1,
  kExitCertificateFailure = 2,
  kExitStabilityRefusal = 3,
  kExitInputError = 4,
  kExitIoError = 5,
};

struct RunConfig {
  std::string surface_path;
  Rational lsq = 6000;            // graph truncation and first slice step
  Rational growth = Rational(3, 2);  // slice steps lsq, lsq * growth, lsq * growth^2
  Rational ladder_lsq = 50;       // ladder endpoints are drawn from saddle connections this short
  Slope theta0 = parse_slope("1/0");
  int k_max = 3;
  std::size_t pairs = 100;       // ladder and bottleneck instances
  std::size_t quadruples = 100;  // linking instances sought
  std::size_t triangles = 100;
  std::size_t qi_samples = 500;
  std::uint64_t seed = 1;
  std::string out_dir;           // empty: nothing written
  std::set<std::string> kinds;   // certificate kinds to run; empty runs all
};

/// The certificate kinds run_suite knows.
const std::vector<std::string>& certificate_kinds();

struct SuiteResult {
  std::vector<Certificate> certificates;
  std::string report;
  bool pass() const;
};

/// Throws InputError (bad surface or config), StabilityError, IoError.
SuiteResult run_suite(const RunConfig& config);

/// Exit status for a finished run.
int exit_code(const SuiteResult& r);

/// The once-marked unit square torus: two triangles and shortest saddle connections
/// (1, 0), (0, 1), (1, 1), (1, -1). Enables the Farey oracle.
bool is_square_torus(const TriangulatedSurface& t);

/// k-th saddle connection (enumeration order) whose canonical holonomy is the
/// canonical form of h, written "x,y" or "x,y:k". Throws InputError when there is none.
SaddleConnection select_saddle_connection(const TriangulatedSurface& t, const std::string& spec);

/// Writes through a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace sconn
