#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nefcert/jacobian.hpp"
#include "nefcert/obstruction.hpp"

namespace nefcert {

inline constexpr const char* kSchema = "nefcert-certificate/1";
inline constexpr const char* kVersion = "0.1.0";

class ParseError : public Error {
 public:
  using Error::Error;
};

struct BuildBudget {
  int curves_per_field = 400;  // failed curves before the extension degree goes up
  int field_steps = 3;         // extension degrees tried beyond the smallest admissible one
  int pencils_per_curve = 4;
  int delta_tries = 64;        // random point sets per choose_delta call
  int delta_samples = 4;       // choose_delta calls per torsion class
  uint64_t guard = 50'000'000;  // point enumeration limit, in field elements
};

struct Certificate {
  uint64_t seed = 0;
  BuildBudget budget;
  Curve curve;
  MumfordClass torsion;
  FunctionElement g;
  Divisor a_div;
  FunctionElement z;
  BiForm aux;
  Divisor n_div;
  Vec delta_coords;  // in the rr_space(N_div - rep) basis
  Divisor d;
  Differential gamma;
  FunctionElement alpha;
  Fq obstruction;
  SemilinearMap frob_neg_l;
  Matrix cartier_manin;
};

struct FailureReport {
  std::map<std::string, long> stats;  // per-stage rejection counts
  std::vector<int> degrees_tried;
  std::string reason;
};

struct BuildResult {
  std::optional<Certificate> cert;
  FailureReport report;
};

// Smallest k with p^k >= 16.
int minimal_degree(uint64_t p);
BuildResult certificate_build(uint64_t p, uint64_t seed, const BuildBudget& budget = {});

struct CheckResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool ok() const;
  // index of the first failing check, 0 if none
  int first_failure() const;
};

VerifyReport certificate_verify(const Certificate& cert);

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);  // throws ParseError
std::string failure_to_json(const FailureReport& r, uint64_t p, uint64_t seed);
std::string report_to_text(const VerifyReport& r);

// Recomputes delta from its coordinates.
FunctionElement certificate_delta(const Certificate& cert);

}  // namespace nefcert
