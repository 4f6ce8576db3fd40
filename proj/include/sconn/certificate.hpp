#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace sconn {

/// proves_true_claim: a <=-claim established with upper-bound distances or exact
/// oracles, hence valid in the infinite graph. at_truncation: only established for the
/// finite truncation.
enum class Semantics { proves_true_claim, at_truncation };

const char* to_string(Semantics s);

struct Certificate {
  std::string kind;  // bottleneck, linking, centre, qi, slice-diameter, hasse, ladder-properties, ...
  bool pass = true;
  std::string constants;
  Semantics semantics = Semantics::at_truncation;
  std::size_t checked = 0;  // instances examined
  std::size_t failures = 0;
  std::vector<std::string> witnesses;
  std::string note;

  /// Records one instance; failing details are kept (the first few) as witnesses.
  void record(bool ok, const std::string& detail = {});
  /// Keeps a supporting witness line (capped).
  void add_witness(const std::string& line);
  /// Folds another certificate of the same kind into this one.
  void merge(const Certificate& other);
};

/// Line-oriented report: one header line per certificate, then indented witnesses.
void write_report(std::ostream& os, const std::vector<Certificate>& certs);

}  // namespace sconn
