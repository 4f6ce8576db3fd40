#include "sconn/certificate.hpp"

namespace sconn {

namespace {

constexpr std::size_t kMaxWitnesses = 8;

bool is_failure(const std::string& line) { return line.rfind("FAIL ", 0) == 0; }

// Failures displace supporting witnesses once the list is full.
void keep(std::vector<std::string>& lines, const std::string& line) {
  if (lines.size() < kMaxWitnesses) {
    lines.push_back(line);
    return;
  }
  if (!is_failure(line)) return;
  for (auto& l : lines) {
    if (!is_failure(l)) {
      l = line;
      return;
    }
  }
}

}  // namespace

const char* to_string(Semantics s) {
  return s == Semantics::proves_true_claim ? "proves-true-claim" : "at-truncation";
}

void Certificate::record(bool ok, const std::string& detail) {
  ++checked;
  if (ok) return;
  ++failures;
  pass = false;
  if (!detail.empty()) keep(witnesses, "FAIL " + detail);
}

void Certificate::add_witness(const std::string& line) { keep(witnesses, line); }

void Certificate::merge(const Certificate& other) {
  checked += other.checked;
  failures += other.failures;
  pass = pass && other.pass;
  for (const auto& w : other.witnesses) keep(witnesses, w);
}

void write_report(std::ostream& os, const std::vector<Certificate>& certs) {
  for (const auto& c : certs) {
    os << c.kind << " status=" << (c.pass ? "pass" : "fail") << " constants=" << c.constants
       << " semantics=" << to_string(c.semantics) << " checked=" << c.checked << " failures=" << c.failures;
    if (!c.note.empty()) os << " note=\"" << c.note << "\"";
    os << "\n";
    for (const auto& w : c.witnesses) os << "  " << w << "\n";
  }
}

}  // namespace sconn
