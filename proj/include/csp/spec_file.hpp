#pragma once

#include <stdexcept>

#include "csp/csp_core.hpp"

namespace csp {

class SpecParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Line-oriented, versioned description of a pipeline input: puncture
/// count, field order, the target group by named permutation generators in
/// cycle notation, one image expression per free generator, and options.
struct SpecFile {
  uint32_t punctures = 4;
  uint32_t ell = 2;
  std::vector<std::pair<std::string, std::string>> perms;  // name -> cycle text
  std::vector<std::string> image_exprs;                    // for g1..g_{n-2}
  uint64_t cap = FinGroup::kDefaultCap;
  uint64_t orbit_cap = 50'000;
  uint64_t seed = 1;
  std::string aut_tag = "artin+inner-v1";

  static SpecFile parse(const std::string& text);
  /// Deterministic re-serialization; embedded verbatim in certificates.
  std::string canonical() const;
  QuotientSpec to_quotient_spec() const;
};

}  // namespace csp
