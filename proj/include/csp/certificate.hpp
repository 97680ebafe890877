#pragma once

#include "csp/csp_core.hpp"
#include "csp/spec_file.hpp"

namespace csp {

inline constexpr const char* kToolVersion = "cspwitness 1.0.0";

/// The serialized record of one pipeline run: the canonical input block,
/// every constructed size, every verified flag, and the verdict.  Fully
/// deterministic: the same spec block reproduces it byte for byte.
struct WitnessCertificate {
  std::string tool = kToolVersion;
  std::string spec_block;  // canonical SpecFile text
  std::string digest;      // sha256 of spec_block
  uint32_t punctures = 0;
  uint32_t ell = 0;
  uint64_t seed = 0;
  uint64_t input_order = 0;
  bool input_centerless = false;
  bool used_centerless_stage = false;
  // centerless stage summary, present when the stage ran
  bool stage_replaced_noncyclic = false;
  uint32_t stage_noncyclic_modulus = 0;
  uint64_t stage_one_order = 0;
  uint32_t stage_one_rank = 0;
  uint32_t stage_two_rank = 0;
  bool stage_collapsed = false;
  std::string stage_order_expr;
  bool stage_center_trivial = false;  // after the single collapse
  uint32_t stage_extra_collapses = 0;
  bool stage_final_center_trivial = false;
  bool stage_chain_ok = false;

  uint64_t orbit_size = 0;
  uint32_t marker_index = 0;
  uint64_t diag_quotient_order = 0;
  uint32_t diag_module_rank = 0;
  uint32_t closure_rank = 0;
  std::string aut_tag;
  uint32_t aut_count = 0;
  WitnessChecks checks;
  bool valid = false;

  std::string serialize() const;
  static WitnessCertificate parse(const std::string& text);
};

/// Builds the certificate for a completed run.
WitnessCertificate make_certificate(const PipelineRun& run, const SpecFile& spec);

}  // namespace csp
