// Batch front door: parse a spec, run the construction, emit and re-verify
// certificates.
//
// Exit codes: 0 success (certificate VALID where applicable), 2 parse or
// validation error, 3 enumeration cap exceeded, 4 verification failed.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "csp/certificate.hpp"
#include "csp/sha256.hpp"

using namespace csp;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SpecParseError("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

struct Overrides {
  std::optional<uint64_t> cap, orbit_cap, seed;
  std::optional<uint32_t> ell;
  bool json = false;
  bool emit_intermediate = false;
};

SpecFile load_spec(const std::string& path, const Overrides& ov) {
  SpecFile sf = SpecFile::parse(slurp(path));
  if (ov.cap) sf.cap = *ov.cap;
  if (ov.orbit_cap) sf.orbit_cap = *ov.orbit_cap;
  if (ov.seed) sf.seed = *ov.seed;
  if (ov.ell) sf.ell = *ov.ell;
  return sf;
}

void log_line(const Overrides& ov, const std::string& stage, const std::string& msg,
              const nlohmann::json& extra = {}) {
  if (ov.json) {
    nlohmann::json j = extra;
    j["stage"] = stage;
    j["message"] = msg;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "[" << stage << "] " << msg << '\n';
  }
}

void emit_intermediate(const PipelineRun& run, const Overrides& ov) {
  if (!ov.emit_intermediate) return;
  log_line(ov, "orbit", "members", {{"count", run.orbit.size()}});
  const auto& sphere = run.diag.q.domain;
  for (size_t i = 0; i < run.orbit.size(); ++i) {
    std::ostringstream os;
    for (uint32_t g = 1; g <= sphere.rank; ++g) {
      const SdElem& x = run.orbit[i].images[g - 1];
      os << " [";
      for (auto [idx, val] : x.v.support()) os << ' ' << idx << ':' << int(val);
      os << " | " << x.g.to_cycles() << ']';
    }
    log_line(ov, "orbit", "member " + std::to_string(i) + os.str());
  }
  log_line(ov, "diagonal", "image",
           {{"quotient_order", run.diag.image.quotient().order()},
            {"module_rank", run.diag.image.module_part().rank()},
            {"order", run.diag.image.order_expr()}});
}

int run_witness(const std::string& spec_path, const std::string& out_path, const Overrides& ov,
                bool birman_only) {
  SpecFile sf = load_spec(spec_path, ov);
  QuotientSpec qs = sf.to_quotient_spec();
  PipelineMode mode;
  if (birman_only) mode = PipelineMode{/*check_geom=*/false, /*sample=*/false};
  PipelineRun run = run_witness_pipeline(qs, /*allow_noncenterless=*/birman_only, {}, mode);
  emit_intermediate(run, ov);
  if (birman_only) {
    log_line(ov, "push-identity", run.checks.birman_ok ? "holds" : "FAILS",
             {{"orbit", run.orbit.size()}});
    return run.checks.birman_ok ? 0 : 4;
  }
  WitnessCertificate cert = make_certificate(run, sf);
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    f << cert.serialize();
  } else {
    std::cout << cert.serialize();
  }
  log_line(ov, "witness", cert.valid ? "VALID" : "INVALID",
           {{"orbit", cert.orbit_size}, {"digest", cert.digest}});
  return cert.valid ? 0 : 4;
}

int run_centerless(const std::string& spec_path, const Overrides& ov) {
  SpecFile sf = load_spec(spec_path, ov);
  QuotientSpec qs = sf.to_quotient_spec();
  CenterlessStage st = centerless_quotient(qs);
  log_line(ov, "centerless", "done",
           {{"noncyclic_replaced", st.noncyclic.replaced},
            {"stage_one_order", st.stage_one.order()},
            {"stage_two_rank", st.stage_two_rank_before},
            {"collapsed", st.collapse_happened},
            {"single_collapse_center_trivial", st.center_trivial},
            {"extra_collapses", st.extra_collapses},
            {"order", st.final.order_expr()},
            {"center_trivial", st.final_center_trivial},
            {"chain", st.chain_verified}});
  return st.final_center_trivial && st.chain_verified ? 0 : 4;
}

int run_verify(const std::string& cert_path, const Overrides& ov) {
  std::string text = slurp(cert_path);
  WitnessCertificate stored = WitnessCertificate::parse(text);
  if (sha256_hex(stored.spec_block) != stored.digest) {
    log_line(ov, "verify", "spec digest mismatch");
    return 4;
  }
  SpecFile sf = SpecFile::parse(stored.spec_block);
  QuotientSpec qs = sf.to_quotient_spec();
  PipelineRun run = run_witness_pipeline(qs);
  WitnessCertificate fresh = make_certificate(run, sf);
  if (fresh.serialize() != text) {
    log_line(ov, "verify", "certificate does not reproduce");
    return 4;
  }
  log_line(ov, "verify", fresh.valid ? "reproduced, VALID" : "reproduced, but INVALID");
  return fresh.valid ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"congruence witness pipeline for punctured-sphere group quotients"};
  app.require_subcommand(1);
  app.fallthrough();
  Overrides ov;
  app.add_flag("--json", ov.json, "machine-readable log lines");

  std::string spec_path, out_path, cert_path;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("spec", spec_path, "spec file")->required();
    cmd->add_option("--cap", [&ov](const auto& v) { ov.cap = std::stoull(v[0]); return true; },
                    "enumeration cap");
    cmd->add_option("--orbit-cap",
                    [&ov](const auto& v) { ov.orbit_cap = std::stoull(v[0]); return true; },
                    "orbit size cap");
    cmd->add_option("--seed", [&ov](const auto& v) { ov.seed = std::stoull(v[0]); return true; },
                    "deterministic seed");
    cmd->add_option("--ell", [&ov](const auto& v) { ov.ell = std::stoul(v[0]); return true; },
                    "field order");
    cmd->add_flag("--emit-intermediate", ov.emit_intermediate,
                  "dump stage and orbit internals");
  };

  auto* witness = app.add_subcommand("witness", "run the full pipeline, write a certificate");
  add_common(witness);
  witness->add_option("-o,--out", out_path, "certificate output path");

  auto* centerless = app.add_subcommand("centerless", "run only the centerless replacement");
  add_common(centerless);

  auto* birman = app.add_subcommand("birman", "check the finite-level push identity");
  add_common(birman);

  auto* verify = app.add_subcommand("verify", "recompute a certificate from its embedded spec");
  verify->add_option("cert", cert_path, "certificate file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (witness->parsed()) return run_witness(spec_path, out_path, ov, false);
    if (centerless->parsed()) return run_centerless(spec_path, ov);
    if (birman->parsed()) return run_witness(spec_path, "", ov, true);
    if (verify->parsed()) return run_verify(cert_path, ov);
  } catch (const SpecParseError& e) {
    std::cerr << "spec error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const CapExceededError& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return 3;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
