#include "csp/certificate.hpp"

#include <sstream>

#include "csp/sha256.hpp"

namespace csp {

namespace {

const char* b2s(bool b) { return b ? "true" : "false"; }

bool s2b(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("bad boolean in certificate: " + s);
}

}  // namespace

std::string WitnessCertificate::serialize() const {
  std::ostringstream os;
  os << "csp-certificate v1\n";
  os << "tool " << tool << '\n';
  os << "spec-digest sha256:" << digest << '\n';
  os << "begin-spec\n" << spec_block << "end-spec\n";
  os << "n " << punctures << '\n';
  os << "ell " << ell << '\n';
  os << "seed " << seed << '\n';
  os << "input-order " << input_order << '\n';
  os << "input-centerless " << b2s(input_centerless) << '\n';
  os << "used-centerless-stage " << b2s(used_centerless_stage) << '\n';
  if (used_centerless_stage) {
    os << "stage-noncyclic-replaced " << b2s(stage_replaced_noncyclic) << '\n';
    os << "stage-noncyclic-modulus " << stage_noncyclic_modulus << '\n';
    os << "stage-one-order " << stage_one_order << '\n';
    os << "stage-one-rank " << stage_one_rank << '\n';
    os << "stage-two-rank " << stage_two_rank << '\n';
    os << "stage-collapsed " << b2s(stage_collapsed) << '\n';
    os << "stage-order " << stage_order_expr << '\n';
    os << "stage-extra-collapses " << stage_extra_collapses << '\n';
    os << "flag stage-center-trivial " << b2s(stage_center_trivial) << '\n';
    os << "flag stage-final-center-trivial " << b2s(stage_final_center_trivial) << '\n';
    os << "flag stage-chain " << b2s(stage_chain_ok) << '\n';
  }
  os << "aut-generators " << aut_tag << " count " << aut_count << '\n';
  os << "orbit-size " << orbit_size << '\n';
  os << "marker-index " << marker_index << '\n';
  os << "diagonal-quotient-order " << diag_quotient_order << '\n';
  os << "diagonal-module-rank " << diag_module_rank << '\n';
  os << "peripheral-closure-rank " << closure_rank << '\n';
  os << "flag input-center-trivial " << b2s(checks.input_center_trivial) << '\n';
  os << "flag orbit-closed " << b2s(checks.orbit_ok) << '\n';
  os << "flag geometrically-characteristic " << b2s(checks.geom_characteristic) << '\n';
  os << "flag centralizer-condition " << b2s(checks.centralizer_ok) << '\n';
  os << "info section-ambiguity-central " << b2s(checks.delta_well_defined) << '\n';
  os << "flag projection-identity " << b2s(checks.projection_identity) << '\n';
  os << "flag collapsed-center-killed " << b2s(checks.collapsed_center_killed) << '\n';
  os << "flag push-identity " << b2s(checks.birman_ok) << '\n';
  os << "flag sampled-containment " << b2s(checks.sample_ok) << '\n';
  os << "sample-words " << checks.sample_words << " central-hits " << checks.central_hits
     << " violations " << checks.violations
     << (checks.sampling_vacuous ? " vacuous" : "") << '\n';
  os << "verdict " << (valid ? "VALID" : "INVALID") << '\n';
  return os.str();
}

WitnessCertificate WitnessCertificate::parse(const std::string& text) {
  WitnessCertificate c;
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "csp-certificate v1")
    throw std::invalid_argument("unknown certificate version");
  bool in_spec = false;
  while (std::getline(is, line)) {
    if (in_spec) {
      if (line == "end-spec") {
        in_spec = false;
      } else {
        c.spec_block += line;
        c.spec_block += '\n';
      }
      continue;
    }
    if (line == "begin-spec") {
      in_spec = true;
      continue;
    }
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    std::string val;
    if (key == "tool") {
      std::getline(ls, val);
      c.tool = val.substr(val.empty() ? 0 : 1);
    } else if (key == "spec-digest") {
      ls >> val;
      if (val.rfind("sha256:", 0) != 0) throw std::invalid_argument("bad digest line");
      c.digest = val.substr(7);
    } else if (key == "n") {
      ls >> c.punctures;
    } else if (key == "ell") {
      ls >> c.ell;
    } else if (key == "seed") {
      ls >> c.seed;
    } else if (key == "input-order") {
      ls >> c.input_order;
    } else if (key == "input-centerless") {
      ls >> val;
      c.input_centerless = s2b(val);
    } else if (key == "used-centerless-stage") {
      ls >> val;
      c.used_centerless_stage = s2b(val);
    } else if (key == "stage-noncyclic-replaced") {
      ls >> val;
      c.stage_replaced_noncyclic = s2b(val);
    } else if (key == "stage-noncyclic-modulus") {
      ls >> c.stage_noncyclic_modulus;
    } else if (key == "stage-one-order") {
      ls >> c.stage_one_order;
    } else if (key == "stage-one-rank") {
      ls >> c.stage_one_rank;
    } else if (key == "stage-two-rank") {
      ls >> c.stage_two_rank;
    } else if (key == "stage-collapsed") {
      ls >> val;
      c.stage_collapsed = s2b(val);
    } else if (key == "stage-extra-collapses") {
      ls >> c.stage_extra_collapses;
    } else if (key == "stage-order") {
      std::getline(ls, val);
      c.stage_order_expr = val.substr(val.empty() ? 0 : 1);
    } else if (key == "aut-generators") {
      std::string cnt;
      ls >> c.aut_tag >> cnt >> c.aut_count;
    } else if (key == "orbit-size") {
      ls >> c.orbit_size;
    } else if (key == "marker-index") {
      ls >> c.marker_index;
    } else if (key == "diagonal-quotient-order") {
      ls >> c.diag_quotient_order;
    } else if (key == "diagonal-module-rank") {
      ls >> c.diag_module_rank;
    } else if (key == "peripheral-closure-rank") {
      ls >> c.closure_rank;
    } else if (key == "info") {
      std::string name;
      ls >> name >> val;
      if (name == "section-ambiguity-central")
        c.checks.delta_well_defined = s2b(val);
      else
        throw std::invalid_argument("unknown info line: " + name);
    } else if (key == "flag") {
      std::string name;
      ls >> name >> val;
      bool b = s2b(val);
      if (name == "stage-center-trivial")
        c.stage_center_trivial = b;
      else if (name == "stage-final-center-trivial")
        c.stage_final_center_trivial = b;
      else if (name == "stage-chain")
        c.stage_chain_ok = b;
      else if (name == "input-center-trivial")
        c.checks.input_center_trivial = b;
      else if (name == "orbit-closed")
        c.checks.orbit_ok = b;
      else if (name == "geometrically-characteristic")
        c.checks.geom_characteristic = b;
      else if (name == "centralizer-condition")
        c.checks.centralizer_ok = b;
      else if (name == "projection-identity")
        c.checks.projection_identity = b;
      else if (name == "collapsed-center-killed")
        c.checks.collapsed_center_killed = b;
      else if (name == "push-identity")
        c.checks.birman_ok = b;
      else if (name == "sampled-containment")
        c.checks.sample_ok = b;
      else
        throw std::invalid_argument("unknown flag: " + name);
    } else if (key == "sample-words") {
      std::string k2, k3, k4;
      ls >> c.checks.sample_words >> k2 >> c.checks.central_hits >> k3 >> c.checks.violations;
      if (ls >> k4) c.checks.sampling_vacuous = (k4 == "vacuous");
    } else if (key == "verdict") {
      ls >> val;
      c.valid = (val == "VALID");
    } else {
      throw std::invalid_argument("unknown certificate key: " + key);
    }
  }
  return c;
}

WitnessCertificate make_certificate(const PipelineRun& run, const SpecFile& spec) {
  WitnessCertificate c;
  c.spec_block = spec.canonical();
  c.digest = sha256_hex(c.spec_block);
  c.punctures = run.spec.punctures;
  c.ell = run.spec.ell;
  c.seed = run.spec.seed;
  c.input_order = run.spec.base.target->order();
  c.input_centerless = run.spec.base.target->center().size() == 1;
  c.used_centerless_stage = run.used_centerless;
  if (run.stage) {
    const auto& st = *run.stage;
    c.stage_replaced_noncyclic = st.noncyclic.replaced;
    c.stage_noncyclic_modulus = st.noncyclic.modulus;
    c.stage_one_order = st.stage_one.order();
    c.stage_one_rank = st.stage_one.module_part().rank();
    c.stage_two_rank = st.stage_two_rank_before;
    c.stage_collapsed = st.collapse_happened;
    c.stage_order_expr = st.final.order_expr();
    c.stage_center_trivial = st.center_trivial;
    c.stage_extra_collapses = st.extra_collapses;
    c.stage_final_center_trivial = st.final_center_trivial;
    c.stage_chain_ok = st.chain_verified;
  }
  c.aut_tag = kAutGenTag;
  c.aut_count = static_cast<uint32_t>(
      aut_generator_set(ClassMarkedFreeGroup::punctured_sphere(run.spec.punctures)).size());
  c.orbit_size = run.orbit.size();
  c.marker_index = run.diag.marker_index;
  c.diag_quotient_order = run.diag.image.quotient().order();
  c.diag_module_rank = run.diag.image.module_part().rank();
  c.closure_rank = run.base0.closure.rank();
  c.checks = run.checks;
  c.valid = run.checks.valid();
  if (run.stage) c.valid = c.valid && run.stage->center_trivial && run.stage->chain_verified;
  return c;
}

}  // namespace csp
