#pragma once

#include <functional>
#include <optional>

#include "csp/ga_semidirect.hpp"

namespace csp {

struct PipelineLimits {
  uint64_t cap = FinGroup::kDefaultCap;
  uint64_t orbit_cap = 50'000;
};

/// A finite-index normal subgroup of the free group of rank n-2, presented
/// as the kernel of a homomorphism onto a finite permutation group.
struct QuotientSpec {
  uint32_t punctures = 4;  // n >= 4
  uint32_t ell = 2;
  FreeHom base;            // p, on the rank n-2 group
  PipelineLimits limits;
  uint64_t seed = 1;
};

/// ensure_noncyclic: when the image of `base` is cyclic, intersect its
/// kernel with the kernel of the mod-m homology map (m the exponent of the
/// image, minimum 2), which is non-cyclic for n > 3.  The kernel only
/// shrinks, and the image of the replacement projects back onto the input
/// image by restriction to the first block.
struct NonCyclic {
  FreeHom hom;
  bool replaced = false;
  uint32_t modulus = 0;
  uint32_t base_degree = 0;  // degree of the input image's permutations

  Perm factor(const Perm& img) const;  // image of hom -> image of base
};
NonCyclic ensure_noncyclic(const FreeHom& base, uint32_t punctures, uint64_t cap);

/// The centerless replacement of `base`: two group-algebra extension stages
/// followed by a collapse of the central cyclic subgroup spanned by the
/// all-ones vector.
///
/// One collapse is not always enough: killing the center can promote
/// second-center elements (those whose commutators land in the collapsed
/// line) to central ones, and that genuinely happens already for the klein
/// four base at ell = 2.  `collapsed` and `center_trivial` record the
/// single-collapse object and the honest verdict on it; `final` keeps
/// collapsing the (module-part) center until none is left, which is what
/// the containment chain actually needs.
struct CenterlessStage {
  NonCyclic noncyclic;
  LinByFin stage_one;  // subgroup of F_ell[Q] x| Q
  LinByFinEnumeration stage_one_elems;
  LinByFin collapsed;  // stage two / central cyclic, single collapse
  uint32_t stage_two_rank_before = 0;
  bool collapse_happened = false;
  bool center_trivial = false;  // center of `collapsed`
  LinByFin final;
  uint32_t extra_collapses = 0;
  bool final_center_trivial = false;
  std::vector<SdElem> images;  // generator images in `final`
  bool chain_verified = false;
};
CenterlessStage centerless_quotient(const QuotientSpec& spec);

/// The marker homomorphism on the sphere group one puncture up:
/// gamma_j -> (0, left multiplication by p(gamma_j)), peripheral ->
/// (unit vector at the identity, 1).
SdHom build_marker(const FreeHom& p, uint32_t punctures, uint32_t ell);

inline constexpr const char* kAutGenTag = "artin+inner-v1";

/// The adopted class-preserving generator set: artin twists for every pair
/// i < j, inner automorphisms by every generator, and all their inverses.
std::vector<FreeAut> aut_generator_set(const ClassMarkedFreeGroup& g);

/// Orbit of `phi` under precomposition by `gens`, BFS-closed, returned in
/// canonical (sorted key) order.  Throws CapExceededError past orbit_cap.
std::vector<SdHom> hom_orbit(const SdHom& phi, const std::vector<FreeAut>& gens,
                             uint64_t orbit_cap);

/// Post-hoc orbit sanity: closure under every generator, and every member
/// sends the peripheral generator to a conjugate of the marker's image.
bool orbit_closed(const std::vector<SdHom>& orbit, const std::vector<FreeAut>& gens);

struct Diagonal {
  SdHom q;         // blockwise-stacked images across the orbit
  LinByFin image;  // the image group, as linear-by-finite data
  uint32_t blocks = 0;
  uint32_t block_dim = 0;
  uint32_t marker_index = 0;
};
Diagonal orbit_diagonal(const std::vector<SdHom>& orbit, const SdHom& marker, uint64_t cap);

/// Goursat kernel test for homs into semidirect products presented as
/// LinByFin images: ker f <= ker g iff the subgroup generated by the paired
/// images meets 1 x im g trivially.
bool sd_kernel_contained(const std::vector<SdElem>& f_images,
                         const std::vector<SdElem>& g_images, uint64_t cap);

/// Kernel equality of q and q . tau for every generator tau, both Goursat
/// directions.
bool is_geom_characteristic(const SdHom& q, const std::vector<FreeAut>& gens, uint64_t cap);
bool is_geom_characteristic(const FreeHom& q, const std::vector<FreeAut>& gens, uint64_t cap);

/// The pullback hom on the group one puncture up: w -> p'(erase(w)).
FreeHom pullback_hom(const FreeHom& p, uint32_t punctures);

/// P0 = image / (normal closure of the peripheral image) together with the
/// induced images of the lower-rank generators.
struct InducedBase {
  FlSubspace closure;
  LinByFin collapsed;
  std::vector<SdElem> images;  // i = 1..n-2, canonical in `collapsed`
  bool square_verified = false;
};
InducedBase induced_base(const Diagonal& diag, std::mt19937_64& rng);

/// The reduction hypothesis and the weaker fact the section ambiguity
/// actually needs.  `contained` is the literal containment of the
/// centralizer of the peripheral image in the kernel of the collapse;
/// `image_central` asks only that the centralizer maps into the center of
/// the collapsed group.  Both are verified, never assumed.
struct CentralizerVerdict {
  bool contained = false;
  bool image_central = false;
};
CentralizerVerdict centralizer_condition(const Diagonal& diag, const InducedBase& base);

using PushFactory = std::function<FreeAut(const ClassMarkedFreeGroup&, uint32_t)>;

/// Finite-level compatibility of point pushing: the automorphism of the
/// collapsed group induced by push(j) (normalized to fix the peripheral
/// image) equals conjugation by the image of gamma_j, for every j.
bool birman_identity(const Diagonal& diag, const InducedBase& base,
                     const PushFactory& push = {});

struct WitnessChecks {
  bool input_center_trivial = false;
  bool orbit_ok = false;
  bool geom_characteristic = false;
  bool centralizer_ok = false;
  bool delta_well_defined = false;  // informational; not part of the verdict
  bool projection_identity = false;
  bool collapsed_center_killed = false;
  bool birman_ok = false;
  bool sample_ok = false;
  uint64_t sample_words = 0;
  uint64_t central_hits = 0;
  uint64_t violations = 0;
  bool sampling_vacuous = false;

  bool valid() const {
    return input_center_trivial && orbit_ok && geom_characteristic && centralizer_ok &&
           projection_identity && collapsed_center_killed && birman_ok && sample_ok;
  }
};

struct PipelineRun {
  QuotientSpec spec;
  bool used_centerless = false;
  std::optional<CenterlessStage> stage;
  FreeHom working;  // the hom the orbit machinery actually ran on
  std::vector<SdHom> orbit;
  Diagonal diag;
  InducedBase base0;
  WitnessChecks checks;
};

struct PipelineMode {
  bool check_geom = true;  // the Goursat sweep is the expensive part
  bool sample = true;
};

/// Runs the whole construction.  When the input image has nontrivial center
/// and allow_noncenterless is false, the centerless stage runs first and
/// its (enumerable) result replaces the input; CapExceededError propagates
/// when that group is too large.  With allow_noncenterless the input is
/// used as-is, which is enough for the finite-level push identity.
PipelineRun run_witness_pipeline(const QuotientSpec& spec, bool allow_noncenterless = false,
                                 const PushFactory& push = {}, const PipelineMode& mode = {});

/// Number of words sampled by the kernel-containment spot check.
inline constexpr uint64_t kSampleWords = 10'000;
inline constexpr uint32_t kSampleMaxLen = 40;

}  // namespace csp
