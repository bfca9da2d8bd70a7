#pragma once

// The L-covering group of a labelled pc presentation: tagged relations,
// module relators from consistency test words and from the relators of a
// finitely presented group, and assembly of the extension.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "solquo/group_algebra.hpp"
#include "solquo/module_solver.hpp"
#include "solquo/presentations.hpp"

namespace solquo {

/// A homomorphism from a finitely presented group to a pc group, given by
/// the images of the free generators.
struct Epimorphism {
  std::vector<NormalWord> images;
};

struct CoverContext {
  std::shared_ptr<const PcPresentation> base;
  std::uint32_t p = 2;
  std::size_t r = 0;  // a_1..a_r generate K/P
  std::size_t s = 0;  // tagged relations
  std::size_t t = 0;  // extra generators for non-defining images
  /// Module generator of each tagged relation, in tag order.
  std::vector<RelationId> tagged_relations;
  PcPresentation head_quotient;
  std::shared_ptr<const FiniteGroup> head_group;
  /// Per free generator: image in K and the attached z-generator, if any
  /// (module generator s + index).
  struct SigmaEntry {
    NormalWord image;
    std::optional<std::size_t> z;
  };
  std::vector<SigmaEntry> sigma;
  std::shared_ptr<const ExtendedCollector> collector;
  /// Names new generators must avoid (those of the finitely presented group).
  std::vector<std::string> reserved_names;

  std::size_t rank() const { return s + t; }
  /// y1..ys, z1..zt
  std::vector<std::string> module_generator_names() const;
};

struct CoverLimits {
  std::uint64_t max_head_order = 1000000;
  unsigned threads = 1;
};

/// Overrides head_count when P is fixed by an L-series rather than read off
/// the weights of K.
struct HeadOverride {
  std::optional<std::size_t> r;
};

/// Head count r of K/P where P is the part of K's last weight block when
/// that block has prime p, and trivial otherwise.
std::size_t head_count(const PcPresentation& pc, std::uint32_t p);

CoverContext build_cover_context(const PcPresentation& pcK, std::uint32_t p,
                                 const FpPresentation* fp = nullptr,
                                 const Epimorphism* theta = nullptr,
                                 const CoverLimits& limits = {},
                                 HeadOverride head = {});

std::vector<ModuleWord> compute_T(const CoverContext& ctx, unsigned threads = 1);
std::vector<ModuleWord> compute_U(const CoverContext& ctx, const FpPresentation& fp);

/// Drops zero words and repeats, keeping first occurrences.
void prune_relators(std::vector<ModuleWord>& relators);

struct Extension {
  PcPresentation pc;
  /// Images of the free generators in the extension, when an fp group is
  /// attached to the context.
  std::vector<NormalWord> images;
  std::size_t base_size = 0;  // new generators are base_size..pc.size()-1
};

Extension assemble_pc(const CoverContext& ctx, const ModuleBasis& basis);

/// Chooses definitions for the generators of the newest layer (the last
/// weight) by a change of basis in that layer. Relations are scanned in
/// display order, with conjugates of already chosen layer generators
/// queued behind them, then the images; each rhs whose layer part is
/// independent of those chosen so far becomes a new basis vector.
/// `images` are rewritten in the new basis. Throws Error(internal) when the
/// layer is not spanned.
void relabel(PcPresentation& pc, std::vector<NormalWord>* images = nullptr);

PcPresentation l_cover(const PcPresentation& pcK, std::uint32_t p,
                       const CoverLimits& limits = {},
                       const ModuleSolverLimits& solver_limits = {});

/// The finite presentation of the extended covering group in the usual
/// notation: definitions untagged, other relations followed by their tag.
std::string format_tagged_presentation(const CoverContext& ctx);

/// Generator names for positions base.size()..base.size()+count-1 that do
/// not collide with existing names.
std::vector<std::string> fresh_names(const std::vector<std::string>& existing,
                                     std::size_t count);

}  // namespace solquo
