#pragma once

// Text format for groups, morphisms, representations and connections:
//
//   group Gm { vars: u, v; relations: u*v - 1;
//              comul: u -> u'*u'', v -> v'*v''; counit: u -> 1, v -> 1;
//              antipode: u -> v, v -> u; }
//   morphism rho { source: Gprime; target: Gm; pullback: u -> u, v -> w; }
//   rep V { group: Gm; matrix: [[u]]; det_inverse: v; }
//   connection L { base: punctured-line; matrix: [[pi*x^-1]]; }
//
// `#` starts a comment.  `level: n;` in a group block sets the base to R_n.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "neron/dgal.hpp"
#include "neron/hopf.hpp"
#include "neron/reps.hpp"

namespace neron {

using GenericMap = std::vector<std::pair<std::string, GenericPoly>>;

struct GroupBlock {
  std::string name;
  std::vector<std::string> vars;
  std::vector<GenericPoly> relations;
  GenericMap comul, counit, antipode;
  std::optional<unsigned> level;
  SourcePos pos;

  bool operator==(const GroupBlock& o) const {
    return name == o.name && vars == o.vars && relations == o.relations && comul == o.comul && counit == o.counit &&
           antipode == o.antipode && level == o.level;
  }
};

struct MorphismBlock {
  std::string name, source, target;
  GenericMap pullback;
  SourcePos pos;

  bool operator==(const MorphismBlock& o) const {
    return name == o.name && source == o.source && target == o.target && pullback == o.pullback;
  }
};

struct RepBlock {
  std::string name, group;
  GenericMatrix matrix;
  std::optional<GenericPoly> det_inverse;
  SourcePos pos;

  bool operator==(const RepBlock& o) const {
    return name == o.name && group == o.group && matrix == o.matrix && det_inverse == o.det_inverse;
  }
};

struct ConnectionBlock {
  std::string name, base;
  GenericMatrix matrix;
  SourcePos pos;

  bool operator==(const ConnectionBlock& o) const { return name == o.name && base == o.base && matrix == o.matrix; }
};

struct PresentationFile {
  std::vector<GroupBlock> groups;
  std::vector<MorphismBlock> morphisms;
  std::vector<RepBlock> reps;
  std::vector<ConnectionBlock> connections;

  bool operator==(const PresentationFile& o) const {
    return groups == o.groups && morphisms == o.morphisms && reps == o.reps && connections == o.connections;
  }

  const GroupBlock* find_group(const std::string& name) const;
  const MorphismBlock* find_morphism(const std::string& name) const;
  const RepBlock* find_rep(const std::string& name) const;
  const ConnectionBlock* find_connection(const std::string& name) const;
};

/// Throws SyntaxError (with line and column) or UndefinedName.
PresentationFile parse_presentation(std::string_view text);
PresentationFile load_presentation(const std::string& path);
std::string print_presentation(const PresentationFile& file);
/// A square matrix of polynomials, [[a, b], [c, d]].
GenericMatrix parse_matrix(std::string_view text);

HopfPresentation resolve_group(const PresentationFile& file, const std::string& name);
GroupMorphism resolve_morphism(const PresentationFile& file, const std::string& name);
/// Without a det_inverse entry the inverse determinant is computed.
RepMatrix resolve_rep(const PresentationFile& file, const std::string& name);
Connection resolve_connection(const PresentationFile& file, const std::string& name);

/// Syntax of a single group in the block format.
std::string group_block_text(const HopfPresentation& h);
std::string morphism_block_text(const GroupMorphism& m);
std::string rep_block_text(const std::string& name, const RepMatrix& v);

}  // namespace neron
