#pragma once

// Almost split sequences in the category of Koszul modules and the σ-orbits
// they generate. Right terms are generated in degree 0.

#include <cstdint>
#include <string>
#include <vector>

#include "extalg/sheaf.hpp"

namespace extalg {

// τ(m) = Ω²D(m*) and its inverse star(D(Ω^{-2} m)).
GradedModule tau(const GradedModule& m);
GradedModule tau_inverse(const GradedModule& m);

// σ(m) = (τm)_{>=0}.
GradedModule sigma(const GradedModule& m);

struct SigmaData {
  GradedModule tau;
  GradedModule sigma;
  bool equals_radical = false;  // (τm)_{>=0} = J^{r-1}τm as subspaces
};
SigmaData sigma_data(const GradedModule& m);

struct ARSequence {
  GradedModule left, middle, right;
  ModuleMap f, g;              // left -> middle -> right
  GradedModule omega;          // Ω(right)
  ModuleMap ext_class;         // cocycle Ω(right) -> left
  int ext_dim = 0;             // dim Ext^1(right, left)_0
  int annihilated_dim = 0;     // classes killed by rad End(right)_0
  bool exact = false;
  bool nonsplit = false;
  bool rad_annihilates = false;
  bool sigma_radical = false;  // left = J^{r-1}τ(right)
  bool left_koszul = false;
  int left_loewy = 0;
  int probes = 0;              // non-split-epi maps into right tested for lifting
  int probes_lifted = 0;
  bool certify = true;

  bool certified() const {
    return certify && exact && nonsplit && rad_annihilates && ext_dim > 0 && sigma_radical && left_koszul && left_loewy <= 2 &&
           probes_lifted == probes;
  }
};

// Without certify the Koszul check on the left term and the lifting probes are
// skipped, and certified() is false. Traversals use this for large terms.
ARSequence ar_sequence(const GradedModule& m, std::uint64_t seed = 0, bool certify = true);

struct MiddleSummand {
  GradedModule module;
  int multiplicity = 1;
  ModuleMap f, g;  // restricted maps for one copy
  bool f_mono = false, f_epi = false, g_mono = false, g_epi = false;
  bool composition_nonzero = false;  // g_i f_i != 0 for every copy
};

struct MiddleDecomposition {
  std::vector<MiddleSummand> summands;
  int count = 0;  // with multiplicity
  bool confident = true;
  bool mono_or_epi = true;
};

MiddleDecomposition middle_summands(const ARSequence& s, std::uint64_t seed = 0);

struct Loewy2Comparison {
  bool exact = false;
  bool nonsplit = false;
  int summands_middle = 0;
  int summands_reduced = 0;
  bool flags_preserved = false;
  bool holds() const { return exact && nonsplit && summands_middle == summands_reduced && flags_preserved; }
};

Loewy2Comparison loewy2_compare(const ARSequence& s, std::uint64_t seed = 0);

struct SigmaExactness {
  bool exact = false;
  bool left_matches = false;    // ends agree with σ applied directly
  bool middle_matches = false;
  bool right_matches = false;
  bool holds() const { return exact && left_matches && middle_matches && right_matches; }
};

// σ applied to 0 -> A -f-> B -g-> C -> 0 through the Nakayama functor and two
// horseshoe steps, then truncation. Rejects split sequences.
SigmaExactness sigma_exact_check(const ModuleMap& f, const ModuleMap& g);
SigmaExactness sigma_exact_check(const ARSequence& s);

bool is_split(const ModuleMap& g);

enum class ComponentShape { preinjective_of_loewy2, ZA_infinity_cone, projective_component };
const char* to_string(ComponentShape s);

struct ComponentNode {
  GradedModule module;
  std::string label;
  long long rank = 0;
  int loewy = 0;
  int kronecker_index = -1;
  bool projective = false;
};

struct ComponentArrow {
  int from = 0, to = 0, multiplicity = 1;
};

struct MeshCheck {
  int right = 0;
  long long rank_left = 0, rank_middle = 0, rank_right = 0;
  bool additive() const { return rank_middle == rank_left + rank_right; }
};

struct ComponentReport {
  ComponentShape shape = ComponentShape::ZA_infinity_cone;
  std::vector<ComponentNode> nodes;
  std::vector<ComponentArrow> arrows;
  std::vector<MeshCheck> meshes;
  bool confident = true;
  int leaves_capped = 0;
  // Ranks are BGG ranks; nodes small enough for the Hilbert polynomial are cross-checked.
  int hilbert_checked = 0;
  bool hilbert_agree = true;
  std::string note;

  bool mesh_additive() const;
  // Graphviz digraph: nodes labelled with name, dims and rank; arrows with multiplicity.
  std::string dot() const;
};

// Breadth-first over `steps` levels of almost split sequences. Nodes of total
// dimension above max_dim are kept as leaves and listed in the note.
ComponentReport sigma_orbit(const GradedModule& m, int steps = 4, std::uint64_t seed = 0, int max_dim = 40);

// Ranks are BGG ranks, cross-checked against the Hilbert polynomial on terms of
// total dimension at most kHilbertCheckDim.
inline constexpr int kHilbertCheckDim = 64;

// Triangular table over i + j <= depth.
struct RankTable {
  int depth = 0;
  std::vector<long long> sigma_ranks;            // rk σ^k M, k = 0..depth
  std::vector<std::vector<long long>> direct;    // [i][j] = rk σ^j M_i
  std::vector<std::vector<long long>> recursion;
  std::vector<int> middle_summands;              // summand count of the sequence ending at M_i
  std::vector<MeshCheck> meshes;
  bool agree = false;
  bool strictly_increasing = false;
  bool base_case = false;
  int hilbert_checked = 0;
  bool hilbert_agree = true;
};

// Throws inconclusive when some M_i with i < depth exceeds max_dim.
RankTable rank_recursion(const GradedModule& m, int depth = 4, std::uint64_t seed = 0, int max_dim = 150);

}  // namespace extalg
