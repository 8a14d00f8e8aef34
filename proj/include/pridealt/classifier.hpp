#pragma once

#include "pridealt/angles.hpp"
#include "pridealt/pride_model.hpp"
#include "pridealt/words.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pridealt {

enum class Verdict { FreeSubgroup, VirtuallyAbelian, Inconclusive, OutOfScope };

std::string to_string(Verdict v);

/// Assignment of the four vertices of a K4 to the roles X, Y, Z, T with
/// label(XZ) = label(YT) = theta >= label(XY) = label(ZT) = alpha
/// >= label(YZ) = label(XT) = beta.
struct RoleMap {
    std::array<std::size_t, 4> index{}; ///< vertex index for X, Y, Z, T
    std::array<std::string, 4> id;      ///< vertex id for X, Y, Z, T
    Angle theta, alpha, beta;

    bool is_exceptional_triple() const;
};

/// u = x y z t x y z built from the role generators; the claim is that t and
/// u generate a free product and u has infinite order.
struct WitnessCert {
    RoleMap roles;
    std::string t;
    FreeWord u;
    std::string claim;
    std::vector<std::string> verified_by;
};

/// Relabeling of a K4 onto the square x1-x2-x3-x4-x1 with empty diagonals.
struct ExceptionalCert {
    std::array<std::string, 4> relabeling; ///< vertex ids playing x1..x4
    Presentation presentation;             ///< the eight-relator presentation in input generators
};

/// A triangle whose angle-bound sum is strictly below pi.
struct TriangleLocator {
    std::array<std::string, 3> vertices;
    Angle sum;
};

/// Two vertices joined by an angle-0 edge whose free product G_u * G_v is
/// not Z/2 * Z/2, and so contains a non-abelian free subgroup.
struct FreeProductLocator {
    std::array<std::string, 2> vertices;
    std::array<ExtNat, 2> orders;
};

/// A four-vertex full subgraph carrying the free subgroup.
struct SubgraphLocator {
    std::array<std::string, 4> vertices;
    std::variant<WitnessCert, FreeProductLocator> inner;
};

struct Reason {
    std::string text;
    std::vector<std::string> details;
    std::vector<std::string> flags;
};

using Evidence = std::variant<WitnessCert, ExceptionalCert, TriangleLocator, FreeProductLocator, SubgraphLocator, Reason>;

struct Classification {
    Verdict verdict = Verdict::Inconclusive;
    Evidence evidence;
    std::vector<std::string> citations;
};

/// Free subgroup vs. virtually abelian decision for a Pride graph. Validation
/// failures throw InputError; completion is applied internally.
Classification classify(const PrideGraph& g);

/// Requires every triangle of the K4 labeling to sum to pi. Ties are broken
/// by taking the lexicographically smallest (X, Y, Z, T) index tuple.
RoleMap assign_roles(const AngleLabeling& labeling, const std::vector<std::string>& ids);

/// Checks that roles are consistent with the graph's labeling. Throws
/// ScopeError for the (pi/2, pi/2, 0) triple, which belongs to the
/// virtually abelian analysis.
WitnessCert make_witness(const PrideGraph& k4, const RoleMap& roles);

/// Syntactic match against the exceptional square (orders 2, cycle
/// relators (x_i x_{i+1})^2 up to rotation and inversion, r = inf diagonals).
std::optional<ExceptionalCert> match_exceptional(const PrideGraph& k4);

/// Orders all 2 and some pair of opposite edges with r = inf, but the square
/// does not match syntactically.
bool exceptional_near_miss(const PrideGraph& k4);

struct ImpossibilityResult {
    std::size_t n = 0;
    bool possible = false;
    std::uint64_t labelings_covered = 0; ///< 5^(n choose 2)
    std::uint64_t search_nodes = 0;
    std::uint64_t pi_labelings = 0;          ///< labelings with every triangle summing to pi
    std::uint64_t exceptional_labelings = 0; ///< those with every induced K4 exceptional
    std::optional<AngleLabeling> witness;
};

/// Exhaustive search over labelings of K_n with angles {0, pi/6, pi/4, pi/3,
/// pi/2} and all triangle sums pi, for one whose every induced K4 has the
/// exceptional (pi/2, pi/2, 0) pattern. 4 <= n <= 7.
ImpossibilityResult verify_labeling_impossibility(std::size_t n);

nlohmann::ordered_json to_json(const Classification& c);
nlohmann::ordered_json to_json(const RoleMap& r);
nlohmann::ordered_json to_json(const WitnessCert& w);
nlohmann::ordered_json to_json(const ExceptionalCert& e);
nlohmann::ordered_json to_json(const ImpossibilityResult& r);

} // namespace pridealt
