#pragma once

#include "pridealt/angle.hpp"
#include "pridealt/ext_nat.hpp"
#include "pridealt/pride_model.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace pridealt {

/// min over relators of free_length(base) * period; infinity for an empty
/// relator set or when every period is infinite.
ExtNat edge_r(const Edge& e, const OrderMap& orders);

/// Upper bound on the Gersten-Stallings angle of an edge: 2pi/override_m when
/// an override is given, else 2pi/edge_r (0 for infinity).
/// Throws ScopeError for override_m = 1 (a vertex group fails to embed).
Angle gs_bound(const Edge& e, const OrderMap& orders);

/// Kernel length that gs_bound is derived from (override_m, else edge_r).
ExtNat edge_m_bound(const Edge& e, const OrderMap& orders);

struct EdgeCheck {
    std::string a, b;
    ExtNat m;
    Angle bound;
    bool pass = false;
};

struct TriangleCheck {
    std::array<std::string, 3> vertices;
    Angle sum;
    bool pass = false;
};

/// Condition (i) per edge and condition (ii) per triangle, on gs_bound values.
struct NonsphericalReport {
    std::vector<EdgeCheck> cond_i;
    std::vector<TriangleCheck> cond_ii;
    bool verdict = false;
};

/// Requires a complete graph with at least three vertices. Triangles are
/// listed in lexicographic vertex-order.
NonsphericalReport check_nonspherical(const PrideGraph& g);

struct CorollaryTriangle {
    std::array<std::string, 3> vertices;
    Rational sum; ///< 1/r_ij + 1/r_jk + 1/r_ik, with 1/inf = 0
    bool pass = false;
};

struct CorollaryReport {
    std::vector<CorollaryTriangle> triangles;
    bool verdict = false;
};

/// The periodic-paired-relations criterion sum 1/r <= 1/2 for every triangle.
/// Only defined for the class it was stated for: complete graph, no
/// override_m, every finite relator period >= 2 (ScopeError otherwise).
CorollaryReport corollary_criterion(const PrideGraph& g);

using AngleMultiset = std::array<Angle, 3>; ///< sorted descending

/// All multisets {2pi/m1, 2pi/m2, 2pi/m3} summing to exactly pi, with each m
/// even in [4, max_m] or infinite. Sorted descending, lexicographically.
std::vector<AngleMultiset> enumerate_pi_triangles(std::uint64_t max_m);

/// True for 0 and for 2pi/m with m even >= 4.
bool is_admissible_angle(const Angle& a);

/// Edge -> angle on the complete graph K_n, indexed by pair_index.
class AngleLabeling {
public:
    /// Throws InputError unless every angle is admissible or raw is set.
    AngleLabeling(std::size_t n, std::vector<Angle> angles, bool raw = false);

    static std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j);
    static std::size_t edge_count(std::size_t n) { return n * (n - 1) / 2; }

    std::size_t vertex_count() const { return n_; }
    const Angle& at(std::size_t i, std::size_t j) const { return angles_[pair_index(n_, i, j)]; }
    const std::vector<Angle>& angles() const { return angles_; }
    bool raw() const { return raw_; }

    /// Labeling of a complete Pride graph by gs_bound (raw, since bounds may
    /// exceed pi/2 on non-spherical inputs).
    static AngleLabeling from_graph(const PrideGraph& g);

private:
    std::size_t n_;
    std::vector<Angle> angles_;
    bool raw_;
};

struct K4Structure {
    bool all_triangles_pi = false;
    bool opposite_edges_equal = false;
    std::optional<AngleMultiset> triple;
};

/// Requires a labeling on four vertices. Opposite pairs are {01,23},
/// {02,13}, {03,12}.
K4Structure k4_structure(const AngleLabeling& labeling);

AngleMultiset sorted_multiset(Angle a, Angle b, Angle c);

nlohmann::ordered_json to_json(const NonsphericalReport& r);
nlohmann::ordered_json to_json(const CorollaryReport& r);
nlohmann::ordered_json to_json(const AngleMultiset& m);

} // namespace pridealt
