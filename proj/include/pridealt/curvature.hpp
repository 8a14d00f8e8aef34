#pragma once

#include "pridealt/angle.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pridealt {

// ---------------------------------------------------------------------------
// Curvature arithmetic

/// (2 - q) pi + sum 2pi/delta_i. Throws InputError unless |degrees| = q >= 2
/// and every degree is >= 3.
Angle region_curvature(std::size_t q, const std::vector<std::uint32_t>& degrees);

/// d-value of an exterior region: curvature with the hub corner removed.
/// Needs q - 1 non-hub degrees.
Angle exterior_d(std::size_t q, const std::vector<std::uint32_t>& nonhub_degrees);

/// Abstract spherical complex: faces list their corner vertices in cyclic
/// order, and degree[v] is the declared degree of vertex v.
struct DualComplex {
    std::vector<std::vector<std::size_t>> faces;
    std::vector<std::uint32_t> degree;
};

struct GaussBonnet {
    Angle sum;
    bool ok = false;
};

/// Sum of every face curvature; ok iff the sum is exactly 4pi. Throws
/// InputError when a declared degree differs from the vertex's corner count
/// or is below 3.
GaussBonnet gauss_bonnet(const DualComplex& c);

DualComplex tetrahedron_complex();
DualComplex cube_complex();

/// Random sphere cellulation grown from the tetrahedron by stellar face
/// subdivision, 2-gon insertion along an edge, and edge deletion. Every vertex
/// keeps degree >= 3 and no face repeats a vertex.
DualComplex random_spherical_complex(std::mt19937_64& rng, std::size_t steps);

// ---------------------------------------------------------------------------
// Chain model of the exterior regions along one u-piece

enum class Role : std::uint8_t { A, Y, B, T };

char role_char(Role r);

/// Unordered pair of distinct roles: the type of a maximal region.
struct PairType {
    Role lo = Role::A, hi = Role::Y;

    static PairType of(Role a, Role b);
    bool contains(Role r) const { return lo == r || hi == r; }
    /// Distinct and sharing exactly one role.
    bool adjacent(const PairType& o) const;
    std::string to_string() const;

    friend bool operator==(const PairType&, const PairType&) = default;
};

/// AY, AB, AT, YB, YT, BT.
const std::array<PairType, 6>& all_pair_types();

struct AngleTriple {
    Angle theta, phi, psi;

    /// AB and YT carry theta, AY and BT carry phi, YB and AT carry psi.
    Angle of(const PairType& t) const;
    std::string to_string() const;

    friend bool operator==(const AngleTriple&, const AngleTriple&) = default;
};

/// (pi/2, pi/3, pi/6), (pi/2, pi/6, pi/3), (pi/2, pi/4, pi/4), (pi/3, pi/3, pi/3).
const std::vector<AngleTriple>& admissible_triples();
/// (pi/2, pi/2, 0), outside both claims.
AngleTriple excluded_triple();

struct Hypothesis {
    bool v1_is_at = false;
    Role follower = Role::T;  ///< T or A: first letter after the piece
    Role preceding = Role::T; ///< T or B; does not enter the chain
};

/// C1, C2, C4, C5 and C6 are structural and always on.
struct ChainConstraints {
    bool c3 = true; ///< no two adjacent exterior 2-gons
    bool c7 = true; ///< the two deg >= 5 refinements
    /// Extra degree lower bounds on the shared chain vertices s_0..s_7.
    std::array<std::uint32_t, 8> min_degree{};
    /// Restrict the enumeration to one q-pattern.
    std::optional<std::array<std::uint8_t, 7>> only_q;
};

std::vector<std::string> constraint_names(const ChainConstraints& c);

using QPattern = std::array<std::uint8_t, 7>; ///< q_1..q_7, each 2, 3 or 4 (meaning >= 4)

/// One admissible configuration. Region i (1-based) spans shared vertices
/// s_{i-1} and s_i; s_k contains the role of letter k+1 of a,y,b,t,a,y,b,f.
struct ChainConfig {
    QPattern q{};
    std::array<PairType, 8> shared{};
    std::array<std::uint32_t, 8> degree{};
    std::array<std::optional<PairType>, 7> middle; ///< q = 4 middle vertex
    std::array<std::uint32_t, 7> middle_degree{};
    std::array<bool, 7> detached{};                 ///< 2-gon not identified with its neighbours (C3 off)
    std::array<std::optional<PairType>, 7> gon_type; ///< vertex type of each 2-gon
    std::array<Angle, 7> d;
    Angle dS;
    bool c7_applied = false;

    std::vector<int> two_gons() const;
    /// Consecutive distinct vertices v_1, v_2, ... of S, as the proof labels them.
    std::vector<PairType> chain_vertices() const;
};

struct ChainEnumeration {
    Hypothesis hyp;
    AngleTriple triple;
    std::uint64_t count = 0;
    std::uint64_t c7_applied = 0;
    std::optional<ChainConfig> best;
    std::map<QPattern, ChainConfig> best_by_q;
};

/// Every configuration meeting the constraints for the hypothesis and
/// triple, each evaluated with all vertices at their minimal admissible
/// degree. The visitor, when set, sees every configuration.
ChainEnumeration enumerate_chain_configs(const Hypothesis& hyp, const AngleTriple& triple,
                                         const ChainConstraints& constraints = {},
                                         const std::function<void(const ChainConfig&)>& visit = {});

struct PatternViolation {
    std::vector<int> two_gons;
    AngleTriple triple;
    Role follower;
    ChainConfig config;
};

struct ClaimReport {
    int claim = 1;
    Angle threshold; ///< 0 for claim 1, -pi/3 for claim 2
    ChainConstraints constraints;
    std::vector<ChainEnumeration> runs; ///< admissible triples x followers
    std::vector<ChainEnumeration> informational; ///< the excluded triple
    Angle max_dS;
    bool attained = false;
    std::vector<PatternViolation> violations; ///< best config per q-pattern above the threshold
    bool verdict = false;

    /// Max d(S) over configurations with the given 2-gon set, restricted to
    /// a triple and (optionally) a follower. nullopt if none exist.
    std::optional<Angle> pattern_max(const std::vector<int>& two_gons, const AngleTriple& t,
                                     std::optional<Role> follower = std::nullopt) const;
    /// (2-gon set, triple, follower) triples whose best config attains max_dS.
    std::vector<PatternViolation> extremal() const;
};

/// v1 not of type AT; pass iff max d(S) <= 0.
ClaimReport verify_claim1(const ChainConstraints& c = {});
/// v1 of type AT; pass iff max d(S) <= -pi/3.
ClaimReport verify_claim2(const ChainConstraints& c = {});

/// The per-case inequalities of the two claims, each checked against the
/// enumerated maximum of its q-pattern at every admissible triple.
struct CaseBoundRow {
    AngleTriple triple;
    Role follower;
    std::optional<Angle> enumerated; ///< nullopt: no configuration in this case
    Angle bound;
    bool ok = false;
};

struct CaseBoundCheck {
    int claim = 1;
    std::string name;
    std::string bound_text;
    std::vector<CaseBoundRow> rows;
    bool ok = false;
};

std::vector<CaseBoundCheck> verify_case_bounds(const ClaimReport& claim1, const ClaimReport& claim2);

/// The {4,7} sub-bound d(D1 D2 D3) <= -pi at every admissible triple.
struct PartialBoundCheck {
    Angle max_partial;
    Angle bound;
    bool ok = false;
};
PartialBoundCheck verify_case_47_prefix();

struct InteriorLine {
    std::string text;
    Angle value;
    bool ok = false;
};

struct InteriorReport {
    AngleTriple triple;
    std::vector<InteriorLine> lines;
    bool ok = false;
};

/// q = 3 interior regions against every triangle of role labels, and
/// q = 4..8 against the pi/2 corner cap.
InteriorReport interior_bound_check(const AngleTriple& t);

struct AssemblyPiece {
    int sign = 1;
    bool after_t = false;
    Role follower = Role::A;
    Angle bound; ///< max over admissible triples of the piece's d-value bound
};

struct AssemblyReport {
    std::string word;
    std::vector<AssemblyPiece> pieces;
    std::vector<std::string> chain;
    bool contradiction = false;
    std::vector<std::string> excluded;
};

/// Exterior-sum contradiction for a cyclic word in t and u, e.g. "u^3" or
/// "t^2*u^-1". Throws InputError on words without u, VerificationError
/// unless both claims pass.
AssemblyReport verify_assembly(const std::string& word, const ClaimReport& claim1, const ClaimReport& claim2);

nlohmann::ordered_json to_json(const ChainConfig& c);
nlohmann::ordered_json to_json(const ClaimReport& r);
nlohmann::ordered_json to_json(const CaseBoundCheck& c);
nlohmann::ordered_json to_json(const InteriorReport& r);
nlohmann::ordered_json to_json(const AssemblyReport& r);

} // namespace pridealt
