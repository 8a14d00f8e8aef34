#pragma once

#include "pridealt/pride_model.hpp"
#include "pridealt/rational.hpp"
#include "pridealt/words.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace pridealt {

// ---------------------------------------------------------------------------
// Coset enumeration

/// Column 2k is generator k, column 2k+1 its inverse. Entries are coset
/// indices; coset 0 is the subgroup.
struct CosetTable {
    std::vector<std::string> generators;
    bool complete = false;
    std::size_t index = 0;      ///< number of cosets when complete
    std::size_t limit = 0;      ///< the max_cosets cap
    std::size_t defined = 0;    ///< cosets defined during the run, dead ones included
    std::vector<std::vector<std::size_t>> rows;

    /// Coset reached from `coset` by reading w. Requires a complete table.
    std::size_t act(std::size_t coset, const FreeWord& w) const;
};

/// HLT enumeration: scan-and-fill the subgroup generators at coset 0, then
/// for each live coset in order scan-and-fill every relator and define the
/// coset's remaining empty entries in column order. Coincidences are
/// processed eagerly. Exceeding max_cosets yields complete = false.
CosetTable todd_coxeter(const Presentation& pres, const std::vector<FreeWord>& subgroup_gens,
                        std::size_t max_cosets = 100000);

// ---------------------------------------------------------------------------
// The exceptional square group <x1..x4 | xi^2, (x1x2)^2, (x2x3)^2, (x3x4)^2, (x4x1)^2>

/// Names of the generators playing x1..x4.
using SquareGens = std::array<std::string, 4>;

inline SquareGens default_square_gens()
{
    return {"x1", "x2", "x3", "x4"};
}

Presentation square_presentation(const SquareGens& g = default_square_gens());

/// Normal form in D_inf x D_inf: the reduced {x1,x3}-word followed by the
/// reduced {x2,x4}-word. Throws InputError on a foreign generator.
FreeWord square_word_reduce(const FreeWord& w, const SquareGens& g = default_square_gens());

/// Same normal form reached by rewriting one randomly chosen redex at a time
/// (xx -> 1, and qp -> pq for p in {x1,x3}, q in {x2,x4}).
FreeWord square_word_rewrite(const FreeWord& w, std::mt19937_64& rng, const SquareGens& g = default_square_gens());

/// p -> L p + t with exact rational entries.
struct AffineIsometry {
    std::array<Rational, 4> linear{Rational(1), Rational(0), Rational(0), Rational(1)}; ///< row-major 2x2
    std::array<Rational, 2> translation{Rational(0), Rational(0)};

    static AffineIsometry identity() { return {}; }
    bool is_identity() const { return *this == identity(); }
    bool is_translation() const;
    AffineIsometry inverse() const;
    std::array<Rational, 2> apply(const std::array<Rational, 2>& p) const;

    friend bool operator==(const AffineIsometry&, const AffineIsometry&) = default;
};

/// f o g: apply g first.
AffineIsometry compose(const AffineIsometry& f, const AffineIsometry& g);

/// x1: u -> -u, x3: u -> 2 - u, x2: v -> -v, x4: v -> 2 - v, with
/// rep(vw) = rep(v) o rep(w). Throws InputError on a foreign generator.
AffineIsometry square_representation(const FreeWord& w, const SquareGens& g = default_square_gens());

struct SquareCheck {
    std::string name;
    bool pass = false;
    nlohmann::ordered_json witness;
};

struct SquareCertificate {
    std::vector<SquareCheck> checks;
    bool pass = false;
};

/// Index 4 of <x1x3, x2x4>; edge groups of order 4 with both generators and
/// x_i x_{i+1} nontrivial; relators to the identity isometry; x1x3 and x2x4
/// to independent translations; the commutator [x1x3, x2x4] reduces to 1.
SquareCertificate verify_square_group();

nlohmann::ordered_json to_json(const CosetTable& t);
nlohmann::ordered_json to_json(const AffineIsometry& a);
nlohmann::ordered_json to_json(const SquareCertificate& c);

} // namespace pridealt
