#pragma once

#include "pridealt/ext_nat.hpp"
#include "pridealt/words.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pridealt {

/// Cyclic vertex group <gen | gen^order>.
struct VertexGroup {
    std::string id;
    std::string gen;
    ExtNat order = ExtNat::infinity();

    friend bool operator==(const VertexGroup&, const VertexGroup&) = default;
};

/// Periodic relator base^period. An infinite period marks an omitted
/// relator: it contributes nothing to the group and infinity to r.
struct EdgeRelator {
    FreeWord base;
    ExtNat period = ExtNat(1);

    friend bool operator==(const EdgeRelator&, const EdgeRelator&) = default;
};

struct Edge {
    std::string a;
    std::string b;
    std::vector<EdgeRelator> relators;
    /// User-supplied kernel length m for the edge, overriding the bound
    /// derived from the relators. One of 1, even >= 4, or infinity.
    std::optional<ExtNat> override_m;

    bool joins(std::string_view u, std::string_view v) const { return (a == u && b == v) || (a == v && b == u); }

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simplicial graph with cyclic vertex groups and periodic edge relators.
/// Vertex input order is the canonical order for every deterministic output.
struct PrideGraph {
    std::vector<VertexGroup> vertices;
    std::vector<Edge> edges;

    std::optional<std::size_t> vertex_index(std::string_view id) const;
    const VertexGroup& vertex(std::string_view id) const;
    const Edge* find_edge(std::string_view u, std::string_view v) const;
    bool is_complete() const;
    OrderMap orders() const;

    friend bool operator==(const PrideGraph&, const PrideGraph&) = default;
};

struct Violation {
    std::string location;
    std::string message;
};

/// Every violated model invariant, with its location. Empty iff valid.
std::vector<Violation> validate(const PrideGraph& g);

/// Throws InputError listing all violations when the graph is invalid.
void require_valid(const PrideGraph& g);

/// Adds an empty-relator edge for every missing pair, in vertex order,
/// after the existing edges. Does not change the group.
PrideGraph complete(const PrideGraph& g);

/// Induced subgraph on the given vertex ids (kept in graph order).
PrideGraph full_subgraph(const PrideGraph& g, std::span<const std::string> ids);

/// Finite presentation of a Pride group. Relators are reduced in the free
/// group on the generators.
struct Presentation {
    std::vector<std::string> generators;
    std::vector<FreeWord> relators;

    friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// gen^order for each finite vertex order, then base^period for each
/// finite-period relator, in vertex order and then edge order.
Presentation flatten_presentation(const PrideGraph& g);

/// Parses the JSON input schema. Unknown fields are rejected. Throws
/// InputError with a JSON-pointer-style location on any schema problem.
PrideGraph parse_pride_graph(std::string_view json_text);
PrideGraph pride_graph_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const PrideGraph& g);
nlohmann::ordered_json to_json(const Presentation& p);

} // namespace pridealt
