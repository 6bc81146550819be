#pragma once

#include "sadic/bratteli.hpp"
#include "sadic/core_words.hpp"

namespace sadic {

// Deterministic rule producing tau_n beyond the stored prefix.
//   ""            no extension; at(n) past the prefix throws
//   "constant"    repeat the last prefix morphism (stationary alphabet)
//   "subexp_tail" equal-row-sum minimal morphisms with |A_n| = n+2, k = 1
struct ExtensionRule {
    std::string name;
    bool empty() const { return name.empty(); }
    bool operator==(const ExtensionRule&) const = default;
};

// Finite prefix tau_0 .. tau_{N-1} of a directive sequence, with an optional
// rule-based extension. All values immutable in use; at() is pure.
struct DirectiveSequence {
    std::vector<Morphism> prefix;
    ExtensionRule extension;

    int prefix_levels() const { return (int)prefix.size(); }
    bool has_level(int n) const { return n < prefix_levels() || !extension.empty(); }
    Morphism at(int n) const;
    LevelAlphabet alphabet(int n) const;  // A_n
    void validate_chain() const;

    // tau_{[from,to)} = tau_from o ... o tau_{to-1}; identity when from == to.
    Morphism composed(int from, int to) const;
};

// Morphisms read on an ordered diagram: tau_n(u) = order word of u for
// n >= 1; tau_0 is the hat morphism over the level-1 edge alphabet, with
// consecutive edge letters blocked per vertex.
DirectiveSequence read_morphisms(const OrderedBratteliDiagram& b);

}  // namespace sadic
