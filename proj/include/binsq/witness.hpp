#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "binsq/lemma_machines.hpp"
#include "binsq/numberforms.hpp"

namespace binsq {

class NotRepresentable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Part {
    Natural value;
    GroundSetKind role = GroundSetKind::BinarySquare;
};

enum class WitnessSource { Direct, Table, Machine };

struct Decomposition {
    Natural target;
    std::vector<Part> parts;
    // Profile of the machine member whose path produced the parts.
    std::optional<SummandProfile> profile;
    WitnessSource source = WitnessSource::Direct;
    // States materialized by the product with the folded input (machine source only).
    std::size_t product_states = 0;
};

// Sum matches and every part satisfies its role (zero only for square roles).
bool is_valid(const Decomposition& d);

// Four binary squares (zeros included). Throws NotRepresentable for the 56
// exceptions.
Decomposition decompose(const Natural& n);
// At most two binary squares plus at most two powers of two.
Decomposition decompose_square_power(const Natural& n);
// Exactly three generalized binary squares (zeros included). Throws
// NotRepresentable when no triple exists (only possible for N <= 7).
Decomposition decompose_generalized(const Natural& n);

// "221 = 11011101 = (1101)(1101)"; powers render as "2^k".
std::string describe(const Part& p);

// Shared, lazily built machines.
const LemmaMachine& cached_four_square_machine(Parity parity);
const LemmaMachine& cached_square_power_machine(Parity parity);
const LemmaMachine& cached_generalized_machine(Parity parity);

}  // namespace binsq
