#pragma once
#include <string>

namespace sqpc {

/*
 * Modular digit pipeline for the comparison phase.  All digits live in
 * Z_d for odd d = 2h + 1 >= 3; secrets are restricted to [0, h] so that the
 * sign of a difference is recoverable from its residue.
 */

// Throws std::invalid_argument unless d is odd and >= 3.
void validate_dimension(int d);

// Half-range h = (d - 1) / 2.
int half_range(int d);

struct Digit {
    int value;
    int modulus;
    bool operator==(const Digit&) const = default;
};

// Range- and dimension-checked constructor.
Digit make_digit(int value, int modulus);

Digit add_mod(Digit a, Digit b);
Digit sub_mod(Digit a, Digit b);

// Key-dependent message encoding: even key digit keeps the secret, odd key
// digit replaces it by (d - 1) - secret.  The secret must lie in [0, h].
Digit encode_message(Digit secret, Digit key);

// Masked announcement: comparison_value + message + key (mod d).
Digit mask(Digit comparison_value, Digit message, Digit key);

// Third-party combination of the two masked announcements with the mask
// complements; equals message_b - message_a (mod d) when inputs are honest.
Digit tp_combine(Digit masked_b, Digit complement_b,
                 Digit masked_a, Digit complement_a);

enum class TernarySign : int { minus_one = -1, zero = 0, plus_one = 1 };

// Collapse a combined digit to a sign token: zero stays zero, residues in
// [1, h] map to minus_one, residues in [h+1, 2h] map to plus_one.
TernarySign combined_to_sign(Digit combined);

// Undo the key-parity flip: even key passes the sign through, odd key
// negates it.  The result reads as: minus_one => x < y, zero => x == y,
// plus_one => x > y.
TernarySign sign_to_result(TernarySign sign, Digit key);

TernarySign flip(TernarySign s);
int sign_value(TernarySign s);
TernarySign sign_from_value(int v);
std::string relation_name(TernarySign result);

} // namespace sqpc
