#include "mod_arith.hpp"

#include <stdexcept>

namespace sqpc {

void validate_dimension(int d) {
    if (d < 3 || d % 2 == 0)
        throw std::invalid_argument("dimension must be odd and >= 3");
}

int half_range(int d) {
    validate_dimension(d);
    return (d - 1) / 2;
}

Digit make_digit(int value, int modulus) {
    validate_dimension(modulus);
    if (value < 0 || value >= modulus)
        throw std::invalid_argument("digit value out of range");
    return {value, modulus};
}

namespace {
void check_same_modulus(Digit a, Digit b) {
    validate_dimension(a.modulus);
    if (a.modulus != b.modulus)
        throw std::invalid_argument("digit modulus mismatch");
}
} // namespace

Digit add_mod(Digit a, Digit b) {
    check_same_modulus(a, b);
    return {(a.value + b.value) % a.modulus, a.modulus};
}

Digit sub_mod(Digit a, Digit b) {
    check_same_modulus(a, b);
    return {(a.value - b.value + a.modulus) % a.modulus, a.modulus};
}

Digit encode_message(Digit secret, Digit key) {
    check_same_modulus(secret, key);
    int h = half_range(secret.modulus);
    if (secret.value > h)
        throw std::invalid_argument("secret digit exceeds half range");
    int m = key.value % 2 == 0 ? secret.value : (secret.modulus - 1) - secret.value;
    return {m, secret.modulus};
}

Digit mask(Digit comparison_value, Digit message, Digit key) {
    return add_mod(add_mod(comparison_value, message), key);
}

Digit tp_combine(Digit masked_b, Digit complement_b,
                 Digit masked_a, Digit complement_a) {
    return sub_mod(add_mod(masked_b, complement_b), add_mod(masked_a, complement_a));
}

TernarySign combined_to_sign(Digit combined) {
    int h = half_range(combined.modulus);
    if (combined.value == 0) return TernarySign::zero;
    return combined.value <= h ? TernarySign::minus_one : TernarySign::plus_one;
}

TernarySign sign_to_result(TernarySign sign, Digit key) {
    validate_dimension(key.modulus);
    return key.value % 2 == 0 ? sign : flip(sign);
}

TernarySign flip(TernarySign s) {
    return sign_from_value(-sign_value(s));
}

int sign_value(TernarySign s) { return static_cast<int>(s); }

TernarySign sign_from_value(int v) {
    switch (v) {
        case -1: return TernarySign::minus_one;
        case 0: return TernarySign::zero;
        case 1: return TernarySign::plus_one;
        default: throw std::invalid_argument("sign value must be -1, 0, or +1");
    }
}

std::string relation_name(TernarySign result) {
    switch (result) {
        case TernarySign::minus_one: return "x<y";
        case TernarySign::zero: return "x=y";
        case TernarySign::plus_one: return "x>y";
    }
    throw std::invalid_argument("bad sign");
}

} // namespace sqpc
