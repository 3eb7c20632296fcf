#pragma once

#include <string>

#include "splitred/errors.hpp"

namespace splitred {

// Kodaira reduction types; n is the index for I_n and I_n^*.
struct kodaira {
    enum kind { good, I_n, II, III, IV, I_n_star, IV_star, III_star, II_star };
    kind t = good;
    long n = 0;

    bool operator==(const kodaira&) const = default;
};

// Accepts "good", "In"/"I_n" with a number (e.g. "I3", "I_3"), "II", "III",
// "IV", starred forms with "*" ("I0*", "I_2*", "IV*", ...).
kodaira parse_kodaira(const std::string& s);
std::string to_string(const kodaira& t);

} // namespace splitred
