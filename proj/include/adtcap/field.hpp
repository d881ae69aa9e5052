#pragma once

#include <cstdint>
#include <stdexcept>

namespace adtcap {

bool is_prime(uint32_t n);

/// Prime field F_p. All element values are kept reduced to [0, p).
struct FieldSpec {
    uint32_t p;

    explicit FieldSpec(uint32_t modulus = 2) : p(modulus) {
        if (!is_prime(p))
            throw std::invalid_argument("field modulus must be prime, got " +
                                        std::to_string(modulus));
    }

    uint32_t reduce(int64_t v) const {
        int64_t r = v % static_cast<int64_t>(p);
        return static_cast<uint32_t>(r < 0 ? r + p : r);
    }

    uint32_t add(uint32_t a, uint32_t b) const { return (a + b) % p; }
    uint32_t sub(uint32_t a, uint32_t b) const { return (a + p - b) % p; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
    }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }

    /// Multiplicative inverse via Fermat: a^(p-2) mod p. Requires a != 0.
    uint32_t inv(uint32_t a) const {
        if (a == 0)
            throw std::domain_error("inverse of zero");
        uint32_t r = 1, base = a % p;
        uint32_t e = p - 2;
        while (e > 0) {
            if (e & 1)
                r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

    bool operator==(const FieldSpec&) const = default;
};

}  // namespace adtcap
