#pragma once

#include <random>

#include "ratmod/rational_map.hpp"

namespace ratmod {

// Deterministic generators for property tests and the self-test battery.
class Sampler {
  public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    Fel small_int(long height = 10) { return Fel(Rat(integer(-height, height))); }

    Fel small_rat(long height = 9, long dmax = 4) {
        return Fel(Rat(integer(-height, height), integer(1, dmax)));
    }

    Fel nonzero_int(long height = 10) {
        for (;;) {
            Fel x = small_int(height);
            if (!x.is_zero()) return x;
        }
    }

    BinaryForm form(int order, long height = 10) {
        std::vector<Fel> cs;
        for (int i = 0; i <= order; ++i) cs.push_back(small_int(height));
        return BinaryForm(order, std::move(cs));
    }

    // (f, g) with orders (d-1, d+1), not required to come from a map
    FormPair pair(int degree, long height = 10) { return {form(degree - 1, height), form(degree + 1, height)}; }

    // pair of an actual map (nonzero resultant)
    FormPair map_pair(int degree, long height = 10) {
        for (;;) {
            FormPair p = pair(degree, height);
            try {
                merge(p);
                return p;
            } catch (const DegenerateMap&) {
            }
        }
    }

    RationalMap map(int degree, long height = 10) { return merge(map_pair(degree, height)); }

    // random element of SL2(Q) with small entries
    std::array<std::array<Fel, 2>, 2> sl2(long height = 5) {
        for (;;) {
            long a = integer(-height, height), b = integer(-height, height);
            if (a == 0 && b == 0) continue;
            long g = std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
            a /= g;
            b /= g;
            // extended gcd: a d - b c = 1
            long x0 = 1, x1 = 0, y0 = 0, y1 = 1, p = a, q = b;
            while (q != 0) {
                long t = p / q;
                std::swap(p -= t * q, q);
                std::swap(x0 -= t * x1, x1);
                std::swap(y0 -= t * y1, y1);
            }
            if (p != 1 && p != -1) continue;
            long d = x0 * p, c = -y0 * p;  // a*d - b*c = p^2 = 1
            long k = integer(-2, 2);
            c += k * a;
            d += k * b;
            if (Rat(a) * Rat(d) - Rat(b) * Rat(c) != 1) continue;
            return {{{Fel(Rat(a)), Fel(Rat(b))}, {Fel(Rat(c)), Fel(Rat(d))}}};
        }
    }

  private:
    std::mt19937_64 rng_;
};

}  // namespace ratmod
