"""Shared internals for exact term-map polynomials.

A term map is a dict from integer exponent tuples to (re, im) integer
numerator pairs, together with a single positive integer denominator
shared by every coefficient.  Keeping one denominator per polynomial
instead of a Fraction per coefficient keeps star products and word
rewriting fast while staying exact.
"""

from __future__ import annotations

from math import gcd

Terms = dict


def normalized(terms: Terms, den: int) -> tuple[Terms, int]:
    """Strip zero coefficients and divide through by the common gcd."""
    cleaned = {k: c for k, c in terms.items() if c[0] != 0 or c[1] != 0}
    if not cleaned:
        return {}, 1
    if den < 0:
        den = -den
        cleaned = {k: (-r, -i) for k, (r, i) in cleaned.items()}
    g = den
    for r, i in cleaned.values():
        g = gcd(g, gcd(abs(r), abs(i)))
        if g == 1:
            return cleaned, den
    if g > 1:
        cleaned = {k: (r // g, i // g) for k, (r, i) in cleaned.items()}
        den //= g
    return cleaned, den


def add_maps(t1: Terms, d1: int, t2: Terms, d2: int,
             s2r: int = 1, s2i: int = 0) -> tuple[Terms, int]:
    """t1/d1 + (s2r + s2i*i) * t2/d2 with integer scale on the second map."""
    g = gcd(d1, d2)
    m1 = d2 // g
    m2 = d1 // g
    den = d1 * m1
    out = {k: (r * m1, i * m1) for k, (r, i) in t1.items()}
    for k, (r, i) in t2.items():
        rr = (r * s2r - i * s2i) * m2
        ii = (r * s2i + i * s2r) * m2
        pr, pi = out.get(k, (0, 0))
        out[k] = (pr + rr, pi + ii)
    return normalized(out, den)


def scale_map(terms: Terms, den: int, nr: int, ni: int,
              extra_den: int = 1) -> tuple[Terms, int]:
    """Multiply every coefficient by the exact complex rational (nr + ni*i)/extra_den."""
    if (nr == 0 and ni == 0) or not terms:
        return {}, 1
    out = {}
    for k, (r, i) in terms.items():
        out[k] = (r * nr - i * ni, r * ni + i * nr)
    return normalized(out, den * extra_den)


def max_abs(terms: Terms, den: int) -> float:
    """Largest coefficient modulus, as a float; 0.0 for the empty map."""
    best = 0.0
    for r, i in terms.values():
        v = ((r / den) ** 2 + (i / den) ** 2) ** 0.5
        if v > best:
            best = v
    return best
