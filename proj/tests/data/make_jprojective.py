"""Writes the J-function of P^{n-1} as canonical series JSON.

J = sum_d q^d / prod_{c=1}^d (p + c z)^n in C[p]/(p^n), expanded with exact
fractions independently of the C++ library.
"""
import json
import sys
from fractions import Fraction
from math import comb


def inverse_power(c, n):
    # 1/(p + c z)^n = (c z)^{-n} sum_k binom(-n, k) (p / (c z))^k, k < n.
    return [Fraction((-1) ** k * comb(n + k - 1, k), c ** (n + k)) for k in range(n)]


def mul(a, b, n):
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j < n:
                out[i + j] += x * y
    return out


def series(n, order):
    terms = []
    coeff = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for d in range(order + 1):
        if d > 0:
            coeff = mul(coeff, inverse_power(d, n), n)
        # p^k at q^d carries z^{-n d - k}
        for k in reversed(range(n)):
            if coeff[k] != 0:
                c = coeff[k]
                text = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
                terms.append({"exponent": [d], "z_power": -n * d - k, "monomial": [k], "coefficient": text})
    return {
        "generators": ["p"],
        "omega": ["1"],
        "order": str(order),
        "lattice_denominator": 1,
        "prefactor": [[{"monomial": [1], "coefficient": "1"}]],
        "terms": terms,
    }


if __name__ == "__main__":
    n, order = int(sys.argv[1]), int(sys.argv[2])
    json.dump(series(n, order), sys.stdout, indent=2)
    sys.stdout.write("\n")
