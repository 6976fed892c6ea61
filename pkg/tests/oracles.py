"""Independent reference implementations used only by the tests.

Nothing here imports the package's rewriting code: coefficients are sympy
expressions and normal forms come from the literal rewrite rule.
"""

from math import comb, factorial

import sympy as sp

hbar = sp.Symbol("hbar", positive=True)
I = sp.I


def inversions(w: str) -> int:
    """Number of (p before q) letter pairs."""
    count = 0
    seen_p = 0
    for ch in w:
        if ch == "p":
            seen_p += 1
        else:
            count += seen_p
    return count


def rewrite_once(poly: dict) -> dict | None:
    """Apply pq -> qp - i*hbar at the leftmost occurrence in the first unreduced word."""
    for w in sorted(poly):
        k = w.find("pq")
        if k >= 0:
            c = poly[w]
            out = dict(poly)
            del out[w]
            for nw, nc in ((w[:k] + "qp" + w[k + 2:], c), (w[:k] + w[k + 2:], -I * hbar * c)):
                out[nw] = sp.expand(out.get(nw, 0) + nc)
                if out[nw] == 0:
                    del out[nw]
            return out
    return None


def brute_normal_form(poly: dict) -> dict:
    """Rewrite to exhaustion; ``poly`` maps words to sympy coefficients."""
    poly = {w: sp.expand(c) for w, c in poly.items() if sp.expand(c) != 0}
    while True:
        nxt = rewrite_once(poly)
        if nxt is None:
            return poly
        poly = nxt


def to_sympy(ncpoly) -> dict:
    """Package NCPoly -> {word: sympy coefficient}."""
    out = {}
    for w, c in ncpoly.items():
        out[w] = sp.expand(sum(
            (sp.Rational(g.re.numerator, g.re.denominator)
             + I * sp.Rational(g.im.numerator, g.im.denominator)) * hbar**k
            for k, g in c.terms.items()))
    return out


def same(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    return all(sp.expand(a.get(k, 0) - b.get(k, 0)) == 0 for k in keys)


def reorder_ps_qr(s: int, r: int) -> dict:
    """Closed form: p^s q^r = sum_k k! C(s,k) C(r,k) (-i hbar)^k q^(r-k) p^(s-k)."""
    return {"q" * (r - k) + "p" * (s - k): factorial(k) * comb(s, k) * comb(r, k) * (-I * hbar) ** k
            for k in range(min(s, r) + 1)}
