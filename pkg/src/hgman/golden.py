"""Published component tables of the four-parameter example, as polynomials in lambda.

A polynomial is a ``{exponents: Fraction}`` map with ``exponents`` a
4-tuple of powers of ``(l1, l2, l3, l4)``.  Tables are written once as
text in the published notation and parsed here; indices are 1-based.
"""

from __future__ import annotations

import re
from fractions import Fraction

Poly = dict[tuple[int, int, int, int], Fraction]

_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*((?:l[1-4](?:\^\d)?\s*\*?\s*)*)")


def parse_poly(text: str) -> Poly:
    """Parse e.g. ``"l1^2 + l2^2 - 2*l3*l4"`` or ``"-1/2*l3"``."""
    text = text.replace(" ", "")
    if not text or text == "0":
        return {}
    out: Poly = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at {pos}")
        sign, coeff, factors = m.groups()
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        exps = [0, 0, 0, 0]
        for var, power in re.findall(r"l([1-4])(?:\^(\d))?", factors):
            exps[int(var) - 1] += int(power) if power else 1
        key = tuple(exps)
        out[key] = out.get(key, Fraction(0)) + c
        if out[key] == 0:
            del out[key]
        pos = m.end()
    return out


def evaluate(p: Poly, lam) -> Fraction:
    total = Fraction(0)
    for exps, c in p.items():
        term = c
        for x, k in zip(lam, exps):
            term *= Fraction(x) ** k
        total += term
    return total


def scale(p: Poly, k) -> Poly:
    k = Fraction(k)
    return {e: c * k for e, c in p.items() if c * k}


# Levi-Civita connection: nabla_{X_i} X_j, every listed equality chain.
NABLA_TEXT = """
11 22 : l2 X3 + l1 X4
13 42 : l2 X1 - l3 X4
14 -32 : l1 X1 + l3 X3
23 -41 : l2 X2 + l4 X4
24 31 : l1 X2 - l4 X3
33 44 : -l4 X1 - l3 X2
"""

# Natural connection D_{X_i} X_j.
D_TEXT = """
11 : -1/2 l3 X2
12 : 1/2 l3 X1
13 : -1/2 l3 X4
14 : 1/2 l3 X3
21 : 1/2 l4 X2
22 : -1/2 l4 X1
23 : 1/2 l4 X4
24 : -1/2 l4 X3
31 : 1/2 l1 X2
32 : -1/2 l1 X1
33 : 1/2 l1 X4
34 : -1/2 l1 X3
41 : -1/2 l2 X2
42 : 1/2 l2 X1
43 : -1/2 l2 X4
44 : 1/2 l2 X3
"""

# F tables: "lk : a: c*ijk ..." means c * (F_a)_{ijk} = lk.
F_TEXT = """
l1 : 1: 113 124 -131 -142 -214 223 -232 241
l1 : 2: 112 121 134 143 1/2*222 1/2*244 314 -323 -332 341
l1 : 3: -1/2*111 -1/2*144 -212 -221 234 243 313 324 331 342
l2 : 1: -114 123 -132 141 -213 -224 231 242
l2 : 2: 1/2*111 1/2*133 212 221 234 243 -414 423 432 -441
l2 : 3: 112 121 -134 -143 1/2*222 1/2*233 -413 -424 -431 -442
l3 : 1: 313 324 -331 -342 414 -423 432 -441
l3 : 2: 114 -123 -132 141 -312 -321 -334 -343 -1/2*422 -1/2*444
l3 : 3: 113 124 131 142 -1/2*322 -1/2*333 412 421 -434 -443
l4 : 1: 314 -323 332 -341 -413 -424 431 442
l4 : 2: -214 223 232 -241 -1/2*311 -1/2*333 -412 -421 -434 -443
l4 : 3: -213 -224 -231 -242 -312 -321 334 343 1/2*411 1/2*444
"""

THETA_TEXT = ["4*l4", "4*l3", "-4*l2", "-4*l1"]

# Riemann tensor: listed components; the rest follow from the curvature symmetries.
R_TEXT = """
1221 : l1^2 + l2^2
1331 : l4^2 - l2^2
1441 : l4^2 - l1^2
2332 : l3^2 - l2^2
2442 : l3^2 - l1^2
3443 : -l3^2 - l4^2
1341 2342 : -l1*l2
2132 -4134 : -l1*l3
1231 -4234 : l1*l4
2142 -3143 : l2*l3
1241 -3243 : -l2*l4
3123 4124 : l3*l4
"""

RICCI_TEXT = """
11 : 2*l1^2 + 2*l2^2 - 2*l4^2
22 : 2*l1^2 + 2*l2^2 - 2*l3^2
33 : 2*l4^2 + 2*l3^2 - 2*l2^2
44 : 2*l4^2 + 2*l3^2 - 2*l1^2
12 21 : -2*l3*l4
13 31 : -2*l1*l3
14 41 : 2*l2*l3
23 32 : 2*l1*l4
24 42 : -2*l2*l4
34 43 : -2*l1*l2
"""

TAU_TEXT = "6*l1^2 + 6*l2^2 - 6*l3^2 - 6*l4^2"

# -2|nabla J1|^2 = |nabla J2|^2 = |nabla J3|^2 = 16(l1^2 + l2^2 - l3^2 - l4^2)
NORM_TEXT = "16*l1^2 + 16*l2^2 - 16*l3^2 - 16*l4^2"
NORM_FACTORS = (Fraction(-1, 2), Fraction(1), Fraction(1))


def _chain_keys(head: str):
    """``"14 -32"`` -> [((1, 4), 1), ((3, 2), -1)]."""
    out = []
    for tok in head.split():
        sign = -1 if tok.startswith("-") else 1
        out.append((tuple(int(ch) for ch in tok.lstrip("-")), sign))
    return out


def _vector_rhs(text: str) -> dict[int, Poly]:
    """``"l2 X3 + l1 X4"`` -> {3: l2, 4: l1}."""
    out: dict[int, Poly] = {}
    for coeff, k in re.findall(r"([+-]?[^X]*?)\s*X([1-4])", text):
        coeff = coeff.strip()
        if coeff in ("", "+"):
            coeff = "1"
        elif coeff == "-":
            coeff = "-1"
        coeff = re.sub(r"^([+-]?)\s*(\d+(?:/\d+)?)\s+l", r"\1\2*l", coeff.replace("+ ", "+").replace("- ", "-"))
        out[int(k)] = parse_poly(coeff)
    return out


def _connection_table(text: str) -> dict[tuple[int, int, int], Poly]:
    table: dict[tuple[int, int, int], Poly] = {}
    for line in text.strip().splitlines():
        head, rhs = line.split(":")
        vec = _vector_rhs(rhs)
        for (i, j), sign in _chain_keys(head):
            for k, p in vec.items():
                table[i, j, k] = scale(p, sign)
    return table


def nabla_table():
    return _connection_table(NABLA_TEXT)


def d_table():
    return _connection_table(D_TEXT)


def f_tables() -> dict[int, dict[tuple[int, int, int], Poly]]:
    tables: dict[int, dict[tuple[int, int, int], Poly]] = {1: {}, 2: {}, 3: {}}
    for line in F_TEXT.strip().splitlines():
        lam, alpha, entries = (s.strip() for s in line.split(":"))
        base = parse_poly(lam)
        for tok in entries.split():
            if "*" in tok:
                c, idx = tok.split("*")
            else:
                c, idx = ("-1", tok[1:]) if tok.startswith("-") else ("1", tok)
            key = tuple(int(ch) for ch in idx)
            if key in tables[int(alpha)]:
                raise ValueError(f"F{alpha}{key} listed twice")
            tables[int(alpha)][key] = scale(base, 1 / Fraction(c))
    return tables


def theta_table() -> dict[tuple[int], Poly]:
    return {(k + 1,): parse_poly(t) for k, t in enumerate(THETA_TEXT)}


def _curvature_orbit(i, j, k, l):
    """Index tuples (with signs) related to R_ijkl by the pair antisymmetries and pair symmetry."""
    for (a, b, c, d), s in (((i, j, k, l), 1), ((k, l, i, j), 1)):
        yield (a, b, c, d), s
        yield (b, a, c, d), -s
        yield (a, b, d, c), -s
        yield (b, a, d, c), s


def riemann_table() -> dict[tuple[int, int, int, int], Poly]:
    table: dict[tuple[int, int, int, int], Poly] = {}
    for line in R_TEXT.strip().splitlines():
        head, rhs = line.split(":")
        p = parse_poly(rhs)
        for key, sign in _chain_keys(head):
            for okey, osign in _curvature_orbit(*key):
                val = scale(p, sign * osign)
                if okey in table and table[okey] != val:
                    raise ValueError(f"inconsistent R entries at {okey}")
                table[okey] = val
    return table


def ricci_table() -> dict[tuple[int, int], Poly]:
    table = {}
    for line in RICCI_TEXT.strip().splitlines():
        head, rhs = line.split(":")
        for key, sign in _chain_keys(head):
            table[key] = scale(parse_poly(rhs), sign)
    return table


def tau_poly() -> Poly:
    return parse_poly(TAU_TEXT)


def norm_polys() -> tuple[Poly, Poly, Poly]:
    base = parse_poly(NORM_TEXT)
    return tuple(scale(base, f) for f in NORM_FACTORS)


def all_tables() -> dict[str, dict]:
    """Every published table, keyed by name; entries not listed are zero."""
    f = f_tables()
    return {
        "nabla": nabla_table(),
        "F1": f[1],
        "F2": f[2],
        "F3": f[3],
        "theta": theta_table(),
        "D": d_table(),
        "R": riemann_table(),
        "ricci": ricci_table(),
    }


__all__ = [
    "Poly",
    "parse_poly",
    "evaluate",
    "all_tables",
    "nabla_table",
    "d_table",
    "f_tables",
    "theta_table",
    "riemann_table",
    "ricci_table",
    "tau_poly",
    "norm_polys",
]
