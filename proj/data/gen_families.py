"""Writes families.json: universal curves with level structure as weighted
homogeneous (c4, c6), together with the long Weierstrass model used for the
torsion checks.

Run from this directory: python3 gen_families.py > families.json
"""

import json

import sympy as sp

t, x0, x1 = sp.symbols("t x0 x1")


def c4c6(a1, a2, a3, a4, a6):
    b2 = a1**2 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3**2 + 4 * a6
    c4 = b2**2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    return sp.expand(c4), sp.expand(c6)


def tate(b, c):
    # y^2 + (1 - c) x y - b y = x^3 - b x^2
    return [1 - c, -b, -b, 0, 0]


def homogenize(a):
    """Substitute t = x1/x0 and scale by the smallest u with u^k a_k integral."""
    ah = [sp.factor(sp.together(sp.sympify(ai).subs(t, x1 / x0))) for ai in a]
    need = {}
    for k, ai in zip([1, 2, 3, 4, 6], ah):
        if ai == 0:
            continue
        _, den = sp.fraction(sp.factor(ai))
        for f, m in sp.factor_list(den)[1]:
            need[f] = max(need.get(f, 0), -(-m // k))
    u = sp.Integer(1)
    for f, m in need.items():
        u *= f**m
    model = [sp.expand(sp.cancel(ai * u**k)) for k, ai in zip([1, 2, 3, 4, 6], ah)]
    return model, sp.Poly(u, x0, x1).total_degree() if u != 1 else 0


def terms(p):
    p = sp.expand(p)
    if p == 0:
        return []
    out = []
    for (k0, k1), c in sorted(sp.Poly(p, x0, x1).terms()):
        out.append([int(k0), int(k1), str(sp.Rational(c))])
    return out


def marked(order):
    return {"kind": "marked_point_order", "args": {"x": "0", "y": "0", "order": order}}


def exists(m):
    return {"kind": "exists_point_of_order", "args": {"m": m}}


TWO = {"kind": "full_two_torsion", "args": {}}

KUBERT = "Tate normal form E(b,c) with b, c from Kubert's table of torsion parametrizations"

families = []


def add(label, level, congruence, index, weights, e, model, checks, provenance):
    c4, c6 = c4c6(*model)
    g = sp.gcd(c4, c6)
    assert g.is_number, (label, g)
    d4 = sp.Poly(c4, x0, x1)
    for (k0, k1) in d4.monoms():
        assert k0 * weights[0] + k1 * weights[1] == 4 * e, label
    for (k0, k1) in sp.Poly(c6, x0, x1).monoms():
        assert k0 * weights[0] + k1 * weights[1] == 6 * e, label
    families.append(
        {
            "label": label,
            "level": level,
            "congruence_label": congruence,
            "sl2_index": index,
            "weights": weights,
            "reduced_degree": e,
            "f0": terms(c4),
            "f1": terms(c6),
            "model": {k: terms(a) for k, a in zip(["a1", "a2", "a3", "a4", "a6"], model)},
            "torsion_checks": checks,
            "provenance": provenance,
        }
    )


families.append(
    {
        "label": "G1(1)",
        "level": 1,
        "congruence_label": "SL2(Z)",
        "sl2_index": 1,
        "weights": [4, 6],
        "reduced_degree": 1,
        "f0": [[1, 0, "1"]],
        "f1": [[0, 1, "1"]],
        "torsion_checks": [],
        "provenance": "identity of P(4,6): (c4, c6) = (x0, x1)",
    }
)

add("G1(2)", 2, "Gamma1(2)", 3, [2, 4], 1, [0, x0, 0, x1, 0], [marked(2)],
    "y^2 = x^3 + x0 x^2 + x1 x, marked 2-torsion point (0,0)")
add("G1(3)", 3, "Gamma1(3)", 8, [1, 3], 1, [x0, 0, x1, 0, 0], [marked(3), exists(3)],
    "y^2 + x0 x y + x1 y = x^3, marked 3-torsion point (0,0)")
add("G1(4)", 4, "Gamma1(4)", 12, [1, 2], 1, [x0, -x1, -x0 * x1, 0, 0], [marked(4), exists(4)],
    "Tate normal form E(b,0) with b = x1/x0^2, scaled by u = x0")
add("G(2,2)", 2, "Gamma(2)", 6, [2, 2], 1, [0, -(x0 + x1), 0, x0 * x1, 0], [TWO],
    "Legendre-type model y^2 = x (x - x0) (x - x1)")

tate_rows = [
    ("G1(5)", 5, "Gamma1(5)", 24, 1, (t, t), [marked(5), exists(5)]),
    ("G1(6)", 6, "Gamma1(6)", 24, 1, (t + t**2, t), [marked(6), exists(6)]),
    ("G1(7)", 7, "Gamma1(7)", 48, 2, (t**3 - t**2, t**2 - t), [marked(7), exists(7)]),
    ("G1(8)", 8, "Gamma1(8)", 48, 2, ((2 * t - 1) * (t - 1), (2 * t - 1) * (t - 1) / t), [marked(8), exists(8)]),
    ("G1(9)", 9, "Gamma1(9)", 72, 3, (t**2 * (t - 1) * (t**2 - t + 1), t**2 * (t - 1)), [marked(9), exists(9)]),
    ("G1(10)", 10, "Gamma1(10)", 72, 3,
     (t**3 * (t - 1) * (2 * t - 1) / (t**2 - 3 * t + 1) ** 2, -t * (t - 1) * (2 * t - 1) / (t**2 - 3 * t + 1)),
     [marked(10), exists(10)]),
    ("G1(12)", 12, "Gamma1(12)", 96, 4,
     (t * (2 * t - 1) * (2 * t**2 - 2 * t + 1) * (3 * t**2 - 3 * t + 1) / (t - 1) ** 4,
      -t * (2 * t - 1) * (3 * t**2 - 3 * t + 1) / (t - 1) ** 3),
     [marked(12), exists(12)]),
]
for label, level, cong, index, e, (b, c), checks in tate_rows:
    model, deg = homogenize(tate(b, c))
    assert deg == e, (label, deg)
    add(label, level, cong, index, [1, 1], e, model, checks,
        f"{KUBERT}: b = {sp.sstr(b)}, c = {sp.sstr(c)}; t = x1/x0, scaled to clear denominators")

c26 = (10 - 2 * t) / (t**2 - 9)
d28 = t * (8 * t + 2) / (8 * t**2 - 1)
c28 = (2 * d28 - 1) * (d28 - 1) / d28
two_rows = [
    ("G(2,4)", 4, "Gamma1(4) cap Gamma(2)", 24, 1, (t**2 - sp.Rational(1, 16), sp.Integer(0)), [marked(4), TWO]),
    ("G(2,6)", 6, "Gamma1(6) cap Gamma(2)", 48, 2, (c26 + c26**2, c26), [marked(6), TWO]),
    ("G(2,8)", 8, "Gamma1(8) cap Gamma(2)", 96, 4, (sp.simplify(c28 * d28), sp.simplify(c28)), [marked(8), TWO]),
]
for label, level, cong, index, e, (b, c), checks in two_rows:
    model, deg = homogenize(tate(b, c))
    assert deg == e, (label, deg)
    add(label, level, cong, index, [1, 1], e, model, checks,
        f"{KUBERT} (Z/2 x Z/{level}): b = {sp.sstr(sp.factor(b))}, c = {sp.sstr(sp.factor(c))}; t = x1/x0, scaled to clear denominators")

print(json.dumps(families, indent=1))
