#!/usr/bin/env python3
"""Regenerate the JSON fixtures under fixtures/.

Fields are built as tensor products of simple extensions Q(theta_f) with sympy,
independently of the C++ library.  Every fixture written here is re-checked by
`abelcp validate` and by the test suites before use.

Usage: python3 tools/gen_fixtures.py [output_dir]
"""

import json
import os
import sys

import sympy as sp

X = sp.Symbol("X")
SCHEMA = "abelcp/1"


class Factor:
    """A simple extension Q(theta) with min poly `minpoly`.

    `images[g]` is the image of theta under group generator g as a polynomial in
    theta (None means the generator fixes theta)."""

    def __init__(self, label, minpoly, images):
        self.label = label
        self.minpoly = sp.Poly(minpoly, X, domain=sp.QQ)
        self.degree = self.minpoly.degree()
        self.images = images

    def reduce(self, poly):
        return sp.Poly(poly, X, domain=sp.QQ).rem(self.minpoly)

    def coeffs(self, poly):
        p = self.reduce(poly)
        out = [sp.Rational(0)] * self.degree
        for (k,), c in p.terms():
            out[k] = sp.Rational(c)
        return out


class Tensor:
    """Q(theta_1) (x) ... (x) Q(theta_k) with basis prod theta_f^{a_f}.

    Basis index is little-endian: idx = a_1 + d_1 * (a_2 + d_2 * (...))."""

    def __init__(self, factors, ngens):
        self.factors = factors
        self.ngens = ngens
        self.dims = [f.degree for f in factors]
        self.dim = 1
        for d in self.dims:
            self.dim *= d
        self.multi = [self.unindex(i) for i in range(self.dim)]

    def unindex(self, idx):
        out = []
        for d in self.dims:
            out.append(idx % d)
            idx //= d
        return tuple(out)

    def index(self, a):
        idx = 0
        stride = 1
        for ai, d in zip(a, self.dims):
            idx += ai * stride
            stride *= d
        return idx

    def from_factor_polys(self, polys):
        """Element prod_f polys[f](theta_f) as a coordinate vector."""
        per = [f.coeffs(p) for f, p in zip(self.factors, polys)]
        out = [sp.Rational(0)] * self.dim
        for a in self.multi:
            c = sp.Rational(1)
            for f, ai in enumerate(a):
                c *= per[f][ai]
            out[self.index(a)] = c
        return out

    def structure_constants(self):
        table = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                a = [ai + bj for ai, bj in zip(self.multi[i], self.multi[j])]
                row.append(self.from_factor_polys([X ** e for e in a]))
            table.append(row)
        return table

    def unit(self):
        return self.from_factor_polys([sp.Integer(1)] * len(self.factors))

    def automorphism(self, images_per_factor):
        """Matrix with column j = image of basis element j."""
        cols = []
        for a in self.multi:
            polys = []
            for f, ai in zip(self.factors, a):
                img = images_per_factor[f.label]
                polys.append((X if img is None else img) ** ai)
            cols.append(self.from_factor_polys(polys))
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def generator(self, g):
        return self.automorphism({f.label: f.images[g] for f in self.factors})

    def element(self, **parts):
        """Element as product of factor polynomials, e.g. element(r2=X)."""
        polys = [parts.get(f.label, sp.Integer(1)) for f in self.factors]
        return self.from_factor_polys(polys)

    def labels(self):
        out = []
        for a in self.multi:
            parts = []
            for f, ai in zip(self.factors, a):
                if ai == 1:
                    parts.append(f.label)
                elif ai > 1:
                    parts.append(f"{f.label}^{ai}")
            out.append("*".join(parts) if parts else "1")
        return out


def s(q):
    q = sp.Rational(q)
    return str(q.p) if q.q == 1 else f"{q.p}/{q.q}"


def vec(v):
    return [s(c) for c in v]


def mat(m):
    return [[s(c) for c in row] for row in m]


def field_doc(t, orders, base_degree=1):
    return {
        "orders": orders,
        "base_degree": base_degree,
        "basis": t.labels(),
        "structure_constants": [[vec(c) for c in row] for row in t.structure_constants()],
        "unit": vec(t.unit()),
        "sigma": [mat(t.generator(g)) for g in range(len(orders))],
    }


def fixture_doc(name, t, orders, u, b, witnesses=(), graded=None):
    doc = {
        "schema": SCHEMA,
        "kind": "crossed_product",
        "name": name,
        "field": field_doc(t, orders),
        "cocycle": {"u": [[vec(e) for e in row] for row in u], "b": [vec(e) for e in b]},
        "witnesses": [
            {"m": list(w["m"]), "l": vec(w["l"]), "x": [vec(xi) for xi in w["x"]]}
            for w in witnesses
        ],
    }
    if graded is not None:
        doc["graded"] = graded
    return doc


def check_root(factor, image):
    """The image of theta under an automorphism must be a root of its min poly."""
    comp = sp.Poly(factor.minpoly.as_expr().subs(X, image), X, domain=sp.QQ)
    assert comp.rem(factor.minpoly).is_zero, (factor.label, image)


def field_inverse(factor, poly):
    return sp.invert(sp.Poly(poly, X, domain=sp.QQ), factor.minpoly).as_expr()


def write(path, doc):
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(os.path.abspath(__file__)), "..", "fixtures")
    os.makedirs(out, exist_ok=True)

    one = sp.Integer(1)

    # INSTANCE-B: Q(sqrt2, sqrt3)/Q, sigma_1 negates sqrt2, sigma_2 negates sqrt3.
    r2 = Factor("r2", X**2 - 2, [-X, None])
    r3 = Factor("r3", X**2 - 3, [None, -X])
    for f in (r2, r3):
        for img in f.images:
            if img is not None:
                check_root(f, img)
    tb = Tensor([r2, r3], 2)
    el_one = tb.unit()
    el_m1 = [-c for c in el_one]
    sqrt2 = tb.element(r2=X)
    sqrt3 = tb.element(r3=X)
    u_b = [[el_one, el_m1], [el_m1, el_one]]
    b_b = [tb.element(r2=3 * one), tb.element(r2=5 * one)]
    wit_b = {"m": (1, 1), "l": sqrt2, "x": [el_one, sqrt2]}
    graded_b = {
        "pairs": [
            {"h1": {"a": vec(el_one), "m": [1, 0], "w": [0, 0]},
             "h2": {"a": vec(sqrt2), "m": [0, 1], "w": [0, 0]}},
            {"h1": {"a": vec(sqrt3), "m": [1, 0], "w": [0, 0]},
             "h2": {"a": vec(sqrt2), "m": [0, 1], "w": [0, 0]}},
            {"h1": {"a": vec(el_one), "m": [1, 0], "w": [0, 0]},
             "h2": {"a": vec(el_one), "m": [1, 0], "w": [1, 0]}},
        ],
    }
    inst_b = fixture_doc("INSTANCE-B", tb, [2, 2], u_b, b_b, [wit_b], graded_b)
    write(os.path.join(out, "instance_b.json"), inst_b)

    # u == 1 over the same field.
    u_one = [[el_one, el_one], [el_one, el_one]]
    wit_one = {"m": (1, 0), "l": el_one, "x": [el_one, el_one]}
    write(os.path.join(out, "instance_b_trivial.json"),
          fixture_doc("INSTANCE-B-TRIVIAL", tb, [2, 2], u_one, b_b, [wit_one],
                      {"pairs": []}))

    # Rank one: Q(sqrt2)/Q, a cyclic group.
    t1 = Tensor([Factor("r2", X**2 - 2, [-X])], 1)
    write(os.path.join(out, "rank1.json"),
          fixture_doc("RANK-1", t1, [2], [[t1.unit()]], [t1.element(r2=3 * one)]))

    # INSTANCE-B3: cubic subfields of Q(zeta_7) and Q(zeta_9).
    # alpha = 2cos(2pi/7), beta = 2cos(2pi/9); sigma_i squares the root of unity.
    alpha_mp = sp.minimal_polynomial(2 * sp.cos(2 * sp.pi / 7), X)
    beta_mp = sp.minimal_polynomial(2 * sp.cos(2 * sp.pi / 9), X)
    assert sp.expand(alpha_mp - (X**3 + X**2 - 2 * X - 1)) == 0
    assert sp.expand(beta_mp - (X**3 - 3 * X + 1)) == 0
    fa = Factor("alpha", alpha_mp, [X**2 - 2, None])
    fb = Factor("beta", beta_mp, [None, X**2 - 2])
    check_root(fa, X**2 - 2)
    check_root(fb, X**2 - 2)
    t3 = Tensor([fa, fb], 2)
    sig1_alpha = X**2 - 2
    alpha_inv = field_inverse(fa, X)
    # u_12 = sigma_1(alpha)/alpha, b = (2, 2 alpha^3).
    u12 = t3.element(alpha=sp.expand(sig1_alpha * alpha_inv))
    u21 = t3.element(alpha=sp.expand(X * field_inverse(fa, sig1_alpha)))
    one3 = t3.unit()
    u_b3 = [[one3, u12], [u21, one3]]
    b_b3 = [t3.element(alpha=2 * one), t3.element(alpha=2 * X**3)]
    # l = 1, m = (1,1): x_1 = sigma_1(alpha), x_2 = 1/alpha.
    wit_b3 = {"m": (1, 1), "l": one3,
              "x": [t3.element(alpha=sig1_alpha), t3.element(alpha=alpha_inv)]}
    # z_1 commutes with alpha^-1 z_2 since u_12 = sigma_1(alpha)/alpha.
    graded_b3 = {
        "pairs": [
            {"h1": {"a": vec(one3), "m": [1, 0], "w": [0, 0]},
             "h2": {"a": vec(t3.element(alpha=alpha_inv)), "m": [0, 1], "w": [0, 0]}},
            {"h1": {"a": vec(one3), "m": [1, 0], "w": [0, 0]},
             "h2": {"a": vec(one3), "m": [0, 1], "w": [0, 0]}},
            {"h1": {"a": vec(one3), "m": [1, 0], "w": [0, 0]},
             "h2": {"a": vec(one3), "m": [2, 0], "w": [0, 1]}},
        ],
    }
    write(os.path.join(out, "instance_b3.json"),
          fixture_doc("INSTANCE-B3", t3, [3, 3], u_b3, b_b3, [wit_b3], graded_b3))

    # Composite of INSTANCE-B with E = Q(2^(1/3)), t = 3.
    fc = Factor("c", X**3 - 2, [None, None])
    te = Tensor([Factor("c", X**3 - 2, [])], 0)
    tke = Tensor([r2, r3, fc], 2)

    def embed(src, dst, mapping):
        cols = []
        for a in src.multi:
            cols.append(dst.index(mapping(a)))
        m = [[sp.Rational(0)] * src.dim for _ in range(dst.dim)]
        for j, k in enumerate(cols):
            m[k][j] = sp.Rational(1)
        return m

    def composite_doc(name, base, k_t, e_t, ke_t, orders, embed_k, embed_e, rel_gal):
        t = e_t.dim
        return {
            "schema": SCHEMA,
            "kind": "composite",
            "name": name,
            "base": base,
            "E": {
                "basis": e_t.labels(),
                "structure_constants": [[vec(c) for c in row]
                                        for row in e_t.structure_constants()],
                "unit": vec(e_t.unit()),
            },
            "KE": field_doc(ke_t, orders, base_degree=t),
            "embed_K": mat(embed_k),
            "embed_E": mat(embed_e),
            "rel_gal": [mat(g) for g in rel_gal],
        }

    comp3 = composite_doc(
        "INSTANCE-B x Q(2^(1/3))", "INSTANCE-B", tb, te, tke, [2, 2],
        embed(tb, tke, lambda a: (a[0], a[1], 0)),
        embed(te, tke, lambda a: (0, 0, a[0])), [])
    write(os.path.join(out, "composite_b_cbrt2.json"), comp3)

    # KE witness: m = (1,1), l = sqrt2*c, x = (c, sqrt2*c^2).
    ke_one = tke.unit()
    wit_ke = {"m": [1, 1], "l": vec(tke.element(r2=X, c=X)),
              "x": [vec(tke.element(c=X)), vec(tke.element(r2=X, c=X**2))]}
    write(os.path.join(out, "witness_b_cbrt2.json"), {
        "schema": SCHEMA, "kind": "strong_witness", "over": "composite",
        "fixture": inst_b, "composite": comp3, "witness": wit_ke})
    # Same witness with a broken x_2 (for the stage-2 abort path).
    bad = dict(wit_ke)
    bad["x"] = [vec(tke.element(c=X)), vec(ke_one)]
    write(os.path.join(out, "witness_b_cbrt2_invalid.json"), {
        "schema": SCHEMA, "kind": "strong_witness", "over": "composite",
        "fixture": inst_b, "composite": comp3, "witness": bad})

    # Witness over K itself.
    write(os.path.join(out, "witness_b.json"), {
        "schema": SCHEMA, "kind": "strong_witness", "over": "base",
        "fixture": inst_b,
        "witness": {"m": [1, 1], "l": vec(sqrt2), "x": [vec(el_one), vec(sqrt2)]}})

    # Trivial composite E = F.
    tq = Tensor([Factor("one", X - 1, [])], 0)
    comp1 = composite_doc(
        "INSTANCE-B x Q", "INSTANCE-B", tb, tq, tb, [2, 2],
        [[sp.Rational(int(i == j)) for j in range(tb.dim)] for i in range(tb.dim)],
        [[c] for c in tb.unit()], [])
    write(os.path.join(out, "composite_b_trivial.json"), comp1)
    write(os.path.join(out, "witness_b_trivial.json"), {
        "schema": SCHEMA, "kind": "strong_witness", "over": "composite",
        "fixture": inst_b, "composite": comp1,
        "witness": {"m": [1, 1], "l": vec(sqrt2), "x": [vec(el_one), vec(sqrt2)]}})

    # Composite of INSTANCE-B3 with E = Q(sqrt5), t = 2; KE/K is Galois.
    f5 = Factor("r5", X**2 - 5, [None, None])
    te5 = Tensor([Factor("r5", X**2 - 5, [])], 0)
    tke5 = Tensor([fa, fb, f5], 2)
    tau = tke5.automorphism({"alpha": None, "beta": None, "r5": -X})
    comp5 = composite_doc(
        "INSTANCE-B3 x Q(sqrt5)", "INSTANCE-B3", t3, te5, tke5, [3, 3],
        embed(t3, tke5, lambda a: (a[0], a[1], 0)),
        embed(te5, tke5, lambda a: (0, 0, a[0])), [tau])
    write(os.path.join(out, "composite_b3_sqrt5.json"), comp5)
    # INSTANCE-B with E = Q(sqrt5): t = 2 shares the prime of G, so it must be rejected.
    tke_b5 = Tensor([r2, r3, f5], 2)
    tau_b5 = tke_b5.automorphism({"r2": None, "r3": None, "r5": -X})
    write(os.path.join(out, "composite_b_sqrt5_not_prime_to_p.json"), composite_doc(
        "INSTANCE-B x Q(sqrt5)", "INSTANCE-B", tb, te5, tke_b5, [2, 2],
        embed(tb, tke_b5, lambda a: (a[0], a[1], 0)),
        embed(te5, tke_b5, lambda a: (0, 0, a[0])), [tau_b5]))
    inst_b3 = json.load(open(os.path.join(out, "instance_b3.json")))
    # W3 lifted: l = sqrt5, x_i scaled by (1 + sqrt5).
    s1p5 = X + 1
    wit5 = {"m": [1, 1], "l": vec(tke5.element(r5=X)),
            "x": [vec(tke5.element(alpha=sig1_alpha, r5=s1p5)),
                  vec(tke5.element(alpha=alpha_inv, r5=s1p5))]}
    write(os.path.join(out, "witness_b3_sqrt5.json"), {
        "schema": SCHEMA, "kind": "strong_witness", "over": "composite",
        "fixture": inst_b3, "composite": comp5, "witness": wit5})


if __name__ == "__main__":
    main()
