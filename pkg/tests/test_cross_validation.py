"""Cross-validation of reduced Groebner bases against sympy.

Reduced bases are unique for a given submodule and order, so two correct
engines must return identical sets.  sympy is not a dependency of the
package; these tests skip when it is unavailable.
"""

import random

import pytest

sp = pytest.importorskip("sympy")

from sympy.polys.groebnertools import groebner as sp_groebner

from hilbertkunz import DEGLEX, GREVLEX, LEX, PolyRing, buchberger

ORDER_MAP = {"grevlex": "grevlex", "lex": "lex", "deglex": "grlex"}


def _to_sympy(f, ring_sp, gens_sp):
    out = ring_sp.zero
    for exps, c in f.terms():
        mono = ring_sp.one
        for v, e in zip(gens_sp, exps):
            mono *= v ** e
        out += c * mono
    return out


def _compare(p, names, order, gens):
    R = gens[0].ring
    gb = buchberger(gens, order)
    mine = sorted(sorted(g.component(0)._d.items()) for g in gb.elements)
    ring_sp, *vs = sp.ring(",".join(names), sp.GF(p), ORDER_MAP[order.name])
    basis = sp_groebner([_to_sympy(f, ring_sp, vs) for f in gens], ring_sp)
    theirs = sorted(sorted((R.pack(mono), int(c) % p) for mono, c in g.terms())
                    for g in basis)
    assert mine == theirs


@pytest.mark.parametrize("order", [GREVLEX, LEX, DEGLEX],
                         ids=lambda o: o.name)
def test_random_ideals_match_sympy(order):
    rng = random.Random(31337 + len(order.name))
    for _ in range(12):
        p = rng.choice([2, 3, 5, 7, 11])
        nv = rng.choice([2, 3])
        names = ["x", "y", "z"][:nv]
        R = PolyRing(p, names, order=order)
        gens = []
        for _ in range(rng.randint(1, 4)):
            items = []
            for _ in range(rng.randint(1, 5)):
                exps = tuple(rng.randint(0, 4) for _ in range(nv))
                items.append((exps, rng.randint(1, p - 1)))
            f = R.from_terms(items)
            if f:
                gens.append(f)
        if gens:
            _compare(p, names, order, gens)


def test_quartic_bracket_ideal_matches_sympy():
    R = PolyRing(5, ["x1", "x2", "x3", "x4"])
    gens = [R.parse("x1^4 + x2^4 + x3^4 + x4^4")] + \
        [R.parse(f"x{i}^5") for i in range(1, 5)]
    _compare(5, ["x1", "x2", "x3", "x4"], GREVLEX, gens)


def test_determinantal_bracket_ideal_matches_sympy():
    names = [f"x{i}" for i in range(1, 7)]
    R = PolyRing(3, names)
    gens = [R.parse("x1*x5 - x2*x4"), R.parse("x1*x6 - x3*x4"),
            R.parse("x2*x6 - x3*x5")] + \
        [R.parse(f"x{i}^3") for i in range(1, 7)]
    _compare(3, names, GREVLEX, gens)
