"""Regenerate the group, tuple, UBB and cover files under src/twistcode/data.

Groups without a ready-made generator list are constructed
here from first principles (Moebius maps, coset actions, symplectic
matrices), relabelled so that the shipped UBB rows are bases, and given
twisting automorphisms found by search.  Run from the repository root:

    python tools/build_fixtures.py
"""

from __future__ import annotations

import itertools
import sys
from pathlib import Path

import numpy as np

from twistcode.automorphisms import find_automorphisms, is_inner, representation_classes
from twistcode.formats import dump_cover, dump_group, dump_ubb, read_group, write_tuple
from twistcode.group import PermutationGroup
from twistcode.perm import Permutation, compose, inverse
from twistcode.ubb import CoveringDesign, Ubb, relabel_search

DATA = Path(__file__).resolve().parents[1] / "src" / "twistcode" / "data"

# reference UBB rows, shipped verbatim
UBB_ROWS = {
    "pgl27": (2, [(1, 2, 3), (4, 5, 6), (2, 3, 7), (1, 7, 8)]),
    "asl32": (2, [(1, 2, 3, 5), (4, 5, 6, 7), (1, 4, 6, 8), (1, 5, 7, 8), (2, 3, 4, 6), (2, 3, 7, 8)]),
    "s6": (1, list(itertools.combinations(range(1, 7), 5))),
    "a6": (1, [(1, 2, 3, 4), (1, 2, 5, 6), (3, 4, 5, 6)]),
    "psl2_11": (3, [(1, 2, 11), (2, 8, 10), (3, 4, 5), (6, 7, 9), (8, 10, 11)]),
    "m12": (3, [
        (1, 2, 3, 4, 5), (1, 2, 6, 11, 12), (1, 3, 7, 8, 9), (1, 4, 6, 7, 10),
        (1, 5, 8, 9, 11), (2, 4, 8, 9, 12), (2, 5, 7, 10, 11), (3, 4, 7, 11, 12),
        (3, 5, 6, 10, 12), (3, 6, 8, 9, 11), (6, 7, 8, 9, 10),
    ]),
    "a7_15": (5, [
        (1, 2, 8), (2, 6, 7), (3, 4, 5), (6, 7, 8), (9, 12, 15),
        (9, 13, 14), (10, 11, 12), (10, 11, 15), (13, 14, 15),
    ]),
    "aff_a6": (5, [
        (1, 2, 9, 16), (1, 3, 9, 10), (1, 4, 9, 11), (2, 3, 10, 16), (2, 4, 11, 16),
        (3, 4, 10, 11), (5, 6, 12, 13), (5, 7, 13, 14), (5, 8, 13, 15), (6, 7, 12, 14),
        (6, 8, 12, 15), (7, 8, 14, 15),
    ]),
    "aff_s6": (3, [
        (1, 3, 4, 6, 13), (2, 3, 6, 11, 16), (2, 4, 11, 13, 16),
        (5, 7, 9, 14, 15), (7, 8, 10, 12, 14), (8, 9, 10, 12, 15),
    ]),
    "m22": (7, [
        (1, 2, 4, 14, 19), (1, 2, 7, 13, 17), (1, 3, 4, 15, 17), (1, 3, 5, 7, 19),
        (1, 5, 13, 14, 15), (2, 3, 5, 14, 17), (2, 3, 13, 15, 19), (2, 4, 5, 7, 15),
        (3, 4, 7, 13, 14), (4, 5, 13, 17, 19), (6, 8, 9, 11, 18), (6, 8, 10, 20, 21),
        (6, 9, 12, 16, 21), (6, 10, 12, 18, 22), (6, 11, 16, 20, 22), (7, 14, 15, 17, 19),
        (8, 9, 10, 16, 22), (8, 11, 12, 21, 22), (8, 12, 16, 18, 20), (9, 10, 11, 12, 20),
        (9, 18, 20, 21, 22), (10, 11, 16, 18, 21),
    ]),
}

LAMBDA = {"asl32": 2, "s6": 2, "a6": 2, "psl2_11": 2, "m12": 2, "a7_15": 2, "aff_a6": 4, "aff_s6": 2, "m22": 2}


def cyc(n, *strings):
    return [Permutation.from_cycles(s, n) for s in strings]


def from_map(n, f):
    """Permutation of 1..n from a 0-based point function."""
    return Permutation(tuple(f(x) + 1 for x in range(n)))


def pgl27():
    # points 0..6 and infinity (= 7)
    inf = 7

    def mob(a, b, c, d):
        def f(x):
            if x == inf:
                return inf if c == 0 else a * pow(c, -1, 7) % 7
            den = (c * x + d) % 7
            if den == 0:
                return inf
            return (a * x + b) * pow(den, -1, 7) % 7
        return from_map(8, f)

    return PermutationGroup([mob(1, 1, 0, 1), mob(3, 0, 0, 1), mob(0, 6, 1, 0)], name="PGL27")


def psl2_11():
    # PSL(2,11) on the projective line, then on cosets of an A5
    inf = 11

    def mob(a, b, c, d):
        def f(x):
            if x == inf:
                return inf if c == 0 else a * pow(c, -1, 11) % 11
            den = (c * x + d) % 11
            if den == 0:
                return inf
            return (a * x + b) * pow(den, -1, 11) % 11
        return from_map(12, f)

    big = PermutationGroup([mob(1, 1, 0, 1), mob(4, 0, 0, 1), mob(0, 10, 1, 0)], name="PSL2_11_12")
    assert big.order() == 660
    orders = big.element_orders()
    invols = np.nonzero(orders == 2)[0]
    threes = np.nonzero(orders == 3)[0]
    rng = np.random.default_rng(1)
    while True:
        a, b = int(rng.choice(invols)), int(rng.choice(threes))
        sub = big.subgroup_closure([a, b])
        if len(sub) == 60:
            break
    gens = big.coset_action(sub)
    return PermutationGroup(gens, name="PSL2_11")


def a7_15():
    a7 = PermutationGroup(cyc(7, "(1,2,3)", "(1,2,3,4,5,6,7)"), name="A7")
    assert a7.order() == 2520
    lines = [{1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 7}, {5, 6, 1}, {6, 7, 2}, {7, 1, 3}]
    line_set = {frozenset(x) for x in lines}
    keep = [i for i, g in enumerate(a7) if {frozenset(g(p) for p in ln) for ln in lines} == line_set]
    assert len(keep) == 168
    return PermutationGroup(a7.coset_action(np.array(keep)), name="A7_15")


def symplectic_affine(derived: bool):
    # points are vectors of F_2^4, row vector v maps to v M
    J = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    vecs = np.array(list(itertools.product([0, 1], repeat=4)))
    codes = vecs @ (1 << np.arange(3, -1, -1))
    lookup = {int(c): i for i, c in enumerate(codes)}

    def mat_perm(M):
        img = (vecs @ M) % 2
        return Permutation(tuple(lookup[int(c)] + 1 for c in img @ (1 << np.arange(3, -1, -1))))

    def trans_perm(t):
        img = (vecs + t) % 2
        return Permutation(tuple(lookup[int(c)] + 1 for c in img @ (1 << np.arange(3, -1, -1))))

    sp = []
    for bits in itertools.product([0, 1], repeat=16):
        M = np.array(bits).reshape(4, 4)
        if np.array_equal((M @ J @ M.T) % 2, J):
            sp.append(M)
    assert len(sp) == 720
    spg = PermutationGroup([mat_perm(M) for M in sp], name="Sp42")
    # small generating set for Sp(4,2) on 16 points
    from twistcode.automorphisms import generating_pair
    a, b = generating_pair(spg, seed=3)
    linear = [a, b]
    if derived:
        small = PermutationGroup(linear)
        squares = [small.index_of(compose(g, g)) for g in small]
        sub = small.subgroup_closure(sorted(set(squares)))
        assert len(sub) == 360
        a6 = PermutationGroup([small.element(int(i)) for i in sub])
        linear = list(generating_pair(a6, seed=5))
    translations = [trans_perm(np.eye(4, dtype=int)[0])]
    name = "AffA6" if derived else "AffS6"
    return PermutationGroup(linear + translations, name=name)


def conjugate_generators(group: PermutationGroup, sigma: Permutation, name: str) -> PermutationGroup:
    """Group whose bases are the sigma-preimages of bases of ``group``."""
    sinv = inverse(sigma)
    gens = [compose(compose(sigma, g), sinv) for g in group.generators]
    return PermutationGroup(gens, name=name)


def fit_labels(group: PermutationGroup, key: str, name: str) -> PermutationGroup:
    strength, rows = UBB_ROWS[key]
    group.name = name
    if all(group.is_base(r) for r in rows):
        return group
    cover = CoveringDesign.from_ubb(Ubb(tuple(rows), strength), group.degree)
    found = relabel_search(cover, group, attempts=200, seed=7)
    if found is None:
        raise SystemExit(f"relabelling failed for {name}")
    print(f"  {name}: relabelled on attempt {found.attempt}")
    out = conjugate_generators(group, found.sigma, name)
    assert all(out.is_base(r) for r in rows)
    return out


def twist_maps(group: PermutationGroup, lam: int, seed: int = 0):
    """Generator images for components 2..lam.

    Inequivalent representations are used first; when there are fewer
    classes than components they are reused cyclically.  A group with a
    single class is twisted by an outer automorphism if one exists.
    """
    auts = find_automorphisms(group, seed=seed)
    classes = representation_classes(group, auts)
    print(f"  {group.name}: {len(auts)} automorphisms found, {len(classes)} representation classes")
    if len(classes) > 1:
        return [classes[i % len(classes)].generator_images for i in range(1, lam)]
    outer = [a for a in auts if not is_inner(group, a.generator_images)]
    if outer:
        print(f"  {group.name}: single class, twisting by an outer automorphism")
        return [outer[0].generator_images] * (lam - 1)
    raise SystemExit(f"{group.name}: no non-inner automorphism found")


# expected attempt log for the ASL(3,2) trace word
ASL32_TRACE = """\
base=1 comp=1 action=skip-repeat
base=1 comp=2 action=skip-repeat
base=2 comp=1 action=reject d=11
base=2 comp=2 action=accept d=2
"""


def write_covers():
    """Covering designs dual to shipped UBBs; the 2^4:S6 one is scrambled so that
    recovering the shipped UBB needs a relabelling."""
    for key in ("pgl27", "m12"):
        strength, rows = UBB_ROWS[key]
        n = 8 if key == "pgl27" else 12
        cover = CoveringDesign.from_ubb(Ubb(tuple(rows), strength), n)
        name = f"{key}_{n}_{cover.block_size}_{strength}.cover"
        (DATA / name).write_text(dump_cover(cover, ["complements of the shipped UBB rows"]))
    strength, rows = UBB_ROWS["aff_s6"]
    cover = CoveringDesign.from_ubb(Ubb(tuple(rows), strength), 16)
    group = read_group(DATA / "aff_s6.group")
    rng = np.random.default_rng(2024)
    while True:
        sigma = Permutation(tuple(int(x) + 1 for x in rng.permutation(16)))
        scrambled = cover.relabel(sigma)
        if any(not group.is_base(b) for b in scrambled.complements()):
            break
    (DATA / "aff_s6_16_11_3.cover").write_text(
        dump_cover(scrambled, ["(16,11,3) covering design in a labelling whose complements are not all bases"])
    )


def main(only=None):
    DATA.mkdir(parents=True, exist_ok=True)
    builders = {
        "pgl27": lambda: pgl27(),
        "asl32": lambda: PermutationGroup(cyc(8, "(2,5)(4,7)", "(2,3,4)(5,6,8)", "(1,2)(3,4)(5,6)(7,8)",
                                              "(1,3)(2,4)(5,7)(6,8)", "(1,5)(2,6)(3,7)(4,8)")),
        "s6": lambda: PermutationGroup(cyc(6, "(1,2,3,4,5,6)", "(1,2)")),
        "a6": lambda: PermutationGroup(cyc(6, "(1,2,3)", "(2,3,4,5,6)")),
        "psl2_11": psl2_11,
        "m12": lambda: PermutationGroup(cyc(12, "(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)",
                                            "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)")),
        "a7_15": a7_15,
        "aff_a6": lambda: symplectic_affine(derived=True),
        "aff_s6": lambda: symplectic_affine(derived=False),
        "m22": lambda: PermutationGroup(cyc(22, "(1,2,3,4,5,6,7,8,9,10,11)(12,13,14,15,16,17,18,19,20,21,22)",
                                            "(1,4,5,9,3)(2,8,10,7,6)(12,15,16,20,14)(13,19,21,18,17)",
                                            "(1,21)(2,10,8,6)(3,13,4,17)(5,19,9,18)(11,22)(12,14,16,20)")),
    }
    names = {"pgl27": "PGL27", "asl32": "ASL32", "s6": "S6", "a6": "A6", "psl2_11": "PSL2_11",
             "m12": "M12", "a7_15": "A7_15", "aff_a6": "AffA6", "aff_s6": "AffS6", "m22": "M22"}
    for key, build in builders.items():
        if only and key not in only:
            continue
        print(f"building {key}")
        group = fit_labels(build(), key, names[key])
        group = PermutationGroup(group.generators, name=names[key])
        (DATA / f"{key}.group").write_text(dump_group(group))
        strength, rows = UBB_ROWS[key]
        ubb = Ubb(tuple(rows), strength, group, names[key])
        (DATA / f"{key}.ubb").write_text(dump_ubb(ubb))
        print(f"  order {group.order()}, min distance {group.min_distance()}")
        if key in LAMBDA:
            lam = LAMBDA[key]
            if key == "asl32":
                maps = [tuple(cyc(8, "(1,3)(2,7)(4,5)(6,8)", "(2,3,4)(5,6,8)", "(1,2)(3,4)(5,6)(7,8)",
                                  "(1,3)(2,4)(5,7)(6,8)", "(1,5)(2,6)(3,7)(4,8)"))]
            else:
                maps = twist_maps(group, lam)
            write_tuple(DATA / f"{key}.tuple", names[key], [f"{key}.group"] * lam, maps)
    if not only or "covers" in only:
        write_covers()
        (DATA / "asl32_trace.log").write_text(ASL32_TRACE)


if __name__ == "__main__":
    main(set(sys.argv[1:]) or None)
