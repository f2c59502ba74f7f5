"""Walk through the affine groups G_k(p): structure, Saxl graph, UBB, twisted code.

Run with ``python3 demos/affine_family.py``.  The (2,3) instance shows what
happens when k exceeds p: B_k no longer has order p.
"""

from twistcode.gkp import (
    TupleSearchError,
    build_gkp,
    canonical_base,
    closed_form_ubb_size,
    gkp_saxl_connected,
    gkp_target_distance,
    gkp_twisted_code,
    gkp_ubb,
)

for p, k in [(2, 2), (3, 2), (5, 2), (2, 3), (3, 3)]:
    g = build_gkp(p, k)
    G = g.as_perm_group
    print(f"G_{k}({p}): {g.degree} points, |G| = {G.order()} (p^(k+1) = {g.expected_order}), "
          f"min distance {G.min_distance()} (p^k - p = {p**k - p}), base size {G.base_size()}")
    bases = {j: G.is_base(canonical_base(g, j)) for j in range(2, k + 1)}
    print(f"  canonical pairs are bases: {bases}")
    w = gkp_saxl_connected(g)
    print(f"  Saxl graph: {len(w.graph.edges)} edges, connected, "
          f"{len(w.label_violations)} of {w.checked_edges} sampled labelled pairs are not bases")
    ubb = gkp_ubb(g)
    print(f"  matching UBB of size {len(ubb)} (closed form {closed_form_ubb_size(p, k)}): {ubb.bases}")
    try:
        code = gkp_twisted_code(g)
        print(f"  twisted code: lambda {code.lam}, delta_tw {code.delta_tw()} vs delta_rep {code.delta_rep()}")
    except TupleSearchError as exc:
        print(f"  twisted code: target {gkp_target_distance(p, k)} not reached ({exc})")
