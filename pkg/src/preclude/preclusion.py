"""Matching preclusion numbers, integer and fractional.

``mp(G)`` is the fewest edges whose deletion kills every perfect matching;
``mp_f(G)`` is the optimum of the LP relaxation of that covering problem.
The fractional number is computed by several independent routes:

* ``enumeration``: the covering LP written out over every perfect matching;
* ``cutting_plane``: the same LP grown row by row from a separation oracle;
* ``odd_cut_lp``: the reciprocal of the min-max program over the perfect
  matching polytope (degree equalities plus odd-cut inequalities);
* ``blp``: that program without odd cuts, exact for bipartite graphs;
* ``bipartite_formula``: the closed form
  ``min e(X,Y) / (|X| + |Y| - |A|)`` over ``X ⊆ A``, ``Y ⊆ B``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import (
    InvalidSpec,
    NoPerfectMatching,
    NotBipartite,
    NotRegular,
    OddOrder,
    SizeCapExceeded,
    UnbalancedSides,
)
from .flows import (
    FlowNetwork,
    bipartite_matching,
    bipartite_network,
    feasible_circulation,
    hall_violator,
    max_flow,
    max_k_factor,
)
from .graphcore import (
    ODD_CUT_CAP,
    Bipartition,
    Graph,
    bipartition,
    cartesian_product,
    enumerate_nontrivial_odd_cuts,
)
from .lpcore import LinearProgram, solve_01, solve_lp
from .matchings import (
    MATCHING_CAP,
    MatchingSet,
    enumerate_perfect_matchings,
    has_perfect_matching,
    min_weight_perfect_matching,
    separate_fmp,
)

ENUMERATION = "enumeration"
CUTTING_PLANE = "cutting_plane"
ODD_CUT_LP = "odd_cut_lp"
BIPARTITE_FORMULA = "bipartite_formula"
BLP = "blp"
PRODUCT_FORMULA = "product_formula"
BLP2 = "blp2"
SUBSET_SEARCH = "subset_search"

MPF_METHODS = (ENUMERATION, CUTTING_PLANE, ODD_CUT_LP, BIPARTITE_FORMULA, BLP)
BIPARTITE_ONLY = frozenset({BIPARTITE_FORMULA, BLP})
SUBSET_SEARCH_LIMIT = 24


@dataclass
class PreclusionReport:
    value: Fraction
    method: str
    witness_x: Optional[tuple[int, ...]] = None
    witness_y: Optional[tuple[int, ...]] = None
    certificate: Optional[tuple[Fraction, ...]] = None
    preclusion_set: Optional[tuple[int, ...]] = None
    cross_check: dict[str, Fraction] = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return all(v == self.value for v in self.cross_check.values())

    def to_dict(self) -> dict:
        out = {
            "value": _rat(self.value),
            "method": self.method,
            "witness_x": None if self.witness_x is None else list(self.witness_x),
            "witness_y": None if self.witness_y is None else list(self.witness_y),
            "certificate": None,
            "cross_check": {k: _rat(v) for k, v in self.cross_check.items()},
        }
        if self.certificate is not None:
            out["certificate"] = [
                {"edge": i, **_rat(v)} for i, v in enumerate(self.certificate) if v
            ]
        if self.preclusion_set is not None:
            out["preclusion_set"] = list(self.preclusion_set)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _rat(v: Fraction) -> dict:
    v = Fraction(v)
    return {"num": v.numerator, "den": v.denominator}


def _require_even(g: Graph) -> None:
    if g.n % 2:
        raise OddOrder(f"matching preclusion needs an even vertex count, got {g.n}")


def _resolve_bipartition(g: Graph, bip: Optional[Bipartition]) -> Bipartition:
    if bip is None:
        bip = bipartition(g)
        if bip is None:
            raise NotBipartite("graph contains an odd cycle")
    elif not bip.is_valid_for(g):
        raise NotBipartite("the given bipartition is not valid for this graph")
    return bip


def is_preclusion_set(g: Graph, edges) -> bool:
    return not has_perfect_matching(g.subgraph_without(edges))


# -- covering programs over perfect matchings --------------------------------


def covering_program(g: Graph, matchings: MatchingSet, integral: bool = False) -> LinearProgram:
    """``min 1·y`` s.t. every perfect matching meets ``y`` with weight at least 1."""
    lp = LinearProgram(
        g.m,
        [1] * g.m,
        upper=[1] * g.m if integral else [],
        integer=[integral] * g.m,
    )
    for mt in matchings:
        lp.add_constraint({e: 1 for e in mt}, ">=", 1)
    return lp


def mp(g: Graph, matching_cap: int = MATCHING_CAP) -> PreclusionReport:
    """Matching preclusion number via 0-1 programming over all perfect matchings."""
    _require_even(g)
    ms = enumerate_perfect_matchings(g, matching_cap)
    if not len(ms):
        return PreclusionReport(Fraction(0), ENUMERATION, preclusion_set=())
    sol = solve_01(covering_program(g, ms, integral=True))
    chosen = tuple(e for e in range(g.m) if sol.primal[e] == 1)
    return PreclusionReport(sol.value, ENUMERATION, preclusion_set=chosen, info={"nodes": sol.nodes})


def mp_subset_search(
    g: Graph, matching_cap: int = MATCHING_CAP, limit: int = SUBSET_SEARCH_LIMIT
) -> PreclusionReport:
    """Matching preclusion number by trying edge subsets in order of size.

    Returns the lexicographically first smallest preclusion set.  Sizes are
    searched up to the minimum degree, where a vertex star always works.
    """
    _require_even(g)
    ms = enumerate_perfect_matchings(g, matching_cap)
    masks = [sum(1 << e for e in mt) for mt in ms]
    if not masks:
        return PreclusionReport(Fraction(0), SUBSET_SEARCH, preclusion_set=())
    top = g.min_degree()
    if top > limit:
        raise SizeCapExceeded(f"subset search limited to size {limit}, need up to {top}")
    for size in range(1, top + 1):
        for combo in itertools.combinations(range(g.m), size):
            f = 0
            for e in combo:
                f |= 1 << e
            if all(mk & f for mk in masks):
                return PreclusionReport(Fraction(size), SUBSET_SEARCH, preclusion_set=combo)
    raise AssertionError("a vertex star must preclude every perfect matching")


def mpf_enumerated(g: Graph, matching_cap: int = MATCHING_CAP) -> PreclusionReport:
    _require_even(g)
    ms = enumerate_perfect_matchings(g, matching_cap)
    if not len(ms):
        return PreclusionReport(Fraction(0), ENUMERATION, certificate=(Fraction(0),) * g.m)
    sol = solve_lp(covering_program(g, ms))
    return PreclusionReport(
        sol.value,
        ENUMERATION,
        certificate=tuple(sol.primal),
        info={"matchings": len(ms), "dual": sol.dual},
    )


def mpf_cutting_plane(
    g: Graph,
    oracle=min_weight_perfect_matching,
    max_rounds: Optional[int] = None,
) -> PreclusionReport:
    """Covering LP by row generation.

    Starts from the row of one perfect matching and keeps adding the row of
    the cheapest perfect matching under the current optimum until every
    matching has weight at least 1.
    """
    _require_even(g)
    first = oracle(g, [Fraction(0)] * g.m)
    if first is None:
        raise NoPerfectMatching("graph has no perfect matching")
    lp = LinearProgram(g.m, [1] * g.m)
    lp.add_constraint({e: 1 for e in first[0]}, ">=", 1)
    rounds = 0
    while True:
        sol = solve_lp(lp)
        rounds += 1
        sep = separate_fmp(g, sol.primal, oracle)
        if sep.inside:
            break
        if max_rounds is not None and rounds >= max_rounds:
            raise RuntimeError(f"no convergence after {max_rounds} rounds")
        lp.add_constraint(list(sep.w), ">=", 1 if sep.matching is not None else 0)
    return PreclusionReport(
        sol.value,
        CUTTING_PLANE,
        certificate=tuple(sol.primal),
        info={"rounds": rounds, "rows": len(lp.constraints)},
    )


# -- polytope programs -------------------------------------------------------


def min_max_program(g: Graph, cuts: Sequence = ()) -> LinearProgram:
    """``min z`` s.t. ``z >= b_e``, ``b(∂v) = 1`` for all ``v``, ``b(C) >= 1`` for ``C`` in ``cuts``.

    Variables are ``b_0..b_{m-1}`` followed by ``z``.
    """
    m = g.m
    lp = LinearProgram(m + 1, [0] * m + [1])
    for e in range(m):
        lp.add_constraint({m: 1, e: -1}, ">=", 0)
    for v in range(g.n):
        lp.add_constraint({e: 1 for e in g.incident_edges(v)}, "=", 1)
    for cut in cuts:
        lp.add_constraint({e: 1 for e in cut.edge_indices}, ">=", 1)
    return lp


def l_of_g(
    g: Graph, odd_cut_cap: int = ODD_CUT_CAP, odd_cuts: bool = True
) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Smallest possible largest entry of a point of the perfect matching polytope.

    Returns ``(L, b)``.  With ``odd_cuts=False`` the odd-cut rows are left
    out, which is only exact for bipartite graphs.
    """
    _require_even(g)
    if not has_perfect_matching(g):
        raise NoPerfectMatching("graph has no perfect matching")
    cuts = enumerate_nontrivial_odd_cuts(g, odd_cut_cap) if odd_cuts else ()
    sol = solve_lp(min_max_program(g, cuts))
    return sol.value, tuple(sol.primal[: g.m])


def mpf_odd_cut_lp(g: Graph, odd_cut_cap: int = ODD_CUT_CAP) -> PreclusionReport:
    L, b = l_of_g(g, odd_cut_cap)
    return PreclusionReport(1 / L, ODD_CUT_LP, info={"L": L, "b": b})


def mpf_bipartite_blp(g: Graph, bip: Optional[Bipartition] = None) -> PreclusionReport:
    bip = _resolve_bipartition(g, bip)
    _require_even(g)
    if 2 * len(bipartite_matching(g, bip)) != g.n:
        raise NoPerfectMatching("graph has no perfect matching")
    sol = solve_lp(min_max_program(g))
    return PreclusionReport(1 / sol.value, BLP, info={"L": sol.value, "b": tuple(sol.primal[: g.m])})


# -- closed forms for bipartite graphs ---------------------------------------


def _formula_search(g: Graph, side_a: list[int], side_b: list[int], r: int = 0):
    """Minimise ``(e(X,Y) + r*min(|X|,|Y|)) / (|X| + |Y| - |A|)`` exactly.

    Every ``X`` is tried; for a fixed ``X`` and ``|Y| = s`` the best ``Y`` is
    made of the ``s`` vertices of ``B`` with fewest neighbours in ``X``.
    Returns ``(value, X, Y)`` with the lexicographically smallest minimiser.
    """
    na = len(side_a)
    pos = {a: i for i, a in enumerate(side_a)}
    nbr = [sum(1 << pos[w] for w in g.neighbors(b)) for b in side_b]
    best_num, best_den, best_xy = None, None, None
    for xmask in range(1 << na):
        x = bin(xmask).count("1")
        counts = [bin(mk & xmask).count("1") for mk in nbr]
        order = sorted(range(len(side_b)), key=lambda i: (counts[i], side_b[i]))
        prefix = [0]
        for i in order:
            prefix.append(prefix[-1] + counts[i])
        x_tuple = None
        for s in range(max(1, na - x + 1), len(side_b) + 1):
            num = prefix[s] + r * min(x, s)
            den = x + s - na
            cmp = -1 if best_num is None else num * best_den - best_num * den
            if cmp > 0:
                continue
            if x_tuple is None:
                x_tuple = tuple(a for i, a in enumerate(side_a) if xmask >> i & 1)
            # Ties in count resolved by vertex index give the smallest sorted Y.
            cand = (x_tuple, tuple(sorted(side_b[i] for i in order[:s])))
            if cmp < 0 or cand < best_xy:
                best_num, best_den, best_xy = num, den, cand
    return Fraction(best_num, best_den), best_xy[0], best_xy[1]


def _parametric_search(candidates: list[Fraction], feasible: Callable[[Fraction], bool]):
    """Largest candidate ``v`` with ``feasible(v)`` (monotone: true then false).

    Returns ``(v, v_next)`` where ``v_next`` is the smallest infeasible value.
    """
    lo, hi = 0, len(candidates)  # invariant: candidates[:lo] feasible, [hi:] not
    if not feasible(candidates[0]):
        raise AssertionError("smallest candidate must be feasible")
    lo = 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(candidates[mid]):
            lo = mid + 1
        else:
            hi = mid
    v = candidates[lo - 1]
    v_next = candidates[lo] if lo < len(candidates) else candidates[-1] + 1
    return v, v_next


def _candidates(max_num: int, max_den: int) -> list[Fraction]:
    return sorted({Fraction(p, q) for q in range(1, max_den + 1) for p in range(1, max_num + 1)})


def blp_flow_network(g: Graph, bip: Bipartition, z) -> tuple[FlowNetwork, list[int]]:
    """Source to side A (capacity 1), edges A to B (capacity ``z``), B to sink (capacity 1).

    ``z`` is feasible for the degree-constrained min-max program iff the
    maximum flow equals ``|A|``.
    """
    ones = [1] * g.n
    return bipartite_network(g, bip, ones, Fraction(z), ones)


def blp2_circulation_network(g: Graph, bip: Bipartition, r: int, z) -> FlowNetwork:
    """Circulation network deciding feasibility of ``z`` for a product with an ``r``-regular factor.

    Terminal arcs carry lower bound ``1 - r*z`` (clipped at 0) and capacity 1,
    edge arcs capacity ``z``, and the return arc sink to source capacity ``|A|``.
    """
    z = Fraction(z)
    low = max(Fraction(0), 1 - r * z)
    ones = [1] * g.n
    net, _ = bipartite_network(g, bip, ones, z, ones, lower_ends=low)
    net.add_arc(g.n + 1, g.n, len(bip.side_a))
    return net


def _count_edges(g: Graph, xs, ys) -> int:
    xs, ys = set(xs), set(ys)
    return sum(1 for u, v in g.edges if (u in xs and v in ys) or (v in xs and u in ys))


def _uniform_certificate(g: Graph, xs, ys, den: int) -> tuple[Fraction, ...]:
    xs, ys = set(xs), set(ys)
    val = Fraction(1, den)
    return tuple(
        val if (u in xs and v in ys) or (v in xs and u in ys) else Fraction(0) for u, v in g.edges
    )


def mpf_bipartite_formula(
    g: Graph,
    bip: Optional[Bipartition] = None,
    exhaustive_limit: int = SUBSET_SEARCH_LIMIT,
) -> PreclusionReport:
    """``mp_f`` of a bipartite graph from the closed form, with an optimal ``ỹ``.

    ``witness_x`` lies in the smaller side (side A when the sides are equal).
    Without a perfect matching the value is 0 and the witness is a Hall
    violator ``Y`` with ``X = A - N(Y)``.
    """
    bip = _resolve_bipartition(g, bip)
    _require_even(g)
    if len(bip.side_a) > len(bip.side_b):
        bip = bip.swapped()
    side_a, side_b = bip.sorted_a(), bip.sorted_b()

    if 2 * len(bipartite_matching(g, bip)) != g.n:
        y0 = hall_violator(g, bip)
        nbrs = {w for b in y0 for w in g.neighbors(b)}
        x0 = tuple(a for a in side_a if a not in nbrs)
        return PreclusionReport(
            Fraction(0),
            BIPARTITE_FORMULA,
            witness_x=x0,
            witness_y=tuple(sorted(y0)),
            certificate=(Fraction(0),) * g.m,
        )

    if len(side_a) + len(side_b) <= exhaustive_limit:
        value, xs, ys = _formula_search(g, side_a, side_b)
        search = "exhaustive"
    else:
        na = len(side_a)

        def feasible(v):
            net, _ = blp_flow_network(g, bip, 1 / v)
            return max_flow(net).value == na

        value, v_next = _parametric_search(_candidates(g.m, na), feasible)
        net, _ = blp_flow_network(g, bip, 1 / v_next)
        cut = max_flow(net).cut_side
        xs = tuple(a for a in side_a if a in cut)
        ys = tuple(b for b in side_b if b not in cut)
        if Fraction(_count_edges(g, xs, ys), len(xs) + len(ys) - na) != value:
            raise AssertionError("parametric witness does not attain the optimum")
        search = "parametric"
    den = len(xs) + len(ys) - len(side_a)
    return PreclusionReport(
        value,
        BIPARTITE_FORMULA,
        witness_x=xs,
        witness_y=ys,
        certificate=_uniform_certificate(g, xs, ys, den),
        info={"search": search},
    )


def _regular_degree(h: Graph) -> int:
    degs = set(h.degrees())
    if len(degs) != 1 or 0 in degs:
        raise NotRegular("H must be r-regular with r >= 1")
    return degs.pop()


def blp2_program(g: Graph, r: int) -> LinearProgram:
    """Min-max program for ``g □ h`` with all layer variables tied together.

    Variables ``a_0..a_{m-1}`` (one per edge of ``g``), ``h_0..h_{n-1}``
    (one per vertex of ``g``), then ``z``.
    """
    m, n = g.m, g.n
    z = m + n
    lp = LinearProgram(m + n + 1, [0] * (m + n) + [1])
    for j in range(m + n):
        lp.add_constraint({z: 1, j: -1}, ">=", 0)
    for v in range(n):
        row = {e: 1 for e in g.incident_edges(v)}
        row[m + v] = r
        lp.add_constraint(row, "=", 1)
    return lp


def mpf_product_regular(
    g: Graph,
    bip_g: Optional[Bipartition],
    h: Graph,
    exhaustive_limit: int = SUBSET_SEARCH_LIMIT,
) -> PreclusionReport:
    """``mp_f(g □ h)`` for balanced bipartite ``g`` and ``r``-regular bipartite ``h``."""
    bip_g = _resolve_bipartition(g, bip_g)
    if len(bip_g.side_a) != len(bip_g.side_b):
        raise UnbalancedSides("G must have sides of equal size")
    if bipartition(h) is None:
        raise NotBipartite("H contains an odd cycle")
    r = _regular_degree(h)
    side_a, side_b = bip_g.sorted_a(), bip_g.sorted_b()
    na = len(side_a)

    if len(side_a) + len(side_b) <= exhaustive_limit:
        value, xs, ys = _formula_search(g, side_a, side_b, r)
        search = "exhaustive"
    else:

        def feasible(v):
            return feasible_circulation(blp2_circulation_network(g, bip_g, r, 1 / v)).feasible

        value, v_next = _parametric_search(_candidates(g.m + r * na, na), feasible)
        res = feasible_circulation(blp2_circulation_network(g, bip_g, r, 1 / v_next))
        xs = tuple(a for a in side_a if a not in res.violating_set)
        ys = tuple(b for b in side_b if b in res.violating_set)
        den = len(xs) + len(ys) - na
        if den <= 0 or Fraction(_count_edges(g, xs, ys) + r * min(len(xs), len(ys)), den) != value:
            raise AssertionError("parametric witness does not attain the optimum")
        search = "parametric"

    sol = solve_lp(blp2_program(g, r))
    return PreclusionReport(
        value,
        PRODUCT_FORMULA,
        witness_x=xs,
        witness_y=ys,
        cross_check={BLP2: 1 / sol.value},
        info={"search": search, "r": r},
    )


@dataclass(frozen=True)
class ProductBound:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    equality: bool


def check_product_bound(g: Graph, h: Graph) -> ProductBound:
    """Compare ``mp_f(g □ h)`` with ``mp_f(g) + floor(mp_f(h))``."""
    prod, _ = cartesian_product(g, h)
    lhs = mpf_bipartite_formula(prod).value
    rhs = mpf_bipartite_formula(g).value + math.floor(mpf_bipartite_formula(h).value)
    return ProductBound(lhs, rhs, lhs >= rhs, lhs == rhs)


@dataclass(frozen=True)
class KFactorCheck:
    floor_mpf: int
    max_k: int
    agree: bool


def kfactor_crosscheck(g: Graph, bip: Optional[Bipartition] = None) -> KFactorCheck:
    bip = _resolve_bipartition(g, bip)
    fl = math.floor(mpf_bipartite_formula(g, bip).value)
    k = max_k_factor(g, bip)
    return KFactorCheck(fl, k, fl == k)


# -- dispatch ----------------------------------------------------------------


def applicable_methods(g: Graph, odd_cut_cap: int = ODD_CUT_CAP) -> list[str]:
    bip = bipartition(g)
    out = [ENUMERATION, CUTTING_PLANE]
    if g.n <= odd_cut_cap:
        out.append(ODD_CUT_LP)
    if bip is not None:
        out += [BIPARTITE_FORMULA, BLP]
    return out


def fractional_preclusion(
    g: Graph,
    methods="auto",
    matching_cap: int = MATCHING_CAP,
    odd_cut_cap: int = ODD_CUT_CAP,
) -> PreclusionReport:
    """Run one or more ``mp_f`` pipelines and collect their values in ``cross_check``.

    ``methods`` is ``"auto"``, ``"all"`` or a list of method names.  The
    first method supplies the witness and certificate.  Methods that need a
    perfect matching are skipped when there is none.
    """
    _require_even(g)
    bip = bipartition(g)
    if methods == "auto":
        methods = [BIPARTITE_FORMULA, BLP] if bip is not None else [CUTTING_PLANE, ENUMERATION]
    elif methods == "all":
        methods = applicable_methods(g, odd_cut_cap)
    else:
        methods = list(methods)
    for name in methods:
        if name not in MPF_METHODS:
            raise InvalidSpec(f"unknown method {name!r}")
        if name in BIPARTITE_ONLY and bip is None:
            raise NotBipartite(f"method {name} needs a bipartite graph")

    has_pm = (
        2 * len(bipartite_matching(g, bip)) == g.n if bip is not None else has_perfect_matching(g)
    )
    runners = {
        ENUMERATION: lambda: mpf_enumerated(g, matching_cap),
        CUTTING_PLANE: lambda: mpf_cutting_plane(
            g, lambda gg, w: min_weight_perfect_matching(gg, w, matching_cap)
        ),
        ODD_CUT_LP: lambda: mpf_odd_cut_lp(g, odd_cut_cap),
        BIPARTITE_FORMULA: lambda: mpf_bipartite_formula(g, bip),
        BLP: lambda: mpf_bipartite_blp(g, bip),
    }
    needs_pm = {CUTTING_PLANE, ODD_CUT_LP, BLP}
    primary = None
    values = {}
    for name in methods:
        if name in needs_pm and not has_pm:
            continue
        rep = runners[name]()
        values[name] = rep.value
        if primary is None:
            primary = rep
    if primary is None:
        # Only perfect-matching-dependent methods were asked for.
        primary = PreclusionReport(Fraction(0), "no_perfect_matching")
    primary.cross_check = values
    primary.info["has_perfect_matching"] = has_pm
    return primary
