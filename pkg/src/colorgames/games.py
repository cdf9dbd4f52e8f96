"""Concrete on-line games over the generic engine.

Six rule sets:

* ``gamma_INT(k)`` — closed intervals, edges by intersection, clique bound k.
* ``gamma_COCO(k)`` — an up-growing partial order presented by down-sets,
  edges by incomparability, width bound k.
* ``gamma_IOV(k)`` / ``gamma_IOV3(k)`` — intervals with strictly increasing
  left endpoints in general position, edges by overlap, clean model, clique
  bound k; the ``3`` variant relaxes the Algorithm's obligation to
  triangle-free color classes.
* ``gamma_ABS(k)`` — abstract relation rows over INC/OVL/PAR subject to the
  four composition axioms, edges by OVL, clique bound k.
* ``gamma_IFIL(k, b)`` — piecewise-linear filaments whose domains play
  ``gamma_ABS`` through the containment/overlap/disjointness translation,
  with edges given by exact curve intersection.

``with_blocks(rules, b)`` caps, for the row-based games, the number of
blocks of consecutively presented pairwise nonadjacent vertices; the block
structure is maintained greedily (a new block starts exactly when the new
vertex has an edge into the current one), which is optimal among partitions
into consecutive blocks.

Canonical move enumerators produce one representative payload per endpoint
order type (interval games), per down-set (containment game), per relation
row (abstract game), and — for filaments — one low and one high tent per
domain placement; ties with existing endpoints are never enumerated because
a tied configuration can always be perturbed into an untied one with the
same intersection pattern, so Presenter loses nothing.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .engine import GameRules, Scenario, validate_game_graph
from .errors import ResourceBudgetError, ValidationError
from .geometry import filament_value, filaments_intersect
from .jsonio import rat_from_str, rat_to_str

__all__ = [
    "INC",
    "OVL",
    "PAR",
    "IntervalGame",
    "CocoGame",
    "IovGame",
    "Iov3Game",
    "AbsGame",
    "IfilGame",
    "gamma_INT",
    "gamma_COCO",
    "gamma_IOV",
    "gamma_IOV3",
    "gamma_ABS",
    "gamma_IFIL",
    "with_blocks",
    "make_rules",
    "interval_relation_row",
    "iov_scenario_to_abs",
    "validate_int_game_graph",
    "validate_coco_game_graph",
    "validate_iov_game_graph",
    "validate_iov3_game_graph",
    "validate_abs_game_graph",
    "validate_ifil_game_graph",
]

INC = "INC"
OVL = "OVL"
PAR = "PAR"
_CODES = (INC, OVL, PAR)


def _check_k(k: int) -> int:
    if not isinstance(k, int) or k < 1:
        raise ValidationError("k must be a positive integer", k=repr(k))
    return k


def _check_b(b) -> Optional[int]:
    if b is None:
        return None
    if not isinstance(b, int) or b < 1:
        raise ValidationError("b must be a positive integer", b=repr(b))
    return b


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return rat_from_str(x)
    raise ValidationError("expected a rational value", value=repr(x))


def _interval_payload(payload) -> tuple:
    try:
        l, r = payload
    except (TypeError, ValueError):
        raise ValidationError("interval payload must be an (l, r) pair")
    l, r = _frac(l), _frac(r)
    if not l < r:
        raise ValidationError("interval payload needs l < r", l=str(l), r=str(r))
    return (l, r)


def _mask_has_clique(adj: Sequence[int], cand: int, size: int) -> bool:
    """Is there a ``size``-clique inside the candidate vertex mask?"""
    if size <= 0:
        return True
    if bin(cand).count("1") < size:
        return False
    while cand:
        v = (cand & -cand).bit_length() - 1
        cand &= cand - 1  # only cliques whose minimum is v, then later mins
        if _mask_has_clique(adj, cand & adj[v], size - 1):
            return True
    return False


def _row_masks(rows: Sequence[Sequence[str]]) -> tuple:
    """Per-vertex INC/OVL/PAR masks over earlier vertices."""
    inc = [0] * len(rows)
    ovl = [0] * len(rows)
    par = [0] * len(rows)
    for y, row in enumerate(rows):
        for x, code in enumerate(row):
            if code == INC:
                inc[y] |= 1 << x
            elif code == OVL:
                ovl[y] |= 1 << x
            else:
                par[y] |= 1 << x
    return inc, ovl, par


def _greedy_block_count(ovl_adj: Sequence[int], n: int) -> int:
    """Blocks of consecutive vertices under the greedy maintenance rule."""
    count = 0
    start = 0
    for i in range(n):
        if i == 0:
            count = 1
            start = 0
            continue
        if ovl_adj[i] >> start:
            count += 1
            start = i
    return count


def _abs_row_ok(rows: Sequence[Sequence[str]], new_row: Sequence[str], k: int, b) -> bool:
    """Axioms A1-A4, the clique bound, and the block bound for a new row.

    ``rows`` are the already-presented relation rows (assumed legal); only
    triples involving the new vertex need checking.
    """
    n = len(rows)
    inc, ovl, par = _row_masks(rows)
    z_inc = z_ovl = z_par = 0
    for x, code in enumerate(new_row):
        if code == INC:
            z_inc |= 1 << x
        elif code == OVL:
            z_ovl |= 1 << x
        else:
            z_par |= 1 << x
    # A4: x PAR y for any y forces x PAR z for every later z.
    forced_par = 0
    for y in range(n):
        forced_par |= par[y]
    if forced_par & ~z_par:
        return False
    rest = z_inc
    while rest:
        y = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        if inc[y] & ~z_inc:  # A1: x INC y, y INC z -> x INC z
            return False
        if ovl[y] & ~(z_ovl | z_par):  # A3: x OVL y, y INC z -> x OVL|PAR z
            return False
    rest = z_ovl
    while rest:
        y = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        if inc[y] & ~(z_inc | z_ovl):  # A2: x INC y, y OVL z -> x INC|OVL z
            return False
    # Clique bound on the OVL graph: the new vertex must not close a
    # (k+1)-clique, i.e. its OVL neighborhood must hold no k-clique.
    adj = [0] * n
    for y in range(n):
        rest = ovl[y]
        adj[y] |= rest
        while rest:
            x = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            adj[x] |= 1 << y
    if _mask_has_clique(adj, z_ovl, k):
        return False
    if b is not None:
        full_adj = adj + [z_ovl]
        if _greedy_block_count(full_adj, n + 1) > b:
            return False
    return True


def _gap_value(endpoints: Sequence[Fraction], i: int) -> Fraction:
    """A representative coordinate inside the i-th open gap."""
    t = len(endpoints)
    if t == 0:
        return Fraction(0)
    if i == 0:
        return endpoints[0] - 1
    if i == t:
        return endpoints[-1] + 1
    return (endpoints[i - 1] + endpoints[i]) / 2


def _gap_pair_same(endpoints: Sequence[Fraction], i: int) -> tuple:
    """Two ordered representative coordinates inside one open gap."""
    t = len(endpoints)
    if t == 0:
        return (Fraction(0), Fraction(1))
    if i == 0:
        return (endpoints[0] - 2, endpoints[0] - 1)
    if i == t:
        return (endpoints[-1] + 1, endpoints[-1] + 2)
    a, b = endpoints[i - 1], endpoints[i]
    return (a + (b - a) / 3, a + 2 * (b - a) / 3)


def _interval_candidates(endpoints, min_l=None) -> list:
    """One (l, r) pair per placement of both endpoints into open gaps.

    ``min_l`` restricts the left endpoint to gaps strictly right of it.
    """
    endpoints = sorted(set(endpoints))
    t = len(endpoints)
    if t == 0:
        return [(Fraction(0), Fraction(1))]
    if min_l is None:
        first = 0
    else:
        first = endpoints.index(min_l) + 1
    out = []
    for i in range(first, t + 1):
        for j in range(i, t + 1):
            if i == j:
                out.append(_gap_pair_same(endpoints, i))
            else:
                out.append((_gap_value(endpoints, i), _gap_value(endpoints, j)))
    return out


def _interval_json(payload) -> dict:
    return {"l": rat_to_str(payload[0]), "r": rat_to_str(payload[1])}


def _interval_from_json(data) -> tuple:
    if not isinstance(data, dict) or "l" not in data or "r" not in data:
        raise ValidationError("interval payload JSON needs 'l' and 'r'")
    return _interval_payload((data["l"], data["r"]))


class IntervalGame(GameRules):
    """Intervals, edges by intersection, clique number at most k."""

    kind = "gamma_int"

    def __init__(self, k: int):
        self.k = _check_k(k)

    @property
    def params(self) -> dict:
        return {"k": self.k}

    def edges_for(self, scenario: Scenario, payload) -> frozenset:
        l, r = _interval_payload(payload)
        return frozenset(
            j
            for j, (lj, rj) in enumerate(scenario.payloads)
            if l <= rj and lj <= r
        )

    def legal_move(self, scenario: Scenario, payload) -> bool:
        try:
            l, r = _interval_payload(payload)
        except ValidationError:
            return False
        edges = self.edges_for(scenario, (l, r))
        adj = [0] * scenario.n
        for i, es in enumerate(scenario.edge_sets):
            for j in es:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        cand = 0
        for j in edges:
            cand |= 1 << j
        return not _mask_has_clique(adj, cand, self.k)

    def enumerate_moves(self, scenario: Scenario) -> list:
        endpoints = [c for iv in scenario.payloads for c in iv]
        return [
            p
            for p in _interval_candidates(endpoints)
            if self.legal_move(scenario, p)
        ]

    def payload_to_json(self, payload):
        return _interval_json(payload)

    def payload_from_json(self, data):
        return _interval_from_json(data)

    def __repr__(self):
        return f"{type(self).__name__}({self.params})"


class CocoGame(GameRules):
    """An up-growing order presented by down-sets; edges join incomparable
    pairs; every antichain stays within k elements."""

    kind = "gamma_coco"

    def __init__(self, k: int):
        self.k = _check_k(k)

    @property
    def params(self) -> dict:
        return {"k": self.k}

    def _payload(self, payload) -> frozenset:
        if not isinstance(payload, frozenset):
            payload = frozenset(int(v) for v in payload)
        return payload

    def edges_for(self, scenario: Scenario, payload) -> frozenset:
        down = self._payload(payload)
        return frozenset(range(scenario.n)) - down

    def legal_move(self, scenario: Scenario, payload) -> bool:
        try:
            down = self._payload(payload)
        except (TypeError, ValueError):
            return False
        n = scenario.n
        if any(not 0 <= u < n for u in down):
            return False
        if any(not scenario.payloads[u] <= down for u in down):
            return False  # the declared down-set must be downward closed
        # Width: the new vertex is incomparable exactly to the complement,
        # so it must not extend an antichain of size k.
        adj = [0] * n
        for y in range(n):
            for x in range(y):
                if x not in scenario.payloads[y]:
                    adj[y] |= 1 << x
                    adj[x] |= 1 << y
        cand = 0
        for u in range(n):
            if u not in down:
                cand |= 1 << u
        return not _mask_has_clique(adj, cand, self.k)

    def enumerate_moves(self, scenario: Scenario) -> list:
        n = scenario.n
        if n > 16:
            raise ResourceBudgetError(
                "too many rounds to enumerate down-sets", rounds=n
            )
        down_masks = []
        for u in range(n):
            m = 0
            for v in scenario.payloads[u]:
                m |= 1 << v
            down_masks.append(m)
        out = []
        for mask in range(1 << n):
            ok = True
            rest = mask
            while rest:
                u = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if down_masks[u] & ~mask:
                    ok = False
                    break
            if not ok:
                continue
            down = frozenset(u for u in range(n) if mask >> u & 1)
            if self.legal_move(scenario, down):
                out.append(down)
        return out

    def payload_to_json(self, payload):
        return {"downset": sorted(payload)}

    def payload_from_json(self, data):
        if not isinstance(data, dict) or "downset" not in data:
            raise ValidationError("containment payload JSON needs 'downset'")
        return frozenset(int(v) for v in data["downset"])

    def __repr__(self):
        return f"{type(self).__name__}({self.params})"


def interval_relation_row(intervals: Sequence, new_interval) -> tuple:
    """INC/OVL/PAR row of a new interval versus earlier ones.

    Earlier intervals must all start strictly left of the new one (the
    overlap games present left endpoints in increasing order), so the
    earlier interval either contains the new one (INC), overlaps it (OVL),
    or lies entirely left of it (PAR).
    """
    l, r = _interval_payload(new_interval)
    row = []
    for lj, rj in intervals:
        if not lj < l:
            raise ValidationError("left endpoints must strictly increase")
        if rj < l:
            row.append(PAR)
        elif rj > r:
            row.append(INC)
        elif rj == l or rj == r:
            raise ValidationError("endpoints must be in general position")
        else:
            row.append(OVL)
    return tuple(row)


class AbsGame(GameRules):
    """Relation rows over INC/OVL/PAR obeying the composition axioms.

    Edges join OVL pairs; the OVL graph keeps clique number at most k, and
    an optional bound b caps the greedy count of blocks of consecutive
    pairwise nonadjacent vertices.
    """

    kind = "gamma_abs"

    def __init__(self, k: int, b: Optional[int] = None):
        self.k = _check_k(k)
        self.b = _check_b(b)

    @property
    def params(self) -> dict:
        d = {"k": self.k}
        if self.b is not None:
            d["b"] = self.b
        return d

    def _payload(self, payload) -> tuple:
        row = tuple(payload)
        if any(code not in _CODES for code in row):
            raise ValidationError("row codes must be INC, OVL, or PAR")
        return row

    def _rows(self, scenario: Scenario) -> tuple:
        return scenario.payloads

    def edges_for(self, scenario: Scenario, payload) -> frozenset:
        row = self._payload(payload)
        if len(row) != scenario.n:
            raise ValidationError("row length must match the round number")
        return frozenset(x for x, code in enumerate(row) if code == OVL)

    def legal_move(self, scenario: Scenario, payload) -> bool:
        try:
            row = self._payload(payload)
        except (TypeError, ValidationError):
            return False
        if len(row) != scenario.n:
            return False
        return _abs_row_ok(self._rows(scenario), row, self.k, self.b)

    def enumerate_moves(self, scenario: Scenario) -> list:
        n = scenario.n
        if n > 12:
            raise ResourceBudgetError(
                "too many rounds to enumerate relation rows", rounds=n
            )
        return [
            row
            for row in product(_CODES, repeat=n)
            if _abs_row_ok(self._rows(scenario), row, self.k, self.b)
        ]

    def payload_to_json(self, payload):
        return {"row": list(payload)}

    def payload_from_json(self, data):
        if not isinstance(data, dict) or "row" not in data:
            raise ValidationError("relation payload JSON needs 'row'")
        return self._payload(data["row"])

    def __repr__(self):
        return f"{type(self).__name__}({self.params})"


class IovGame(AbsGame):
    """Interval overlap: left endpoints strictly increase, endpoints in
    general position, model stays clean, overlap clique number at most k.

    Legality is exactly row legality of the containment/overlap/
    disjointness translation (the cleanness requirement is axiom A3 on
    derived rows), plus the geometric side conditions.
    """

    kind = "gamma_iov"

    def _payload(self, payload) -> tuple:
        return _interval_payload(payload)

    def _rows(self, scenario: Scenario) -> tuple:
        rows = []
        for i in range(scenario.n):
            rows.append(
                interval_relation_row(scenario.payloads[:i], scenario.payloads[i])
            )
        return tuple(rows)

    def edges_for(self, scenario: Scenario, payload) -> frozenset:
        row = interval_relation_row(scenario.payloads, self._payload(payload))
        return frozenset(x for x, code in enumerate(row) if code == OVL)

    def legal_move(self, scenario: Scenario, payload) -> bool:
        try:
            l, r = self._payload(payload)
        except ValidationError:
            return False
        seen = {c for iv in scenario.payloads for c in iv}
        if l in seen or r in seen:
            return False
        if any(not lj < l for lj, _ in scenario.payloads):
            return False
        row = interval_relation_row(scenario.payloads, (l, r))
        return _abs_row_ok(self._rows(scenario), row, self.k, self.b)

    def enumerate_moves(self, scenario: Scenario) -> list:
        endpoints = [c for iv in scenario.payloads for c in iv]
        min_l = max((l for l, _ in scenario.payloads), default=None)
        return [
            p
            for p in _interval_candidates(endpoints, min_l=min_l)
            if self.legal_move(scenario, p)
        ]

    def payload_to_json(self, payload):
        return _interval_json(payload)

    def payload_from_json(self, data):
        return _interval_from_json(data)


class Iov3Game(IovGame):
    """Same moves as the overlap game; Algorithm only owes triangle-free
    color classes."""

    kind = "gamma_iov3"
    obligation = "triangle-free"


class IfilGame(AbsGame):
    """Filaments whose domains play the abstract game via the containment
    translation; edges are exact curve intersections."""

    kind = "gamma_ifil"

    def _payload(self, payload) -> tuple:
        pts = tuple((_frac(x), _frac(y)) for x, y in payload)
        if len(pts) < 2:
            raise ValidationError("a filament needs at least two breakpoints")
        if any(a[0] >= b[0] for a, b in zip(pts, pts[1:])):
            raise ValidationError("filament breakpoints must increase in x")
        if pts[0][1] != 0 or pts[-1][1] != 0:
            raise ValidationError("filament height must be zero at both ends")
        if any(y < 0 for _, y in pts):
            raise ValidationError("filament heights must be non-negative")
        return pts

    @staticmethod
    def _domain(pts) -> tuple:
        return (pts[0][0], pts[-1][0])

    def _rows(self, scenario: Scenario) -> tuple:
        doms = [self._domain(p) for p in scenario.payloads]
        return tuple(
            interval_relation_row(doms[:i], doms[i]) for i in range(len(doms))
        )

    def edges_for(self, scenario: Scenario, payload) -> frozenset:
        pts = self._payload(payload)
        return frozenset(
            j
            for j, earlier in enumerate(scenario.payloads)
            if filaments_intersect(earlier, pts)
        )

    def legal_move(self, scenario: Scenario, payload) -> bool:
        try:
            pts = self._payload(payload)
        except (TypeError, ValidationError):
            return False
        l, r = self._domain(pts)
        doms = [self._domain(p) for p in scenario.payloads]
        seen = {c for d in doms for c in d}
        if l in seen or r in seen:
            return False
        if any(not lj < l for lj, _ in doms):
            return False
        row = interval_relation_row(doms, (l, r))
        return _abs_row_ok(self._rows(scenario), row, self.k, self.b)

    def enumerate_moves(self, scenario: Scenario) -> list:
        doms = [self._domain(p) for p in scenario.payloads]
        endpoints = [c for d in doms for c in d]
        min_l = max((l for l, _ in doms), default=None)
        out = []
        for l, r in _interval_candidates(endpoints, min_l=min_l):
            mid = (l + r) / 2
            containers = [
                pts
                for pts, (lj, rj) in zip(scenario.payloads, doms)
                if lj < l and r < rj
            ]
            heights = []
            if containers:
                floor = min(
                    min(
                        [filament_value(pts, l), filament_value(pts, r)]
                        + [y for x, y in pts if l < x < r]
                    )
                    for pts in containers
                )
                if floor > 0:
                    heights.append(floor / 2)  # low tent: crosses no container
                ceiling = max(y for pts in scenario.payloads for _, y in pts)
                heights.append(ceiling + 1)  # high tent: crosses all of them
            else:
                heights.append(Fraction(1))
            for h in heights:
                tent = ((l, Fraction(0)), (mid, h), (r, Fraction(0)))
                if self.legal_move(scenario, tent):
                    out.append(tent)
        return out

    def payload_to_json(self, payload):
        return {"points": [[rat_to_str(x), rat_to_str(y)] for x, y in payload]}

    def payload_from_json(self, data):
        if not isinstance(data, dict) or "points" not in data:
            raise ValidationError("filament payload JSON needs 'points'")
        return self._payload(data["points"])


def gamma_INT(k: int) -> IntervalGame:
    return IntervalGame(k)


def gamma_COCO(k: int) -> CocoGame:
    return CocoGame(k)


def gamma_IOV(k: int) -> IovGame:
    return IovGame(k)


def gamma_IOV3(k: int) -> Iov3Game:
    return Iov3Game(k)


def gamma_ABS(k: int) -> AbsGame:
    return AbsGame(k)


def gamma_IFIL(k: int, b: Optional[int] = None) -> IfilGame:
    return IfilGame(k, b)


def with_blocks(rules: GameRules, b: int) -> GameRules:
    """The (k, b) block variant of a row-based game."""
    if not isinstance(rules, AbsGame):
        raise ValidationError(
            "block variants exist for the row-based games only", kind=rules.kind
        )
    return type(rules)(rules.k, _check_b(b))


_RULE_CLASSES = {
    "gamma_int": IntervalGame,
    "gamma_coco": CocoGame,
    "gamma_iov": IovGame,
    "gamma_iov3": Iov3Game,
    "gamma_abs": AbsGame,
    "gamma_ifil": IfilGame,
}


def make_rules(kind: str, params: dict) -> GameRules:
    cls = _RULE_CLASSES.get(kind)
    if cls is None:
        raise ValidationError("unknown game kind", kind=kind)
    if "k" not in params:
        raise ValidationError("game parameters need 'k'", kind=kind)
    k = params["k"]
    b = params.get("b")
    extra = set(params) - {"k", "b"}
    if extra:
        raise ValidationError("unknown game parameters", params=sorted(extra))
    if issubclass(cls, AbsGame):
        return cls(k, b)
    if b is not None:
        raise ValidationError("this game has no block variant", kind=kind)
    return cls(k)


def iov_scenario_to_abs(scenario: Scenario) -> Scenario:
    """Translate an interval overlap scenario into relation rows.

    The rows keep the same edge sets, so legality and the derived graph are
    preserved.
    """
    out = Scenario()
    for i in range(scenario.n):
        row = interval_relation_row(scenario.payloads[:i], scenario.payloads[i])
        out = out.extend(row, frozenset(x for x, c in enumerate(row) if c == OVL))
    return out


def _validate_kind(gg, kind: str) -> bool:
    if gg.kind != kind:
        raise ValidationError(
            "game graph has the wrong payload kind", expected=kind, got=gg.kind
        )
    try:
        validate_game_graph(gg, make_rules(kind, gg.params))
    except ValidationError:
        return False
    return True


def validate_int_game_graph(gg) -> bool:
    return _validate_kind(gg, "gamma_int")


def validate_coco_game_graph(gg) -> bool:
    return _validate_kind(gg, "gamma_coco")


def validate_iov_game_graph(gg) -> bool:
    return _validate_kind(gg, "gamma_iov")


def validate_iov3_game_graph(gg) -> bool:
    return _validate_kind(gg, "gamma_iov3")


def validate_abs_game_graph(gg) -> bool:
    return _validate_kind(gg, "gamma_abs")


def validate_ifil_game_graph(gg) -> bool:
    return _validate_kind(gg, "gamma_ifil")
