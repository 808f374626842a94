"""Instance descriptions plus the divisor expression grammar; also builds classification table rows.

An expression is a ``+``-separated list of terms, each an optional integer
coefficient ``k*`` followed by one of

* ``K``        the canonical divisor, expanded to ``2*inf``
* ``inf``      the point at infinity
* ``(x,y)``    an affine rational point
* ``rand(n)``  n random affine points with distinct, fresh x-coordinates,
               none of them a Weierstrass point

so that ``2*K + (0,0) + rand(1)`` is a degree-6 divisor.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import asdict, dataclass, field
from typing import Iterable

from . import poly as P
from .curve import INF, MAX_AFFINE_MULTIPLICITY, Curve, DivClass, Divisor, Point, make_curve
from .errors import (
    DegreeTooSmall,
    ExpressionError,
    InputError,
    InsufficientPoints,
    NoAdmissibleD,
    UnsupportedMultiplicity,
)
from .scroll import Instance, ScrollType
from .series import affine_points, contains_s_conditions, embed, random_g13, rr_space

DEFAULT_P = 10007
MAX_D = 16

_TERM = re.compile(
    r"""^\s*(?:(?P<k>[+-]?\d+)\s*\*\s*)?
        (?:(?P<K>K)|(?P<inf>inf)
          |\(\s*(?P<x>-?\d+)\s*,\s*(?P<y>-?\d+)\s*\)
          |rand\(\s*(?P<n>\d+)\s*\))\s*$""",
    re.VERBOSE,
)


# ---------------------------------------------------------------------------
# points and the grammar


def fresh_points(C: Curve, rng: random.Random, n: int, avoid_x: Iterable[int] = (), max_tries: int | None = None) -> list[Point]:
    """n random non-Weierstrass affine points whose x-coordinates are distinct and not in ``avoid_x``."""
    used = set(avoid_x)
    pool = sorted({pt.x for pt in affine_points(C) if not C.is_weierstrass(pt)} - used)
    if len(pool) < n:
        raise InsufficientPoints(f"only {len(pool)} usable x-coordinates over F_{C.p}, need {n}")
    out = []
    for x in rng.sample(pool, n):
        y = P.sqrt_mod(P.evaluate(C.f, x, C.p), C.p)
        out.append(Point(x, y if rng.random() < 0.5 else C.p - y))
    return out


def parse_divisor(expr: str, C: Curve, rng: random.Random) -> Divisor:
    """Evaluate a divisor expression on ``C``; ``rand`` terms draw from ``rng``."""
    if not expr or not expr.strip():
        raise ExpressionError("empty divisor expression")
    fixed: list[tuple[Point, int]] = []
    rands: list[tuple[int, int]] = []
    for raw in expr.split("+"):
        m = _TERM.match(raw)
        if m is None:
            raise ExpressionError(f"cannot parse term {raw.strip()!r} in {expr!r}")
        k = int(m["k"]) if m["k"] is not None else 1
        if m["K"]:
            fixed.append((INF, 2 * k))
        elif m["inf"]:
            fixed.append((INF, k))
        elif m["n"] is not None:
            rands.append((k, int(m["n"])))
        else:
            pt = Point(int(m["x"]) % C.p, int(m["y"]) % C.p)
            if not C.on_curve(pt):
                raise ExpressionError(f"{pt!r} is not on y^2 = {P.to_str(C.f)} over F_{C.p}")
            fixed.append((pt, k))
    div = Divisor(fixed)
    avoid = {pt.x for pt in div if not pt.is_inf}
    for k, n in rands:
        pts = fresh_points(C, rng, n, avoid)
        avoid.update(pt.x for pt in pts)
        div = div + Divisor((pt, k) for pt in pts)
    for pt, mult in div.affine().items():
        if abs(mult) > MAX_AFFINE_MULTIPLICITY:
            raise UnsupportedMultiplicity(f"multiplicity {mult} at {pt!r} in {expr!r}")
    return div


def format_divisor(div: Divisor) -> str:
    """Inverse of :func:`parse_divisor` on rand-free expressions."""
    if not div:
        return "0*inf"
    terms = []
    for pt, m in div.items():
        atom = "inf" if pt.is_inf else f"({pt.x},{pt.y})"
        terms.append(atom if m == 1 else f"{m}*{atom}")
    return " + ".join(terms)


def representative(C: Curve, cls: DivClass, rng: random.Random, avoid_x: Iterable[int] = (), max_tries: int = 500) -> Divisor:
    """An effective divisor with rational support and multiplicities <= 2 in a class of degree >= 2.

    Random fresh points absorb all but two units of degree; the residual
    degree-2 class is effective and its Mumford divisor is used whenever u
    splits over F_p.
    """
    n = cls.degree
    if n < 2:
        raise ValueError("representative() needs degree >= 2")
    avoid = set(avoid_x)
    for _ in range(max_tries):
        pts = fresh_points(C, rng, n - 2, avoid) if n > 2 else []
        rest = C.sub(cls, C.class_of(Divisor.of(*pts)))
        tail = C.mumford_divisor(rest)
        if tail is None or not tail.is_effective():
            continue
        div = Divisor.of(*pts) + tail
        if all(m <= MAX_AFFINE_MULTIPLICITY for _, m in div.affine().items()):
            return div
    raise InsufficientPoints(f"no rational representative found for {cls!r}")


def default_f(p: int, seed: int = 0) -> tuple[int, ...]:
    """x^5 - x, or a random monic squarefree quintic when that is singular mod p."""
    f = P.norm((0, -1, 0, 0, 0, 1), p)
    rng = random.Random(f"f:{p}:{seed}")
    while not P.squarefree(f, p):
        f = P.norm([rng.randrange(p) for _ in range(5)] + [1], p)
    return f


# ---------------------------------------------------------------------------
# specs


@dataclass
class InstanceSpec:
    """Everything needed to rebuild an instance from its seed."""

    p: int = DEFAULT_P
    f: list[int] | None = None
    d: int | None = None
    H: str | None = None
    D: str = "random"
    seed: int = 0

    def resolved(self) -> "InstanceSpec":
        """Copy with the default f and H filled in."""
        f = list(self.f) if self.f is not None else list(default_f(self.p, self.seed))
        if self.d is None and self.H is None:
            raise InputError("a spec needs d or an H expression")
        H = self.H if self.H is not None else f"rand({self.d})"
        return InstanceSpec(self.p, f, self.d, H, self.D, self.seed)

    def to_json(self) -> str:
        return json.dumps(asdict(self.resolved()), sort_keys=True)

    @classmethod
    def from_dict(cls, obj: dict) -> "InstanceSpec":
        unknown = set(obj) - {"p", "f", "d", "H", "D", "seed"}
        if unknown:
            raise InputError(f"unknown instance fields: {sorted(unknown)}")
        try:
            return cls(
                p=int(obj.get("p", DEFAULT_P)),
                f=[int(c) for c in obj["f"]] if obj.get("f") is not None else None,
                d=int(obj["d"]) if obj.get("d") is not None else None,
                H=obj.get("H"),
                D=obj.get("D", "random") or "random",
                seed=int(obj.get("seed", 0)),
            )
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed instance: {exc}") from exc


def build_instance(spec: InstanceSpec, require_admissible: bool = True, max_tries: int = 2000) -> Instance:
    """The embedding by |H| together with the g13 |D| described by ``spec``.

    A random D is rejection-sampled to be basepoint-free with a scroll that
    does not contain the g12-scroll.  An explicit D failing that test raises
    :class:`NoAdmissibleD` when ``require_admissible`` is set.
    """
    spec = spec.resolved()
    if spec.d is not None and spec.d < 6:
        raise DegreeTooSmall(f"d = {spec.d}; need d >= 6")
    if spec.d is not None and spec.d > MAX_D:
        raise InputError(f"d = {spec.d} exceeds the cap {MAX_D}")
    if len(spec.f) != 6:
        raise InputError(f"f needs 6 coefficients c0..c5, got {len(spec.f)}")
    C = make_curve(spec.p, spec.f)
    rng = random.Random(f"{spec.seed}:build")
    Hdiv = parse_divisor(spec.H, C, rng)
    if spec.d is not None and Hdiv.degree != spec.d:
        raise InputError(f"H = {spec.H!r} has degree {Hdiv.degree}, but d = {spec.d}")
    if not Hdiv.is_effective():
        raise InputError(f"H = {spec.H!r} is not effective")
    emb = embed(C, Hdiv)
    spec.d = emb.d
    if spec.D.strip() == "random":
        try:
            D = random_g13(C, rng, force_basepoint_free=True, H=emb.H.cls, max_tries=max_tries)
        except InsufficientPoints as exc:
            raise NoAdmissibleD(str(exc)) from exc
    else:
        Ddiv = parse_divisor(spec.D, C, rng)
        if Ddiv.degree != 3 or not Ddiv.is_effective():
            raise InputError(f"D = {spec.D!r} must be effective of degree 3")
        D = rr_space(C, Ddiv)
        if require_admissible and contains_s_conditions(C, emb.H.cls, D.cls):
            raise NoAdmissibleD(f"the scroll of |{spec.D}| contains the g12-scroll")
    return Instance(emb, D, seed=spec.seed, label=f"p={spec.p} d={emb.d} seed={spec.seed}", spec=spec)


def load_spec(path: str) -> InstanceSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(obj, dict):
        raise InputError(f"{path}: expected a JSON object")
    return InstanceSpec.from_dict(obj)


# ---------------------------------------------------------------------------
# table constructions


@dataclass
class TableCase:
    """One instantiated row of a classification table."""

    table: str
    row: str
    d: int
    expected: ScrollType
    instance: Instance
    notes: dict = field(default_factory=dict)


def _instance(C: Curve, Hcls: DivClass, Ddiv: Divisor, rng: random.Random, label: str, seed: int) -> Instance:
    avoid = {pt.x for pt in Ddiv if not pt.is_inf}
    Hdiv = representative(C, Hcls, rng, avoid)
    emb = embed(C, Hdiv)
    return Instance(emb, rr_space(C, Ddiv), seed=seed, label=label)


def _bpf_triple(C: Curve, rng: random.Random, avoid_x=()) -> Divisor:
    """Three fresh points forming a basepoint-free g13."""
    K = C.canonical_class()
    while True:
        D = Divisor.of(*fresh_points(C, rng, 3, avoid_x))
        if not C.is_effective(C.sub(C.class_of(D), K)):
            return D


def s_table_cases(C: Curve, d: int, seed: int = 0) -> list[TableCase]:
    """Both rows of the g12-scroll classification for degree d."""
    rng = random.Random(f"s-table:{d}:{seed}")
    K = C.canonical_class()
    Kdiv = Divisor.infinity(2)
    out = []
    if d % 2 == 0:
        h = (d - 2) // 2
        out.append(TableCase("S", "H=(d/2)K", d, ScrollType((d // 2, (d - 6) // 2)),
                             _instance(C, C.mul(d // 2, K), Kdiv, rng, "S:H=(d/2)K", seed)))
        while True:
            Pp, Q = fresh_points(C, rng, 2)
            if C.class_of(Divisor.of(Pp, Q)) != K:
                break
        Hcls = C.add(C.mul(h, K), C.class_of(Divisor.of(Pp, Q)))
        out.append(TableCase("S", "H-((d-2)/2)K=P+Q", d, ScrollType((h, (d - 4) // 2)),
                             _instance(C, Hcls, Kdiv, rng, "S:P+Q", seed)))
    else:
        h = (d - 3) // 2
        (Pp,) = fresh_points(C, rng, 1)
        Hcls = C.add(C.mul(h + 1, K), C.point_class(Pp))
        out.append(TableCase("S", "H=((d-1)/2)K+P", d, ScrollType(((d - 1) // 2, (d - 5) // 2)),
                             _instance(C, Hcls, Kdiv, rng, "S:K+P", seed)))
        while True:
            G = C.class_of(Divisor.of(*fresh_points(C, rng, 3)))
            if not C.is_effective(C.sub(G, K)):
                break
        Hcls = C.add(C.mul(h, K), G)
        out.append(TableCase("S", "H-((d-3)/2)K=P+Q+R", d, ScrollType((h, h)),
                             _instance(C, Hcls, Kdiv, rng, "S:P+Q+R", seed)))
    return out


def v_table_cases(C: Curve, d: int, seed: int = 0) -> list[TableCase]:
    """Rows of the g13-scroll table for degree d: two mod-3 rows and two basepoint rows."""
    rng = random.Random(f"v-table:{d}:{seed}")
    K = C.canonical_class()
    out = []
    r = d % 3
    D = _bpf_triple(C, rng)
    Dc = C.class_of(D)
    avoid = {pt.x for pt in D}
    if r == 0:
        m = d // 3
        rows = [("mod3:0:G=D", C.mul(m, Dc), (m, m - 2, m - 2))]
        while True:
            G = C.class_of(Divisor.of(*fresh_points(C, rng, 3, avoid)))
            if G != Dc:
                break
        rows.append(("mod3:0:G!=D", C.add(C.mul(m - 1, Dc), G), (m - 1, m - 1, m - 2)))
    elif r == 1:
        m = (d - 1) // 3
        (Q,) = fresh_points(C, rng, 1, avoid)
        rows = [("mod3:1:G>=0", C.add(C.mul(m, Dc), C.point_class(Q)), (m, m - 1, m - 2))]
        while True:
            G = C.class_of(Divisor.of(*fresh_points(C, rng, 2, avoid)) - Divisor.infinity(1))
            if not C.is_effective(G):
                break
        rows.append(("mod3:1:G=0", C.add(C.mul(m, Dc), G), (m - 1, m - 1, m - 1)))
    else:
        m = (d - 2) // 3
        rows = [("mod3:2:G=K", C.add(C.mul(m, Dc), K), (m, m, m - 2))]
        while True:
            G = C.class_of(Divisor.of(*fresh_points(C, rng, 2, avoid)))
            if G != K:
                break
        rows.append(("mod3:2:G!=K", C.add(C.mul(m, Dc), G), (m, m - 1, m - 1)))
    for row, Hcls, es in rows:
        if min(es) < 0 or sum(es) < 2:
            continue
        out.append(TableCase("V", row, d, ScrollType(es), _instance(C, Hcls, D, rng, f"V:{row}", seed)))

    # basepoint rows, D = K + P
    (Pp,) = fresh_points(C, rng, 1)
    Dbp = Divisor.infinity(2) + Divisor.of(Pp)
    if d % 2 == 0:
        h = (d - 2) // 2
        (Q,) = fresh_points(C, rng, 1, {Pp.x})
        Hcls = C.combine((h, K), (1, C.point_class(Pp)), (1, C.point_class(Q)))
        full = ("bp:even:G>=0", Hcls, (h, (d - 6) // 2, 0))
        while True:
            G = C.class_of(Divisor.of(*fresh_points(C, rng, 2, {Pp.x})) - Divisor.infinity(1))
            if not C.is_effective(G):
                break
        empty = ("bp:even:G=0", C.combine((h, K), (1, C.point_class(Pp)), (1, G)), ((d - 4) // 2, (d - 4) // 2, 0))
    else:
        h = (d - 1) // 2
        full = ("bp:odd:G=0", C.combine((h, K), (1, C.point_class(Pp))), (h, (d - 7) // 2, 0))
        while True:
            G = C.class_of(Divisor.of(*fresh_points(C, rng, 1, {Pp.x})) - Divisor.infinity(1))
            if G != C.identity:
                break
        empty = ("bp:odd:G!=0", C.combine((h, K), (1, C.point_class(Pp)), (1, G)), ((d - 3) // 2, (d - 5) // 2, 0))
    for row, Hcls, es in (full, empty):
        if min(es) < 0 or sum(es) < 2:
            continue
        out.append(TableCase("V", row, d, ScrollType(es), _instance(C, Hcls, Dbp, rng, f"V:{row}", seed)))
    return out


D7_TYPES = {
    1: (1, 1, 1), 2: (1, 1, 1), 3: (1, 1, 1), 4: (2, 1, 0), 5: (2, 1, 0),
    6: (2, 1, 0), 7: (2, 1, 0), 8: (2, 1, 0), 9: (2, 1, 0), 10: (3, 0, 0),
}

D7_ROWS = {
    1: "H = D + 2K",
    2: "H = D + K + Q1 + Q2, generic",
    3: "H = D + K + Q1 + Q2, D = Q1' + Q2' + R",
    4: "H = D + K + Q1 + Q2, D = Q1 + Q2 + R",
    5: "H = D + K + Q1 + Q2, D = Q1 + Q2 + R and D = Q1' + Q2' + R''",
    6: "H = 2K + P + Q1 + Q2, D = K + P, generic",
    7: "H = 2K + P + P' + Q, D = K + P",
    8: "H = 2K + 2P + Q, D = K + P, 2P not in |K|",
    9: "H = 2K + 2P + Q, D = K + P, 2P in |K|",
    10: "H = 3K + P, D = K + P",
}


def d7_row(C: Curve, Hcls: DivClass, Dcls: DivClass) -> int:
    """Row of the d = 7 table that the pair (|H|, |D|) falls in."""
    from .errors import NoRowMatched

    if Hcls.degree != 7 or Dcls.degree != 3:
        raise NoRowMatched(f"degrees ({Hcls.degree}, {Dcls.degree}) are not (7, 3)")
    K = C.canonical_class()
    eff = C.is_effective
    Pp = C.effective_point(C.sub(Dcls, K))
    if Pp is None:
        E = C.combine((1, Hcls), (-1, Dcls), (-1, K))
        if E == K:
            return 1
        a = eff(C.sub(Dcls, E))
        b = eff(C.combine((1, Dcls), (1, E), (-2, K)))
        return {(False, False): 2, (False, True): 3, (True, False): 4, (True, True): 5}[(a, b)]
    Pc = C.point_class(Pp)
    E = C.combine((1, Hcls), (-2, K), (-1, Pc))
    if E == K:
        return 10
    if eff(C.sub(E, Pc)):
        return 9 if C.is_weierstrass(Pp) else 8
    if eff(C.combine((1, E), (1, Pc), (-1, K))):
        return 7
    return 6


def d7_cases(C: Curve, seed: int = 0, max_tries: int = 2000) -> list[TableCase]:
    """One instance for each of the ten rows of the d = 7 table."""
    rng = random.Random(f"d7:{seed}")
    K = C.canonical_class()
    Kdiv = Divisor.infinity(2)
    pc = C.point_class
    cases: dict[int, TableCase] = {}

    def add(row: int, Hcls: DivClass, Ddiv: Divisor, **notes):
        inst = _instance(C, Hcls, Ddiv, rng, f"d7:{row}", seed)
        cases[row] = TableCase("d7", str(row), 7, ScrollType(D7_TYPES[row]), inst, notes)

    def bpf(div: Divisor) -> bool:
        return not C.is_effective(C.sub(C.class_of(div), K))

    for _ in range(max_tries):
        if len(cases) >= 5:
            break
        Q1, Q2, R = fresh_points(C, rng, 3)
        E = C.class_of(Divisor.of(Q1, Q2))
        if E == K:
            continue
        if 1 not in cases:
            D = _bpf_triple(C, rng)
            add(1, C.add(C.class_of(D), C.mul(2, K)), D)
        for row, D in (
            (2, _bpf_triple(C, rng, {Q1.x, Q2.x})),
            (3, Divisor.of(C.involution(Q1), C.involution(Q2), R)),
            (4, Divisor.of(Q1, Q2, R)),
        ):
            if row in cases or not bpf(D):
                continue
            Hcls = C.combine((1, C.class_of(D)), (1, K), (1, E))
            if d7_row(C, Hcls, C.class_of(D)) == row:
                add(row, Hcls, D)
        if 5 not in cases:
            Y = C.combine((2, K), (-2, pc(Q1)), (-2, pc(Q2)))
            split = C.mumford_divisor(C.add(Y, K))
            if split is None or not split.is_effective():
                continue
            pts = [pt for pt, m in split.items() for _ in range(m)]
            for R5, R3 in ((pts[0], pts[1]), (pts[1], pts[0])):
                if R5.is_inf or R5.x in (Q1.x, Q2.x):
                    continue
                D = Divisor.of(Q1, Q2, R5)
                if not bpf(D):
                    continue
                Hcls = C.combine((1, C.class_of(D)), (1, K), (1, E))
                if d7_row(C, Hcls, C.class_of(D)) == 5:
                    add(5, Hcls, D, R_conj=repr(C.involution(R3)))
                    break

    for _ in range(max_tries):
        if len(cases) == 10:
            break
        Pp, Q1, Q2 = fresh_points(C, rng, 3)
        Dbp = Kdiv + Divisor.of(Pp)
        rows = {
            6: C.combine((2, K), (1, pc(Pp)), (1, pc(Q1)), (1, pc(Q2))),
            7: C.combine((2, K), (1, pc(Pp)), (1, pc(C.involution(Pp))), (1, pc(Q1))),
            8: C.combine((2, K), (2, pc(Pp)), (1, pc(Q1))),
            10: C.combine((3, K), (1, pc(Pp))),
        }
        for row, Hcls in rows.items():
            if row not in cases and d7_row(C, Hcls, C.class_of(Dbp)) == row:
                add(row, Hcls, Dbp)
        if 9 not in cases:
            W = C.weierstrass_points[0]
            Dw = Kdiv + Divisor.of(W)
            Hcls = C.combine((2, K), (2, pc(W)), (1, pc(Q1)))
            if d7_row(C, Hcls, C.class_of(Dw)) == 9:
                add(9, Hcls, Dw)
    if len(cases) != 10:
        raise InsufficientPoints(f"could only build d=7 rows {sorted(cases)}")
    return [cases[r] for r in sorted(cases)]
