"""Symplectic spreads of PG(3, q) of the form l_inf + {<(0,1,x,y), (1,0,-y,g(x,y))>}.

Projective points are handled as integer arrays of shape (..., 4) holding
field codes; a normalised point (first nonzero coordinate 1) has a dense
index in [0, q^3 + q^2 + q + 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import GF, FieldError
from .permpoly import eval_spread_g


def alternating_form(F: GF, u, v):
    """B(u, v) = u0 v3 - u3 v0 - u1 v2 + v1 u2, vectorised over leading axes."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    t = F.sub(F.mul(u[..., 0], v[..., 3]), F.mul(u[..., 3], v[..., 0]))
    t = F.sub(t, F.mul(u[..., 1], v[..., 2]))
    r = F.add(t, F.mul(v[..., 1], u[..., 2]))
    return int(r) if np.ndim(r) == 0 else r


def num_points(q: int) -> int:
    return q ** 3 + q ** 2 + q + 1


def normalize(F: GF, pts) -> np.ndarray:
    """Scale each row so its first nonzero coordinate is 1."""
    pts = np.asarray(pts, dtype=np.int64)
    nz = pts != 0
    if not nz.any(axis=-1).all():
        raise ValueError("the zero vector is not a projective point")
    first = nz.argmax(axis=-1)
    lead = np.take_along_axis(pts, first[..., None], axis=-1)
    return F.mul(pts, F.inv(lead))


def point_index(F: GF, pts) -> np.ndarray:
    """Dense index of normalised points: block by leading position, then base-q tail."""
    pts = np.asarray(pts, dtype=np.int64)
    q = F.q
    first = (pts != 0).argmax(axis=-1)
    idx = np.zeros(pts.shape[:-1], dtype=np.int64)
    offset = 0
    for k in range(4):
        tail = 3 - k
        sel = first == k
        code = np.zeros(pts.shape[:-1], dtype=np.int64)
        for j in range(tail):
            code = code + pts[..., k + 1 + j] * q ** j
        idx = np.where(sel, offset + code, idx)
        offset += q ** tail
    return idx


@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple[int, int, int, int]

    @classmethod
    def of(cls, F: GF, v) -> "ProjectivePoint":
        return cls(tuple(int(c) for c in normalize(F, np.asarray(v)[None, :])[0]))


@dataclass(frozen=True)
class SpreadLine:
    p1: tuple[int, int, int, int]
    p2: tuple[int, int, int, int]

    def points(self, F: GF) -> np.ndarray:
        """The q + 1 normalised points {P + tQ} + {Q}."""
        return line_points(F, np.array([[self.p1, self.p2]]))[0]


def line_points(F: GF, spans: np.ndarray) -> np.ndarray:
    """spans: (L, 2, 4) spanning vectors -> (L, q+1, 4) normalised points."""
    spans = np.asarray(spans, dtype=np.int64)
    P = spans[:, 0, None, :]
    Q = spans[:, 1, None, :]
    t = F.elements()[None, :, None]
    pts = F.add(np.broadcast_to(P, (spans.shape[0], F.q, 4)), F.mul(t, Q))
    pts = np.concatenate([pts, spans[:, 1:2, :]], axis=1)
    return normalize(F, pts)


class Spread:
    def __init__(self, F: GF, spans: np.ndarray):
        self.field = F
        self.spans = np.asarray(spans, dtype=np.int64)

    def __len__(self):
        return self.spans.shape[0]

    def line(self, i: int) -> SpreadLine:
        a, b = self.spans[i]
        return SpreadLine(tuple(int(c) for c in a), tuple(int(c) for c in b))

    @property
    def lines(self) -> list[SpreadLine]:
        return [self.line(i) for i in range(len(self))]

    def replace_line(self, i: int, p1, p2) -> "Spread":
        spans = self.spans.copy()
        spans[i] = [p1, p2]
        return Spread(self.field, spans)


def build_spread_from_g(F: GF, g) -> Spread:
    """l_inf plus <(0,1,x,y), (1,0,-y,g(x,y))> for all x, y; g is vectorised (F, x, y) -> codes."""
    q = F.q
    x, y = (a.ravel() for a in np.meshgrid(F.elements(), F.elements(), indexing="ij"))
    zeros = np.zeros(q * q, dtype=np.int64)
    ones = np.ones(q * q, dtype=np.int64)
    p1 = np.stack([zeros, ones, x, y], axis=1)
    p2 = np.stack([ones, zeros, F.neg(y), g(F, x, y)], axis=1)
    inf = np.array([[[0, 0, 0, 1], [0, 0, 1, 0]]], dtype=np.int64)
    spans = np.concatenate([inf, np.stack([p1, p2], axis=1)], axis=0)
    return Spread(F, spans)


def build_ree_tits_spread(F: GF) -> Spread:
    if F.p != 3 or F.m % 2 == 0:
        raise FieldError("the Ree-Tits slice spread needs q = 3^m with m odd")
    return build_spread_from_g(F, eval_spread_g)


def verify_spread(spread: Spread, chunk: int = 256) -> dict:
    """Disjointness, coverage and total isotropy; violations carry witnesses."""
    F = spread.field
    q = F.q
    npts = num_points(q)
    counts = np.zeros(npts, dtype=np.int64)
    first_line = np.full(npts, -1, dtype=np.int64)
    violations = []
    isotropic = True
    for lo in range(0, len(spread), chunk):
        spans = spread.spans[lo:lo + chunk]
        pts = line_points(F, spans)
        idx = point_index(F, pts)
        for row, line_no in enumerate(range(lo, lo + len(spans))):
            r = idx[row]
            dup = r[counts[r] > 0]
            if dup.size and len(violations) < 20:
                violations.append({"kind": "overlap", "lines": [int(first_line[dup[0]]), line_no],
                                   "point": _point_of_index(q, int(dup[0]))})
            np.add.at(counts, r, 1)
            first_line[r] = np.where(first_line[r] < 0, line_no, first_line[r])
        # every pair of points on each line
        forms = alternating_form(F, pts[:, :, None, :], pts[:, None, :, :])
        bad = np.flatnonzero((forms != 0).any(axis=(1, 2)))
        if bad.size:
            isotropic = False
            for b in bad[: max(0, 20 - len(violations))]:
                i, j = np.argwhere(forms[b] != 0)[0]
                violations.append({"kind": "not_isotropic", "line": int(lo + b),
                                   "points": [pts[b, i].tolist(), pts[b, j].tolist()]})
    disjoint = bool(counts.max() <= 1)
    cover = bool(counts.min() >= 1)
    if not cover:
        miss = int(np.flatnonzero(counts == 0)[0])
        violations.append({"kind": "uncovered", "point": _point_of_index(q, miss)})
    return {
        "lines": len(spread),
        "points": npts,
        "points_per_line": q + 1,
        "disjoint": disjoint,
        "cover": cover,
        "isotropic": isotropic,
        "ok": disjoint and cover and isotropic,
        "violations": violations,
    }


def _point_of_index(q: int, idx: int) -> list[int]:
    offset = 0
    for k in range(4):
        tail = 3 - k
        if idx < offset + q ** tail:
            code = idx - offset
            pt = [0] * 4
            pt[k] = 1
            for j in range(tail):
                pt[k + 1 + j] = code % q
                code //= q
            return pt
        offset += q ** tail
    raise IndexError(idx)


def ball_criterion_failures(g, F: GF, limit: int | None = 1) -> list[tuple[int, int]]:
    """(a, b) pairs for which x -> g(x, a x - b) + a^2 x is not a permutation."""
    q = F.q
    xs = F.elements()
    X = np.broadcast_to(xs[None, :], (q, q))
    B = np.broadcast_to(xs[:, None], (q, q))
    target = np.arange(q)
    bad = []
    for a in range(q):
        vals = F.add(g(F, X, F.sub(F.mul(a, X), B)), F.mul(F.mul(a, a), X))
        ok = (np.sort(vals, axis=1) == target).all(axis=1)
        for b in np.flatnonzero(~ok):
            bad.append((a, int(b)))
            if limit is not None and len(bad) >= limit:
                return bad
    return bad


def ball_criterion_check(g, F: GF) -> bool:
    return not ball_criterion_failures(g, F, limit=1)
