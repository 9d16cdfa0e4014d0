"""Symbolic convex bodies: parsing, membership, gauges, polars, envelopes.

A body description is a small JSON document:

    {"type": "pball", "dim": 3, "p": 1.5}
    {"type": "product", "p": 2, "left": {...}, "right": {...}}
    {"type": "revolution", "dim": 4, "profile": "pball:3"}
    {"type": "linear", "matrix": [[1, 1], [0, 1]], "inner": {...}}
    {"type": "simplex", "dim": 2}
    {"type": "interval"}

with "p" a number in [1, inf] or the string "inf", and profiles in the
revolution-module grammar.  parse -> serialize reproduces the canonical form
bit-exactly.

Membership oracles are exact comparisons on computed gauges (boundary counts
as inside; no tolerance).  The polar of every variant resolves structurally:

    (B_p^n) deg = B_q^n            (dual exponent)
    (A x_p B) deg = A deg x_q B deg
    (T K) deg = T^{-T} K deg
    revolution deg = revolution with the envelope polar profile
    simplex deg = the simplex scaled by -n (vertices -n v_i)

so polar membership is primal membership in the resolved body.  The regular
simplex is the single non-symmetric variant (flagged via .symmetric); its
n+1 unit vertices have pairwise inner product -1/n and sum to zero, which
makes the -n scaling of the polar exact.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .revolution import RevolutionProfile, parse_profile, polar_profile, profile_to_json

PRIMAL = "primal"
POLAR = "polar"

_COND_LIMIT = 1e14


def _check_side(side: str) -> str:
    if side not in (PRIMAL, POLAR):
        raise DomainError(f"side must be 'primal' or 'polar', got {side!r}")
    return side


def _parse_p(value) -> float:
    if isinstance(value, str):
        if value.strip().lower() == "inf":
            return math.inf
        raise DomainError(f"p must be a number or the string \"inf\", got {value!r}")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DomainError(f"p must be a number or the string \"inf\", got {value!r}")
    p = float(value)
    if math.isnan(p) or p < 1.0:
        raise DomainError(f"p must lie in [1, inf], got {p!r}")
    return p


def _p_to_json(p: float):
    return "inf" if math.isinf(p) else p


def _dual(p: float) -> float:
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True)
class Interval:
    """The 1-dimensional body [-1, 1]; self-polar."""

    dim: int = 1
    symmetric: bool = True


@dataclass(frozen=True)
class PBall:
    dim: int
    p: float
    symmetric: bool = True


@dataclass(frozen=True)
class Product:
    """x_p product: gauge is the l_p combination of the factor gauges."""

    p: float
    left: object
    right: object
    symmetric: bool = True

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim


@dataclass(frozen=True)
class Revolution:
    dim: int
    profile: RevolutionProfile
    symmetric: bool = True


@dataclass(frozen=True)
class LinearImage:
    matrix: np.ndarray
    inner: object
    inverse: np.ndarray = field(repr=False, default=None)
    op_norm: float = 0.0
    cond: float = 0.0

    @property
    def dim(self) -> int:
        return self.inner.dim

    @property
    def symmetric(self) -> bool:
        return self.inner.symmetric


@dataclass(frozen=True)
class Simplex:
    """Regular simplex: n+1 unit vertices, centroid at the origin."""

    dim: int
    symmetric: bool = False

    @property
    def vertices(self) -> np.ndarray:
        return _simplex_vertices(self.dim)


_SIMPLEX_CACHE = {}


def _simplex_vertices(n: int) -> np.ndarray:
    """(n+1, n) array of unit vertices with pairwise inner product -1/n.

    Built from the centered standard basis of R^{n+1} expressed in an
    orthonormal basis of the hyperplane orthogonal to (1, ..., 1).
    """
    if n in _SIMPLEX_CACHE:
        return _SIMPLEX_CACHE[n]
    ones = np.ones((1, n + 1))
    # SVD right-singular vectors: rows 1..n span the complement of ones
    _, _, vt = np.linalg.svd(ones, full_matrices=True)
    basis = vt[1:]  # (n, n+1), orthonormal
    centered = np.eye(n + 1) - 1.0 / (n + 1)
    verts = centered @ basis.T / math.sqrt(n / (n + 1.0))
    norms = np.linalg.norm(verts, axis=1)
    gram = verts @ verts.T
    off = gram[~np.eye(n + 1, dtype=bool)]
    if np.max(np.abs(norms - 1.0)) > 1e-12 or np.max(np.abs(off + 1.0 / n)) > 1e-12:
        raise DomainError(f"simplex vertex construction failed for dim {n}")
    _SIMPLEX_CACHE[n] = verts
    return verts


def _simplex_facet_scale(n: int) -> float:
    """One-sided inflation absorbing dot-product rounding at the vertices.

    The facet test max_j <x, -n v_j> <= 1 holds with equality at every vertex,
    and the computed dot of unit vectors can land up to n * 2^-53 above the
    true value.  Shrinking the facet normals by (1 + 4n * 2^-53) keeps every
    computed vertex gauge at <= 1, so vertices are deterministically inside
    under exact comparisons.  The represented body is the simplex inflated by
    < 1e-14 relative -- invisible at any tolerance in use.
    """
    return 1.0 / (1.0 + 4.0 * n * 2.0**-53)


def make_linear_image(matrix, inner) -> LinearImage:
    T = np.array(matrix, dtype=np.float64)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise DomainError(f"matrix must be square, got shape {T.shape}")
    if not np.all(np.isfinite(T)):
        raise DomainError("matrix contains non-finite entries")
    if T.shape[0] != inner.dim:
        raise DomainError(
            f"matrix is {T.shape[0]}x{T.shape[1]} but the inner body has "
            f"dimension {inner.dim}"
        )
    svals = np.linalg.svd(T, compute_uv=False)
    smax, smin = float(svals[0]), float(svals[-1])
    if smin == 0.0 or smax / smin > _COND_LIMIT:
        cond = math.inf if smin == 0.0 else smax / smin
        raise DomainError(f"matrix is numerically singular (condition {cond:.3e})")
    return LinearImage(
        matrix=T,
        inner=inner,
        inverse=np.linalg.inv(T),
        op_norm=smax,
        cond=smax / smin,
    )


# ---------------------------------------------------------------------------
# parse / serialize
# ---------------------------------------------------------------------------


def _require_keys(obj: dict, required: set, optional: set = frozenset()):
    keys = set(obj.keys())
    missing = required - keys
    unknown = keys - required - optional
    if missing:
        raise DomainError(f"body description missing keys {sorted(missing)}")
    if unknown:
        raise DomainError(f"body description has unknown keys {sorted(unknown)}")


def _parse_dim(obj) -> int:
    dim = obj.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int):
        raise DomainError(f"dim must be an integer, got {dim!r}")
    if dim < 1:
        raise DomainError(f"dim must be >= 1, got {dim}")
    return dim


def _parse_obj(obj) -> object:
    if not isinstance(obj, dict):
        raise DomainError(f"body description must be an object, got {type(obj).__name__}")
    btype = obj.get("type")
    if btype == "pball":
        _require_keys(obj, {"type", "dim", "p"})
        return PBall(dim=_parse_dim(obj), p=_parse_p(obj["p"]))
    if btype == "product":
        _require_keys(obj, {"type", "p", "left", "right"})
        return Product(
            p=_parse_p(obj["p"]),
            left=_parse_obj(obj["left"]),
            right=_parse_obj(obj["right"]),
        )
    if btype == "revolution":
        _require_keys(obj, {"type", "dim", "profile"})
        dim = _parse_dim(obj)
        if dim < 2:
            raise DomainError("revolution bodies need dim >= 2")
        return Revolution(dim=dim, profile=parse_profile(obj["profile"]))
    if btype == "linear":
        _require_keys(obj, {"type", "matrix", "inner"})
        return make_linear_image(obj["matrix"], _parse_obj(obj["inner"]))
    if btype == "simplex":
        _require_keys(obj, {"type", "dim"})
        dim = _parse_dim(obj)
        _simplex_vertices(dim)  # construct (and sanity-check) eagerly
        return Simplex(dim=dim)
    if btype == "interval":
        _require_keys(obj, {"type"}, {"dim"})
        if "dim" in obj and obj["dim"] != 1:
            raise DomainError("interval is 1-dimensional")
        return Interval()
    raise DomainError(f"unknown body type {btype!r}")


def parse_body(text) -> object:
    """BodySpec from a JSON document (text or already-parsed object)."""
    if isinstance(text, (dict,)):
        return _parse_obj(text)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"body description is not valid JSON at position {exc.pos}: {exc.msg}")
    return _parse_obj(obj)


def _to_jsonable(spec) -> object:
    if isinstance(spec, PBall):
        return {"type": "pball", "dim": spec.dim, "p": _p_to_json(spec.p)}
    if isinstance(spec, Product):
        return {
            "type": "product",
            "p": _p_to_json(spec.p),
            "left": _to_jsonable(spec.left),
            "right": _to_jsonable(spec.right),
        }
    if isinstance(spec, Revolution):
        return {
            "type": "revolution",
            "dim": spec.dim,
            "profile": profile_to_json(spec.profile),
        }
    if isinstance(spec, LinearImage):
        return {
            "type": "linear",
            "matrix": [[float(v) for v in row] for row in spec.matrix],
            "inner": _to_jsonable(spec.inner),
        }
    if isinstance(spec, Simplex):
        return {"type": "simplex", "dim": spec.dim}
    if isinstance(spec, Interval):
        return {"type": "interval"}
    raise DomainError(f"not a body spec: {spec!r}")


def serialize_body(spec) -> str:
    """Canonical JSON for the body; parse(serialize(.)) round-trips bit-exactly."""
    return json.dumps(_to_jsonable(spec), separators=(", ", ": "))


# ---------------------------------------------------------------------------
# gauges and membership
# ---------------------------------------------------------------------------


def _pnorm_rows(pts: np.ndarray, p: float) -> np.ndarray:
    """Row-wise l_p norms, max-factored so any p in [1, inf] is overflow-safe."""
    a = np.abs(pts)
    m = a.max(axis=1)
    if math.isinf(p):
        return m
    out = np.zeros_like(m)
    pos = m > 0.0
    if np.any(pos):
        ratios = a[pos] / m[pos, None]
        out[pos] = m[pos] * np.power(ratios, p).sum(axis=1) ** (1.0 / p)
    return out


def _combine_p(gl: np.ndarray, gr: np.ndarray, p: float) -> np.ndarray:
    if math.isinf(p):
        return np.maximum(gl, gr)
    m = np.maximum(gl, gr)
    out = np.zeros_like(m)
    pos = m > 0.0
    gl_, gr_, m_ = gl[pos], gr[pos], m[pos]
    out[pos] = m_ * ((gl_ / m_) ** p + (gr_ / m_) ** p) ** (1.0 / p)
    return out


def _revolution_gauge(spec: Revolution, pts: np.ndarray) -> np.ndarray:
    """Bisection on the scaling: feasible(l) <=> |y|/l <= r1(t/l), monotone in l.

    Bracket: l = |t| + |y| is always feasible (concavity gives r1(u) >= 1-|u|),
    l = 0 is not (except at the origin).
    """
    t = pts[:, 0]
    rho = np.linalg.norm(pts[:, 1:], axis=1)
    hi = np.abs(t) + rho
    lo = np.zeros_like(hi)
    origin = hi == 0.0
    hi_safe = np.where(origin, 1.0, hi)
    for _ in range(100):
        mid = 0.5 * (lo + hi_safe)
        r = spec.profile.values(t / mid)
        feasible = rho <= r * mid
        hi_safe = np.where(feasible, mid, hi_safe)
        lo = np.where(feasible, lo, mid)
    return np.where(origin, 0.0, hi_safe)


def gauge_batch(spec, pts: np.ndarray) -> np.ndarray:
    """Row-wise gauge (Minkowski functional) of the primal body."""
    pts = np.asarray(pts, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != spec.dim:
        raise DomainError(
            f"points must be (m, {spec.dim}), got shape {pts.shape}"
        )
    if isinstance(spec, Interval):
        return np.abs(pts[:, 0])
    if isinstance(spec, PBall):
        return _pnorm_rows(pts, spec.p)
    if isinstance(spec, Product):
        nl = spec.left.dim
        return _combine_p(
            gauge_batch(spec.left, pts[:, :nl]),
            gauge_batch(spec.right, pts[:, nl:]),
            spec.p,
        )
    if isinstance(spec, Revolution):
        return _revolution_gauge(spec, pts)
    if isinstance(spec, LinearImage):
        return gauge_batch(spec.inner, pts @ spec.inverse.T)
    if isinstance(spec, Simplex):
        # facet form: K = {x : <x, -n v_j> <= 1 for every vertex}
        scale = -spec.dim * _simplex_facet_scale(spec.dim)
        return (pts @ spec.vertices.T * scale).max(axis=1)
    raise DomainError(f"not a body spec: {spec!r}")


def polar_body(spec) -> object:
    """Structural polar resolution (see module docstring for the rules)."""
    if isinstance(spec, Interval):
        return Interval()
    if isinstance(spec, PBall):
        return PBall(dim=spec.dim, p=_dual(spec.p))
    if isinstance(spec, Product):
        return Product(
            p=_dual(spec.p), left=polar_body(spec.left), right=polar_body(spec.right)
        )
    if isinstance(spec, Revolution):
        return Revolution(dim=spec.dim, profile=polar_profile(spec.profile))
    if isinstance(spec, LinearImage):
        inv_t = np.ascontiguousarray(spec.inverse.T)
        return make_linear_image(inv_t, polar_body(spec.inner))
    if isinstance(spec, Simplex):
        return make_linear_image(
            -float(spec.dim) * np.eye(spec.dim), Simplex(dim=spec.dim)
        )
    raise DomainError(f"not a body spec: {spec!r}")


def resolve_side(spec, side: str) -> object:
    return spec if _check_side(side) == PRIMAL else polar_body(spec)


def membership_batch(spec, side: str, pts: np.ndarray) -> np.ndarray:
    """Boolean row-wise membership; boundary points count as inside."""
    body = resolve_side(spec, side)
    pts = np.asarray(pts, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != body.dim:
        raise DomainError(f"points must be (m, {body.dim}), got shape {pts.shape}")
    if isinstance(body, Revolution):
        # direct section test: cheaper and exact, no gauge bisection
        t = pts[:, 0]
        rho = np.linalg.norm(pts[:, 1:], axis=1)
        inside_axis = np.abs(t) <= 1.0
        r = body.profile.values(np.clip(t, -1.0, 1.0))
        return inside_axis & (rho <= r)
    return gauge_batch(body, pts) <= 1.0


def membership(spec, side: str, point) -> bool:
    point = np.asarray(point, dtype=np.float64).reshape(1, -1)
    return bool(membership_batch(spec, side, point)[0])


def bounding_radius(spec, side: str = PRIMAL) -> float:
    """Radius R with the requested body contained in R * B_2^n.

    Tight for p-balls (max(1, n^{1/2 - 1/p})), simplices (vertex norm 1,
    polar vertex norm n) and named revolution profiles; an upper bound via
    factor/operator norms elsewhere.
    """
    body = resolve_side(spec, side)
    return _radius(body)


def _radius(body) -> float:
    if isinstance(body, Interval):
        return 1.0
    if isinstance(body, PBall):
        if math.isinf(body.p):
            return math.sqrt(body.dim)
        return max(1.0, float(body.dim) ** (0.5 - 1.0 / body.p))
    if isinstance(body, Product):
        return math.hypot(_radius(body.left), _radius(body.right))
    if isinstance(body, Revolution):
        prof = body.profile
        if prof.kind == "ball":
            return 1.0
        if prof.kind == "cone":
            return 1.0
        if prof.kind == "cylinder":
            return math.sqrt(2.0)
        if prof.kind == "pball":
            return max(1.0, 2.0 ** (0.5 - 1.0 / prof.param))
        if prof.kind == "grid":
            k = prof.knots
            return float(np.sqrt(k[:, 0] ** 2 + k[:, 1] ** 2).max())
        return math.sqrt(2.0)  # polar wrapper: r2 <= 1, so sqrt(1 + 1) covers it
    if isinstance(body, LinearImage):
        return body.op_norm * _radius(body.inner)
    if isinstance(body, Simplex):
        return 1.0
    raise DomainError(f"not a body spec: {body!r}")
