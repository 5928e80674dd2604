"""Infinite-volume spectra: union of fiber symbol curves plus the rank-one
jump curve from the secular equation, with closed forms for the built-in
models."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptySetError,
    LindbladSpectraError,
    NoSplit,
    OnSymbolCurve,
    UnsupportedModel,
)
from .laurent import branch_sqrt, symbol_curve, tridiag_inverse_element
from .model import FiberOperator, LindbladModel, fiber
from .numerics import newton_roots, parallel_map

JUMP_RESIDUAL_TOL = 1e-9
NEWTON_TOL = 1e-11
DEDUP_TOL = 1e-8


# ---------------------------------------------------------------------------
# spectrum clouds


@dataclass(frozen=True)
class SpectrumCloud:
    """Tagged complex points with their momentum of origin.

    ``tag`` entries are ``"NHE"``, ``"JUMP"`` or ``"EIG"``; ``q`` and
    ``theta`` are NaN when not applicable.  Points are stored sorted by
    ``(q, theta, real, imag)`` so repeated runs are bit-stable.
    """

    z: np.ndarray
    tag: np.ndarray
    q: np.ndarray
    theta: np.ndarray

    def __len__(self) -> int:
        return self.z.size

    @classmethod
    def build(cls, z, tag, q, theta) -> "SpectrumCloud":
        z = np.asarray(z, dtype=complex).ravel()
        tag = np.asarray(tag, dtype="U4").ravel()
        q = np.asarray(q, dtype=float).ravel()
        theta = np.asarray(theta, dtype=float).ravel()
        order = np.lexsort((z.imag, z.real, np.nan_to_num(theta, nan=-1.0),
                            np.nan_to_num(q, nan=-1.0)))
        return cls(z[order], tag[order], q[order], theta[order])

    @classmethod
    def concat(cls, clouds) -> "SpectrumCloud":
        clouds = list(clouds)
        return cls.build(
            np.concatenate([c.z for c in clouds]),
            np.concatenate([c.tag for c in clouds]),
            np.concatenate([c.q for c in clouds]),
            np.concatenate([c.theta for c in clouds]),
        )

    def select(self, tag: str) -> "SpectrumCloud":
        mask = self.tag == tag
        return SpectrumCloud(self.z[mask], self.tag[mask], self.q[mask], self.theta[mask])

    def equals(self, other: "SpectrumCloud") -> bool:
        def eq(a, b):
            return a.shape == b.shape and np.array_equal(
                np.nan_to_num(a, nan=np.inf), np.nan_to_num(b, nan=np.inf)
            )

        return (
            eq(self.z, other.z)
            and np.array_equal(self.tag, other.tag)
            and eq(self.q, other.q)
            and eq(self.theta, other.theta)
        )


def nhe_spectrum(m: LindbladModel, n_q: int, n_theta: int) -> SpectrumCloud:
    """Samples of the non-Hermitian evolution spectrum on a q x theta grid."""
    if n_q < 4 or n_theta < 4:
        raise ValueError("n_q and n_theta must be at least 4")
    qs = 2.0 * np.pi * np.arange(n_q) / n_q

    def one(q):
        return symbol_curve(fiber(m, q).t_symbol, n_theta)

    rows = parallel_map(one, qs)
    thetas = 2.0 * np.pi * np.arange(n_theta) / n_theta
    z = np.concatenate(rows)
    q = np.repeat(qs, n_theta)
    theta = np.tile(thetas, n_q)
    return SpectrumCloud.build(z, np.full(z.size, "NHE"), q, theta)


# ---------------------------------------------------------------------------
# secular equation


def secular_value(f: FiberOperator, z: complex) -> complex:
    """``g(z) = <Gamma_R| (T(q) - z)^{-1} |Gamma_L> + 1``.

    Requires the fiber to be tridiagonal and ``z`` off its symbol curve;
    zeros of ``g`` are the jump-induced spectrum at this momentum.
    """
    if not f.rank_one:
        raise UnsupportedModel("fiber perturbation is not rank one")
    if f.t_symbol.range > 1:
        raise UnsupportedModel("secular machinery requires a tridiagonal fiber")
    alpha, beta, gamma = f.t_symbol.tridiagonal()
    beta = beta - z
    w = f.gamma_radius
    total = 0j
    for j in range(-w, w + 1):
        cr = np.conj(f.gamma_r[j + w])
        if cr == 0:
            continue
        for k in range(-w, w + 1):
            cl = f.gamma_l[k + w]
            if cl == 0:
                continue
            total += cr * cl * tridiag_inverse_element(alpha, beta, gamma, j, k)
    return 1.0 + total


def jump_eigenvector(f: FiberOperator, z: complex, k_max: int) -> np.ndarray:
    """Entries ``v_k = <k| (T(q)-z)^{-1} |Gamma_L>`` for ``k in [-k_max, k_max]``.

    At a secular root these satisfy ``(T + F - z) v = 0``; the entries decay
    like ``lambda2^k`` (k > 0) and ``lambda1^{-|k|}`` (k < 0).
    """
    alpha, beta, gamma = f.t_symbol.tridiagonal()
    beta = beta - z
    w = f.gamma_radius
    out = np.zeros(2 * k_max + 1, dtype=complex)
    for idx, k in enumerate(range(-k_max, k_max + 1)):
        acc = 0j
        for j in range(-w, w + 1):
            cl = f.gamma_l[j + w]
            if cl != 0:
                acc += tridiag_inverse_element(alpha, beta, gamma, k, j) * cl
        out[idx] = acc
    return out


def _single_site(f: FiberOperator):
    """Common support site of both gamma vectors, or None."""
    w = f.gamma_radius
    nz_l = np.nonzero(np.abs(f.gamma_l) > 1e-14)[0]
    nz_r = np.nonzero(np.abs(f.gamma_r) > 1e-14)[0]
    if nz_l.size == 1 and nz_r.size == 1 and nz_l[0] == nz_r[0]:
        return int(nz_l[0]) - w
    return None


def fiber_jump_roots(f: FiberOperator, seeds=(), box=None) -> list:
    """All residual-validated roots of the secular equation at one momentum.

    Single-site perturbations use the squared closed form
    ``z = beta +- sqrt(c^2 + 4 alpha gamma)`` (``c`` the site weight) followed
    by residual filtering; otherwise Newton continuation from ``seeds`` plus a
    coarse grid over ``box``.
    """
    w = f.gamma_radius
    if not np.any(np.abs(f.gamma_l) > 1e-14) or not np.any(np.abs(f.gamma_r) > 1e-14):
        return []
    site = _single_site(f)
    alpha, beta, gamma = f.t_symbol.tridiagonal()
    roots = []
    if site is not None:
        c = f.gamma_l[site + w] * np.conj(f.gamma_r[site + w])
        disc = branch_sqrt(c * c + 4.0 * alpha * gamma)
        candidates = [beta + disc, beta - disc]
        for z in candidates:
            try:
                if abs(secular_value(f, z)) < JUMP_RESIDUAL_TOL:
                    roots.append(complex(z))
            except (OnSymbolCurve, NoSplit):
                continue
        dedup = []
        for z in roots:
            if all(abs(z - r) > DEDUP_TOL for r in dedup):
                dedup.append(z)
        return dedup
    all_seeds = list(seeds)
    if box is not None:
        re0, re1, im0, im1 = box
        grid = []
        for x in np.linspace(re0, re1, 8):
            for y in np.linspace(im0, im1, 5):
                grid.append(x + 1j * y)
        all_seeds.extend(grid)
    roots, _failed = newton_roots(
        lambda z: secular_value(f, z), all_seeds, tol=NEWTON_TOL, dedup=DEDUP_TOL
    )
    return roots


def _nhe_box(m: LindbladModel, pad: float) -> tuple:
    cloud = nhe_spectrum(m, 64, 64)
    return (
        float(cloud.z.real.min() - pad),
        float(cloud.z.real.max() + pad),
        float(cloud.z.imag.min() - pad),
        float(cloud.z.imag.max() + pad),
    )


def jump_curve(
    m: LindbladModel,
    n_q: int,
    refine: bool = True,
    refine_tol: float = 0.01,
    max_refine_depth: int = 14,
) -> SpectrumCloud:
    """Jump-induced spectrum: secular roots over a momentum grid.

    With ``refine`` the sweep bisects between neighbouring momenta whose root
    sets differ by more than ``refine_tol`` (or change count), so sampled
    curves stay arclength-dense across square-root branch points.  Per-q
    failures are skipped, not fatal.
    """
    if n_q < 8:
        raise ValueError("n_q must be at least 8")
    box_cache = {}

    def seed_box():
        if "box" not in box_cache:
            f1 = fiber(m, 1.0)
            pad = 0.5 + float(np.linalg.norm(f1.gamma_l) * np.linalg.norm(f1.gamma_r))
            box_cache["box"] = _nhe_box(m, pad)
        return box_cache["box"]

    def roots_at(q, seeds):
        f = fiber(m, q)
        try:
            if _single_site(f) is not None or not np.any(np.abs(f.gamma_l) > 1e-14):
                return fiber_jump_roots(f)
            return fiber_jump_roots(f, seeds=seeds, box=seed_box())
        except LindbladSpectraError:
            return []

    qs = [2.0 * np.pi * k / n_q for k in range(n_q)]
    sweep = []
    prev_roots: list = []
    for q in qs:
        r = roots_at(q, prev_roots)
        sweep.append((q, r))
        if r:
            prev_roots = r

    if refine:
        sweep = _refine_sweep(sweep, roots_at, refine_tol, max_refine_depth)

    zs, qout = [], []
    for q, r in sweep:
        for z in sorted(r, key=lambda c: (c.real, c.imag)):
            zs.append(z)
            qout.append(q)
    zs = np.asarray(zs, dtype=complex)
    return SpectrumCloud.build(
        zs, np.full(zs.size, "JUMP"), np.asarray(qout), np.full(zs.size, np.nan)
    )


def _roots_gap(a: list, b: list) -> float:
    if len(a) != len(b):
        return np.inf
    if not a:
        return 0.0
    av = np.asarray(a)
    bv = np.asarray(b)
    d = np.abs(av[:, None] - bv[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def _refine_sweep(sweep, roots_at, tol, max_depth):
    out = []
    for (q0, r0), (q1, r1) in zip(sweep, sweep[1:] + [(2.0 * np.pi, sweep[0][1])]):
        out.append((q0, r0))
        stack = [(q0, r0, q1, r1, 0)]
        inserted = []
        while stack:
            qa, ra, qb, rb, depth = stack.pop()
            if depth >= max_depth or (not ra and not rb):
                continue
            if _roots_gap(ra, rb) <= tol:
                continue
            qm = 0.5 * (qa + qb)
            rm = roots_at(qm, ra or rb)
            inserted.append((qm, rm))
            stack.append((qa, ra, qm, rm, depth + 1))
            stack.append((qm, rm, qb, rb, depth + 1))
        out.extend(sorted(inserted, key=lambda t: t[0]))
    return out


# ---------------------------------------------------------------------------
# closed forms


@dataclass(frozen=True)
class Segment:
    kind = "segment"
    z0: complex
    z1: complex

    def contains(self, z: complex, tol: float) -> bool:
        return self.distance(z) <= tol

    def distance(self, z: complex) -> float:
        d = self.z1 - self.z0
        L2 = abs(d) ** 2
        if L2 == 0:
            return abs(z - self.z0)
        t = np.clip(((z - self.z0) * np.conj(d)).real / L2, 0.0, 1.0)
        return abs(z - (self.z0 + t * d))

    def sample(self, n: int) -> np.ndarray:
        return self.z0 + (self.z1 - self.z0) * np.linspace(0.0, 1.0, n)

    def describe(self) -> dict:
        return {
            "kind": "segment",
            "z0": [self.z0.real, self.z0.imag],
            "z1": [self.z1.real, self.z1.imag],
        }


@dataclass(frozen=True)
class ConvexPolygon:
    """Filled convex region given by counter-clockwise vertices."""

    kind = "polygon"
    vertices: tuple

    def _edges(self):
        v = list(self.vertices)
        return list(zip(v, v[1:] + v[:1]))

    def contains(self, z: complex, tol: float) -> bool:
        return self.distance(z) <= tol

    def distance(self, z: complex) -> float:
        inside = True
        for a, b in self._edges():
            cross = ((b - a).conjugate() * (z - a)).imag
            if cross < 0:
                inside = False
                break
        if inside:
            return 0.0
        return min(Segment(a, b).distance(z) for a, b in self._edges())

    def sample(self, n: int) -> np.ndarray:
        """Filled sample: map an n x n grid over the unit square through the
        bilinear interpolation of the four vertices (exact for
        parallelograms, dense for any convex quadrilateral)."""
        v = self.vertices
        if len(v) != 4:
            pts = [Segment(a, b).sample(n) for a, b in self._edges()]
            return np.concatenate(pts)
        s = np.linspace(0.0, 1.0, n)
        t = np.linspace(0.0, 1.0, n)
        S, T = np.meshgrid(s, t)
        z = (
            (1 - S) * (1 - T) * v[0]
            + S * (1 - T) * v[1]
            + S * T * v[2]
            + (1 - S) * T * v[3]
        )
        return z.ravel()

    def describe(self) -> dict:
        return {
            "kind": "polygon",
            "vertices": [[v.real, v.imag] for v in self.vertices],
        }


@dataclass(frozen=True)
class ParametricCurve:
    """Residual-validated secular-root curve of a built-in model."""

    kind = "curve"
    model: LindbladModel

    def sample(self, n: int) -> np.ndarray:
        return jump_curve(self.model, max(n, 8)).z

    def contains(self, z: complex, tol: float) -> bool:
        pts = self.sample(1024)
        return bool(np.min(np.abs(pts - z)) <= tol)

    def describe(self) -> dict:
        pts = self.sample(512)
        return {
            "kind": "curve",
            "points": [[p.real, p.imag] for p in pts],
        }


@dataclass(frozen=True)
class ClosedFormSpectrum:
    components: tuple

    def sample(self, n_per_component: int = 2048) -> np.ndarray:
        return np.concatenate([c.sample(n_per_component) for c in self.components])

    def contains(self, z: complex, tol: float) -> bool:
        return any(c.contains(z, tol) for c in self.components)

    def describe(self) -> list:
        return [c.describe() for c in self.components]


def closed_form_spectrum(builtin: str, G: float, **params) -> ClosedFormSpectrum:
    """Exact spectra of the built-in models.

    dephasing:  (-G + i[-4,4]) u [-G + sqrt(max(G^2-16,0)), 0]
    incoherent_hopping: (-G + i[-4,4]) u validated secular curve
    exclusion:  (-2G + i[-4,4]) u [-2G, 0]
    non_normal (delta in {0, pi}): the filled NHE quadrilateral with vertices
        0, -4G+4i, -8G, -4G-4i.  (Its own union formula pins these corners;
        the loss-less jump curve stays inside and is reported separately,
        not asserted.)
    """
    if G <= 0:
        raise ValueError("G must be positive")
    if builtin == "dephasing":
        left = -G + np.sqrt(max(G * G - 16.0, 0.0))
        return ClosedFormSpectrum(
            (Segment(complex(-G, -4.0), complex(-G, 4.0)), Segment(complex(left), 0j))
        )
    if builtin == "incoherent_hopping":
        l = int(params.get("l", 1))
        m = None
        from .model import builtin_model

        m = builtin_model("incoherent_hopping", G, l=l)
        return ClosedFormSpectrum(
            (Segment(complex(-G, -4.0), complex(-G, 4.0)), ParametricCurve(m))
        )
    if builtin == "exclusion":
        return ClosedFormSpectrum(
            (
                Segment(complex(-2 * G, -4.0), complex(-2 * G, 4.0)),
                Segment(complex(-2 * G), 0j),
            )
        )
    if builtin == "non_normal":
        delta = float(params.get("delta", 0.0))
        if min(abs(delta), abs(delta - np.pi), abs(delta - 2 * np.pi)) > 1e-12:
            raise UnsupportedModel("non_normal closed form requires delta in {0, pi}")
        verts = (0j, complex(-4 * G, 4.0), complex(-8 * G, 0.0), complex(-4 * G, -4.0))
        return ClosedFormSpectrum((ConvexPolygon(verts),))
    raise UnsupportedModel(f"no closed form for builtin {builtin!r}")


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class GapReport:
    sup_re: float
    near_zero_count: int


def gap_report(cloud: SpectrumCloud, exclusion_radius: float) -> GapReport:
    """Largest real part outside a disk around the origin.

    For gapless generators the value tends to 0 as the momentum grid refines.
    """
    if len(cloud) == 0:
        raise EmptySetError("empty spectrum cloud")
    outside = cloud.z[np.abs(cloud.z) > exclusion_radius]
    near = int(np.sum(np.abs(cloud.z) <= exclusion_radius))
    if outside.size == 0:
        raise EmptySetError("no points outside the exclusion radius")
    return GapReport(float(outside.real.max()), near)


def cloud_components(z, threshold: float) -> int:
    """Number of connected components of a point cloud.

    Points within ``threshold`` always join the same component (cells of size
    ``threshold`` with 8-neighbour connectivity), so gaps much larger than
    ``threshold`` are detected reliably.
    """
    z = np.asarray(z, dtype=complex).ravel()
    if z.size == 0:
        return 0
    ix = np.floor(z.real / threshold).astype(np.int64)
    iy = np.floor(z.imag / threshold).astype(np.int64)
    cells = set(zip(ix.tolist(), iy.tolist()))
    seen = set()
    count = 0
    for cell in cells:
        if cell in seen:
            continue
        count += 1
        stack = [cell]
        seen.add(cell)
        while stack:
            cx, cy = stack.pop()
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    nb = (cx + dx, cy + dy)
                    if nb in cells and nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
    return count
