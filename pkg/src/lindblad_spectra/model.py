"""Translation-covariant Lindblad models and their momentum fibers.

A model is a self-adjoint hopping Hamiltonian ``H = sum_l h_l S_l`` plus a
family of rank-one jump operators ``L_k = S_k |phi><psi| S_k^*`` acting at
coupling ``G``.  The momentum fiber at ``q`` is a banded Laurent operator
``T(q)`` plus the rank-one ``F(q) = |Gamma_L(q)><Gamma_R(q)|``:

    T(q) = -i sum_l h_eff,l e^{iql} S_l^*  +  i sum_l conj(h_eff,l) S_l
    Gamma_L(q) = sqrt(G) sum_{r1,r2} phi(r1) e^{iq r1} conj(phi(r2)) |r2-r1>
    <Gamma_R(q)| = sqrt(G) sum_{r1,r2} conj(psi(r1)) e^{-iq r1} psi(r2) <r2-r1|

with ``H_eff = H - (iG/2) sum_k L_k^* L_k``.  The phase ``e^{+iql}`` and the
conjugation pattern of ``Gamma_R`` are calibrated against the finite-volume
unitary equivalence (``transform_Jn`` must block-diagonalize the vectorized
generator exactly); see ``finite.equivalence_check``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse

from .errors import SizeTooSmall, UnsupportedModel
from .laurent import BandedSymbol

RANK_ONE_TOL = 1e-10


@dataclass(frozen=True)
class LindbladChannel:
    """Rank-one jump operator ``L_0 = |phi><psi|`` by its site amplitudes."""

    phi: tuple  # ((offset, complex), ...)
    psi: tuple

    @classmethod
    def from_dicts(cls, phi: dict, psi: dict) -> "LindbladChannel":
        return cls(
            tuple(sorted((int(r), complex(v)) for r, v in phi.items() if v != 0)),
            tuple(sorted((int(r), complex(v)) for r, v in psi.items() if v != 0)),
        )

    @property
    def span(self) -> int:
        idx = [r for r, _ in self.phi] + [r for r, _ in self.psi]
        return max(abs(r) for r in idx) if idx else 0

    def phi_dict(self) -> dict:
        return dict(self.phi)

    def psi_dict(self) -> dict:
        return dict(self.psi)


@dataclass(frozen=True)
class LindbladModel:
    """Hopping Hamiltonian + rank-one dissipation channels at coupling G."""

    ham_hopping: BandedSymbol
    channels: tuple
    G: float
    builtin: str = ""
    params: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.G <= 0:
            raise ValueError("coupling G must be positive")
        if not self.ham_hopping.is_selfadjoint():
            raise ValueError("hamiltonian hopping must satisfy h_{-l} = conj(h_l)")
        if not self.channels:
            raise ValueError("at least one Lindblad channel is required")
        if any(not c.phi and not c.psi for c in self.channels):
            raise ValueError("phi, psi must not both be zero")

    @property
    def lind_span(self) -> int:
        return max(c.span for c in self.channels)

    @property
    def range(self) -> int:
        """Band radius of the fiber operator T(q)."""
        return max(self.ham_hopping.range, 2 * self.lind_span)

    def params_dict(self) -> dict:
        return dict(self.params)


def builtin_model(name: str, G: float, **params) -> LindbladModel:
    """Construct one of the built-in models.

    ``dephasing``            L_k = |k><k|
    ``incoherent_hopping``   L_k = |k><k+l|               (param l, default 1)
    ``exclusion``            L_k = |k><k+1| and |k+1><k|
    ``non_normal``           L_k = (|k> + e^{i delta}|k+l>)(<k| - e^{-i delta}<k+l|)
                             (params delta, l)

    All use the hopping Hamiltonian H = -(S + S*).
    """
    hop = BandedSymbol.from_dict({-1: -1.0, 1: -1.0})
    if name == "dephasing":
        channels = (LindbladChannel.from_dicts({0: 1.0}, {0: 1.0}),)
        ptup = ()
    elif name == "incoherent_hopping":
        l = int(params.get("l", 1))
        channels = (LindbladChannel.from_dicts({0: 1.0}, {l: 1.0}),)
        ptup = (("l", l),)
    elif name == "exclusion":
        channels = (
            LindbladChannel.from_dicts({0: 1.0}, {1: 1.0}),
            LindbladChannel.from_dicts({1: 1.0}, {0: 1.0}),
        )
        ptup = ()
    elif name == "non_normal":
        delta = float(params.get("delta", 0.0))
        l = int(params.get("l", 1))
        phase = np.exp(1j * delta)
        channels = (
            LindbladChannel.from_dicts({0: 1.0, l: phase}, {0: 1.0, l: -phase}),
        )
        ptup = (("delta", delta), ("l", l))
    else:
        raise UnsupportedModel(f"unknown builtin model {name!r}")
    return LindbladModel(hop, channels, float(G), builtin=name, params=ptup)


def parse_builtin_spec(text: str, G: float) -> LindbladModel:
    """Parse strings like ``non_normal(delta=0.5,l=1)`` or ``dephasing``."""
    m = re.fullmatch(r"\s*([a-z_]+)\s*(?:\(([^)]*)\))?\s*", text)
    if not m:
        raise UnsupportedModel(f"cannot parse builtin spec {text!r}")
    name, args = m.group(1), m.group(2)
    params = {}
    if args:
        for piece in args.split(","):
            if not piece.strip():
                continue
            key, _, val = piece.partition("=")
            params[key.strip()] = float(val)
    return builtin_model(name, G, **params)


# ---------------------------------------------------------------------------
# effective hopping and fibers


def effective_hopping(m: LindbladModel) -> BandedSymbol:
    """Diagonals of ``H_eff = H - (iG/2) Q`` with ``Q = sum_k L_k^* L_k``.

    The l-th diagonal of Q is the autocorrelation
    ``q_l = sum_channels |phi|^2 sum_m psi(m) conj(psi(m+l))``.
    """
    q = {}
    for ch in m.channels:
        psi = ch.psi_dict()
        nphi = sum(abs(v) ** 2 for _, v in ch.phi)
        for r1, v1 in psi.items():
            for r2, v2 in psi.items():
                l = r2 - r1
                q[l] = q.get(l, 0j) + nphi * v1 * np.conj(v2)
    r = max(m.ham_hopping.range, max(abs(l) for l in q) if q else 0)
    coeff = {}
    for l in range(-r, r + 1):
        val = m.ham_hopping[l] - 0.5j * m.G * q.get(l, 0j)
        if val != 0:
            coeff[l] = val
    return BandedSymbol.from_dict(coeff)


@dataclass(frozen=True)
class FiberOperator:
    """Momentum fiber ``T(q) + |Gamma_L><Gamma_R|``.

    ``gamma_l``/``gamma_r`` are kets on the window ``[-gamma_radius,
    gamma_radius]`` (index ``j`` stored at ``j + gamma_radius``); the fiber
    perturbation is ``F = outer(gamma_l, conj(gamma_r))``.  ``rank_one`` is
    False when a multi-channel sum does not compress to rank one; the
    NHE-only operations still work in that case.
    """

    q: float
    t_symbol: BandedSymbol
    gamma_l: np.ndarray
    gamma_r: np.ndarray
    gamma_radius: int
    rank_one: bool = True

    def jump_matrix(self) -> np.ndarray:
        return np.outer(self.gamma_l, self.gamma_r.conj())


def _channel_gammas(ch: LindbladChannel, q: float, G: float, w: int):
    gl = np.zeros(2 * w + 1, dtype=complex)
    gr = np.zeros(2 * w + 1, dtype=complex)
    sq = np.sqrt(G)
    for r1, v1 in ch.phi:
        for r2, v2 in ch.phi:
            gl[(r2 - r1) + w] += sq * v1 * np.exp(1j * q * r1) * np.conj(v2)
    for r1, v1 in ch.psi:
        for r2, v2 in ch.psi:
            gr[(r2 - r1) + w] += sq * v1 * np.exp(1j * q * r1) * np.conj(v2)
    return gl, gr


def fiber(m: LindbladModel, q: float) -> FiberOperator:
    """Fiber operator of the model at momentum ``q in [0, 2 pi)``."""
    heff = effective_hopping(m)
    r = heff.range
    coeff = {}
    for l in range(-r, r + 1):
        val = -1j * heff[-l] * np.exp(1j * q * l) + 1j * np.conj(heff[l])
        if val != 0:
            coeff[l] = val
    t_symbol = BandedSymbol.from_dict(coeff) if coeff else BandedSymbol((0j,))

    w = 2 * m.lind_span
    pairs = [_channel_gammas(ch, q, m.G, w) for ch in m.channels]
    if len(pairs) == 1:
        gl, gr = pairs[0]
        return FiberOperator(q, t_symbol, gl, gr, w)
    F = sum(np.outer(gl, gr.conj()) for gl, gr in pairs)
    norm = np.linalg.norm(F)
    if norm < 1e-300:
        z = np.zeros(2 * w + 1, dtype=complex)
        return FiberOperator(q, t_symbol, z, z.copy(), w)
    u, s, vh = np.linalg.svd(F)
    rank_one = s[1] <= RANK_ONE_TOL * s[0]
    gl = u[:, 0] * s[0]
    gr = vh[0, :].conj()
    return FiberOperator(q, t_symbol, gl, gr, w, rank_one=rank_one)


# ---------------------------------------------------------------------------
# finite-volume dense builders


def cyclic_shift(n: int) -> np.ndarray:
    S = np.zeros((n, n), dtype=complex)
    S[np.arange(1, n) % n, np.arange(n - 1)] = 1.0
    S[0, n - 1] = 1.0
    return S


def _embed_vector(support: dict, n: int) -> np.ndarray:
    v = np.zeros(n, dtype=complex)
    for r, val in support.items():
        v[r % n] += val
    return v


def _hamiltonian_matrix(m: LindbladModel, n: int, periodic: bool, V=None) -> np.ndarray:
    H = np.zeros((n, n), dtype=complex)
    r = m.ham_hopping.range
    for l in range(-r, r + 1):
        h = m.ham_hopping[l]
        if h == 0:
            continue
        for a in range(n):
            b = a + l
            if periodic:
                H[a, b % n] += h
            elif 0 <= b < n:
                H[a, b] += h
    if V is not None:
        H += np.diag(np.asarray(V, dtype=complex))
    return H


def _jump_operators(m: LindbladModel, n: int, periodic: bool) -> list:
    ops = []
    if periodic:
        S = cyclic_shift(n)
        for ch in m.channels:
            L = np.outer(
                _embed_vector(ch.phi_dict(), n), _embed_vector(ch.psi_dict(), n).conj()
            )
            for _ in range(n):
                ops.append(L)
                L = S @ L @ S.conj().T
        return ops
    span = m.lind_span
    for ch in m.channels:
        phi, psi = ch.phi_dict(), ch.psi_dict()
        for k in range(-span, n + span):
            L = np.zeros((n, n), dtype=complex)
            for r1, v1 in phi.items():
                x = k + r1
                if not 0 <= x < n:
                    continue
                for r2, v2 in psi.items():
                    y = k + r2
                    if 0 <= y < n:
                        L[x, y] = v1 * np.conj(v2)
            if np.any(L):
                ops.append(L)
    return ops


def vectorized_lindbladian(
    m: LindbladModel, n: int, bc: str = "periodic", V=None
) -> np.ndarray:
    """Dense ``n^2 x n^2`` matrix of the vectorized generator.

    Builds ``-iH (x) 1 + i 1 (x) H^T + G sum_k [L_k (x) conj(L_k)
    - (1/2) L_k^* L_k (x) 1 - (1/2) 1 (x) (L_k^* L_k)^T]`` with either cyclic
    shifts (periodic) or window truncation (free); an optional diagonal
    potential enters through the commutator.
    """
    if bc not in ("periodic", "free"):
        raise ValueError(f"unknown boundary condition {bc!r}")
    if n < 2 * m.range + 1:
        raise SizeTooSmall(f"n = {n} below 2*range+1 = {2 * m.range + 1}")
    periodic = bc == "periodic"
    # the jump operators are rank-one and local, so the assembly runs in
    # sparse format and densifies once at the end
    I = scipy.sparse.identity(n, dtype=complex, format="csr")
    H = scipy.sparse.csr_matrix(_hamiltonian_matrix(m, n, periodic, V))
    M = -1j * scipy.sparse.kron(H, I) + 1j * scipy.sparse.kron(I, H.T)
    for L in _jump_operators(m, n, periodic):
        Ls = scipy.sparse.csr_matrix(L)
        LdL = Ls.conj().T @ Ls
        M = M + m.G * (
            scipy.sparse.kron(Ls, Ls.conj())
            - 0.5 * scipy.sparse.kron(LdL, I)
            - 0.5 * scipy.sparse.kron(I, LdL.T)
        )
    return np.asarray(M.todense())


def transform_Jn(n: int) -> np.ndarray:
    """Unitary ``J = (F (x) 1) C`` that block-diagonalizes periodic generators.

    ``C|j,k> = |j,(k-j) mod n>`` and ``F`` is the DFT with entries
    ``omega^{jk}/sqrt(n)``, ``omega = exp(2 pi i / n)``.  Conjugating the
    periodic vectorized Lindbladian by ``J`` yields ``n`` diagonal blocks; the
    b-th block is the fiber at ``q = 2 pi b / n``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    omega = np.exp(2j * np.pi / n)
    F = omega ** (np.outer(np.arange(n), np.arange(n))) / np.sqrt(n)
    J = np.zeros((n * n, n * n), dtype=complex)
    # row index after C: (j, (k-j) mod n); then F mixes the first register.
    for j in range(n):
        for k in range(n):
            col = j * n + k
            rel = (k - j) % n
            for b in range(n):
                J[b * n + rel, col] += F[b, j]
    return J


def trace_functional_residual(M: np.ndarray) -> float:
    """Max column sum of the vectorized generator over diagonal-index rows.

    Zero (to rounding) expresses trace preservation of the generator.
    """
    n2 = M.shape[0]
    n = int(round(np.sqrt(n2)))
    rows = np.arange(n) * n + np.arange(n)
    return float(np.abs(M[rows, :].sum(axis=0)).max())


# ---------------------------------------------------------------------------
# model file (JSON) round-trip


def _coeff_list(d: dict) -> list:
    return [
        {"offset": int(l), "re": float(np.real(v)), "im": float(np.imag(v))}
        for l, v in sorted(d.items())
    ]


def _coeff_dict(lst, what: str) -> dict:
    out = {}
    if not isinstance(lst, list):
        raise ValueError(f"{what} must be a list of coefficient entries")
    for item in lst:
        if not isinstance(item, dict) or "offset" not in item:
            raise ValueError(f"{what} entries need an 'offset' field")
        out[int(item["offset"])] = complex(
            float(item.get("re", 0.0)), float(item.get("im", 0.0))
        )
    return out


def model_to_json(m: LindbladModel) -> dict:
    doc = {
        "hamiltonian": {"hopping": _coeff_list(m.ham_hopping.as_dict())},
        "lindblad": {},
        "G": m.G,
    }
    if len(m.channels) == 1:
        doc["lindblad"]["phi"] = _coeff_list(m.channels[0].phi_dict())
        doc["lindblad"]["psi"] = _coeff_list(m.channels[0].psi_dict())
    else:
        doc["lindblad"]["channels"] = [
            {"phi": _coeff_list(c.phi_dict()), "psi": _coeff_list(c.psi_dict())}
            for c in m.channels
        ]
    if m.builtin:
        params = m.params_dict()
        if params:
            args = ",".join(f"{k}={v}" for k, v in sorted(params.items()))
            doc["builtin"] = f"{m.builtin}({args})"
        else:
            doc["builtin"] = m.builtin
    return doc


def model_from_json(doc: dict) -> LindbladModel:
    if not isinstance(doc, dict):
        raise ValueError("model file must contain a JSON object")
    if "G" not in doc:
        raise ValueError("model file missing 'G'")
    G = float(doc["G"])
    if "builtin" in doc and doc["builtin"]:
        return parse_builtin_spec(str(doc["builtin"]), G)
    ham = doc.get("hamiltonian", {})
    hop = _coeff_dict(ham.get("hopping", []), "hamiltonian.hopping")
    lind = doc.get("lindblad", {})
    channels = []
    if "channels" in lind:
        for ch in lind["channels"]:
            channels.append(
                LindbladChannel.from_dicts(
                    _coeff_dict(ch.get("phi", []), "channel phi"),
                    _coeff_dict(ch.get("psi", []), "channel psi"),
                )
            )
    else:
        channels.append(
            LindbladChannel.from_dicts(
                _coeff_dict(lind.get("phi", []), "lindblad.phi"),
                _coeff_dict(lind.get("psi", []), "lindblad.psi"),
            )
        )
    return LindbladModel(BandedSymbol.from_dict(hop), tuple(channels), G)


def load_model(path: str) -> LindbladModel:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_json(json.load(fh))


def save_model(m: LindbladModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_json(m), fh, indent=2, sort_keys=True)
        fh.write("\n")
