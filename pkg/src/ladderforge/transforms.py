"""Unitary toolkit: displacements, squeezes, the two-mode mixing rotation, and
the similarity reductions that bring a general Hamiltonian to basic form.

All unitaries are matrix exponentials computed with a fixed order-13 Pade
approximant under scaling-and-squaring, so repeated runs are bit-reproducible.
Truncation makes a built unitary exact only where the generator amplitude is
small against the cutoff; callers are expected to keep coherent amplitudes
below about a third of the cutoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CutoffMismatch, DomainError
from .fock import FockCutoff, GeneratorSet, Operator, interior_projector

__all__ = [
    "UnitarySpec",
    "expm",
    "build_unitary",
    "similarity",
    "mix_angle",
    "rotation_safe_degree",
    "verify_disentangled_T",
    "unitary_spec_to_json",
    "unitary_spec_from_json",
]

_PADE13 = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0, 670442572800.0,
    33522128640.0, 1323241920.0, 40840800.0, 960960.0, 16380.0, 182.0, 1.0,
)
_THETA13 = 5.371920351148152


def _expm_dense(m: np.ndarray) -> np.ndarray:
    """Order-13 Pade approximant with scaling and squaring."""
    norm = np.linalg.norm(m, 1)
    s = 0
    if norm > _THETA13:
        s = max(0, int(math.ceil(math.log2(norm / _THETA13))))
        m = m / (2.0 ** s)
    b = _PADE13
    n = m.shape[0]
    ident = np.eye(n, dtype=m.dtype)
    m2 = m @ m
    m4 = m2 @ m2
    m6 = m2 @ m4
    u = m @ (m6 @ (b[13] * m6 + b[11] * m4 + b[9] * m2)
             + b[7] * m6 + b[5] * m4 + b[3] * m2 + b[1] * ident)
    v = (m6 @ (b[12] * m6 + b[10] * m4 + b[8] * m2)
         + b[6] * m6 + b[4] * m4 + b[2] * m2 + b[0] * ident)
    f = np.linalg.solve(v - u, v + u)
    for _ in range(s):
        f = f @ f
    return f


def expm(a: Operator) -> Operator:
    return Operator(a.cutoff, _expm_dense(a.to_dense()))


_KINDS = ("displace1", "displace2", "squeeze2", "squeeze_two_mode", "mix_t")


@dataclass(frozen=True)
class UnitarySpec:
    """Declarative description of one unitary; params are kind-specific.

    displace1 / displace2:  alpha (complex)
    squeeze2:               chi (complex)
    squeeze_two_mode:       theta_tilde (real), phi_tilde (real)
    mix_t:                  eps (+1/-1), b (> 0), beta3 (|beta3| <= b), theta (real)
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown unitary kind {self.kind!r}")
        if self.kind == "mix_t":
            eps = self.params.get("eps")
            b = self.params.get("b")
            beta3 = self.params.get("beta3")
            if eps not in (1, -1, 1.0, -1.0):
                raise DomainError("mix-eps", "mixing rotation requires eps in {+1, -1}")
            if b is None or b <= 0:
                raise DomainError("mix-b", "mixing rotation requires b > 0")
            if abs(beta3) > b * (1 + 1e-12):
                raise DomainError("mix-beta3", "mixing rotation requires |beta3| <= b")


def mix_angle(eps: int, b: float, beta3: float) -> float:
    """Rotation angle arctan(eps * sqrt((b - eps*beta3)/(b + eps*beta3))).

    The endpoint cases are taken as limits: angle 0 when beta3 = eps*b (the
    rotation degenerates to the identity) and eps*pi/2 when beta3 = -eps*b
    (a phase-decorated mode swap).
    """
    lo = b - eps * beta3
    hi = b + eps * beta3
    if abs(lo) < 1e-12:
        return 0.0
    if abs(hi) < 1e-12:
        return eps * math.pi / 2.0
    return math.atan(eps * math.sqrt(lo / hi))


def build_unitary(spec: UnitarySpec, g: GeneratorSet) -> Operator:
    p = spec.params
    if spec.kind == "displace1":
        alpha = complex(p["alpha"])
        gen = alpha * g.a1_dag - np.conj(alpha) * g.a1
    elif spec.kind == "displace2":
        alpha = complex(p["alpha"])
        gen = alpha * g.a2_dag - np.conj(alpha) * g.a2
    elif spec.kind == "squeeze2":
        chi = complex(p["chi"])
        gen = -0.5 * (chi * (g.a2_dag @ g.a2_dag) - np.conj(chi) * (g.a2 @ g.a2))
    elif spec.kind == "squeeze_two_mode":
        th = float(p["theta_tilde"])
        ph = float(p["phi_tilde"])
        gen = -0.5 * th * (np.exp(-1j * ph) * (g.a1_dag @ g.a2_dag)
                           - np.exp(1j * ph) * (g.a1 @ g.a2))
    elif spec.kind == "mix_t":
        phi = mix_angle(int(p["eps"]), float(p["b"]), float(p["beta3"]))
        theta = float(p.get("theta", 0.0))
        gen = -phi * (np.exp(-1j * theta) * g.j_plus - np.exp(1j * theta) * g.j_minus)
    else:  # pragma: no cover - guarded in UnitarySpec
        raise ValueError(spec.kind)
    return expm(gen)


def build_chain(chain: list[UnitarySpec], g: GeneratorSet) -> Operator:
    """Compose a similarity chain into one unitary.

    Specs are successive similarity transformations (first spec first), so
    the returned U satisfies  reduced = U' O U  and maps reduced-frame kets
    to original-frame kets as  |orig> = U |reduced>.
    """
    u = g.identity
    for spec in chain:
        u = u @ build_unitary(spec, g)
    return u


def similarity(u: Operator, o: Operator) -> Operator:
    """U' O U."""
    if u.cutoff != o.cutoff:
        raise CutoffMismatch(f"{u.cutoff} vs {o.cutoff}")
    return u.dag() @ o @ u


def rotation_safe_degree(cutoff: FockCutoff) -> int:
    """Smallest interior degree whose box only contains complete
    total-occupation shells.

    A mixing rotation preserves n1 + n2, so it is exact on states whose whole
    shell fits inside the truncation; a box with n_i <= n_i_max - degree
    reaches shell n1 + n2 = (n1_max - degree) + (n2_max - degree), which must
    not exceed min(n1_max, n2_max).  Identities involving built unitaries are
    meaningless on shallower interiors, where truncation junk dominates.
    """
    need = cutoff.n1_max + cutoff.n2_max - min(cutoff.n1_max, cutoff.n2_max)
    return (need + 1) // 2


def verify_disentangled_T(eps: int, b: float, beta3: float, theta: float,
                          cutoff: FockCutoff, g: GeneratorSet | None = None,
                          degree: int | None = None) -> float:
    """Frobenius distance on the shell-safe interior between the
    single-exponential mixing rotation and its raising/diagonal/lowering
    product factorization."""
    from .fock import build_generators  # local to avoid cycle at import time

    if g is None:
        g = build_generators(cutoff)
    if degree is None:
        degree = rotation_safe_degree(cutoff)
    t_exp = build_unitary(UnitarySpec("mix_t", {"eps": eps, "b": b, "beta3": beta3,
                                                "theta": theta}), g)
    lo = b - eps * beta3
    hi = b + eps * beta3
    if abs(hi) < 1e-12:
        raise DomainError("disentangle-domain", "product form requires b + eps*beta3 > 0")
    tau = eps * math.sqrt(max(lo, 0.0) / hi)
    t_prod = (expm(-tau * np.exp(-1j * theta) * g.j_plus)
              @ expm(math.log(2.0 * b / hi) * g.j3)
              @ expm(tau * np.exp(1j * theta) * g.j_minus))
    proj = interior_projector(cutoff, degree)
    return (proj @ (t_exp - t_prod) @ proj).norm()


def unitary_spec_to_json(spec: UnitarySpec) -> dict:
    params = {}
    for key, value in spec.params.items():
        z = complex(value)
        params[key] = [z.real, z.imag] if z.imag != 0.0 else z.real
    return {"kind": spec.kind, "params": params}


def unitary_spec_from_json(payload: dict) -> UnitarySpec:
    params = {}
    for key, value in payload["params"].items():
        params[key] = complex(value[0], value[1]) if isinstance(value, list) else value
    return UnitarySpec(payload["kind"], params)
