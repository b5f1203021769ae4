"""Premodular data of U_q(osp(1|2n)) at q = exp(2 pi i / N), N = 2(2k+1).

Every value lives in the cyclotomic field of order ``4N`` with generator
``x``; ``q = x**4`` and ``q**(1/2) = x**2``.  Generic-q character sums are
Laurent polynomials in ``u = q**(1/2)``; root-of-unity values are exact
quotients of those sums specialised at ``u = x**2``.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .exactnum import CycloNumber, LaurentPoly
from .weyl import (
    RootData,
    Weight,
    bilinear4,
    build_root_data,
    check_level,
    dual_weight,
    enumerate_domain,
    enumerate_lattice_box,
    enumerate_weyl,
    eps_prime,
    act,
    iter_domain,
    parity,
)

log = logging.getLogger(__name__)

__all__ = [
    "ModularTables",
    "CheckResult",
    "ValidationFailure",
    "DegenerateNormalization",
    "SizeLimitExceeded",
    "level_from_k",
    "generic_S",
    "generic_Q",
    "superdim",
    "hopf_eigen",
    "twist",
    "coeff_c",
    "lattice_gauss_sum",
    "d_coeff",
    "build_tables",
    "validate_tables",
    "verify_condition_iv",
    "verify_boundary_vanishing",
    "DEFAULT_MAX_CELLS",
]

DEFAULT_MAX_CELLS = 10**7


class ValidationFailure(RuntimeError):
    """A table identity failed; ``identity`` names it and ``witness`` holds the data."""

    def __init__(self, identity: str, witness: Optional[dict] = None):
        self.identity = identity
        self.witness = witness or {}
        super().__init__(f"identity failed: {identity} {self.witness}")


class DegenerateNormalization(ArithmeticError):
    pass


class SizeLimitExceeded(RuntimeError):
    pass


def level_from_k(k: int) -> int:
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return 2 * (2 * k + 1)


def field_order(N: int) -> int:
    return 4 * N


# ---------------------------------------------------------------------------
# generic-q sums


def generic_S(lam: Weight, mu: Weight, rd: RootData, signed: bool = True) -> LaurentPoly:
    """Alternating Weyl sum ``sum_sigma eps'(sigma) u**(4(lam+rho, sigma(mu+rho)))``.

    With ``signed`` the ``(-1)**[lam]`` prefactor is included.
    """
    a = lam + rd.rho
    b = mu + rd.rho
    terms: dict[int, int] = {}
    for sigma in enumerate_weyl(rd.n):
        e = bilinear4(a, act(sigma, b))
        terms[e] = terms.get(e, 0) + eps_prime(sigma)
    poly = LaurentPoly(terms)
    if signed and parity(lam):
        poly = -poly
    return poly


def generic_Q(mu: Weight, rd: RootData) -> LaurentPoly:
    """``sum_sigma eps'(sigma) u**(4(rho, sigma(mu+rho)))``."""
    b = mu + rd.rho
    terms: dict[int, int] = {}
    for sigma in enumerate_weyl(rd.n):
        e = bilinear4(rd.rho, act(sigma, b))
        terms[e] = terms.get(e, 0) + eps_prime(sigma)
    return LaurentPoly(terms)


def _at_root(poly: LaurentPoly, N: int) -> CycloNumber:
    return poly.specialize(field_order(N), 2)


def superdim(lam: Weight, rd: RootData, N: int) -> CycloNumber:
    """Quantum superdimension as the root-of-unity value of ``S_{lam,0} / Q_0``."""
    zero = Weight.zero(rd.n)
    return _at_root(generic_S(lam, zero, rd).exact_div(generic_Q(zero, rd)), N)


def hopf_eigen(lam: Weight, mu: Weight, rd: RootData, N: int) -> CycloNumber:
    """Eigenvalue of ``C_lam`` on ``V_mu``: root-of-unity value of ``S_{lam,mu} / Q_mu``."""
    return _at_root(generic_S(lam, mu, rd).exact_div(generic_Q(mu, rd)), N)


def twist(lam: Weight, rd: RootData, N: int) -> CycloNumber:
    """``q**((lam, lam + 2 rho))``, the eigenvalue of ``v**-1`` on ``V_lam``."""
    return CycloNumber.root(field_order(N), bilinear4(lam, lam + rd.two_rho))


def lattice_gauss_sum(rd: RootData, N: int, modulus: Optional[int] = None) -> CycloNumber:
    """``sum_{lam in X/modulus X} q**((lam, lam + 2 rho))`` (default modulus N)."""
    modulus = N if modulus is None else modulus
    counts: dict[int, int] = {}
    two_rho = rd.two_rho
    for lam in enumerate_lattice_box(rd.n, modulus):
        e = bilinear4(lam, lam + two_rho)
        counts[e] = counts.get(e, 0) + 1
    return CycloNumber.from_exponents(field_order(N), counts)


def coeff_c(n: int, N: int) -> CycloNumber:
    """Inverse of the lattice Gauss sum over ``X_N``."""
    check_level(N)
    total = lattice_gauss_sum(build_root_data(n), N)
    if total.is_zero():
        raise DegenerateNormalization(f"lattice Gauss sum vanishes for n={n}, N={N}")
    return total.inv()


def d_coeff(lam: Weight, rd: RootData, N: int, c: CycloNumber) -> CycloNumber:
    """``(-1)**[lam] 2**n c sum_sigma eps'(sigma) q**(-(sigma(lam+rho) - rho, 2 rho))``."""
    shifted = lam + rd.rho
    two_rho = rd.two_rho
    counts: dict[int, int] = {}
    for sigma in enumerate_weyl(rd.n):
        e = -bilinear4(act(sigma, shifted) - rd.rho, two_rho)
        counts[e] = counts.get(e, 0) + eps_prime(sigma)
    total = CycloNumber.from_exponents(field_order(N), counts) * c * (2**rd.n)
    return -total if parity(lam) else total


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "witness": _jsonable(self.witness)}


def _jsonable(obj):
    if isinstance(obj, (CycloNumber, Weight, LaurentPoly)):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


@dataclass(frozen=True)
class ModularTables:
    n: int
    k: int
    N: int
    index_set: tuple[Weight, ...]
    boundary_set: tuple[Weight, ...]
    sdim: Mapping[Weight, CycloNumber]
    twist: Mapping[Weight, CycloNumber]
    hopf: Mapping[tuple[Weight, Weight], CycloNumber]
    c: CycloNumber
    d: Mapping[Weight, CycloNumber]
    zeta: CycloNumber
    z: CycloNumber

    @property
    def order(self) -> int:
        return field_order(self.N)

    @property
    def root_data(self) -> RootData:
        return build_root_data(self.n)

    def one(self) -> CycloNumber:
        return CycloNumber.one(self.order)


def _hopf_row(args):
    lam, mus, n, N = args
    rd = build_root_data(n)
    return [hopf_eigen(lam, mu, rd, N) for mu in mus]


def _collect_domain(n: int, N: int, max_cells: int) -> list[Weight]:
    # abort early rather than enumerate an oversized closed alcove
    limit = max(1, int((max_cells / len(enumerate_weyl(n))) ** 0.5))
    out = []
    for lam in iter_domain(n, N, strict=False):
        out.append(lam)
        if len(out) > limit:
            raise SizeLimitExceeded(
                f"closed alcove for n={n}, N={N} exceeds {limit} weights "
                f"(|W| * |closed alcove|^2 budget is {max_cells} cells)"
            )
    return sorted(out)


def build_tables(n: int, k: int, workers: int = 1, max_cells: int = DEFAULT_MAX_CELLS,
                 validate: bool = True) -> ModularTables:
    N = level_from_k(k)
    rd = build_root_data(n)
    M = field_order(N)
    closure = _collect_domain(n, N, max_cells)
    index = enumerate_domain(n, N, strict=True)
    index_set = set(index)
    boundary = [lam for lam in closure if lam not in index_set]
    log.info("n=%d k=%d N=%d: |index|=%d |boundary|=%d", n, k, N, len(index), len(boundary))

    sd = {lam: superdim(lam, rd, N) for lam in closure}
    tw = {lam: twist(lam, rd, N) for lam in index}
    rows: list[list[CycloNumber]]
    jobs = [(lam, index, n, N) for lam in index]
    if workers > 1 and len(index) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_hopf_row, jobs))
    else:
        rows = [_hopf_row(j) for j in jobs]
    hopf = {(lam, mu): v for lam, row in zip(index, rows) for mu, v in zip(index, row)}

    c = coeff_c(n, N)
    d = {lam: d_coeff(lam, rd, N, c) for lam in index}
    zeta = CycloNumber.zero(M)
    z = CycloNumber.zero(M)
    for lam in index:
        term = d[lam] * sd[lam]
        zeta = zeta + term
        z = z + term * tw[lam].inv()

    tables = ModularTables(
        n=n, k=k, N=N,
        index_set=tuple(index),
        boundary_set=tuple(boundary),
        sdim=sd, twist=tw, hopf=hopf, c=c, d=d, zeta=zeta, z=z,
    )
    if validate:
        validate_tables(tables)
    return tables


def verify_condition_iv(t: ModularTables, mu: Weight) -> CheckResult:
    """Scalar form on ``V_mu``: ``q**-(mu, mu+2rho) == sum d_lam twist(lam) hopf(lam, mu)``."""
    lhs = t.twist[mu].inv()
    rhs = CycloNumber.zero(t.order)
    for lam in t.index_set:
        rhs = rhs + t.d[lam] * t.twist[lam] * t.hopf[(lam, mu)]
    name = f"condition_iv[mu={mu.label()}]"
    if lhs == rhs:
        return CheckResult(name, True)
    return CheckResult(name, False, {"mu": mu, "lhs": lhs, "rhs": rhs})


def verify_boundary_vanishing(t: ModularTables) -> CheckResult:
    """``S'_{lam,mu}`` vanishes at the root of unity for every boundary lam, index mu."""
    rd = t.root_data
    for lam in t.boundary_set:
        for mu in t.index_set:
            v = _at_root(generic_S(lam, mu, rd, signed=False), t.N)
            if not v.is_zero():
                return CheckResult("boundary_vanishing", False, {"lambda": lam, "mu": mu, "value": v})
    return CheckResult("boundary_vanishing", True, {"pairs": len(t.boundary_set) * len(t.index_set)})


def table_checks(t: ModularTables) -> Iterable[CheckResult]:
    """Every identity the tables must satisfy, in a fixed order."""
    zero = Weight.zero(t.n)
    for lam in t.index_set:
        ok = not t.sdim[lam].is_zero()
        yield CheckResult(f"sdim_nonzero[{lam.label()}]", ok, {} if ok else {"lambda": lam})
    for lam in t.boundary_set:
        ok = t.sdim[lam].is_zero()
        yield CheckResult(f"sdim_boundary_zero[{lam.label()}]", ok,
                          {} if ok else {"lambda": lam, "sdim": t.sdim[lam]})
    idx = set(t.index_set)
    for lam in t.index_set:
        dual = dual_weight(lam, t.n)
        ok = dual in idx and t.d[dual] == t.d[lam]
        yield CheckResult(f"d_dual[{lam.label()}]", ok, {} if ok else {"lambda": lam, "dual": dual})
    d0 = t.d[zero]
    for lam in t.index_set:
        ok = t.d[lam] == d0 * t.sdim[lam]
        yield CheckResult(f"d_proportional[{lam.label()}]", ok,
                          {} if ok else {"lambda": lam, "d": t.d[lam], "d0*sdim": d0 * t.sdim[lam]})
    for lam in t.index_set:
        for mu in t.index_set:
            lhs = t.hopf[(lam, mu)] * t.sdim[mu]
            rhs = t.hopf[(mu, lam)] * t.sdim[lam]
            ok = lhs == rhs
            yield CheckResult(f"hopf_symmetry[{lam.label()}|{mu.label()}]", ok,
                              {} if ok else {"lambda": lam, "mu": mu, "lhs": lhs, "rhs": rhs})
    yield CheckResult("zeta_nonzero", not t.zeta.is_zero(), {"zeta": t.zeta})
    yield CheckResult("z_nonzero", not t.z.is_zero(), {"z": t.z})
    ok = t.z == d0 * t.zeta
    yield CheckResult("z_equals_d0_zeta", ok, {} if ok else {"z": t.z, "d0*zeta": d0 * t.zeta})
    for mu in t.index_set:
        yield verify_condition_iv(t, mu)


def validate_tables(t: ModularTables) -> None:
    for check in table_checks(t):
        if not check.passed:
            raise ValidationFailure(check.name, check.witness)


# ---------------------------------------------------------------------------
# serialization


def _cmap(m: Mapping[Weight, CycloNumber]) -> dict:
    return {w.label(): m[w].to_json() for w in sorted(m)}


def tables_to_json(t: ModularTables) -> dict:
    return {
        "config": {"n": t.n, "k": t.k, "N": t.N, "order": t.order},
        "index_set": [w.to_json() for w in t.index_set],
        "boundary_set": [w.to_json() for w in t.boundary_set],
        "sdim": _cmap(t.sdim),
        "twist": _cmap(t.twist),
        "hopf": {f"{a.label()}|{b.label()}": t.hopf[(a, b)].to_json() for a, b in sorted(t.hopf)},
        "c": t.c.to_json(),
        "d": _cmap(t.d),
        "zeta": t.zeta.to_json(),
        "z": t.z.to_json(),
    }


def tables_from_json(data: Mapping, validate: bool = True) -> ModularTables:
    cfg = data["config"]
    n, k, N = int(cfg["n"]), int(cfg["k"]), int(cfg["N"])
    if N != level_from_k(k):
        raise ValueError(f"inconsistent configuration: N={N} but k={k}")

    def cmap(m):
        return {Weight.from_label(key): CycloNumber.from_json(v) for key, v in m.items()}

    hopf = {}
    for key, v in data["hopf"].items():
        a, b = key.split("|")
        hopf[(Weight.from_label(a), Weight.from_label(b))] = CycloNumber.from_json(v)
    t = ModularTables(
        n=n, k=k, N=N,
        index_set=tuple(Weight.from_json(w) for w in data["index_set"]),
        boundary_set=tuple(Weight.from_json(w) for w in data["boundary_set"]),
        sdim=cmap(data["sdim"]),
        twist=cmap(data["twist"]),
        hopf=hopf,
        c=CycloNumber.from_json(data["c"]),
        d=cmap(data["d"]),
        zeta=CycloNumber.from_json(data["zeta"]),
        z=CycloNumber.from_json(data["z"]),
    )
    if validate:
        validate_tables(t)
    return t
