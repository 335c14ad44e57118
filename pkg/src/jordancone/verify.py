"""Seeded verification suite over every identity the toolkit relies on.

Each check draws its own generator from (seed, trial, check index), so a
report is a pure function of (algebra, seed, trials, tolerance) and two
runs emit byte-identical JSON. Failures are recorded, never raised.
Boolean checks report residual 0 or 1 against tolerance 0.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .algebra import (AlgebraDescriptor, L_op, U_bilinear, U_op, VOperator,
                      element_eigenvalues, from_matrix, inverse, jb_norm,
                      jordan_product, op_from_matrix_map, op_inverse,
                      to_matrix, trace_form, unit)
from .cone import (cone_retraction, in_closure, in_cone, order_unit_norm,
                   transport)
from .config import resolve_tol
from .errors import JordanConeError, UxNotPositive
from .herm import (AutComponent, StrComponent, aut_component, congruence_op,
                   derivation_to_skew, j_op, lift_automorphism,
                   recover_implementer, skew_traceless_basis, str_as_lr,
                   str_two_components)
from .isotopes import homotope, homotope_product, isotope_inverse
from .isotopes import isotope_isomorphic
from .sampling import (random_automorphism, random_cone_element,
                       random_derivation, random_element, random_indefinite,
                       random_invertible, rng_for)
from .spectral import (apply_function, hull_check, operator_spectrum,
                       spectral_decompose)
from .structure import (central_projections, is_automorphism, is_central,
                        is_derivation, lie_split, pierce_decompose, s_op,
                        str_adjoint, str_decompose, str_lie_residual,
                        str_residual, u_positive_decompose, u_spectrum_split,
                        go_decompose)


@dataclass(frozen=True)
class CheckRecord:
    name: str
    anchor: str
    trial: int
    residual: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    algebra: str
    seed: int
    trials: int
    tolerance: float
    records: tuple[CheckRecord, ...]
    wall_time: float

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_json(self) -> str:
        """Canonical JSON; wall time is excluded to keep output deterministic."""
        obj = {
            "suite": self.suite,
            "algebra": self.algebra,
            "seed": self.seed,
            "trials": self.trials,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "checks": [
                {
                    "name": r.name,
                    "anchor": r.anchor,
                    "trial": r.trial,
                    "residual": r.residual,
                    "tolerance": r.tolerance,
                    "passed": r.passed,
                }
                for r in self.records
            ],
        }
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"

    def table(self) -> str:
        """Human-readable summary, worst trial per check."""
        worst: dict[str, CheckRecord] = {}
        for r in self.records:
            cur = worst.get(r.name)
            if cur is None or r.residual > cur.residual:
                worst[r.name] = r
        lines = [f"verification: {self.algebra}  seed={self.seed}  "
                 f"trials={self.trials}  tol={self.tolerance:g}"]
        width = max(len(n) for n in worst)
        for name in sorted(worst):
            r = worst[name]
            flag = "ok  " if all(x.passed for x in self.records if x.name == name) else "FAIL"
            lines.append(f"  {flag} {name.ljust(width)}  worst residual {r.residual:.3e}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


@dataclass(frozen=True)
class _Check:
    name: str
    anchor: str
    kinds: tuple[str, ...] | None  # None = every algebra
    min_dim: int
    fn: object


_CHECKS: list[_Check] = []


def _check(name: str, anchor: str, kinds=None, min_dim: int = 1):
    def deco(fn):
        _CHECKS.append(_Check(name, anchor, kinds, min_dim, fn))
        return fn
    return deco


def _applies(c: _Check, alg: AlgebraDescriptor) -> bool:
    if alg.dim < c.min_dim:
        return False
    if c.kinds is None:
        return True
    return alg.kind in c.kinds


def run_suite(alg: AlgebraDescriptor, seed: int = 0, trials: int = 10,
              tol: float | None = None) -> VerificationReport:
    """Run every applicable check `trials` times; never raises on failure."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    tolerance = resolve_tol(tol)
    t0 = time.perf_counter()
    records = []
    for idx, c in enumerate(_CHECKS):
        if not _applies(c, alg):
            continue
        for trial in range(trials):
            rng = rng_for(seed, trial, idx)
            boolean = False
            try:
                out = c.fn(alg, rng, tolerance)
                if isinstance(out, (bool, np.bool_)):
                    boolean, residual = True, (0.0 if out else 1.0)
                else:
                    residual = float(out)
            except JordanConeError:
                boolean, residual = True, 1.0
            check_tol = 0.0 if boolean else tolerance
            records.append(CheckRecord(c.name, c.anchor, trial, residual,
                                       check_tol, residual <= check_tol))
    records.sort(key=lambda r: (r.name, r.trial))
    wall = time.perf_counter() - t0
    return VerificationReport("jordancone-verify", alg.label(), int(seed),
                              int(trials), tolerance, tuple(records), wall)


# ---------------------------------------------------------------------------
# core algebra checks


def _opnorm(M: np.ndarray) -> float:
    return float(np.linalg.norm(M, 2))


@_check("jordan-identity", "x^2 o (x o y) = x o (x^2 o y)")
def _c_jordan(alg, rng, tol):
    x, y = random_element(alg, rng), random_element(alg, rng)
    x2 = jordan_product(x, x)
    lhs = jordan_product(x2, jordan_product(x, y))
    rhs = jordan_product(x, jordan_product(x2, y))
    return jb_norm(lhs - rhs) / ((1.0 + jb_norm(x)) ** 3 * (1.0 + jb_norm(y)))


@_check("polarization-agreement",
        "U_{x,y} = (U_{x+y} - U_x - U_y)/2 = L_x L_y + L_y L_x - L_{x o y}")
def _c_polar(alg, rng, tol):
    x, y = random_element(alg, rng), random_element(alg, rng)
    direct = U_bilinear(x, y).matrix
    polar = (U_op(x + y).matrix - U_op(x).matrix - U_op(y).matrix) / 2.0
    scale = (1.0 + jb_norm(x)) * (1.0 + jb_norm(y))
    return _opnorm(direct - polar) / scale


@_check("fundamental-formula", "U_{U_x y} = U_x U_y U_x")
def _c_fundamental(alg, rng, tol):
    x, y = random_element(alg, rng), random_element(alg, rng)
    lhs = U_op(U_op(x)(y)).matrix
    Ux = U_op(x).matrix
    rhs = Ux @ U_op(y).matrix @ Ux
    return _opnorm(lhs - rhs) / ((1.0 + jb_norm(x)) ** 4 * (1.0 + jb_norm(y)) ** 2)


@_check("norm-axioms", "|x o y| <= |x| |y|;  |x^2| = |x|^2;  |x^2| <= |x^2 + y^2|")
def _c_norms(alg, rng, tol):
    x, y = random_element(alg, rng), random_element(alg, rng)
    nx, ny = jb_norm(x), jb_norm(y)
    v1 = max(0.0, jb_norm(jordan_product(x, y)) - nx * ny)
    v2 = abs(jb_norm(jordan_product(x, x)) - nx * nx)
    v3 = max(0.0, nx * nx - jb_norm(jordan_product(x, x) + jordan_product(y, y)))
    return max(v1, v2, v3) / (1.0 + nx + ny) ** 2


@_check("congruence-oracle", "U_x y = x y x", kinds=("sym", "herm"))
def _c_congruence(alg, rng, tol):
    x, y = random_element(alg, rng), random_element(alg, rng)
    X, Y = to_matrix(x), to_matrix(y)
    lhs = to_matrix(U_op(x)(y))
    return float(np.linalg.norm(lhs - X @ Y @ X)
                 / ((1.0 + jb_norm(x)) ** 2 * (1.0 + jb_norm(y))))


@_check("inverse-roundtrip", "U_x x^{-1} = x;  (x^{-1})^{-1} = x")
def _c_inverse(alg, rng, tol):
    x = random_invertible(alg, rng)
    xi = inverse(x)
    r1 = jb_norm(U_op(x)(xi) - x)
    r2 = jb_norm(inverse(xi) - x)
    return max(r1, r2) / (1.0 + jb_norm(x)) ** 2


@_check("exp-u", "e^{2 L_v} = U_{e^v}")
def _c_expu(alg, rng, tol):
    v = 0.5 * random_element(alg, rng)
    lhs = scipy.linalg.expm(2.0 * L_op(v).matrix)
    rhs = U_op(apply_function(v, "exp")).matrix
    return _opnorm(lhs - rhs) / _opnorm(rhs)


@_check("spectral-mapping", "sigma(x^2) = sigma(x)^2;  sigma(e^x) = e^{sigma(x)}")
def _c_specmap(alg, rng, tol):
    x = random_element(alg, rng)
    vals = element_eigenvalues(x)
    sq = np.sort(element_eigenvalues(jordan_product(x, x)))
    ex = np.sort(element_eigenvalues(apply_function(x, "exp")))
    r1 = np.abs(sq - np.sort(vals ** 2)).max()
    r2 = np.abs(ex - np.sort(np.exp(vals))).max()
    return max(r1, r2) / (1.0 + jb_norm(x)) ** 2 / max(1.0, np.exp(vals).max())


@_check("spectral-frame", "x = sum lambda_i e_i;  e_i o e_j = delta_ij e_i;  sum e_i = 1")
def _c_frame(alg, rng, tol):
    x = random_element(alg, rng)
    sd = spectral_decompose(x)
    worst = jb_norm(sd.reconstruct() - x) / (1.0 + jb_norm(x))
    total = unit(alg)
    for i, e in enumerate(sd.frame):
        total = total - e
        worst = max(worst, jb_norm(jordan_product(e, e) - e))
        for f in sd.frame[i + 1:]:
            worst = max(worst, jb_norm(jordan_product(e, f)))
    return max(worst, jb_norm(total))


@_check("sqrt-log-roundtrip", "(sqrt y)^2 = y;  exp(log y) = y;  sqrt(U_x 1) = x on the cone")
def _c_sqrtlog(alg, rng, tol):
    y = random_cone_element(alg, rng)
    s = apply_function(y, "sqrt")
    r1 = jb_norm(jordan_product(s, s) - y)
    r2 = jb_norm(apply_function(apply_function(y, "log"), "exp") - y)
    r3 = jb_norm(apply_function(U_op(y)(unit(alg)), "sqrt") - y)
    return max(r1, r2, r3) / (1.0 + jb_norm(y)) ** 2


@_check("hull-endpoints", "min/max sigma(L_x) = min/max sigma(x)")
def _c_hull(alg, rng, tol):
    x = random_element(alg, rng)
    lo, hi = hull_check(x)
    return max(abs(lo), abs(hi)) / (1.0 + jb_norm(x))


@_check("order-unit-norm", "|x| = inf{lam : -lam 1 <= x <= lam 1}")
def _c_ordernorm(alg, rng, tol):
    x = random_element(alg, rng)
    return abs(order_unit_norm(x) - jb_norm(x)) / (1.0 + jb_norm(x))


@_check("self-duality", "x in cone => <x, y o y> >= 0")
def _c_selfdual(alg, rng, tol):
    x = random_cone_element(alg, rng)
    worst = 0.0
    for _ in range(16):
        y = random_element(alg, rng)
        pairing = trace_form(x, jordan_product(y, y))
        worst = max(worst, -pairing / (1.0 + jb_norm(x)) / (1.0 + jb_norm(y)) ** 2)
    return worst


@_check("transport", "U_{sqrt y} U_{sqrt x^{-1}} maps x to y and back")
def _c_transport(alg, rng, tol):
    x = random_cone_element(alg, rng)
    y = random_cone_element(alg, rng)
    g = transport(x, y)
    h = transport(y, x)
    r1 = jb_norm(g(x) - y)
    r2 = jb_norm(h(g(x)) - x)
    return max(r1, r2) / (1.0 + jb_norm(x) + jb_norm(y)) ** 2


@_check("cone-invariance", "U_x maps the cone into the cone")
def _c_coneinv(alg, rng, tol):
    x = random_invertible(alg, rng)
    ok = True
    for _ in range(8):
        y = random_cone_element(alg, rng)
        ok = ok and in_closure(U_op(x)(y), tol)
    return bool(ok)


@_check("retraction", "F(g,0) = g;  F(g,1)(1) = 1;  F(k,t) = k")
def _c_retract(alg, rng, tol):
    v = random_cone_element(alg, rng)
    k = random_automorphism(alg, rng)
    g = U_op(v) @ k
    r0 = _opnorm(cone_retraction(g, 0.0).matrix - g.matrix) / max(1.0, g.norm())
    end = cone_retraction(g, 1.0)
    r1 = float(np.linalg.norm(end(unit(alg)).coords - alg.unit_coords))
    rk = _opnorm(cone_retraction(k, 0.7).matrix - k.matrix) / max(1.0, k.norm())
    return max(r0, r1, rk)


# ---------------------------------------------------------------------------
# structure-group checks


@_check("str-membership", "U_{gx} = g U_x g^{-1} U_{g1} for U_y, products, inverses")
def _c_strmem(alg, rng, tol):
    x = random_invertible(alg, rng)
    y = random_invertible(alg, rng)
    g = U_op(x) @ U_op(y)
    return max(str_residual(U_op(x)), str_residual(g), str_residual(op_inverse(g)))


@_check("str-adjoint", "(g^*)^* = g;  (gh)^* = h^* g^*;  k^* = k^{-1}")
def _c_stradj(alg, rng, tol):
    g = U_op(random_invertible(alg, rng))
    h = U_op(random_cone_element(alg, rng))
    k = random_automorphism(alg, rng)
    gs = str_adjoint(g, tol)
    r1 = _opnorm(str_adjoint(gs, tol).matrix - g.matrix)
    r2 = _opnorm(str_adjoint(g @ h, tol).matrix
                 - (str_adjoint(h, tol) @ gs).matrix)
    r3 = _opnorm(str_adjoint(k, tol).matrix - op_inverse(k).matrix)
    scale = max(1.0, g.norm()) ** 2 * max(1.0, h.norm()) ** 2
    return max(r1, r2, r3) / scale


@_check("central-symmetry-membership",
        "S_p = 2 L_p - 1 in Str;  distinct central p give distinct cone copies")
def _c_sp(alg, rng, tol):
    cps = central_projections(alg)
    worst = 0.0
    for p in cps:
        worst = max(worst, str_residual(s_op(p, tol)))
    for i, p in enumerate(cps):
        for q in cps[i + 1:]:
            z = jordan_product(2.0 * p - unit(alg), 2.0 * q - unit(alg))
            if in_cone(z, tol):
                return 1.0
    return worst


@_check("pierce-identities",
        "U_eps = 8 L_p^2 - 8 L_p + 1 = 1 - 4 U_{p,p'};  U_p - U_{p'} = L_eps;  "
        "2 U_{p,p'} = 4 L_p (1 - L_p);  L_eps L_p (1 - L_p) = 0;  "
        "L_eps U_{p,p'} = 0;  L_eps^2 = 1 - 2 U_{p,p'}", min_dim=2)
def _c_pierce(alg, rng, tol):
    x = random_indefinite(alg, rng)
    p = apply_function(x, "chi_plus")
    q = unit(alg) - p
    Lp = L_op(p).matrix
    I = np.eye(alg.dim)
    eps = 2.0 * p - unit(alg)
    Ue = U_op(eps).matrix
    Le = L_op(eps).matrix
    Upq = U_bilinear(p, q).matrix
    pd = pierce_decompose(p, tol)
    devs = [
        Ue - (8.0 * Lp @ Lp - 8.0 * Lp + I),
        Ue - (I - 4.0 * Upq),
        pd.P1.matrix - pd.P0.matrix - Le,
        2.0 * Upq - 4.0 * Lp @ (I - Lp),
        Le @ Lp @ (I - Lp),
        Le @ Upq,
        Le @ Le - (I - 2.0 * Upq),
        pd.P1.matrix + pd.P0.matrix + pd.Phalf.matrix - I,
        pd.P1.matrix @ pd.P0.matrix,
        pd.Phalf.matrix @ pd.Phalf.matrix - pd.Phalf.matrix,
    ]
    worst = max(_opnorm(D) for D in devs)
    if sum(pd.dims) != alg.dim:
        return 1.0
    if not is_automorphism(VOperator(alg, Ue), tol):
        return 1.0
    return worst


@_check("central-projection-identities",
        "L_p = L_p^2 = U_p;  L_{p o x} = L_p L_x;  (p o x)^2 = p o x^2 for central p")
def _c_centrals(alg, rng, tol):
    x = random_element(alg, rng)
    worst = 0.0
    for p in central_projections(alg):
        if not is_central(p, tol):
            return 1.0
        Lp = L_op(p).matrix
        worst = max(worst, _opnorm(Lp @ Lp - Lp), _opnorm(U_op(p).matrix - Lp))
        px = jordan_product(p, x)
        worst = max(worst, _opnorm(L_op(px).matrix - Lp @ L_op(x).matrix)
                    / (1.0 + jb_norm(x)))
        worst = max(worst, jb_norm(jordan_product(px, px)
                                   - jordan_product(p, jordan_product(x, x)))
                    / (1.0 + jb_norm(x)) ** 2)
    return worst


@_check("central-count", "central projections enumerate 2^m indicator sums")
def _c_centralcount(alg, rng, tol):
    from .structure import _central_atoms
    cps = central_projections(alg)
    if len(cps) != 2 ** len(_central_atoms(alg)):
        return False
    return all(is_central(p, tol) for p in cps)


@_check("u-positive", "sigma(U_x) > 0  <=>  x = v o eps, v positive, eps central symmetry")
def _c_upositive(alg, rng, tol):
    x = random_invertible(alg, rng)
    spec_min = float(operator_spectrum(U_op(x)).real.min())
    try:
        v, eps = u_positive_decompose(x, tol)
        ok = spec_min > 0.0
        if not ok:
            return 1.0
        r = jb_norm(jordan_product(v, eps) - x) / (1.0 + jb_norm(x))
        if not in_cone(v, tol) or not is_central(apply_function(x, "chi_plus"), tol):
            return 1.0
        return r
    except UxNotPositive:
        return 0.0 if spec_min <= 0.0 else 1.0


@_check("u-spectrum-split",
        "sigma(U_x) = sigma(U_x|J+) + sigma(U_x|J-) + sigma(U_x|J0);  J0 part <= 0",
        min_dim=2)
def _c_usplit(alg, rng, tol):
    x = random_indefinite(alg, rng)
    plus, minus, mid = u_spectrum_split(x, tol)
    merged = np.sort(np.concatenate([plus, minus, mid]))
    full = np.sort(operator_spectrum(U_op(x)).real)
    scale = (1.0 + jb_norm(x)) ** 2
    r = np.abs(merged - full).max() / scale
    if mid.size and mid.max() > resolve_tol(tol) * scale:
        return 1.0
    return float(r)


@_check("str-decompose", "g = U_v S_p k recovers (v, p, k)")
def _c_strdec(alg, rng, tol):
    v = random_cone_element(alg, rng)
    cps = central_projections(alg)
    p = cps[int(rng.integers(len(cps)))]
    k = random_automorphism(alg, rng)
    g = U_op(v) @ s_op(p, tol) @ k
    dec = str_decompose(g, tol)
    scale = (1.0 + jb_norm(v)) ** 2
    return max(jb_norm(dec.v - v), jb_norm(dec.p - p),
               _opnorm(dec.k.matrix - k.matrix)) / scale


@_check("involutive-iff", "g^* = g^{-1}  <=>  the positive factor of g is 1")
def _c_involutive(alg, rng, tol):
    cps = central_projections(alg)
    p = cps[int(rng.integers(len(cps)))]
    k = random_automorphism(alg, rng)
    base = s_op(p, tol) @ k
    if int(rng.integers(2)):
        g = U_op(random_cone_element(alg, rng) + unit(alg)) @ base
    else:
        g = base
    dec = str_decompose(g, tol)
    direct = _opnorm(str_adjoint(g, tol).matrix - op_inverse(g).matrix) \
        <= np.sqrt(resolve_tol(tol)) * max(1.0, g.norm()) ** 2
    return dec.is_involutive(np.sqrt(resolve_tol(tol))) == direct


@_check("go-decompose", "g = U_y k with y = sqrt(g(1)) and k an automorphism")
def _c_godec(alg, rng, tol):
    v = random_cone_element(alg, rng)
    k = random_automorphism(alg, rng)
    g = U_op(v) @ k
    y, k2 = go_decompose(g, tol)
    r1 = jb_norm(y - v) / (1.0 + jb_norm(v))
    r2 = _opnorm((U_op(y) @ k2).matrix - g.matrix) / max(1.0, g.norm())
    if not is_automorphism(k2, tol):
        return 1.0
    return max(r1, r2)


@_check("lie-membership",
        "2 U_{x,Hx} = H U_x - U_x (H - 2 U_{H1,1});  exp(tH) in Str")
def _c_liemem(alg, rng, tol):
    H = L_op(random_element(alg, rng)) + random_derivation(alg, rng)
    worst = str_lie_residual(H)
    for t in (0.1, 0.5, 1.0):
        M = scipy.linalg.expm(t * H.matrix)
        worst = max(worst, str_residual(VOperator(alg, M)))
    return worst


@_check("lie-split", "H = L_u + D with u = H(1), D a derivation, exp(tD) in Aut")
def _c_liesplit(alg, rng, tol):
    u0 = random_element(alg, rng)
    D0 = random_derivation(alg, rng)
    H = L_op(u0) + D0
    u, D = lie_split(H, tol)
    r = jb_norm(u - u0) / (1.0 + jb_norm(u0))
    if not is_derivation(D, tol):
        return 1.0
    k = VOperator(alg, scipy.linalg.expm(0.5 * D.matrix))
    if not is_automorphism(k, max(resolve_tol(tol), 1e-8)):
        return 1.0
    return r


# ---------------------------------------------------------------------------
# isotope checks


@_check("homotope-jordan", "x ._u y = U_{x,y} u is commutative and satisfies Jordan")
def _c_homotope(alg, rng, tol):
    u = random_element(alg, rng)
    h = homotope(u)
    x, y = random_element(alg, rng), random_element(alg, rng)
    comm = jb_norm(homotope_product(h, x, y) - homotope_product(h, y, x))
    xx = homotope_product(h, x, x)
    lhs = homotope_product(h, xx, homotope_product(h, x, y))
    rhs = homotope_product(h, x, homotope_product(h, xx, y))
    scale = (1.0 + jb_norm(x)) ** 3 * (1.0 + jb_norm(y)) * (1.0 + jb_norm(u)) ** 2
    return max(comm, jb_norm(lhs - rhs) / scale)


@_check("isotope-unit", "1_u = u^{-1};  x .u x = U_x u;  U^u_x = U_x U_u")
def _c_isounit(alg, rng, tol):
    u = random_invertible(alg, rng)
    h = homotope(u)
    x = random_element(alg, rng)
    r1 = jb_norm(homotope_product(h, h.unit_u, x) - x) / (1.0 + jb_norm(x))
    scale = (1.0 + jb_norm(x)) ** 2 * (1.0 + jb_norm(u))
    r2 = jb_norm(homotope_product(h, x, x) - U_op(x)(u)) / scale
    xx = homotope_product(h, x, x)
    y = random_element(alg, rng)
    uq = 2.0 * homotope_product(h, x, homotope_product(h, x, y)) \
        - homotope_product(h, xx, y)
    r3 = jb_norm(uq - (U_op(x) @ U_op(u))(y)) / (scale * (1.0 + jb_norm(y)))
    return max(r1, r2, r3)


@_check("isotope-inverse", "x^{-1_u} = U_u^{-1} x^{-1};  U^u_x applied gives back x")
def _c_isoinv(alg, rng, tol):
    u = random_invertible(alg, rng)
    h = homotope(u)
    x = random_invertible(alg, rng)
    y = isotope_inverse(h, x)
    r1 = jb_norm((U_op(x) @ U_op(u))(y) - x) / (1.0 + jb_norm(x)) ** 2
    brute = np.linalg.solve((U_op(x) @ U_op(u)).matrix, x.coords)
    r2 = float(np.linalg.norm(brute - y.coords)) / (1.0 + jb_norm(y))
    return max(r1, r2)


@_check("isotope-positivity",
        "spectrum of g(z) in the isotope at g(1)^{-1} equals sigma(z)",
        kinds=("sym", "herm"))
def _c_isopos(alg, rng, tol):
    from .algebra import element_eigenvalues
    w = random_invertible(alg, rng)
    g = U_op(w)
    z = random_element(alg, rng)
    pencil = scipy.linalg.eigh(to_matrix(g(z)), to_matrix(g(unit(alg))),
                               eigvals_only=True)
    base = element_eigenvalues(z)
    r = np.abs(np.sort(pencil) - np.sort(base)).max() / (1.0 + jb_norm(z))
    if in_cone(z, tol) != bool(pencil.min() > 0):
        return 1.0
    return float(r)


@_check("isotope-isomorphic",
        "isotope isomorphic to base  <=>  sigma(U_u) > 0, with multiplicative witness")
def _c_isoiso(alg, rng, tol):
    u = random_invertible(alg, rng)
    ok, g = isotope_isomorphic(u, tol)
    positive = bool(operator_spectrum(U_op(u)).real.min() > 0.0)
    if ok != positive:
        return 1.0
    if not ok:
        return 0.0
    h = homotope(u)
    x, y = random_element(alg, rng), random_element(alg, rng)
    scale = (1.0 + jb_norm(x)) * (1.0 + jb_norm(y)) * (1.0 + jb_norm(u)) ** 2
    return jb_norm(g(jordan_product(x, y))
                   - homotope_product(h, g(x), g(y))) / scale


# ---------------------------------------------------------------------------
# Herm(n) checks


def _haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(M)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


@_check("congruence-membership",
        "A -> T A T* lies in Str, preserves the cone, sends 1 to T T*",
        kinds=("herm",))
def _c_congmem(alg, rng, tol):
    n = alg.n
    T = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    T += 3.0 * np.eye(n)
    g = congruence_op(T)
    r1 = str_residual(g)
    r2 = jb_norm(g(unit(alg)) - from_matrix(alg, T @ T.conj().T)) \
        / (1.0 + _opnorm(T)) ** 2
    if not in_cone(g(random_cone_element(alg, rng)), tol):
        return 1.0
    return max(r1, r2)


@_check("phase-gauge", "implementers of one congruence agree after the phase gauge",
        kinds=("herm",))
def _c_phase(alg, rng, tol):
    n = alg.n
    U = _haar_unitary(rng, n)
    lam = np.exp(1j * rng.uniform(0, 2 * np.pi))
    f1 = recover_implementer(congruence_op(U), tol)
    f2 = recover_implementer(congruence_op(lam * U), tol)
    if f1.conjugate_flag or f2.conjugate_flag:
        return 1.0
    return float(np.linalg.norm(f1.T - f2.T))


@_check("mixed-rigidity", "no linear congruence equals an antilinear one",
        kinds=("herm",), min_dim=4)
def _c_mixed(alg, rng, tol):
    n = alg.n
    for _ in range(4):
        T = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        S = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        try:
            gap = _opnorm(congruence_op(T).matrix - congruence_op(S, True).matrix)
        except JordanConeError:
            continue
        if gap <= 0.01:
            return 1.0
    return 0.0


@_check("implementer-roundtrip", "g(A) = T A T* with T = sqrt(g(1)) s",
        kinds=("herm",))
def _c_recover(alg, rng, tol):
    n = alg.n
    v = random_cone_element(alg, rng)
    U = _haar_unitary(rng, n)
    anti = bool(rng.integers(2))
    g = U_op(v) @ (j_op(n) @ congruence_op(U) if anti else congruence_op(U))
    f = recover_implementer(g, tol)
    if f.conjugate_flag != anti:
        return 1.0
    rebuilt = congruence_op(f.T, f.conjugate_flag)
    return _opnorm(rebuilt.matrix - g.matrix) / max(1.0, g.norm())


@_check("aut-components",
        "unitary congruences vs transpose-composed congruences; product of two "
        "antiunitaries is unitary", kinds=("herm",))
def _c_autcomp(alg, rng, tol):
    n = alg.n
    k1 = congruence_op(_haar_unitary(rng, n))
    k2 = j_op(n) @ congruence_op(_haar_unitary(rng, n))
    k3 = j_op(n) @ congruence_op(_haar_unitary(rng, n))
    if n == 1:
        return aut_component(k1, tol) is AutComponent.UNITARY
    return (aut_component(k1, tol) is AutComponent.UNITARY
            and aut_component(k2, tol) is AutComponent.ANTIUNITARY
            and aut_component(k2 @ k3, tol) is AutComponent.UNITARY)


@_check("lift-reproduction",
        "k near the identity is the congruence by e^Z W; the lift is continuous",
        kinds=("herm",))
def _c_lift(alg, rng, tol):
    n = alg.n
    Z0 = _random_skew(rng, n, 0.2)
    k = congruence_op(scipy.linalg.expm(Z0))
    lift = lift_automorphism(k, 0, tol)
    r1 = _opnorm(congruence_op(lift.s).matrix - k.matrix)
    k2 = congruence_op(scipy.linalg.expm(1.05 * Z0))
    lift2 = lift_automorphism(k2, 0, tol)
    dk = _opnorm(k2.matrix - k.matrix)
    ds = np.linalg.norm(lift2.s - lift.s)
    r2 = max(0.0, ds - 50.0 * dk)
    return max(r1, r2)


def _random_skew(rng: np.random.Generator, n: int, scale: float) -> np.ndarray:
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Z = (M - M.conj().T) / 2.0
    return scale * Z / max(1.0, _opnorm(Z))


@_check("one-param-lift", "s(exp(t ad Z)) = exp(t Z) for p-codiagonal Z",
        kinds=("herm",), min_dim=4)
def _c_oneparam(alg, rng, tol):
    n = alg.n
    Z = np.zeros((n, n), dtype=complex)
    row = rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)
    Z[0, 1:] = row
    Z[1:, 0] = -row.conj()
    Z *= 0.4 / max(1.0, _opnorm(Z))
    worst = 0.0
    for t in (0.1, 0.5):
        k = congruence_op(scipy.linalg.expm(t * Z))
        lift = lift_automorphism(k, 0, tol)
        worst = max(worst, float(np.linalg.norm(lift.s - scipy.linalg.expm(t * Z))))
    return worst


@_check("derivation-skew", "D = [Z, .] recovers the trace-free Z",
        kinds=("herm",))
def _c_derskew(alg, rng, tol):
    n = alg.n
    basis = skew_traceless_basis(n)
    Z0 = np.zeros((n, n), dtype=complex)
    for K in basis:
        Z0 += float(rng.standard_normal()) * K
    D = op_from_matrix_map(alg, lambda B: Z0 @ B - B @ Z0)
    Z = derivation_to_skew(D, tol)
    return float(np.linalg.norm(Z - Z0)) / (1.0 + _opnorm(Z0))


@_check("str-as-lr", "H(A) = T A + A T*", kinds=("herm",))
def _c_strlr(alg, rng, tol):
    n = alg.n
    T0 = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    T0 -= (1j * np.trace(T0).imag / n) * np.eye(n)
    H = op_from_matrix_map(alg, lambda B: T0 @ B + B @ T0.conj().T)
    T = str_as_lr(H, tol)
    return float(np.linalg.norm(T - T0)) / (1.0 + _opnorm(T0))


@_check("two-components", "Str splits into G(Omega) and -G(Omega)", kinds=("herm",))
def _c_twocomp(alg, rng, tol):
    n = alg.n
    v = random_cone_element(alg, rng)
    g = U_op(v) @ congruence_op(_haar_unitary(rng, n))
    return (str_two_components(g, tol) is StrComponent.PLUS
            and str_two_components(-1.0 * g, tol) is StrComponent.MINUS)
