"""Finite-dimensional JB-algebras and the basic Jordan operator calculus.

Supported algebras: real symmetric matrices Sym(n), complex Hermitian
matrices Herm(n), spin factors R + R^(d-1), and finite direct sums of
these. Elements are real coordinate vectors in a fixed basis; operators
are real dimV x dimV matrices in that basis. The basis is orthonormal
under the trace bilinear form for the matrix algebras and orthogonal with
a uniform weight 2 for spin factors, so L_x and U_x are symmetric
matrices in coordinates for every supported algebra.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from . import _kernels
from .config import invert_cutoff, resolve_tol
from .errors import AlgebraMismatch, NotInvertible, SingularOperator

KINDS = ("sym", "herm", "spin", "sum")


def _sym_basis(n: int) -> tuple[np.ndarray, ...]:
    out = []
    for i in range(n):
        E = np.zeros((n, n))
        E[i, i] = 1.0
        out.append(E)
    r = 1.0 / np.sqrt(2.0)
    for i in range(n):
        for j in range(i + 1, n):
            E = np.zeros((n, n))
            E[i, j] = E[j, i] = r
            out.append(E)
    return tuple(out)


def _herm_basis(n: int) -> tuple[np.ndarray, ...]:
    out = [E.astype(complex) for E in _sym_basis(n)]
    r = 1.0 / np.sqrt(2.0)
    for i in range(n):
        for j in range(i + 1, n):
            E = np.zeros((n, n), dtype=complex)
            E[i, j] = 1j * r
            E[j, i] = -1j * r
            out.append(E)
    return tuple(out)


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Which JB-algebra, plus its fixed basis data.

    kind is one of "sym", "herm", "spin", "sum". For the simple kinds n is
    the matrix size (or the total spin dimension d); for "sum" the summands
    tuple holds the simple parts in order and n is unused.
    """

    kind: str
    n: int = 0
    summands: tuple["AlgebraDescriptor", ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown algebra kind {self.kind!r}")
        if self.kind == "sum":
            if len(self.summands) < 1:
                raise ValueError("direct sum needs at least one summand")
            if any(s.kind == "sum" for s in self.summands):
                raise ValueError("direct sum summands must be simple kinds")
        else:
            if self.summands:
                raise ValueError("simple algebras carry no summands")
            if self.n < 1:
                raise ValueError(f"{self.kind} size must be >= 1, got {self.n}")

    @cached_property
    def dim(self) -> int:
        if self.kind == "sym":
            return self.n * (self.n + 1) // 2
        if self.kind == "herm":
            return self.n * self.n
        if self.kind == "spin":
            return self.n
        return sum(s.dim for s in self.summands)

    def label(self) -> str:
        """Short text form, e.g. "herm:3" or "sym:2+sym:3"."""
        if self.kind == "sum":
            return "+".join(s.label() for s in self.summands)
        return f"{self.kind}:{self.n}"

    @cached_property
    def basis_matrices(self) -> tuple[np.ndarray, ...]:
        """Canonical basis as matrices; defined for sym and herm only."""
        if self.kind == "sym":
            mats = _sym_basis(self.n)
        elif self.kind == "herm":
            mats = _herm_basis(self.n)
        else:
            raise ValueError(f"{self.kind} algebra has no matrix basis")
        for M in mats:
            M.setflags(write=False)
        return mats

    @cached_property
    def structure_tensor(self) -> np.ndarray:
        """C with e_i o e_j = sum_k C[i,j,k] e_k."""
        d = self.dim
        C = np.zeros((d, d, d))
        if self.kind in ("sym", "herm"):
            mats = self.basis_matrices
            for i in range(d):
                for j in range(i, d):
                    P = mats[i] @ mats[j]
                    row = _project_matrix(self, (P + P.conj().T) / 2.0)
                    C[i, j] = row
                    C[j, i] = row
        elif self.kind == "spin":
            # (s,u) o (t,w) = (st + <u,w>, sw + tu); e_0 is the unit
            for j in range(d):
                C[0, j, j] = 1.0
                C[j, 0, j] = 1.0
            for i in range(1, d):
                C[i, i, 0] = 1.0
            C[0, 0, 0] = 1.0
        else:
            for off, part in self.block_offsets:
                s = slice(off, off + part.dim)
                C[s, s, s] = part.structure_tensor
        C.setflags(write=False)
        return C

    @cached_property
    def l_stack(self) -> np.ndarray:
        """Stacked left-multiplication matrices of the basis: l_stack[i] = L_{e_i}."""
        L = np.transpose(self.structure_tensor, (0, 2, 1)).copy()
        L.setflags(write=False)
        return L

    @cached_property
    def block_offsets(self) -> tuple[tuple[int, "AlgebraDescriptor"], ...]:
        """(coordinate offset, summand) pairs; a simple algebra is one block."""
        if self.kind != "sum":
            return ((0, self),)
        out = []
        off = 0
        for part in self.summands:
            out.append((off, part))
            off += part.dim
        return tuple(out)

    @cached_property
    def trace_weights(self) -> np.ndarray:
        """Per-coordinate weights of the trace bilinear form (2 on spin blocks)."""
        w = np.ones(self.dim)
        for off, part in self.block_offsets:
            if part.kind == "spin":
                w[off:off + part.dim] = 2.0
        w.setflags(write=False)
        return w

    @cached_property
    def unit_coords(self) -> np.ndarray:
        u = np.zeros(self.dim)
        for off, part in self.block_offsets:
            if part.kind == "spin":
                u[off] = 1.0
            else:
                u[off:off + part.n] = 1.0
        u.setflags(write=False)
        return u


@lru_cache(maxsize=None)
def sym_real(n: int) -> AlgebraDescriptor:
    """Real symmetric n x n matrices under (xy + yx)/2."""
    return AlgebraDescriptor("sym", int(n))


@lru_cache(maxsize=None)
def herm_complex(n: int) -> AlgebraDescriptor:
    """Complex Hermitian n x n matrices under (xy + yx)/2."""
    return AlgebraDescriptor("herm", int(n))


@lru_cache(maxsize=None)
def spin_factor(d: int) -> AlgebraDescriptor:
    """Spin factor R + R^(d-1) with (s,u)o(t,w) = (st + <u,w>, sw + tu)."""
    return AlgebraDescriptor("spin", int(d))


def direct_sum(*parts: AlgebraDescriptor) -> AlgebraDescriptor:
    """Direct sum acting blockwise on concatenated coordinates."""
    flat: list[AlgebraDescriptor] = []
    for p in parts:
        if p.kind == "sum":
            flat.extend(p.summands)
        else:
            flat.append(p)
    return _direct_sum_cached(tuple(flat))


@lru_cache(maxsize=None)
def _direct_sum_cached(parts: tuple[AlgebraDescriptor, ...]) -> AlgebraDescriptor:
    return AlgebraDescriptor("sum", 0, parts)


@dataclass(frozen=True, eq=False)
class Element:
    """A point of V as a real coordinate vector in the fixed basis."""

    algebra: AlgebraDescriptor
    coords: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        if c.shape != (self.algebra.dim,):
            raise ValueError(
                f"expected {self.algebra.dim} coordinates for {self.algebra.label()}, "
                f"got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coordinates must be finite")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    def __add__(self, other: "Element") -> "Element":
        _same_algebra(self, other)
        return Element(self.algebra, self.coords + other.coords)

    def __sub__(self, other: "Element") -> "Element":
        _same_algebra(self, other)
        return Element(self.algebra, self.coords - other.coords)

    def __neg__(self) -> "Element":
        return Element(self.algebra, -self.coords)

    def __mul__(self, scalar: float) -> "Element":
        return Element(self.algebra, self.coords * float(scalar))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Element({self.algebra.label()}, {np.array2string(self.coords, precision=6)})"


@dataclass(frozen=True, eq=False)
class VOperator:
    """A real dimV x dimV matrix acting on V in the fixed basis."""

    algebra: AlgebraDescriptor
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        d = self.algebra.dim
        if m.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("operator entries must be finite")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __call__(self, x: Element) -> Element:
        _same_algebra(self, x)
        return Element(self.algebra, self.matrix @ x.coords)

    def __matmul__(self, other: "VOperator") -> "VOperator":
        _same_algebra(self, other)
        return VOperator(self.algebra, self.matrix @ other.matrix)

    def __add__(self, other: "VOperator") -> "VOperator":
        _same_algebra(self, other)
        return VOperator(self.algebra, self.matrix + other.matrix)

    def __sub__(self, other: "VOperator") -> "VOperator":
        _same_algebra(self, other)
        return VOperator(self.algebra, self.matrix - other.matrix)

    def __neg__(self) -> "VOperator":
        return VOperator(self.algebra, -self.matrix)

    def __mul__(self, scalar: float) -> "VOperator":
        return VOperator(self.algebra, self.matrix * float(scalar))

    __rmul__ = __mul__

    def norm(self) -> float:
        """Spectral norm of the matrix."""
        return float(np.linalg.norm(self.matrix, 2))

    def __repr__(self) -> str:
        return f"VOperator({self.algebra.label()}, {self.algebra.dim}x{self.algebra.dim})"


def _same_algebra(a, b) -> None:
    if a.algebra is b.algebra:
        return
    if a.algebra != b.algebra:
        raise AlgebraMismatch(
            f"operands live in different algebras: {a.algebra.label()} vs {b.algebra.label()}")


def element(algebra: AlgebraDescriptor, coords) -> Element:
    """Build an Element, validating length and finiteness."""
    return Element(algebra, np.asarray(coords, dtype=float))


def unit(algebra: AlgebraDescriptor) -> Element:
    return Element(algebra, algebra.unit_coords)


def zero(algebra: AlgebraDescriptor) -> Element:
    return Element(algebra, np.zeros(algebra.dim))


def basis_element(algebra: AlgebraDescriptor, i: int) -> Element:
    c = np.zeros(algebra.dim)
    c[i] = 1.0
    return Element(algebra, c)


def identity_op(algebra: AlgebraDescriptor) -> VOperator:
    return VOperator(algebra, np.eye(algebra.dim))


def op_inverse(g: VOperator) -> VOperator:
    """Matrix inverse of a VOperator; SingularOperator if ill-conditioned."""
    try:
        inv = np.linalg.inv(g.matrix)
    except np.linalg.LinAlgError:
        raise SingularOperator("operator is singular") from None
    check = np.abs(g.matrix @ inv - np.eye(g.algebra.dim)).max()
    if not np.isfinite(check) or check > 1e-6:
        raise SingularOperator(
            f"operator is numerically singular (inverse residual {check:.3g})")
    return VOperator(g.algebra, inv)


# ---------------------------------------------------------------------------
# matrix and block views


def to_matrix(x: Element) -> np.ndarray:
    """Matrix realization of an element of a simple sym or herm algebra."""
    alg = x.algebra
    mats = alg.basis_matrices
    M = np.zeros_like(mats[0])
    for c, B in zip(x.coords, mats):
        M = M + c * B
    return M


def from_matrix(algebra: AlgebraDescriptor, M: np.ndarray) -> Element:
    """Element with the given symmetric or Hermitian matrix realization."""
    return Element(algebra, _project_matrix(algebra, M))


def _project_matrix(algebra: AlgebraDescriptor, M: np.ndarray) -> np.ndarray:
    mats = algebra.basis_matrices
    flatM = np.asarray(M).ravel()
    return np.array([np.vdot(B.ravel(), flatM).real for B in mats])


def spin_parts(x: Element) -> tuple[float, np.ndarray]:
    """(s, u) split of a spin-factor element."""
    if x.algebra.kind != "spin":
        raise ValueError("spin_parts needs a spin-factor element")
    return float(x.coords[0]), x.coords[1:]


def spin_element(algebra: AlgebraDescriptor, s: float, u) -> Element:
    if algebra.kind != "spin":
        raise ValueError("spin_element needs a spin-factor algebra")
    return Element(algebra, np.concatenate(([float(s)], np.asarray(u, dtype=float))))


def block_split(x: Element) -> list[Element]:
    """Summand components of a direct-sum element (a simple x is one block)."""
    return [Element(part, x.coords[off:off + part.dim])
            for off, part in x.algebra.block_offsets]


def block_join(algebra: AlgebraDescriptor, parts: list[Element]) -> Element:
    expected = [p for _, p in algebra.block_offsets]
    if len(parts) != len(expected):
        raise ValueError(f"expected {len(expected)} blocks, got {len(parts)}")
    for got, want in zip(parts, expected):
        if got.algebra != want:
            raise AlgebraMismatch("block does not match the summand algebra")
    return Element(algebra, np.concatenate([p.coords for p in parts]))


# ---------------------------------------------------------------------------
# Jordan operator calculus


def jordan_product(x: Element, y: Element) -> Element:
    """The commutative product x o y."""
    _same_algebra(x, y)
    C = x.algebra.structure_tensor
    return Element(x.algebra, _kernels.product(C, x.coords, y.coords))


def L_op(x: Element) -> VOperator:
    """Left multiplication L_x: y -> x o y."""
    return VOperator(x.algebra, _kernels.l_matrix(x.algebra.structure_tensor, x.coords))


def U_op(x: Element) -> VOperator:
    """Quadratic representation U_x = 2 L_x^2 - L_{x o x}."""
    return VOperator(x.algebra, _kernels.u_matrix(x.algebra.structure_tensor, x.coords))


def U_bilinear(x: Element, y: Element) -> VOperator:
    """Polarized quadratic form U_{x,y} = L_x L_y + L_y L_x - L_{x o y}."""
    _same_algebra(x, y)
    C = x.algebra.structure_tensor
    return VOperator(x.algebra, _kernels.ub_matrix(C, x.coords, y.coords))


def element_eigenvalues(x: Element) -> np.ndarray:
    """Ascending eigenvalues of x (with matrix multiplicities, blockwise)."""
    alg = x.algebra
    if alg.kind in ("sym", "herm"):
        return np.linalg.eigvalsh(to_matrix(x))
    if alg.kind == "spin":
        s, u = spin_parts(x)
        if alg.dim == 1:
            return np.array([s])
        r = float(np.linalg.norm(u))
        return np.array([s - r, s + r])
    vals = np.concatenate([element_eigenvalues(b) for b in block_split(x)])
    vals.sort()
    return vals


def jb_norm(x: Element) -> float:
    """JB norm: the spectral radius max |sigma(x)|."""
    vals = element_eigenvalues(x)
    return float(np.abs(vals).max())


def is_invertible(x: Element) -> bool:
    """Spectral invertibility test with the relative cutoff."""
    vals = element_eigenvalues(x)
    norm = float(np.abs(vals).max())
    return float(np.abs(vals).min()) > invert_cutoff(norm)


def inverse(x: Element) -> Element:
    """Jordan inverse, computed as the solution of U_x y = x."""
    vals = element_eigenvalues(x)
    norm = float(np.abs(vals).max())
    small = float(np.abs(vals).min())
    if small <= invert_cutoff(norm):
        raise NotInvertible(
            f"element has an eigenvalue of magnitude {small:.3g} "
            f"(cutoff {invert_cutoff(norm):.3g})")
    U = U_op(x)
    return Element(x.algebra, np.linalg.solve(U.matrix, x.coords))


def trace_form(x: Element, y: Element) -> float:
    """Trace bilinear form: trace(x o y) blockwise, 2(st + <u,w>) on spin."""
    _same_algebra(x, y)
    return float(np.sum(x.algebra.trace_weights * x.coords * y.coords))


def op_from_matrix_map(algebra: AlgebraDescriptor, fn) -> VOperator:
    """VOperator whose action on basis matrices is given by fn (sym/herm only)."""
    cols = []
    for B in algebra.basis_matrices:
        cols.append(_project_matrix(algebra, fn(B)))
    return VOperator(algebra, np.array(cols).T)
