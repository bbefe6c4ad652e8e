"""
Sparse exact linear maps between tensor powers of an N-dimensional space.

Basis vectors of V^{(x)m} are multi-indices (i_1, ..., i_m) flattened
big-endian: the first strand is the most significant base-N digit, which
is the usual Kronecker-product convention.
"""
from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .cyclo import CycScalar, FieldSpec, as_scalar

DOWN = "d"  # strand carrying V
UP = "u"    # strand carrying V*


class ShapeError(ValueError):
    pass


def flatten(index: Sequence[int], n: int) -> int:
    flat = 0
    for i in index:
        flat = flat * n + i
    return flat


def unflatten(flat: int, n: int, arity: int) -> tuple[int, ...]:
    digits = [0] * arity
    for pos in range(arity - 1, -1, -1):
        flat, digits[pos] = divmod(flat, n)
    return tuple(digits)


class Operator:
    """A matrix over CycScalar stored column-sparse.

    ``cols[c][r]`` is the (r, c) entry; absent entries are zero.  The
    signatures record the orientation of each strand on the input and
    output side.
    """

    __slots__ = ("field", "n", "in_sig", "out_sig", "cols")

    def __init__(self, spec: FieldSpec, n: int, cols: dict, in_sig: Sequence[str], out_sig: Sequence[str] | None = None):
        self.field = spec
        self.n = n
        self.in_sig = tuple(in_sig)
        self.out_sig = tuple(in_sig if out_sig is None else out_sig)
        self.cols = cols

    # -- shape ----------------------------------------------------------
    @property
    def in_arity(self) -> int:
        return len(self.in_sig)

    @property
    def out_arity(self) -> int:
        return len(self.out_sig)

    @property
    def arity(self) -> int:
        if self.in_arity != self.out_arity:
            raise ShapeError("arity is only defined for square operators")
        return self.in_arity

    @property
    def signature(self) -> tuple[str, ...]:
        return self.in_sig

    @property
    def in_dim(self) -> int:
        return self.n ** self.in_arity

    @property
    def out_dim(self) -> int:
        return self.n ** self.out_arity

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, spec: FieldSpec, n: int, arity: int, sig: Sequence[str] | None = None) -> "Operator":
        return cls(spec, n, {}, sig or (DOWN,) * arity)

    @classmethod
    def identity(cls, spec: FieldSpec, n: int, arity: int, sig: Sequence[str] | None = None) -> "Operator":
        one = spec.one()
        return cls(spec, n, {c: {c: one} for c in range(n ** arity)}, sig or (DOWN,) * arity)

    @classmethod
    def diagonal(cls, spec: FieldSpec, n: int, arity: int,
                 entry: Callable[[tuple[int, ...]], CycScalar],
                 sig: Sequence[str] | None = None) -> "Operator":
        cols = {}
        for c in range(n ** arity):
            val = entry(unflatten(c, n, arity))
            if val:
                cols[c] = {c: val}
        return cls(spec, n, cols, sig or (DOWN,) * arity)

    @classmethod
    def from_dense(cls, spec: FieldSpec, rows: Sequence[Sequence], sig: Sequence[str] | None = None) -> "Operator":
        dim = len(rows)
        n = dim
        arity = 1
        if sig is not None:
            arity = len(sig)
            n = round(dim ** (1 / arity))
            if n ** arity != dim:
                raise ShapeError(f"dimension {dim} is not a power matching signature {sig}")
        cols: dict = {}
        for r, row in enumerate(rows):
            if len(row) != dim:
                raise ShapeError("matrix must be square")
            for c, v in enumerate(row):
                v = as_scalar(spec, v)
                if v:
                    cols.setdefault(c, {})[r] = v
        return cls(spec, n, cols, sig or (DOWN,) * arity)

    @classmethod
    def from_map(cls, spec: FieldSpec, n: int, in_sig: Sequence[str], out_sig: Sequence[str],
                 image: Callable[[tuple[int, ...]], dict]) -> "Operator":
        """Build from a function sending an input multi-index to {output multi-index: scalar}."""
        cols = {}
        for c in range(n ** len(in_sig)):
            out = image(unflatten(c, n, len(in_sig)))
            col = {flatten(k, n): v for k, v in out.items() if v}
            if col:
                cols[c] = col
        return cls(spec, n, cols, in_sig, out_sig)

    # -- access -----------------------------------------------------------
    def entry(self, r: int, c: int) -> CycScalar:
        v = self.cols.get(c, {}).get(r)
        return self.field.zero() if v is None else v

    def column(self, c: int) -> dict[int, CycScalar]:
        return self.cols.get(c, {})

    def items(self) -> Iterable[tuple[int, int, CycScalar]]:
        for c, col in self.cols.items():
            for r, v in col.items():
                yield r, c, v

    def nnz(self) -> int:
        return sum(len(col) for col in self.cols.values())

    def to_dense(self) -> list[list[CycScalar]]:
        zero = self.field.zero()
        rows = [[zero] * self.in_dim for _ in range(self.out_dim)]
        for r, c, v in self.items():
            rows[r][c] = v
        return rows

    def apply(self, vec: dict[int, CycScalar]) -> dict[int, CycScalar]:
        out: dict[int, CycScalar] = {}
        for c, x in vec.items():
            for r, v in self.cols.get(c, {}).items():
                out[r] = out[r] + v * x if r in out else v * x
        return {r: v for r, v in out.items() if v}

    # -- algebra ----------------------------------------------------------
    def _check_compatible(self, other: "Operator") -> None:
        if other.field is not self.field or other.n != self.n:
            raise ShapeError("operators over different fields or dimensions")

    def __matmul__(self, other: "Operator") -> "Operator":
        """Composition: (self @ other)(v) = self(other(v))."""
        self._check_compatible(other)
        if other.out_sig != self.in_sig:
            raise ShapeError(f"cannot compose: {other.out_sig} feeds {self.in_sig}")
        mine = self.cols
        cols = {}
        for c, col in other.cols.items():
            acc: dict[int, CycScalar] = {}
            for k, b in col.items():
                for r, a in mine.get(k, {}).items():
                    p = a * b
                    if r in acc:
                        acc[r] = acc[r] + p
                    else:
                        acc[r] = p
            acc = {r: v for r, v in acc.items() if v}
            if acc:
                cols[c] = acc
        return Operator(self.field, self.n, cols, other.in_sig, self.out_sig)

    def _combine(self, other: "Operator", sign: int) -> "Operator":
        self._check_compatible(other)
        if other.in_sig != self.in_sig or other.out_sig != self.out_sig:
            raise ShapeError("cannot add operators with different signatures")
        cols = {c: dict(col) for c, col in self.cols.items()}
        for c, col in other.cols.items():
            mine = cols.setdefault(c, {})
            for r, v in col.items():
                if sign < 0:
                    v = -v
                new = mine[r] + v if r in mine else v
                if new:
                    mine[r] = new
                else:
                    mine.pop(r, None)
            if not mine:
                del cols[c]
        return Operator(self.field, self.n, cols, self.in_sig, self.out_sig)

    def __add__(self, other: "Operator") -> "Operator":
        return self._combine(other, 1)

    def __sub__(self, other: "Operator") -> "Operator":
        return self._combine(other, -1)

    def __neg__(self) -> "Operator":
        return self.scale(-1)

    def scale(self, s) -> "Operator":
        s = as_scalar(self.field, s)
        if not s:
            return Operator(self.field, self.n, {}, self.in_sig, self.out_sig)
        cols = {c: {r: v * s for r, v in col.items()} for c, col in self.cols.items()}
        return Operator(self.field, self.n, cols, self.in_sig, self.out_sig)

    def __mul__(self, s) -> "Operator":
        if isinstance(s, Operator):
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Operator":
        if k < 0:
            return self.inverse() ** (-k)
        result = Operator.identity(self.field, self.n, self.arity, self.in_sig)
        for _ in range(k):
            result = self @ result
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Operator):
            return NotImplemented
        return (self.n == other.n and self.in_sig == other.in_sig
                and self.out_sig == other.out_sig and self.cols == other.cols)

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self.cols

    def tensor(self, other: "Operator") -> "Operator":
        """Kronecker product; self acts on the leading strands."""
        self._check_compatible(other)
        m_in, m_out = other.in_dim, other.out_dim
        cols = {}
        for c1, col1 in self.cols.items():
            for c2, col2 in other.cols.items():
                cols[c1 * m_in + c2] = {
                    r1 * m_out + r2: v1 * v2 for r1, v1 in col1.items() for r2, v2 in col2.items()
                }
        return Operator(self.field, self.n, cols, self.in_sig + other.in_sig, self.out_sig + other.out_sig)

    def transpose(self) -> "Operator":
        cols: dict = {}
        for r, c, v in self.items():
            cols.setdefault(r, {})[c] = v
        return Operator(self.field, self.n, cols, self.out_sig, self.in_sig)

    # -- structure --------------------------------------------------------
    def is_diagonal(self) -> bool:
        return all(set(col) <= {c} for c, col in self.cols.items())

    def diagonal_entries(self) -> list[CycScalar]:
        return [self.entry(c, c) for c in range(min(self.in_dim, self.out_dim))]

    def scalar_multiple(self) -> CycScalar | None:
        """s if self == s * Id exactly, else None."""
        if self.in_sig != self.out_sig or not self.is_diagonal():
            return None
        diag = self.diagonal_entries()
        first = diag[0]
        if all(d == first for d in diag):
            return first
        return None

    def is_a_free(self) -> bool:
        return all(v.is_a_free() for _, _, v in self.items())

    def a_dependent_entries(self) -> set[tuple[int, int]]:
        return {(r, c) for r, c, v in self.items() if not v.is_a_free()}

    def subs_a(self, value: CycScalar) -> "Operator":
        cols = {}
        for c, col in self.cols.items():
            new = {r: v.subs_a(value) for r, v in col.items()}
            new = {r: v for r, v in new.items() if v}
            if new:
                cols[c] = new
        return Operator(self.field, self.n, cols, self.in_sig, self.out_sig)

    def inverse(self) -> "Operator":
        """Exact inverse by sparse Gauss-Jordan elimination.

        Pivots must be monomials c*a^k (the only divisions available); a
        pivot column with no such entry raises UnsupportedDivisionError.
        """
        from .cyclo import UnsupportedDivisionError

        if self.in_sig != self.out_sig:
            raise ShapeError("only square operators with matching signatures are invertible")
        dim = self.in_dim
        # row-major working copies of [A | I]
        rows: list[dict[int, CycScalar]] = [dict() for _ in range(dim)]
        for r, c, v in self.items():
            rows[r][c] = v
        one = self.field.one()
        inv_rows: list[dict[int, CycScalar]] = [{r: one} for r in range(dim)]
        col_rows: dict[int, set[int]] = {}
        for r, row in enumerate(rows):
            for c in row:
                col_rows.setdefault(c, set()).add(r)
        used: set[int] = set()
        pivot_of: dict[int, int] = {}
        for c in range(dim):
            candidates = [r for r in col_rows.get(c, ()) if r not in used]
            if not candidates:
                raise ZeroDivisionError("singular operator")
            monos = [r for r in candidates if rows[r][c].is_monomial()]
            if not monos:
                raise UnsupportedDivisionError("no monomial pivot available")
            p = min(monos, key=lambda r: (len(rows[r]), r))
            used.add(p)
            pivot_of[c] = p
            inv_p = rows[p][c].invert()
            rows[p] = {k: v * inv_p for k, v in rows[p].items()}
            inv_rows[p] = {k: v * inv_p for k, v in inv_rows[p].items()}
            for r in list(col_rows[c]):
                if r == p:
                    continue
                factor = rows[r][c]
                for target, source in ((rows, rows[p]), (inv_rows, inv_rows[p])):
                    row = target[r]
                    for k, v in source.items():
                        new = row[k] - factor * v if k in row else -(factor * v)
                        if new:
                            if target is rows and k not in row:
                                col_rows.setdefault(k, set()).add(r)
                            row[k] = new
                        else:
                            row.pop(k, None)
                            if target is rows:
                                col_rows[k].discard(r)
            col_rows[c] = {p}
        cols: dict = {}
        for c, p in pivot_of.items():
            for k, v in inv_rows[p].items():
                cols.setdefault(k, {})[c] = v
        return Operator(self.field, self.n, cols, self.in_sig, self.out_sig)


def permutation(spec: FieldSpec, n: int, perm: Sequence[int], sig: Sequence[str] | None = None) -> Operator:
    """Operator sending e_{i_1} (x) ... (x) e_{i_m} to the tensor with factor k moved to slot perm[k]."""
    arity = len(perm)
    one = spec.one()
    cols = {}
    for c in range(n ** arity):
        idx = unflatten(c, n, arity)
        out = [0] * arity
        for k, p in enumerate(perm):
            out[p] = idx[k]
        cols[c] = {flatten(out, n): one}
    sig = tuple(sig or (DOWN,) * arity)
    out_sig = [None] * arity
    for k, p in enumerate(perm):
        out_sig[p] = sig[k]
    return Operator(spec, n, cols, sig, tuple(out_sig))


def flip(spec: FieldSpec, n: int) -> Operator:
    """sigma(v (x) w) = w (x) v on V (x) V."""
    return permutation(spec, n, (1, 0))


def embed(op: Operator, strands: Sequence[int], arity: int) -> Operator:
    """Act with a square operator on the listed strands of V^{(x)arity}, identity elsewhere.

    ``strands`` lists, in order, which strand carries each tensor factor of
    ``op`` (e.g. (0, 2) gives the 1-3 leg of a two-leg operator).
    """
    k = op.arity
    if len(strands) != k or len(set(strands)) != k:
        raise ShapeError("strand list must match operator arity")
    n = op.n
    cols = {}
    for c in range(n ** arity):
        idx = unflatten(c, n, arity)
        sub_in = flatten([idx[s] for s in strands], n)
        col = op.cols.get(sub_in)
        if not col:
            continue
        out_col = {}
        base = list(idx)
        for r, v in col.items():
            sub_out = unflatten(r, n, k)
            for s, val in zip(strands, sub_out):
                base[s] = val
            out_col[flatten(base, n)] = v
        for s in strands:
            base[s] = idx[s]
        cols[c] = out_col
    return Operator(op.field, n, cols, (DOWN,) * arity)
