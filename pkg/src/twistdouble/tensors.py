"""Sparse exact multilinear algebra.

Everything is index-based: a TensorElement with k legs over an n-dimensional
space is a sparse map from k-tuples of basis indices to nonzero scalars.
Algebra structure enters only through AlgebraOps (a structure-constant
multiplication table plus unit), which multiplies equal-leg tensors
componentwise; coalgebra structure enters through CoalgebraData.  Exact
Gaussian elimination provides solve / nullspace / inversion, and convolution
inverses are found by solving the linear system that expresses convolution
by a fixed map as a matrix acting on Hom(C, A).
"""

from __future__ import annotations

from itertools import product
from typing import NamedTuple

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotConvolutionInvertible,
    NotInvertible,
    SolveInconsistent,
)


class TensorElement:
    """Sparse element of the k-th tensor power of an n-dimensional space."""

    __slots__ = ("dim", "legs", "field", "data")

    def __init__(self, dim, legs, field, data=None):
        self.dim = dim
        self.legs = legs
        self.field = field
        self.data = {k: v for k, v in (data or {}).items() if v}

    @classmethod
    def zero(cls, dim, legs, field):
        return cls(dim, legs, field, {})

    @classmethod
    def basis(cls, dim, legs, field, idx):
        if isinstance(idx, int):
            idx = (idx,)
        idx = tuple(idx)
        if len(idx) != legs or any(not 0 <= i < dim for i in idx):
            raise IndexOutOfRange(f"bad basis index {idx} for dim {dim}, legs {legs}")
        return cls(dim, legs, field, {idx: field.one})

    def _compat(self, other):
        if not isinstance(other, TensorElement):
            raise DimensionMismatch(f"expected TensorElement, got {other!r}")
        if other.dim != self.dim or other.legs != self.legs:
            raise DimensionMismatch(
                f"shape mismatch: ({self.dim},{self.legs}) vs ({other.dim},{other.legs})")
        return other

    def __add__(self, other):
        other = self._compat(other)
        data = dict(self.data)
        for k, v in other.data.items():
            s = data.get(k)
            s = v if s is None else s + v
            if s:
                data[k] = s
            elif k in data:
                del data[k]
        return TensorElement(self.dim, self.legs, self.field, data)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorElement(self.dim, self.legs, self.field,
                             {k: -v for k, v in self.data.items()})

    def scale(self, c):
        if not c:
            return TensorElement.zero(self.dim, self.legs, self.field)
        return TensorElement(self.dim, self.legs, self.field,
                             {k: c * v for k, v in self.data.items()})

    def tensor(self, other):
        if not isinstance(other, TensorElement) or other.dim != self.dim:
            raise DimensionMismatch("tensor factors must share the base dimension")
        data = {}
        for ka, va in self.data.items():
            for kb, vb in other.data.items():
                data[ka + kb] = va * vb
        return TensorElement(self.dim, self.legs + other.legs, self.field, data)

    def permute(self, slots):
        """Send component m to leg slots[m] (0-based); slots must be a permutation."""
        if sorted(slots) != list(range(self.legs)):
            raise IndexOutOfRange(f"not a permutation of legs: {slots}")
        data = {}
        for k, v in self.data.items():
            nk = [0] * self.legs
            for m, s in enumerate(slots):
                nk[s] = k[m]
            data[tuple(nk)] = v
        return TensorElement(self.dim, self.legs, self.field, data)

    def embed(self, total_legs, positions, unit):
        """Place the legs at the given 0-based positions; unfilled legs get the unit."""
        positions = tuple(positions)
        if len(positions) != self.legs or len(set(positions)) != self.legs:
            raise IndexOutOfRange("positions must match the leg count and be distinct")
        if any(not 0 <= p < total_legs for p in positions):
            raise IndexOutOfRange(f"positions {positions} out of range for {total_legs} legs")
        free = [p for p in range(total_legs) if p not in positions]
        unit_items = tuple(unit.data.items())
        data = {}
        for k, v in self.data.items():
            for combo in product(unit_items, repeat=len(free)):
                nk = [0] * total_legs
                c = v
                for m, p in enumerate(positions):
                    nk[p] = k[m]
                for f, ((ui,), uc) in zip(free, combo):
                    nk[f] = ui
                    c = c * uc
                key = tuple(nk)
                s = data.get(key)
                s = c if s is None else s + c
                if s:
                    data[key] = s
                elif key in data:
                    del data[key]
        return TensorElement(self.dim, total_legs, self.field, data)

    def contract_leg(self, leg, functional):
        """Apply a functional (dict index -> scalar) to one leg, dropping it."""
        data = {}
        for k, v in self.data.items():
            w = functional.get(k[leg])
            if not w:
                continue
            key = k[:leg] + k[leg + 1:]
            s = data.get(key)
            s = v * w if s is None else s + v * w
            if s:
                data[key] = s
            elif key in data:
                del data[key]
        return TensorElement(self.dim, self.legs - 1, self.field, data)

    def coefficient(self, idx):
        if isinstance(idx, int):
            idx = (idx,)
        return self.data.get(tuple(idx), self.field.zero)

    def is_zero(self):
        return not self.data

    def nnz(self):
        return len(self.data)

    def items_sorted(self):
        return sorted(self.data.items())

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.dim, self.legs) == (other.dim, other.legs) and self.data == other.data

    def __hash__(self):
        return hash((self.dim, self.legs, tuple(self.items_sorted())))

    def __repr__(self):
        terms = ", ".join(f"{k}: {v}" for k, v in list(self.items_sorted())[:6])
        more = "..." if self.nnz() > 6 else ""
        return f"TensorElement(dim={self.dim}, legs={self.legs}, {{{terms}{more}}})"


class LinearMap:
    """Sparse linear map, stored column-wise: cols[j] = ((i, c), ...)."""

    __slots__ = ("src_dim", "dst_dim", "field", "cols")

    def __init__(self, src_dim, dst_dim, field, cols):
        self.src_dim = src_dim
        self.dst_dim = dst_dim
        self.field = field
        self.cols = {j: tuple((i, c) for i, c in col if c)
                     for j, col in cols.items() if col}

    @classmethod
    def identity(cls, dim, field):
        return cls(dim, dim, field, {j: ((j, field.one),) for j in range(dim)})

    @classmethod
    def from_function(cls, src_dim, dst_dim, field, fn):
        return cls(src_dim, dst_dim, field, {j: tuple(fn(j)) for j in range(src_dim)})

    def apply(self, x: TensorElement) -> TensorElement:
        if x.legs != 1 or x.dim != self.src_dim:
            raise DimensionMismatch("apply expects a 1-leg element of the source space")
        data = {}
        for (j,), v in x.data.items():
            for i, c in self.cols.get(j, ()):
                key = (i,)
                s = data.get(key)
                s = v * c if s is None else s + v * c
                if s:
                    data[key] = s
                elif key in data:
                    del data[key]
        return TensorElement(self.dst_dim, 1, x.field, data)

    def apply_leg(self, x: TensorElement, leg: int) -> TensorElement:
        if self.src_dim != self.dst_dim or x.dim != self.src_dim:
            raise DimensionMismatch("leg application needs an endomorphism of the base space")
        data = {}
        for k, v in x.data.items():
            for i, c in self.cols.get(k[leg], ()):
                key = k[:leg] + (i,) + k[leg + 1:]
                s = data.get(key)
                s = v * c if s is None else s + v * c
                if s:
                    data[key] = s
                elif key in data:
                    del data[key]
        return TensorElement(x.dim, x.legs, x.field, data)

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self o inner."""
        if inner.dst_dim != self.src_dim:
            raise DimensionMismatch("composition dimension mismatch")
        cols = {}
        for j, col in inner.cols.items():
            acc = {}
            for m, c in col:
                for i, d in self.cols.get(m, ()):
                    s = acc.get(i)
                    s = c * d if s is None else s + c * d
                    if s:
                        acc[i] = s
                    elif i in acc:
                        del acc[i]
            cols[j] = tuple(sorted(acc.items()))
        return LinearMap(inner.src_dim, self.dst_dim, self.field, cols)

    def transpose(self) -> "LinearMap":
        cols = {}
        for j, col in self.cols.items():
            for i, c in col:
                cols.setdefault(i, []).append((j, c))
        return LinearMap(self.dst_dim, self.src_dim, self.field,
                         {i: tuple(sorted(col)) for i, col in cols.items()})

    def inverse(self) -> "LinearMap":
        if self.src_dim != self.dst_dim:
            raise NotInvertible("only square maps can be inverted")
        n = self.src_dim
        rows = [dict() for _ in range(n)]
        for j, col in self.cols.items():
            for i, c in col:
                rows[i][j] = c
        inv_cols = {}
        for j in range(n):
            rhs = [self.field.one if i == j else self.field.zero for i in range(n)]
            try:
                sol = gauss_solve([dict(r) for r in rows], rhs, n, self.field)
            except SolveInconsistent as exc:
                raise NotInvertible("singular linear map") from exc
            inv_cols[j] = tuple(sorted(sol.items()))
        out = LinearMap(n, n, self.field, inv_cols)
        if not out.compose(self).is_identity() or not self.compose(out).is_identity():
            raise NotInvertible("singular linear map")
        return out

    def is_identity(self) -> bool:
        if self.src_dim != self.dst_dim:
            return False
        one = self.field.one
        for j in range(self.src_dim):
            if self.cols.get(j, ()) != ((j, one),) and dict(self.cols.get(j, ())) != {j: one}:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        if (self.src_dim, self.dst_dim) != (other.src_dim, other.dst_dim):
            return False
        return ({j: dict(c) for j, c in self.cols.items()}
                == {j: dict(c) for j, c in other.cols.items()})

    def __repr__(self):
        return f"LinearMap({self.src_dim} -> {self.dst_dim}, nnz={sum(len(c) for c in self.cols.values())})"


class MultilinearForm:
    """Sparse k-linear form on an n-dimensional space (element of the k-fold dual)."""

    __slots__ = ("arity", "dim", "field", "data")

    def __init__(self, arity, dim, field, data=None):
        self.arity = arity
        self.dim = dim
        self.field = field
        self.data = {tuple(k): v for k, v in (data or {}).items() if v}

    def value(self, *idx):
        if len(idx) != self.arity:
            raise DimensionMismatch(f"form of arity {self.arity} got {len(idx)} indices")
        return self.data.get(tuple(idx), self.field.zero)

    def eval_elements(self, *args):
        """Multilinear extension; each argument is a basis index or a 1-leg element."""
        if len(args) != self.arity:
            raise DimensionMismatch(f"form of arity {self.arity} got {len(args)} arguments")
        lists = []
        for a in args:
            if isinstance(a, int):
                lists.append((((a,), self.field.one),))
            else:
                lists.append(tuple(a.data.items()))
        acc = self.field.zero
        for combo in product(*lists):
            v = self.data.get(tuple(k[0] for k, _ in combo))
            if v:
                for _, c in combo:
                    v = v * c
                acc = acc + v
        return acc

    def as_element(self) -> TensorElement:
        """The same data read as a sparse element (of the dual tensor power)."""
        return TensorElement(self.dim, self.arity, self.field, dict(self.data))

    def __eq__(self, other):
        if not isinstance(other, MultilinearForm):
            return NotImplemented
        return (self.arity, self.dim) == (other.arity, other.dim) and self.data == other.data

    def __repr__(self):
        return f"MultilinearForm(arity={self.arity}, dim={self.dim}, nnz={len(self.data)})"


class AlgebraOps:
    """Structure-constant algebra: multiplication table plus unit vector.

    table[(i, j)] lists the nonzero structure constants of b_i * b_j; the
    componentwise product of equal-leg tensors is the induced multiplication
    on any tensor power.
    """

    __slots__ = ("dim", "field", "table", "unit", "monomial")

    def __init__(self, dim, field, table, unit: TensorElement):
        self.dim = dim
        self.field = field
        self.table = {k: tuple((i, c) for i, c in v if c) for k, v in table.items()}
        self.table = {k: v for k, v in self.table.items() if v}
        self.unit = unit
        self.monomial = all(len(v) == 1 for v in self.table.values())

    def unit_tensor(self, legs: int) -> TensorElement:
        out = self.unit
        for _ in range(legs - 1):
            out = out.tensor(self.unit)
        return out

    def multiply(self, x: TensorElement, y: TensorElement) -> TensorElement:
        if x.dim != self.dim or y.dim != self.dim:
            raise DimensionMismatch("operands do not live over this algebra")
        if x.legs != y.legs:
            raise DimensionMismatch(f"leg counts differ: {x.legs} vs {y.legs}")
        get = self.table.get
        out = {}
        if self.monomial:
            for ix, cx in x.data.items():
                for iy, cy in y.data.items():
                    c = cx * cy
                    key = ()
                    for a, b in zip(ix, iy):
                        e = get((a, b))
                        if e is None:
                            c = None
                            break
                        k0, c0 = e[0]
                        key += (k0,)
                        if c0 != 1:
                            c = c * c0
                    if c is None or not c:
                        continue
                    s = out.get(key)
                    s = c if s is None else s + c
                    if s:
                        out[key] = s
                    elif key in out:
                        del out[key]
            return TensorElement(self.dim, x.legs, self.field, out)
        for ix, cx in x.data.items():
            for iy, cy in y.data.items():
                expansions = []
                dead = False
                for a, b in zip(ix, iy):
                    e = get((a, b))
                    if e is None:
                        dead = True
                        break
                    expansions.append(e)
                if dead:
                    continue
                base = cx * cy
                for combo in product(*expansions):
                    key = tuple(k for k, _ in combo)
                    c = base
                    for _, c0 in combo:
                        c = c * c0
                    if not c:
                        continue
                    s = out.get(key)
                    s = c if s is None else s + c
                    if s:
                        out[key] = s
                    elif key in out:
                        del out[key]
        return TensorElement(self.dim, x.legs, self.field, out)

    def multiply_many(self, factors):
        factors = list(factors)
        out = factors[0]
        for f in factors[1:]:
            out = self.multiply(out, f)
        return out

    def mul_basis(self, i: int, j: int):
        """Structure constants of b_i * b_j as a tuple of (index, coeff)."""
        return self.table.get((i, j), ())

    def inverse(self, x: TensorElement) -> TensorElement:
        """Two-sided inverse of a k-leg element, by exact linear solve."""
        legs = x.legs
        total = self.dim ** legs
        unit = self.unit_tensor(legs)
        rows = [dict() for _ in range(total)]
        for q in range(total):
            bq = TensorElement.basis(self.dim, legs, self.field, _unflatten(q, self.dim, legs))
            col = self.multiply(x, bq)
            for k, v in col.data.items():
                rows[_flatten(k, self.dim)][q] = v
        rhs = [self.field.zero] * total
        for k, v in unit.data.items():
            rhs[_flatten(k, self.dim)] = v
        try:
            sol = gauss_solve(rows, rhs, total, self.field)
        except SolveInconsistent as exc:
            raise NotInvertible("element has no right inverse") from exc
        inv = TensorElement(self.dim, legs, self.field,
                            {_unflatten(q, self.dim, legs): c for q, c in sol.items()})
        if self.multiply(inv, x) != unit or self.multiply(x, inv) != unit:
            raise NotInvertible("element has no two-sided inverse")
        return inv


class CoalgebraData(NamedTuple):
    """Coproduct/counit structure constants: cop[i] = (((j, k), c), ...)."""

    dim: int
    cop: dict
    counit: dict  # sparse: i -> scalar

    def counit_functional(self):
        return self.counit


def _flatten(idx, dim):
    out = 0
    for i in idx:
        out = out * dim + i
    return out


def _unflatten(flat, dim, legs):
    out = []
    for _ in range(legs):
        out.append(flat % dim)
        flat //= dim
    return tuple(reversed(out))


def tensor_power_coalgebra(co: CoalgebraData, k: int) -> CoalgebraData:
    """Coalgebra structure of C^(tensor k) with flattened (big-endian) indices."""
    dim = co.dim ** k
    cop = {}
    counit = {}
    for flat in range(dim):
        idx = _unflatten(flat, co.dim, k)
        entries = [co.cop[i] for i in idx]
        out = []
        for combo in product(*entries):
            left = tuple(jk[0] for jk, _ in combo)
            right = tuple(jk[1] for jk, _ in combo)
            c = None
            for _, cc in combo:
                c = cc if c is None else c * cc
            out.append(((_flatten(left, co.dim), _flatten(right, co.dim)), c))
        cop[flat] = tuple(out)
        eps = None
        for i in idx:
            e = co.counit.get(i)
            if not e:
                eps = None
                break
            eps = e if eps is None else eps * e
        if eps:
            counit[flat] = eps
    return CoalgebraData(dim, cop, counit)


# ---------------------------------------------------------------------------
# exact sparse Gaussian elimination
# ---------------------------------------------------------------------------

def _eliminate(rows, rhs, ncols, field):
    """In-place RREF; returns {pivot_col: row_index}."""
    pivots = {}
    used = set()
    for col in range(ncols):
        best = None
        for r, row in enumerate(rows):
            if r in used or col not in row:
                continue
            if best is None or len(row) < len(rows[best]):
                best = r
        if best is None:
            continue
        used.add(best)
        pivots[col] = best
        prow = rows[best]
        pval = prow[col]
        if pval != field.one:
            inv = field.div(field.one, pval)
            for c in list(prow):
                prow[c] = prow[c] * inv
            if rhs is not None and rhs[best]:
                rhs[best] = rhs[best] * inv
        for r, row in enumerate(rows):
            if r == best:
                continue
            f = row.get(col)
            if not f:
                continue
            for c, v in prow.items():
                s = row.get(c)
                s = -(f * v) if s is None else s - f * v
                if s:
                    row[c] = s
                elif c in row:
                    del row[c]
            if rhs is not None and rhs[best]:
                rhs[r] = rhs[r] - f * rhs[best]
    return pivots


def gauss_solve(rows, rhs, ncols, field):
    """Solve the sparse system; free variables are set to zero.

    rows: list of {col: scalar}; rhs: parallel list of scalars.
    Returns a sparse solution {col: scalar}; raises SolveInconsistent.
    """
    rows = [dict(r) for r in rows]
    rhs = list(rhs)
    pivots = _eliminate(rows, rhs, ncols, field)
    pivot_rows = set(pivots.values())
    for r in range(len(rows)):
        if r not in pivot_rows and rhs[r]:
            raise SolveInconsistent("no solution with free variables at zero")
    sol = {}
    for col, r in pivots.items():
        # free columns are set to zero, so residual pivot-row support contributes nothing
        if rhs[r]:
            sol[col] = rhs[r]
    return sol


def gauss_nullspace(rows, ncols, field):
    """Basis of the kernel, one sparse vector per free column, in column order."""
    rows = [dict(r) for r in rows]
    pivots = _eliminate(rows, None, ncols, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = {f: field.one}
        for col, r in pivots.items():
            v = rows[r].get(f)
            if v:
                vec[col] = -v
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# convolution algebra Hom(C, A)
# ---------------------------------------------------------------------------

def convolution_product(co: CoalgebraData, alg: AlgebraOps, T: LinearMap, U: LinearMap) -> LinearMap:
    """(T * U)(c) = T(c_1) U(c_2) with the coproduct expanded."""
    cols = {}
    for i in range(co.dim):
        acc = {}
        for (j, k), c in co.cop[i]:
            for m, tm in T.cols.get(j, ()):
                for b, ub in U.cols.get(k, ()):
                    for r, pc in alg.mul_basis(m, b):
                        s = acc.get(r)
                        term = c * tm * ub * pc
                        s = term if s is None else s + term
                        if s:
                            acc[r] = s
                        elif r in acc:
                            del acc[r]
        cols[i] = tuple(sorted(acc.items()))
    return LinearMap(co.dim, alg.dim, alg.field, cols)


def convolution_unit(co: CoalgebraData, alg: AlgebraOps) -> LinearMap:
    """unit o counit, the identity of the convolution algebra Hom(C, A)."""
    cols = {}
    for i in range(co.dim):
        e = co.counit.get(i)
        if e:
            cols[i] = tuple(sorted((k[0], e * v) for k, v in alg.unit.data.items()))
    return LinearMap(co.dim, alg.dim, alg.field, cols)


def convolution_invert(co: CoalgebraData, alg: AlgebraOps, T: LinearMap) -> LinearMap:
    """Convolution inverse of T in Hom(C, A), by exact linear solve."""
    if T.src_dim != co.dim or T.dst_dim != alg.dim:
        raise DimensionMismatch("map does not match the given (co)algebra data")
    field = alg.field
    nunk = co.dim * alg.dim  # unknown U[b, k] at index k * alg.dim + b
    left = {}  # m -> ((b, r, coeff), ...) reading of alg.table
    for (m, b), entries in alg.table.items():
        for r, c in entries:
            left.setdefault(m, []).append((b, r, c))
    rows = [dict() for _ in range(nunk)]  # equation index r * co.dim + i -> i * alg.dim + r
    rhs = [field.zero] * nunk
    for i in range(co.dim):
        for (j, k), c in co.cop[i]:
            for m, tm in T.cols.get(j, ()):
                for b, r, pc in left.get(m, ()):
                    row = rows[i * alg.dim + r]
                    unk = k * alg.dim + b
                    term = c * tm * pc
                    s = row.get(unk)
                    s = term if s is None else s + term
                    if s:
                        row[unk] = s
                    elif unk in row:
                        del row[unk]
        e = co.counit.get(i)
        if e:
            for (u,), uc in alg.unit.data.items():
                rhs[i * alg.dim + u] = e * uc
    try:
        sol = gauss_solve(rows, rhs, nunk, field)
    except SolveInconsistent as exc:
        raise NotConvolutionInvertible("convolution system is singular") from exc
    cols = {}
    for unk, v in sol.items():
        k, b = divmod(unk, alg.dim)
        cols.setdefault(k, []).append((b, v))
    U = LinearMap(co.dim, alg.dim, field, {k: tuple(sorted(c)) for k, c in cols.items()})
    e = convolution_unit(co, alg)
    if convolution_product(co, alg, T, U) != e or convolution_product(co, alg, U, T) != e:
        raise NotConvolutionInvertible("one-sided convolution inverse only")
    return U


def scalar_algebra(field) -> AlgebraOps:
    """The base field as a 1-dimensional algebra (for convolution of forms)."""
    return AlgebraOps(1, field, {(0, 0): ((0, field.one),)},
                      TensorElement(1, 1, field, {(0,): field.one}))


def tensor_product_ops(a: AlgebraOps, b: AlgebraOps) -> AlgebraOps:
    """A (x) B with big-endian flattened indices (i, j) -> i * dim_B + j."""
    table = {}
    for (i1, j1), ta in a.table.items():
        for (i2, j2), tb in b.table.items():
            entries = []
            for k1, c1 in ta:
                for k2, c2 in tb:
                    entries.append((k1 * b.dim + k2, c1 * c2))
            table[(i1 * b.dim + i2, j1 * b.dim + j2)] = tuple(entries)
    unit = TensorElement(a.dim * b.dim, 1, a.field,
                         {(k1[0] * b.dim + k2[0],): c1 * c2
                          for k1, c1 in a.unit.data.items()
                          for k2, c2 in b.unit.data.items()})
    return AlgebraOps(a.dim * b.dim, a.field, table, unit)


def form_as_map(form: MultilinearForm) -> LinearMap:
    """A k-linear form as a linear map from the flattened tensor power to k."""
    cols = {}
    for idx, v in form.data.items():
        cols[_flatten(idx, form.dim)] = ((0, v),)
    return LinearMap(form.dim ** form.arity, 1, form.field, cols)


def map_as_form(m: LinearMap, dim: int, arity: int) -> MultilinearForm:
    data = {}
    for j, col in m.cols.items():
        for i, c in col:
            assert i == 0
            data[_unflatten(j, dim, arity)] = c
    return MultilinearForm(arity, dim, m.field, data)
