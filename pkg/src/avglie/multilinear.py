"""Alternating and dense multilinear maps with values in a vector space.

Alternating maps are stored on strictly increasing basis tuples only
(lexicographic order); evaluation anywhere else expands by the sign of the
sorting permutation and is zero on repeated indices, so skew-symmetry is a
storage invariant rather than a runtime check.
"""

from __future__ import annotations

from itertools import combinations, product

from .errors import DimensionMismatch
from .linalg import Matrix, vec_add, vec_is_zero, vec_neg, vec_scale, vec_sub, vec_zero


def sort_with_sign(idxs):
    """Sort an index tuple, returning (sorted tuple, sign); sign 0 on repeats."""
    idxs = list(idxs)
    sign = 1
    for i in range(1, len(idxs)):
        j = i
        while j > 0 and idxs[j - 1] > idxs[j]:
            idxs[j - 1], idxs[j] = idxs[j], idxs[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idxs, idxs[1:]):
        if a == b:
            return tuple(idxs), 0
    return tuple(idxs), sign


def increasing_tuples(dim, arity):
    return list(combinations(range(dim), arity))


class AltMap:
    """Alternating multilinear map on arity-many copies of a dim-space."""

    __slots__ = ("field", "dim", "arity", "vdim", "comps", "_pos")

    def __init__(self, field, dim, arity, vdim, comps):
        self.field = field
        self.dim = dim
        self.arity = arity
        self.vdim = vdim
        tuples = increasing_tuples(dim, arity)
        comps = tuple(tuple(field.coerce(x) for x in c) for c in comps)
        if len(comps) != len(tuples) or any(len(c) != vdim for c in comps):
            raise DimensionMismatch(
                f"alternating map wants {len(tuples)} components of length {vdim}"
            )
        self.comps = comps
        self._pos = {t: k for k, t in enumerate(tuples)}

    @staticmethod
    def zero(field, dim, arity, vdim):
        n = len(increasing_tuples(dim, arity))
        return AltMap(field, dim, arity, vdim, [(field.zero,) * vdim] * n)

    @staticmethod
    def from_flat(field, dim, arity, vdim, flat):
        n = len(increasing_tuples(dim, arity))
        flat = list(flat)
        if len(flat) != n * vdim:
            raise DimensionMismatch(
                f"alternating map wants {n * vdim} entries, got {len(flat)}"
            )
        return AltMap(
            field, dim, arity, vdim, [flat[k * vdim : (k + 1) * vdim] for k in range(n)]
        )

    def flat(self):
        return tuple(x for c in self.comps for x in c)

    def tuples(self):
        return increasing_tuples(self.dim, self.arity)

    # -- evaluation ----------------------------------------------------------

    def eval_basis(self, idxs):
        """Value at (e_{i1}, ..., e_{ik}) for arbitrary basis indices."""
        if len(idxs) != self.arity:
            raise DimensionMismatch("alternating map arity mismatch")
        key, sign = sort_with_sign(idxs)
        if sign == 0:
            return vec_zero(self.field, self.vdim)
        val = self.comps[self._pos[key]]
        return val if sign > 0 else vec_neg(self.field, val)

    def eval_with_first_vector(self, vec, rest):
        """Value at (v, e_{j1}, ..., e_{j_{k-1}}) by linearity in the first slot."""
        f = self.field
        out = vec_zero(f, self.vdim)
        for k, coeff in enumerate(vec):
            if coeff == f.zero:
                continue
            out = vec_add(f, out, vec_scale(f, coeff, self.eval_basis((k, *rest))))
        return out

    def eval_vectors(self, vecs):
        """Value at arbitrary coordinate vectors, by minor-determinant expansion."""
        if len(vecs) != self.arity:
            raise DimensionMismatch("alternating map arity mismatch")
        f = self.field
        out = vec_zero(f, self.vdim)
        if self.arity == 0:
            return out
        for t, comp in zip(self.tuples(), self.comps):
            if vec_is_zero(f, comp):
                continue
            minor = Matrix(f, [[vecs[c][r] for c in range(self.arity)] for r in t])
            d = minor.det()
            if d != f.zero:
                out = vec_add(f, out, vec_scale(f, d, comp))
        return out

    def to_dense(self):
        """Expand into a dense MultiMap on the same spaces."""
        f = self.field
        comps = []
        for idxs in product(range(self.dim), repeat=self.arity):
            comps.append(self.eval_basis(idxs))
        return MultiMap(f, self.dim, self.arity, self.vdim, comps)

    # -- algebra -------------------------------------------------------------

    def _like(self, other):
        return (
            isinstance(other, AltMap)
            and self.field == other.field
            and (self.dim, self.arity, self.vdim)
            == (other.dim, other.arity, other.vdim)
        )

    def add(self, other):
        if not self._like(other):
            raise DimensionMismatch("alternating map shape mismatch")
        f = self.field
        return AltMap(
            f,
            self.dim,
            self.arity,
            self.vdim,
            [vec_add(f, a, b) for a, b in zip(self.comps, other.comps)],
        )

    def sub(self, other):
        if not self._like(other):
            raise DimensionMismatch("alternating map shape mismatch")
        f = self.field
        return AltMap(
            f,
            self.dim,
            self.arity,
            self.vdim,
            [vec_sub(f, a, b) for a, b in zip(self.comps, other.comps)],
        )

    def neg(self):
        f = self.field
        return AltMap(
            f, self.dim, self.arity, self.vdim, [vec_neg(f, c) for c in self.comps]
        )

    def map_values(self, matrix):
        """Post-compose with a linear map on the value space."""
        return AltMap(
            self.field,
            self.dim,
            self.arity,
            matrix.rows,
            [matrix.matvec(c) for c in self.comps],
        )

    def is_zero(self):
        return all(vec_is_zero(self.field, c) for c in self.comps)

    def __eq__(self, other):
        return self._like(other) and self.comps == other.comps

    def __hash__(self):
        return hash((self.field, self.dim, self.arity, self.vdim, self.comps))

    def __repr__(self):
        return f"AltMap({self.field}, L^{self.arity}({self.dim})->{self.vdim})"


class MultiMap:
    """Dense multilinear map on arity-many copies of a dim-space."""

    __slots__ = ("field", "dim", "arity", "vdim", "comps")

    def __init__(self, field, dim, arity, vdim, comps):
        self.field = field
        self.dim = dim
        self.arity = arity
        self.vdim = vdim
        comps = tuple(tuple(field.coerce(x) for x in c) for c in comps)
        if len(comps) != dim**arity or any(len(c) != vdim for c in comps):
            raise DimensionMismatch(
                f"multilinear map wants {dim ** arity} components of length {vdim}"
            )
        self.comps = comps

    @staticmethod
    def zero(field, dim, arity, vdim):
        return MultiMap(field, dim, arity, vdim, [(field.zero,) * vdim] * dim**arity)

    @staticmethod
    def from_flat(field, dim, arity, vdim, flat):
        n = dim**arity
        flat = list(flat)
        if len(flat) != n * vdim:
            raise DimensionMismatch(
                f"multilinear map wants {n * vdim} entries, got {len(flat)}"
            )
        return MultiMap(
            field, dim, arity, vdim, [flat[k * vdim : (k + 1) * vdim] for k in range(n)]
        )

    def flat(self):
        return tuple(x for c in self.comps for x in c)

    def tuples(self):
        return list(product(range(self.dim), repeat=self.arity))

    def _offset(self, idxs):
        off = 0
        for i in idxs:
            off = off * self.dim + i
        return off

    def eval_basis(self, idxs):
        if len(idxs) != self.arity:
            raise DimensionMismatch("multilinear map arity mismatch")
        return self.comps[self._offset(idxs)]

    def eval_mixed(self, args):
        """Value at a mix of basis indices (ints) and coordinate vectors."""
        if len(args) != self.arity:
            raise DimensionMismatch("multilinear map arity mismatch")
        f = self.field
        vec_slots = [k for k, a in enumerate(args) if not isinstance(a, int)]
        if not vec_slots:
            return self.eval_basis(tuple(args))
        out = vec_zero(f, self.vdim)
        for choice in product(range(self.dim), repeat=len(vec_slots)):
            coeff = f.one
            idxs = list(args)
            for slot, basis_i in zip(vec_slots, choice):
                coeff = f.mul(coeff, args[slot][basis_i])
                idxs[slot] = basis_i
            if coeff == f.zero:
                continue
            out = vec_add(f, out, vec_scale(f, coeff, self.eval_basis(tuple(idxs))))
        return out

    # -- algebra -------------------------------------------------------------

    def _like(self, other):
        return (
            isinstance(other, MultiMap)
            and self.field == other.field
            and (self.dim, self.arity, self.vdim)
            == (other.dim, other.arity, other.vdim)
        )

    def add(self, other):
        if not self._like(other):
            raise DimensionMismatch("multilinear map shape mismatch")
        f = self.field
        return MultiMap(
            f,
            self.dim,
            self.arity,
            self.vdim,
            [vec_add(f, a, b) for a, b in zip(self.comps, other.comps)],
        )

    def sub(self, other):
        if not self._like(other):
            raise DimensionMismatch("multilinear map shape mismatch")
        f = self.field
        return MultiMap(
            f,
            self.dim,
            self.arity,
            self.vdim,
            [vec_sub(f, a, b) for a, b in zip(self.comps, other.comps)],
        )

    def neg(self):
        f = self.field
        return MultiMap(
            f, self.dim, self.arity, self.vdim, [vec_neg(f, c) for c in self.comps]
        )

    def is_zero(self):
        return all(vec_is_zero(self.field, c) for c in self.comps)

    def is_alternating(self):
        """True when the map kills repeated arguments and flips under swaps."""
        f = self.field
        for idxs in self.tuples():
            key, sign = sort_with_sign(idxs)
            val = self.eval_basis(idxs)
            if sign == 0:
                if not vec_is_zero(f, val):
                    return False
            else:
                ref = self.eval_basis(key)
                want = ref if sign > 0 else vec_neg(f, ref)
                if val != want:
                    return False
        return True

    def to_alternating(self):
        """Reinterpret as an AltMap; requires is_alternating()."""
        if not self.is_alternating():
            raise DimensionMismatch("map is not alternating")
        return AltMap(
            self.field,
            self.dim,
            self.arity,
            self.vdim,
            [self.eval_basis(t) for t in increasing_tuples(self.dim, self.arity)],
        )

    def __eq__(self, other):
        return self._like(other) and self.comps == other.comps

    def __hash__(self):
        return hash((self.field, self.dim, self.arity, self.vdim, self.comps))

    def __repr__(self):
        return f"MultiMap({self.field}, ({self.dim})^x{self.arity}->{self.vdim})"
