"""Dense real tensors (hypermatrices), contraction, and row statistics.

Entries are stored row-major, i.e. lexicographically in the multi-index
(i1, ..., im).  Indices are 1-based in every public interface (JSON,
witnesses, index sets) and 0-based internally; the conversion happens at
the boundary only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InputError

#: Refuse to allocate tensors with more entries than this by default.
DEFAULT_ENTRY_CAP = 10**8


def _as_int(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise InputError(f"{name} must be an integer, got {value!r}")
    return int(value)


class Tensor:
    """Dense real tensor of order m >= 2 and dimension n >= 1.

    The entries are 64-bit floats, immutable after construction, and are
    required to be finite.  ``entries`` may be a flat sequence of length
    n**m in row-major order or an already shaped array.
    """

    __slots__ = ("order", "dim", "_array")

    def __init__(self, order, dim, entries, entry_cap=DEFAULT_ENTRY_CAP):
        order = _as_int(order, "order")
        dim = _as_int(dim, "dim")
        if order < 2:
            raise InputError(f"order must be at least 2, got {order}")
        if dim < 1:
            raise InputError(f"dim must be at least 1, got {dim}")
        count = dim**order
        if count > entry_cap:
            raise InputError(
                f"tensor with dim {dim} and order {order} needs {count} entries, "
                f"above the cap of {entry_cap}"
            )
        arr = np.asarray(entries, dtype=np.float64)
        if arr.size != count:
            raise InputError(
                f"expected {count} entries for order {order}, dim {dim}; got {arr.size}"
            )
        if not np.all(np.isfinite(arr)):
            raise InputError("tensor entries must all be finite")
        arr = arr.reshape((dim,) * order).copy()
        arr.setflags(write=False)
        self.order = order
        self.dim = dim
        self._array = arr

    @classmethod
    def from_array(cls, arr, entry_cap=DEFAULT_ENTRY_CAP):
        """Build a tensor from an m-way numpy array with equal axis lengths."""
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim < 2:
            raise InputError(f"array must have at least 2 axes, got {arr.ndim}")
        dims = set(arr.shape)
        if len(dims) != 1:
            raise InputError(f"array axes must all have equal length, got shape {arr.shape}")
        return cls(arr.ndim, arr.shape[0], arr, entry_cap=entry_cap)

    @classmethod
    def identity(cls, order, dim):
        """Diagonal tensor with ones on the main diagonal, zeros elsewhere."""
        arr = np.zeros((dim,) * order)
        arr[tuple([np.arange(dim)] * order)] = 1.0
        return cls(order, dim, arr)

    @classmethod
    def ones(cls, order, dim):
        return cls(order, dim, np.ones((dim,) * order))

    @property
    def array(self):
        """Read-only view of the entries, shaped ``(dim,) * order``."""
        return self._array

    def entry(self, *index):
        """Entry at a 1-based multi-index."""
        if len(index) != self.order:
            raise InputError(f"multi-index needs {self.order} components, got {len(index)}")
        zero_based = []
        for i in index:
            i = _as_int(i, "index component")
            if not 1 <= i <= self.dim:
                raise InputError(f"index component {i} outside [1, {self.dim}]")
            zero_based.append(i - 1)
        return float(self._array[tuple(zero_based)])

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (
            self.order == other.order
            and self.dim == other.dim
            and np.array_equal(self._array, other._array)
        )

    def __hash__(self):
        return hash((self.order, self.dim, self._array.tobytes()))

    def __repr__(self):
        return f"Tensor(order={self.order}, dim={self.dim})"

    def to_json_dict(self):
        return {
            "order": self.order,
            "dim": self.dim,
            "dense": [float(v) for v in self._array.ravel()],
        }

    @classmethod
    def from_json_dict(cls, obj, entry_cap=DEFAULT_ENTRY_CAP):
        """Parse the tensor JSON format.

        The object must carry ``order``, ``dim`` and exactly one of
        ``dense`` (flat row-major entry list) or ``sparse`` (a list of
        ``{"idx": [i1, ..., im], "val": v}`` records with 1-based indices;
        unspecified entries are zero and duplicate indices are an error).
        """
        if not isinstance(obj, dict):
            raise InputError("tensor JSON must be an object")
        try:
            order = obj["order"]
            dim = obj["dim"]
        except KeyError as missing:
            raise InputError(f"tensor JSON lacks required field {missing}") from None
        has_dense = "dense" in obj
        has_sparse = "sparse" in obj
        if has_dense == has_sparse:
            raise InputError("tensor JSON needs exactly one of 'dense' or 'sparse'")
        if has_dense:
            return cls(order, dim, obj["dense"], entry_cap=entry_cap)
        order = _as_int(order, "order")
        dim = _as_int(dim, "dim")
        if order < 2 or dim < 1:
            raise InputError(f"bad tensor header: order {order}, dim {dim}")
        if dim**order > entry_cap:
            raise InputError(f"tensor exceeds the entry cap of {entry_cap}")
        arr = np.zeros((dim,) * order)
        seen = set()
        for record in obj["sparse"]:
            if not isinstance(record, dict) or "idx" not in record or "val" not in record:
                raise InputError("sparse records must look like {'idx': [...], 'val': v}")
            idx = record["idx"]
            if len(idx) != order:
                raise InputError(f"sparse index {idx} needs {order} components")
            zero_based = []
            for i in idx:
                i = _as_int(i, "sparse index component")
                if not 1 <= i <= dim:
                    raise InputError(f"sparse index component {i} outside [1, {dim}]")
                zero_based.append(i - 1)
            key = tuple(zero_based)
            if key in seen:
                raise InputError(f"duplicate sparse index {list(idx)}")
            seen.add(key)
            arr[key] = record["val"]
        return cls(order, dim, arr, entry_cap=entry_cap)


@dataclass(frozen=True)
class RowStats:
    """Per-row aggregates; every field is an array of length ``dim``.

    ``r_plus`` is the largest off-diagonal row entry clamped below at 0,
    ``r_minus`` the smallest clamped above at 0, and ``r_signed`` selects
    ``r_plus``, 0 or ``r_minus`` according to the sign of the diagonal.
    """

    diag: np.ndarray
    r_plus: np.ndarray
    r_minus: np.ndarray
    r_signed: np.ndarray
    row_sum: np.ndarray
    off_diag_sum: np.ndarray
    off_diag_abs_sum: np.ndarray


def _row_view(A):
    """Rows as an (n, n**(m-1)) matrix plus the in-row diagonal positions."""
    n, m = A.dim, A.order
    width = n ** (m - 1)
    rows = A.array.reshape(n, width)
    if n > 1:
        # flat position of (i, ..., i) within row i: i * (1 + n + ... + n**(m-2))
        positions = np.arange(n) * ((width - 1) // (n - 1))
    else:
        positions = np.zeros(1, dtype=int)
    return rows, positions


def row_stats(A: Tensor) -> RowStats:
    """Compute all per-row aggregates in one pass over each row."""
    rows, pos = _row_view(A)
    n = A.dim
    idx = np.arange(n)
    diag = rows[idx, pos].copy()
    row_sum = rows.sum(axis=1)
    off_diag_sum = row_sum - diag

    abs_rows = np.abs(rows)
    abs_rows[idx, pos] = 0.0
    off_diag_abs_sum = abs_rows.sum(axis=1)

    if rows.shape[1] > 1:
        masked = rows.copy()
        masked[idx, pos] = -np.inf
        off_max = masked.max(axis=1)
        masked = rows.copy()
        masked[idx, pos] = np.inf
        off_min = masked.min(axis=1)
        r_plus = np.maximum(0.0, off_max)
        r_minus = np.minimum(0.0, off_min)
    else:
        r_plus = np.zeros(n)
        r_minus = np.zeros(n)
    r_signed = np.where(diag > 0, r_plus, np.where(diag < 0, r_minus, 0.0))

    fields = (diag, r_plus, r_minus, r_signed, row_sum, off_diag_sum, off_diag_abs_sum)
    for f in fields:
        f.setflags(write=False)
    return RowStats(*fields)


def upper_deficits(A: Tensor, stats: RowStats | None = None) -> np.ndarray:
    """Per row, the sum over off-diagonal entries of (r_plus - entry).

    Every term is nonnegative because r_plus dominates all off-diagonal
    entries of its row.
    """
    if stats is None:
        stats = row_stats(A)
    rows, pos = _row_view(A)
    gaps = stats.r_plus[:, None] - rows
    gaps[np.arange(A.dim), pos] = 0.0
    return gaps.sum(axis=1)


def lower_excesses(A: Tensor, stats: RowStats | None = None) -> np.ndarray:
    """Per row, the sum over off-diagonal entries of (entry - r_minus)."""
    if stats is None:
        stats = row_stats(A)
    rows, pos = _row_view(A)
    gaps = rows - stats.r_minus[:, None]
    gaps[np.arange(A.dim), pos] = 0.0
    return gaps.sum(axis=1)


def abs_gap_sums(A: Tensor, reference: np.ndarray) -> np.ndarray:
    """Per row i, the sum over off-diagonal entries of ``|reference[i] - entry|``."""
    rows, pos = _row_view(A)
    gaps = np.abs(np.asarray(reference, dtype=float)[:, None] - rows)
    gaps[np.arange(A.dim), pos] = 0.0
    return gaps.sum(axis=1)


def contract(A: Tensor, x) -> np.ndarray:
    """Contract the tensor with x on all but the first index.

    Component i is the sum of ``a[i, i2, ..., im] * x[i2] * ... * x[im]``
    over all n**(m-1) index tuples of the row.
    """
    x = _check_vector(A, x)
    weights = x
    for _ in range(A.order - 2):
        weights = np.multiply.outer(weights, x)
    return A.array.reshape(A.dim, -1) @ weights.ravel()


def polyeval(A: Tensor, x) -> float:
    """The degree-m homogeneous form: sum of entries times m-fold products of x.

    Evaluated by a full m-way weight expansion, independently of
    :func:`contract`.
    """
    x = _check_vector(A, x)
    weights = x
    for _ in range(A.order - 1):
        weights = np.multiply.outer(weights, x)
    return float(A.array.ravel() @ weights.ravel())


def _check_vector(A, x):
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (A.dim,):
        raise InputError(f"vector must have length {A.dim}, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InputError("vector components must all be finite")
    return x


def principal_subtensor(A: Tensor, members) -> Tensor:
    """Restrict every index to the 1-based set ``members`` and re-index.

    ``members`` must be a nonempty strictly increasing sequence within
    [1, dim].
    """
    members = list(members)
    if not members:
        raise InputError("index set must be nonempty")
    zero_based = []
    for j in members:
        j = _as_int(j, "index set member")
        if not 1 <= j <= A.dim:
            raise InputError(f"index set member {j} outside [1, {A.dim}]")
        zero_based.append(j - 1)
    if any(a >= b for a, b in zip(zero_based, zero_based[1:])):
        raise InputError("index set must be strictly increasing")
    sub = A.array[np.ix_(*([zero_based] * A.order))]
    return Tensor.from_array(sub)


def is_symmetric(A: Tensor, tol: float = 0.0) -> bool:
    """True when the entries are invariant under every index permutation.

    Comparison is exact by default; pass ``tol`` > 0 for an absolute
    entrywise tolerance.
    """
    arr = A.array
    for perm in itertools.permutations(range(A.order)):
        permuted = np.transpose(arr, perm)
        if tol == 0.0:
            if not np.array_equal(arr, permuted):
                return False
        elif np.max(np.abs(arr - permuted)) > tol:
            return False
    return True
