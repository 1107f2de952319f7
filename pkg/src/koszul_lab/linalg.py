"""Dense exact linear algebra over the coefficient fields (internal).

Matrices are lists of row lists holding field elements; functions never
mutate their arguments.  Everything runs in exact arithmetic, so ranks and
nullspaces are certified, not numerical.
"""

from __future__ import annotations


def zero_matrix(rows: int, cols: int, field) -> list:
    z = field.zero()
    return [[z] * cols for _ in range(rows)]


def identity_matrix(n: int, field) -> list:
    z, o = field.zero(), field.one()
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def scalar_matrix(n: int, c, field) -> list:
    z = field.zero()
    return [[c if i == j else z for j in range(n)] for i in range(n)]


def mat_add(a: list, b: list, field) -> list:
    return [[field.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_mul(a: list, b: list, field) -> list:
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = zero_matrix(n, m, field)
    for i in range(n):
        row = a[i]
        acc = out[i]
        for t in range(k):
            c = row[t]
            if field.is_zero(c):
                continue
            brow = b[t]
            for j in range(m):
                if not field.is_zero(brow[j]):
                    acc[j] = field.add(acc[j], field.mul(c, brow[j]))
    return out


def mat_vec(a: list, v: list, field) -> list:
    out = []
    for row in a:
        s = field.zero()
        for c, x in zip(row, v):
            if not field.is_zero(c) and not field.is_zero(x):
                s = field.add(s, field.mul(c, x))
        out.append(s)
    return out


def transpose(a: list) -> list:
    return [list(col) for col in zip(*a)] if a else []


def rref(matrix: list, field):
    """Reduced row echelon form.  Returns (rows, pivot column indices)."""
    rows = [list(r) for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not field.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(x, inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: list, field) -> int:
    return len(rref(matrix, field)[1])


def nullspace(matrix: list, field) -> list:
    """Basis of {v : matrix @ v = 0}; vectors of length ncols."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows, pivots = rref(matrix, field)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero()] * ncols
        v[fc] = field.one()
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(rows[r][fc])
        basis.append(v)
    return basis


def row_space_basis(matrix: list, field) -> list:
    """Nonzero rows of the rref: a canonical basis of the row space."""
    rows, pivots = rref(matrix, field)
    return [rows[i] for i in range(len(pivots))]


def in_row_space(vector: list, basis_rref: list, field) -> bool:
    """Membership test against a basis already in rref form."""
    v = list(vector)
    for row in basis_rref:
        pc = next((j for j, x in enumerate(row) if not field.is_zero(x)), None)
        if pc is None:
            continue
        if not field.is_zero(v[pc]):
            f = v[pc]
            v = [field.sub(x, field.mul(f, y)) for x, y in zip(v, row)]
    return all(field.is_zero(x) for x in v)


def solve(matrix: list, rhs: list, field):
    """One solution x of matrix @ x = rhs, or None when inconsistent."""
    if not matrix:
        return None if any(not field.is_zero(b) for b in rhs) else []
    ncols = len(matrix[0])
    aug = [list(r) + [b] for r, b in zip(matrix, rhs)]
    rows, pivots = rref(aug, field)
    for i in range(len(rows)):
        if all(field.is_zero(x) for x in rows[i][:ncols]) and not field.is_zero(rows[i][ncols]):
            return None
    x = [field.zero()] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = rows[r][ncols]
    return x


def intersect_row_spaces(a: list, b: list, field) -> list:
    """Basis of rowspace(a) meet rowspace(b) (Zassenhaus-style via nullspace)."""
    if not a or not b:
        return []
    n = len(a[0])
    # v in both spaces: v = x @ a = y @ b; solve x @ a - y @ b = 0.
    stacked = transpose([list(r) for r in a] + [[field.neg(x) for x in r] for r in b])
    combos = nullspace(stacked, field)
    vecs = []
    for w in combos:
        v = [field.zero()] * n
        for coeff, row in zip(w[: len(a)], a):
            if not field.is_zero(coeff):
                v = [field.add(x, field.mul(coeff, y)) for x, y in zip(v, row)]
        vecs.append(v)
    return row_space_basis(vecs, field) if vecs else []
