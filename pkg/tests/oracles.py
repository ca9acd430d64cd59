"""Independent reference computations in plain Python (lists of ints mod p).

Nothing here imports the package's linear algebra or resolution code: the
only inputs are structure constants and action matrices converted to nested
lists. Ext is computed from a deliberately non-minimal free resolution
(free modules A^k on greedily chosen generators), which shares no code path
with projective covers.
"""

from __future__ import annotations

from itertools import product


def to_lists(arr):
    return [[int(x) for x in row] for row in arr]


def rank_mod_p(rows, p):
    """Rank of a list of row vectors over GF(p) by straight Gaussian elimination."""
    rows = [list(r) for r in rows if any(x % p for x in r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                fac = rows[i][c]
                rows[i] = [(a - fac * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def kernel_mod_p(mat, p):
    """Basis of {x : mat x = 0} for mat given as list of rows (r x n)."""
    n = len(mat[0]) if mat else 0
    rows = [list(r) for r in mat]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                fac = rows[i][c]
                rows[i] = [(a - fac * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fc]) % p
        basis.append(v)
    return basis


class OracleAlgebra:
    def __init__(self, table, p):
        # table[i][j][k]: b_i b_j = sum_k table[i][j][k] b_k
        self.T = [[[int(x) % p for x in row] for row in mat] for mat in table]
        self.n = len(self.T)
        self.p = p

    def mul(self, x, y):
        p, n = self.p, self.n
        out = [0] * n
        for i in range(n):
            if x[i] % p == 0:
                continue
            for j in range(n):
                if y[j] % p == 0:
                    continue
                c = x[i] * y[j]
                row = self.T[i][j]
                for k in range(n):
                    if row[k]:
                        out[k] = (out[k] + c * row[k]) % p
        return out


class OracleModule:
    """Vector space K^d with one action matrix per algebra basis element."""

    def __init__(self, alg: OracleAlgebra, actions):
        self.alg = alg
        self.act = [to_lists(a) for a in actions]
        self.d = len(self.act[0]) if self.act else 0

    def apply(self, t, v):
        p = self.alg.p
        m = self.act[t]
        return [sum(m[r][c] * v[c] for c in range(self.d)) % p for r in range(self.d)]


def _free_action(alg: OracleAlgebra, k: int, t: int, v):
    """b_t acting on A^k (coordinates: k blocks of length n)."""
    n = alg.n
    e = [0] * n
    e[t] = 1
    out = []
    for l in range(k):
        out.extend(alg.mul(e, v[l * n : (l + 1) * n]))
    return out


class Echelon:
    """Incrementally maintained row echelon basis over GF(p)."""

    def __init__(self, p):
        self.p = p
        self.rows = {}  # pivot column -> normalized row

    def __len__(self):
        return len(self.rows)

    def reduce(self, v):
        p = self.p
        v = [x % p for x in v]
        for c, row in self.rows.items():
            if v[c]:
                fac = v[c]
                v = [(a - fac * b) % p for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        r = self.reduce(v)
        piv = next((i for i, x in enumerate(r) if x), None)
        if piv is None:
            return False
        inv = pow(r[piv], -1, self.p)
        r = [x * inv % self.p for x in r]
        for c, row in self.rows.items():
            if row[piv]:
                fac = row[piv]
                self.rows[c] = [(a - fac * b) % self.p for a, b in zip(row, r)]
        self.rows[piv] = r
        return True


def _closure(ech: Echelon, vectors, act, nbasis):
    """Extend ``ech`` by the submodule generated by ``vectors``; returns the new vectors added."""
    added = []
    queue = list(vectors)
    while queue:
        v = queue.pop()
        if ech.add(v):
            added.append(v)
            for t in range(nbasis):
                queue.append(act(t, v))
    return added


def _submodule_closure(vectors, act, dim, p, nbasis):
    ech = Echelon(p)
    return _closure(ech, vectors, act, nbasis)


def free_resolution_generators(alg: OracleAlgebra, module: OracleModule, length: int):
    """Non-minimal free resolution: list of (k_i, images of generators in F_{i-1} or M).

    Generators are picked greedily (the candidate with the largest closure
    first) from a kernel basis, and F_i is the free module A^k_i on them.
    """
    p, n = alg.p, alg.n
    steps = []
    amb_dim = module.d
    act = module.apply
    sub_basis = [[1 if i == j else 0 for i in range(amb_dim)] for j in range(amb_dim)]
    for _ in range(length + 1):
        if not sub_basis:
            steps.append((0, []))
            continue
        gens = []
        ech = Echelon(p)
        while len(ech) < len(sub_basis):
            best, best_gain = None, -1
            for v in sub_basis:
                if not any(ech.reduce(v)):
                    continue
                trial = Echelon(p)
                trial.rows = dict(ech.rows)
                gain = len(_closure(trial, [v], act, n))
                if gain > best_gain:
                    best, best_gain = v, gain
            gens.append(best)
            _closure(ech, [best], act, n)
        k = len(gens)
        # epsilon: A^k -> ambient, (a_l) -> sum_l sum_t a_l[t] b_t g_l
        cols = []
        for l in range(k):
            for t in range(n):
                cols.append(act(t, gens[l]))
        mat = [[cols[c][r] for c in range(k * n)] for r in range(amb_dim)]
        ker = kernel_mod_p(mat, p)
        steps.append((k, gens))
        amb_dim = k * n
        act = lambda t, v, kk=k: _free_action(alg, kk, t, v)
        sub_basis = ker
    return steps


def ext_dims_oracle(alg: OracleAlgebra, m: OracleModule, n_mod: OracleModule, upto: int):
    """dim Ext^i(m, n_mod) for 0 <= i <= upto from the non-minimal free resolution."""
    p, nb = alg.p, alg.n
    steps = free_resolution_generators(alg, m, upto + 1)
    d = n_mod.d
    ks = [k for k, _ in steps]

    def delta(i):
        # Hom(F_i, N) -> Hom(F_{i+1}, N); F_{i+1} generators are images in F_i = A^{k_i}
        k_i, k_next = ks[i], ks[i + 1]
        gens = steps[i + 1][1]
        rows_out = k_next * d
        cols_in = k_i * d
        mat = [[0] * cols_in for _ in range(rows_out)]
        for j, y in enumerate(gens):
            for l in range(k_i):
                block = y[l * nb : (l + 1) * nb]
                for t in range(nb):
                    c = block[t] % p
                    if not c:
                        continue
                    a = n_mod.act[t]
                    for r in range(d):
                        for s in range(d):
                            if a[r][s]:
                                mat[j * d + r][l * d + s] = (mat[j * d + r][l * d + s] + c * a[r][s]) % p
        return mat

    ranks = [rank_mod_p(delta(i), p) if ks[i] and ks[i + 1] else 0 for i in range(upto + 1)]
    out = []
    for i in range(upto + 1):
        hom_dim = ks[i] * d
        prev = ranks[i - 1] if i else 0
        out.append(hom_dim - ranks[i] - prev)
    return out


def grade_oracle(alg, m: OracleModule, u: OracleModule, cap: int):
    """('exact', i), ('at_least', cap) or ('infinite', cap) for the zero module."""
    if m.d == 0:
        return ("infinite", cap)
    dims = ext_dims_oracle(alg, m, u, cap - 1)
    for i, x in enumerate(dims):
        if x:
            return ("exact", i)
    return ("at_least", cap)


def all_submodules(m: OracleModule):
    """Every submodule as a frozenset of vectors, by closing {0} under adding single vectors."""
    p = m.alg.p
    d = m.d
    vectors = [list(v) for v in product(range(p), repeat=d)]

    def closure(gens):
        span = {tuple([0] * d)}
        basis = _submodule_closure([list(g) for g in gens], m.apply, d, p, m.alg.n)
        for coeffs in product(range(p), repeat=len(basis)):
            v = [0] * d
            for c, b in zip(coeffs, basis):
                v = [(x + c * y) % p for x, y in zip(v, b)]
            span.add(tuple(v))
        return frozenset(span), basis

    seen = {}
    zero, _ = closure([])
    seen[zero] = []
    todo = [zero]
    while todo:
        cur = todo.pop()
        for v in vectors:
            if tuple(v) in cur:
                continue
            new, basis = closure(seen[cur] + [v])
            if new not in seen:
                seen[new] = basis
                todo.append(new)
    return list(seen.values())


def restrict(m: OracleModule, basis):
    """The submodule spanned by ``basis`` (rows) as an OracleModule, via coordinates."""
    p = m.alg.p
    k = len(basis)
    acts = []
    for t in range(m.alg.n):
        images = [m.apply(t, b) for b in basis]
        # solve images[j] = sum_i c_ij basis[i]
        mat = [[basis[i][r] for i in range(k)] for r in range(m.d)]
        coords = []
        for img in images:
            coords.append(_solve(mat, img, p))
        acts.append([[coords[j][i] for j in range(k)] for i in range(k)])
    sub = OracleModule.__new__(OracleModule)
    sub.alg = m.alg
    sub.act = acts
    sub.d = k
    return sub


def _solve(mat, rhs, p):
    rows = [list(r) + [rhs[i]] for i, r in enumerate(mat)]
    n = len(mat[0])
    piv_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                fac = rows[i][c]
                rows[i] = [(a - fac * b) % p for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][n] % p:
            raise ValueError("not in span")
    x = [0] * n
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][n]
    return x


def strong_grade_oracle(alg, m: OracleModule, u: OracleModule, cap: int):
    vals = []
    for basis in all_submodules(m):
        if not basis:
            continue
        vals.append(grade_oracle(alg, restrict(m, basis), u, cap))
    if not vals:
        return ("infinite", cap)
    exact = [v[1] for v in vals if v[0] == "exact"]
    if exact:
        return ("exact", min(exact))
    return ("at_least", cap)
