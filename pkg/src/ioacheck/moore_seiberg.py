"""Fusing, braiding and the four Omega-tilde maps as sparse scalar matrices.

Basis elements are class keys (kind, quadruple, a5).  A matrix is stored by
columns: for each domain key, the image as {codomain key: scalar}.  Every
map here preserves a4 and permutes (a1, a2, a3), so each matrix splits into
small blocks and composition and inversion stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .branched import iota_g
from .gfunction import common_coordinates
from .model import IOASpec, OperatorClassLabel, _sort_key
from .scalars import inverse, is_zero, scalar_to_json, simplify
from .series import CheckReport

ClassKey = tuple  # (kind, quad, a5)


class FusingError(ArithmeticError):
    """The product correlator of a class is not a combination of iterate correlators."""

    def __init__(self, quad, detail: str):
        super().__init__(f"quadruple {quad}: {detail}")
        self.quad = quad


class SingularMatrixError(ArithmeticError):
    pass


def _key_str(key: ClassKey) -> str:
    kind, quad, a5 = key
    return f"{kind}(" + ",".join(map(str, quad)) + f";{a5})"


@dataclass
class IsoMatrix:
    name: str
    columns: dict = field(default_factory=dict)

    @classmethod
    def identity(cls, keys: Iterable[ClassKey], name: str = "id") -> "IsoMatrix":
        return cls(name, {k: {k: 1} for k in keys})

    @property
    def domain(self) -> list[ClassKey]:
        return sorted(self.columns, key=_sort_key)

    @property
    def codomain(self) -> list[ClassKey]:
        return sorted({r for col in self.columns.values() for r in col}, key=_sort_key)

    def column(self, key: ClassKey) -> dict:
        try:
            return self.columns[key]
        except KeyError:
            raise KeyError(f"{_key_str(key)} is outside the domain of {self.name}") from None

    def apply(self, vec: Mapping[ClassKey, object]) -> dict:
        out: dict = {}
        for k, c in vec.items():
            if is_zero(c):
                continue
            for r, v in self.column(k).items():
                out[r] = out.get(r, 0) + c * v
        return {r: simplify(v) for r, v in out.items() if not is_zero(v)}

    def apply_label(self, label: OperatorClassLabel) -> list[OperatorClassLabel]:
        img = self.apply({label.key: label.scalar})
        return [OperatorClassLabel(k[0], k[1], k[2], v) for k, v in sorted(img.items(), key=lambda kv: _sort_key(kv[0]))]

    def __matmul__(self, other: "IsoMatrix") -> "IsoMatrix":
        """self after other."""
        return IsoMatrix(f"{self.name}*{other.name}", {k: self.apply(col) for k, col in other.columns.items()})

    def inverse(self, name: str | None = None) -> "IsoMatrix":
        out: dict = {}
        for dom, cod in self._blocks():
            if len(dom) != len(cod):
                raise SingularMatrixError(f"{self.name}: block {[_key_str(k) for k in dom]} is not square")
            a = [[self.columns[c].get(r, 0) for c in dom] for r in cod]
            inv = _invert(a)
            if inv is None:
                raise SingularMatrixError(f"{self.name}: block {[_key_str(k) for k in dom]} is singular")
            for j, r in enumerate(cod):
                out[r] = {c: inv[i][j] for i, c in enumerate(dom) if not is_zero(inv[i][j])}
        return IsoMatrix(name or f"{self.name}^-1", out)

    def _blocks(self):
        """Connected components of the bipartite column/row graph."""
        parent: dict = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c, col in self.columns.items():
            find(("d", c))
            for r in col:
                parent[find(("d", c))] = find(("c", r))
        groups: dict = {}
        for node in list(parent):
            groups.setdefault(find(node), []).append(node)
        for nodes in groups.values():
            dom = sorted((k for side, k in nodes if side == "d"), key=_sort_key)
            cod = sorted((k for side, k in nodes if side == "c"), key=_sort_key)
            yield dom, cod

    def equals_on(self, other: "IsoMatrix", key: ClassKey) -> bool:
        a, b = self.column(key), other.column(key)
        return all(is_zero(a.get(r, 0) - b.get(r, 0)) for r in set(a) | set(b))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IsoMatrix):
            return NotImplemented
        return set(self.columns) == set(other.columns) and all(self.equals_on(other, k) for k in self.columns)

    __hash__ = None

    def to_json(self) -> dict:
        dom = self.domain
        cod = self.codomain
        index = {k: i for i, k in enumerate(cod)}
        entries = []
        for j, k in enumerate(dom):
            for r, v in sorted(self.columns[k].items(), key=lambda kv: _sort_key(kv[0])):
                entries.append([index[r], j, scalar_to_json(v)])
        return {
            "name": self.name,
            "domain": [_key_str(k) for k in dom],
            "codomain": [_key_str(k) for k in cod],
            "entries": entries,
        }


def _invert(a: list[list]) -> list[list] | None:
    n = len(a)
    m = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not is_zero(m[r][col])), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = inverse(m[col][col])
        m[col] = [simplify(x * p) for x in m[col]]
        for r in range(n):
            if r != col and not is_zero(m[r][col]):
                f = m[r][col]
                m[r] = [simplify(x - f * y) for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def solve_combination(target: dict, basis: list[dict]) -> list | None:
    """Coefficients x with sum x_i basis_i = target, or None; basis must be independent."""
    coords = sorted({c for v in basis for c in v} | set(target), key=repr)
    n = len(basis)
    rows = [[b.get(c, 0) for b in basis] + [target.get(c, 0)] for c in coords]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if not is_zero(rows[i][col])), None)
        if piv is None:
            return None
        rows[r], rows[piv] = rows[piv], rows[r]
        p = inverse(rows[r][col])
        rows[r] = [simplify(x * p) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not is_zero(rows[i][col]):
                f = rows[i][col]
                rows[i] = [simplify(x - f * y) for x, y in zip(rows[i], rows[r])]
        pivots.append(r)
        r += 1
    if any(not is_zero(row[n]) for row in rows[r:]):
        return None
    return [rows[p][n] for p in pivots]


def rank(vectors: list[dict]) -> int:
    coords = sorted({c for v in vectors for c in v}, key=repr)
    rows = [[v.get(c, 0) for c in coords] for v in vectors]
    rk = 0
    for col in range(len(coords)):
        piv = next((i for i in range(rk, len(rows)) if not is_zero(rows[i][col])), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = inverse(rows[rk][col])
        rows[rk] = [simplify(x * p) for x in rows[rk]]
        for i in range(rk + 1, len(rows)):
            if not is_zero(rows[i][col]):
                f = rows[i][col]
                rows[i] = [simplify(x - f * y) for x, y in zip(rows[i], rows[rk])]
        rk += 1
    return rk


# ---------------------------------------------------------------- builders


def build_omega_tilde(i: int, inverse: bool, model: IOASpec) -> IsoMatrix:
    """Omega-tilde^(i) built from Omega = Omega_{-1}, or from Omega^{-1} = Omega_0.

    (1) [Y1 x Y2]_I -> [Omega(Y1) x Y2]_I
    (2) [Y1 x Y2]_P -> [Y2 x Omega(Y1)]_I
    (3) [Y1 x Y2]_I -> [Omega(Y2) x Y1]_P
    (4) [Y1 x Y2]_P -> [Y1 x Omega(Y2)]_P
    """
    r = 0 if inverse else -1
    name = f"Omega{'^-1' if inverse else ''}({i})"
    cols: dict = {}
    for quad in model.quadruples():
        a1, a2, a3, a4 = quad
        if i in (1, 3):
            for lab in model.classes("I", quad):
                a5 = lab.a5
                if i == 1:
                    cols[lab.key] = {("I", (a2, a1, a3, a4), a5): model.omega_scalar(r, a1, a2, a5)}
                else:
                    cols[lab.key] = {("P", (a3, a1, a2, a4), a5): model.omega_scalar(r, a5, a3, a4)}
        elif i in (2, 4):
            for lab in model.classes("P", quad):
                a5 = lab.a5
                if i == 2:
                    cols[lab.key] = {("I", (a2, a3, a1, a4), a5): model.omega_scalar(r, a1, a5, a4)}
                else:
                    cols[lab.key] = {("P", (a1, a3, a2, a4), a5): model.omega_scalar(r, a2, a3, a5)}
        else:
            raise ValueError(f"Omega-tilde index must be 1..4, not {i}")
    return IsoMatrix(name, cols)


def fusing_block(model: IOASpec, quad) -> dict:
    """Columns of F on the P-classes of one quadruple.

    Product and iterate correlators are both principal at the anchor, which
    lies in S1, so matching them as GFunctions matches their branches there.
    """
    quad = tuple(quad)
    p_labels = model.classes("P", quad)
    i_labels = model.classes("I", quad)
    if len(p_labels) != len(i_labels):
        raise FusingError(quad, f"{len(p_labels)} P-classes but {len(i_labels)} I-classes")
    p_fns = [model.product_correlator(l) for l in p_labels]
    i_fns = [model.iterate_correlator(l) for l in i_labels]
    coords = common_coordinates(p_fns + i_fns)
    p_vecs, i_vecs = coords[: len(p_fns)], coords[len(p_fns) :]
    cols = {}
    for lab, vec in zip(p_labels, p_vecs):
        x = solve_combination(vec, i_vecs)
        if x is None:
            raise FusingError(quad, f"product correlator of P-class {lab.a5} is not matched by iterates")
        cols[lab.key] = {il.key: v for il, v in zip(i_labels, x) if not is_zero(v)}
    return cols


def build_fusing(model: IOASpec) -> IsoMatrix:
    cols: dict = {}
    for quad in model.quadruples():
        cols.update(fusing_block(model, quad))
    return IsoMatrix("F", cols)


def build_braiding(model: IOASpec, fusing: IsoMatrix | None = None) -> IsoMatrix:
    """B = F^-1 Omega-tilde^(1) F."""
    f = fusing or build_fusing(model)
    b = f.inverse("F^-1") @ build_omega_tilde(1, False, model) @ f
    b.name = "B"
    return b


@dataclass
class MatrixSet:
    F: IsoMatrix
    B: IsoMatrix
    omega: dict  # (i, inverse) -> IsoMatrix

    def to_json(self) -> dict:
        out = {"F": self.F.to_json(), "B": self.B.to_json()}
        for (i, inv), m in sorted(self.omega.items()):
            out[m.name] = m.to_json()
        return out


def build_all(model: IOASpec) -> MatrixSet:
    f = build_fusing(model)
    omega = {(i, inv): build_omega_tilde(i, inv, model) for i in range(1, 5) for inv in (False, True)}
    b = f.inverse("F^-1") @ omega[(1, False)] @ f
    b.name = "B"
    return MatrixSet(f, b, omega)


# ---------------------------------------------------------------- relations


@dataclass(frozen=True)
class RelationResult:
    relation: str
    quad: tuple
    passed: bool
    compared: int
    counterexample: dict | None = None

    def to_json(self) -> dict:
        out = {
            "relation": self.relation,
            "quadruple": list(map(str, self.quad)),
            "status": "pass" if self.passed else "fail",
            "compared": self.compared,
        }
        if self.counterexample:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class RelationReport:
    results: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[RelationResult]:
        return [r for r in self.results if not r.passed]

    def failing_quadruples(self) -> set:
        return {r.quad for r in self.failures()}

    def by_relation(self) -> dict:
        out: dict = {}
        for r in self.results:
            ok, n = out.get(r.relation, (True, 0))
            out[r.relation] = (ok and r.passed, n + 1)
        return out

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "relations": {k: {"status": "pass" if ok else "fail", "quadruples": n} for k, (ok, n) in self.by_relation().items()},
            "failures": [r.to_json() for r in self.failures()],
        }


def relation_pairs(ms: MatrixSet) -> list[tuple[str, IsoMatrix, IsoMatrix]]:
    F, B, om = ms.F, ms.B, ms.omega
    o = lambda i: om[(i, False)]  # noqa: E731
    oi = lambda i: om[(i, True)]  # noqa: E731
    return [
        ("hexagon1", F @ o(3) @ F, o(1) @ F @ o(4)),
        ("hexagon2", F @ oi(3) @ F, oi(1) @ F @ oi(4)),
        ("inverse-omega2", o(2).inverse(), oi(3)),
        ("inverse-omega2-inv", oi(2).inverse(), o(3)),
        ("inverse-omega1", o(1).inverse(), oi(1)),
        ("inverse-omega4", o(4).inverse(), oi(4)),
        ("F-omega4", F @ o(4), o(2) @ B.inverse()),
        ("B-omega4", B @ o(4), o(3) @ F),
    ]


def check_relations(model: IOASpec, matrices: MatrixSet | None = None) -> RelationReport:
    """Every relation, column by column, grouped by the quadruple of the domain class."""
    ms = matrices or build_all(model)
    results = []
    for name, lhs, rhs in relation_pairs(ms):
        per_quad: dict = {}
        for key in lhs.domain:
            quad = key[1]
            ok, n, cex = per_quad.get(quad, (True, 0, None))
            same = key in rhs.columns and lhs.equals_on(rhs, key)
            if not same and cex is None:
                cex = {
                    "class": _key_str(key),
                    "left": {_key_str(r): scalar_to_json(v) for r, v in lhs.column(key).items()},
                    "right": {_key_str(r): scalar_to_json(v) for r, v in rhs.columns.get(key, {}).items()},
                }
            per_quad[quad] = (ok and same, n + 1, cex)
        for quad in sorted(per_quad, key=_sort_key):
            ok, n, cex = per_quad[quad]
            results.append(RelationResult(name, quad, ok, n, cex))
    return RelationReport(results)


def kernel_rank_check(model: IOASpec, cutoff: int = 8) -> list[CheckReport]:
    """The correlator maps are injective on the class span, checked on truncated expansions."""
    out = []
    for quad in model.quadruples():
        for kind, which in (("P", "12"), ("I", "20")):
            labels = model.classes(kind, quad)
            vecs = []
            for lab in labels:
                s = iota_g(which, model.correlator(lab), cutoff)
                vecs.append({ev: c for ev, c in s})
            rk = rank(vecs)
            out.append(
                CheckReport(
                    f"kernel {kind} " + ",".join(map(str, quad)),
                    rk == len(labels),
                    len(labels),
                    None if rk == len(labels) else {"quadruple": list(map(str, quad)), "rank": rk},
                    f"rank {rk} of {len(labels)}",
                )
            )
    return out


def braiding_phase(model: IOASpec, key: ClassKey, B: IsoMatrix):
    """Scalar of B on a class whose image is a single class, else None."""
    col = B.column(key)
    if len(col) != 1:
        return None
    (r, v), = col.items()
    return r, v


__all__ = [
    "FusingError",
    "IsoMatrix",
    "MatrixSet",
    "RelationReport",
    "RelationResult",
    "SingularMatrixError",
    "build_all",
    "build_braiding",
    "build_fusing",
    "build_omega_tilde",
    "check_relations",
    "fusing_block",
    "kernel_rank_check",
    "rank",
    "solve_combination",
]
