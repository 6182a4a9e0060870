"""Principal isotopes and searches for autotopisms and isomorphisms.

An autotopism of (G, *) is a triple (U, V, W) of permutations with
U(x) * V(y) = W(x * y) for all x, y.  The diagonal case U = V = W is an
automorphism.  Searches run a propagating backtracker; plain brute force
lives in the test suite as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotSElements, SearchCapExceeded
from .loop_core import LoopTable, SLoopContext, SubgroupSet, subgroup_violation, validate_table
from .perm import Perm, compose, identity, inverse

DEFAULT_SEARCH_CAP = 10


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise SearchCapExceeded(n, cap)


@dataclass(frozen=True)
class Autotopism:
    """Permutation triple (u, v, w) with u(x) * v(y) = w(x * y)."""

    u: Perm
    v: Perm
    w: Perm

    def key(self) -> tuple:
        return (self.u.images, self.v.images, self.w.images)

    def holds_for(self, L: LoopTable) -> bool:
        t = L.table
        ui, vi, wi = self.u.images, self.v.images, self.w.images
        for x in range(L.n):
            row = t[ui[x]]
            tx = t[x]
            for y in range(L.n):
                if row[vi[y]] != wi[tx[y]]:
                    return False
        return True


def autotopism_product(a: Autotopism, b: Autotopism) -> Autotopism:
    return Autotopism(compose(a.u, b.u), compose(a.v, b.v), compose(a.w, b.w))


def autotopism_inverse(a: Autotopism) -> Autotopism:
    return Autotopism(inverse(a.u), inverse(a.v), inverse(a.w))


def identity_autotopism(n: int) -> Autotopism:
    i = identity(n)
    return Autotopism(i, i, i)


@dataclass(frozen=True)
class PrincipalIsotopeRecord:
    """A source loop, the pair (f, g), and the resulting isotope."""

    source: LoopTable
    f: int
    g: int
    result: LoopTable


def principal_isotope(L: LoopTable, f: int, g: int) -> PrincipalIsotopeRecord:
    """The loop whose product sends (x, y) to (x / g) * (f \\ y).

    Its identity element is f * g.
    """
    n = L.n
    if not 0 <= f < n or not 0 <= g < n:
        raise IndexError(f"parameters ({f}, {g}) outside 0..{n - 1}")
    t = L.table
    ld = L.ldiv[f]
    rd = L.rdiv
    raw = [[t[rd[x][g]][ld[y]] for y in range(n)] for x in range(n)]
    result = validate_table(raw)
    assert result.e == t[f][g]
    return PrincipalIsotopeRecord(L, f, g, result)


def smarandache_principal_isotope(
    ctx: SLoopContext, f: int, g: int
) -> tuple[PrincipalIsotopeRecord, SLoopContext]:
    """Principal isotope with f, g drawn from the chosen subgroup.

    The subgroup carries over: the same element set is certified as a group
    under the isotope's operation before the new context is returned.
    """
    if f not in ctx.h or g not in ctx.h:
        raise NotSElements(f"({f}, {g}) not inside the subgroup {list(ctx.h.elements)}")
    record = principal_isotope(ctx.loop, f, g)
    violation = subgroup_violation(record.result, ctx.h.elements)
    assert violation is None, f"subgroup lost under isotopy: {violation}"
    new_h = SubgroupSet(ctx.h.elements, record.result)
    return record, SLoopContext(record.result, new_h)


def format_isotope_record(record: PrincipalIsotopeRecord) -> str:
    """Source table, a marker line "isotope f=<f> g=<g>", then the result."""
    from .loop_core import format_table

    return (
        format_table(record.source)
        + f"isotope f={record.f} g={record.g}\n"
        + format_table(record.result)
    )


def parse_isotope_record(text: str) -> PrincipalIsotopeRecord:
    """Inverse of format_isotope_record; the stored result is cross-checked."""
    from .errors import ParseError
    from .loop_core import parse_table

    lines = text.splitlines()
    marker = None
    for i, line in enumerate(lines):
        if line.startswith("isotope "):
            marker = i
            break
    if marker is None:
        raise ParseError("missing 'isotope f=<f> g=<g>' line")
    try:
        fields = dict(part.split("=") for part in lines[marker].split()[1:])
        f, g = int(fields["f"]), int(fields["g"])
    except (ValueError, KeyError):
        raise ParseError(f"bad isotope line {lines[marker]!r}", line=marker + 1) from None
    source = parse_table("\n".join(lines[:marker]))
    stored = parse_table("\n".join(lines[marker + 1:]))
    record = principal_isotope(source, f, g)
    if stored.table != record.result.table:
        raise ParseError("stored isotope table does not match its parameters")
    return record


def autotopism_group(L: LoopTable, cap: int = DEFAULT_SEARCH_CAP) -> list[Autotopism]:
    """All autotopisms of L, sorted by component images.

    Any autotopism satisfies W = U . R_b and V = L_a^-1 . W for a = U(e),
    b = V(e), so the search backtracks over U with b as a free outer choice,
    forcing U(x*y) from U(x) and U(y).
    """
    n = L.n
    _check_cap(n, cap)
    t = L.table
    ld = L.ldiv
    rd = L.rdiv
    e = L.e
    order = [e] + [x for x in range(n) if x != e]
    results = []

    u = [-1] * n
    used = [False] * n

    def assign(x: int, v: int, b: int, trail: list) -> bool:
        stack = [(x, v)]
        while stack:
            x, v = stack.pop()
            cur = u[x]
            if cur != -1:
                if cur != v:
                    return False
                continue
            if used[v]:
                return False
            u[x] = v
            used[v] = True
            trail.append(x)
            a = u[e]
            for y in range(n):
                w = u[y]
                if w == -1:
                    continue
                stack.append((t[x][y], rd[t[v][ld[a][t[w][b]]]][b]))
                if y != x:
                    stack.append((t[y][x], rd[t[w][ld[a][t[v][b]]]][b]))
        return True

    def dfs(depth: int, b: int) -> None:
        x = -1
        for i in order:
            if u[i] == -1:
                x = i
                break
        if x == -1:
            a = u[e]
            w_imgs = tuple(t[u[i]][b] for i in range(n))
            v_imgs = tuple(ld[a][wv] for wv in w_imgs)
            cand = Autotopism(Perm(u), Perm(v_imgs), Perm(w_imgs))
            assert cand.holds_for(L)
            results.append(cand)
            return
        for v in range(n):
            if used[v]:
                continue
            trail = []
            if assign(x, v, b, trail):
                dfs(depth + 1, b)
            for p in reversed(trail):
                used[u[p]] = False
                u[p] = -1

    for b in range(n):
        dfs(0, b)

    results.sort(key=Autotopism.key)
    keys = {a.key() for a in results}
    assert identity_autotopism(n).key() in keys
    for a in results:
        assert autotopism_inverse(a).key() in keys, "autotopism set not closed under inverse"
    uu = [a.u.images for a in results]
    vv = [a.v.images for a in results]
    ww = [a.w.images for a in results]
    for i in range(len(results)):
        for j in range(len(results)):
            prod = (
                tuple(uu[j][x] for x in uu[i]),
                tuple(vv[j][x] for x in vv[i]),
                tuple(ww[j][x] for x in ww[i]),
            )
            assert prod in keys, "autotopism set not closed under composition"
    return results


def isomorphisms(L1: LoopTable, L2: LoopTable, cap: int = DEFAULT_SEARCH_CAP) -> list[Perm]:
    """All bijections A with A(x) * A(y) = A(x * y) from L1 onto L2.

    Backtracks point by point; each assignment forces the image of every
    product with an already-assigned point.
    """
    if L1.n != L2.n:
        return []
    n = L1.n
    _check_cap(n, cap)
    t1, t2 = L1.table, L2.table
    img = [-1] * n
    used = [False] * n
    found = []

    def assign(x: int, v: int, trail: list) -> bool:
        stack = [(x, v)]
        while stack:
            x, v = stack.pop()
            cur = img[x]
            if cur != -1:
                if cur != v:
                    return False
                continue
            if used[v]:
                return False
            img[x] = v
            used[v] = True
            trail.append(x)
            for y in range(n):
                w = img[y]
                if w == -1:
                    continue
                stack.append((t1[x][y], t2[v][w]))
                if y != x:
                    stack.append((t1[y][x], t2[w][v]))
        return True

    def dfs() -> None:
        x = -1
        for i in range(n):
            if img[i] == -1:
                x = i
                break
        if x == -1:
            assert all(
                t2[img[a]][img[b]] == img[t1[a][b]] for a in range(n) for b in range(n)
            )
            found.append(Perm(img))
            return
        for v in range(n):
            if used[v]:
                continue
            trail = []
            if assign(x, v, trail):
                dfs()
            for p in reversed(trail):
                used[img[p]] = False
                img[p] = -1

    dfs()
    found.sort(key=lambda p: p.images)
    return found


def automorphism_group(L: LoopTable, cap: int = DEFAULT_SEARCH_CAP) -> list[Perm]:
    """All A with (A, A, A) an autotopism of L."""
    return isomorphisms(L, L, cap=cap)


def s_isomorphisms(
    ctx1: SLoopContext,
    ctx2: SLoopContext,
    cap: int = DEFAULT_SEARCH_CAP,
    onto: bool = False,
) -> list[Perm]:
    """Isomorphisms from ctx1.loop to ctx2.loop carrying ctx1.h into ctx2.h.

    By default an image-containment check; with onto=True the subgroup must
    map exactly onto ctx2.h.  The two agree whenever the subgroups share a
    size, since isomorphisms are injective.
    """
    h2 = set(ctx2.h.elements)
    out = []
    for a in isomorphisms(ctx1.loop, ctx2.loop, cap=cap):
        image = [a.images[x] for x in ctx1.h.elements]
        if any(v not in h2 for v in image):
            continue
        if onto and set(image) != h2:
            continue
        out.append(a)
    return out
