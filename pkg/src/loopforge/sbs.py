"""Special maps and their groups, with executable cardinality checks.

A permutation theta is special for (G, *) when some pair (f, g) makes
(theta . R_g^-1, theta . L_f^-1, theta) an autotopism; the special maps form
the Bryant-Schneider group BS(G).  Relative to a chosen subgroup H the same
construction with f, g in H and theta stabilizing H yields the Smarandache
variant SBS, the witness triples form the set omega, and projecting omega
onto its third component is a homomorphism onto SBS whose kernel is pinned
by the middle nucleus.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import NotSLoop
from .isotopy import (
    DEFAULT_SEARCH_CAP,
    Autotopism,
    _check_cap,
    autotopism_group,
    autotopism_inverse,
    autotopism_product,
    automorphism_group,
    principal_isotope,
    s_isomorphisms,
    smarandache_principal_isotope,
)
from .loop_core import LoopTable, SLoopContext, middle_nucleus, s_subgroups
from .perm import Perm, compose, identity, inverse

CHECK_KEYS = (
    "t10", "c11", "t12", "t12_1", "t8", "t13", "t14", "t15",
    "t16", "t17", "t18", "t19", "t20", "c21", "c23",
)

GROUP_LABELS = ("SYM", "SSYM", "AUM", "SA", "BS", "SBS")


@dataclass(frozen=True)
class SpecialMapWitness:
    """A pair (f, g) certifying theta as special."""

    theta: Perm
    f: int
    g: int


@dataclass(frozen=True)
class OmegaElement:
    """An autotopism of the special shape together with its witness."""

    autotopism: Autotopism
    witness: SpecialMapWitness


@dataclass(frozen=True)
class GroupOfPerms:
    """A labelled, sorted, closure-checked collection of permutations."""

    members: tuple
    label: str

    def __post_init__(self):
        assert self.label in GROUP_LABELS, self.label

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, p: Perm) -> bool:
        return p in set(self.members)

    def member_set(self) -> frozenset:
        return frozenset(p.images for p in self.members)


def check_perm_group(perms) -> str | None:
    """Closure/identity/inverse violation for equal-degree perms, or None."""
    members = list(perms)
    if not members:
        return "empty set"
    n = members[0].degree
    keys = {p.images for p in members}
    if identity(n).images not in keys:
        return "identity missing"
    for p in members:
        if inverse(p).images not in keys:
            return f"inverse of {p.images} missing"
    for p in members:
        for q in members:
            if compose(p, q).images not in keys:
                return f"product of {p.images} and {q.images} missing"
    return None


def ssym(ctx: SLoopContext, cap: int = DEFAULT_SEARCH_CAP) -> GroupOfPerms:
    """All permutations mapping the subgroup into itself.

    Bijectivity forces the subgroup and its complement to be stabilized
    setwise, so there are |H|! * (n - |H|)! members.
    """
    n = ctx.loop.n
    _check_cap(n, cap)
    h = list(ctx.h.elements)
    rest = [x for x in range(n) if x not in set(h)]
    members = []
    for ph in itertools.permutations(h):
        base = [-1] * n
        for src, dst in zip(h, ph):
            base[src] = dst
        for pr in itertools.permutations(rest):
            imgs = list(base)
            for src, dst in zip(rest, pr):
                imgs[src] = dst
            members.append(Perm(imgs))
    assert len(members) == math.factorial(len(h)) * math.factorial(n - len(h))
    members.sort(key=lambda p: p.images)
    return GroupOfPerms(tuple(members), "SSYM")


def _special_law_holds(L: LoopTable, theta_imgs: tuple, f: int, g: int) -> bool:
    """Whether (theta . R_g^-1, theta . L_f^-1, theta) is an autotopism."""
    t = L.table
    ld = L.ldiv[f]
    rd = L.rdiv
    for x in range(L.n):
        row = t[rd[theta_imgs[x]][g]]
        tx = t[x]
        for y in range(L.n):
            if row[ld[theta_imgs[y]]] != theta_imgs[tx[y]]:
                return False
    return True


def special_witnesses(L: LoopTable, theta: Perm, restrict_to=None) -> list:
    """All (f, g) whose triple with theta passes the autotopism law.

    Every witness satisfies f * g = theta(e), so g is determined by f and
    only n candidate pairs need the full check; the unrestricted scan stays
    in the test suite as an oracle.
    """
    te = theta.images[L.e]
    ld = L.ldiv
    if restrict_to is not None:
        domain = restrict_to.elements
        allowed = set(domain)
    else:
        domain = range(L.n)
        allowed = None
    out = []
    for f in domain:
        g = ld[f][te]
        if allowed is not None and g not in allowed:
            continue
        if _special_law_holds(L, theta.images, f, g):
            out.append(SpecialMapWitness(theta, f, g))
    return out


def bs_group(L: LoopTable, cap: int = DEFAULT_SEARCH_CAP) -> GroupOfPerms:
    """The Bryant-Schneider group: every permutation with a witness pair."""
    n = L.n
    _check_cap(n, cap)
    t = L.table
    ld = L.ldiv
    rd = L.rdiv
    e = L.e
    members = []
    for imgs in itertools.permutations(range(n)):
        te = imgs[e]
        for f in range(n):
            if _special_law_holds(L, imgs, f, ld[f][te]):
                members.append(Perm(imgs))
                break
    violation = check_perm_group(members)
    assert violation is None, f"BS is not a group: {violation}"
    return GroupOfPerms(tuple(members), "BS")


def sbs_group(ctx: SLoopContext, cap: int = DEFAULT_SEARCH_CAP) -> GroupOfPerms:
    """The Smarandache Bryant-Schneider group relative to ctx.h.

    Members are subgroup-stabilizing permutations with a witness pair drawn
    from the subgroup itself.
    """
    members = [
        theta
        for theta in ssym(ctx, cap=cap)
        if special_witnesses(ctx.loop, theta, restrict_to=ctx.h)
    ]
    violation = check_perm_group(members)
    assert violation is None, f"SBS is not a group: {violation}"
    return GroupOfPerms(tuple(members), "SBS")


def sa_group(ctx: SLoopContext, cap: int = DEFAULT_SEARCH_CAP) -> GroupOfPerms:
    """Subgroup-stabilizing automorphisms: the intersection of SSYM and AUM."""
    hset = set(ctx.h.elements)
    members = [
        a
        for a in automorphism_group(ctx.loop, cap=cap)
        if all(a.images[x] in hset for x in hset)
    ]
    violation = check_perm_group(members)
    assert violation is None, f"SA is not a group: {violation}"
    return GroupOfPerms(tuple(members), "SA")


def omega(ctx: SLoopContext, cap: int = DEFAULT_SEARCH_CAP) -> list[OmegaElement]:
    """All autotopisms (theta . R_g^-1, theta . L_f^-1, theta) with f, g in
    the subgroup and theta stabilizing it, one element per distinct triple."""
    L = ctx.loop
    n = L.n
    _check_cap(n, cap)
    ld = L.ldiv
    rd = L.rdiv
    elements = []
    seen = set()
    for theta in ssym(ctx, cap=cap):
        for wit in special_witnesses(L, theta, restrict_to=ctx.h):
            u = Perm(rd[theta.images[x]][wit.g] for x in range(n))
            v = Perm(ld[wit.f][theta.images[y]] for y in range(n))
            triple = Autotopism(u, v, theta)
            key = triple.key()
            if key in seen:
                continue
            seen.add(key)
            assert triple.holds_for(L)
            elements.append(OmegaElement(triple, wit))
    elements.sort(key=lambda el: el.autotopism.key())
    for el in elements:
        assert autotopism_inverse(el.autotopism).key() in seen, "omega not closed under inverse"
        for other in elements:
            prod = autotopism_product(el.autotopism, other.autotopism)
            assert prod.key() in seen, "omega not closed under composition"
    return elements


def theta_set(ctx: SLoopContext, cap: int = DEFAULT_SEARCH_CAP) -> list[tuple[int, int]]:
    """Subgroup pairs (f, g) whose isotope maps back onto the loop.

    A pair qualifies when the Smarandache f,g-principal isotope admits a
    subgroup-preserving isomorphism onto the original loop.  (e, e) always
    qualifies via the identity map.
    """
    _check_cap(ctx.loop.n, cap)
    pairs = []
    for f in ctx.h.elements:
        for g in ctx.h.elements:
            _, ictx = smarandache_principal_isotope(ctx, f, g)
            if s_isomorphisms(ictx, ctx, cap=cap):
                pairs.append((f, g))
    return pairs


def phi_project(x: OmegaElement) -> Perm:
    """Third component of the triple; projecting omega this way is a
    homomorphism onto SBS."""
    return x.autotopism.w


def ker_phi(ctx: SLoopContext, cap: int = DEFAULT_SEARCH_CAP) -> list[OmegaElement]:
    """Omega elements whose third component is the identity.

    Each kernel element's witness satisfies g * f = e with g in the middle
    nucleus; both facts are asserted.
    """
    L = ctx.loop
    ide = identity(L.n)
    nucleus = set(middle_nucleus(L).elements)
    out = [el for el in omega(ctx, cap=cap) if el.autotopism.w == ide]
    for el in out:
        f, g = el.witness.f, el.witness.g
        assert L.table[g][f] == L.e, f"kernel witness ({f}, {g}) has g*f != e"
        assert g in nucleus, f"kernel witness g={g} outside the middle nucleus"
    return out


@dataclass(frozen=True)
class CheckResult:
    status: str  # "pass" | "fail" | "n/a"
    detail: str

    def to_json_dict(self) -> dict:
        return {"status": self.status, "detail": self.detail}


@dataclass(frozen=True)
class CardinalityReport:
    """Sizes of every derived group and set for one subgroup choice."""

    subgroup: tuple
    order: int
    h: int
    bs: int
    sbs: int
    ssym: int
    aum: int
    sa: int
    aut: int
    omega: int
    theta: int
    n_mu: int
    n_mu_cap_h: int
    ker_phi: int
    checks: dict

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "h": self.h,
            "bs": self.bs,
            "sbs": self.sbs,
            "ssym": self.ssym,
            "aum": self.aum,
            "sa": self.sa,
            "aut": self.aut,
            "omega": self.omega,
            "theta": self.theta,
            "n_mu": self.n_mu,
            "n_mu_cap_h": self.n_mu_cap_h,
            "ker_phi": self.ker_phi,
            "checks": {k: v.to_json_dict() for k, v in self.checks.items()},
        }


@dataclass(frozen=True)
class AggregateReport:
    """Whole-loop summary: the averaged index formula over all subgroups."""

    order: int
    s_subgroup_count: int
    bs: int
    checks: dict

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "s_subgroups": self.s_subgroup_count,
            "bs": self.bs,
            "checks": {k: v.to_json_dict() for k, v in self.checks.items()},
        }


@dataclass(frozen=True)
class LoopVerification:
    reports: tuple
    aggregate: AggregateReport

    def failed_checks(self) -> list[tuple]:
        bad = []
        for rep in self.reports:
            for key, res in rep.checks.items():
                if res.status == "fail":
                    bad.append((rep.subgroup, key, res))
        for key, res in self.aggregate.checks.items():
            if res.status == "fail":
                bad.append((None, key, res))
        return bad

    def all_pass(self) -> bool:
        return not self.failed_checks()


def _result(ok: bool, detail: str) -> CheckResult:
    return CheckResult("pass" if ok else "fail", detail)


def _guarded(fn) -> CheckResult:
    try:
        return fn()
    except AssertionError as exc:
        return CheckResult("fail", f"assertion failed: {exc}")


def verify_theorems(L: LoopTable, cap: int = DEFAULT_SEARCH_CAP) -> LoopVerification:
    """Machine-check every recorded identity for each proper subgroup of L.

    Check keys and what they witness:
      t10    SBS is a group inside BS
      c11    SBS sits inside SSYM (itself a group of the predicted size)
      t12    subgroup-parameter isotopes are loops keeping H as a subgroup
      t12_1  the reversed parameter pair reconstructs the original table
      t8     witness search and isotope-isomorphism search agree on SBS
      t13    every subgroup-parameter isotope has the same SBS
      t14    |BS| is |SBS| times an integer index (aggregate: averaged form)
      t15    omega is a subgroup of the full autotopism group
      t16    third-component projection respects composition
      t17    kernel elements are exactly the nucleus-in-subgroup pairs
      t18    |omega| = |SBS| * |ker|, with |ker| = |N_mu intersect H|
      t19    |omega| = |theta| * |SA|
      t20    theta covers H x H exactly when |H|^2 |SA| = |SBS| |N_mu^H|
      c21    same criterion read as the isotopy-invariance property
      c23    index consequences when the loop passes c21 with |N_mu| > 1

    Counts involving the middle nucleus are evaluated in two readings, the
    full nucleus and its intersection with H; pass/fail follows the
    intersection reading and the detail string records both.
    """
    _check_cap(L.n, cap)
    n = L.n
    subs = s_subgroups(L)
    if not subs:
        raise NotSLoop(f"order-{n} loop has no proper non-trivial subgroup")

    bs = bs_group(L, cap=cap)
    aut = autotopism_group(L, cap=cap)
    aum = automorphism_group(L, cap=cap)
    nucleus = middle_nucleus(L)
    nucleus_set = set(nucleus.elements)
    bs_set = bs.member_set()
    aut_keys = {a.key() for a in aut}

    reports = []
    sbs_sizes = []
    for hsub in subs:
        ctx = SLoopContext(L, hsub)
        hset = set(hsub.elements)
        hsize = len(hsub)
        ssym_g = ssym(ctx, cap=cap)
        sbs_g = sbs_group(ctx, cap=cap)
        sa_g = sa_group(ctx, cap=cap)
        om = omega(ctx, cap=cap)
        th = theta_set(ctx, cap=cap)
        ker = [el for el in om if el.autotopism.w == identity(n)]
        sbs_sizes.append(len(sbs_g))

        ssym_set = ssym_g.member_set()
        sbs_set = sbs_g.member_set()
        n_mu_cap_h = len(nucleus_set & hset)
        pairs = [(f, g) for f in hsub.elements for g in hsub.elements]
        checks = {}

        def check_t10():
            extra = sorted(sbs_set - bs_set)
            ok = not extra
            detail = f"|SBS|={len(sbs_g)} |BS|={len(bs)}"
            if extra:
                detail += f" outside BS: {extra}"
            return _result(ok, detail)

        def check_c11():
            extra = sorted(sbs_set - ssym_set)
            expected = math.factorial(hsize) * math.factorial(n - hsize)
            ok = not extra and len(ssym_g) == expected
            detail = f"|SBS|={len(sbs_g)} |SSYM|={len(ssym_g)} expected |SSYM|={expected}"
            if extra:
                detail += f" outside SSYM: {extra}"
            return _result(ok, detail)

        def check_t12():
            for f, g in pairs:
                record, _ = smarandache_principal_isotope(ctx, f, g)
                if record.result.e != L.table[f][g]:
                    return _result(False, f"isotope ({f},{g}) identity {record.result.e}")
            return _result(True, f"{len(pairs)} isotopes valid, subgroup preserved")

        def check_t12_1():
            for f, g in pairs:
                record, _ = smarandache_principal_isotope(ctx, f, g)
                back = principal_isotope(record.result, g, f)
                if back.result.table != L.table:
                    return _result(False, f"({f},{g}) round trip altered the table")
            return _result(True, f"{len(pairs)} round trips exact")

        def check_t8():
            via_iso_onto = set()
            via_iso_into = set()
            for f, g in pairs:
                _, ictx = smarandache_principal_isotope(ctx, f, g)
                for a in s_isomorphisms(ctx, ictx, cap=cap, onto=True):
                    via_iso_onto.add(a.images)
                for a in s_isomorphisms(ctx, ictx, cap=cap):
                    via_iso_into.add(a.images)
            ok = via_iso_onto == sbs_set
            detail = (
                f"witness route {len(sbs_set)}, isotope route {len(via_iso_onto)} (onto)"
                f" / {len(via_iso_into)} (into)"
            )
            if not ok:
                diff = sorted(via_iso_onto ^ sbs_set)
                detail += f" difference: {diff}"
            return _result(ok, detail)

        def check_t13():
            for f, g in pairs:
                _, ictx = smarandache_principal_isotope(ctx, f, g)
                other = sbs_group(ictx, cap=cap)
                if other.member_set() != sbs_set:
                    return _result(
                        False,
                        f"({f},{g}) isotope SBS has {len(other)} members, base has {len(sbs_g)}",
                    )
            return _result(True, f"SBS invariant across {len(pairs)} isotopes")

        def check_t14():
            ok = len(bs) % len(sbs_g) == 0
            detail = f"|BS|={len(bs)} |SBS|={len(sbs_g)} index={len(bs) / len(sbs_g):g}"
            return _result(ok, detail)

        def check_t15():
            missing = [el.autotopism.key() for el in om if el.autotopism.key() not in aut_keys]
            ok = not missing
            detail = f"|omega|={len(om)} |AUT|={len(aut)}"
            if missing:
                detail += f" {len(missing)} triples outside AUT"
            return _result(ok, detail)

        def check_t16():
            for a in om:
                for b in om:
                    prod = autotopism_product(a.autotopism, b.autotopism)
                    if prod.w != compose(a.autotopism.w, b.autotopism.w):
                        return _result(False, "projection broke on a product")
                    if prod.w.images not in sbs_set:
                        return _result(False, f"projected product {prod.w.images} outside SBS")
            return _result(True, f"homomorphism verified on {len(om)}^2 pairs")

        def check_t17():
            expected = set()
            ld = L.ldiv
            for g in sorted(nucleus_set & hset):
                f = ld[g][L.e]
                u = Perm(L.rdiv[x][g] for x in range(n))
                v = Perm(ld[f][y] for y in range(n))
                expected.add(Autotopism(u, v, identity(n)).key())
            actual = {el.autotopism.key() for el in ker}
            ok = expected == actual
            detail = f"|ker|={len(ker)} nucleus pairs={len(expected)}"
            for el in ker:
                f, g = el.witness.f, el.witness.g
                if L.table[g][f] != L.e or g not in nucleus_set:
                    ok = False
                    detail += f" bad witness ({f},{g})"
            return _result(ok, detail)

        def check_t18():
            lit = len(ker) == len(nucleus_set)
            med = len(ker) == n_mu_cap_h
            fact = len(om) == len(sbs_g) * len(ker)
            detail = (
                f"|ker|={len(ker)} |N_mu|={len(nucleus_set)} |N_mu^H|={n_mu_cap_h}"
                f" literal_reading={'pass' if lit else 'fail'}"
                f" intersect_reading={'pass' if med else 'fail'}"
                f" |omega|={len(om)} |SBS|*|ker|={len(sbs_g) * len(ker)}"
            )
            return _result(med and fact, detail)

        def check_t19():
            ok = len(om) == len(th) * len(sa_g)
            return _result(
                ok, f"|omega|={len(om)} |theta|={len(th)} |SA|={len(sa_g)}"
            )

        def check_t20():
            full = len(th) == hsize * hsize
            rhs_int = hsize * hsize * len(sa_g) == len(sbs_g) * n_mu_cap_h
            rhs_lit = hsize * hsize * len(sa_g) == len(sbs_g) * len(nucleus_set)
            ok = full == rhs_int
            detail = (
                f"theta covers HxH: {full}; |H|^2*|SA|={hsize * hsize * len(sa_g)}"
                f" |SBS|*|N_mu^H|={len(sbs_g) * n_mu_cap_h}"
                f" |SBS|*|N_mu|={len(sbs_g) * len(nucleus_set)}"
                f" literal_reading={'pass' if full == rhs_lit else 'fail'}"
            )
            return _result(ok, detail)

        def check_c21():
            full = len(th) == hsize * hsize
            rhs_int = hsize * hsize * len(sa_g) == len(sbs_g) * n_mu_cap_h
            detail = f"gs_loop={'true' if full else 'false'} criterion={'true' if rhs_int else 'false'}"
            return _result(full == rhs_int, detail)

        def check_c23():
            gs = len(th) == hsize * hsize
            if not gs or len(nucleus_set) <= 1:
                return CheckResult(
                    "n/a",
                    f"gs_loop={'true' if gs else 'false'} |N_mu|={len(nucleus_set)}",
                )
            b = hsize * len(sa_g) == len(sbs_g)
            a_lit = hsize == len(nucleus_set)
            a_int = hsize == n_mu_cap_h
            ok = a_int == b
            detail = (
                f"|H|={hsize} |N_mu|={len(nucleus_set)} |N_mu^H|={n_mu_cap_h}"
                f" |SBS|/|SA|={len(sbs_g) / len(sa_g):g}"
                f" literal_lemma={'pass' if a_lit == b else 'fail'}"
            )
            if a_int:
                total = n * len(sa_g)
                if total % len(sbs_g) != 0 or total // len(sbs_g) <= 1:
                    ok = False
                    detail += f" index |G|*|SA|/|SBS|={total / len(sbs_g):g} not an integer > 1"
                else:
                    detail += f" index={total // len(sbs_g)}"
            return _result(ok, detail)

        for key, fn in (
            ("t10", check_t10),
            ("c11", check_c11),
            ("t12", check_t12),
            ("t12_1", check_t12_1),
            ("t8", check_t8),
            ("t13", check_t13),
            ("t14", check_t14),
            ("t15", check_t15),
            ("t16", check_t16),
            ("t17", check_t17),
            ("t18", check_t18),
            ("t19", check_t19),
            ("t20", check_t20),
            ("c21", check_c21),
            ("c23", check_c23),
        ):
            checks[key] = _guarded(fn)

        reports.append(
            CardinalityReport(
                subgroup=hsub.elements,
                order=n,
                h=hsize,
                bs=len(bs),
                sbs=len(sbs_g),
                ssym=len(ssym_g),
                aum=len(aum),
                sa=len(sa_g),
                aut=len(aut),
                omega=len(om),
                theta=len(th),
                n_mu=len(nucleus_set),
                n_mu_cap_h=n_mu_cap_h,
                ker_phi=len(ker),
                checks=checks,
            )
        )

    k = len(subs)
    total = sum(size * (len(bs) // size) for size in sbs_sizes)
    exact = all(len(bs) % size == 0 for size in sbs_sizes)
    agg_ok = exact and total == k * len(bs)
    agg_detail = (
        f"k={k} |BS|={len(bs)} sum(|SBS_i|*index_i)={total}"
        f" average={'exact' if agg_ok else f'{total}/{k}'}"
    )
    aggregate = AggregateReport(
        order=n,
        s_subgroup_count=k,
        bs=len(bs),
        checks={"t14": _result(agg_ok, agg_detail)},
    )
    return LoopVerification(tuple(reports), aggregate)
