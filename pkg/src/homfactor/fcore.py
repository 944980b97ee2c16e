"""f-core computation.

An f-core of X is a minimal image of an idempotent endomorphism r with
f∘r = f. The brute method runs a decremental loop: search for any
non-identity f-respecting retraction of the current algebra, restrict to
its fixed points, repeat; the final failed search is the exhaustive
certificate that nothing smaller remains from there. The variety-specific
methods compute a (not certified) retraction directly and are anchored to
the brute oracle by the test suite, never trusted on their own.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    Mapping,
    SizeMismatch,
    compose,
    induced_subalgebra,
    is_homomorphism,
    is_retraction_respecting,
)
from .solver import (
    DEFAULT_CONFIG,
    FactorizationInstance,
    InstanceError,
    _Engine,
    _Problem,
    find_right_factor,
)
from .varieties import (
    boolean_atoms,
    gset_orbits,
    validate_abelian,
    validate_boolean,
    validate_gset,
    validate_vspace,
)

__all__ = [
    "FCoreResult",
    "InapplicableReport",
    "brute_fcore",
    "is_fcore",
    "gset_fcore",
    "vspace_fcore",
    "boolean_fcore",
    "abelian_fcore",
    "fixed_z_right_factor",
    "FCORE_METHODS",
]

FCORE_METHODS = ("brute", "gset", "vspace", "boolean", "abelian")


@dataclass(frozen=True)
class FCoreResult:
    retraction: Mapping
    image: tuple[int, ...]
    core_algebra: FiniteAlgebra
    certified_minimal: bool
    method: str


@dataclass(frozen=True)
class InapplicableReport:
    """The variety construction does not apply; carries the brute result."""

    method: str
    reason: str
    fallback: FCoreResult


def _check_f(x: FiniteAlgebra, f: Mapping, z: FiniteAlgebra | None, what="f"):
    if f.dom_size != x.size:
        raise SizeMismatch(f"{what} has domain {f.dom_size}, algebra has size {x.size}")
    if z is not None:
        if f.cod_size != z.size:
            raise SizeMismatch(f"{what} has codomain {f.cod_size}, target has size {z.size}")
        if not is_homomorphism(f, x, z):
            raise AlgebraError(f"{what} is not a homomorphism")


def _idem_hook(eng, var, val):
    # image elements of an idempotent map are fixed points
    return eng.force(val, val)


def _find_nonidentity_retraction(x: FiniteAlgebra, fvals, *, stats=None):
    """First f-respecting non-identity retraction in seeded (moved element,
    target) lexicographic order, or None after exhaustive refutation."""
    n = x.size
    problem = _Problem(n)
    problem.add_hom_constraints(x, x)
    fibers = {}
    for v in range(n):
        fibers.setdefault(fvals[v], []).append(v)
    base = [fibers[fvals[v]] for v in range(n)]
    for moved in range(n):
        for target in base[moved]:
            if target == moved:
                continue
            domains = [set(d) for d in base]
            domains[moved] = {target}
            eng = _Engine(problem, domains, order="mrv", hooks=(_idem_hook,), stats=stats)
            for sol in eng.solutions():
                r = Mapping(n, n, sol)
                f = Mapping(n, max(max(fvals) + 1, 1), fvals)
                if not is_retraction_respecting(r, x, f):
                    raise AssertionError("retraction search returned a bad witness")
                return r
    return None


def brute_fcore(x: FiniteAlgebra, f: Mapping, z: FiniteAlgebra | None = None,
                *, stats=None) -> FCoreResult:
    """Decremental minimization down to a certified f-core."""
    _check_f(x, f, z)
    total = Mapping.identity(x.size)
    elems = list(range(x.size))
    cur = x
    cur_f = tuple(f.values)
    while True:
        r_sub = _find_nonidentity_retraction(cur, cur_f, stats=stats)
        if r_sub is None:
            break
        lift = list(range(x.size))
        for pos, e in enumerate(elems):
            lift[e] = elems[r_sub.values[pos]]
        total = Mapping(x.size, x.size, tuple(lift[v] for v in total.values))
        if not is_retraction_respecting(total, x, f):
            raise AssertionError("composite of f-respecting retractions went bad")
        elems = [elems[pos] for pos in range(len(elems)) if r_sub.values[pos] == pos]
        cur, _ = induced_subalgebra(x, elems)
        cur_f = tuple(f.values[e] for e in elems)
    core, _ = induced_subalgebra(x, elems)
    return FCoreResult(total, tuple(elems), core, True, "brute")


def is_fcore(x: FiniteAlgebra, f: Mapping, z: FiniteAlgebra | None = None,
             *, stats=None) -> bool:
    """True iff only the identity retraction respects f (exhaustive search)."""
    _check_f(x, f, z)
    return _find_nonidentity_retraction(x, tuple(f.values), stats=stats) is None


def _orbit_map(o1, o2, ops, fvals):
    """Equivariant map o1 -> o2 agreeing with f, or None. Propagates from the
    least element of o1; candidate targets tried in ascending order."""
    x0 = o1[0]
    for y0 in o2:
        theta = {x0: y0}
        stack = [x0]
        ok = True
        while stack and ok:
            u = stack.pop()
            for t in ops:
                u2, v2 = t[u], t[theta[u]]
                if u2 in theta:
                    if theta[u2] != v2:
                        ok = False
                        break
                else:
                    theta[u2] = v2
                    stack.append(u2)
        if ok and len(theta) == len(o1) and all(fvals[theta[u]] == fvals[u] for u in o1):
            return theta
    return None


def gset_fcore(x: FiniteAlgebra, f: Mapping, z: FiniteAlgebra | None = None) -> FCoreResult:
    """Orbit-level minimization for group actions.

    An idempotent equivariant map fixes whole orbits and sends every other
    orbit into a fixed one, so it suffices to repeatedly merge one kept
    orbit into another along an equivariant map that agrees with f; the
    fixpoint admits no further non-identity retraction.
    """
    problems = validate_gset(x)
    if problems:
        raise AlgebraError("not a valid group action: " + "; ".join(problems))
    if z is not None:
        zp = validate_gset(z)
        if zp:
            raise AlgebraError("target is not a valid group action: " + "; ".join(zp))
    _check_f(x, f, z)
    fvals = f.values
    ops = [x.table(name).tolist() for name, _ in x.signature.ops]
    orbits = gset_orbits(x)
    kept = list(range(len(orbits)))
    r = list(range(x.size))
    changed = True
    while changed:
        changed = False
        for i in kept:
            for j in kept:
                if i == j:
                    continue
                theta = _orbit_map(orbits[i], orbits[j], ops, fvals)
                if theta is not None:
                    kept.remove(i)
                    for e in range(x.size):
                        if r[e] in theta:
                            r[e] = theta[r[e]]
                    changed = True
                    break
            if changed:
                break
    retraction = Mapping(x.size, x.size, r)
    if not is_retraction_respecting(retraction, x, f):
        raise AssertionError("orbit merges did not produce an f-respecting retraction")
    image = sorted(e for i in kept for e in orbits[i])
    core, _ = induced_subalgebra(x, image)
    return FCoreResult(retraction, tuple(image), core, False, "gset")


def _span(gens, zero, add, scalar_tables):
    scaled = {zero}
    for g in gens:
        for s in scalar_tables:
            scaled.add(s[g])
    span = {zero}
    frontier = [zero]
    while frontier:
        v = frontier.pop()
        for g in scaled:
            w = add[v][g]
            if w not in span:
                span.add(w)
                frontier.append(w)
    return span


def vspace_fcore(x: FiniteAlgebra, f: Mapping, z: FiniteAlgebra | None = None) -> FCoreResult:
    """Projection onto a complement of the kernel of f.

    Extends a basis of ker f to a basis of X and projects along the kernel;
    the image has exactly one point per f-value.
    """
    p, problems = validate_vspace(x)
    if problems:
        raise AlgebraError("not a valid vector space: " + "; ".join(problems))
    _check_f(x, f, z)
    zero = int(x.table("zero")[0])
    add = x.nd("add").tolist()
    scalar_tables = [x.table(f"s{k}").tolist() for k in range(p)]
    fvals = f.values
    kernel = sorted(v for v in range(x.size) if fvals[v] == fvals[zero])

    def grow(basis, universe):
        sp = _span(basis, zero, add, scalar_tables)
        for v in universe:
            if v not in sp:
                basis.append(v)
                sp = _span(basis, zero, add, scalar_tables)
        return basis, sp

    ker_basis, ker_span = grow([], kernel)
    if ker_span != set(kernel):
        raise AlgebraError("kernel of f is not a subspace; f is not linear")
    full_basis, _ = grow(list(ker_basis), range(x.size))
    complement = _span(full_basis[len(ker_basis):], zero, add, scalar_tables)
    proj = [-1] * x.size
    for k in kernel:
        for w in complement:
            e = add[k][w]
            if proj[e] != -1:
                raise AlgebraError("kernel and complement do not decompose the space")
            proj[e] = w
    retraction = Mapping(x.size, x.size, proj)
    if not is_retraction_respecting(retraction, x, f):
        raise AssertionError("projection is not an f-respecting retraction")
    image = sorted(complement)
    core, _ = induced_subalgebra(x, image)
    return FCoreResult(retraction, tuple(image), core, False, "vspace")


def boolean_fcore(x: FiniteAlgebra, f: Mapping, z: FiniteAlgebra) -> FCoreResult:
    """Retraction along an idempotent self-map of the atoms.

    Each atom of the target sits under the image of exactly one atom of X;
    those representatives stay fixed and every other atom is redirected to
    the least representative. The retraction is the inverse-image map of
    that atom function, so its image is a copy of the target.
    """
    for name, alg in (("algebra", x), ("target", z)):
        problems = validate_boolean(alg)
        if problems:
            raise AlgebraError(f"{name} is not a valid Boolean algebra: " + "; ".join(problems))
    if z.size < 2:
        raise AlgebraError("target must have at least two elements")
    _check_f(x, f, z)
    if len(f.image) != z.size:
        raise AlgebraError("f is not surjective")
    atoms_x = boolean_atoms(x)
    atoms_z = boolean_atoms(z)
    meet_z = z.nd("meet")
    reps = []
    for beta in atoms_z:
        cand = [a for a in atoms_x if meet_z[f.values[a], beta] == beta]
        if len(cand) != 1:
            raise AlgebraError(
                "atom of the target is not covered by exactly one atom; "
                "not a surjective Boolean homomorphism"
            )
        reps.append(cand[0])
    rep_set = set(reps)
    least = min(reps)
    w = {a: (a if a in rep_set else least) for a in atoms_x}
    meet_x = x.nd("meet")
    join_x = x.nd("join")
    bot = int(x.table("bot")[0])
    rvals = []
    for e in range(x.size):
        acc = bot
        for a in atoms_x:
            if meet_x[w[a], e] == w[a]:
                acc = int(join_x[acc, a])
        rvals.append(acc)
    retraction = Mapping(x.size, x.size, rvals)
    if not is_retraction_respecting(retraction, x, f):
        raise AssertionError("atom redirection is not an f-respecting retraction")
    image = sorted(e for e in range(x.size) if rvals[e] == e)
    if len(image) != z.size:
        raise AssertionError("core size differs from the target size")
    core, _ = induced_subalgebra(x, image)
    return FCoreResult(retraction, tuple(image), core, False, "boolean")


def abelian_fcore(x: FiniteAlgebra, f: Mapping, z: FiniteAlgebra | None = None,
                  *, stats=None):
    """Retraction onto a complement of the kernel of f, when one exists.

    Searches for an idempotent endomorphism killing exactly the kernel; a
    witness splits X as kernel ⊕ image with the image a copy of the target.
    When the kernel is not a direct summand the construction is
    inapplicable and the brute result is returned inside the report.
    """
    problems = validate_abelian(x)
    if problems:
        raise AlgebraError("not a valid abelian group: " + "; ".join(problems))
    _check_f(x, f, z)
    zero = int(x.table("zero")[0])
    fvals = f.values
    kernel = [v for v in range(x.size) if fvals[v] == fvals[zero]]
    problem = _Problem(x.size)
    problem.add_hom_constraints(x, x)
    fibers = {}
    for v in range(x.size):
        fibers.setdefault(fvals[v], []).append(v)
    domains = [set(fibers[fvals[v]]) for v in range(x.size)]
    for k in kernel:
        domains[k] = {zero}
    eng = _Engine(problem, domains, order="mrv", hooks=(_idem_hook,), stats=stats)
    for sol in eng.solutions():
        retraction = Mapping(x.size, x.size, sol)
        if not is_retraction_respecting(retraction, x, f):
            raise AssertionError("splitting search returned a bad witness")
        image = sorted(e for e in range(x.size) if sol[e] == e)
        core, _ = induced_subalgebra(x, image)
        return FCoreResult(retraction, tuple(image), core, False, "abelian")
    fallback = brute_fcore(x, f, z, stats=stats)
    return InapplicableReport(
        "abelian", "kernel of f is not a direct summand", fallback
    )


def _run_method(method, x, f, z, stats):
    if method == "brute":
        return brute_fcore(x, f, z, stats=stats)
    if method == "gset":
        return gset_fcore(x, f, z)
    if method == "vspace":
        return vspace_fcore(x, f, z)
    if method == "boolean":
        return boolean_fcore(x, f, z)
    if method == "abelian":
        res = abelian_fcore(x, f, z, stats=stats)
        return res.fallback if isinstance(res, InapplicableReport) else res
    raise AlgebraError(f"unknown f-core method {method!r}")


def fixed_z_right_factor(inst: FactorizationInstance, fcore_method: str = "brute",
                         cfg=None, *, stats=None):
    """Right-factor decision through the f-core of X.

    Pipeline: require im(f) ⊆ im(h) and restrict the target to im(f);
    replace X by its f-core; solve the restricted instance; reassemble the
    witness as the core solution precomposed with the retraction.
    """
    cfg = cfg or DEFAULT_CONFIG
    inst.validate()
    if inst.kind != "right-factor":
        raise InstanceError(f"expected a right-factor instance, got {inst.kind}")
    f, h = inst.f, inst.h
    im_f = sorted(set(f.values))
    if not set(im_f) <= set(h.values):
        return None
    z_res, z_idx = induced_subalgebra(inst.Z, im_f)
    y_keep = sorted(y for y in range(inst.Y.size) if h.values[y] in set(im_f))
    y_res, _ = induced_subalgebra(inst.Y, y_keep)
    f_res = Mapping(inst.X.size, z_res.size, tuple(z_idx[v] for v in f.values))
    h_res = Mapping(y_res.size, z_res.size, tuple(z_idx[h.values[y]] for y in y_keep))
    res = _run_method(fcore_method, inst.X, f_res, z_res, stats)
    image = list(res.image)
    pos = {e: i for i, e in enumerate(image)}
    f_core = Mapping(len(image), z_res.size, tuple(f_res.values[e] for e in image))
    sub = FactorizationInstance(
        "right-factor", res.core_algebra, y_res, z_res, f=f_core, h=h_res
    )
    g_core = find_right_factor(sub, cfg, stats=stats)
    if g_core is None:
        return None
    rvals = res.retraction.values
    g = Mapping(
        inst.X.size,
        inst.Y.size,
        tuple(y_keep[g_core.values[pos[rvals[v]]]] for v in range(inst.X.size)),
    )
    if not is_homomorphism(g, inst.X, inst.Y) or compose(inst.h, g) != inst.f:
        raise AssertionError("reassembled right factor fails verification")
    return g
