"""Finite bounded distributive lattices as Heyting algebras and frames.

Every FiniteLattice is kept in a canonical internal form: the carrier is
re-represented as the family of upsets of a small base poset (the
join-irreducibles under the reversed order), so binary meet and join are
bitmask intersection and union.  Construction validates the lattice and
distributive laws; the original labels and order are kept for I/O.

Conventions: the top element does not count as meet-prime and the bottom
does not count as join-irreducible.  An empty meet is the top, an empty
join is the bottom.  The one-element lattice is accepted everywhere.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import LatticeError, PosetError
from .posets import (
    FinitePoset,
    iter_bits,
    maximal_points,
    upset_masks,
)

__all__ = [
    "FiniteLattice",
    "LatticeReport",
    "Filter",
    "EssentialPrimes",
    "Booleanization",
    "validate_order",
    "validate",
    "birkhoff_lattice",
    "meet_primes",
    "join_irreducibles",
    "prime_filters",
    "completely_prime_filters",
    "points",
    "is_spatial",
    "dense_above",
    "smallest_dense",
    "is_scattered_frame",
    "min_primes",
    "essential_primes",
    "complement_of",
    "is_boolean",
    "booleanization",
    "points_space",
    "lattice_from_json_dict",
]


def _glb_of_downset(poset: FinitePoset, cand: int) -> int | None:
    """The greatest element of a downset mask, or None.

    A downset with a unique maximal element is principal, so it suffices
    to find the maximal points and demand there is exactly one.
    """
    if not cand:
        return None
    top = maximal_points(poset, cand)
    if top & (top - 1):
        return None
    return top.bit_length() - 1


def _lub_of_upset(poset: FinitePoset, cand: int) -> int | None:
    """The least element of an upset mask, or None (mirror of the above)."""
    if not cand:
        return None
    mins = 0
    for x in iter_bits(cand):
        if poset.down_mask(x) & cand == 1 << x:
            mins |= 1 << x
    if not mins or mins & (mins - 1):
        return None
    return mins.bit_length() - 1


class FiniteLattice:
    """A finite bounded distributive lattice over an explicit order."""

    __slots__ = (
        "poset",
        "bot",
        "top",
        "meet_t",
        "join_t",
        "base",
        "upset_of",
        "of_mask",
        "_cache",
    )

    def __init__(self, poset: FinitePoset):
        n = poset.n
        if n == 0:
            raise LatticeError("empty carrier cannot be a bounded lattice")
        meet_t = [[0] * n for _ in range(n)]
        join_t = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                g = _glb_of_downset(poset, poset.down_mask(i) & poset.down_mask(j))
                if g is None:
                    raise LatticeError(
                        f"no meet for {poset.elements[i]!r} and {poset.elements[j]!r}"
                    )
                meet_t[i][j] = meet_t[j][i] = g
                lub = _lub_of_upset(poset, poset.up_mask(i) & poset.up_mask(j))
                if lub is None:
                    raise LatticeError(
                        f"no join for {poset.elements[i]!r} and {poset.elements[j]!r}"
                    )
                join_t[i][j] = join_t[j][i] = lub
        bot = 0
        top = 0
        for i in range(1, n):
            bot = meet_t[bot][i]
            top = join_t[top][i]

        # join-irreducible iff exactly one lower cover (finite lattices)
        irr = []
        for a in range(n):
            if a == bot:
                continue
            lower = maximal_points(poset, poset.down_mask(a) & ~(1 << a))
            if lower and not lower & (lower - 1):
                irr.append(a)

        base_labels = [poset.elements[a] for a in irr]
        base_pairs = []
        for x in irr:
            for y in irr:
                if x != y and poset.leq_i(y, x):
                    base_pairs.append((poset.elements[x], poset.elements[y]))
        base = FinitePoset(base_labels, base_pairs)
        upset_of = []
        for a in range(n):
            m = 0
            for k, x in enumerate(irr):
                if poset.leq_i(x, a):
                    m |= 1 << k
            upset_of.append(m)

        masks = upset_masks(base)
        of_mask = {m: None for m in masks}
        ok = len(set(upset_of)) == n and len(masks) == n
        if ok:
            for a, m in enumerate(upset_of):
                if m not in of_mask or of_mask[m] is not None:
                    ok = False
                    break
                of_mask[m] = a
        if ok:
            for i in range(n):
                for j in range(n):
                    if (
                        of_mask[upset_of[i] & upset_of[j]] != meet_t[i][j]
                        or of_mask[upset_of[i] | upset_of[j]] != join_t[i][j]
                    ):
                        ok = False
                        break
                if not ok:
                    break
        if not ok:
            witness = _distributivity_witness(poset.elements, meet_t, join_t)
            assert witness is not None, "non-distributive lattice without witness triple"
            raise LatticeError(
                "not distributive: a*(b+c) != (a*b)+(a*c) for "
                f"a={witness[0]!r} b={witness[1]!r} c={witness[2]!r}"
            )

        self.poset = poset
        self.bot = bot
        self.top = top
        self.meet_t = meet_t
        self.join_t = join_t
        self.base = base
        self.upset_of = tuple(upset_of)
        self.of_mask = of_mask
        self._cache: dict = {}

    # -- basic structure -------------------------------------------------

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.poset.elements

    def index(self, label: str) -> int:
        return self.poset.index(label)

    def leq(self, a: int, b: int) -> bool:
        return self.poset.leq_i(a, b)

    def meet(self, a: int, b: int) -> int:
        return self.meet_t[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_t[a][b]

    def meet_all(self, items: Iterable[int]) -> int:
        mask = self.upset_of[self.top]
        for a in items:
            mask &= self.upset_of[a]
        return self.of_mask[mask]

    def join_all(self, items: Iterable[int]) -> int:
        mask = self.upset_of[self.bot]
        for a in items:
            mask |= self.upset_of[a]
        return self.of_mask[mask]

    def imp(self, a: int, b: int) -> int:
        """Heyting implication: the largest x with a*x <= b."""
        table = self._cache.get("imp")
        if table is None:
            n = self.n
            table = [[0] * n for _ in range(n)]
            for i in range(n):
                row = table[i]
                for j in range(n):
                    acc = 0
                    for x in range(n):
                        if self.poset.leq_i(self.meet_t[i][x], j):
                            acc |= self.upset_of[x]
                    row[j] = self.of_mask[acc]
            self._cache["imp"] = table
        return table[a][b]

    def neg(self, a: int) -> int:
        return self.imp(a, self.bot)

    def __repr__(self) -> str:
        return f"FiniteLattice({self.n} elements, bot={self.labels[self.bot]!r}, top={self.labels[self.top]!r})"

    def to_json_dict(self) -> dict:
        return {"elements": list(self.labels), "leq": [list(p) for p in self.poset.covers()]}


def _distributivity_witness(
    labels: Sequence[str], meet_t: list[list[int]], join_t: list[list[int]]
) -> tuple[str, str, str] | None:
    n = len(labels)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet_t[a][join_t[b][c]] != join_t[meet_t[a][b]][meet_t[a][c]]:
                    return (labels[a], labels[b], labels[c])
    return None


# -- validation -----------------------------------------------------------


@dataclass(frozen=True)
class LatticeReport:
    ok: bool
    is_poset: bool
    has_meets: bool
    has_joins: bool
    bounded: bool
    distributive: bool
    problems: tuple[str, ...]
    witness: tuple[str, ...] | None

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "is_poset": self.is_poset,
            "has_meets": self.has_meets,
            "has_joins": self.has_joins,
            "bounded": self.bounded,
            "distributive": self.distributive,
            "problems": list(self.problems),
            "witness": list(self.witness) if self.witness else None,
        }


def validate_order(
    elements: Sequence[str], relation: Iterable[tuple[str, str]]
) -> LatticeReport:
    """Check lattice and distributivity axioms over a raw order, reporting
    the first witness of each failure instead of raising."""
    problems: list[str] = []
    witness: tuple[str, ...] | None = None
    try:
        poset = FinitePoset(elements, relation)
    except PosetError as exc:
        return LatticeReport(False, False, False, False, False, False, (str(exc),), None)
    n = poset.n
    if n == 0:
        return LatticeReport(
            False, True, False, False, False, False, ("empty carrier",), None
        )
    has_meets = True
    has_joins = True
    meet_t = [[0] * n for _ in range(n)]
    join_t = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            g = _glb_of_downset(poset, poset.down_mask(i) & poset.down_mask(j))
            if g is None:
                has_meets = False
                if witness is None:
                    witness = (elements[i], elements[j])
                    problems.append(f"no meet for {elements[i]!r}, {elements[j]!r}")
            else:
                meet_t[i][j] = g
            lub = _lub_of_upset(poset, poset.up_mask(i) & poset.up_mask(j))
            if lub is not None:
                join_t[i][j] = lub
            else:
                has_joins = False
                if witness is None:
                    witness = (elements[i], elements[j])
                    problems.append(f"no join for {elements[i]!r}, {elements[j]!r}")
    bounded = has_meets and has_joins  # folds exist once binary ops do
    distributive = False
    if has_meets and has_joins:
        tri = _distributivity_witness(poset.elements, meet_t, join_t)
        distributive = tri is None
        if tri is not None:
            witness = tri
            problems.append(
                f"distributivity fails at a={tri[0]!r} b={tri[1]!r} c={tri[2]!r}"
            )
    ok = has_meets and has_joins and distributive
    return LatticeReport(ok, True, has_meets, has_joins, bounded, distributive,
                         tuple(problems), witness)


def validate(lattice: FiniteLattice) -> LatticeReport:
    """Re-run the raw-order validation on a built lattice."""
    pairs = [
        (lattice.labels[i], lattice.labels[j])
        for i in range(lattice.n)
        for j in range(lattice.n)
        if i != j and lattice.poset.leq_i(i, j)
    ]
    return validate_order(lattice.labels, pairs)


# -- constructors -----------------------------------------------------------


def birkhoff_lattice(poset: FinitePoset) -> FiniteLattice:
    """The lattice of upsets of a poset, ordered by inclusion.

    Carrier order is ascending upset mask; the element labels are the
    upsets rendered in set notation, so the i-th carrier element is
    upset_masks(poset)[i] and consumers may rely on that alignment.
    """
    masks = upset_masks(poset)
    labels = ["{" + ",".join(poset.elements[i] for i in iter_bits(m)) + "}" for m in masks]
    pairs = []
    for k, m in enumerate(masks):
        for k2, m2 in enumerate(masks):
            if k != k2 and m & m2 == m:
                pairs.append((labels[k], labels[k2]))
    return FiniteLattice(FinitePoset(labels, pairs))


def lattice_from_json_dict(data: object) -> FiniteLattice:
    if not isinstance(data, dict):
        raise LatticeError("lattice JSON must be an object")
    if "from_poset" in data:
        return birkhoff_lattice(FinitePoset.from_json_dict(data["from_poset"]))
    elements = data.get("elements")
    leq = data.get("leq", [])
    if not isinstance(elements, list) or not all(isinstance(x, str) for x in elements):
        raise LatticeError('lattice JSON needs an "elements" list of strings')
    if not isinstance(leq, list):
        raise LatticeError('lattice "leq" must be a list of pairs')
    pairs = []
    for item in leq:
        if not (isinstance(item, list) and len(item) == 2
                and all(isinstance(x, str) for x in item)):
            raise LatticeError(f"bad leq pair {item!r}")
        pairs.append((item[0], item[1]))
    report = validate_order(elements, pairs)
    if not report.ok:
        raise LatticeError("; ".join(report.problems) or "invalid lattice")
    return FiniteLattice(FinitePoset(elements, pairs))


# -- irreducibles and primes -----------------------------------------------


def join_irreducibles(lattice: FiniteLattice) -> int:
    """Mask of elements that are not proper joins (bottom excluded)."""
    cached = lattice._cache.get("join_irr")
    if cached is not None:
        return cached
    out = 0
    n = lattice.n
    for a in range(n):
        if a == lattice.bot:
            continue
        for x in range(n):
            if not lattice.poset.leq_i(x, a) or x == a:
                continue
            hit = False
            for y in range(n):
                if y != a and lattice.poset.leq_i(y, a) and lattice.join_t[x][y] == a:
                    hit = True
                    break
            if hit:
                break
        else:
            out |= 1 << a
    lattice._cache["join_irr"] = out
    return out


def meet_primes(lattice: FiniteLattice) -> int:
    """Mask of p (top excluded) with a*b <= p implying a <= p or b <= p."""
    cached = lattice._cache.get("meet_primes")
    if cached is not None:
        return cached
    out = 0
    n = lattice.n
    for p in range(n):
        if p == lattice.top:
            continue
        good = True
        for a in range(n):
            if lattice.poset.leq_i(a, p):
                continue
            for b in range(n):
                if lattice.poset.leq_i(lattice.meet_t[a][b], p) and not lattice.poset.leq_i(b, p):
                    good = False
                    break
            if not good:
                break
        if good:
            out |= 1 << p
    lattice._cache["meet_primes"] = out
    return out


# -- filters and points ------------------------------------------------------


@dataclass(frozen=True)
class Filter:
    """A principal proper filter, with its primality flags."""

    generator: int
    members: int
    prime: bool
    completely_prime: bool


def _principal_prime(lattice: FiniteLattice, g: int) -> bool:
    n = lattice.n
    for x in range(n):
        if lattice.poset.leq_i(g, x):
            continue
        for y in range(x, n):
            if lattice.poset.leq_i(g, lattice.join_t[x][y]) and not lattice.poset.leq_i(g, y):
                return False
    return True


def _principal_completely_prime(lattice: FiniteLattice, g: int) -> bool:
    rest = lattice.join_all(
        x for x in range(lattice.n) if not lattice.poset.leq_i(g, x)
    )
    return not lattice.poset.leq_i(g, rest)


def prime_filters(lattice: FiniteLattice) -> list[Filter]:
    """All prime filters, as principal filters at their generators.

    Every filter of a finite lattice is principal, and a principal filter
    can only be prime when its generator is join-irreducible; primality is
    then verified against the pairwise definition.
    """
    irr = join_irreducibles(lattice)
    out = []
    for g in iter_bits(irr):
        if _principal_prime(lattice, g):
            out.append(
                Filter(
                    generator=g,
                    members=lattice.poset.up_mask(g),
                    prime=True,
                    completely_prime=_principal_completely_prime(lattice, g),
                )
            )
    return out


def completely_prime_filters(lattice: FiniteLattice) -> list[Filter]:
    """All completely prime filters, by the complement-join test over every
    proper principal filter (no irreducibility shortcut)."""
    out = []
    for g in range(lattice.n):
        if g == lattice.bot:
            continue  # the improper filter
        if _principal_completely_prime(lattice, g):
            out.append(
                Filter(
                    generator=g,
                    members=lattice.poset.up_mask(g),
                    prime=_principal_prime(lattice, g),
                    completely_prime=True,
                )
            )
    return out


def points(lattice: FiniteLattice) -> list[Filter]:
    """Prime filters, validated to coincide with the completely prime ones."""
    cached = lattice._cache.get("points")
    if cached is not None:
        return cached
    pf = prime_filters(lattice)
    cpf = completely_prime_filters(lattice)
    if [f.generator for f in pf] != [f.generator for f in cpf]:
        raise LatticeError("prime and completely prime filters disagree")
    if any(not (f.prime and f.completely_prime) for f in pf + cpf):
        raise LatticeError("primality flags disagree between the two routes")
    lattice._cache["points"] = pf
    return pf


def is_spatial(lattice: FiniteLattice) -> tuple[bool, tuple[str, str] | None]:
    """Do points separate a from b whenever a is not below b?"""
    pts = points(lattice)
    for a in range(lattice.n):
        for b in range(lattice.n):
            if lattice.poset.leq_i(a, b):
                continue
            if not any(
                f.members >> a & 1 and not f.members >> b & 1 for f in pts
            ):
                return False, (lattice.labels[a], lattice.labels[b])
    return True, None


# -- density and scatteredness ----------------------------------------------


def dense_above(lattice: FiniteLattice, a: int) -> list[int]:
    """Elements d >= a with d -> a == a."""
    return [
        d
        for d in range(lattice.n)
        if lattice.poset.leq_i(a, d) and lattice.imp(d, a) == a
    ]


def smallest_dense(lattice: FiniteLattice, a: int) -> int | None:
    dense = dense_above(lattice, a)
    m = lattice.meet_all(dense)
    return m if m in dense else None


def is_scattered_frame(lattice: FiniteLattice) -> bool:
    return all(smallest_dense(lattice, a) is not None for a in range(lattice.n))


# -- minimal and essential primes ---------------------------------------------


def min_primes(lattice: FiniteLattice, a: int) -> int:
    """Mask of minimal meet-primes above a."""
    above = [p for p in iter_bits(meet_primes(lattice)) if lattice.poset.leq_i(a, p)]
    out = 0
    for p in above:
        if not any(q != p and lattice.poset.leq_i(q, p) for q in above):
            out |= 1 << p
    return out


@dataclass(frozen=True)
class EssentialPrimes:
    min_mask: int
    meet_is_a: bool
    essential_mask: int | None


def essential_primes(lattice: FiniteLattice, a: int) -> EssentialPrimes:
    """Primes that cannot be dropped from the minimal-prime meet of a.

    Only meaningful when a equals the meet of its minimal primes; when it
    does not, the result is flagged and no essential set is produced.
    """
    mins = min_primes(lattice, a)
    mem = list(iter_bits(mins))
    if lattice.meet_all(mem) != a:
        return EssentialPrimes(mins, False, None)
    ess = 0
    for p in mem:
        if lattice.meet_all(q for q in mem if q != p) != a:
            ess |= 1 << p
    return EssentialPrimes(mins, True, ess)


# -- boolean structure ---------------------------------------------------------


def complement_of(lattice: FiniteLattice, a: int) -> int | None:
    for b in range(lattice.n):
        if (
            lattice.meet_t[a][b] == lattice.bot
            and lattice.join_t[a][b] == lattice.top
        ):
            return b
    return None


def is_boolean(lattice: FiniteLattice) -> bool:
    return all(complement_of(lattice, a) is not None for a in range(lattice.n))


@dataclass(frozen=True)
class Booleanization:
    lattice: FiniteLattice
    image_mask: int
    project: tuple[int, ...]
    image_index: tuple[int, ...]


def booleanization(lattice: FiniteLattice) -> Booleanization:
    """The double-negation image as a lattice, with the projection map.

    Meets agree with the ambient lattice; the join of regular elements is
    the double negation of the ambient join, which is the least upper
    bound inside the image, so the induced order already carries the
    right lattice structure.
    """
    reg = sorted({lattice.neg(lattice.neg(a)) for a in range(lattice.n)})
    image_mask = 0
    for a in reg:
        image_mask |= 1 << a
    labels = [lattice.labels[a] for a in reg]
    pairs = [
        (labels[i], labels[j])
        for i, x in enumerate(reg)
        for j, y in enumerate(reg)
        if i != j and lattice.poset.leq_i(x, y)
    ]
    sub = FiniteLattice(FinitePoset(labels, pairs))
    if not is_boolean(sub):
        raise LatticeError("double-negation image failed to be boolean")
    back = {a: i for i, a in enumerate(reg)}
    project = tuple(back[lattice.neg(lattice.neg(a))] for a in range(lattice.n))
    return Booleanization(sub, image_mask, project, tuple(reg))


# -- the space of points -------------------------------------------------------


def points_space(lattice: FiniteLattice):
    """The completely prime filters as a topological space, with opens the
    images of lattice elements."""
    from .spaces import FiniteSpace  # runtime import; spaces builds on this module

    pts = points(lattice)
    names = [f"x_{lattice.labels[f.generator]}" for f in pts]
    opens = set()
    for a in range(lattice.n):
        m = 0
        for k, f in enumerate(pts):
            if f.members >> a & 1:
                m |= 1 << k
        opens.add(m)
    return FiniteSpace(names, sorted(opens))
