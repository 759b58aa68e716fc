"""Finite topologies from closed bases and dynamic mereotopological spaces.

Point sets are int bitmasks.  Closure is computed against the closed base
directly (a point lies outside the closure of A iff some union of base
members covers A and misses the point), so no closed-set family is needed
for the basic operators; the family is only materialized to enumerate the
regular closed sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .boolean import Filter, atoms_of
from .contact import PrecontactAlgebra, clans
from .dca import (
    DCA,
    clan_structure,
    canonical_time_structure,
    validate_dca,
)
from .errors import CapabilityError, PreconditionError, ValidationError
from .reporting import Check, Report
from .snapshot import (
    DCA_TIME_AXIOMS,
    AxiomView,
    TimeCondition,
    TimeStructure,
    check_time_axiom,
    check_time_condition,
)

_FAMILY_CAP = 200_000


@dataclass(frozen=True)
class FiniteTopSpace:
    """Finite topological space given by a base of closed sets."""

    point_count: int
    closed_base: tuple[int, ...]

    def __post_init__(self):
        for b in self.closed_base:
            if not 0 <= b <= self.universe:
                raise ValidationError(f"base member {b:#x} out of range")

    @property
    def universe(self) -> int:
        return (1 << self.point_count) - 1

    @cached_property
    def _exclusions(self) -> tuple[int, ...]:
        """_exclusions[x]: union of base members avoiding point x."""
        out = []
        for x in range(self.point_count):
            bit = 1 << x
            cover = 0
            for b in self.closed_base:
                if not b & bit:
                    cover |= b
            out.append(cover)
        return tuple(out)

    def closure(self, a: int) -> int:
        out = 0
        for x, cover in enumerate(self._exclusions):
            if a & ~cover:
                out |= 1 << x
        return out

    def interior(self, a: int) -> int:
        return self.universe ^ self.closure(self.universe ^ a)

    def is_closed(self, a: int) -> bool:
        return self.closure(a) == a

    def is_regular_closed(self, a: int) -> bool:
        return self.closure(self.interior(a)) == a

    @cached_property
    def closed_family(self) -> frozenset[int]:
        """All closed sets: base members closed under union and intersection."""
        family = {0, self.universe}
        family.update(self.closed_base)
        frontier = list(family)
        while frontier:
            fresh = []
            for a in frontier:
                for b in list(family):
                    for c in (a | b, a & b):
                        if c not in family:
                            family.add(c)
                            fresh.append(c)
                            if len(family) > _FAMILY_CAP:
                                raise CapabilityError(
                                    "closed-set family too large to enumerate",
                                    missing="small closed family",
                                )
            frontier = fresh
        return frozenset(family)

    @cached_property
    def regular_closed(self) -> tuple[int, ...]:
        """All regular closed sets, ascending by mask."""
        return tuple(sorted({self.closure(self.universe ^ c) for c in self.closed_family}))

    @cached_property
    def _rc_algebra(self) -> "RCAlgebra":
        return RCAlgebra(self)

    def rc_algebra(self) -> "RCAlgebra":
        return self._rc_algebra


class RCAlgebra:
    """Boolean algebra of the regular closed sets of a finite space.

    Join is union, meet is the closure of the interior of the intersection,
    complement is the closure of the set complement.  The laws are verified
    on the concrete carrier at construction.
    """

    def __init__(self, space: FiniteTopSpace):
        self.space = space
        self.carrier = space.regular_closed
        self.index = {a: i for i, a in enumerate(self.carrier)}
        k = len(self.carrier)
        self.zero = 0
        self.one = space.universe
        self.meet_table = [
            [self._compute_meet(a, b) for b in self.carrier] for a in self.carrier
        ]
        self.compl_table = [space.closure(space.universe ^ a) for a in self.carrier]
        self._validate_laws()

    def _compute_meet(self, a: int, b: int) -> int:
        return self.space.closure(self.space.interior(a & b))

    def join(self, a: int, b: int) -> int:
        return a | b

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[self.index[a]][self.index[b]]

    def compl(self, a: int) -> int:
        return self.compl_table[self.index[a]]

    def leq(self, a: int, b: int) -> bool:
        return a & ~b == 0

    def _validate_laws(self) -> None:
        carrier = self.carrier
        index = self.index
        for a in carrier:
            if self.compl(a) not in index:
                raise ValidationError("complement leaves the carrier", witness=(a,))
            for b in carrier:
                if a | b not in index or self.meet(a, b) not in index:
                    raise ValidationError("join or meet leaves the carrier", witness=(a, b))
        for a in carrier:
            if self.join(a, self.compl(a)) != self.one or self.meet(a, self.compl(a)) != self.zero:
                raise ValidationError("complement laws fail", witness=(a,))
            if self.meet(a, a) != a or self.join(a, self.zero) != a or self.meet(a, self.one) != a:
                raise ValidationError("identity laws fail", witness=(a,))
            for b in carrier:
                if self.meet(a, b) != self.meet(b, a):
                    raise ValidationError("meet not commutative", witness=(a, b))
                if self.join(a, self.meet(a, b)) != a or self.meet(a, self.join(a, b)) != a:
                    raise ValidationError("absorption fails", witness=(a, b))
                for c in carrier:
                    if self.meet(a, b | c) != self.meet(a, b) | self.meet(a, c):
                        raise ValidationError("distributivity fails", witness=(a, b, c))


@dataclass(frozen=True)
class DMSpace:
    """Dynamic mereotopological space over a finite point set.

    `regions` is the distinguished subfamily of regular closed sets serving
    as the closed base; `space_points` and `time_points` are point masks.
    """

    space: FiniteTopSpace
    space_points: int
    time_points: int
    prec: frozenset[tuple[int, int]]
    regions: tuple[int, ...]

    def __post_init__(self):
        universe = self.space.universe
        if self.space_points & ~universe or self.time_points & ~universe:
            raise ValidationError("distinguished point sets exceed the space")
        for x, y in self.prec:
            if not (0 <= x < self.space.point_count and 0 <= y < self.space.point_count):
                raise ValidationError(f"before-after pair ({x},{y}) out of range")
        for a in self.regions:
            if a & ~universe:
                raise ValidationError(f"region {a:#x} exceeds the space")

    # Relations of the regular-sets algebra (defined for arbitrary point sets).

    @cached_property
    def _successors(self) -> tuple[int, ...]:
        out = [0] * self.space.point_count
        for x, y in self.prec:
            out[x] |= 1 << y
        return tuple(out)

    def successors_of(self, a: int) -> int:
        out = 0
        succ = self._successors
        for x in atoms_of(a):
            out |= succ[x]
        return out

    def time_contact(self, a: int, b: int) -> bool:
        return bool(a & b)

    def space_contact(self, a: int, b: int) -> bool:
        return bool(a & b & self.space_points)

    def precedes(self, a: int, b: int) -> bool:
        return bool(self.successors_of(a) & b)

    def trace(self, x: int) -> frozenset[int]:
        """The regions containing point x (the point's clan in the dual)."""
        bit = 1 << x
        return frozenset(a for a in self.regions if a & bit)

    def points(self) -> range:
        return range(self.space.point_count)


@dataclass(frozen=True)
class DmsDual:
    """Dual algebra of a space: its region family as a dynamic algebra."""

    source: DMSpace
    dca: DCA
    atoms: tuple[int, ...]

    def pointset(self, mask: int) -> int:
        out = 0
        for i in atoms_of(mask):
            out |= self.atoms[i]
        return out

    @cached_property
    def mask_of_region(self) -> dict[int, int]:
        table = {}
        for mask in self.dca.base.elements():
            table[self.pointset(mask)] = mask
        return table

    def trace_support(self, x: int) -> int:
        """Atom support of the point's clan in the dual algebra."""
        bit = 1 << x
        out = 0
        for i, atom in enumerate(self.atoms):
            if atom & bit:
                out |= 1 << i
        return out


@lru_cache(maxsize=None)
def dual(space: DMSpace) -> DmsDual:
    """Dual dynamic algebra over the distinguished region family."""
    members = set(space.regions)
    nonzero = sorted(m for m in members if m)
    atoms = [m for m in nonzero if not any(s and s != m and s & ~m == 0 for s in nonzero)]
    if (1 << len(atoms)) != len(members):
        raise ValidationError(
            "region family is not a Boolean subalgebra", witness=(len(members), len(atoms))
        )
    space_pairs, time_pairs, prec_pairs = set(), set(), set()
    for i, u in enumerate(atoms):
        for j, v in enumerate(atoms):
            if space.time_contact(u, v):
                time_pairs.add((i, j))
            if space.space_contact(u, v):
                space_pairs.add((i, j))
            if space.precedes(u, v):
                prec_pairs.add((i, j))
    algebra = DCA.from_pairs(len(atoms), space_pairs, time_pairs, prec_pairs)
    out = DmsDual(space, algebra, tuple(atoms))
    for mask in algebra.base.elements():
        if out.pointset(mask) not in members:
            raise ValidationError("region family is not closed under joins", witness=(mask,))
    return out


def rho(space: DMSpace, x: int) -> frozenset[int]:
    if not 0 <= x < space.space.point_count:
        raise ValidationError(f"point {x} out of range")
    return space.trace(x)


def _tclan_supports(d: DCA) -> set[int]:
    return {c.support for c in clans(d.ct_algebra)}


def _sclan_supports(d: DCA) -> set[int]:
    return {c.support for c in clans(d.cs_algebra)}


def _cluster_supports(d: DCA) -> set[int]:
    return {d.time_rel.rows[x] for x in d.base.atoms()}


@lru_cache(maxsize=None)
def validate_dms(candidate: DMSpace) -> Report:
    """Decide the eight space axioms, each with a witness on failure."""
    report = Report(subject="dynamic mereotopological space")
    space = candidate.space
    report.add("S1", space.point_count >= 1)

    regions = candidate.regions
    members = set(regions)
    s2_holds = True
    s2_witness = None
    if len(members) != len(regions):
        s2_holds, s2_witness = False, ("duplicate region",)
    elif 0 not in members or space.universe not in members:
        s2_holds, s2_witness = False, ("missing bounds",)
    else:
        for a in regions:
            if not space.is_regular_closed(a):
                s2_holds, s2_witness = False, (a, "not regular closed")
                break
            if space.closure(space.universe ^ a) not in members:
                s2_holds, s2_witness = False, (a, "complement escapes")
                break
        if s2_holds:
            for a, b in itertools.combinations(regions, 2):
                if a | b not in members:
                    s2_holds, s2_witness = False, (a, b, "join escapes")
                    break
                if space.closure(space.interior(a & b)) not in members:
                    s2_holds, s2_witness = False, (a, b, "meet escapes")
                    break
        if s2_holds:
            # The family must be a closed base: it has to recover every
            # base-closed set of the ambient topology.
            probe = FiniteTopSpace(space.point_count, tuple(sorted(members)))
            for b in space.closed_base:
                if probe.closure(b) != space.closure(b) or not probe.is_closed(space.closure(b)):
                    s2_holds, s2_witness = False, (b, "not a closed base")
                    break
    report.add("S2", s2_holds, s2_witness)

    report.add("S3", candidate.space_points != 0 and candidate.time_points != 0)
    s4_witness = next(
        (
            (a,)
            for a in space.regular_closed
            if a and not a & candidate.space_points
        ),
        None,
    )
    report.add("S4", s4_witness is None, s4_witness)
    report.add("S5", True)  # structural, enforced at construction

    if not s2_holds:
        for name in ("S6", "S7", "S8"):
            report.add(name, False, witness=("not evaluable: S2 fails",))
        return report

    algebra = dual(candidate)
    sub = validate_dca(algebra.dca)
    report.add(
        "S6",
        sub.ok,
        witness=None if sub.ok else (sub.failures()[0].name, sub.failures()[0].witness),
    )

    # S7 via packed tables: for regions indexed i, prec_rows[i] collects the
    # regions it precedes, contain[x] the regions containing point x.
    prec_rows = []
    for a in regions:
        succ = candidate.successors_of(a)
        row = 0
        for j, b in enumerate(regions):
            if succ & b:
                row |= 1 << j
        prec_rows.append(row)
    contain = []
    for x in candidate.points():
        bit = 1 << x
        mask = 0
        for i, a in enumerate(regions):
            if a & bit:
                mask |= 1 << i
        contain.append(mask)
    s7_witness = None
    for x in candidate.points():
        for y in candidate.points():
            required = all(
                prec_rows[i] & contain[y] == contain[y] for i in atoms_of(contain[x])
            )
            if required != ((x, y) in candidate.prec):
                s7_witness = (x, y)
                break
        if s7_witness:
            break
    report.add("S7", s7_witness is None, s7_witness)

    if sub.ok:
        cluster_supports = _cluster_supports(algebra.dca)
        s8_witness = next(
            (
                (x,)
                for x in atoms_of(candidate.time_points)
                if algebra.trace_support(x) not in cluster_supports
            ),
            None,
        )
        report.add("S8", s8_witness is None, s8_witness)
    else:
        report.add("S8", False, witness=("not evaluable: S6 fails",))
    return report


@dataclass(frozen=True)
class Classification:
    is_t0: bool
    is_dm_compact: bool
    unrealized_t_clans: tuple[int, ...]
    unrealized_s_clans: tuple[int, ...]
    unrealized_clusters: tuple[int, ...]
    duplicate_points: tuple[tuple[int, int], ...]


@lru_cache(maxsize=None)
def classify(space: DMSpace) -> Classification:
    """T0 via injectivity of point traces, DM-compactness via their surjectivity."""
    algebra = dual(space)
    d = algebra.dca
    d.require_valid()
    traces = {x: algebra.trace_support(x) for x in space.points()}
    duplicates = tuple(
        (x, y)
        for x, y in itertools.combinations(space.points(), 2)
        if traces[x] == traces[y]
    )
    realized_t = {traces[x] for x in space.points()}
    realized_s = {traces[x] for x in atoms_of(space.space_points)}
    realized_clusters = {traces[x] for x in atoms_of(space.time_points)}
    missing_t = tuple(sorted(_tclan_supports(d) - realized_t))
    missing_s = tuple(sorted(_sclan_supports(d) - realized_s))
    missing_clusters = tuple(sorted(_cluster_supports(d) - realized_clusters))
    return Classification(
        is_t0=not duplicates,
        is_dm_compact=not (missing_t or missing_s or missing_clusters),
        unrealized_t_clans=missing_t,
        unrealized_s_clans=missing_s,
        unrealized_clusters=missing_clusters,
        duplicate_points=duplicates,
    )


def canonical_filter(space: DMSpace, region: int) -> Filter:
    """Filter of distinguished regions containing a regular closed set."""
    if not space.space.is_regular_closed(region):
        raise PreconditionError("canonical filters are defined for regular closed sets", witness=region)
    algebra = dual(space)
    members = frozenset(
        algebra.mask_of_region[a] for a in space.regions if region & ~a == 0
    )
    return Filter(algebra.dca.base, members)


def relation_characterizations(space: DMSpace, a_set: int, b_set: int) -> Report:
    """Canonical-filter equivalences for one pair of regular closed sets.

    The filter-level clauses need DM-compactness; without it only the
    unconditional items are decided.
    """
    report = Report(subject="canonical filter characterizations")
    spc = space.space
    for label, region in (("A", a_set), ("B", b_set)):
        if not spc.is_regular_closed(region):
            raise PreconditionError(f"{label} must be regular closed", witness=region)

    fa = {a for a in space.regions if a_set & ~a == 0}
    fb = {b for b in space.regions if b_set & ~b == 0}
    canonical_filter(space, a_set)  # validates filterhood
    canonical_filter(space, b_set)
    report.add("F_A is a filter", True)

    witness = next(
        (
            (x,)
            for x in space.points()
            if (bool(a_set & (1 << x))) != all(a & (1 << x) for a in fa)
        ),
        None,
    )
    report.add("x in A iff F_A within trace(x)", witness is None, witness)

    proper = a_set != spc.universe
    bounded = any(a != spc.universe and a_set & ~a == 0 for a in space.regions)
    report.add("A proper iff bounded by a proper region", proper == bounded)

    compact = classify(space)
    if not compact.is_dm_compact:
        raise CapabilityError(
            "filter-level characterizations need DM-compactness", missing="DM-compact"
        )

    rel_t = lambda x, y: bool(x & y)
    rel_s = lambda x, y: bool(x & y & space.space_points)
    rel_b = space.precedes

    def filter_related(rel):
        return all(rel(a, b) for a in fa for b in fb)

    t_pointwise = rel_t(a_set, b_set)
    t_filters = filter_related(rel_t)
    t_time = bool(a_set & b_set & space.time_points)
    report.add("time contact: pointwise <=> filters <=> time points", t_pointwise == t_filters == t_time)

    s_pointwise = rel_s(a_set, b_set)
    s_filters = filter_related(rel_s)
    report.add("space contact: pointwise <=> filters", s_pointwise == s_filters)

    b_pointwise = rel_b(a_set, b_set)
    b_filters = filter_related(rel_b)
    b_time = any(
        a_set & (1 << x) and b_set & (1 << y) and space.time_points & (1 << x)
        and space.time_points & (1 << y)
        for x, y in space.prec
    )
    report.add("precedence: pointwise <=> filters <=> time points", b_pointwise == b_filters == b_time)
    return report


def lifting_conditions(space: DMSpace, sub_family, rc: RCAlgebra | None = None) -> list[Check]:
    """Density, co-density and separation of a region family inside RC."""
    rc = rc or space.space.rc_algebra()
    sub = sorted(set(sub_family))
    out = []
    witness = next(
        (
            (a,)
            for a in rc.carrier
            if a and not any(m and m & ~a == 0 for m in sub)
        ),
        None,
    )
    out.append(Check("Dense", witness is None, witness))
    witness = next(
        (
            (a,)
            for a in rc.carrier
            if a != rc.one and not any(m != rc.one and a & ~m == 0 for m in sub)
        ),
        None,
    )
    out.append(Check("Co-dense", witness is None, witness))

    # Packed tables: above[i] holds the sub members bounding carrier[i] from
    # above; rel_rows[j] holds, per sub member j, the sub members it relates to.
    above = []
    for a in rc.carrier:
        mask = 0
        for j, m in enumerate(sub):
            if a & ~m == 0:
                mask |= 1 << j
        above.append(mask)
    index = {a: i for i, a in enumerate(rc.carrier)}
    for name, rel in (
        ("Ct-separation", space.time_contact),
        ("Cs-separation", space.space_contact),
        ("B-separation", space.precedes),
    ):
        rel_rows = []
        for m in sub:
            row = 0
            for j, w in enumerate(sub):
                if rel(m, w):
                    row |= 1 << j
            rel_rows.append(row)
        witness = None
        for a in rc.carrier:
            for b in rc.carrier:
                if rel(a, b):
                    continue
                cover_b = above[index[b]]
                if not any(
                    ~rel_rows[j] & cover_b for j in atoms_of(above[index[a]])
                ):
                    witness = (a, b)
                    break
            if witness:
                break
        out.append(Check(name, witness is None, witness))
    return out


@lru_cache(maxsize=None)
def rc_dca(space: DMSpace) -> tuple[DCA, tuple[int, ...]]:
    """The full regular-sets algebra of a space as a dynamic algebra."""
    rc = space.space.rc_algebra()
    nonzero = [a for a in rc.carrier if a]
    atoms = tuple(
        a for a in nonzero if not any(s and s != a and s & ~a == 0 for s in nonzero)
    )
    if (1 << len(atoms)) != len(rc.carrier):
        raise ValidationError("regular closed family is not atomic as expected")
    space_pairs, time_pairs, prec_pairs = set(), set(), set()
    for i, u in enumerate(atoms):
        for j, v in enumerate(atoms):
            if space.time_contact(u, v):
                time_pairs.add((i, j))
            if space.space_contact(u, v):
                space_pairs.add((i, j))
            if space.precedes(u, v):
                prec_pairs.add((i, j))
    return DCA.from_pairs(len(atoms), space_pairs, time_pairs, prec_pairs), atoms


def rc_axiom_view(space: DMSpace) -> AxiomView:
    rc = space.space.rc_algebra()
    return AxiomView(
        rc.carrier,
        star=rc.compl,
        is_nonzero=lambda a: a != 0,
        time_contact=space.time_contact,
        precedes=space.precedes,
    )


def stability_check(space: DMSpace) -> Report:
    """Stability of the distinguished subalgebra inside the full RC algebra.

    Verifies the lifting conditions, that RC is itself a dynamic algebra,
    and the axiom-by-axiom lifting equivalence between the two.
    """
    compact = classify(space)
    if not compact.is_dm_compact:
        raise CapabilityError("stability analysis needs DM-compactness", missing="DM-compact")
    report = Report(subject="stable subalgebra")
    rc = space.space.rc_algebra()
    report.extend(lifting_conditions(space, space.regions, rc))

    full, _ = rc_dca(space)
    full_report = validate_dca(full)
    report.add(
        "RC(S) is a DCA",
        full_report.ok,
        witness=None if full_report.ok else (full_report.failures()[0].name,),
    )

    sub = dual(space)
    sub_report = sub.dca.report
    for name in ("Cs<=Ct", "CtE", "CtB", "BCt"):
        report.add(
            f"lifting {name}",
            sub_report[name].holds == full_report[name].holds,
        )
    sub_view = sub.dca.axiom_view()
    full_view = rc_axiom_view(space)
    for cond in DCA_TIME_AXIOMS:
        report.add(
            f"lifting {cond.region_axiom}",
            check_time_axiom(sub_view, cond).holds == check_time_axiom(full_view, cond).holds,
        )
    return report


@dataclass(frozen=True)
class DualSpaceResult:
    """Canonical space of a dynamic algebra, with its clan bookkeeping."""

    source: DCA
    space: DMSpace
    points: tuple[int, ...]

    def extent(self, a: int) -> int:
        """Point mask of the t-clans containing the element."""
        self.source.base.check(a)
        out = 0
        for i, support in enumerate(self.points):
            if support & a:
                out |= 1 << i
        return out

    def point_of(self, support: int) -> int:
        return self.points.index(support)


@lru_cache(maxsize=None)
def dual_space(d: DCA) -> DualSpaceResult:
    """Canonical dynamic mereotopological space of a valid dynamic algebra."""
    d.require_valid()
    structure = clan_structure(d)
    points = structure.t_clans
    index = {support: i for i, support in enumerate(points)}
    result_regions = tuple(sorted({_extent_mask(points, a) for a in d.base.elements()}))
    xs_mask = 0
    for support in structure.s_clans:
        xs_mask |= 1 << index[support]
    t_mask = 0
    for support in structure.clusters:
        t_mask |= 1 << index[support]
    prec_points = frozenset(
        (index[left], index[right]) for left, right in structure.prec
    )
    topo = FiniteTopSpace(len(points), result_regions)
    space = DMSpace(topo, xs_mask, t_mask, prec_points, result_regions)
    return DualSpaceResult(d, space, points)


def _extent_mask(points, a: int) -> int:
    out = 0
    for i, support in enumerate(points):
        if support & a:
            out |= 1 << i
    return out


def contact_clan_space(algebra: PrecontactAlgebra):
    """Clan space of a static contact algebra with its element extents.

    Returns the topological space whose points are the clans, plus the map
    sending an element to the mask of clans containing it.
    """
    supports = tuple(c.support for c in clans(algebra))
    base = tuple(sorted({_extent_mask(supports, a) for a in algebra.base.elements()}))
    space = FiniteTopSpace(len(supports), base)
    return space, supports, lambda a: _extent_mask(supports, a)


def verify_representation_topo(d: DCA) -> Report:
    """Topological representation of a dynamic algebra through its dual space."""
    d.require_valid()
    result = dual_space(d)
    space = result.space
    report = Report(subject="topological representation")

    dms_report = validate_dms(space)
    report.add(
        "dual space satisfies S1-S8",
        dms_report.ok,
        witness=None if dms_report.ok else (dms_report.failures()[0].name,),
    )
    shape = classify(space)
    report.add("dual space is T0", shape.is_t0, tuple(shape.duplicate_points) or None)
    report.add(
        "dual space is DM-compact",
        shape.is_dm_compact,
        (shape.unrealized_t_clans + shape.unrealized_s_clans + shape.unrealized_clusters)
        or None,
    )

    algebra = dual(space)
    image = {a: algebra.mask_of_region.get(result.extent(a)) for a in d.base.elements()}
    report.add("extents land in the dual algebra", all(v is not None for v in image.values()))
    if all(v is not None for v in image.values()):
        injective = len(set(image.values())) == d.base.size
        onto = set(image.values()) == set(algebra.dca.base.elements())
        witness = next(
            (
                (a, b)
                for a in d.base.elements()
                for b in d.base.elements()
                if image[a | b] != image[a] | image[b]
                or image[d.base.one ^ a] != algebra.dca.base.one ^ image[a]
            ),
            None,
        )
        hom = witness is None
        relations_ok = all(
            d.space_contact(a, b) == algebra.dca.space_contact(image[a], image[b])
            and d.time_contact(a, b) == algebra.dca.time_contact(image[a], image[b])
            and d.precedes(a, b) == algebra.dca.precedes(image[a], image[b])
            for a in d.base.elements()
            for b in d.base.elements()
        )
        report.add("extent map is a Boolean isomorphism", injective and onto and hom, witness)
        report.add("extent map preserves and reflects the relations", relations_ok)

    stability = stability_check(space)
    report.add(
        "dual subalgebra is stable in RC",
        stability.ok,
        witness=None if stability.ok else (stability.failures()[0].name,),
    )

    full, _ = rc_dca(space)
    report.add("RC of the dual space is a DCA", full.is_valid)
    d_view = d.axiom_view()
    full_view = rc_axiom_view(space)
    for cond in DCA_TIME_AXIOMS:
        report.add(
            f"time axiom {cond.region_axiom} matches RC",
            check_time_axiom(d_view, cond).holds == check_time_axiom(full_view, cond).holds,
        )
    return report


def topological_definability(space: DMSpace, cond: TimeCondition) -> dict:
    """One time condition on the time structure versus its axiom in RC."""
    if cond is TimeCondition.IRR:
        raise PreconditionError("irreflexivity has no definability row")
    compact = classify(space)
    if not compact.is_dm_compact:
        raise CapabilityError("topological definability needs DM-compactness", missing="DM-compact")
    warning = None
    if cond is TimeCondition.TRI and not compact.is_t0:
        warning = "trichotomy transfer is only guaranteed on T0 spaces"
    time_points = list(atoms_of(space.time_points))
    index = {x: i for i, x in enumerate(time_points)}
    ts = TimeStructure.of(
        len(time_points),
        {
            (index[x], index[y])
            for x, y in space.prec
            if x in index and y in index
        },
    )
    on_structure = check_time_condition(ts, cond).holds
    on_rc = check_time_axiom(rc_axiom_view(space), cond).holds
    return {
        "on_time_structure": on_structure,
        "on_rc_axiom": on_rc,
        "agree": on_structure == on_rc,
        "warning": warning,
    }


def density_check(space: DMSpace) -> Report:
    """Space points are dense, and closure maps RC of the subspace isomorphically."""
    compact = classify(space)
    if not compact.is_dm_compact:
        raise CapabilityError("density analysis needs DM-compactness", missing="DM-compact")
    report = Report(subject="space-point density")
    spc = space.space
    report.add(
        "closure of space points is everything",
        spc.closure(space.space_points) == spc.universe,
    )

    inside = list(atoms_of(space.space_points))
    to_sub = {x: i for i, x in enumerate(inside)}

    def restrict(a: int) -> int:
        out = 0
        for x in inside:
            if a & (1 << x):
                out |= 1 << to_sub[x]
        return out

    def embed(a_sub: int) -> int:
        out = 0
        for x, i in to_sub.items():
            if a_sub & (1 << i):
                out |= 1 << x
        return out

    sub_space = FiniteTopSpace(
        len(inside), tuple(sorted({restrict(b) for b in spc.closed_base}))
    )
    sub_rc = sub_space.regular_closed
    full_rc = spc.regular_closed
    lifted = {a: spc.closure(embed(a)) for a in sub_rc}
    report.add(
        "closure maps subspace RC into RC",
        all(v in set(full_rc) for v in lifted.values()),
    )
    report.add(
        "closure map is a bijection",
        len(set(lifted.values())) == len(sub_rc) == len(full_rc),
    )
    round_trip = all(restrict(lifted[a]) == a for a in sub_rc)
    back = all(lifted.get(restrict(b)) == b for b in full_rc)
    report.add("restriction inverts closure", round_trip and back)
    sub_alg = sub_space.rc_algebra()
    full_alg = spc.rc_algebra()
    hom = all(
        lifted[sub_alg.join(a, b)] == full_alg.join(lifted[a], lifted[b])
        and lifted[sub_alg.compl(a)] == full_alg.compl(lifted[a])
        for a in sub_rc
        for b in sub_rc
    )
    report.add("closure map is a Boolean homomorphism", hom)
    return report


def is_trivial_dms(space: DMSpace) -> bool:
    """A single time point related to itself by before-after."""
    t = space.time_points
    if t == 0 or t & (t - 1):
        return False
    x = next(atoms_of(t))
    return (x, x) in space.prec
