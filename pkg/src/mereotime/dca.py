"""Abstract dynamic contact algebras and their snapshot representation.

A dynamic contact algebra carries a space contact, a time contact and a
local precedence relation over one finite Boolean algebra.  Relations are
stored in validated atom normal form; element-level relations are
reconstructed on demand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .boolean import FiniteBA, atoms_of
from .contact import (
    CONTACT_AXIOMS,
    PRECONTACT_AXIOMS,
    Clan,
    FactorAlgebra,
    PrecontactAlgebra,
    Relation,
    clans,
    element_rows,
    factor_by_clanset,
    interpolation_check,
    relation_axiom_checks,
)
from .errors import PreconditionError, ValidationError
from .reporting import Check, Report
from .snapshot import (
    DCA_TIME_AXIOMS,
    DMST,
    AxiomView,
    TimeCondition,
    TimeStructure,
    build_dmst,
    check_time_axiom,
    check_time_condition,
)


@dataclass(frozen=True)
class DCA:
    """Dynamic contact algebra in atom normal form."""

    base: FiniteBA
    space_rel: Relation
    time_rel: Relation
    prec_rel: Relation

    def __post_init__(self):
        n = self.base.atom_count
        for rel in (self.space_rel, self.time_rel, self.prec_rel):
            if rel.size != n:
                raise ValidationError("relation size does not match the atom count")

    @classmethod
    def from_pairs(cls, atom_count: int, space, time, prec) -> "DCA":
        base = FiniteBA(atom_count)
        return cls(
            base,
            Relation.of(atom_count, space),
            Relation.of(atom_count, time),
            Relation.of(atom_count, prec),
        )

    # Element-level relations (atom-generated).

    def space_contact(self, a: int, b: int) -> bool:
        return bool(self.space_rel.forward_image(self.base.check(a)) & self.base.check(b))

    def time_contact(self, a: int, b: int) -> bool:
        return bool(self.time_rel.forward_image(self.base.check(a)) & self.base.check(b))

    def precedes(self, a: int, b: int) -> bool:
        return bool(self.prec_rel.forward_image(self.base.check(a)) & self.base.check(b))

    @cached_property
    def cs_algebra(self) -> PrecontactAlgebra:
        return PrecontactAlgebra(self.base, self.space_rel)

    @cached_property
    def ct_algebra(self) -> PrecontactAlgebra:
        return PrecontactAlgebra(self.base, self.time_rel)

    @cached_property
    def b_algebra(self) -> PrecontactAlgebra:
        return PrecontactAlgebra(self.base, self.prec_rel)

    @cached_property
    def report(self) -> Report:
        return validate_dca(self)

    @property
    def is_valid(self) -> bool:
        return self.report.ok

    def require_valid(self) -> None:
        self.report.require()

    def axiom_view(self) -> AxiomView:
        one = self.base.one
        return AxiomView(
            list(self.base.elements()),
            star=lambda a: one ^ a,
            is_nonzero=lambda a: a != 0,
            time_contact=self.time_contact,
            precedes=self.precedes,
        )

    @cached_property
    def _members_cache(self) -> dict[int, int]:
        return {}

    def elements_meeting(self, atom_mask: int) -> int:
        """Bitmask over elements that intersect `atom_mask`."""
        cached = self._members_cache.get(atom_mask)
        if cached is None:
            cached = 0
            for a in self.base.elements():
                if a & atom_mask:
                    cached |= 1 << a
            self._members_cache[atom_mask] = cached
        return cached

    @cached_property
    def prec_element_rows(self) -> list[int]:
        """prec_element_rows[a] has bit b set iff a precedes b."""
        return [self.elements_meeting(self.prec_rel.forward_image(a)) for a in self.base.elements()]


@lru_cache(maxsize=None)
def validate_dca(d: DCA) -> Report:
    """Exhaustive decision of every defining axiom plus the derived atom facts."""
    report = Report(subject="dynamic contact algebra")
    base = d.base
    cs_rows = element_rows(base, d.space_contact)
    ct_rows = element_rows(base, d.time_contact)
    b_rows = element_rows(base, d.precedes)

    for check in relation_axiom_checks(base, d.space_contact, names=CONTACT_AXIOMS, rows=cs_rows):
        report.add(f"Cs:{check.name}", check.holds, check.witness)
    for check in relation_axiom_checks(base, d.time_contact, names=CONTACT_AXIOMS, rows=ct_rows):
        report.add(f"Ct:{check.name}", check.holds, check.witness)

    inclusion = None
    for a in base.elements():
        stray = cs_rows[a] & ~ct_rows[a]
        if stray:
            inclusion = (a, next(atoms_of(stray)))
            break
    report.add("Cs<=Ct", inclusion is None, inclusion)

    cte = interpolation_check(
        base, "CtE", d.time_contact, d.time_contact, d.time_contact,
        rows=(ct_rows, ct_rows, ct_rows),
    )
    report.add("CtE", cte.holds, cte.witness)

    for check in relation_axiom_checks(base, d.precedes, names=PRECONTACT_AXIOMS, rows=b_rows):
        report.add(f"B:{check.name}", check.holds, check.witness)
    ctb = interpolation_check(
        base, "CtB", d.precedes, d.time_contact, d.precedes,
        rows=(b_rows, ct_rows, b_rows),
    )
    bct = interpolation_check(
        base, "BCt", d.precedes, d.precedes, d.time_contact,
        rows=(b_rows, b_rows, ct_rows),
    )
    report.add("CtB", ctb.holds, ctb.witness)
    report.add("BCt", bct.holds, bct.witness)

    rt, pr, rs = d.time_rel, d.prec_rel, d.space_rel
    fact1 = rt.is_equivalence()
    report.add("fact1:Rt equivalence", fact1)
    fact2 = rt.compose(pr).subset_of(pr)
    report.add("fact2:Rt.prec<=prec", fact2)
    fact3 = pr.compose(rt).subset_of(pr)
    report.add("fact3:prec.Rt<=prec", fact3)
    fact4 = rt.compose(pr).compose(rt).subset_of(pr)
    report.add("fact4:Rt.prec.Rt<=prec", fact4)
    fact5 = rs.subset_of(rt)
    report.add("fact5:Rs<=Rt", fact5)

    # Cross-checks: the atom facts must match the element-level axioms.
    report.add(
        "fact1 matches Ct axioms",
        fact1 == (report["Ct:C4"].holds and report["Ct:C5"].holds and cte.holds),
    )
    report.add("fact2 matches CtB", fact2 == ctb.holds)
    report.add("fact3 matches BCt", fact3 == bct.holds)
    report.add("fact5 matches Cs<=Ct", fact5 == report["Cs<=Ct"].holds)
    return report


def from_contact_algebra(ca: PrecontactAlgebra) -> DCA:
    """Trivial dynamic algebra of a contact algebra.

    Space contact is the given contact, time contact relates all nonzero
    pairs, and precedence coincides with time contact.
    """
    failing = [c for c in ca.axiom_report.checks if c.name in CONTACT_AXIOMS and not c.holds]
    if failing:
        raise PreconditionError(
            f"not a contact algebra: {failing[0].name} fails", witness=failing[0].witness
        )
    n = ca.base.atom_count
    total = Relation.total(n)
    return DCA(ca.base, ca.relation, total, total)


@dataclass(frozen=True)
class ClanStructure:
    """Clan inventory of a dynamic algebra, all named by atom supports."""

    s_clans: tuple[int, ...]
    t_clans: tuple[int, ...]
    clusters: tuple[int, ...]
    gamma: dict[int, int]
    prec: frozenset[tuple[int, int]]

    def cluster_index(self, support: int) -> int:
        return self.clusters.index(support)


def _clique_supports(algebra: PrecontactAlgebra) -> tuple[int, ...]:
    return tuple(c.support for c in clans(algebra))


@lru_cache(maxsize=None)
def clan_structure(d: DCA) -> ClanStructure:
    """Enumerate s-clans, t-clans and clusters with gamma and clan precedence.

    Clan precedence is computed from its element-level definition and
    cross-checked against the ultrafilter characterization.
    """
    d.require_valid()
    s_clans = _clique_supports(d.cs_algebra)
    t_clans = _clique_supports(d.ct_algebra)
    classes = sorted({d.time_rel.rows[x] for x in d.base.atoms()}, key=lambda m: next(atoms_of(m)))
    gamma = {}
    for support in t_clans:
        lowest = next(atoms_of(support))
        enclosing = d.time_rel.rows[lowest]
        if support & ~enclosing:
            raise ValidationError("t-clan escapes its time equivalence class", witness=(support,))
        gamma[support] = enclosing

    prec_pairs = set()
    rows = d.prec_element_rows
    for left in t_clans:
        left_members = d.elements_meeting(left)
        for right in t_clans:
            right_members = d.elements_meeting(right)
            literal = all(
                rows[a] & right_members == right_members for a in atoms_of(left_members)
            )
            atomwise = all(
                d.prec_rel.rows[x] & right == right for x in atoms_of(left)
            )
            if literal != atomwise:
                raise ValidationError(
                    "clan precedence disagrees with its ultrafilter form",
                    witness=(left, right),
                )
            if literal:
                prec_pairs.add((left, right))
    return ClanStructure(s_clans, t_clans, tuple(classes), gamma, frozenset(prec_pairs))


def extension_of_prec_checks(d: DCA, structure: ClanStructure | None = None) -> list[Check]:
    """Three-way equivalence for clan precedence on every t-clan pair.

    the element-level definition, all ultrafilter pairs related, and some
    ultrafilter pair related.
    """
    structure = structure or clan_structure(d)
    rows = d.prec_element_rows
    out = []
    for left, right in itertools.product(structure.t_clans, repeat=2):
        left_members = d.elements_meeting(left)
        right_members = d.elements_meeting(right)
        literal = all(rows[a] & right_members == right_members for a in atoms_of(left_members))
        all_ults = all(d.prec_rel.rows[x] & right == right for x in atoms_of(left))
        some_ults = any(d.prec_rel.rows[x] & right for x in atoms_of(left))
        out.append(
            Check(
                f"prec extension {left:#x}->{right:#x}",
                literal == all_ults == some_ults,
                witness=None if literal == all_ults == some_ults else (left, right),
            )
        )
    return out


def g_maps(d: DCA, a: int, structure: ClanStructure | None = None) -> dict[str, tuple[int, ...]]:
    """Clan extents of one element: t-clans, s-clans and clusters containing it."""
    d.base.check(a)
    structure = structure or clan_structure(d)
    return {
        "g": tuple(s for s in structure.t_clans if s & a),
        "gs": tuple(s for s in structure.s_clans if s & a),
        "gclust": tuple(s for s in structure.clusters if s & a),
    }


@dataclass(frozen=True)
class CanonicalTime:
    structure: TimeStructure
    clusters: tuple[int, ...]


def canonical_time_structure(d: DCA, structure: ClanStructure | None = None) -> CanonicalTime:
    """Clusters as moments, clan precedence restricted to them."""
    d.require_valid()
    structure = structure or clan_structure(d)
    clusters = structure.clusters
    index = {support: i for i, support in enumerate(clusters)}
    prec = {
        (index[left], index[right])
        for (left, right) in structure.prec
        if left in index and right in index
    }
    return CanonicalTime(TimeStructure.of(len(clusters), prec), clusters)


def _tri_with_relation(size: int, prec: Relation, same: Relation) -> bool:
    for x, y in itertools.product(range(size), repeat=2):
        if (x, y) not in same.pairs and (x, y) not in prec.pairs and (y, x) not in prec.pairs:
            return False
    return True


@dataclass(frozen=True)
class Correspondence2Row:
    condition: TimeCondition
    on_ultrafilters: bool
    on_clusters: bool
    on_regions: bool

    @property
    def agree(self) -> bool:
        return self.on_ultrafilters == self.on_clusters == self.on_regions


def correspondence2(d: DCA) -> list[Correspondence2Row]:
    """Three formulations of each time axiom, which must agree on valid DCAs.

    Irreflexivity is omitted: only the one-directional check is available
    for it (see `irr_one_directional`).
    """
    d.require_valid()
    structure = clan_structure(d)
    canonical = canonical_time_structure(d, structure)
    ult_structure = TimeStructure(d.base.atom_count, d.prec_rel.pairs)
    view = d.axiom_view()
    rows = []
    for cond in DCA_TIME_AXIOMS:
        if cond is TimeCondition.TRI:
            on_ult = _tri_with_relation(d.base.atom_count, d.prec_rel, d.time_rel)
        else:
            on_ult = check_time_condition(ult_structure, cond).holds
        on_clust = check_time_condition(canonical.structure, cond).holds
        on_regions = check_time_axiom(view, cond).holds
        rows.append(Correspondence2Row(cond, on_ult, on_clust, on_regions))
    return rows


def irr_one_directional(d: DCA) -> dict[str, bool]:
    """Irreflexivity of the ultrafilter precedence versus the (irr) axiom.

    Only the forward implication is a theorem; the converse is recorded
    without being asserted.
    """
    d.require_valid()
    ult_irr = all((x, x) not in d.prec_rel.pairs for x in d.base.atoms())
    region_irr = check_time_axiom(d.axiom_view(), TimeCondition.IRR).holds
    return {
        "ultrafilter_irr": ult_irr,
        "region_irr": region_irr,
        "forward_holds": (not ult_irr) or region_irr,
        "converse_gap": region_irr and not ult_irr,
    }


def coordinate_algebra(d: DCA, cluster_support: int, structure: ClanStructure | None = None) -> FactorAlgebra:
    """Factor of the space contact by the s-clans inside one cluster."""
    d.require_valid()
    structure = structure or clan_structure(d)
    if cluster_support not in structure.clusters:
        raise PreconditionError(
            "coordinate algebras exist only at clusters", witness=cluster_support
        )
    inside = [
        Clan(d.base, support)
        for support in structure.s_clans
        if support & ~cluster_support == 0
    ]
    return factor_by_clanset(d.cs_algebra, inside)


@dataclass(frozen=True)
class CanonicalModel:
    """Full snapshot model extracted from a dynamic algebra."""

    source: DCA
    time: CanonicalTime
    factors: tuple[FactorAlgebra, ...]
    model: DMST

    def embed(self, a: int):
        """Coordinate-wise quotient image of an element in the model."""
        return tuple(f.project(a) for f in self.factors)


def canonical_standard_dca(d: DCA) -> CanonicalModel:
    """Full snapshot model over the canonical time structure."""
    d.require_valid()
    structure = clan_structure(d)
    canonical = canonical_time_structure(d, structure)
    factors = tuple(coordinate_algebra(d, support, structure) for support in canonical.clusters)
    model = build_dmst(canonical.structure, [f.algebra for f in factors], mode="full")
    return CanonicalModel(d, canonical, factors, model)


def region_algebra_atoms(model: DMST) -> list:
    """Atoms of the region Boolean algebra: its minimal nonzero members."""
    regions = model.regions

    def leq(a, b):
        return all(x & ~y == 0 for x, y in zip(a, b))

    atoms = []
    for r in regions:
        if not model.is_nonzero(r):
            continue
        if any(model.is_nonzero(s) and s != r and leq(s, r) for s in regions):
            continue
        atoms.append(r)
    return sorted(atoms)


def standard_dca(model: DMST) -> DCA:
    """Dynamic algebra induced on a snapshot model's regions.

    The region algebra is transported onto the powerset algebra over its
    atoms; the three relations are evaluated on atom pairs.  Validation is
    reported, not enforced: non-rich models may fail the interpolation
    axioms.
    """
    atoms = region_algebra_atoms(model)
    count = len(atoms)
    if (1 << count) != len(model.regions):
        raise ValidationError(
            "region universe is not a Boolean subalgebra", witness=(len(model.regions), count)
        )
    space, time, prec = set(), set(), set()
    for i, u in enumerate(atoms):
        for j, v in enumerate(atoms):
            if model.space_contact(u, v):
                space.add((i, j))
            if model.time_contact(u, v):
                time.add((i, j))
            if model.precedes(u, v):
                prec.add((i, j))
    return DCA.from_pairs(count, space, time, prec)


def region_to_mask(model: DMST, atoms: list, region) -> int:
    """Element mask of a region w.r.t. the given region-algebra atoms."""
    model.region_index(region)
    out = 0
    for i, u in enumerate(atoms):
        if all(x & ~y == 0 for x, y in zip(u, region)):
            out |= 1 << i
    return out


def verify_embedding(d: DCA) -> Report:
    """Check that the canonical snapshot model represents the algebra.

    Covers the Boolean homomorphism laws, injectivity, preservation and
    reflection of all three relations, and the ten time-axiom equivalences
    between the algebra and its canonical model.
    """
    d.require_valid()
    canonical = canonical_standard_dca(d)
    model = canonical.model
    base = d.base
    h = {a: canonical.embed(a) for a in base.elements()}

    report = Report(subject="snapshot representation")
    report.add("h(0)=0", h[0] == model.zero)
    report.add("h(1)=1", h[base.one] == model.one)

    witness = next(
        (
            (a, b)
            for a in base.elements()
            for b in base.elements()
            if h[a | b] != model.join(h[a], h[b]) or h[a & b] != model.meet(h[a], h[b])
        ),
        None,
    )
    report.add("h preserves join and meet", witness is None, witness)
    witness = next((a for a in base.elements() if h[base.one ^ a] != model.compl(h[a])), None)
    report.add("h preserves complement", witness is None, (witness,) if witness is not None else None)
    witness = next(
        (
            (a, b)
            for a in base.elements()
            for b in base.elements()
            if a != b and h[a] == h[b]
        ),
        None,
    )
    report.add("h injective", witness is None, witness)

    def three_way(name, left_rel, middle, right_rel):
        bad = next(
            (
                (a, b)
                for a in base.elements()
                for b in base.elements()
                if not (left_rel(a, b) == middle(a, b) == right_rel(h[a], h[b]))
            ),
            None,
        )
        report.add(name, bad is None, bad)

    factors = canonical.factors

    def middle_cs(a, b):
        return any(
            f.algebra.related(f.project(a), f.project(b)) for f in factors
        )

    def middle_ct(a, b):
        return any(f.project(a) != 0 and f.project(b) != 0 for f in factors)

    def middle_b(a, b):
        return any(
            factors[i].project(a) != 0 and factors[j].project(b) != 0
            for (i, j) in canonical.time.structure.prec
        )

    three_way("Cs respected", d.space_contact, middle_cs, model.space_contact)
    three_way("Ct respected", d.time_contact, middle_ct, model.time_contact)
    three_way("B respected", d.precedes, middle_b, model.precedes)

    witness = next(
        (
            (a, b)
            for a in base.elements()
            for b in base.elements()
            if base.leq(a, b) != all(x & ~y == 0 for x, y in zip(h[a], h[b]))
        ),
        None,
    )
    report.add("order respected", witness is None, witness)

    d_view = d.axiom_view()
    m_view = model.axiom_view()
    for cond in DCA_TIME_AXIOMS:
        in_d = check_time_axiom(d_view, cond).holds
        in_model = check_time_axiom(m_view, cond).holds
        report.add(f"time axiom {cond.region_axiom} preserved", in_d == in_model)
    return report


def is_trivial(d: DCA) -> bool:
    """Nonzero pairs are always in time contact and always in precedence."""
    d.require_valid()
    for a in d.base.nonzero_elements():
        for b in d.base.nonzero_elements():
            if not d.time_contact(a, b) or not d.precedes(a, b):
                return False
    return True
