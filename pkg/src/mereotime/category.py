"""Morphisms of dynamic algebras and spaces, functors and duality checks.

Morphisms are explicit finite tables: element images for algebra morphisms,
point images for space morphisms.  The two functors act by preimage; the
naturality equations and functor laws are verified pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boolean import atoms_of
from .dca import DCA, is_trivial
from .dms import (
    DMSpace,
    DmsDual,
    DualSpaceResult,
    classify,
    dual,
    dual_space,
    is_trivial_dms,
)
from .errors import CapabilityError, CompositionError, ValidationError
from .reporting import Report
from .snapshot import (
    DCA_TIME_AXIOMS,
    TimeStructure,
    check_time_axiom,
    check_time_condition,
)


@dataclass(frozen=True)
class DcaMorphism:
    """Element table of a structure map between dynamic algebras."""

    dom: DCA
    cod: DCA
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.dom.base.size:
            raise ValidationError("morphism table must cover every element")
        for image in self.table:
            self.cod.base.check(image)

    def __call__(self, a: int) -> int:
        return self.table[self.dom.base.check(a)]

    @classmethod
    def identity(cls, d: DCA) -> "DcaMorphism":
        return cls(d, d, tuple(d.base.elements()))


@dataclass(frozen=True)
class DmsMorphism:
    """Point table of a structure map between spaces."""

    dom: DMSpace
    cod: DMSpace
    point_map: tuple[int, ...]

    def __post_init__(self):
        if len(self.point_map) != self.dom.space.point_count:
            raise ValidationError("morphism must map every point")
        for image in self.point_map:
            if not 0 <= image < self.cod.space.point_count:
                raise ValidationError(f"point image {image} out of range")

    def __call__(self, x: int) -> int:
        return self.point_map[x]

    @classmethod
    def identity(cls, s: DMSpace) -> "DmsMorphism":
        return cls(s, s, tuple(s.points()))

    def preimage(self, region: int) -> int:
        out = 0
        for x, y in enumerate(self.point_map):
            if region & (1 << y):
                out |= 1 << x
        return out


def validate_dca_morphism(f: DcaMorphism) -> Report:
    """Boolean homomorphism reflecting all three relations."""
    report = Report(subject="DCA morphism")
    dom, cod = f.dom, f.cod
    witness = next(
        (
            (a, b)
            for a in dom.base.elements()
            for b in dom.base.elements()
            if f(a | b) != f(a) | f(b)
        ),
        None,
    )
    hom = witness is None and all(
        f(dom.base.one ^ a) == cod.base.one ^ f(a) for a in dom.base.elements()
    )
    report.add("f1:Boolean homomorphism", hom, witness)
    for name, dom_rel, cod_rel in (
        ("f2:reflects Cs", dom.space_contact, cod.space_contact),
        ("f3:reflects Ct", dom.time_contact, cod.time_contact),
        ("f4:reflects B", dom.precedes, cod.precedes),
    ):
        witness = next(
            (
                (a, b)
                for a in dom.base.elements()
                for b in dom.base.elements()
                if cod_rel(f(a), f(b)) and not dom_rel(a, b)
            ),
            None,
        )
        report.add(name, witness is None, witness)
    return report


def validate_dms_morphism(theta: DmsMorphism) -> Report:
    """Space-point and order preservation plus a preimage homomorphism."""
    report = Report(subject="DMS morphism")
    dom, cod = theta.dom, theta.cod
    witness = next(
        (
            (x,)
            for x in atoms_of(dom.space_points)
            if not cod.space_points & (1 << theta(x))
        ),
        None,
    )
    report.add("t1:preserves space points", witness is None, witness)
    witness = next(
        (
            (x, y)
            for x, y in dom.prec
            if (theta(x), theta(y)) not in cod.prec
        ),
        None,
    )
    report.add("t2:preserves before-after", witness is None, witness)
    dom_regions = set(dom.regions)
    witness = next(
        ((a,) for a in cod.regions if theta.preimage(a) not in dom_regions), None
    )
    report.add("t3:preimages stay in the algebra", witness is None, witness)
    if witness is None:
        # Preimage preserves unions set-theoretically, so complement
        # preservation suffices for a Boolean homomorphism.
        witness = next(
            (
                (a,)
                for a in cod.regions
                if theta.preimage(cod.space.closure(cod.space.universe ^ a))
                != dom.space.closure(dom.space.universe ^ theta.preimage(a))
            ),
            None,
        )
        report.add("t4:preimage preserves complement", witness is None, witness)
    else:
        report.add("t4:preimage preserves complement", False, witness=("not evaluable",))
    return report


def compose(first, second):
    """Apply `first`, then `second`; defined for both morphism kinds."""
    if isinstance(first, DcaMorphism) and isinstance(second, DcaMorphism):
        if first.cod != second.dom:
            raise CompositionError("codomain of the first map must be the second's domain")
        return DcaMorphism(
            first.dom, second.cod, tuple(second(first(a)) for a in first.dom.base.elements())
        )
    if isinstance(first, DmsMorphism) and isinstance(second, DmsMorphism):
        if first.cod != second.dom:
            raise CompositionError("codomain of the first map must be the second's domain")
        return DmsMorphism(
            first.dom, second.cod, tuple(second(first(x)) for x in first.dom.points())
        )
    raise CompositionError("cannot compose morphisms of different kinds")


def lower(
    f: DcaMorphism,
    dual_dom: DualSpaceResult | None = None,
    dual_cod: DualSpaceResult | None = None,
) -> DmsMorphism:
    """Contravariant image of an algebra morphism: preimage on t-clans.

    For f from A to A' this is a space morphism from the dual of A' to the
    dual of A.
    """
    validate_dca_morphism(f).require()
    dual_dom = dual_dom or dual_space(f.dom)
    dual_cod = dual_cod or dual_space(f.cod)
    point_map = []
    for support in dual_cod.points:
        preimage_support = 0
        for x in f.dom.base.atoms():
            if f(1 << x) & support:
                preimage_support |= 1 << x
        point_map.append(dual_dom.point_of(preimage_support))
    return DmsMorphism(dual_cod.space, dual_dom.space, tuple(point_map))


def raise_(
    theta: DmsMorphism,
    dual_dom: DmsDual | None = None,
    dual_cod: DmsDual | None = None,
) -> DcaMorphism:
    """Contravariant image of a space morphism: preimage on regions.

    For theta from S to S' this is an algebra morphism from the dual of S'
    to the dual of S.
    """
    validate_dms_morphism(theta).require()
    dual_dom = dual_dom or dual(theta.dom)
    dual_cod = dual_cod or dual(theta.cod)
    table = []
    for mask in dual_cod.dca.base.elements():
        region = dual_cod.pointset(mask)
        table.append(dual_dom.mask_of_region[theta.preimage(region)])
    return DcaMorphism(dual_cod.dca, dual_dom.dca, tuple(table))


def extent_isomorphism(d: DCA, result: DualSpaceResult | None = None) -> DcaMorphism:
    """The canonical map of an algebra onto the dual of its dual space."""
    result = result or dual_space(d)
    algebra = dual(result.space)
    table = tuple(
        algebra.mask_of_region[result.extent(a)] for a in d.base.elements()
    )
    return DcaMorphism(d, algebra.dca, table)


def trace_morphism(space: DMSpace) -> DmsMorphism:
    """The canonical map of a space into the dual space of its dual algebra."""
    algebra = dual(space)
    result = dual_space(algebra.dca)
    point_map = tuple(
        result.point_of(algebra.trace_support(x)) for x in space.points()
    )
    return DmsMorphism(space, result.space, point_map)


def naturality(morphism) -> Report:
    """Pointwise naturality of the double-dual comparison maps."""
    report = Report(subject="naturality")
    if isinstance(morphism, DcaMorphism):
        f = morphism
        dual_dom = dual_space(f.dom)
        dual_cod = dual_space(f.cod)
        lowered = lower(f, dual_dom, dual_cod)
        raised = raise_(lowered, dual(dual_cod.space), dual(dual_dom.space))
        g_dom = extent_isomorphism(f.dom, dual_dom)
        g_cod = extent_isomorphism(f.cod, dual_cod)
        witness = next(
            (
                (a,)
                for a in f.dom.base.elements()
                if raised(g_dom(a)) != g_cod(f(a))
            ),
            None,
        )
        report.add("double dual of extents", witness is None, witness)
        return report
    if isinstance(morphism, DmsMorphism):
        theta = morphism
        dual_dom = dual(theta.dom)
        dual_cod = dual(theta.cod)
        raised = raise_(theta, dual_dom, dual_cod)
        lowered = lower(raised, dual_space(dual_cod.dca), dual_space(dual_dom.dca))
        rho_dom = trace_morphism(theta.dom)
        rho_cod = trace_morphism(theta.cod)
        witness = next(
            (
                (x,)
                for x in theta.dom.points()
                if lowered(rho_dom(x)) != rho_cod(theta(x))
            ),
            None,
        )
        report.add("double dual of traces", witness is None, witness)
        return report
    raise ValidationError("naturality expects a morphism")


def functor_laws(first, second) -> Report:
    """Composition is reversed by the contravariant functors."""
    report = Report(subject="functor laws")
    composite = compose(first, second)
    if isinstance(first, DcaMorphism):
        left = lower(composite)
        right = compose(lower(second), lower(first))
        report.add("lower reverses composition", left.point_map == right.point_map)
        ident = DcaMorphism.identity(first.dom)
        report.add(
            "lower preserves identity",
            lower(ident).point_map == tuple(range(len(lower(ident).point_map))),
        )
    else:
        left = raise_(composite)
        right = compose(raise_(second), raise_(first))
        report.add("raise reverses composition", left.table == right.table)
        ident = DmsMorphism.identity(first.dom)
        report.add(
            "raise preserves identity",
            raise_(ident).table == tuple(raise_(ident).dom.base.elements()),
        )
    return report


def dca_isomorphism_report(f: DcaMorphism) -> Report:
    """Morphism plus a two-sided inverse morphism."""
    report = Report(subject="DCA isomorphism")
    validation = validate_dca_morphism(f)
    report.add("is a morphism", validation.ok)
    bijective = len(set(f.table)) == f.dom.base.size == f.cod.base.size
    report.add("bijective", bijective)
    if bijective and validation.ok:
        inverse_table = [0] * f.cod.base.size
        for a, image in enumerate(f.table):
            inverse_table[image] = a
        inverse = DcaMorphism(f.cod, f.dom, tuple(inverse_table))
        report.add("inverse is a morphism", validate_dca_morphism(inverse).ok)
        report.add(
            "composition is the identity",
            all(inverse(f(a)) == a for a in f.dom.base.elements()),
        )
    return report


def dms_isomorphism_report(theta: DmsMorphism) -> Report:
    """Both formulations of space isomorphism, which must agree.

    The bijection formulation requires the converses of the morphism
    conditions; the categorical one requires a two-sided inverse morphism.
    """
    report = Report(subject="DMS isomorphism")
    validation = validate_dms_morphism(theta)
    report.add("is a morphism", validation.ok)
    dom, cod = theta.dom, theta.cod
    bijective = (
        len(set(theta.point_map)) == dom.space.point_count == cod.space.point_count
    )
    report.add("bijective on points", bijective)
    if not (bijective and validation.ok):
        return report

    cond1 = all(
        dom.space_points & (1 << x)
        for x in dom.points()
        if cod.space_points & (1 << theta(x))
    )
    report.add("reflects space points", cond1)
    cond2 = all(
        (x, y) in dom.prec
        for x in dom.points()
        for y in dom.points()
        if (theta(x), theta(y)) in cod.prec
    )
    report.add("reflects before-after", cond2)
    images = {theta_image(theta, a) for a in dom.regions}
    cond3 = images == set(cod.regions)
    report.add("maps the algebra onto the algebra", cond3)

    inverse_map = [0] * cod.space.point_count
    for x, y in enumerate(theta.point_map):
        inverse_map[y] = x
    inverse = DmsMorphism(cod, dom, tuple(inverse_map))
    inverse_ok = validate_dms_morphism(inverse).ok
    report.add("inverse is a morphism", inverse_ok)
    report.add(
        "two formulations agree",
        (cond1 and cond2 and cond3) == inverse_ok,
    )
    return report


def theta_image(theta: DmsMorphism, region: int) -> int:
    out = 0
    for x in atoms_of(region):
        out |= 1 << theta(x)
    return out


def duality_roundtrip(subject) -> Report:
    """Round-trip isomorphisms of the duality, plus its tagged refinements.

    For an algebra: the extent map onto the dual of the dual space, the
    time-axiom transfer to the dual's time structure, and trivial-case
    coherence.  For a space: the trace map onto the dual space of the dual
    algebra, gated on the T0 and DM-compactness requirements.
    """
    if isinstance(subject, DCA):
        d = subject
        d.require_valid()
        report = Report(subject="duality round trip (algebra)")
        result = dual_space(d)
        g = extent_isomorphism(d, result)
        iso = dca_isomorphism_report(g)
        report.add("extent map is an isomorphism", iso.ok)

        time_points = list(atoms_of(result.space.time_points))
        index = {x: i for i, x in enumerate(time_points)}
        ts = TimeStructure.of(
            len(time_points),
            {
                (index[x], index[y])
                for x, y in result.space.prec
                if x in index and y in index
            },
        )
        view = d.axiom_view()
        for cond in DCA_TIME_AXIOMS:
            report.add(
                f"axiom {cond.region_axiom} matches the dual time structure",
                check_time_axiom(view, cond).holds == check_time_condition(ts, cond).holds,
            )
        report.add(
            "trivial algebra iff trivial dual space",
            is_trivial(d) == is_trivial_dms(result.space),
        )
        return report

    if isinstance(subject, DMSpace):
        space = subject
        shape = classify(space)
        if not shape.is_t0:
            raise CapabilityError("round trip requires a T0 space", missing="T0")
        if not shape.is_dm_compact:
            raise CapabilityError("round trip requires DM-compactness", missing="DM-compact")
        report = Report(subject="duality round trip (space)")
        theta = trace_morphism(space)
        iso = dms_isomorphism_report(theta)
        report.add("trace map is an isomorphism", iso.ok)
        report.add(
            "trivial space iff trivial dual algebra",
            is_trivial_dms(space) == is_trivial(dual(space).dca),
        )
        return report

    raise ValidationError("round trip expects an algebra or a space")
