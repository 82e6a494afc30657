"""The two translation passes between the VDM class model and the UML model.

vdm_to_uml maps classes, members and inheritance one-to-one and turns
instance variables whose types are shaped like object references into
associations; every other type is rendered as attribute text, elided
once its complexity exceeds the configured capacity. uml_to_vdm inverts
the mapping, producing skeleton bodies and refusing elided type text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum

from .errors import ParseError, TranslationError, TranslationProblem
from .model import (
    Access,
    AttributeStereotype,
    BasicType,
    Config,
    FunctionDef,
    InstanceVariable,
    MapType,
    Multiplicity,
    NamedType,
    OperationDef,
    OperationStereotype,
    OptionalType,
    ProductType,
    Qualifier,
    Seq1Type,
    SeqType,
    Set1Type,
    SetType,
    TypeDef,
    UmlAssociation,
    UmlAttribute,
    UmlClass,
    UmlGeneralization,
    UmlModel,
    UmlOperation,
    UnionType,
    ValueDef,
    VdmClass,
    VdmModel,
    VdmType,
    type_children,
)
from .vdm_frontend import parse_vdm_type, render_type


class AbstractionGroup(Enum):
    """Capacity group of a compound type constructor.

    CONTAINER covers set, set1, seq, seq1, optional and map (capacity
    gamma0, doubled for maps); ALGEBRAIC covers product and union
    (capacity gamma1); NONE marks the non-compound leaves.
    """

    CONTAINER = "container"
    ALGEBRAIC = "algebraic"
    NONE = "none"


_CONTAINERS = (SetType, Set1Type, SeqType, Seq1Type, OptionalType, MapType)
_ALGEBRAIC = (ProductType, UnionType)


def abstraction_group(t: VdmType) -> AbstractionGroup:
    if isinstance(t, _CONTAINERS):
        return AbstractionGroup.CONTAINER
    if isinstance(t, _ALGEBRAIC):
        return AbstractionGroup.ALGEBRAIC
    return AbstractionGroup.NONE


def complexity(t: VdmType) -> int:
    """Number of non-basic type nodes strictly below a compound root."""
    if abstraction_group(t) is AbstractionGroup.NONE:
        raise ValueError(f"complexity is only defined for compound types, not {t!r}")
    return sum(_weight(child) for child in type_children(t))


def _weight(t: VdmType) -> int:
    own = 0 if isinstance(t, BasicType) else 1
    return own + sum(_weight(child) for child in type_children(t))


def capacity(t: VdmType, config: Config) -> int:
    """How much complexity a compound type may carry before elision."""
    if isinstance(t, MapType):
        return 2 * config.gamma0  # a map always has two sub-types
    if isinstance(t, _CONTAINERS):
        return config.gamma0
    if isinstance(t, _ALGEBRAIC):
        return config.gamma1
    raise ValueError(f"capacity is only defined for compound types, not {t!r}")


def type_abstracts(t: VdmType, config: Config) -> bool:
    """True when rendering t for a diagram elides type information."""
    return (
        abstraction_group(t) is not AbstractionGroup.NONE
        and complexity(t) > capacity(t, config)
    )


def abstract_type(t: VdmType, config: Config) -> str:
    """Diagram rendering of a type: verbatim while within capacity.

    Over-capacity products and unions collapse to n-1 '*' or '|'
    symbols. Over-capacity containers keep their outer constructor and
    replace each compound immediate sub-type with an elided marker;
    basic and plain named sub-types render verbatim.
    """
    if not type_abstracts(t, config):
        return render_type(t)
    if isinstance(t, ProductType):
        return "*" * (len(t.members) - 1)
    if isinstance(t, UnionType):
        return "|" * (len(t.members) - 1)
    if isinstance(t, (SetType, Set1Type)):
        keyword = "set of" if isinstance(t, SetType) else "set1 of"
        return f"{keyword} {_marker(t.inner)}"
    if isinstance(t, (SeqType, Seq1Type)):
        keyword = "seq of" if isinstance(t, SeqType) else "seq1 of"
        return f"{keyword} {_marker(t.inner)}"
    if isinstance(t, OptionalType):
        return f"[{_marker(t.inner)}]"
    keyword = "inmap" if t.injective else "map"
    return f"{keyword} {_marker(t.domain)} to {_marker(t.range)}"


def _marker(t: VdmType) -> str:
    if isinstance(t, (BasicType, NamedType)):
        return t.name
    if isinstance(t, (SetType, Set1Type)):
        return "set..."
    if isinstance(t, (SeqType, Seq1Type)):
        return "seq..."
    if isinstance(t, OptionalType):
        return "[...]"
    if isinstance(t, MapType):
        return "map..."
    if isinstance(t, ProductType):
        return "*" * (len(t.members) - 1)
    return "|" * (len(t.members) - 1)


# ---------------------------------------------------------------------------
# Instance-variable classification


@dataclass(frozen=True)
class AssociationPlan:
    target: str
    multiplicity: Multiplicity
    qualifier: Qualifier | None = None


@dataclass(frozen=True)
class AttributePlan:
    var_type: VdmType


MemberPlan = AssociationPlan | AttributePlan


def classify_instance_variable(var_type: VdmType, class_names: frozenset[str] | set[str]) -> MemberPlan:
    """Decide whether a variable of this type draws as an association.

    Object-reference shapes (a class reference, alone or under one
    optional/set/set1/seq/seq1 layer) become plain associations; a map
    whose range has such a shape becomes a qualified association keyed
    by the domain type. Everything else stays a class attribute. Only
    the type tree and the class-name set matter here.
    """
    shape = _reference_shape(var_type, class_names)
    if shape is not None:
        target, mult = shape
        return AssociationPlan(target, mult)
    if isinstance(var_type, MapType):
        shape = _reference_shape(var_type.range, class_names)
        if shape is not None:
            target, mult = shape
            qualifier = Qualifier(render_type(var_type.domain), unique=var_type.injective)
            return AssociationPlan(target, mult, qualifier)
    return AttributePlan(var_type)


_COLLECTION_MULTIPLICITY = {
    SetType: Multiplicity.SET0,
    Set1Type: Multiplicity.SET1,
    SeqType: Multiplicity.SEQ0,
    Seq1Type: Multiplicity.SEQ1,
}


def _reference_shape(t: VdmType, class_names) -> tuple[str, Multiplicity] | None:
    if isinstance(t, NamedType) and t.name in class_names:
        return t.name, Multiplicity.ONE
    if isinstance(t, OptionalType) and isinstance(t.inner, NamedType) and t.inner.name in class_names:
        return t.inner.name, Multiplicity.OPT
    if isinstance(t, (SetType, Set1Type, SeqType, Seq1Type)):
        if isinstance(t.inner, NamedType) and t.inner.name in class_names:
            return t.inner.name, _COLLECTION_MULTIPLICITY[type(t)]
    return None


def multiplicity_to_type(m: Multiplicity, target: str) -> VdmType:
    """Type of the instance variable an association end maps back to."""
    ref = NamedType(target)
    if m is Multiplicity.ONE:
        return ref
    if m is Multiplicity.OPT:
        return OptionalType(ref)
    if m is Multiplicity.SET0:
        return SetType(ref)
    if m is Multiplicity.SET1:
        return Set1Type(ref)
    if m is Multiplicity.SEQ0:
        return SeqType(ref)
    return Seq1Type(ref)


def _plan(iv: InstanceVariable, class_names) -> MemberPlan:
    # Static variables belong to the class, not to instances, and an
    # association carries no static flag: keep them as attributes.
    if iv.is_static:
        return AttributePlan(iv.var_type)
    return classify_instance_variable(iv.var_type, class_names)


# ---------------------------------------------------------------------------
# VDM -> UML


def vdm_to_uml(model: VdmModel, config: Config | None = None) -> UmlModel:
    """Translate a well-formed VdmModel into its diagram model."""
    config = config or Config()
    names = model.class_names()
    classes: list[UmlClass] = []
    generalizations: list[UmlGeneralization] = []
    associations: list[UmlAssociation] = []
    for cls in model.classes:
        attributes: list[UmlAttribute] = []
        for v in cls.values:
            attributes.append(UmlAttribute(
                v.access, False, v.name, abstract_type(v.val_type, config),
                AttributeStereotype.VALUE,
            ))
        for td in cls.type_defs:
            attributes.append(UmlAttribute(
                td.access, False, td.name, abstract_type(td.definition, config),
                AttributeStereotype.TYPE,
            ))
        for iv in cls.instance_variables:
            plan = _plan(iv, names)
            if isinstance(plan, AssociationPlan):
                associations.append(UmlAssociation(
                    cls.name, plan.target, iv.name, iv.access,
                    plan.multiplicity, plan.qualifier,
                ))
            else:
                attributes.append(UmlAttribute(
                    iv.access, iv.is_static, iv.name,
                    abstract_type(iv.var_type, config),
                    AttributeStereotype.INSTANCE_VARIABLE,
                ))
        operations: list[UmlOperation] = []
        for op in cls.operations:
            operations.append(UmlOperation(
                op.access, op.is_static, op.name,
                tuple(abstract_type(p, config) for p in op.param_types),
                abstract_type(op.return_type, config),
                OperationStereotype.OPERATION,
            ))
        for fn in cls.functions:
            operations.append(UmlOperation(
                fn.access, fn.is_static, fn.name,
                tuple(abstract_type(p, config) for p in fn.param_types),
                abstract_type(fn.return_type, config),
                OperationStereotype.FUNCTION,
            ))
        classes.append(UmlClass(cls.name, tuple(attributes), tuple(operations)))
        generalizations.extend(UmlGeneralization(cls.name, sup) for sup in cls.superclasses)
    return UmlModel(tuple(classes), tuple(generalizations), tuple(associations))


# ---------------------------------------------------------------------------
# UML -> VDM

_ELIDED_RUN_RE = re.compile(r"[*|]\s*[*|]")


def is_elided_type_text(text: str) -> bool:
    """True for renderings produced by over-capacity type elision."""
    s = text.strip()
    if "..." in s:
        return True
    if s and re.fullmatch(r"[*|\s]+", s):
        return True
    if _ELIDED_RUN_RE.search(s):
        return True
    return bool(s) and (s[0] in "*|" or s[-1] in "*|")


def uml_to_vdm(model: UmlModel) -> VdmModel:
    """Translate a well-formed UmlModel back into a skeleton VdmModel.

    Attributes regain their member kind from their stereotype, and each
    association becomes an instance variable on its source class.
    Bodies are absent and value expressions are 'undefined'; printing
    fills in parseable skeletons. Raises TranslationError naming every
    class member whose type text cannot be parsed back.
    """
    problems: list[TranslationProblem] = []
    assoc_by_source: dict[str, list[UmlAssociation]] = {}
    for assoc in model.associations:
        assoc_by_source.setdefault(assoc.source, []).append(assoc)

    classes: list[VdmClass] = []
    for ucls in model.classes:
        supers = tuple(g.parent for g in model.generalizations if g.child == ucls.name)
        ivars: list[InstanceVariable] = []
        values: list[ValueDef] = []
        type_defs: list[TypeDef] = []
        operations: list[OperationDef] = []
        functions: list[FunctionDef] = []
        for attr in ucls.attributes:
            ty = _back_type(attr.type_text, ucls.name, attr.name, problems)
            if ty is None:
                continue
            if attr.stereotype is AttributeStereotype.VALUE:
                values.append(ValueDef(attr.visibility, attr.name, ty, "undefined"))
            elif attr.stereotype is AttributeStereotype.TYPE:
                type_defs.append(TypeDef(attr.visibility, attr.name, ty))
            else:
                ivars.append(InstanceVariable(attr.visibility, attr.is_static, attr.name, ty))
        for op in ucls.operations:
            params = [_back_type(p, ucls.name, op.name, problems) for p in op.param_type_texts]
            ret = _back_type(op.return_type_text, ucls.name, op.name, problems)
            if ret is None or any(p is None for p in params):
                continue
            if op.stereotype is OperationStereotype.FUNCTION:
                functions.append(FunctionDef(op.visibility, op.is_static, op.name, tuple(params), ret))
            else:
                operations.append(OperationDef(op.visibility, op.is_static, op.name, tuple(params), ret))
        for assoc in assoc_by_source.get(ucls.name, ()):
            base = multiplicity_to_type(assoc.multiplicity, assoc.target)
            if assoc.qualifier is not None:
                domain = _back_type(assoc.qualifier.type_text, ucls.name, assoc.role_name, problems)
                if domain is None:
                    continue
                var_type: VdmType = MapType(domain, base, assoc.qualifier.unique)
            else:
                var_type = base
            ivars.append(InstanceVariable(assoc.role_visibility, False, assoc.role_name, var_type))
        classes.append(VdmClass(
            ucls.name, supers, tuple(ivars), tuple(values), tuple(type_defs),
            tuple(operations), tuple(functions),
        ))
    if problems:
        raise TranslationError(problems)
    return VdmModel(tuple(classes))


def _back_type(text: str, class_name: str, member_name: str, problems) -> VdmType | None:
    if is_elided_type_text(text):
        problems.append(TranslationProblem(
            class_name, member_name,
            f"abstracted type {text!r} is not back-translatable",
        ))
        return None
    try:
        return parse_vdm_type(text)
    except ParseError as e:
        problems.append(TranslationProblem(
            class_name, member_name, f"invalid type {text!r}: {e.message}",
        ))
        return None


def lossy_members(model: VdmModel, config: Config) -> list[tuple[str, str, str]]:
    """(class, member, kind) triples whose diagram rendering elides types.

    kind is 'attribute' for values, type definitions and attribute-bound
    instance variables, 'operation' for operations and functions whose
    signature contains an over-capacity type.
    """
    names = model.class_names()
    out: list[tuple[str, str, str]] = []
    for cls in model.classes:
        for v in cls.values:
            if type_abstracts(v.val_type, config):
                out.append((cls.name, v.name, "attribute"))
        for td in cls.type_defs:
            if type_abstracts(td.definition, config):
                out.append((cls.name, td.name, "attribute"))
        for iv in cls.instance_variables:
            if isinstance(_plan(iv, names), AttributePlan) and type_abstracts(iv.var_type, config):
                out.append((cls.name, iv.name, "attribute"))
        for member in cls.operations + cls.functions:
            signature = member.param_types + (member.return_type,)
            if any(type_abstracts(t, config) for t in signature):
                out.append((cls.name, member.name, "operation"))
    return out


# ---------------------------------------------------------------------------
# Canonical form under the round trip


def canonicalize_model(model: VdmModel) -> VdmModel:
    """The form a model settles into after one trip through the diagram.

    Instance variables that stay attributes come before those that
    become associations, initialisers are dropped, value expressions
    become 'undefined' and bodies become skeletons. On models whose
    members all survive translation this equals
    uml_to_vdm(vdm_to_uml(m)) exactly.
    """
    names = model.class_names()
    classes = []
    for cls in model.classes:
        plain = [replace(iv, init_text=None) for iv in cls.instance_variables
                 if isinstance(_plan(iv, names), AttributePlan)]
        linked = [replace(iv, init_text=None) for iv in cls.instance_variables
                  if isinstance(_plan(iv, names), AssociationPlan)]
        classes.append(VdmClass(
            cls.name,
            cls.superclasses,
            tuple(plain + linked),
            tuple(replace(v, expr_text="undefined") for v in cls.values),
            cls.type_defs,
            tuple(replace(op, body_text=None) for op in cls.operations),
            tuple(replace(fn, body_text=None) for fn in cls.functions),
        ))
    return VdmModel(tuple(classes))
